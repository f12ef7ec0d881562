#include "commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return omqm::cli::dispatch(argc, argv, std::cout, std::cerr); }
