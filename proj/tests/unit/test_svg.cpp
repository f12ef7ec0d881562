#include "omqm/svg.hpp"

#include <doctest.h>

#include <algorithm>
#include <string>

using namespace omqm::svg;

namespace {

bool well_formed(const std::string& s) {
    return s.rfind("<svg", 0) == 0 && s.find("</svg>") != std::string::npos &&
           s.find("nan") == std::string::npos && s.find("inf") == std::string::npos;
}

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("plots are well-formed") {
    const Series a{{0, 1, 2, 3}, {1, 4, 9, 16}};
    CHECK(well_formed(line_plot({a}, "squares")));
    CHECK(well_formed(scatter_plot({a}, "squares")));
    CHECK(line_plot({a}, "a < b & c").find("a &lt; b &amp; c") != std::string::npos);
    CHECK(count(scatter_plot({a}, "s"), "<circle") == 4);

    const auto h = histogram({0.1, 0.5, 0.4}, {0.2, 0.5, 0.3}, "h");
    CHECK(well_formed(h));
    CHECK(count(h, "<rect") >= 3);
    CHECK(count(h, "<polyline") == 1);
    CHECK(count(histogram({0.1, 0.9}, {}, "h"), "<polyline") == 0);

    CHECK(well_formed(heatmap({1, 2, 3, 4, 5, 6}, 2, 3, "grid")));
}

TEST_CASE("degenerate inputs") {
    CHECK(well_formed(line_plot({}, "empty")));
    CHECK(well_formed(line_plot({Series{{1.0}, {1.0}}}, "point")));
    CHECK(well_formed(heatmap({2.0, 2.0}, 1, 2, "flat")));
    CHECK_THROWS_AS(heatmap({1.0, 2.0, 3.0}, 2, 2, "bad"), std::invalid_argument);
}
