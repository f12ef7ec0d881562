#pragma once

// Flat dotted-key configuration for the command-line tool, plus atomic
// file output and the run manifest.

#include "omqm/constants.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace omqm::cli {

/// Bad flags, unknown config keys, or values of the wrong type. Maps to exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RunConfig {
public:
    /// Every recognised key with its default value.
    static RunConfig defaults();

    /// Overlays a JSON object of dotted keys. Unknown keys and type
    /// mismatches throw UsageError.
    void merge(const nlohmann::ordered_json& object);
    void merge_file(const std::filesystem::path& path);

    /// Sets one key from command-line text, parsed according to the type of
    /// its default.
    void set(const std::string& key, const std::string& text);

    bool has(const std::string& key) const { return values_.contains(key); }

    std::uint64_t u64(const std::string& key) const;
    std::int64_t i64(const std::string& key) const;
    double real(const std::string& key) const;
    bool flag(const std::string& key) const;
    std::string text(const std::string& key) const;

    /// s_tilde_sign and alpha_tilde applied.
    OMConstants constants() const;

    const nlohmann::ordered_json& resolved() const { return values_; }

private:
    void assign(const std::string& key, const nlohmann::ordered_json& value);
    const nlohmann::ordered_json& at(const std::string& key) const;

    nlohmann::ordered_json values_ = nlohmann::ordered_json::object();
};

/// Writes to a sibling temporary file, then renames over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// run-manifest.json: command, argv, the resolved config, output files and
/// the creation time (the only timestamped output).
void write_manifest(const std::filesystem::path& out_dir, const std::string& command,
                    const std::vector<std::string>& argv, const RunConfig& config,
                    const std::vector<std::string>& outputs);

}  // namespace omqm::cli
