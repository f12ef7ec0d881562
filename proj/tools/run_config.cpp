#include "run_config.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace omqm::cli {

using Json = nlohmann::ordered_json;

RunConfig RunConfig::defaults() {
    const OMConstants c;
    RunConfig r;
    auto& v = r.values_;
    v["seed"] = std::uint64_t{0};
    v["out_dir"] = "out";
    v["svg"] = false;
    v["s_tilde_sign"] = std::int64_t{1};
    v["alpha_tilde"] = c.alpha_tilde();
    v["D"] = kRosslerDimension;
    v["delta"] = kFeigenbaumDelta;
    v["precision.zeta_tolerance"] = 1e-10;

    v["collapse.l1"] = std::uint64_t{7};
    v["collapse.n"] = std::uint64_t{2};
    v["collapse.path"] = "both";

    v["born.l1"] = std::uint64_t{1000};
    v["born.n"] = std::uint64_t{8};
    v["born.sigma"] = 3.0;
    v["born.samples"] = std::uint64_t{100000};
    v["born.workers"] = std::uint64_t{0};

    v["epr.l1a"] = std::uint64_t{100};
    v["epr.l1b"] = std::uint64_t{100};
    v["epr.b"] = std::uint64_t{10};
    v["epr.n"] = std::uint64_t{2};
    v["epr.parity"] = std::int64_t{1};
    v["epr.batch"] = "";

    v["weierstrass.tau_re"] = 0.0;
    v["weierstrass.tau_im"] = 1.0;
    v["weierstrass.grid"] = std::uint64_t{24};

    v["zeros.t_max"] = 50.0;
    v["zeros.precision"] = 1e-8;
    v["zeros.import"] = "";

    v["numtheory.table_bound"] = std::uint64_t{100000};
    v["numtheory.cache"] = "";

    v["chaos.feigenbaum_levels"] = std::uint64_t{10};
    v["chaos.rossler"] = "0.2,0.2,5.7,0.01,5000";
    v["chaos.transient"] = 100.0;
    v["chaos.stride"] = std::uint64_t{10};

    v["verify.format"] = "json";
    return r;
}

const Json& RunConfig::at(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw std::logic_error("config key not registered: " + key);
    }
    return *it;
}

void RunConfig::assign(const std::string& key, const Json& value) {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw UsageError("unknown config key '" + key + "'");
    }
    Json& slot = *it;
    const auto bad = [&] {
        return UsageError("config key '" + key + "' expects " + std::string(slot.type_name()) +
                          ", got " + value.dump());
    };
    if (slot.is_number_unsigned()) {
        if (!value.is_number_integer() ||
            (!value.is_number_unsigned() && value.get<std::int64_t>() < 0)) {
            throw bad();
        }
        slot = value.get<std::uint64_t>();
    } else if (slot.is_number_integer()) {
        if (!value.is_number_integer()) throw bad();
        slot = value.get<std::int64_t>();
    } else if (slot.is_number_float()) {
        if (!value.is_number()) throw bad();
        slot = value.get<double>();
    } else if (slot.is_boolean()) {
        if (!value.is_boolean()) throw bad();
        slot = value.get<bool>();
    } else {
        if (!value.is_string()) throw bad();
        slot = value.get<std::string>();
    }
}

void RunConfig::merge(const Json& object) {
    if (!object.is_object()) {
        throw UsageError("config must be a JSON object of dotted keys");
    }
    for (const auto& [key, value] : object.items()) {
        assign(key, value);
    }
}

void RunConfig::merge_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read config file " + path.string());
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw UsageError("config file " + path.string() + ": " + e.what());
    }
    merge(j);
}

void RunConfig::set(const std::string& key, const std::string& text) {
    const Json& slot = at(key);
    Json value;
    try {
        std::size_t used = 0;
        if (slot.is_number_unsigned()) {
            if (!text.empty() && text[0] == '-') throw std::invalid_argument(text);
            value = std::stoull(text, &used);
        } else if (slot.is_number_integer()) {
            value = std::stoll(text, &used);
        } else if (slot.is_number_float()) {
            value = std::stod(text, &used);
        } else if (slot.is_boolean()) {
            value = text == "true" || text == "1";
            used = text.size();
        } else {
            value = text;
            used = text.size();
        }
        if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::logic_error&) {
        throw UsageError("invalid value '" + text + "' for " + key);
    }
    assign(key, value);
}

std::uint64_t RunConfig::u64(const std::string& key) const { return at(key).get<std::uint64_t>(); }
std::int64_t RunConfig::i64(const std::string& key) const { return at(key).get<std::int64_t>(); }
double RunConfig::real(const std::string& key) const { return at(key).get<double>(); }
bool RunConfig::flag(const std::string& key) const { return at(key).get<bool>(); }
std::string RunConfig::text(const std::string& key) const { return at(key).get<std::string>(); }

OMConstants RunConfig::constants() const {
    const auto sign = i64("s_tilde_sign");
    if (sign != 1 && sign != -1) {
        throw UsageError("s_tilde_sign must be +1 or -1");
    }
    const double alpha = real("alpha_tilde");
    if (!(alpha > 0.0)) {
        throw UsageError("alpha_tilde must be positive");
    }
    return OMConstants(static_cast<int>(sign), alpha);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw std::runtime_error("cannot write " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

void write_manifest(const std::filesystem::path& out_dir, const std::string& command,
                    const std::vector<std::string>& argv, const RunConfig& config,
                    const std::vector<std::string>& outputs) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);

    Json m;
    m["command"] = command;
    m["argv"] = argv;
    m["config"] = config.resolved();
    m["outputs"] = outputs;
    m["created_utc"] = stamp;
    write_atomic(out_dir / "run-manifest.json", m.dump(2) + "\n");
}

}  // namespace omqm::cli
