#include "commands.hpp"

#include "run_config.hpp"

#include "omqm/born.hpp"
#include "omqm/chaos.hpp"
#include "omqm/collapse.hpp"
#include "omqm/elliptic.hpp"
#include "omqm/epr.hpp"
#include "omqm/ledger.hpp"
#include "omqm/numtheory.hpp"
#include "omqm/svg.hpp"
#include "omqm/zeta.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <unistd.h>

namespace omqm::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Output {
    std::string stdout_text;
    std::vector<std::pair<std::string, std::string>> files;
    std::string summary;
    int status = 0;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string summary_line(const char* fmt, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

// collapse

Json outcome_json(const collapse::CollapseOutcome& o) {
    Json j;
    j["path"] = std::string(collapse::to_string(o.path));
    j["k_star"] = o.k_star;
    j["rotation_trace"] = o.rotation_trace;
    j["rotation_sum"] = o.rotation_sum;
    j["phase_re"] = o.phase.real();
    j["phase_im"] = o.phase.imag();
    if (o.path == collapse::CollapsePath::ZetaStretch) {
        j["convention"] = o.convention;
        const auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
        j["t_star"] = opt(o.t_star);
        j["stretched"] = opt(o.stretched);
        j["prime_power_sum"] = opt(o.prime_power_sum);
        j["prime_power_tail"] = opt(o.prime_power_tail);
    }
    return j;
}

Output run_collapse(const RunConfig& cfg) {
    const auto scale = OMScale::make(cfg.u64("collapse.l1"), cfg.u64("collapse.n"));
    const auto constants = cfg.constants();
    const auto path = cfg.text("collapse.path");
    if (path != "key" && path != "zeta" && path != "both") {
        throw UsageError("--path must be key, zeta or both");
    }
    std::vector<collapse::CollapseOutcome> outcomes;
    if (path != "zeta") outcomes.push_back(collapse::key_cylinder_collapse(scale, constants));
    if (path != "key") {
        outcomes.push_back(collapse::zeta_stretch_collapse(scale, constants,
                                                           cfg.real("precision.zeta_tolerance")));
    }
    Output out;
    Json j;
    if (outcomes.size() == 1) {
        j = outcome_json(outcomes.front());
    } else {
        j = Json::array({outcome_json(outcomes[0]), outcome_json(outcomes[1])});
    }
    out.stdout_text = j.dump(2) + "\n";
    out.files.emplace_back("collapse.json", out.stdout_text);
    if (outcomes.size() == 2 &&
        (outcomes[0].k_star != outcomes[1].k_star || outcomes[0].phase != outcomes[1].phase)) {
        out.status = 1;
        out.summary = "collapse: paths disagree";
        return out;
    }
    out.summary = summary_line("collapse: l1=%llu n=%llu k*=%llu (%s)",
                               static_cast<unsigned long long>(scale.l1),
                               static_cast<unsigned long long>(scale.n),
                               static_cast<unsigned long long>(outcomes[0].k_star), path.c_str());
    return out;
}

// born

Output run_born(const RunConfig& cfg) {
    const auto scale = OMScale::make(cfg.u64("born.l1"), cfg.u64("born.n"));
    const born::JitterModel jitter{cfg.real("born.sigma"), cfg.u64("seed"), cfg.u64("born.samples")};
    const auto dist = born::empirical_distribution(scale, jitter,
                                                   static_cast<unsigned>(cfg.u64("born.workers")));
    const auto empirical = dist.probabilities();
    const auto model = born::gaussian_model(scale, jitter.sigma_l);

    std::ostringstream csv;
    csv << "k,count,empirical_p,model_p\n";
    for (std::size_t k = 0; k < dist.counts.size(); ++k) {
        csv << k << ',' << dist.counts[k] << ',' << num(empirical[k]) << ',' << num(model[k]) << '\n';
    }
    Output out;
    out.stdout_text = csv.str();
    out.files.emplace_back("born.csv", out.stdout_text);
    if (cfg.flag("svg")) {
        out.files.emplace_back("born.svg", svg::histogram(empirical, model, "outcome frequencies"));
    }
    out.summary = summary_line("born: n=%llu sigma=%g samples=%llu tv=%.4f",
                               static_cast<unsigned long long>(scale.n), jitter.sigma_l,
                               static_cast<unsigned long long>(jitter.samples),
                               born::total_variation(empirical, model));
    return out;
}

// epr

Json epr_json(const epr::EPRSetup& s, const epr::EPROutcome& o) {
    Json j;
    j["l1a"] = s.l1_a;
    j["l1b"] = s.l1_b;
    j["b"] = s.b;
    j["n"] = s.n;
    j["parity"] = s.crossing_parity;
    j["k_a"] = o.k_a;
    j["k_b"] = o.k_b;
    j["orient_a"] = o.orient_a;
    j["orient_b"] = o.orient_b;
    j["spin_a"] = o.spin_a;
    j["spin_b"] = o.spin_b;
    j["asymmetric"] = o.asymmetric;
    return j;
}

epr::EPRSetup epr_setup(const RunConfig& cfg) {
    const auto parity = cfg.i64("epr.parity");
    if (parity != 1 && parity != -1) throw UsageError("--parity must be +1 or -1");
    return {cfg.u64("epr.l1a"), cfg.u64("epr.l1b"), cfg.u64("epr.b"), cfg.u64("epr.n"),
            static_cast<int>(parity)};
}

Output run_epr(const RunConfig& cfg) {
    Output out;
    const auto batch = cfg.text("epr.batch");
    if (batch.empty()) {
        const auto setup = epr_setup(cfg);
        out.stdout_text = epr_json(setup, epr::epr_collapse(setup)).dump() + "\n";
        out.files.emplace_back("epr.json", out.stdout_text);
        out.summary = "epr: 1 setup";
        return out;
    }
    std::ifstream in(batch);
    if (!in) throw UsageError("cannot read batch file " + batch);
    std::string line;
    std::size_t lineno = 0, count = 0;
    std::ostringstream os;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        RunConfig row = cfg;
        try {
            const auto j = Json::parse(line);
            if (!j.is_object()) throw UsageError("expected an object");
            for (const auto& [key, value] : j.items()) {
                Json scoped;
                scoped["epr." + key] = value;
                row.merge(scoped);
            }
        } catch (const std::exception& e) {
            throw UsageError(batch + ":" + std::to_string(lineno) + ": " + e.what());
        }
        const auto setup = epr_setup(row);
        os << epr_json(setup, epr::epr_collapse(setup)).dump() << '\n';
        ++count;
    }
    out.stdout_text = os.str();
    out.files.emplace_back("epr.jsonl", out.stdout_text);
    out.summary = summary_line("epr: %zu setups", count);
    return out;
}

// weierstrass

Output run_weierstrass(const RunConfig& cfg) {
    const Complex tau{cfg.real("weierstrass.tau_re"), cfg.real("weierstrass.tau_im")};
    const auto grid = cfg.u64("weierstrass.grid");
    if (grid < 1 || grid > 512) throw UsageError("--grid must be in [1, 512]");
    const elliptic::WeierstrassP p(elliptic::Lattice::from_tau(tau));

    std::ostringstream csv;
    csv << "re_z,im_z,re_wp,im_wp,ode_residual\n";
    std::vector<double> magnitude;
    magnitude.reserve(grid * grid);
    double worst = 0.0;
    const double g = static_cast<double>(grid);
    for (std::uint64_t i = 0; i < grid; ++i) {
        for (std::uint64_t j = 0; j < grid; ++j) {
            // Cell centres of the fundamental parallelogram never meet a lattice point.
            const Complex z = (static_cast<double>(j) + 0.5) / g + (static_cast<double>(i) + 0.5) / g * tau;
            const Complex v = p.value(z).value;
            const double r = p.ode_residual(z);
            worst = std::max(worst, r);
            csv << num(z.real()) << ',' << num(z.imag()) << ',' << num(v.real()) << ','
                << num(v.imag()) << ',' << num(r) << '\n';
            magnitude.push_back(std::log10(std::abs(v)));
        }
    }
    Output out;
    out.stdout_text = csv.str();
    out.files.emplace_back("weierstrass.csv", out.stdout_text);
    if (cfg.flag("svg")) {
        out.files.emplace_back("weierstrass.svg",
                               svg::heatmap(magnitude, grid, grid, "log10 |wp| on the period cell"));
    }
    out.summary = summary_line("weierstrass: %llux%llu grid, max ode residual %.3e",
                               static_cast<unsigned long long>(grid),
                               static_cast<unsigned long long>(grid), worst);
    return out;
}

// zeros

Output run_zeros(const RunConfig& cfg) {
    zeta::ZetaZeroTable table;
    const auto source = cfg.text("zeros.import");
    if (source.empty()) {
        table = zeta::find_zeros(cfg.real("zeros.t_max"), cfg.real("zeros.precision"));
    } else {
        std::ifstream in(source);
        if (!in) throw UsageError("cannot read zero table " + source);
        table = zeta::ZetaZeroTable::read(in);
    }
    std::ostringstream os;
    table.write(os);
    Output out;
    out.stdout_text = os.str();
    out.files.emplace_back("zeros.txt", out.stdout_text);
    const bool verified = table.verify_sign_changes();
    const double height = source.empty() ? cfg.real("zeros.t_max")
                                         : (table.count() ? table.zeros().back() : 0.0);
    out.summary = summary_line("zeros: %zu zeros up to %g (counting estimate %.2f), sign changes %s",
                               table.count(), height,
                               height > 0 ? zeta::zero_counting_estimate(height) : 0.0,
                               verified ? "verified" : "NOT verified");
    out.status = verified ? 0 : 1;
    return out;
}

// numtheory

Output run_numtheory(const RunConfig& cfg) {
    const auto bound = cfg.u64("numtheory.table_bound");
    if (bound < 1 || bound > numtheory::ArithmeticTable::kMaxBound) {
        throw UsageError("--table-bound out of range");
    }
    std::filesystem::path cache = cfg.text("numtheory.cache");
    if (!cache.empty() && cache.is_relative()) cache = std::filesystem::path(cfg.text("out_dir")) / cache;

    std::string cache_state = "none";
    std::optional<numtheory::ArithmeticTable> table;
    if (!cache.empty() && std::filesystem::exists(cache)) {
        try {
            auto loaded = numtheory::ArithmeticTable::load(cache);
            if (loaded.bound() == bound) {
                table.emplace(std::move(loaded));
                cache_state = "loaded";
            }
        } catch (const std::exception&) {
            cache_state = "rebuilt";
        }
    }
    if (!table) {
        table.emplace(bound);
        if (!cache.empty()) {
            std::filesystem::create_directories(cache.parent_path());
            auto tmp = cache;
            tmp += ".tmp." + std::to_string(::getpid());
            table->save(tmp);
            std::filesystem::rename(tmp, cache);
            if (cache_state == "none") cache_state = "written";
        }
    }
    std::uint64_t primes = 0;
    const auto lpf = table->least_prime_factors();
    for (std::uint64_t k = 2; k <= bound; ++k) primes += lpf[k] == k ? 1 : 0;

    Json j;
    j["bound"] = bound;
    j["prime_count"] = primes;
    j["mertens"] = table->mertens(bound);
    j["chebyshev_psi"] = table->chebyshev_psi(bound);
    j["cache"] = cache_state;
    Output out;
    out.stdout_text = j.dump(2) + "\n";
    out.files.emplace_back("numtheory.json", out.stdout_text);
    out.summary = summary_line("numtheory: bound %llu, %llu primes, M = %lld, cache %s",
                               static_cast<unsigned long long>(bound),
                               static_cast<unsigned long long>(primes),
                               static_cast<long long>(table->mertens(bound)), cache_state.c_str());
    return out;
}

// chaos

chaos::RosslerParams rossler_params(const RunConfig& cfg) {
    std::vector<double> v;
    std::stringstream ss(cfg.text("chaos.rossler"));
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double x = 0;
        try {
            x = std::stod(item, &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" ", used) != std::string::npos) {
            throw UsageError("--rossler expects a,b,c,dt,t");
        }
        v.push_back(x);
    }
    if (v.size() != 5) throw UsageError("--rossler expects a,b,c,dt,t");
    chaos::RosslerParams p;
    p.a = v[0];
    p.b = v[1];
    p.c = v[2];
    p.dt = v[3];
    p.t_total = v[4];
    p.transient = cfg.real("chaos.transient");
    p.validate();
    return p;
}

Output run_chaos(const RunConfig& cfg) {
    const auto levels = static_cast<int>(cfg.u64("chaos.feigenbaum_levels"));
    const auto p = rossler_params(cfg);
    const auto stride = cfg.u64("chaos.stride");
    if (stride == 0) throw UsageError("--stride must be positive");

    const auto cascade = chaos::feigenbaum_cascade(levels);
    const auto traj = chaos::trajectory(p, stride);
    const double lambda = chaos::lyapunov_largest(p);
    const auto fs = chaos::fine_structure(cfg.real("D"), cascade.delta());

    Json j;
    j["feigenbaum"] = {{"levels", levels}, {"delta", cascade.delta()}, {"superstable", cascade.superstable}};
    j["rossler"] = {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"dt", p.dt}, {"t_total", p.t_total},
                    {"transient", p.transient}, {"lyapunov", lambda}};
    j["fine_structure"] = {{"dimension", fs.dimension},
                           {"delta", fs.delta},
                           {"reading_matching", fs.reading_matching},
                           {"reading_printed", fs.reading_printed}};

    std::ostringstream csv;
    csv << "t,x,y,z\n";
    svg::Series portrait;
    for (const auto& pt : traj) {
        csv << num(pt.t) << ',' << num(pt.s[0]) << ',' << num(pt.s[1]) << ',' << num(pt.s[2]) << '\n';
        if (pt.t >= p.transient) {
            portrait.x.push_back(pt.s[0]);
            portrait.y.push_back(pt.s[1]);
        }
    }
    Output out;
    out.stdout_text = j.dump(2) + "\n";
    out.files.emplace_back("chaos.json", out.stdout_text);
    out.files.emplace_back("chaos.csv", csv.str());
    if (cfg.flag("svg")) {
        out.files.emplace_back("chaos.svg", svg::line_plot({portrait}, "x-y phase portrait"));
    }
    out.summary = summary_line("chaos: delta(%d)=%.9f lambda=%.4f D exp(sqrt(pi delta))=%.6f", levels,
                               cascade.delta(), lambda, fs.reading_matching);
    return out;
}

// verify

Output run_verify(const RunConfig& cfg) {
    ledger::LedgerConfig lc;
    lc.dimension = cfg.real("D");
    lc.delta = cfg.real("delta");
    const auto records = ledger::run_ledger(lc);
    const auto format = cfg.text("verify.format");
    if (format != "json" && format != "table") throw UsageError("verify.format must be json or table");

    Output out;
    const auto json = ledger::to_json(records);
    const auto table = ledger::to_table(records);
    out.stdout_text = format == "json" ? json : table;
    out.files.emplace_back("verify.json", json);
    out.files.emplace_back("verify.txt", table);
    std::size_t confirmed = 0, discrepant = 0, failed = 0;
    for (const auto& r : records) {
        confirmed += r.status == ClaimStatus::Confirmed;
        discrepant += r.status == ClaimStatus::Discrepant;
        failed += r.status == ClaimStatus::EvaluationFailed;
    }
    out.summary = summary_line("verify: %zu claims, %zu confirmed, %zu discrepant, %zu errors",
                               records.size(), confirmed, discrepant, failed);
    out.status = failed ? 1 : 0;
    return out;
}

struct Binding {
    std::string key;
    std::string value;
    CLI::Option* option = nullptr;
};

struct Command {
    std::string name;
    std::function<Output(const RunConfig&)> run;
    CLI::App* app = nullptr;
    std::deque<Binding> bindings;
};

void bind(Command& c, const std::string& flag, const std::string& key, const std::string& help) {
    auto& b = c.bindings.emplace_back();
    b.key = key;
    b.option = c.app->add_option(flag, b.value, help);
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical companion for the OM correspondence calculus", "omqm"};
    app.require_subcommand(1);

    std::deque<Command> commands;
    std::string config_path;
    bool svg_flag = false, json_flag = false, table_flag = false;

    auto add = [&](const std::string& name, const std::string& help, auto run) -> Command& {
        auto& c = commands.emplace_back();
        c.name = name;
        c.run = run;
        c.app = app.add_subcommand(name, help);
        c.app->add_option("--config", config_path, "JSON config of dotted keys (default $OMQM_CONFIG)");
        bind(c, "--out-dir", "out_dir", "output directory");
        bind(c, "--seed", "seed", "random seed");
        bind(c, "--s-tilde-sign", "s_tilde_sign", "+1 or -1");
        bind(c, "--alpha-tilde", "alpha_tilde", "unit minimal volume");
        bind(c, "--dimension", "D", "fractal dimension D");
        bind(c, "--delta", "delta", "Feigenbaum constant used by the ledger");
        c.app->add_flag("--svg", svg_flag, "also write an SVG plot");
        return c;
    };

    auto& col = add("collapse", "deterministic collapse along both paths", run_collapse);
    bind(col, "--l1", "collapse.l1", "scale l1");
    bind(col, "--n", "collapse.n", "base size n");
    bind(col, "--path", "collapse.path", "key, zeta or both");
    bind(col, "--zeta-tolerance", "precision.zeta_tolerance", "stretch certification tolerance");

    auto& bo = add("born", "outcome statistics under scale jitter", run_born);
    bind(bo, "--l1", "born.l1", "scale l1");
    bind(bo, "--n", "born.n", "base size n");
    bind(bo, "--sigma", "born.sigma", "jitter standard deviation");
    bind(bo, "--samples", "born.samples", "sample count");
    bind(bo, "--workers", "born.workers", "worker threads (0 = hardware)");

    auto& ep = add("epr", "correlated two-particle collapse", run_epr);
    bind(ep, "--l1a", "epr.l1a", "scale of particle A");
    bind(ep, "--l1b", "epr.l1b", "scale of particle B");
    bind(ep, "--b", "epr.b", "entanglement box scale");
    bind(ep, "--n", "epr.n", "base size n");
    bind(ep, "--parity", "epr.parity", "crossing parity +1 or -1");
    bind(ep, "--batch", "epr.batch", "JSON-lines file of setups");

    auto& we = add("weierstrass", "grid of wp over the period cell", run_weierstrass);
    bind(we, "--tau-re", "weierstrass.tau_re", "Re tau");
    bind(we, "--tau-im", "weierstrass.tau_im", "Im tau");
    bind(we, "--grid", "weierstrass.grid", "points per side");

    auto& ze = add("zeros", "critical-line zeros: find and export, or import", run_zeros);
    bind(ze, "--t-max", "zeros.t_max", "scan height");
    bind(ze, "--precision", "zeros.precision", "bisection precision");
    bind(ze, "--import", "zeros.import", "read a zero table instead of scanning");

    auto& nt = add("numtheory", "sieve tables", run_numtheory);
    bind(nt, "--table-bound", "numtheory.table_bound", "sieve bound");
    bind(nt, "--cache", "numtheory.cache", "binary table cache (relative to the output directory)");

    auto& ch = add("chaos", "Feigenbaum cascade, Rossler flow, Lyapunov exponent", run_chaos);
    bind(ch, "--feigenbaum-levels", "chaos.feigenbaum_levels", "cascade levels");
    bind(ch, "--rossler", "chaos.rossler", "a,b,c,dt,t");
    bind(ch, "--transient", "chaos.transient", "discarded initial time");
    bind(ch, "--stride", "chaos.stride", "trajectory output stride");

    auto& ve = add("verify", "evaluate the claim ledger", run_verify);
    ve.app->add_flag("--json", json_flag, "JSON on stdout (default)");
    ve.app->add_flag("--table", table_flag, "table on stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return 0;
        }
        err << "omqm: " << e.what() << "\n\n";
        CLI::App* scope = &app;
        for (auto& c : commands) {
            if (c.app->parsed()) scope = c.app;
        }
        err << scope->help();
        return 2;
    }

    Command* selected = nullptr;
    for (auto& c : commands) {
        if (c.app->parsed()) selected = &c;
    }

    std::vector<std::string> args(argv, argv + argc);
    RunConfig cfg = RunConfig::defaults();
    try {
        if (config_path.empty()) {
            if (const char* env = std::getenv("OMQM_CONFIG"); env && *env) config_path = env;
        }
        if (!config_path.empty()) cfg.merge_file(config_path);
        for (const auto& b : selected->bindings) {
            if (b.option->count() > 0) cfg.set(b.key, b.value);
        }
        if (svg_flag) cfg.set("svg", "true");
        if (json_flag && table_flag) throw UsageError("--json and --table are exclusive");
        if (json_flag) cfg.set("verify.format", "json");
        if (table_flag) cfg.set("verify.format", "table");
        cfg.constants();
    } catch (const UsageError& e) {
        err << "omqm: " << e.what() << "\n";
        return 2;
    }

    Output result;
    try {
        result = selected->run(cfg);
    } catch (const UsageError& e) {
        err << "omqm " << selected->name << ": " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "omqm " << selected->name << ": invalid parameter: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "omqm " << selected->name << ": " << e.what() << "\n";
        return 1;
    }

    const std::filesystem::path out_dir = cfg.text("out_dir");
    try {
        std::vector<std::string> names;
        for (const auto& [name, content] : result.files) {
            write_atomic(out_dir / name, content);
            names.push_back(name);
        }
        write_manifest(out_dir, selected->name, args, cfg, names);
    } catch (const std::exception& e) {
        err << "omqm " << selected->name << ": " << e.what() << "\n";
        return 1;
    }
    out << result.stdout_text;
    out.flush();
    err << result.summary << "\n";
    return result.status;
}

}  // namespace omqm::cli
