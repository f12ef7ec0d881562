#include "omqm/chaos.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace omqm::chaos {

namespace {

constexpr double kDivergence = 1e6;

// Newton on f_r^{2^m}(1/2) - 1/2, carrying d/dr along the orbit.
double superstable_newton(int m, double guess) {
    const long period = 1L << m;
    double r = guess;
    double last_step = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 100; ++iter) {
        double x = 0.5;
        double dx = 0.0;
        for (long i = 0; i < period; ++i) {
            dx = x * (1.0 - x) + r * (1.0 - 2.0 * x) * dx;
            x = r * x * (1.0 - x);
        }
        if (dx == 0.0 || !std::isfinite(dx)) {
            break;
        }
        const double step = (x - 0.5) / dx;
        r -= step;
        if (std::abs(step) < 1e-15 * r) {
            return r;
        }
        // Stagnation at roundoff level counts as converged.
        if (std::abs(step) >= std::abs(last_step) && std::abs(step) < 1e-14 * r) {
            return r;
        }
        last_step = step;
    }
    throw std::runtime_error("feigenbaum: Newton did not converge at level " + std::to_string(m));
}

double norm(const State& s) { return std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]); }

void check_bounded(const State& s) {
    if (!(norm(s) < kDivergence)) {
        throw std::runtime_error("rossler: trajectory diverged");
    }
}

using Tangent = std::array<double, 6>;

Tangent tangent_rhs(const RosslerParams& p, const Tangent& u) {
    const State f = rossler_rhs(p, {u[0], u[1], u[2]});
    // Jacobian [[0,-1,-1],[1,a,0],[z,0,x-c]] applied to the tangent vector.
    return {f[0],
            f[1],
            f[2],
            -u[4] - u[5],
            u[3] + p.a * u[4],
            u[2] * u[3] + (u[0] - p.c) * u[5]};
}

Tangent tangent_step(const RosslerParams& p, const Tangent& u, double dt) {
    auto axpy = [](const Tangent& x, const Tangent& k, double h) {
        Tangent out;
        for (std::size_t i = 0; i < 6; ++i) out[i] = x[i] + h * k[i];
        return out;
    };
    const Tangent k1 = tangent_rhs(p, u);
    const Tangent k2 = tangent_rhs(p, axpy(u, k1, dt / 2));
    const Tangent k3 = tangent_rhs(p, axpy(u, k2, dt / 2));
    const Tangent k4 = tangent_rhs(p, axpy(u, k3, dt));
    Tangent out;
    for (std::size_t i = 0; i < 6; ++i) {
        out[i] = u[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

std::size_t step_count(double time, double dt) {
    return static_cast<std::size_t>(std::llround(time / dt));
}

}  // namespace

FeigenbaumCascade feigenbaum_cascade(int levels) {
    if (levels < 6 || levels > 14) {
        throw std::invalid_argument("feigenbaum: levels must lie in [6, 14]");
    }
    FeigenbaumCascade c;
    c.superstable = {2.0, 1.0 + std::sqrt(5.0)};
    double ratio = 4.7;
    for (int m = 2; m <= levels; ++m) {
        const double prev = c.superstable[m - 1];
        const double gap = prev - c.superstable[m - 2];
        const double r = superstable_newton(m, prev + gap / ratio);
        if (!(r > prev)) {
            throw std::runtime_error("feigenbaum: Newton left the cascade at level " +
                                     std::to_string(m));
        }
        c.superstable.push_back(r);
        ratio = gap / (r - prev);
        c.ratios.push_back(ratio);
    }
    return c;
}

double feigenbaum_delta(int levels) { return feigenbaum_cascade(levels).delta(); }

void RosslerParams::validate() const {
    if (!(dt > 0.0) || !(t_total > 0.0)) {
        throw std::invalid_argument("rossler: dt and t_total must be positive");
    }
    if (transient < 0.0 || transient >= t_total) {
        throw std::invalid_argument("rossler: transient must lie in [0, t_total)");
    }
}

State rossler_rhs(const RosslerParams& p, const State& s) {
    return {-s[1] - s[2], s[0] + p.a * s[1], p.b + s[2] * (s[0] - p.c)};
}

State rk4_step(const RosslerParams& p, const State& s, double dt) {
    auto axpy = [](const State& x, const State& k, double h) {
        return State{x[0] + h * k[0], x[1] + h * k[1], x[2] + h * k[2]};
    };
    const State k1 = rossler_rhs(p, s);
    const State k2 = rossler_rhs(p, axpy(s, k1, dt / 2));
    const State k3 = rossler_rhs(p, axpy(s, k2, dt / 2));
    const State k4 = rossler_rhs(p, axpy(s, k3, dt));
    State out;
    for (std::size_t i = 0; i < 3; ++i) {
        out[i] = s[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

State integrate(const RosslerParams& p, double time) {
    State s = p.initial;
    const std::size_t steps = step_count(time, p.dt);
    for (std::size_t i = 0; i < steps; ++i) {
        s = rk4_step(p, s, p.dt);
        check_bounded(s);
    }
    return s;
}

std::vector<TrajectoryPoint> trajectory(const RosslerParams& p, std::size_t stride) {
    p.validate();
    if (stride == 0) {
        throw std::invalid_argument("trajectory: stride must be >= 1");
    }
    const std::size_t steps = step_count(p.t_total, p.dt);
    std::vector<TrajectoryPoint> out;
    out.reserve(steps / stride + 1);
    State s = p.initial;
    out.push_back({0.0, s});
    for (std::size_t i = 1; i <= steps; ++i) {
        s = rk4_step(p, s, p.dt);
        check_bounded(s);
        if (i % stride == 0) {
            out.push_back({static_cast<double>(i) * p.dt, s});
        }
    }
    return out;
}

double lyapunov_largest(const RosslerParams& p) {
    p.validate();
    const std::size_t steps = step_count(p.t_total, p.dt);
    const std::size_t skip = step_count(p.transient, p.dt);
    Tangent u{p.initial[0], p.initial[1], p.initial[2], 1.0, 0.0, 0.0};
    double log_sum = 0.0;
    for (std::size_t i = 1; i <= steps; ++i) {
        u = tangent_step(p, u, p.dt);
        check_bounded({u[0], u[1], u[2]});
        const double g = norm({u[3], u[4], u[5]});
        if (!(g > 0.0) || !std::isfinite(g)) {
            throw std::runtime_error("lyapunov: tangent vector degenerated");
        }
        u[3] /= g;
        u[4] /= g;
        u[5] /= g;
        if (i > skip) {
            log_sum += std::log(g);
        }
    }
    return log_sum / (static_cast<double>(steps - skip) * p.dt);
}

FineStructureResult fine_structure(double dimension, double delta) {
    if (!(dimension > 0.0) || !(delta > 0.0)) {
        throw std::invalid_argument("fine_structure: D and delta must be positive");
    }
    const double growth = std::exp(std::sqrt(std::numbers::pi * delta));
    FineStructureResult r{dimension, delta, dimension * std::sqrt(growth), dimension * growth, false};
    r.matching_is_closer = std::abs(r.reading_matching - 137.0) < std::abs(r.reading_printed - 137.0);
    return r;
}

double scaling_formula(double k, double lambda) {
    return k * std::exp(std::sqrt(std::numbers::pi * std::max(lambda, 0.0)));
}

ScalingLawReport scaling_law_report(const RosslerParams& p, double k) {
    p.validate();
    constexpr double kOffset = 1e-8;
    const std::size_t steps = step_count(p.t_total, p.dt);
    const std::size_t skip = step_count(p.transient, p.dt);
    State ref = p.initial;
    State near{ref[0] + kOffset, ref[1], ref[2]};
    double log_growth = 0.0;
    std::size_t cycles = 0;
    double first_cross = -1.0;
    double last_cross = -1.0;
    for (std::size_t i = 1; i <= steps; ++i) {
        const State prev = ref;
        ref = rk4_step(p, ref, p.dt);
        near = rk4_step(p, near, p.dt);
        check_bounded(ref);
        if (i <= skip) {
            if (i == skip) {
                near = {ref[0] + kOffset, ref[1], ref[2]};
            }
            continue;
        }
        if (prev[1] > 0.0 && ref[1] <= 0.0 && ref[0] < 0.0) {
            const State d{near[0] - ref[0], near[1] - ref[1], near[2] - ref[2]};
            const double sep = norm(d);
            const double t = static_cast<double>(i) * p.dt;
            if (first_cross < 0.0) {
                first_cross = t;
            } else {
                log_growth += std::log(sep / kOffset);
                ++cycles;
            }
            last_cross = t;
            const double f = kOffset / sep;
            near = {ref[0] + d[0] * f, ref[1] + d[1] * f, ref[2] + d[2] * f};
        }
    }
    ScalingLawReport r{};
    r.k = k;
    r.lambda = lyapunov_largest(p);
    r.cycles = cycles;
    r.mean_period = cycles > 0 ? (last_cross - first_cross) / static_cast<double>(cycles) : 0.0;
    r.measured_ratio = cycles > 0 ? std::exp(log_growth / static_cast<double>(cycles)) : 0.0;
    r.formula_value = scaling_formula(k, r.lambda);
    return r;
}

}  // namespace omqm::chaos
