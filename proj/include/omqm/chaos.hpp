#pragma once

// Rossler integration, Lyapunov and Feigenbaum estimates, and the
// fine-structure formula.

#include <array>
#include <cstddef>
#include <vector>

namespace omqm::chaos {

/// Logistic-map superstable parameters R_0..R_levels (f_r(x) = r x (1 - x),
/// R_m has the critical point on a cycle of period 2^m) and the ratios
/// (R_m - R_{m-1}) / (R_{m+1} - R_m).
struct FeigenbaumCascade {
    std::vector<double> superstable;
    std::vector<double> ratios;
    double delta() const { return ratios.back(); }
};

/// Requires 6 <= levels <= 14 (std::invalid_argument). Newton failures
/// throw std::runtime_error naming the level.
FeigenbaumCascade feigenbaum_cascade(int levels);
double feigenbaum_delta(int levels);

using State = std::array<double, 3>;

struct RosslerParams {
    double a = 0.2;
    double b = 0.2;
    double c = 5.7;
    double dt = 0.01;
    double t_total = 5000.0;
    double transient = 100.0;
    State initial{1.0, 1.0, 0.0};

    /// Throws std::invalid_argument for non-positive dt / t_total, negative
    /// transient or transient >= t_total.
    void validate() const;
};

State rossler_rhs(const RosslerParams& p, const State& s);
State rk4_step(const RosslerParams& p, const State& s, double dt);

/// State after integrating for the given time from params.initial.
/// Throws std::runtime_error when the orbit leaves |x| < 1e6.
State integrate(const RosslerParams& p, double time);

struct TrajectoryPoint {
    double t;
    State s;
};

/// Every stride-th RK4 step over [0, t_total], including t = 0.
std::vector<TrajectoryPoint> trajectory(const RosslerParams& p, std::size_t stride = 10);

/// Benettin estimate of the largest exponent: one tangent vector carried by
/// the linearized flow, renormalized every step, averaged after the transient.
double lyapunov_largest(const RosslerParams& p);

struct FineStructureResult {
    double dimension;
    double delta;
    double reading_printed;   // D * sqrt(exp(sqrt(pi delta)))
    double reading_matching;  // D * exp(sqrt(pi delta))
    /// True when the matching reading is the one nearer to 137.
    bool matching_is_closer;
};

/// Throws std::invalid_argument unless D > 0 and delta > 0.
FineStructureResult fine_structure(double dimension, double delta);

/// K exp(sqrt(pi lambda)); lambda below zero is taken as zero.
double scaling_formula(double k, double lambda);

struct ScalingLawReport {
    double lambda;            // measured largest exponent
    std::size_t cycles;       // section crossings used
    double mean_period;       // mean time between crossings
    double measured_ratio;    // geometric mean per-cycle separation growth
    double formula_value;     // K exp(sqrt(pi lambda))
    double k;
};

/// Separation growth of a neighbouring orbit per return to the section
/// y = 0, x < 0, renormalized to 1e-8 after every crossing.
ScalingLawReport scaling_law_report(const RosslerParams& p, double k);

}  // namespace omqm::chaos
