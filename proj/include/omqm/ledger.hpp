#pragma once

// Claim registry: every checkable assertion evaluated and judged.

#include "omqm/claim.hpp"
#include "omqm/constants.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace omqm::ledger {

struct LedgerConfig {
    double dimension = kRosslerDimension;
    double delta = kFeigenbaumDelta;
    /// Full period count N for the n = 2 split over l1 in [0, 4N).
    std::uint64_t fifty_fifty_periods = 10000;
    /// Divisor-sum claim checked for k up to this bound.
    std::uint64_t divisor_bound = 10000;
    /// Mertens values reported for k up to this bound.
    std::uint64_t mertens_bound = 100;
    /// Prime-power cutoff Q and evaluation point t of the log-derivative series.
    std::uint64_t log_derivative_cutoff = 1000000;
    double log_derivative_t = 2.0;
    /// Evaluation point for the 2 g2 variant of the Weierstrass equation (square lattice).
    Complex ode_point{0.3, 0.2};
};

/// Evaluates every claim, concurrently, and returns them sorted by id.
/// A claim that throws is recorded with status EvaluationFailed.
std::vector<ClaimRecord> run_ledger(const LedgerConfig& config = {});

/// Claim ids produced by run_ledger, sorted.
std::vector<std::string> claim_ids();

/// JSON array of records, two-space indented, trailing newline.
std::string to_json(const std::vector<ClaimRecord>& records);
/// Fixed-width table, one line per record.
std::string to_table(const std::vector<ClaimRecord>& records);

}  // namespace omqm::ledger
