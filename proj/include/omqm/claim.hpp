#pragma once

#include "omqm/constants.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace omqm {

enum class ClaimStatus { Confirmed, Discrepant, ReportOnly, EvaluationFailed };

std::string_view to_string(ClaimStatus status);

/// One checkable assertion, its computed value and the verdict.
///
/// status is Confirmed iff |computed - reference| <= tolerance. ReportOnly
/// is used only when no reference exists; EvaluationFailed records an
/// in-band evaluation error (the message goes to note).
struct ClaimRecord {
    std::string id;
    Complex computed{};
    bool complex_valued = false;
    std::optional<Complex> reference;
    double tolerance = 0.0;
    ClaimStatus status = ClaimStatus::ReportOnly;
    std::string note;
    /// Supporting values (e.g. M(1..100) for the Mertens claim).
    std::vector<double> series;

    static ClaimRecord judged(std::string id, Complex computed, Complex reference,
                              double tolerance, std::string note, bool complex_valued = false);
    static ClaimRecord report_only(std::string id, Complex computed, std::string note,
                                   bool complex_valued = false);
    static ClaimRecord failed(std::string id, std::string message);
};

}  // namespace omqm
