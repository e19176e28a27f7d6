#pragma once

// The consistency battery behind `covosc verify`: every analytic claim the
// library makes about the squeezed states, checked by an independent
// numerical route with pinned tolerances. Checks are pure functions of the
// options, run in a fixed order, so repeated runs produce identical bytes.

#include <optional>
#include <string>
#include <vector>

#include "covosc/analysis.hpp"

namespace covosc {

inline constexpr const char* kVersion = "0.1.0";

// Kernel signs under which fourier2d maps the coordinate-space states onto
// their momentum-space partners; recorded in every report.
inline constexpr FourierSigns kFourierConvention{+1, +1};

struct CheckResult {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    // "<=" value must stay below tolerance, ">=" value must reach it.
    std::string comparison = "<=";
    std::string error;  // non-empty when the computation itself threw
};

struct VerifyOptions {
    Metric metric = Metric::Minkowski;
    std::vector<double> etas{0.0, 0.5, 1.0, 2.0};
    // Explicit grid for the grid-based checks (normalization, residuals,
    // transform); when absent each check picks its own resolved grid.
    std::optional<GridSpec> grid;
};

std::vector<CheckResult> run_verify(const VerifyOptions& opt);

bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace covosc
