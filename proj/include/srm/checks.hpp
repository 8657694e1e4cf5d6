#pragma once

#include <string>
#include <vector>

namespace srm::checks {

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Spectrum admissibility, translation/homogeneity/additivity laws, VaR
/// and ES identities, quantile properties, quadrature order, and the
/// randomized subadditivity batch. Deterministic (fixed seeds).
std::vector<PropertyResult> property_suite();

/// Qualitative sweep shapes: the exponential sweep rises everywhere, the
/// power-low sweep rises/peaks/falls, and the two low-power weight
/// profiles cross exactly once.
std::vector<PropertyResult> shape_suite();

/// Parameter-derivative sign and its invariance under quantile shifts.
std::vector<PropertyResult> derivative_suite();

std::vector<PropertyResult> all_suites();

}  // namespace srm::checks
