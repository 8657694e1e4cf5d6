#pragma once

#include <stdexcept>

namespace srm {

/// Thrown when an operation is structurally undefined for the given kind,
/// e.g. the pointwise weight of a Dirac spectrum or the CDF of an
/// empirical sample.
class unsupported_operation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace srm
