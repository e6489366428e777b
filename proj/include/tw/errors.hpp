#pragma once

#include <stdexcept>
#include <string>

namespace tw {

/// Bad input: invalid mode, malformed basis, out-of-range coordinate.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A computation that ran but could not deliver a trustworthy result:
/// under-resolved quadrature, singular matching system, integrator failure.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace tw
