#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bernlab {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Invalid argument / violated hypothesis. CLI maps this to exit code 2.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Failure of a numeric procedure (pole on a circle, residue not settling,
/// root iteration stuck). CLI maps this to exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bernlab
