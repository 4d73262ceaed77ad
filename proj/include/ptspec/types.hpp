#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptspec {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Solver-level failure. The kind tag is what the CLI maps to exit codes and
// what tests match on; the message carries context (last good point etc.).
class SolveError : public std::runtime_error {
 public:
  enum class Kind {
    NonFinite,
    Overflow,
    NoConvergence,
    ToleranceNotMet,
    RootOnContour,
    LostRoot,
    SeedMismatch,
    InsufficientData,
    DegenerateDenominator,
    PoleAtAiZero,
    InconsistentC,
  };

  SolveError(Kind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  Kind kind() const { return kind_; }
  static const char* kind_name(Kind k);

 private:
  Kind kind_;
};

// Complex eigenvalue with a residual estimate and a reality tag.
struct Eigenvalue {
  Complex value{};
  double residual = 0.0;
  bool is_real = true;
};

// Sort order used everywhere: ascending real part; within a conjugate pair
// the positive-imaginary member comes first.
inline bool eigen_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() > b.imag();
}

inline bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace ptspec
