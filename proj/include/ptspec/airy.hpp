#pragma once

#include "ptspec/types.hpp"

namespace ptspec {

// Airy functions Ai, Bi and first derivatives at one complex point.
//
// Evaluation scheme: Maclaurin series (accumulated in quad precision) for
// |z| <= 9, asymptotic expansions beyond, with rotation through the exact
// connection identities so the expansion argument stays inside
// |arg w| <= 2*pi/3.  Relative accuracy is 1e-10 or better for |z| <= 30,
// measured against the oscillatory envelope |Ai|+|Bi| near zeros of the
// individual functions.
//
// Note the literature sometimes quotes the asymptotic prefactor as s^{+1/4};
// the standard (and correct) factor s^{-1/4} is used here.
struct AiryValues {
  Complex ai{};
  Complex dai{};
  Complex bi{};
  Complex dbi{};
  bool overflow = false;  // growing solution left the double range
};

// Scaled representation, safe in the deep exponential regimes:
//   Ai = ai * exp(ea),  Ai' = dai * exp(ea),
//   Bi = bi * exp(eb),  Bi' = dbi * exp(eb).
// The scaled parts stay of algebraic size; products of Airy values should be
// combined through exponent arithmetic (see hardbox/softbox characteristics).
struct AiryScaled {
  Complex ai{}, dai{};
  Complex bi{}, dbi{};
  Complex ea{}, eb{};
};

// Throws SolveError(NonFinite) for non-finite input. Sets .overflow instead
// of returning infinities when exp(2/3 z^{3/2}) exceeds the double range.
AiryValues airy_eval(Complex z);

AiryScaled airy_scaled(Complex z);

// Max of the centered finite-difference residuals |w''(z) - z w(z)| for
// w = Ai and w = Bi, stencil step h. Test helper for the defining ODE.
double airy_ode_residual(Complex z, double h);

namespace detail {
// The two regimes, exposed for the seam-continuity tests.
AiryValues airy_series(Complex z);
AiryValues airy_asymptotic(Complex z);
}  // namespace detail

}  // namespace ptspec
