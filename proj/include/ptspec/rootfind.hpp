#pragma once

#include <functional>
#include <optional>

#include "ptspec/types.hpp"

namespace ptspec {

// Sign-change bracket on the real line.
struct Bracket {
  double lo = 0, hi = 0;
  double f_lo = 0, f_hi = 0;
};

// One root continued through a real parameter g.
struct RootPath {
  std::vector<double> g;
  std::vector<Complex> e;
  bool coalesced = false;
  std::optional<std::pair<double, double>> coalescence;  // (g, E) estimate
};

// Simultaneous f = 0, df/dE = 0 solution (an eigenvalue-pair merge point).
struct CoalescencePoint {
  double g = 0, e = 0;
  double residual_f = 0, residual_dfde = 0;
};

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<Complex(Complex)>;
using ParamFn = std::function<double(double, double)>;  // f(g, E)

// Every sign-change bracket on the uniform grid. Roots spaced closer than
// 2*step can be missed; that is the caller's step to choose.
// Throws NonFinite if f produces a non-finite value on the grid.
std::vector<Bracket> scan_brackets(const RealFn& f, double e_lo, double e_hi, double step);

// Brent-style refinement: inverse quadratic / secant accelerated bisection.
// Always returns a point inside the initial bracket.
double refine_real(const RealFn& f, const Bracket& br, double tol);

// Damped Newton with central-difference derivative (step 1e-6 max(1,|z|)).
Complex newton_complex(const ComplexFn& f, Complex seed, double tol);

// Winding number of f around the rectangle boundary = enclosed root count.
struct RectRegion {
  double re_lo, re_hi, im_lo, im_hi;
};
int count_roots_rect(const ComplexFn& f, const RectRegion& rect, int samples_per_edge);

// Continue a real root of f(g, .) from g0 to g1 in uniform steps, reseeding
// from the previous step. Flags coalescence when the root can no longer be
// re-bracketed locally.
RootPath track_root(const ParamFn& f, double e0, double g0, double g1, int steps);

// Solve f(g,E) = 0, dF/dE(g,E) = 0 by 2-D Newton with finite differences,
// seeded from the supplied interior estimate.
CoalescencePoint find_coalescence(const ParamFn& f, double g_lo, double g_hi, double e_seed);

}  // namespace ptspec
