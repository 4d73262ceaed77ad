#pragma once

#include <span>

#include "ptspec/types.hpp"

namespace ptspec {

// Hard box: V(x) = i g x for |x| < 1, infinite walls at x = +-1.
// The Airy scale is q with q^3 = g^2; branch selects among the three cube
// roots (0 is the root nearest the positive real axis, exactly |g|^{2/3} for
// real g). Purely imaginary g expresses the Hermitian counterpart V = |g| x.
struct HardBoxProblem {
  Complex g{};
  int branch = 0;
};

enum class SpectrumMethod { Transcendental, Matrix };

struct Spectrum {
  HardBoxProblem problem;
  std::vector<Eigenvalue> eigenvalues;  // sorted by eigen_less
  bool pt_broken = false;               // any conjugate pair present
  SpectrumMethod method = SpectrumMethod::Transcendental;
};

struct ExceptionalPoint {
  double g_c = 0;
  double e_c = 0;
  int pair_index = 0;      // index of the lower member of the merging pair
  double ground_jump = 0;  // E_G(g_c + eps) - E_G(g_c - eps), eps = 0.005
  double residual_f = 0, residual_dfde = 0;
};

struct EnergyBand {
  Complex g{};
  int branch = 0;
  double e_lo = 0, e_hi = 0;
  double norm_threshold = 0;  // null-vector threshold used for classification
};

// Left side of the boundary determinant
//   Ai[(E+ig)/q] Bi[(E-ig)/q] - Ai[(E-ig)/q] Bi[(E+ig)/q]
// on the problem's q branch, normalized by the magnitude of its two products
// (computed in scaled form, so large |E| does not overflow). For real g on
// branch 0 the value is exactly i times a real function of real E.
Complex characteristic(Complex e, const HardBoxProblem& p);

// Im(characteristic) for real g, real E, branch 0 - the real function whose
// sign changes are the real eigenvalues.
double real_characteristic(double e, const HardBoxProblem& p);

// Lowest `count` eigenvalues. Real roots come from scan+refine on
// real_characteristic; when matrix seeds (N = max(40, 2 count + 10)) show
// conjugate pairs, those are refined by complex Newton on the characteristic.
// Every refined eigenvalue is cross-checked against the nearest matrix seed;
// disagreement beyond 1e-2 (relative to max(1,|E|)) throws SeedMismatch.
Spectrum spectrum(const HardBoxProblem& p, int count);

// psi on the grid via the boundary null vector (-Bi[(E+ig)/q], Ai[(E+ig)/q]),
// scaled so the largest coefficient has unit modulus. Throws InconsistentC
// when the two expressions of the coefficient ratio disagree beyond 1e-6
// (spurious root or null-band energy).
std::vector<Complex> eigenfunction(Complex e, const HardBoxProblem& p,
                                   std::span<const double> xs);

// The two expressions -Bi[(E+ig)/q]/Ai[(E+ig)/q], -Bi[(E-ig)/q]/Ai[(E-ig)/q]
// and their relative difference. Throws PoleAtAiZero if Ai vanishes at an
// evaluation point.
struct CoefficientC {
  Complex c1{}, c2{};
  double residual = 0;
};
CoefficientC coefficient_C(Complex e, const HardBoxProblem& p);

// Track the lowest real eigenvalue pairs across [g_lo, g_hi]; return every
// coalescence with the ground-level jump measured at g_c +- 0.005.
std::vector<ExceptionalPoint> exceptional_points(double g_lo, double g_hi);

// Flag maximal E-intervals where the characteristic residual sits below
// root_tol while the boundary-system null vector produces only an
// exponentially small wavefunction (ratio below norm_threshold): energies
// that a root-finder accepts although no genuine eigenstate exists. The
// test is run in the representation of the branch (q_k or -q_k) where the
// exponential dominance is strongest. Edges move with the thresholds; they
// are reported together.
std::vector<EnergyBand> detect_null_bands(const HardBoxProblem& p, double e_lo, double e_hi,
                                          double step, double norm_threshold = 1e-6,
                                          double root_tol = 1e-6);

// Internal nullity measure used by detect_null_bands (exposed for tests and
// branch classification): max |psi| over the box relative to the coefficient
// and Airy scales, as log10.
double null_vector_log10_ratio(double e, const HardBoxProblem& p);

// Hermitian counterpart V = g x in the same box, real Airy arguments
// (g x - E)/g^{2/3}; all eigenvalues real.
Spectrum hermitian_spectrum(double g, int count);

// Least-squares slope of log E_n vs log n over the top half of the real
// levels. Throws InsufficientData below 10 levels.
double asymptotic_check(const Spectrum& s);

// Exact box levels n^2 pi^2/4 (the g -> 0 path).
double box_level(int n);

}  // namespace ptspec
