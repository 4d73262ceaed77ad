#pragma once

#include "ptspec/types.hpp"

namespace ptspec {

// Truncated box-basis Hamiltonian for the hard-box potential: diagonal
// r^2 pi^2/4, off-diagonal (-1)^{t/2} 16 i g r s / (pi^2 (r^2-s^2)^2) for
// t = r+s+1 even, zero for odd t. Complex symmetric; parity pseudo-Hermitian
// for real g.
struct HMatrix {
  int n = 0;
  Complex g{};
  std::vector<Complex> entries;  // row-major, n*n

  Complex at(int r, int s) const { return entries[(std::size_t)(r - 1) * n + (s - 1)]; }
};

HMatrix build_hardbox_matrix(Complex g, int n);

// All n eigenvalues, sorted ascending by real part (conjugate pairs with the
// positive-imaginary member first), each with an inverse-iteration style
// residual ||Hv - Ev|| / ||v||. Throws NoConvergence if the QR iteration
// fails.
std::vector<Eigenvalue> eigenvalues(const HMatrix& h, double tol = 1e-10);

// det(H - E I) by complex LU with partial pivoting. Kept independent of the
// QR path so the two can cross-check each other.
Complex det_characteristic(const HMatrix& h, Complex e);

// || P H P - H^dagger ||_max with P = diag((-1)^r).
double pseudo_hermiticity_residual(const HMatrix& h);

// || H - H^T ||_max.
double symmetry_residual(const HMatrix& h);

}  // namespace ptspec
