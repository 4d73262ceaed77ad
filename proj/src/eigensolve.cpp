#include "ptspec/eigensolve.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace ptspec {

HMatrix build_hardbox_matrix(Complex g, int n) {
  if (n < 1) throw std::invalid_argument("build_hardbox_matrix: n >= 1 required");
  HMatrix h;
  h.n = n;
  h.g = g;
  h.entries.assign((std::size_t)n * n, Complex(0.0));
  const std::int64_t nn = n;
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 1; r <= nn; ++r) {
    for (std::int64_t s = 1; s <= nn; ++s) {
      Complex v(0.0);
      if (r == s) {
        v = Complex(double(r) * double(r) * kPi * kPi / 4.0, 0.0);
      } else if ((r + s) % 2 == 1) {  // t = r+s+1 even
        const std::int64_t t = r + s + 1;
        const double sign = (t / 2) % 2 == 0 ? 1.0 : -1.0;
        const double d = double(r * r - s * s);
        v = sign * Complex(0.0, 1.0) * g * (16.0 * double(r) * double(s) / (kPi * kPi * d * d));
      }
      h.entries[(std::size_t)(r - 1) * n + (s - 1)] = v;
    }
  }
  return h;
}

std::vector<Eigenvalue> eigenvalues(const HMatrix& h, double tol) {
  using Mat = Eigen::MatrixXcd;
  Mat m(h.n, h.n);
  for (int r = 0; r < h.n; ++r)
    for (int s = 0; s < h.n; ++s) m(r, s) = h.entries[(std::size_t)r * h.n + s];

  Eigen::ComplexEigenSolver<Mat> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw SolveError(SolveError::Kind::NoConvergence, "eigenvalues: QR iteration failed");

  std::vector<Eigenvalue> out(h.n);
  for (int i = 0; i < h.n; ++i) {
    const Complex lam = solver.eigenvalues()(i);
    const Eigen::VectorXcd v = solver.eigenvectors().col(i);
    const double res =
        (m * v - lam * v).lpNorm<Eigen::Infinity>() / v.lpNorm<Eigen::Infinity>();
    out[i].value = lam;
    out[i].residual = res;
    out[i].is_real = std::abs(lam.imag()) <= 1e-8 * std::max(1.0, std::abs(lam));
    if (res > std::max(tol, 1e-10) * std::max(1.0, std::abs(lam)) * 1e3)
      throw SolveError(SolveError::Kind::NoConvergence,
                       "eigenvalues: residual above tolerance");
  }
  std::sort(out.begin(), out.end(),
            [](const Eigenvalue& a, const Eigenvalue& b) { return eigen_less(a.value, b.value); });
  return out;
}

Complex det_characteristic(const HMatrix& h, Complex e) {
  const int n = h.n;
  std::vector<Complex> a = h.entries;
  for (int i = 0; i < n; ++i) a[(std::size_t)i * n + i] -= e;

  Complex det(1.0);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(a[(std::size_t)col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      const double m = std::abs(a[(std::size_t)r * n + col]);
      if (m > best) { best = m; piv = r; }
    }
    if (best == 0.0) return Complex(0.0);
    if (piv != col) {
      for (int c = col; c < n; ++c)
        std::swap(a[(std::size_t)piv * n + c], a[(std::size_t)col * n + c]);
      det = -det;
    }
    const Complex p = a[(std::size_t)col * n + col];
    det *= p;
    for (int r = col + 1; r < n; ++r) {
      const Complex f = a[(std::size_t)r * n + col] / p;
      if (f == Complex(0.0)) continue;
      for (int c = col; c < n; ++c)
        a[(std::size_t)r * n + c] -= f * a[(std::size_t)col * n + c];
    }
  }
  return det;
}

double pseudo_hermiticity_residual(const HMatrix& h) {
  double worst = 0.0;
  for (int r = 1; r <= h.n; ++r) {
    for (int s = 1; s <= h.n; ++s) {
      const double pr = (r % 2 == 0) ? 1.0 : -1.0;
      const double ps = (s % 2 == 0) ? 1.0 : -1.0;
      const Complex lhs = pr * ps * h.at(r, s);
      const Complex rhs = std::conj(h.at(s, r));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

double symmetry_residual(const HMatrix& h) {
  double worst = 0.0;
  for (int r = 1; r <= h.n; ++r)
    for (int s = 1; s <= h.n; ++s)
      worst = std::max(worst, std::abs(h.at(r, s) - h.at(s, r)));
  return worst;
}

}  // namespace ptspec
