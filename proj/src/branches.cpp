#include "ptspec/branches.hpp"

#include <algorithm>
#include <cmath>

#include "ptspec/airy.hpp"
#include "ptspec/grid.hpp"
#include "ptspec/rootfind.hpp"

namespace ptspec {

namespace {
const Complex kOmega(-0.5, 0.8660254037844386467637231707529362);
}

BranchSet branch_values(Complex g) {
  if (g == Complex(0.0)) throw std::invalid_argument("branch_values: g != 0 required");
  const Complex principal = std::exp((2.0 / 3.0) * std::log(g));
  const double target = (2.0 / 3.0) * std::arg(g);
  Complex best = principal;
  double best_key = 1e300;
  for (int k = 0; k < 3; ++k) {
    Complex c = principal;
    for (int j = 0; j < k; ++j) c *= kOmega;
    // nearest to the positive real axis; ties resolved toward arg = 2/3 arg g
    const double key = std::abs(std::arg(c)) + 1e-6 * std::abs(std::arg(c) - target);
    if (key < best_key) {
      best_key = key;
      best = c;
    }
  }
  if (std::abs(best.imag()) < 1e-14 * std::abs(best.real()) && best.real() > 0)
    best = Complex(best.real(), 0.0);  // exactly real positive for real g
  return {best, best * kOmega, best * kOmega * kOmega};
}

Spectrum spectrum_on_branch(Complex g, int k, int count) {
  if (k < 0 || k > 2) throw std::invalid_argument("spectrum_on_branch: branch in {0,1,2}");
  const HardBoxProblem p{g, k};
  if (g.imag() == 0.0 && k == 0) return spectrum(p, count);

  Spectrum out;
  out.problem = p;
  out.method = SpectrumMethod::Transcendental;

  const double gm = std::abs(g);
  const double e_lo = -gm - 1.0;
  const double e_hi = box_level(count) + gm + 5.0;
  const int n = (int)std::ceil((e_hi - e_lo) / 0.05);
  const std::vector<double> xs = grid::linspace(e_lo, e_hi, n);
  const std::vector<double> rho = grid::map(xs, [&](double e) {
    return std::abs(characteristic(Complex(e, 0.0), p));
  });

  const ComplexFn fc = [&p](Complex e) { return characteristic(e, p); };
  std::vector<double> roots;
  for (int i = 1; i + 1 < (int)rho.size(); ++i) {
    if (!(rho[i] < rho[i - 1] && rho[i] <= rho[i + 1] && rho[i] < 0.05)) continue;
    Complex r;
    try {
      r = newton_complex(fc, Complex(xs[i], 0.0), 1e-11);
    } catch (const SolveError&) {
      continue;
    }
    if (std::abs(r.imag()) > 1e-6) continue;            // not a real eigenvalue
    if (r.real() < e_lo || r.real() > e_hi) continue;   // escaped the window
    if (null_vector_log10_ratio(r.real(), p) < -6.0) continue;  // null eigenvector
    roots.push_back(r.real());
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-7; }),
              roots.end());
  if ((int)roots.size() > count) roots.resize(count);
  for (double r : roots)
    out.eigenvalues.push_back({Complex(r, 0.0), std::abs(fc(Complex(r, 0.0))), true});
  return out;
}

double proportionality_check(Complex e, Complex g, int j, int k, std::span<const double> xs) {
  const std::vector<Complex> pj = eigenfunction(e, HardBoxProblem{g, j}, xs);
  const std::vector<Complex> pk = eigenfunction(e, HardBoxProblem{g, k}, xs);
  double mk = 0;
  for (const Complex& v : pk) mk = std::max(mk, std::abs(v));
  std::vector<Complex> ratios;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (std::abs(pk[i]) > 1e-8 * mk) ratios.push_back(pj[i] / pk[i]);
  if (ratios.size() < 3)
    throw SolveError(SolveError::Kind::DegenerateDenominator,
                     "proportionality_check: too few valid grid points");
  std::vector<Complex> by_mod = ratios;
  std::sort(by_mod.begin(), by_mod.end(),
            [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
  const Complex med = by_mod[by_mod.size() / 2];
  double dev = 0;
  for (const Complex& r : ratios) dev = std::max(dev, std::abs(r - med) / std::abs(med));
  return dev;
}

TurningPoints classical_turning_points(Complex g, Complex e) {
  if (g == Complex(0.0)) throw std::invalid_argument("classical_turning_points: g != 0");
  TurningPoints tp;
  tp.points.push_back(-Complex(0, 1) * e / g);
  tp.pt_pair_criterion = false;  // one turning point; the +-a+ib pair never forms
  return tp;
}

BranchComparison compare_branches(Complex g, int count) {
  BranchComparison cmp;
  cmp.branches = branch_values(g);
  for (int k = 0; k < 3; ++k) cmp.spectra.push_back(spectrum_on_branch(g, k, count));

  cmp.repeated_of_branch0.resize(3);
  for (int k = 1; k < 3; ++k) {
    for (const Eigenvalue& ev : cmp.spectra[k].eigenvalues) {
      for (std::size_t i = 0; i < cmp.spectra[0].eigenvalues.size(); ++i) {
        if (std::abs(ev.value - cmp.spectra[0].eigenvalues[i].value) < 1e-6) {
          cmp.repeated_of_branch0[k].push_back((int)i);
          break;
        }
      }
    }
  }

  const double e_hi = box_level(count) + std::abs(g) + 5.0;
  for (int k = 0; k < 3; ++k)
    cmp.bands.push_back(detect_null_bands(HardBoxProblem{g, k}, 0.0, e_hi, 0.05));

  const std::vector<double> xs = grid::linspace(-1.0, 1.0, 40);
  for (int idx : cmp.repeated_of_branch0[1]) {
    const Complex e = cmp.spectra[0].eigenvalues[idx].value;
    try {
      cmp.proportionality.push_back(proportionality_check(e, g, 1, 0, xs));
    } catch (const SolveError&) {
      cmp.proportionality.push_back(std::nan(""));
    }
  }
  return cmp;
}

}  // namespace ptspec
