#include "ptspec/hardbox.hpp"

#include <algorithm>
#include <cmath>

#include "ptspec/airy.hpp"
#include "ptspec/branches.hpp"
#include "ptspec/eigensolve.hpp"
#include "ptspec/grid.hpp"
#include "ptspec/rootfind.hpp"

namespace ptspec {
namespace {

constexpr double kGZeroCutoff = 1e-6;     // below this, the exact box formula
constexpr double kScanStep = 0.05;        // default energy scan step
constexpr double kCoalesceTol = 1e-4;     // pair-merge detector threshold

Complex branch_q(const HardBoxProblem& p) { return branch_values(p.g).get(p.branch); }

struct CharParts {
  Complex t1, t2;     // scaled products Ai(zp)Bi(zm), Ai(zm)Bi(zp)
  Complex e1, e2;     // their exponents
  AiryScaled sp, sm;  // scaled Airy data at zp, zm
  Complex zp, zm;
};

CharParts char_parts(Complex e, Complex g, Complex q) {
  CharParts c;
  c.zp = (e + Complex(0, 1) * g) / q;
  c.zm = (e - Complex(0, 1) * g) / q;
  c.sp = airy_scaled(c.zp);
  c.sm = airy_scaled(c.zm);
  c.t1 = c.sp.ai * c.sm.bi;
  c.e1 = c.sp.ea + c.sm.eb;
  c.t2 = c.sm.ai * c.sp.bi;
  c.e2 = c.sm.ea + c.sp.eb;
  return c;
}

// (t1 e^{E1} - t2 e^{E2}) / (|t1| e^{Re E1} + |t2| e^{Re E2}), overflow-free.
Complex normalized_difference(const CharParts& c) {
  const double m = std::max(c.e1.real(), c.e2.real());
  const Complex f1 = c.t1 * std::exp(c.e1 - m);
  const Complex f2 = c.t2 * std::exp(c.e2 - m);
  const double scale = std::abs(c.t1) * std::exp(c.e1.real() - m) +
                       std::abs(c.t2) * std::exp(c.e2.real() - m);
  if (scale == 0.0)
    throw SolveError(SolveError::Kind::Overflow, "characteristic: zero scale");
  return (f1 - f2) / scale;
}

bool is_real_pt_case(const HardBoxProblem& p) {
  return p.g.imag() == 0.0 && p.branch == 0;
}

std::vector<double> box_levels(int count) {
  std::vector<double> out(count);
  for (int n = 1; n <= count; ++n) out[n - 1] = box_level(n);
  return out;
}

}  // namespace

double box_level(int n) { return n * n * kPi * kPi / 4.0; }

Complex characteristic(Complex e, const HardBoxProblem& p) {
  if (p.g == Complex(0.0))
    throw std::invalid_argument("characteristic: g = 0 has no transcendental form");
  const CharParts c = char_parts(e, p.g, branch_q(p));
  Complex f = normalized_difference(c);
  if (is_real_pt_case(p) && e.imag() == 0.0) f = Complex(0.0, f.imag());
  return f;
}

double real_characteristic(double e, const HardBoxProblem& p) {
  return characteristic(Complex(e, 0.0), p).imag();
}

CoefficientC coefficient_C(Complex e, const HardBoxProblem& p) {
  const CharParts c = char_parts(e, p.g, branch_q(p));
  const double ai_p = std::abs(c.sp.ai), bi_p = std::abs(c.sp.bi);
  const double ai_m = std::abs(c.sm.ai), bi_m = std::abs(c.sm.bi);
  if (ai_p < 1e-13 * (ai_p + bi_p) || ai_m < 1e-13 * (ai_m + bi_m))
    throw SolveError(SolveError::Kind::PoleAtAiZero, "coefficient_C: Ai vanishes at boundary");
  CoefficientC out;
  // C = -Bi/Ai at each boundary; the scaled exponents combine as e_b - e_a.
  out.c1 = -(c.sp.bi / c.sp.ai) * std::exp(c.sp.eb - c.sp.ea);
  out.c2 = -(c.sm.bi / c.sm.ai) * std::exp(c.sm.eb - c.sm.ea);
  const double scale = std::max(std::abs(out.c1), std::abs(out.c2));
  out.residual = scale > 0 ? std::abs(out.c1 - out.c2) / scale : 0.0;
  return out;
}

namespace {

// Null vector of the boundary row (a, b) = (-Bi(zp), Ai(zp)) in scaled form;
// compare max |psi| over the box against the coefficient scale times the
// Airy scale, all through exponent arithmetic. Log10 of the ratio.
double null_ratio_log10_q(double e, Complex g, Complex q) {
  const CharParts c = char_parts(Complex(e, 0.0), g, q);
  const double log_a = std::log(std::abs(c.sp.bi) + 1e-300) + c.sp.eb.real();
  const double log_b = std::log(std::abs(c.sp.ai) + 1e-300) + c.sp.ea.real();
  const double log_coeff = std::max(log_a, log_b);

  double log_psi_max = -1e300;
  double log_airy_max = -1e300;
  for (int i = 0; i <= 8; ++i) {
    const double x = -1.0 + 0.25 * i;
    const Complex z = (Complex(e, 0.0) - Complex(0, 1) * g * x) / q;
    const AiryScaled s = airy_scaled(z);
    const double la = std::log(std::abs(s.ai) + 1e-300) + s.ea.real();
    const double lb = std::log(std::abs(s.bi) + 1e-300) + s.eb.real();
    log_airy_max = std::max({log_airy_max, la, lb});
    // psi = a Ai(z) + b Bi(z) with a = -Bi(zp), b = Ai(zp)
    const Complex ea1 = c.sp.eb + s.ea;
    const Complex ea2 = c.sp.ea + s.eb;
    const double m = std::max(ea1.real(), ea2.real());
    const Complex psi_s =
        -c.sp.bi * s.ai * std::exp(ea1 - m) + c.sp.ai * s.bi * std::exp(ea2 - m);
    const double lp = std::log(std::abs(psi_s) + 1e-300) + m;
    log_psi_max = std::max(log_psi_max, lp);
  }
  return (log_psi_max - log_coeff - log_airy_max) / std::log(10.0);
}

}  // namespace

double null_vector_log10_ratio(double e, const HardBoxProblem& p) {
  return null_ratio_log10_q(e, p.g, branch_q(p));
}

std::vector<Complex> eigenfunction(Complex e, const HardBoxProblem& p,
                                   std::span<const double> xs) {
  const CoefficientC cc = coefficient_C(e, p);
  if (cc.residual > 1e-6)
    throw SolveError(SolveError::Kind::InconsistentC,
                     "eigenfunction: coefficient expressions disagree (residual " +
                         std::to_string(cc.residual) + ")");
  const Complex q = branch_q(p);
  const Complex zp = (e + Complex(0, 1) * p.g) / q;
  const AiryValues bp = airy_eval(zp);
  if (bp.overflow) throw SolveError(SolveError::Kind::Overflow, "eigenfunction: boundary overflow");
  // (a, b) = (-Bi(zp), Ai(zp)), normalized to unit max coefficient modulus
  Complex a = -bp.bi, b = bp.ai;
  const double norm = std::max(std::abs(a), std::abs(b));
  a /= norm;
  b /= norm;
  std::vector<Complex> zs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) zs[i] = (e - Complex(0, 1) * p.g * xs[i]) / q;
  return grid::map_complex(zs, [a, b](Complex z) {
    const AiryValues v = airy_eval(z);
    if (v.overflow) throw SolveError(SolveError::Kind::Overflow, "eigenfunction: overflow");
    return a * v.ai + b * v.bi;
  });
}

namespace {

// Real roots of the branch-0 characteristic on [e_lo, e_hi].
std::vector<double> real_roots(const HardBoxProblem& p, double e_lo, double e_hi, double step) {
  const RealFn f = [&p](double e) { return real_characteristic(e, p); };
  std::vector<double> roots;
  for (const Bracket& br : scan_brackets(f, e_lo, e_hi, step))
    roots.push_back(refine_real(f, br, 1e-12));
  return roots;
}

double seed_match_distance(Complex e, const std::vector<Eigenvalue>& seeds) {
  double best = 1e300;
  for (const Eigenvalue& s : seeds) best = std::min(best, std::abs(e - s.value));
  return best;
}

}  // namespace

Spectrum spectrum(const HardBoxProblem& p, int count) {
  if (count < 1) throw std::invalid_argument("spectrum: count >= 1");
  Spectrum out;
  out.problem = p;

  if (std::abs(p.g) < kGZeroCutoff) {
    for (double e : box_levels(count)) out.eigenvalues.push_back({Complex(e, 0.0), 0.0, true});
    return out;
  }
  if (!is_real_pt_case(p)) {
    // complex coupling / complex branch goes through the branch machinery
    return spectrum_on_branch(p.g, p.branch, count);
  }

  const int n_seed = std::max(40, 2 * count + 10);
  const HMatrix hm = build_hardbox_matrix(p.g, n_seed);
  const std::vector<Eigenvalue> seeds = eigenvalues(hm);

  // Window: enough seeds to cover `count` levels, floored at the table range.
  double e_hi = 25.0 * kPi * kPi / 4.0 + 10.0;
  if ((int)seeds.size() >= count)
    e_hi = std::max(e_hi, seeds[count - 1].value.real() + 0.25 * box_level(count + 1));

  std::vector<Eigenvalue> evs;
  for (double r : real_roots(p, kScanStep / 4.0, e_hi, kScanStep)) {
    // null-band filter: genuine eigenvalues carry a resolvable eigenvector
    if (null_vector_log10_ratio(r, p) < -6.0) continue;
    const double res = std::abs(real_characteristic(r, p));
    evs.push_back({Complex(r, 0.0), res, true});
  }

  // Complex pairs, seeded from the matrix method.
  const ComplexFn fc = [&p](Complex e) { return characteristic(e, p); };
  for (const Eigenvalue& s : seeds) {
    if (s.value.imag() <= 1e-6 || s.value.real() > e_hi) continue;
    Complex root;
    try {
      root = newton_complex(fc, s.value, 1e-11);
    } catch (const SolveError&) {
      continue;  // seed beyond transcendental resolution; matrix artifact
    }
    if (std::abs(root.imag()) <= 1e-6) continue;  // collapsed to a real root
    const double res = std::abs(fc(root));
    const Complex pos(root.real(), std::abs(root.imag()));
    evs.push_back({pos, res, false});
    evs.push_back({std::conj(pos), res, false});
  }

  std::sort(evs.begin(), evs.end(),
            [](const Eigenvalue& a, const Eigenvalue& b) { return eigen_less(a.value, b.value); });
  if ((int)evs.size() > count) evs.resize(count);

  // Cross-validation against the matrix seeds (levels within reliable range).
  for (const Eigenvalue& ev : evs) {
    if (ev.value.real() > 0.6 * box_level(n_seed / 2)) continue;
    const double d = seed_match_distance(ev.value, seeds) / std::max(1.0, std::abs(ev.value));
    if (d > 1e-2)
      throw SolveError(SolveError::Kind::SeedMismatch,
                       "spectrum: transcendental root " + std::to_string(ev.value.real()) +
                           " disagrees with matrix seeds");
  }

  out.eigenvalues = std::move(evs);
  for (const Eigenvalue& ev : out.eigenvalues)
    if (!ev.is_real) out.pt_broken = true;
  return out;
}

std::vector<ExceptionalPoint> exceptional_points(double g_lo, double g_hi) {
  if (!(0 < g_lo && g_lo < g_hi))
    throw std::invalid_argument("exceptional_points: need 0 < g_lo < g_hi");

  std::vector<ExceptionalPoint> out;
  const auto lowest_pair = [](double g) -> std::optional<std::pair<double, double>> {
    HardBoxProblem p{Complex(g, 0.0), 0};
    const Spectrum s = spectrum(p, 6);
    std::vector<double> re;
    for (const Eigenvalue& ev : s.eigenvalues)
      if (ev.is_real) re.push_back(ev.value.real());
    if (re.size() < 2) return std::nullopt;
    return std::make_pair(re[0], re[1]);
  };

  const ParamFn fge = [](double g, double e) {
    return real_characteristic(e, HardBoxProblem{Complex(g, 0.0), 0});
  };

  double g = g_lo;
  auto pair = lowest_pair(g);
  const double dg = std::min(0.1, (g_hi - g_lo) / 20.0);
  while (g < g_hi - 1e-12) {
    const double g_next = std::min(g + dg, g_hi);
    const auto next = lowest_pair(g_next);
    const bool merged_now =
        pair && next && std::abs(next->second - next->first) < kCoalesceTol;
    if (pair && (!next || merged_now ||
                 next->first > 0.5 * (pair->first + pair->second) + 2.0)) {
      // the tracked pair vanished (or collapsed) inside (g, g_next]
      const double e_seed = 0.5 * (pair->first + pair->second);
      const CoalescencePoint cp = find_coalescence(fge, g, g_next + dg, e_seed);
      ExceptionalPoint ep;
      ep.g_c = cp.g;
      ep.e_c = cp.e;
      ep.residual_f = cp.residual_f;
      ep.residual_dfde = cp.residual_dfde;
      ep.pair_index = (int)out.size() * 2;
      const auto ground = [&](double gg) {
        const Spectrum s = spectrum(HardBoxProblem{Complex(gg, 0.0), 0}, 3);
        for (const Eigenvalue& ev : s.eigenvalues)
          if (ev.is_real) return ev.value.real();
        return s.eigenvalues.front().value.real();
      };
      ep.ground_jump = ground(cp.g + 0.005) - ground(cp.g - 0.005);
      out.push_back(ep);
      pair = lowest_pair(g_next);
    } else {
      pair = next;
    }
    g = g_next;
  }
  return out;
}

std::vector<EnergyBand> detect_null_bands(const HardBoxProblem& p, double e_lo, double e_hi,
                                          double step, double norm_threshold, double root_tol) {
  if (step <= 0) throw std::invalid_argument("detect_null_bands: step > 0");

  // Work in the representation (q or -q) with the stronger exponential
  // dominance: that is where a root-finder sees the spurious continuum.
  // Both representatives have identical true root sets.
  const Complex q0 = branch_q(p);
  const auto recession = [&](Complex q, double e) {
    const CharParts c = char_parts(Complex(e, 0.0), p.g, q);
    return std::min(std::abs(c.sp.ea.real()), std::abs(c.sm.ea.real()));
  };
  const double mid = 0.5 * (e_lo + e_hi);
  const Complex q = recession(q0, mid) >= recession(-q0, mid) ? q0 : -q0;

  const int n = std::max(1, (int)std::ceil((e_hi - e_lo) / step));
  const std::vector<double> xs = grid::linspace(e_lo, e_hi, n);
  const double log_thr = std::log10(norm_threshold);
  const std::vector<double> in_band = grid::map(xs, [&](double e) {
    const CharParts c = char_parts(Complex(e, 0.0), p.g, q);
    if (std::abs(normalized_difference(c)) > root_tol) return 0.0;
    return null_ratio_log10_q(e, p.g, q) < log_thr ? 1.0 : 0.0;
  });

  std::vector<EnergyBand> bands;
  int run_start = -1;
  for (int i = 0; i <= n; ++i) {
    const bool flagged = in_band[i] > 0.5;
    if (flagged && run_start < 0) run_start = i;
    if ((!flagged || i == n) && run_start >= 0) {
      const int run_end = flagged ? i : i - 1;
      if (run_end > run_start) {  // intervals, not isolated grid hits
        EnergyBand b;
        b.g = p.g;
        b.branch = p.branch;
        b.e_lo = xs[run_start];
        b.e_hi = xs[run_end];
        b.norm_threshold = norm_threshold;
        bands.push_back(b);
      }
      run_start = -1;
    }
  }
  return bands;
}

Spectrum hermitian_spectrum(double g, int count) {
  if (count < 1) throw std::invalid_argument("hermitian_spectrum: count >= 1");
  Spectrum out;
  out.problem = HardBoxProblem{Complex(0.0, g), 0};  // i g_hb x = g x for g_hb = -i g
  if (std::abs(g) < kGZeroCutoff) {
    for (double e : box_levels(count)) out.eigenvalues.push_back({Complex(e, 0.0), 0.0, true});
    return out;
  }
  const double c = std::cbrt(g * g);
  const RealFn f = [g, c](double e) {
    const AiryScaled sp = airy_scaled(Complex((-g - e) / c, 0.0));
    const AiryScaled sm = airy_scaled(Complex((g - e) / c, 0.0));
    const Complex e1 = sp.ea + sm.eb, e2 = sm.ea + sp.eb;
    const double m = std::max(e1.real(), e2.real());
    const Complex t1 = sp.ai * sm.bi * std::exp(e1 - m);
    const Complex t2 = sm.ai * sp.bi * std::exp(e2 - m);
    const double scale = std::abs(sp.ai * sm.bi) * std::exp(e1.real() - m) +
                         std::abs(sm.ai * sp.bi) * std::exp(e2.real() - m);
    return (t1 - t2).real() / scale;
  };
  // Levels shift down toward -|g|; scan from below the well bottom.
  const double e_lo = -std::abs(g) - 1.0;
  double e_hi = box_level(count) + std::abs(g) + 5.0;
  std::vector<double> roots;
  for (const Bracket& br : scan_brackets(f, e_lo, e_hi, kScanStep))
    roots.push_back(refine_real(f, br, 1e-12));
  for (std::size_t i = 0; i < roots.size() && (int)i < count; ++i)
    out.eigenvalues.push_back({Complex(roots[i], 0.0), std::abs(f(roots[i])), true});
  return out;
}

double asymptotic_check(const Spectrum& s) {
  std::vector<double> re;
  for (const Eigenvalue& ev : s.eigenvalues)
    if (ev.is_real && ev.value.real() > 0) re.push_back(ev.value.real());
  if (re.size() < 10)
    throw SolveError(SolveError::Kind::InsufficientData, "asymptotic_check: need >= 10 levels");
  // least squares on the top half of log E_n vs log n; n is the level index
  const std::size_t lo = re.size() / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = lo; i < re.size(); ++i) {
    const double x = std::log(double(i + 1));
    const double y = std::log(re[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++m;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace ptspec
