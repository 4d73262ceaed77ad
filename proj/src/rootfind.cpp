#include "ptspec/rootfind.hpp"

#include <algorithm>
#include <cmath>

#include "ptspec/grid.hpp"

namespace ptspec {

std::vector<Bracket> scan_brackets(const RealFn& f, double e_lo, double e_hi, double step) {
  if (step <= 0) throw std::invalid_argument("scan_brackets: step must be positive");
  const int n = std::max(1, (int)std::ceil((e_hi - e_lo) / step));
  const std::vector<double> xs = grid::linspace(e_lo, e_hi, n);
  const std::vector<double> fs = grid::map(xs, f);
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (!std::isfinite(fs[i]))
      throw SolveError(SolveError::Kind::NonFinite,
                       "scan_brackets: non-finite value at E=" + std::to_string(xs[i]));
  std::vector<Bracket> out;
  for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
    if (fs[i] == 0.0) {
      out.push_back({xs[i], xs[i], 0.0, 0.0});
    } else if ((fs[i] < 0) != (fs[i + 1] < 0)) {
      out.push_back({xs[i], xs[i + 1], fs[i], fs[i + 1]});
    }
  }
  return out;
}

double refine_real(const RealFn& f, const Bracket& br, double tol) {
  double a = br.lo, b = br.hi;
  double fa = br.f_lo, fb = br.f_hi;
  if (a == b) return a;
  if (!std::isfinite(fa) || !std::isfinite(fb))
    throw SolveError(SolveError::Kind::ToleranceNotMet, "refine_real: non-finite endpoint");
  if ((fa < 0) == (fb < 0)) throw std::invalid_argument("refine_real: invalid bracket");

  // Brent's method (zeroin).
  double c = a, fc = fa, d = b - a, e = d;
  for (int iter = 0; iter < 200; ++iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
    if (!std::isfinite(fb))
      throw SolveError(SolveError::Kind::ToleranceNotMet, "refine_real: non-finite inside bracket");
    if ((fb < 0) == (fc < 0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

Complex newton_complex(const ComplexFn& f, Complex seed, double tol) {
  if (!is_finite(seed)) throw SolveError(SolveError::Kind::NonFinite, "newton_complex: seed");
  Complex z = seed;
  for (int it = 0; it < 100; ++it) {
    const Complex fz = f(z);
    if (!is_finite(fz))
      throw SolveError(SolveError::Kind::NoConvergence, "newton_complex: non-finite value");
    if (std::abs(fz) <= tol) return z;
    const double h = 1e-6 * std::max(1.0, std::abs(z));
    const Complex df = (f(z + h) - f(z - h)) / (2.0 * h);
    if (std::abs(df) < 1e-14)
      throw SolveError(SolveError::Kind::NoConvergence, "newton_complex: derivative underflow");
    Complex step = fz / df;
    // step limiter, keeps wild seeds from escaping
    const double cap = 1.0 + std::abs(z);
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    z -= step;
  }
  throw SolveError(SolveError::Kind::NoConvergence, "newton_complex: iteration budget exhausted");
}

int count_roots_rect(const ComplexFn& f, const RectRegion& rect, int samples_per_edge) {
  const int m = std::max(2, samples_per_edge);
  std::vector<Complex> pts;
  pts.reserve(4 * m);
  for (int i = 0; i < m; ++i)
    pts.emplace_back(rect.re_lo + (rect.re_hi - rect.re_lo) * i / m, rect.im_lo);
  for (int i = 0; i < m; ++i)
    pts.emplace_back(rect.re_hi, rect.im_lo + (rect.im_hi - rect.im_lo) * i / m);
  for (int i = 0; i < m; ++i)
    pts.emplace_back(rect.re_hi - (rect.re_hi - rect.re_lo) * i / m, rect.im_hi);
  for (int i = 0; i < m; ++i)
    pts.emplace_back(rect.re_lo, rect.im_hi - (rect.im_hi - rect.im_lo) * i / m);

  const std::vector<Complex> fs = grid::map_complex(pts, f);
  for (const Complex& v : fs) {
    if (!is_finite(v)) throw SolveError(SolveError::Kind::NonFinite, "count_roots_rect");
    if (std::abs(v) < 1e-12)
      throw SolveError(SolveError::Kind::RootOnContour, "count_roots_rect: |f| < 1e-12 on contour");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const Complex a = fs[i];
    const Complex b = fs[(i + 1) % fs.size()];
    total += std::arg(b / a);
  }
  return (int)std::lround(total / (2.0 * kPi));
}

namespace {

// Local re-bracketing of a real root near a previous location.
std::optional<double> local_root(const RealFn& f, double e_prev, double radius, double tol) {
  const double step = std::max(radius / 24.0, 1e-9);
  double lo = e_prev - radius, hi = e_prev + radius;
  double xa = lo, fa = f(xa);
  for (double x = lo + step; x <= hi + 0.5 * step; x += step) {
    const double fx = f(x);
    if (std::isfinite(fa) && std::isfinite(fx) && (fa < 0) != (fx < 0))
      return refine_real(f, {xa, x, fa, fx}, tol);
    xa = x;
    fa = fx;
  }
  return std::nullopt;
}

}  // namespace

RootPath track_root(const ParamFn& f, double e0, double g0, double g1, int steps) {
  RootPath path;
  if (std::abs(f(g0, e0)) > 1e-9)
    throw std::invalid_argument("track_root: E0 is not a root at g0");
  path.g.push_back(g0);
  path.e.push_back(Complex(e0, 0.0));
  double e_prev = e0;
  double radius = 0.25;
  for (int k = 1; k <= steps; ++k) {
    const double g = g0 + (g1 - g0) * (double(k) / steps);
    const RealFn fg = [&](double e) { return f(g, e); };
    const auto r = local_root(fg, e_prev, radius, 1e-12);
    if (!r) {
      path.coalesced = true;
      path.coalescence = std::make_pair(g, e_prev);
      return path;
    }
    radius = std::clamp(4.0 * std::abs(*r - e_prev), 0.05, 1.0);
    e_prev = *r;
    path.g.push_back(g);
    path.e.push_back(Complex(e_prev, 0.0));
  }
  return path;
}

CoalescencePoint find_coalescence(const ParamFn& f, double g_lo, double g_hi, double e_seed) {
  double g = 0.5 * (g_lo + g_hi);
  double e = e_seed;
  const auto fval = [&](double gg, double ee) { return f(gg, ee); };
  const auto dfde = [&](double gg, double ee) {
    const double h = 1e-6 * std::max(1.0, std::abs(ee));
    return (fval(gg, ee + h) - fval(gg, ee - h)) / (2.0 * h);
  };
  for (int it = 0; it < 80; ++it) {
    const double r1 = fval(g, e);
    const double r2 = dfde(g, e);
    if (std::abs(r1) <= 1e-8 && std::abs(r2) <= 1e-8 && it > 0)
      return {g, e, std::abs(r1), std::abs(r2)};
    const double hg = 1e-4 * std::max(1.0, std::abs(g));
    const double he = 1e-4 * std::max(1.0, std::abs(e));
    const double j11 = (fval(g + hg, e) - fval(g - hg, e)) / (2 * hg);
    const double j12 = (fval(g, e + he) - fval(g, e - he)) / (2 * he);
    const double j21 = (dfde(g + hg, e) - dfde(g - hg, e)) / (2 * hg);
    const double j22 = (dfde(g, e + he) - dfde(g, e - he)) / (2 * he);
    const double det = j11 * j22 - j12 * j21;
    if (!std::isfinite(det) || std::abs(det) < 1e-300)
      throw SolveError(SolveError::Kind::NoConvergence, "find_coalescence: singular Jacobian");
    double dg = (r1 * j22 - r2 * j12) / det;
    double de = (j11 * r2 - j21 * r1) / det;
    const double cap_g = 0.25 * (g_hi - g_lo) + 1e-6;
    if (std::abs(dg) > cap_g) { de *= cap_g / std::abs(dg); dg = std::copysign(cap_g, dg); }
    g -= dg;
    e -= de;
    g = std::clamp(g, g_lo - 0.5 * (g_hi - g_lo), g_hi + 0.5 * (g_hi - g_lo));
  }
  throw SolveError(SolveError::Kind::NoConvergence, "find_coalescence: no convergence");
}

}  // namespace ptspec
