#include "ptspec/airy.hpp"

#include <array>
#include <cmath>

namespace ptspec {
namespace {

// ---------------------------------------------------------------------------
// Quad-precision complex arithmetic for the Maclaurin series.  The series
// itself converges everywhere; what limits it in doubles is cancellation
// (condition ~ exp(4/3 |z|^{3/2}) in the recessive direction).  Accumulating
// in __float128 keeps the seam radius 9.0 safely inside 1e-12 territory.
// ---------------------------------------------------------------------------
struct QComplex {
  __float128 re, im;
};

inline QComplex qc(double re, double im) { return {(__float128)re, (__float128)im}; }
inline QComplex operator+(QComplex a, QComplex b) { return {a.re + b.re, a.im + b.im}; }
inline QComplex operator*(QComplex a, QComplex b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline QComplex operator*(QComplex a, __float128 s) { return {a.re * s, a.im * s}; }
inline __float128 qabs1(QComplex a) {
  __float128 r = a.re < 0 ? -a.re : a.re;
  __float128 i = a.im < 0 ? -a.im : a.im;
  return r + i;
}
inline Complex to_complex(QComplex a) { return Complex((double)a.re, (double)a.im); }

constexpr __float128 kAi0 = 0.3550280538878172392600631860041831764Q;    // Ai(0)
constexpr __float128 kMAip0 = 0.25881940379280679840518356018920396348Q;  // -Ai'(0)
constexpr __float128 kQSqrt3 = 1.7320508075688772935274463415058723669Q;

constexpr double kSeamRadius = 9.0;
constexpr double kTwoPiThird = 2.0 * kPi / 3.0;
const Complex kOmega(-0.5, 0.8660254037844386467637231707529362);  // exp(2i pi/3)

// Maclaurin sums of the standard pair f, g (f'' = z f, f(0)=1, f'(0)=0 and
// g(0)=0, g'(0)=1) plus their derivatives, all in quad precision.
AiryValues series_eval(Complex z) {
  const QComplex z3 = qc(z.real(), z.imag()) * qc(z.real(), z.imag()) * qc(z.real(), z.imag());
  QComplex tf = qc(1, 0);                                   // a_k z^{3k}, k=0
  QComplex tg = qc(z.real(), z.imag());                     // b_k z^{3k+1}, k=0
  QComplex tfp = qc(z.real(), z.imag()) * qc(z.real(), z.imag()) * (__float128)0.5;  // k=1 term of f'
  QComplex tgp = qc(1, 0);                                  // b_k (3k+1) z^{3k}, k=0
  QComplex f = tf, g = tg, fp = tfp, gp = tgp;

  for (int k = 0; k < 400; ++k) {
    const __float128 k3 = (__float128)(3 * k);
    tf = tf * z3 * (1 / ((k3 + 2) * (k3 + 3)));
    tg = tg * z3 * (1 / ((k3 + 3) * (k3 + 4)));
    tgp = tgp * z3 * (1 / ((k3 + 1) * (k3 + 3)));
    if (k >= 1) {
      const __float128 kk = (__float128)k;
      tfp = tfp * z3 * ((kk + 1) / (kk * (k3 + 2) * (k3 + 3)));
    }
    f = f + tf;
    g = g + tg;
    fp = fp + tfp;
    gp = gp + tgp;
    const __float128 tsum = qabs1(tf) + qabs1(tg) + qabs1(tfp) + qabs1(tgp);
    const __float128 ssum = qabs1(f) + qabs1(g) + qabs1(fp) + qabs1(gp);
    if (tsum < ssum * (__float128)1e-35) break;
  }

  AiryValues out;
  out.ai = to_complex(f * kAi0 + g * (-kMAip0));
  out.dai = to_complex(fp * kAi0 + gp * (-kMAip0));
  out.bi = to_complex((f * kAi0 + g * kMAip0) * kQSqrt3);
  out.dbi = to_complex((fp * kAi0 + gp * kMAip0) * kQSqrt3);
  return out;
}

// u_k / v_k coefficient tables of the asymptotic expansions (DLMF 9.7.2).
struct UVTables {
  std::array<double, 26> u{}, v{};
  UVTables() {
    u[0] = 1.0;
    v[0] = 1.0;
    for (int k = 1; k <= 25; ++k) {
      u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
             (216.0 * k * (2.0 * k - 1.0));
      v[k] = -u[k] * (6.0 * k + 1.0) / (6.0 * k - 1.0);
    }
  }
};
const UVTables kUV;

// Scaled Ai along one ray: Ai(w) = ai * exp(-zeta), Ai'(w) = dai * exp(-zeta),
// zeta = (2/3) w^{3/2}.  Valid for |arg w| <= 2 pi/3 (Poincare sector of the
// expansion); adaptive truncation, never summing past the smallest term.
struct CoreAi {
  Complex ai, dai, zeta;
};

CoreAi ai_core(Complex w) {
  const Complex sq = std::sqrt(w);
  const Complex zeta = (2.0 / 3.0) * w * sq;
  const Complex iz = 1.0 / zeta;
  Complex su(1.0), sv(1.0), tu(1.0), tv(1.0);
  double prev = 1e300;
  for (int k = 1; k <= 25; ++k) {
    tu *= -kUV.u[k] / kUV.u[k - 1] * iz;
    tv *= -kUV.v[k] / kUV.v[k - 1] * iz;
    const double mag = std::abs(tu) + std::abs(tv);
    if (mag >= prev) break;  // divergent tail reached
    su += tu;
    sv += tv;
    prev = mag;
    if (mag < 1e-17 * (std::abs(su) + std::abs(sv))) break;
  }
  const Complex w4 = std::sqrt(sq);
  const double two_sqrt_pi = 2.0 * std::sqrt(kPi);
  return {su / (two_sqrt_pi * w4), -sv * w4 / two_sqrt_pi, zeta};
}

// exp with the real part clamped into the double range; reports whether the
// true value would have overflowed.
Complex exp_clamped(Complex e, bool* overflowed) {
  double re = e.real();
  if (re > 690.0) {
    if (overflowed) *overflowed = true;
    re = 690.0;
  }
  return std::exp(Complex(re, e.imag()));
}

// Pick the dominant of two exponent-carrying terms: result = s * exp(e) with
// both contributions folded in and internal exponents kept non-positive.
void combine2(Complex c1, Complex e1, Complex c2, Complex e2, Complex* s, Complex* e) {
  if (e1.real() >= e2.real()) {
    *s = c1 + c2 * std::exp(e2 - e1);
    *e = e1;
  } else {
    *s = c1 * std::exp(e1 - e2) + c2;
    *e = e2;
  }
}

// Scaled evaluation for Im z >= 0, |z| > seam.  Sector rotation keeps every
// expansion argument inside |arg| <= 2 pi/3 (Case A: z itself and
// z e^{-2 pi i/3}; Case B past 2 pi/3: z e^{2 pi i/3} and z e^{-2 pi i/3}).
AiryScaled asym_scaled_upper(Complex z) {
  const Complex rot_m = std::conj(kOmega);  // e^{-2 pi i/3}
  const Complex e_ip6 = std::exp(Complex(0.0, kPi / 6.0));
  const Complex e_mip6 = std::conj(e_ip6);
  const Complex e_i5p6 = std::exp(Complex(0.0, 5.0 * kPi / 6.0));
  const Complex e_mi5p6 = std::conj(e_i5p6);
  AiryScaled r;

  if (std::arg(z) <= kTwoPiThird) {
    const CoreAi A = ai_core(z);
    const CoreAi W = ai_core(z * rot_m);  // W.zeta == -A.zeta up to rounding
    r.ai = A.ai;
    r.dai = A.dai;
    r.ea = -A.zeta;
    // Bi(z) = i Ai(z) + 2 e^{-i pi/6} Ai(z e^{-2 pi i/3})
    combine2(Complex(0, 1) * A.ai, -A.zeta, 2.0 * e_mip6 * W.ai, -W.zeta, &r.bi, &r.eb);
    Complex edum;
    combine2(Complex(0, 1) * A.dai, -A.zeta, 2.0 * e_mi5p6 * W.dai, -W.zeta, &r.dbi, &edum);
  } else {
    const CoreAi U = ai_core(z * kOmega);  // arg wraps into [-2pi/3, -pi/3]
    const CoreAi V = ai_core(z * rot_m);   // arg in (0, pi/3]
    // Ai(z) = -w Ai(u) - w^2 Ai(v),  Ai'(z) = -w^2 Ai'(u) - w Ai'(v)
    const Complex w2 = kOmega * kOmega;
    combine2(-kOmega * U.ai, -U.zeta, -w2 * V.ai, -V.zeta, &r.ai, &r.ea);
    Complex edum;
    combine2(-w2 * U.dai, -U.zeta, -kOmega * V.dai, -V.zeta, &r.dai, &edum);
    // Bi(z) = e^{i pi/6} Ai(u) + e^{-i pi/6} Ai(v)
    combine2(e_ip6 * U.ai, -U.zeta, e_mip6 * V.ai, -V.zeta, &r.bi, &r.eb);
    combine2(e_i5p6 * U.dai, -U.zeta, e_mi5p6 * V.dai, -V.zeta, &r.dbi, &edum);
  }
  return r;
}

AiryScaled conj_scaled(const AiryScaled& s) {
  return {std::conj(s.ai), std::conj(s.dai), std::conj(s.bi), std::conj(s.dbi),
          std::conj(s.ea), std::conj(s.eb)};
}

AiryScaled scaled_eval(Complex z) {
  if (z.imag() < 0.0) return conj_scaled(scaled_eval(std::conj(z)));
  if (std::abs(z) <= kSeamRadius) {
    const AiryValues v = series_eval(z);
    return {v.ai, v.dai, v.bi, v.dbi, Complex(0.0), Complex(0.0)};
  }
  return asym_scaled_upper(z);
}

}  // namespace

const char* SolveError::kind_name(Kind k) {
  switch (k) {
    case Kind::NonFinite: return "NonFinite";
    case Kind::Overflow: return "Overflow";
    case Kind::NoConvergence: return "NoConvergence";
    case Kind::ToleranceNotMet: return "ToleranceNotMet";
    case Kind::RootOnContour: return "RootOnContour";
    case Kind::LostRoot: return "LostRoot";
    case Kind::SeedMismatch: return "SeedMismatch";
    case Kind::InsufficientData: return "InsufficientData";
    case Kind::DegenerateDenominator: return "DegenerateDenominator";
    case Kind::PoleAtAiZero: return "PoleAtAiZero";
    case Kind::InconsistentC: return "InconsistentC";
  }
  return "Unknown";
}

AiryScaled airy_scaled(Complex z) {
  if (!is_finite(z)) throw SolveError(SolveError::Kind::NonFinite, "airy_scaled: non-finite argument");
  return scaled_eval(z);
}

AiryValues airy_eval(Complex z) {
  if (!is_finite(z)) throw SolveError(SolveError::Kind::NonFinite, "airy_eval: non-finite argument");
  const AiryScaled s = scaled_eval(z);
  AiryValues v;
  const Complex fa = exp_clamped(s.ea, &v.overflow);
  const Complex fb = exp_clamped(s.eb, &v.overflow);
  v.ai = s.ai * fa;
  v.dai = s.dai * fa;
  v.bi = s.bi * fb;
  v.dbi = s.dbi * fb;
  if (z.imag() == 0.0) {  // Schwarz symmetry: exactly real on the real axis
    v.ai = Complex(v.ai.real(), 0.0);
    v.dai = Complex(v.dai.real(), 0.0);
    v.bi = Complex(v.bi.real(), 0.0);
    v.dbi = Complex(v.dbi.real(), 0.0);
  }
  return v;
}

double airy_ode_residual(Complex z, double h) {
  const AiryValues c = airy_eval(z);
  const AiryValues p = airy_eval(z + h);
  const AiryValues m = airy_eval(z - h);
  if (c.overflow || p.overflow || m.overflow)
    throw SolveError(SolveError::Kind::Overflow, "airy_ode_residual: overflow in stencil");
  const double h2 = h * h;
  const double ra = std::abs((p.ai - 2.0 * c.ai + m.ai) / h2 - z * c.ai);
  const double rb = std::abs((p.bi - 2.0 * c.bi + m.bi) / h2 - z * c.bi);
  return std::max(ra, rb);
}

namespace detail {

AiryValues airy_series(Complex z) {
  if (z.imag() < 0.0) {
    AiryValues v = airy_series(std::conj(z));
    return {std::conj(v.ai), std::conj(v.dai), std::conj(v.bi), std::conj(v.dbi), v.overflow};
  }
  return series_eval(z);
}

AiryValues airy_asymptotic(Complex z) {
  if (z.imag() < 0.0) {
    AiryValues v = airy_asymptotic(std::conj(z));
    return {std::conj(v.ai), std::conj(v.dai), std::conj(v.bi), std::conj(v.dbi), v.overflow};
  }
  const AiryScaled s = asym_scaled_upper(z);
  AiryValues v;
  const Complex fa = exp_clamped(s.ea, &v.overflow);
  const Complex fb = exp_clamped(s.eb, &v.overflow);
  v.ai = s.ai * fa;
  v.dai = s.dai * fa;
  v.bi = s.bi * fb;
  v.dbi = s.dbi * fb;
  return v;
}

}  // namespace detail
}  // namespace ptspec
