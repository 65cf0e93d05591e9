#pragma once
// Ladder-operator auxiliary quantities r_n(t), R_n(t).
//
//   A_n(z) = -R_n/(z-1) + (t+R_n)/(z+1),   B_n(z) = -r_n/(z-1) + (r_n-n)/(z+1)
//
// computed from the recurrence table, by direct quadrature, by the forward
// difference iteration in n, and by integrating the Riccati system in t.

#include <pjl/orthopoly.hpp>
#include <pjl/residual.hpp>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace pjl {

enum class AuxRoute { FromRecurrence, FromQuadrature, DifferenceIteration, RiccatiIntegration };

inline std::string_view to_string(AuxRoute r) {
  switch (r) {
    case AuxRoute::FromRecurrence: return "FromRecurrence";
    case AuxRoute::FromQuadrature: return "FromQuadrature";
    case AuxRoute::DifferenceIteration: return "DifferenceIteration";
    case AuxRoute::RiccatiIntegration: return "RiccatiIntegration";
  }
  return "Unknown";
}

/// r_n, R_n for n = 0..n_max.
struct AuxTable {
  WeightParams params;
  unsigned n_max = 0;
  std::vector<Real> r;
  std::vector<Real> R;
  AuxRoute route = AuxRoute::FromRecurrence;
};

struct AuxPair {
  Real r;
  Real R;
};

/// R_n = (2n+1+a+b-t-t alpha_n)/2 and r_n = (n - p1(n) - t beta_n)/2.
/// Neither solve divides by t, so t = 0 is handled by the same formulas and
/// reproduces the Jacobi closed forms.
inline AuxTable aux_from_recurrence(const RecurrenceTable& tab, const PrecisionContext& ctx) {
  WorkingPrecision wp(ctx.working_digits());
  const WeightParams& p = tab.params;
  AuxTable aux{p, tab.n_max, {}, {}, AuxRoute::FromRecurrence};
  for (unsigned n = 0; n <= tab.n_max; ++n) {
    aux.R.push_back((2 * Real(n) + 1 + p.alpha + p.beta - p.t - p.t * tab.alpha[n]) / 2);
    aux.r.push_back((n - tab.p1[n] - p.t * tab.beta[n]) / 2);
  }
  return aux;
}

/// R_n = (a/h_n) int P_n^2 w/(1-y) dy and r_n = (a/h_{n-1}) int P_n P_{n-1} w/(1-y) dy,
/// with h_n, h_{n-1} integrated alongside. Needs alpha > 0 so that
/// (1-y)^(alpha-1) is integrable.
inline AuxPair aux_from_quadrature(const WeightParams& params, unsigned n, const PrecisionContext& ctx) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  params.validate();
  if (!(params.alpha > 0)) throw Error(ErrorKind::DomainError, "quadrature route needs alpha > 0");
  const RecurrenceTable tab = recurrence_from_moments(params, n, ctx);
  WorkingPrecision wp(ctx.working_digits());
  const Real a = lift(params.alpha), b = lift(params.beta), t = lift(params.t);
  auto res = tanh_sinh_vector(
      [&](const Real& y, const Real& omy, const Real& opy, std::vector<Real>& out) {
        const Real w1 = exp((a - 1) * log(omy) + b * log(opy) - t * y);  // w / (1-y)
        const Real pn = eval_pn(tab, n, y);
        const Real pm = n > 0 ? eval_pn(tab, n - 1, y) : Real(0);
        out[0] = pn * pn * w1;
        out[1] = pn * pm * w1;
        out[2] = out[0] * omy;
        out[3] = pm * pm * w1 * omy;
      },
      4, ctx);
  AuxPair out;
  out.R = a * res.value[0] / res.value[2];
  out.r = n > 0 ? a * res.value[1] / res.value[3] : Real(0);
  return out;
}

/// R_0 = ((a+b+1)/2) M(1+b; a+b+1; -2t) / M(1+b; a+b+2; -2t).
/// At a+b+1 = 0 the ratio is replaced by its limit
///   (1/2) (1+b) z M(2+b; 2; z) / M(1+b; 1; z),  z = -2t,
/// which at a = b = -1/2 equals (t/2)(I_1(t)/I_0(t) - 1).
inline Real initial_R0(const WeightParams& p, const PrecisionContext& ctx) {
  WorkingPrecision wp(ctx.working_digits());
  const Real a = lift(p.alpha), b = lift(p.beta), t = lift(p.t);
  const Real s = a + b + 1;
  const Real z = -2 * t;
  if (s == 0) {
    return (1 + b) * z * kummer_m(2 + b, Real(2), z, ctx) / (2 * kummer_m(1 + b, Real(1), z, ctx));
  }
  return s / 2 * kummer_m(1 + b, s, z, ctx) / kummer_m(1 + b, s + 1, z, ctx);
}

/// Decimal digits the forward difference iteration loses up to n_max at t:
/// about 3 log10(k+1) + 2 log10(1 + 1/|t|) + 1 per step. The estimate was
/// fitted against runs at several precisions and is conservative for
/// |t| in [0.05, 8], n <= 64.
inline unsigned difference_iteration_extra_digits(unsigned n_max, const Real& t) {
  const double at = std::fabs(t.convert_to<double>());
  double lost = 0;
  for (unsigned k = 1; k <= n_max; ++k) lost += 3 * std::log10(k + 1.0) + 2 * std::log10(1 + 1 / at) + 1;
  return static_cast<unsigned>(std::ceil(lost)) + 10;
}

/// Forward iteration in n from r_0 = 0 and R_0:
///   r_{n+1} = [4R_n^2 + 2R_n(2t-2n-1-a-b) - 2at]/(2t) - r_n
///   R_{n+1} = C t (t/R_n + 1) / (L - C t/R_n),  m = n+1,
///   C = r_m^2 + a r_m,  L = m(m+b) - (2m+a+b) r_m.
/// The second relation is linear in 1/R_{n+1}. The recursion amplifies
/// rounding errors, so it runs with the extra digits estimated above.
inline AuxTable difference_iterate(const WeightParams& params, unsigned n_max, const PrecisionContext& ctx) {
  using boost::multiprecision::abs;
  params.validate();
  if (params.t == 0) {
    throw Error(ErrorKind::DomainError, "difference iteration divides by t; use the t = 0 closed forms");
  }
  const PrecisionContext hi = ctx.escalated(difference_iteration_extra_digits(n_max, params.t));
  WorkingPrecision wp(hi.working_digits());
  const Real a = lift(params.alpha), b = lift(params.beta), t = lift(params.t);
  const Real tiny = pow10(-static_cast<long>(ctx.digits) / 2);
  auto guard = [&](const Real& d, unsigned n, const char* what) {
    if (abs(d) < tiny) {
      throw Error(ErrorKind::IterationBreakdown,
                  std::string(what) + " vanished in the difference iteration at n = " + std::to_string(n));
    }
  };
  std::vector<Real> R{initial_R0(params, hi)}, r{Real(0)};
  for (unsigned n = 0; n < n_max; ++n) {
    guard(R[n], n, "R_n");
    const Real& Rn = R[n];
    r.push_back((4 * Rn * Rn + 2 * Rn * (2 * t - 2 * Real(n) - 1 - a - b) - 2 * a * t) / (2 * t) - r[n]);
    const unsigned m = n + 1;
    const Real& rm = r[m];
    const Real C = rm * rm + a * rm;
    const Real L = Real(m) * (m + b) - (2 * Real(m) + a + b) * rm;
    const Real den = L - C * t / Rn;
    guard(den, m, "denominator");
    R.push_back(C * t * (t / Rn + 1) / den);
  }
  AuxTable out{params, n_max, {}, {}, AuxRoute::DifferenceIteration};
  for (unsigned n = 0; n <= n_max; ++n) {
    out.r.push_back(rounded(r[n], ctx.working_digits()));
    out.R.push_back(rounded(R[n], ctx.working_digits()));
  }
  return out;
}

struct RiccatiRhs {
  Real dR;
  Real dr;
};

/// Coupled Riccati system in t:
///   t R' = a t + (2n+1+a+b-2t) R - 2R^2 + 2t r
///   r'   = F/R - R (N - m r - t F/R) / (t (t+R)),
/// with N = n(n+b), m = 2n+a+b, F = r^2 + a r.
inline RiccatiRhs riccati_rhs(const WeightParams& p, unsigned n, const Real& t, const Real& r, const Real& R,
                              const Real& tiny = Real(0)) {
  using boost::multiprecision::abs;
  if (abs(t) <= tiny || abs(R) <= tiny || abs(t + R) <= tiny) {
    throw Error(ErrorKind::SingularityHit, "Riccati system singular (t, R or t+R vanishes)");
  }
  const Real& a = p.alpha;
  const Real& b = p.beta;
  const Real N = Real(n) * (n + b);
  const Real m = 2 * Real(n) + a + b;
  const Real F = r * r + a * r;
  RiccatiRhs out;
  out.dR = (a * t + (2 * Real(n) + 1 + a + b - 2 * t) * R - 2 * R * R + 2 * t * r) / t;
  out.dr = F / R - R * (N - m * r - t * F / R) / (t * (t + R));
  return out;
}

/// Integrates the Riccati system from (t0, seed) to t1. Near t = 0 the r
/// equation behaves like r' ~ (2n+a+b) r / t, so local errors made at small
/// t grow like t^(2n+a+b); the default tolerance is correspondingly tight.
inline AuxPair integrate_riccati(const WeightParams& params, unsigned n, const Real& t0, const Real& t1,
                                 const AuxPair& seed, const PrecisionContext& ctx, const Real& rtol = Real("1e-20"),
                                 OdeStats* stats = nullptr) {
  WorkingPrecision wp(ctx.working_digits());
  const WeightParams p{lift(params.alpha), lift(params.beta), lift(params.t)};
  const Real tiny = pow10(-static_cast<long>(ctx.digits) / 2);
  auto f = [&](const Real& t, const StateVector& y, StateVector& dy) {
    const RiccatiRhs d = riccati_rhs(p, n, t, y[1], y[0], tiny);
    dy[0] = d.dR;
    dy[1] = d.dr;
  };
  OdeOptions opt{lift(rtol), lift(rtol) / 100};
  const StateVector y = integrate_dp45(f, lift(t0), lift(t1), StateVector{lift(seed.R), lift(seed.r)}, opt, stats);
  return AuxPair{y[1], y[0]};
}

/// Residuals of the ladder structure at (n, t): the compatibility
/// conditions (S1), (S2), (S2') at the sample points, the residue
/// identities in n, the beta_n expression in r_n and R_n, and the lowering/raising
/// relations for P_n. All built from the moment route.
inline std::vector<Residual> structure_residuals(const WeightParams& params, unsigned n,
                                                 const std::vector<Real>& z_samples, const PrecisionContext& ctx) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "structure_residuals needs n >= 1");
  const RecurrenceTable tab = recurrence_from_moments(params, n + 1, ctx);
  const AuxTable aux = aux_from_recurrence(tab, ctx);
  WorkingPrecision wp(ctx.working_digits());
  const Real a = lift(params.alpha), b = lift(params.beta), t = lift(params.t);
  const auto& al = tab.alpha;
  const auto& be = tab.beta;
  const auto& R = aux.R;
  const auto& r = aux.r;
  auto A = [&](unsigned k, const Real& z) { return -R[k] / (z - 1) + (t + R[k]) / (z + 1); };
  auto B = [&](unsigned k, const Real& z) -> Real {
    if (k == 0) return Real(0);
    return -r[k] / (z - 1) + (r[k] - k) / (z + 1);
  };
  auto vp = [&](const Real& z) { return -a / (z - 1) - b / (z + 1) + t; };

  std::vector<Residual> out;
  const MonicPoly Pn = pn_coeffs(tab, n), Pm = pn_coeffs(tab, n - 1);
  for (std::size_t i = 0; i < z_samples.size(); ++i) {
    const Real z = lift(z_samples[i]);
    if (z == 1 || z == -1) throw Error(ErrorKind::InvalidArgument, "sample point on a pole");
    const std::string at = " @z" + std::to_string(i);
    out.push_back(make_residual("S1" + at, B(n + 1, z) + B(n, z), (z - al[n]) * A(n, z) - vp(z)));
    out.push_back(make_residual("S2" + at, 1 + (z - al[n]) * (B(n + 1, z) - B(n, z)),
                                be[n + 1] * A(n + 1, z) - be[n] * A(n - 1, z)));
    Real sumA = 0;
    for (unsigned j = 0; j < n; ++j) sumA += A(j, z);
    out.push_back(make_residual("S2'" + at, B(n, z) * B(n, z) + vp(z) * B(n, z) + sumA, be[n] * A(n, z) * A(n - 1, z)));
    out.push_back(make_residual("lowering" + at, Pn.derivative(z, 1), -B(n, z) * Pn(z) + be[n] * A(n, z) * Pm(z)));
    out.push_back(make_residual("raising" + at, Pm.derivative(z, 1), (B(n, z) + vp(z)) * Pm(z) - A(n - 1, z) * Pn(z)));
  }

  const Real nn = n;
  out.push_back(make_residual("residue z=1 of S1", -(r[n + 1] + r[n]), a - R[n] * (1 - al[n])));
  out.push_back(make_residual("residue z=-1 of S1", r[n + 1] + r[n], 2 * nn + 1 + b - (R[n] + t) * (1 + al[n])));
  out.push_back(make_residual("double pole z=1 of S2'", r[n] * r[n] + a * r[n], be[n] * R[n] * R[n - 1]));
  out.push_back(make_residual("double pole z=-1 of S2'", (r[n] - nn) * (r[n] - nn) - b * (r[n] - nn),
                              be[n] * (R[n] + t) * (R[n - 1] + t)));
  Real sumR = 0;
  for (unsigned j = 0; j < n; ++j) sumR += R[j];
  out.push_back(make_residual("simple pole of S2'", (b - a) / 2 * r[n] + a * nn / 2 - t * r[n] - r[n] * (r[n] - nn) - sumR,
                              -be[n] / 2 * (R[n] * (R[n - 1] + t) + (R[n] + t) * R[n - 1])));
  out.push_back(make_residual("alpha_n from R_n", 2 * R[n], 2 * nn + a + b + 1 - t - t * al[n]));
  out.push_back(make_residual("r_{n+1}+r_n", r[n + 1] + r[n], nn + (b - a + 1 - t) / 2 - (t / 2 + R[n]) * al[n]));
  out.push_back(make_residual("beta_n bilinear", nn * (nn + b) - (2 * nn + a + b) * r[n],
                              be[n] * (t * t + t * (R[n - 1] + R[n]))));
  out.push_back(make_residual("beta_n from r_n, R_n", t * (t + R[n]) * be[n],
                              nn * (nn + b) - (2 * nn + a + b) * r[n] - t / R[n] * (r[n] * r[n] + a * r[n])));
  out.push_back(make_residual("p1 = n - 2r_n - t beta_n", tab.p1[n], nn - 2 * r[n] - t * be[n]));
  out.push_back(make_residual("telescoped sum of R_j", sumR, nn * (nn + a + b) / 2 - t * r[n] - be[n] * t * t / 2));
  out.push_back(make_residual("alpha_n from differences", al[n], 2 * (r[n + 1] - r[n]) + t * (be[n + 1] - be[n]) - 1));
  return out;
}

}  // namespace pjl
