#pragma once
// Painleve V side of the Jacobi ensemble with weight
// (1-x)^a (1+x)^b e^(-tx):
//
//   Y(t) = 1 + (t/2)/R_n(t/2)                        solves P_V(a^2/2, -b^2/2, 2n+1+a+b, -1/2)
//   sigma(t) = (t/2) p1(n,t/2) - nt/2 + n(n+b)       sigma'(t) = -r_n(t/2)
//
// plus Hamiltonian forms, the continuous and discrete sigma-forms, the
// deformed ODE satisfied by P_n and the reconstruction of D_n from sigma.

#include <pjl/ladder.hpp>
#include <pjl/numdiff.hpp>
#include <pjl/quadrature.hpp>

#include <functional>
#include <string>
#include <vector>

namespace pjl {

/// The P_V parameter quadruple (a, b, c, d).
struct PVParameters {
  Real a, b, c, d;
};

inline PVParameters pv_parameters(const WeightParams& p, unsigned n) {
  return PVParameters{p.alpha * p.alpha / 2, -p.beta * p.beta / 2, 2 * Real(n) + 1 + p.alpha + p.beta, Real(-0.5)};
}

/// Y, sigma and their t-derivatives at one P_V time.
struct PVState {
  unsigned n = 0;
  WeightParams params;  // params.t is the P_V time
  Real Y, Yp;
  Real sigma, sigmap;
};

/// Y(t) = 1 + (t/2)/R_n(t/2) from a table built at t/2.
inline Real y_from_aux(const AuxTable& aux_half, unsigned n, const Real& t) {
  if (n > aux_half.n_max) throw Error(ErrorKind::IndexOutOfRange, "y_from_aux: n beyond table");
  if (aux_half.R[n] == 0) throw Error(ErrorKind::DivisionByZero, "y_from_aux: R_n(t/2) = 0");
  return 1 + (t / 2) / aux_half.R[n];
}

/// Right hand side Y'' of the P_V equation
///   Y'' = (1/(2Y) + 1/(Y-1)) Y'^2 - Y'/t + (Y-1)^2/t^2 (a Y + b/Y) + c Y/t + d Y(Y+1)/(Y-1).
inline Real pv_rhs(const PVParameters& pv, const Real& t, const Real& Y, const Real& Yp) {
  if (t == 0 || Y == 0 || Y == 1) throw Error(ErrorKind::SingularityHit, "P_V: t = 0 or Y in {0, 1}");
  const Real ym1 = Y - 1;
  return (3 * Y - 1) / (2 * Y * ym1) * Yp * Yp - Yp / t + ym1 * ym1 / (t * t) * (pv.a * Y + pv.b / Y) +
         pv.c * Y / t + pv.d * Y * (Y + 1) / ym1;
}

/// Y(t) through the difference iteration at t/2, or the closed form at t = 0.
inline Real y_by_difference(const WeightParams& params, unsigned n, const Real& t, const PrecisionContext& ctx) {
  if (t == 0) return Real(1);
  WorkingPrecision wp(ctx.working_digits());
  const AuxTable aux = difference_iterate(params.with_t(lift(t) / 2), n, ctx);
  return y_from_aux(aux, n, lift(t));
}

struct PVGridResult {
  Real max_raw;     // max |Y'' - rhs|
  Real max_scaled;  // max |Y'' - rhs| / max(|Y''|, |rhs|, 1)
  Real worst_t;
  unsigned nodes = 0;
};

/// Residual of the P_V equation on the Chebyshev grid of [t_min, t_max] with
/// Y from the difference iteration and derivatives taken spectrally.
inline PVGridResult pv_residual(const WeightParams& params, unsigned n, const Real& t_min, const Real& t_max,
                                const PrecisionContext& ctx, unsigned nodes = 64) {
  using boost::multiprecision::abs;
  if (!(t_min < t_max)) throw Error(ErrorKind::InvalidArgument, "pv_residual: empty t range");
  if (t_min <= 0 && t_max >= 0) throw Error(ErrorKind::SingularityHit, "pv_residual: grid contains t = 0");
  WorkingPrecision wp(ctx.working_digits());
  const ChebyshevGrid grid = chebyshev_grid(lift(t_min), lift(t_max), nodes);
  std::vector<Real> Y;
  for (const Real& t : grid.nodes) Y.push_back(y_by_difference(params, n, t, ctx));
  const std::vector<Real> Yp = grid.differentiate(Y);
  const std::vector<Real> Ypp = grid.differentiate(Yp);
  const PVParameters pv = pv_parameters(params, n);
  PVGridResult out{Real(0), Real(0), grid.nodes.front(), static_cast<unsigned>(grid.nodes.size())};
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    const Real rhs = pv_rhs(pv, grid.nodes[i], Y[i], Yp[i]);
    const Real raw = abs(Ypp[i] - rhs);
    const Real scaled = raw / max_abs_of({Ypp[i], rhs});
    if (scaled > out.max_scaled) {
      out.max_scaled = scaled;
      out.worst_t = grid.nodes[i];
    }
    if (raw > out.max_raw) out.max_raw = raw;
  }
  return out;
}

struct PVOdeResult {
  Real y_ode;    // Y(t_end) from integrating P_V
  Real y_route;  // Y(t_end) from the difference iteration
  Real gap;      // |y_ode - y_route|
  OdeStats stats;
};

/// Integrates P_V from t_start to t_end. Initial data at t_start come from
/// the Toda Taylor series of alpha_n at 0 built on the Jacobi closed forms,
/// so the result is independent of the moment and difference routes.
/// Errors committed near t_start = 0.01 grow by about 10^12 on the way to
/// t = 2, hence the tight default tolerance.
inline PVOdeResult pv_ode_check(const WeightParams& params, unsigned n, const Real& t_start, const Real& t_end,
                                const PrecisionContext& ctx, const Real& rtol = Real("1e-21")) {
  WorkingPrecision wp(ctx.working_digits());
  const Real a = lift(params.alpha), b = lift(params.beta);
  const Real s = lift(t_start) / 2;
  const TodaTaylor series = toda_taylor_at_zero(a, b, n, 24, ctx);
  const Real al = series.alpha_at(n, s);
  const Real dal = series.alpha_derivative_at(n, s);
  const Real R = (2 * Real(n) + 1 + a + b - s - s * al) / 2;
  const Real dR = (-1 - al - s * dal) / 2;  // dR_n/ds
  // Y(t) = 1 + s/R(s), s = t/2, so dY/dt = (R - s R')/(2 R^2).
  StateVector y{1 + s / R, (R - s * dR) / (2 * R * R)};
  const PVParameters pv{a * a / 2, -b * b / 2, 2 * Real(n) + 1 + a + b, Real(-0.5)};
  auto f = [&](const Real& t, const StateVector& u, StateVector& du) {
    du[0] = u[1];
    du[1] = pv_rhs(pv, t, u[0], u[1]);
  };
  PVOdeResult out;
  y = integrate_dp45(f, lift(t_start), lift(t_end), y, OdeOptions{lift(rtol), lift(rtol) / 100}, &out.stats);
  out.y_ode = y[0];
  out.y_route = y_by_difference(params, n, t_end, ctx);
  out.gap = boost::multiprecision::abs(out.y_ode - out.y_route);
  return out;
}

enum class HamiltonianCase { CaseI, CaseII };

inline std::string_view to_string(HamiltonianCase c) { return c == HamiltonianCase::CaseI ? "CaseI" : "CaseII"; }

struct HamiltonianData {
  Real p, q, rho;
};

/// q = -R_n/t and p from r_n = -p q (q-1) + rho q, rho = n (Case I) or n+b (Case II).
inline HamiltonianData hamiltonian_data(const WeightParams& p, unsigned n, const AuxPair& aux, HamiltonianCase c) {
  if (p.t == 0) throw Error(ErrorKind::DivisionByZero, "hamiltonian: q = -R_n/t needs t != 0");
  HamiltonianData h;
  h.rho = c == HamiltonianCase::CaseI ? Real(n) : n + p.beta;
  h.q = -aux.R / p.t;
  if (h.q == 0 || h.q == 1) throw Error(ErrorKind::DivisionByZero, "hamiltonian: q in {0, 1}");
  h.p = (h.rho * h.q - aux.r) / (h.q * (h.q - 1));
  return h;
}

/// Residuals of the Hamiltonian identity at (n, t). Case I:
///   t p1 + n(n+a+b) - nt = p(p+2t)q(q-1) - 2ntq + b p q + a p (q-1).
/// Case II, as it follows from rho = n+b:
///   t p1 + n(n+a+b) + ab - nt = p(p+2t)q(q-1) - 2(n+b)qt - b p q + a p (q-1).
/// For Case II a second entry "printed" evaluates the variant with -ab and
/// 2(b-n)qt + b p q, which does not hold; it is returned for reporting.
inline std::vector<Residual> hamiltonian_identity(const WeightParams& params, unsigned n, HamiltonianCase c,
                                                  const PrecisionContext& ctx) {
  const RecurrenceTable tab = recurrence_from_moments(params, n, ctx);
  const AuxTable aux = aux_from_recurrence(tab, ctx);
  WorkingPrecision wp(ctx.working_digits());
  const Real a = lift(params.alpha), b = lift(params.beta), t = lift(params.t);
  const HamiltonianData h = hamiltonian_data(params, n, AuxPair{aux.r[n], aux.R[n]}, c);
  const Real& p = h.p;
  const Real& q = h.q;
  const Real base = t * tab.p1[n] + Real(n) * (n + a + b) - n * t;
  const Real quad = p * (p + 2 * t) * q * (q - 1) + a * p * (q - 1);
  std::vector<Residual> out;
  if (c == HamiltonianCase::CaseI) {
    out.push_back(make_residual("hamiltonian_case_I", base, quad - 2 * Real(n) * t * q + b * p * q));
  } else {
    out.push_back(make_residual("hamiltonian_case_II", base + a * b, quad - 2 * (n + b) * q * t - b * p * q));
    out.push_back(make_residual("hamiltonian_case_II_printed", base - a * b, quad + 2 * (b - n) * q * t + b * p * q));
  }
  return out;
}

/// Arithmetic identities between the P_V parameters, the Okamoto blocks of
/// both Hamiltonian cases and the theta parameters.
inline std::vector<Residual> parameter_identities(const WeightParams& params, unsigned n,
                                                  const PrecisionContext& ctx) {
  WorkingPrecision wp(ctx.working_digits());
  const Real a = lift(params.alpha), b = lift(params.beta), nn = Real(n);
  const PVParameters pv{a * a / 2, -b * b / 2, 2 * nn + 1 + a + b, Real(-0.5)};
  std::vector<Residual> out;
  auto okamoto = [&](const std::string& tag, const Real& a1, const Real& a2, const Real& a3) {
    const Real a0 = 1 - a1 - a2 - a3;
    out.push_back(make_residual(tag + "_a", a1 * a1 / 2, pv.a));
    out.push_back(make_residual(tag + "_b", -a3 * a3 / 2, pv.b));
    out.push_back(make_residual(tag + "_c", a0 - a2, pv.c));
  };
  okamoto("okamoto_case_I", -a, -nn, -b);
  okamoto("okamoto_case_II", -a, -(nn + b), b);
  const Real th0 = -nn, th1 = -nn - a - b, thinf = a - b;
  out.push_back(make_residual("theta_c", 1 - th0 - th1, pv.c));
  out.push_back(make_residual("theta_alpha", (th0 - th1 + thinf) / 2, a));
  out.push_back(make_residual("theta_beta", (th0 - th1 - thinf) / 2, b));
  out.push_back(make_residual("theta_sum", (3 * th0 + th1 + thinf) / 2, -2 * nn - b));
  return out;
}

struct SigmaValue {
  Real sigma;
  Real sigmap;
};

/// sigma(t) and sigma'(t) = -r_n(t/2) from the moment-route table at t/2.
inline SigmaValue sigma_eval(const WeightParams& params, unsigned n, const Real& t, const PrecisionContext& ctx) {
  WorkingPrecision wp(ctx.working_digits());
  const Real s = lift(t) / 2;
  const RecurrenceTable tab = recurrence_from_moments(params.with_t(s), n, ctx);
  const AuxTable aux = aux_from_recurrence(tab, ctx);
  const Real nn = Real(n);
  return SigmaValue{s * tab.p1[n] - nn * s + nn * (nn + lift(params.beta)), -aux.r[n]};
}

/// sigma' by a five-point difference of sigma, against -r_n(t/2).
inline Residual sigma_derivative_check(const WeightParams& params, unsigned n, const Real& t,
                                       const PrecisionContext& ctx) {
  WorkingPrecision wp(ctx.working_digits());
  const Real h = fd_step_at(lift(t), ctx);
  const Real d = central_diff1([&](const Real& x) { return sigma_eval(params, n, x, ctx).sigma; }, lift(t), h);
  return make_residual("sigma_prime", d, sigma_eval(params, n, t, ctx).sigmap);
}

/// (t sigma'')^2 against [sigma - t sigma' + (2n+a+b) sigma']^2
///   + 4 [sigma - n(n+b) - t sigma'] [sigma'^2 - a sigma'],
/// with sigma'' = -(1/2) d r_n/ds at s = t/2 by five-point differences.
inline Residual sigma_form_residual(const WeightParams& params, unsigned n, const Real& t,
                                    const PrecisionContext& ctx) {
  if (t == 0) throw Error(ErrorKind::DomainError, "sigma_form_residual needs t != 0");
  WorkingPrecision wp(ctx.working_digits());
  const Real tt = lift(t), a = lift(params.alpha), b = lift(params.beta), nn = Real(n);
  const SigmaValue sv = sigma_eval(params, n, tt, ctx);
  auto rn = [&](const Real& s) {
    return aux_from_recurrence(recurrence_from_moments(params.with_t(s), n, ctx), ctx).r[n];
  };
  const Real s = tt / 2;
  const Real spp = -central_diff1(rn, s, fd_step_at(s, ctx)) / 2;
  const Real& sg = sv.sigma;
  const Real& sp = sv.sigmap;
  const Real first = sg - tt * sp + (2 * nn + a + b) * sp;
  const Real rhs = first * first + 4 * (sg - nn * (nn + b) - tt * sp) * (sp * sp - a * sp);
  return make_residual("sigma_form", (tt * spp) * (tt * spp), rhs);
}

/// r_n, beta_n, R_n, R_{n-1} rebuilt from p1(n-1), p1(n), p1(n+1) alone.
struct DiscreteSigmaData {
  Real r, beta, R, R_prev;
};

inline DiscreteSigmaData discrete_sigma_reconstruct(const WeightParams& params, unsigned n, const Real& p1_prev,
                                                    const Real& p1_n, const Real& p1_next,
                                                    const PrecisionContext& ctx) {
  using boost::multiprecision::abs;
  WorkingPrecision wp(ctx.working_digits());
  const Real a = lift(params.alpha), b = lift(params.beta), t = lift(params.t), nn = Real(n);
  const Real m = 2 * nn + a + b;
  const Real N = nn * (nn + b);
  const Real u = nn - p1_n;
  const Real W = m + t / 2 * (p1_next - p1_prev);
  const Real den = W - m / 2;
  if (abs(den) < pow10(-static_cast<long>(ctx.digits) / 2)) {
    throw Error(ErrorKind::DivisionByZero, "discrete sigma: n + (a+b)/2 + (t/2)[p1(n+1) - p1(n-1)] vanishes");
  }
  DiscreteSigmaData d;
  d.r = (u * W - N) / (2 * den);
  const Real tbeta = (N - u * m / 2) / den;
  // beta_n itself needs t != 0; at t = 0 it is left at zero and unused.
  d.beta = t == 0 ? Real(0) : tbeta / t;
  const Real alpha_n = p1_n - p1_next;
  // alpha_{n-1} = p1(n-1) - p1(n).
  const Real alpha_prev = p1_prev - p1_n;
  d.R = (2 * nn + 1 + a + b - t - t * alpha_n) / 2;
  d.R_prev = (2 * nn - 1 + a + b - t - t * alpha_prev) / 2;
  return d;
}

/// Residual of r_n^2 + a r_n = beta_n R_n R_{n-1} with every input from the
/// p1 triple. At t = 0 the relation degenerates and the rebuilt r_n is
/// compared with its closed form instead.
inline Residual discrete_sigma_residual(const WeightParams& params, unsigned n, const Real& p1_prev,
                                        const Real& p1_n, const Real& p1_next, const PrecisionContext& ctx) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "discrete sigma needs n >= 1");
  const DiscreteSigmaData d = discrete_sigma_reconstruct(params, n, p1_prev, p1_n, p1_next, ctx);
  WorkingPrecision wp(ctx.working_digits());
  if (params.t == 0) {
    return make_residual("discrete_sigma_r_closed_form", d.r,
                         JacobiClosedForms::r(lift(params.alpha), lift(params.beta), n));
  }
  return make_residual("discrete_sigma", d.r * d.r + lift(params.alpha) * d.r, d.beta * d.R * d.R_prev);
}

/// Same residual with p1(m) = d/dt log D_m from five-point differences of
/// hankel_det, so no recurrence table enters.
inline Residual discrete_sigma_residual(const WeightParams& params, unsigned n, const PrecisionContext& ctx) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "discrete sigma needs n >= 1");
  const Real p1_prev = log_hankel_derivative(params, n - 1, ctx);
  const Real p1_n = log_hankel_derivative(params, n, ctx);
  const Real p1_next = log_hankel_derivative(params, n + 1, ctx);
  return discrete_sigma_residual(params, n, p1_prev, p1_n, p1_next, ctx);
}

/// Coefficients P(z), Q(z) of the deformed ODE Psi'' + P Psi' + Q Psi = 0 for
/// Psi = P_n at weight parameter t, built from sigma(2t), sigma'(2t), Y(2t):
///   P = (1+a)/(z-1) + (1+b)/(z+1) - t - 1/(z-z0),   z0 = (1+Y)/(Y-1)
///   Q = -[sigma + n(a+1) + (1-Y) sigma']/(2(z-1))
///       + [sigma + n(a+1+2t) + (sigma'+n)(1-Y)/Y]/(2(z+1))
///       + (1-Y)[-sigma'(1-Y) - n]/(2Y(z-z0)).
/// At t = 0, Y = 1 and the z0 terms drop out.
struct DeformedCoefficients {
  Real P, Q;
};

struct DeformedInputs {
  Real sigma, sigmap, Y;
};

inline DeformedCoefficients deformed_coefficients(const WeightParams& p, unsigned n, const DeformedInputs& in,
                                                  const Real& z, bool printed_variant = false) {
  const Real& a = p.alpha;
  const Real& b = p.beta;
  const Real& t = p.t;
  const Real nn = Real(n);
  const Real omy = 1 - in.Y;
  DeformedCoefficients c;
  c.P = (1 + a) / (z - 1) + (1 + b) / (printed_variant ? z - 1 : z + 1) - t;
  c.Q = -(in.sigma + nn * (a + 1) + omy * in.sigmap) / (2 * (z - 1)) +
        (in.sigma + nn * (a + 1 + 2 * t) + (in.sigmap + nn) * omy / in.Y) / (2 * (z + 1));
  if (t != 0) {
    const Real z0 = (1 + in.Y) / (in.Y - 1);
    if (z == z0) throw Error(ErrorKind::SingularityHit, "deformed ODE: sample at the apparent singularity");
    c.P -= 1 / (z - z0);
    c.Q += omy * (-in.sigmap * omy - nn) / (2 * in.Y * (z - z0));
  }
  return c;
}

inline DeformedInputs deformed_inputs(const RecurrenceTable& tab, const AuxTable& aux, unsigned n) {
  const WeightParams& p = tab.params;
  const Real nn = Real(n);
  DeformedInputs in;
  in.sigma = p.t * tab.p1[n] - nn * p.t + nn * (nn + p.beta);
  in.sigmap = -aux.r[n];
  in.Y = 1 + p.t / aux.R[n];
  return in;
}

/// Max over the samples of |P_n'' + P P_n' + Q P_n|, scaled by
/// max(|P_n''|, |P P_n'|, |Q P_n|, 1). The "printed" entry uses (1+b)/(z-1)
/// as the second term of P and is for reporting only.
inline std::vector<Residual> deformed_ode_residual(const WeightParams& params, unsigned n,
                                                   const std::vector<Real>& z_samples, const PrecisionContext& ctx) {
  using boost::multiprecision::abs;
  const RecurrenceTable tab = recurrence_from_moments(params, n, ctx);
  const AuxTable aux = aux_from_recurrence(tab, ctx);
  WorkingPrecision wp(ctx.working_digits());
  const DeformedInputs in = deformed_inputs(tab, aux, n);
  const MonicPoly pn = pn_coeffs(tab, n);
  std::vector<Residual> out;
  for (bool printed : {false, true}) {
    Residual worst = make_residual(printed ? "deformed_ode_printed" : "deformed_ode", Real(0), Real(0));
    for (const Real& z0 : z_samples) {
      const Real z = lift(z0);
      if (z == 1 || z == -1) throw Error(ErrorKind::SingularityHit, "deformed ODE: sample at z = +-1");
      const DeformedCoefficients c = deformed_coefficients(tab.params, n, in, z, printed);
      const Real d2 = pn.derivative(z, 2), d1 = c.P * pn.derivative(z, 1), d0 = c.Q * pn(z);
      Residual r;
      r.name = worst.name;
      r.lhs = d2 + d1 + d0;
      r.rhs = 0;
      r.raw = abs(r.lhs);
      r.scaled = r.raw / max_abs_of({d2, d1, d0});
      if (r.scaled >= worst.scaled) worst = r;
    }
    out.push_back(worst);
  }
  return out;
}

struct DnReconstruction {
  Real from_sigma;  // D_n(0) exp int_0^t p1(n,s) ds
  Real hankel;      // hankel_det at t
  Real relative;
  Real integral;
};

/// D_n(t) = D_n(0) exp int_0^t [sigma(2s) - n(n+b) + ns]/s ds. The
/// integrand equals p1(n,s); below s_patch = 10^(-digits/4) it is replaced
/// by its value at 0, 2 sigma'(0) + n, since the numerator cancels there.
inline DnReconstruction dn_reconstruction(const WeightParams& params, unsigned n, const PrecisionContext& ctx) {
  using boost::multiprecision::abs;
  using boost::multiprecision::exp;
  WorkingPrecision wp(ctx.working_digits());
  const Real a = lift(params.alpha), b = lift(params.beta), t = lift(params.t), nn = Real(n);
  const Real s_patch = pow10(-static_cast<long>(ctx.digits) / 4);
  const Real limit = -2 * JacobiClosedForms::r(a, b, n) + nn;  // 2 sigma'(0) + n
  auto integrand = [&](const Real& s) {
    if (abs(s) < s_patch) return limit;
    const SigmaValue sv = sigma_eval(params, n, 2 * s, ctx);
    return (sv.sigma - nn * (nn + b) + nn * s) / s;
  };
  Real integral = 0;
  if (t != 0) {
    const Real sign = t > 0 ? Real(1) : Real(-1);
    const Real lo = sign * s_patch;
    integral = limit * lo;
    if (abs(t) > s_patch) {
      const Real lo_b = t > 0 ? lo : t, hi_b = t > 0 ? t : lo;
      Real part = tanh_sinh_interval([&](const Real& s, const Real&, const Real&) { return integrand(s); }, lo_b, hi_b,
                                     ctx)
                      .value;
      integral += t > 0 ? part : -part;
    } else {
      integral = limit * t;
    }
  }
  DnReconstruction out;
  out.integral = integral;
  out.from_sigma = JacobiClosedForms::hankel(a, b, n) * exp(integral);
  out.hankel = hankel_det(params, n, ctx);
  out.relative = relative_gap(out.from_sigma, out.hankel);
  return out;
}

/// Weights w, v with f(0) ~ sum w_j f(jh) and f'(0) ~ (1/h) sum v_j f(jh),
/// j = 1..m, from the interpolating polynomial through the m samples.
struct ExtrapolationWeights {
  std::vector<Real> value;
  std::vector<Real> slope;
};

inline ExtrapolationWeights extrapolation_weights(unsigned m) {
  ExtrapolationWeights w;
  for (unsigned j = 1; j <= m; ++j) {
    Real l = 1, harmonic = 0;
    for (unsigned k = 1; k <= m; ++k) {
      if (k == j) continue;
      l *= Real(-static_cast<long>(k)) / (static_cast<long>(j) - static_cast<long>(k));
      harmonic += Real(1) / k;
    }
    w.value.push_back(l);
    w.slope.push_back(-l * harmonic);
  }
  return w;
}

/// Y(0), Y'(0), sigma(0), sigma'(0) from samples at h, 2h, ..., 5h by
/// polynomial extrapolation; errors are O(h^5) for values and O(h^4) for
/// slopes.
inline std::vector<Residual> initial_conditions(const WeightParams& params, unsigned n, const PrecisionContext& ctx,
                                                const Real& h = Real("1e-3")) {
  WorkingPrecision wp(ctx.working_digits());
  constexpr unsigned m = 5;
  const Real a = lift(params.alpha), b = lift(params.beta), nn = Real(n);
  const Real hh = lift(h);
  const ExtrapolationWeights w = extrapolation_weights(m);
  std::vector<Real> Y, S, Sp;
  for (unsigned k = 1; k <= m; ++k) {
    const Real t = hh * k;
    Y.push_back(y_by_difference(params, n, t, ctx));
    const SigmaValue sv = sigma_eval(params, n, t, ctx);
    S.push_back(sv.sigma);
    Sp.push_back(sv.sigmap);
  }
  auto value0 = [&](const std::vector<Real>& v) {
    Real s = 0;
    for (unsigned k = 0; k < m; ++k) s += w.value[k] * v[k];
    return s;
  };
  auto slope0 = [&](const std::vector<Real>& v) {
    Real s = 0;
    for (unsigned k = 0; k < m; ++k) s += w.slope[k] * v[k];
    return s / hh;
  };
  const Real sp0 = -nn * (nn + b) / (a + b + 2 * nn);
  std::vector<Residual> out;
  out.push_back(make_residual("Y(0)", value0(Y), Real(1)));
  out.push_back(make_residual("Y'(0)", slope0(Y), 1 / (2 * nn + a + b + 1)));
  out.push_back(make_residual("sigma(0)", value0(S), nn * (nn + b)));
  out.push_back(make_residual("sigma'(0)", value0(Sp), sp0));
  out.push_back(make_residual("sigma'(0) by slope", slope0(S), sp0));
  return out;
}

}  // namespace pjl
