#pragma once
// Monic orthogonal polynomials of the deformed Jacobi weight: recurrence
// coefficients from the moment Gram matrix, polynomial evaluation, Toda flow
// residuals and integration.
//
//   z P_n = P_{n+1} + alpha_n P_n + beta_n P_{n-1},   P_n = z^n + p1(n) z^{n-1} + ...
//   d/dt beta_n = (alpha_{n-1} - alpha_n) beta_n,      d/dt alpha_n = beta_n - beta_{n+1}

#include <pjl/moments.hpp>
#include <pjl/numdiff.hpp>
#include <pjl/ode.hpp>

#include <string>
#include <utility>
#include <vector>

namespace pjl {

/// Recurrence data for indices 0..n_max.
///
/// `alpha` has n_max+1 entries. `beta`, `h` and `p1` have n_max+2 entries so
/// that alpha_n = p1[n] - p1[n+1] holds for every stored n and beta_{n_max+1}
/// is available to closures that need one index more. beta[0] is 0 by
/// convention (P_{-1} = 0).
struct RecurrenceTable {
  WeightParams params;
  unsigned n_max = 0;
  std::vector<Real> alpha;
  std::vector<Real> beta;
  std::vector<Real> h;
  std::vector<Real> p1;
};

/// Monic polynomial, coefficients in increasing degree.
struct MonicPoly {
  std::vector<Real> coeffs;

  unsigned degree() const { return static_cast<unsigned>(coeffs.size()) - 1; }

  Real operator()(const Real& z) const {
    Real v = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * z + *it;
    return v;
  }

  /// k-th derivative at z, by exact coefficient differentiation.
  Real derivative(const Real& z, unsigned k) const {
    Real v = 0;
    for (std::size_t i = coeffs.size(); i-- > k;) {
      Real c = coeffs[i];
      for (unsigned j = 0; j < k; ++j) c *= static_cast<long>(i - j);
      v = v * z + c;
    }
    return v;
  }
};

namespace detail {

inline RecurrenceTable table_from_moments(const WeightParams& p, unsigned n_max, const std::vector<Real>& mu) {
  const unsigned size = n_max + 2;
  const LdltFactors f = ldlt(hankel_moment_matrix(mu, size));
  RecurrenceTable tab;
  tab.params = p;
  tab.n_max = n_max;
  tab.h = f.D;
  tab.p1.assign(size, Real(0));
  tab.beta.assign(size, Real(0));
  // Row n of L^{-1} holds the coefficients of P_n; its subdiagonal entry
  // is -L_{n,n-1}, the z^{n-1} coefficient p1(n).
  for (unsigned n = 1; n < size; ++n) {
    tab.p1[n] = -f.L(n, n - 1);
    tab.beta[n] = f.D[n] / f.D[n - 1];
  }
  tab.alpha.resize(n_max + 1);
  for (unsigned n = 0; n <= n_max; ++n) tab.alpha[n] = tab.p1[n] - tab.p1[n + 1];
  return tab;
}

inline RecurrenceTable round_table(RecurrenceTable tab, unsigned digits) {
  for (auto* v : {&tab.alpha, &tab.beta, &tab.h, &tab.p1})
    for (auto& x : *v) x = rounded(x, digits);
  return tab;
}

}  // namespace detail

/// Recurrence coefficients by LDL^T orthogonalization of the
/// (n_max+2) x (n_max+2) moment matrix: h_n = D_nn, p1(n) = -L_{n,n-1}.
/// Runs at digits + 10 (n_max+2) and raises precision further if a pivot
/// loses positivity.
inline RecurrenceTable recurrence_from_moments(const WeightParams& p, unsigned n_max, const PrecisionContext& ctx) {
  p.validate();
  unsigned extra = hankel_extra_digits(n_max + 2);
  for (int attempt = 0; attempt < 4; ++attempt) {
    const PrecisionContext hi = ctx.escalated(extra);
    const MomentVector mv = moments(p, 2 * (n_max + 1), hi);
    try {
      WorkingPrecision wp(hi.working_digits());
      return detail::round_table(detail::table_from_moments(p, n_max, mv.mu), ctx.working_digits());
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularMatrix) throw;
    }
    extra *= 2;
  }
  throw Error(ErrorKind::PrecisionLoss, "moment matrix lost positive definiteness at the precision cap");
}

/// Coefficients of the monic P_n from the three-term recurrence.
inline MonicPoly pn_coeffs(const RecurrenceTable& tab, unsigned n) {
  if (n > tab.n_max + 1) throw Error(ErrorKind::IndexOutOfRange, "polynomial degree beyond the table");
  std::vector<Real> prev;  // P_{k-1}
  std::vector<Real> cur{Real(1)};
  for (unsigned k = 0; k < n; ++k) {
    std::vector<Real> next(k + 2, Real(0));
    for (unsigned i = 0; i <= k; ++i) {
      next[i + 1] += cur[i];
      next[i] -= tab.alpha[k] * cur[i];
    }
    for (unsigned i = 0; i < prev.size(); ++i) next[i] -= tab.beta[k] * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return MonicPoly{std::move(cur)};
}

/// P_n(z) by the three-term recurrence.
inline Real eval_pn(const RecurrenceTable& tab, unsigned n, const Real& z) {
  if (n > tab.n_max + 1) throw Error(ErrorKind::IndexOutOfRange, "polynomial degree beyond the table");
  Real pm = 0, pc = 1;
  for (unsigned k = 0; k < n; ++k) {
    Real pn = (z - tab.alpha[k]) * pc - tab.beta[k] * pm;
    pm = std::move(pc);
    pc = std::move(pn);
  }
  return pc;
}

/// Residuals of the Toda equations at (n, t) with t-derivatives from
/// five-point stencils of moment-route tables.
struct TodaResidual {
  Real beta_eq;   // |beta_n' - (alpha_{n-1} - alpha_n) beta_n|
  Real alpha_eq;  // |alpha_n' - (beta_n - beta_{n+1})|
  Real p1_eq;     // |p1(n)' - beta_n|
};

inline TodaResidual toda_residual(const WeightParams& params, unsigned n, const PrecisionContext& ctx) {
  using boost::multiprecision::abs;
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "toda_residual needs n >= 1");
  const RecurrenceTable c = recurrence_from_moments(params, n, ctx);
  WorkingPrecision wp(ctx.working_digits());
  const Real t = lift(params.t);
  const Real h = fd_step_at(t, ctx);
  std::vector<RecurrenceTable> s;
  for (int j : {-2, -1, 1, 2}) s.push_back(recurrence_from_moments(params.with_t(t + j * h), n, ctx));
  auto d = [&](auto get) { return stencil_d1(get(s[0]), get(s[1]), get(s[2]), get(s[3]), h); };
  const Real db = d([&](const RecurrenceTable& x) { return x.beta[n]; });
  const Real da = d([&](const RecurrenceTable& x) { return x.alpha[n]; });
  const Real dp = d([&](const RecurrenceTable& x) { return x.p1[n]; });
  return TodaResidual{abs(db - (c.alpha[n - 1] - c.alpha[n]) * c.beta[n]), abs(da - (c.beta[n] - c.beta[n + 1])),
                      abs(dp - c.beta[n])};
}

/// d/dt log D_n(t) by a five-point stencil of hankel_det; equals p1(n, t).
inline Real log_hankel_derivative(const WeightParams& params, unsigned n, const PrecisionContext& ctx) {
  using boost::multiprecision::log;
  if (n == 0) return Real(0);
  WorkingPrecision wp(ctx.working_digits());
  const Real t = lift(params.t);
  return central_diff1([&](const Real& s) { return log(hankel_det(params.with_t(s), n, ctx)); }, t,
                       fd_step_at(t, ctx));
}

/// d^2/dt^2 log D_n(t) by a five-point stencil; equals beta_n(t).
inline Real log_hankel_second_derivative(const WeightParams& params, unsigned n, const PrecisionContext& ctx) {
  using boost::multiprecision::log;
  WorkingPrecision wp(ctx.working_digits());
  const Real t = lift(params.t);
  return central_diff2([&](const Real& s) { return log(hankel_det(params.with_t(s), n, ctx)); }, t,
                       fd_step_at(t, ctx));
}

struct TodaOptions {
  Real rtol = Real("1e-12");
  Real atol = Real("1e-14");
};

/// Integrates the Toda system for (alpha_0..alpha_N, beta_1..beta_N,
/// log h_0) from the table `start` (at start.params.t) to t1. The system
/// needs beta_{N+1}; it is taken from the moment route at every stage.
inline RecurrenceTable integrate_toda(const RecurrenceTable& start, const Real& t1, const PrecisionContext& ctx,
                                      const TodaOptions& opt = {}, OdeStats* stats = nullptr) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  const unsigned N = start.n_max;
  const WeightParams& p = start.params;
  if (t1 == p.t) return start;
  // The closure only feeds an ODE with tolerance ~1e-12; a lighter context
  // keeps the moment solves cheap.
  const PrecisionContext closure_ctx = PrecisionContext::with_digits(30);

  WorkingPrecision wp(ctx.working_digits());
  StateVector y;
  for (unsigned n = 0; n <= N; ++n) y.push_back(lift(start.alpha[n]));
  for (unsigned n = 1; n <= N; ++n) y.push_back(lift(start.beta[n]));
  y.push_back(log(lift(start.h[0])));

  auto rhs = [&](const Real& t, const StateVector& s, StateVector& dy) {
    const Real beta_closure = recurrence_from_moments(p.with_t(t), N, closure_ctx).beta[N + 1];
    auto alpha = [&](unsigned n) -> const Real& { return s[n]; };
    auto beta = [&](unsigned n) -> Real {
      if (n == 0) return Real(0);
      if (n == N + 1) return lift(beta_closure);
      return s[N + n];
    };
    for (unsigned n = 0; n <= N; ++n) dy[n] = beta(n) - beta(n + 1);
    for (unsigned n = 1; n <= N; ++n) dy[N + n] = (alpha(n - 1) - alpha(n)) * s[N + n];
    dy[2 * N + 1] = -alpha(0);
  };
  OdeOptions o{lift(opt.rtol), lift(opt.atol)};
  const StateVector y1 = integrate_dp45(rhs, lift(p.t), lift(t1), y, o, stats);

  RecurrenceTable out;
  out.params = p.with_t(t1);
  out.n_max = N;
  out.alpha.assign(y1.begin(), y1.begin() + N + 1);
  out.beta.assign(N + 2, Real(0));
  for (unsigned n = 1; n <= N; ++n) out.beta[n] = y1[N + n];
  out.beta[N + 1] = lift(recurrence_from_moments(out.params, N, closure_ctx).beta[N + 1]);
  out.h.assign(N + 2, Real(0));
  out.h[0] = exp(y1[2 * N + 1]);
  for (unsigned n = 1; n <= N + 1; ++n) out.h[n] = out.h[n - 1] * out.beta[n];
  out.p1.assign(N + 2, Real(0));
  for (unsigned n = 1; n <= N + 1; ++n) out.p1[n] = out.p1[n - 1] - out.alpha[n - 1];
  return out;
}

/// Closed forms of the classical Jacobi weight (t = 0).
struct JacobiClosedForms {
  static Real alpha(const Real& a, const Real& b, unsigned n) {
    const Real s = 2 * Real(n) + a + b;
    if (n == 0) return (b - a) / (a + b + 2);
    return (b * b - a * a) / (s * (s + 2));
  }
  static Real beta(const Real& a, const Real& b, unsigned n) {
    if (n == 0) return Real(0);
    const Real s = 2 * Real(n) + a + b;
    if (n == 1) return 4 * (1 + a) * (1 + b) / ((a + b + 3) * (a + b + 2) * (a + b + 2));
    return 4 * Real(n) * (n + a) * (n + b) * (n + a + b) / ((s + 1) * (s - 1) * s * s);
  }
  static Real R(const Real& a, const Real& b, unsigned n) { return n + (a + b + 1) / 2; }
  static Real r(const Real& a, const Real& b, unsigned n) {
    if (n == 0) return Real(0);
    return Real(n) * (n + b) / (a + b + 2 * Real(n));
  }
  /// Squared norm of the monic Jacobi polynomial,
  ///   2^{2n+a+b+1} n! G(n+a+1) G(n+b+1) G(n+a+b+1) / ((2n+a+b+1) G(2n+a+b+1)^2),
  /// with n = 0 written as the Beta integral to avoid G(a+b+1).
  static Real h(const Real& a, const Real& b, unsigned n) {
    using boost::multiprecision::exp;
    using boost::multiprecision::log;
    const Real ln2 = log(Real(2));
    if (n == 0) {
      return exp((a + b + 1) * ln2 + log_gamma_positive(a + 1) + log_gamma_positive(b + 1) -
                 log_gamma_positive(a + b + 2));
    }
    const Real s = 2 * Real(n) + a + b;
    return exp((s + 1) * ln2 + log_gamma_positive(Real(n + 1)) + log_gamma_positive(n + a + 1) +
               log_gamma_positive(n + b + 1) + log_gamma_positive(n + a + b + 1) - log(s + 1) -
               2 * log_gamma_positive(s + 1));
  }
  /// D_n(0) = prod_{j<n} h_j.
  static Real hankel(const Real& a, const Real& b, unsigned n) {
    Real d = 1;
    for (unsigned j = 0; j < n; ++j) d *= h(a, b, j);
    return d;
  }
};

/// Taylor coefficients at t = 0 of alpha_n(t), beta_n(t) generated by the
/// Toda equations from the Jacobi closed forms. coefficient k of index n
/// needs indices up to n + k, so the table starts at n_top + order and
/// shrinks by one index per order. Independent of the moments.
struct TodaTaylor {
  /// alpha[n][k], beta[n][k] for n <= n_top, k <= order.
  std::vector<std::vector<Real>> alpha;
  std::vector<std::vector<Real>> beta;

  Real alpha_at(unsigned n, const Real& t) const { return horner(alpha[n], t); }
  Real beta_at(unsigned n, const Real& t) const { return horner(beta[n], t); }
  Real alpha_derivative_at(unsigned n, const Real& t) const {
    Real v = 0;
    for (std::size_t k = alpha[n].size(); k-- > 1;) v = v * t + alpha[n][k] * static_cast<long>(k);
    return v;
  }

 private:
  static Real horner(const std::vector<Real>& c, const Real& t) {
    Real v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
    return v;
  }
};

inline TodaTaylor toda_taylor_at_zero(const Real& a, const Real& b, unsigned n_top, unsigned order,
                                      const PrecisionContext& ctx) {
  WorkingPrecision wp(ctx.working_digits());
  const unsigned width = n_top + order + 2;
  std::vector<std::vector<Real>> al(width), be(width);
  for (unsigned n = 0; n < width; ++n) {
    al[n].push_back(JacobiClosedForms::alpha(lift(a), lift(b), n));
    be[n].push_back(JacobiClosedForms::beta(lift(a), lift(b), n));
  }
  for (unsigned k = 0; k < order; ++k) {
    // Indices n with n + k + 1 < width have every input they need.
    for (unsigned n = 0; n + k + 1 < width; ++n) {
      al[n].push_back((be[n][k] - be[n + 1][k]) / (k + 1));
      Real s = 0;
      if (n > 0) {
        for (unsigned j = 0; j <= k; ++j) s += (al[n - 1][j] - al[n][j]) * be[n][k - j];
      }
      be[n].push_back(s / (k + 1));
    }
  }
  TodaTaylor out;
  out.alpha.assign(al.begin(), al.begin() + n_top + 1);
  out.beta.assign(be.begin(), be.begin() + n_top + 1);
  return out;
}

/// Recurrence table at params.t summed from the Toda Taylor series at 0,
/// with log h_0 integrated termwise from d/dt log h_0 = -alpha_0. `tail` is
/// the largest relative change in alpha_n, beta_n between the truncations at
/// 3/4 of `order` and at `order`; the series is only meaningful when it is
/// small. The radius is finite (a few units of t for small n).
struct SeriesTable {
  RecurrenceTable table;
  Real tail;
};

inline SeriesTable recurrence_from_toda_series(const WeightParams& params, unsigned n_max, const PrecisionContext& ctx,
                                               unsigned order = 120) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  const TodaTaylor ser = toda_taylor_at_zero(params.alpha, params.beta, n_max + 1, order, ctx);
  WorkingPrecision wp(ctx.working_digits());
  const Real a = lift(params.alpha), b = lift(params.beta), t = lift(params.t);
  auto partial = [&](const std::vector<Real>& c, std::size_t K) {
    Real v = 0;
    for (std::size_t k = K; k-- > 0;) v = v * t + c[k];
    return v;
  };
  const std::size_t early = order * 3 / 4 + 1;
  SeriesTable out{RecurrenceTable{}, Real(0)};
  RecurrenceTable& tab = out.table;
  tab.params = params;
  tab.n_max = n_max;
  tab.alpha.resize(n_max + 2);
  tab.beta.assign(n_max + 2, Real(0));
  for (unsigned n = 0; n <= n_max + 1; ++n) {
    tab.alpha[n] = ser.alpha_at(n, t);
    Real tail = relative_gap(tab.alpha[n], partial(ser.alpha[n], early));
    if (n > 0) {
      tab.beta[n] = ser.beta_at(n, t);
      const Real tb = relative_gap(tab.beta[n], partial(ser.beta[n], early));
      if (tb > tail) tail = tb;
    }
    if (tail > out.tail) out.tail = tail;
  }
  tab.p1.assign(n_max + 2, Real(0));
  for (unsigned n = 1; n <= n_max + 1; ++n) tab.p1[n] = tab.p1[n - 1] - tab.alpha[n - 1];
  Real log_h0 = log(JacobiClosedForms::h(a, b, 0)), tk = t;
  for (std::size_t k = 0; k < ser.alpha[0].size(); ++k, tk *= t) log_h0 -= ser.alpha[0][k] * tk / (k + 1);
  tab.h.assign(n_max + 2, exp(log_h0));
  for (unsigned n = 1; n <= n_max + 1; ++n) tab.h[n] = tab.h[n - 1] * tab.beta[n];
  tab.alpha.resize(n_max + 1);
  return out;
}

}  // namespace pjl
