#pragma once
// Fredholm determinants det(I + Q_n K Q_n) of the Bessel Hankel operators
//   K_1 = (-J_{j+k+2}(t)),  K_2 = (J_{j+k+1}(t)),  K_3 = (-J_{j+k+1}(t)),  K_4 = (J_{j+k}(t)),
// with Q_n the projection onto indices >= n, and their relation to the
// Hankel determinants D_n(t) at the half-integer parameter pairs
//   case 1 (1/2, 1/2), case 2 (-1/2, 1/2), case 3 (1/2, -1/2), case 4 (-1/2, -1/2).

#include <pjl/numdiff.hpp>
#include <pjl/orthopoly.hpp>
#include <pjl/residual.hpp>
#include <pjl/specfun.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace pjl {

struct KernelShape {
  int sign;    // entry sign
  long shift;  // entry J_{j+k+shift}
};

inline KernelShape kernel_shape(int kernel_case) {
  switch (kernel_case) {
    case 1: return {-1, 2};
    case 2: return {+1, 1};
    case 3: return {-1, 1};
    case 4: return {+1, 0};
    default: throw Error(ErrorKind::InvalidArgument, "kernel case must be 1, 2, 3 or 4");
  }
}

/// (alpha, beta) of the Jacobi weight matched by each kernel case.
inline WeightParams kernel_weight(int kernel_case, const Real& t) {
  switch (kernel_case) {
    case 1: return {Real(0.5), Real(0.5), t};
    case 2: return {Real(-0.5), Real(0.5), t};
    case 3: return {Real(0.5), Real(-0.5), t};
    case 4: return {Real(-0.5), Real(-0.5), t};
    default: throw Error(ErrorKind::InvalidArgument, "kernel case must be 1, 2, 3 or 4");
  }
}

/// Leading m x m section of K.
struct BesselKernel {
  int kernel_case = 1;
  Real t;
  unsigned m = 0;
  DenseMatrix entries;
};

inline BesselKernel build_kernel(int kernel_case, const Real& t, unsigned m, const PrecisionContext& ctx) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "build_kernel needs m >= 1");
  const KernelShape s = kernel_shape(kernel_case);
  WorkingPrecision wp(ctx.working_digits());
  std::vector<Real> J;
  for (unsigned k = 0; k <= 2 * (m - 1) + s.shift; ++k) J.push_back(bessel_j(k, lift(t), ctx));
  BesselKernel K{kernel_case, lift(t), m, DenseMatrix(m, m)};
  for (unsigned j = 0; j < m; ++j)
    for (unsigned k = 0; k < m; ++k) K.entries(j, k) = s.sign > 0 ? J[j + k + s.shift] : -J[j + k + s.shift];
  return K;
}

struct TruncationReport {
  unsigned m_used = 0;
  Real tail_bound;  // bound on |det(I + Q_n K Q_n) - returned value|
};

struct FredholmResult {
  Real value;
  TruncationReport truncation;
};

namespace detail {

/// sum_{l >= l0} c(l) x^(l+s)/(l+s)!, c(l) = l - 2n + 1 (the number of index
/// pairs j, k >= n with j + k = l), which bounds sums of |J_{j+k+s}(t)| via
/// |J_v(t)| <= (|t|/2)^v / v!.
inline Real bessel_pair_tail(const Real& x, long n, long s, long l0, const Real& eps) {
  using boost::multiprecision::pow;
  Real term = pow(x, l0 + s);
  for (long j = 2; j <= l0 + s; ++j) term /= j;
  Real sum = 0;
  for (long l = l0;; ++l) {
    const Real contrib = term * (l - 2 * n + 1);
    sum += contrib;
    // Term ratios x/(l+s+1) fall below 1/2 once l+s > 2x.
    if (contrib <= eps * sum && x < (l + s + 1) / 2.0) return sum;
    if (sum == 0 && term == 0) return sum;
    term *= x / (l + s + 1);
  }
}

}  // namespace detail

/// Trace-norm bound of the part of Q_n K Q_n outside the [n, m)^2 block and
/// of Q_n K Q_n itself; the truncation error is at most
///   |A - B|_1 exp(1 + |A|_1 + |B|_1).
inline Real truncation_bound(int kernel_case, const Real& t, unsigned n, unsigned m, const PrecisionContext& ctx) {
  using boost::multiprecision::abs;
  using boost::multiprecision::exp;
  const KernelShape s = kernel_shape(kernel_case);
  WorkingPrecision wp(ctx.working_digits());
  const Real x = abs(lift(t)) / 2;
  const Real eps = pow10(-static_cast<long>(ctx.working_digits()));
  const Real whole = detail::bessel_pair_tail(x, n, s.shift, 2 * static_cast<long>(n), eps);
  const Real tail = detail::bessel_pair_tail(x, n, s.shift, static_cast<long>(m) + n, eps);
  return tail * exp(1 + 2 * whole);
}

/// det of I + (K_{jk}) over n <= j, k < m.
inline Real fredholm_section(int kernel_case, const Real& t, unsigned n, unsigned m, const PrecisionContext& ctx) {
  if (m <= n) return Real(1);
  const BesselKernel K = build_kernel(kernel_case, t, m, ctx);
  WorkingPrecision wp(ctx.working_digits());
  DenseMatrix a(m - n, m - n);
  for (unsigned j = n; j < m; ++j)
    for (unsigned k = n; k < m; ++k) a(j - n, k - n) = (j == k ? Real(1) : Real(0)) + K.entries(j, k);
  return determinant(a);
}

/// det(I + Q_n K Q_n) through the [n, m) section; m starts at n + 10 + ceil(3|t|)
/// and doubles (m - n) until the truncation bound is below 10^-(digits+5).
inline FredholmResult fredholm_det(int kernel_case, const Real& t, unsigned n, const PrecisionContext& ctx,
                                   unsigned m_cap = 4096) {
  using boost::multiprecision::abs;
  kernel_shape(kernel_case);
  if (t == 0 && (n >= 1 || kernel_case != 4)) return FredholmResult{Real(1), TruncationReport{n, Real(0)}};
  WorkingPrecision wp(ctx.working_digits());
  const Real tol = pow10(-static_cast<long>(ctx.digits) - 5);
  unsigned m = n + 10 + static_cast<unsigned>(std::ceil(3 * abs(t).convert_to<double>()));
  Real bound = truncation_bound(kernel_case, t, n, m, ctx);
  while (bound > tol) {
    m = n + 2 * (m - n);
    if (m > m_cap) throw Error(ErrorKind::NonConvergence, "Fredholm truncation exceeded the cap");
    bound = truncation_bound(kernel_case, t, n, m, ctx);
  }
  return FredholmResult{fredholm_section(kernel_case, t, n, m, ctx), TruncationReport{m, bound}};
}

/// Prefactor c_n(t) in D_n(t) = c_n(t) det(I + Q_n K Q_n):
///   case 1: 2^(-n(n+1)) (2 pi)^n e^(t^2/8)        case 2: 2^(-n^2) (2 pi)^n e^(t^2/8 - t/2)
///   case 3: 2^(-n^2) (2 pi)^n e^(t^2/8 + t/2)     case 4: 2^(-n(n-1)-1) (2 pi)^n e^(t^2/8)
inline Real fredholm_prefactor(int kernel_case, unsigned n, const Real& t, const PrecisionContext& ctx) {
  using boost::multiprecision::exp;
  using boost::multiprecision::pow;
  WorkingPrecision wp(ctx.working_digits());
  const Real tt = lift(t);
  const long nn = static_cast<long>(n);
  long pow2 = 0;
  Real e = tt * tt / 8;
  switch (kernel_case) {
    case 1: pow2 = -nn * (nn + 1); break;
    case 2: pow2 = -nn * nn; e -= tt / 2; break;
    case 3: pow2 = -nn * nn; e += tt / 2; break;
    case 4: pow2 = -nn * (nn - 1) - 1; break;
    default: throw Error(ErrorKind::InvalidArgument, "kernel case must be 1, 2, 3 or 4");
  }
  return pow(Real(2), pow2) * pow(2 * pi_value(), nn) * exp(e);
}

struct FredholmIdentity {
  Real hankel;     // D_n(t) at the case parameters
  Real fredholm;   // det(I + Q_n K Q_n)
  Real prefactor;
  Real relative;   // |D_n / (c_n det) - 1|
  TruncationReport truncation;
};

/// D_n(t) from the moment route against c_n(t) det(I + Q_n K(t) Q_n).
inline FredholmIdentity identity_check(int kernel_case, unsigned n, const Real& t, const PrecisionContext& ctx) {
  using boost::multiprecision::abs;
  FredholmIdentity out;
  out.hankel = hankel_det(kernel_weight(kernel_case, t), n, ctx);
  const FredholmResult f = fredholm_det(kernel_case, t, n, ctx);
  out.fredholm = f.value;
  out.truncation = f.truncation;
  out.prefactor = fredholm_prefactor(kernel_case, n, t, ctx);
  WorkingPrecision wp(ctx.working_digits());
  out.relative = abs(out.hankel / (out.prefactor * out.fredholm) - 1);
  return out;
}

/// One row of a trend table.
struct ProbeRow {
  unsigned n = 0;
  Real value;
  Real reference;
  Real ratio;
};

/// (i) D_n(t) / c_n(t) for each n; the ratio equals det(I + Q_n K Q_n) and
/// tends to 1.
inline std::vector<ProbeRow> leading_factor_probe(int kernel_case, const std::vector<unsigned>& n_list, const Real& t,
                                                  const PrecisionContext& ctx) {
  std::vector<ProbeRow> rows;
  for (unsigned n : n_list) {
    const Real d = hankel_det(kernel_weight(kernel_case, t), n, ctx);
    const Real c = fredholm_prefactor(kernel_case, n, t, ctx);
    WorkingPrecision wp(ctx.working_digits());
    rows.push_back(ProbeRow{n, d, c, d / c});
  }
  return rows;
}

/// True when |ratio - 1| does not increase along the rows and ends below tol.
/// `slack` absorbs rounding noise once the deviation reaches working
/// precision.
inline bool trend_to_one(const std::vector<ProbeRow>& rows, const Real& tol, const Real& slack = Real(0)) {
  using boost::multiprecision::abs;
  if (rows.empty()) return false;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (abs(rows[i].ratio - 1) > abs(rows[i - 1].ratio - 1) + slack) return false;
  return abs(rows.back().ratio - 1) < tol;
}

/// (ii) log det(I + Q_n K Q_n) against (t/2)^(2n+2) / Gamma(2n+3). Report
/// only: ratio keeps its sign so that the sign question stays visible.
inline std::vector<ProbeRow> correction_probe(int kernel_case, const std::vector<unsigned>& n_list, const Real& t,
                                              const PrecisionContext& ctx) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  using boost::multiprecision::pow;
  std::vector<ProbeRow> rows;
  for (unsigned n : n_list) {
    const Real f = fredholm_det(kernel_case, t, n, ctx).value;
    WorkingPrecision wp(ctx.working_digits());
    const Real ref = pow(lift(t) / 2, 2 * static_cast<long>(n) + 2) / exp(log_gamma_positive(Real(2 * n + 3)));
    const Real lf = log(f);
    rows.push_back(ProbeRow{n, lf, ref, ref == 0 ? Real(0) : lf / ref});
  }
  return rows;
}

/// (iii) D_n(0) against the large-n form
///   2^(-n(n+a+b)) n^((a^2+b^2)/2 - 1/4) (2 pi)^n
///   G((1+a+b)/2) G((2+a+b)/2)^2 G((3+a+b)/2) / (G(1+a+b) G(1+a) G(1+b)).
/// Report only; D_n(0) is the closed-form product of the norms.
inline std::vector<ProbeRow> barnes_probe(const Real& a, const Real& b, const std::vector<unsigned>& n_list,
                                          const PrecisionContext& ctx) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  WorkingPrecision wp(ctx.working_digits());
  const Real A = lift(a), B = lift(b), s = A + B;
  const Real logG = log_barnes_g((1 + s) / 2, ctx) + 2 * log_barnes_g((2 + s) / 2, ctx) +
                    log_barnes_g((3 + s) / 2, ctx) - log_barnes_g(1 + s, ctx) - log_barnes_g(1 + A, ctx) -
                    log_barnes_g(1 + B, ctx);
  const Real ln2 = log(Real(2)), ln2pi = log(2 * pi_value());
  std::vector<ProbeRow> rows;
  for (unsigned n : n_list) {
    const Real nn = Real(n);
    const Real d = JacobiClosedForms::hankel(A, B, n);
    const Real ref = exp(-nn * (nn + s) * ln2 + ((A * A + B * B) / 2 - Real(0.25)) * log(nn) + nn * ln2pi + logG);
    rows.push_back(ProbeRow{n, d, ref, d / ref});
  }
  return rows;
}

/// (iv) phi(t) = t d/dt log det(I + Q_n K_1(t/2) Q_n) by five-point
/// differences against -t^2/16 + (t/2) p1(n, t/2) at a = b = 1/2. The second
/// entry uses +t^2/16 and is reported only.
inline std::vector<Residual> phi_identity(unsigned n, const Real& t, const PrecisionContext& ctx) {
  using boost::multiprecision::log;
  WorkingPrecision wp(ctx.working_digits());
  const Real tt = lift(t);
  const Real h = fd_step_at(tt, ctx);
  const Real phi = tt * central_diff1([&](const Real& x) { return log(fredholm_det(1, x / 2, n, ctx).value); }, tt, h);
  const RecurrenceTable tab = recurrence_from_moments(kernel_weight(1, tt / 2), n, ctx);
  const Real p1 = tab.p1[n];
  return {make_residual("phi", phi, -tt * tt / 16 + tt / 2 * p1),
          make_residual("phi_printed_sign", phi, tt * tt / 16 + tt / 2 * p1)};
}

struct AsymptoticReport {
  std::vector<ProbeRow> leading;     // (i)
  std::vector<ProbeRow> correction;  // (ii), report only
  std::vector<ProbeRow> barnes;      // (iii), report only
  std::vector<Residual> phi;         // (iv)
  bool leading_trend = false;
};

inline AsymptoticReport asymptotic_probe(int kernel_case, const std::vector<unsigned>& n_list, const Real& t,
                                         const PrecisionContext& ctx, const Real& barnes_a = Real(0.3),
                                         const Real& barnes_b = Real(1.5), unsigned barnes_n_max = 20) {
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1]) throw Error(ErrorKind::InvalidArgument, "n_list must increase");
  AsymptoticReport r;
  r.leading = leading_factor_probe(kernel_case, n_list, t, ctx);
  r.leading_trend = trend_to_one(r.leading, Real("1e-4"));
  r.correction = correction_probe(kernel_case, n_list, t, ctx);
  std::vector<unsigned> bn;
  for (unsigned n = 1; n <= barnes_n_max; ++n) bn.push_back(n);
  r.barnes = barnes_probe(barnes_a, barnes_b, bn, ctx);
  r.phi = phi_identity(2, Real(1), ctx);
  return r;
}

}  // namespace pjl
