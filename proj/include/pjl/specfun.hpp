#pragma once
// Scalar special functions evaluated by ascending series at the context's
// working precision: Kummer M(a;b;z), Bessel J_k and I_k, log Gamma and
// log Barnes G.

#include <pjl/real.hpp>

#include <cmath>
#include <string>

namespace pjl {

namespace detail {

constexpr unsigned kSeriesIterationCap = 200000;

inline bool is_nonpositive_integer(const Real& x) {
  using boost::multiprecision::floor;
  return x <= 0 && floor(x) == x;
}

inline unsigned long to_ulong(const Real& x) { return static_cast<unsigned long>(x.convert_to<double>()); }

// Sum of (a)_k/(b)_k x^k/k! for x >= 0. Stops once the term ratio is below 1/2
// and the current term is below eps relative to the partial sum, which bounds
// the remaining tail by the same amount.
inline Real kummer_series(const Real& a, const Real& b, const Real& x, const Real& eps) {
  using boost::multiprecision::abs;
  Real sum = 1;
  Real term = 1;
  for (unsigned k = 0; k < kSeriesIterationCap; ++k) {
    const Real ratio = (a + k) * x / ((b + k) * (k + 1));
    term *= ratio;
    sum += term;
    if (term == 0) return sum;
    if (abs(ratio) < 0.5 && abs(term) <= eps * abs(sum)) return sum;
  }
  throw Error(ErrorKind::NonConvergence, "Kummer series did not converge");
}

// Ascending series for J_k (sign = -1) or I_k (sign = +1).
inline Real bessel_series(unsigned k, const Real& t, int sign, const Real& eps) {
  using boost::multiprecision::abs;
  using boost::multiprecision::pow;
  const Real half = t / 2;
  const Real q = half * half;
  Real term = pow(half, k);
  for (unsigned j = 2; j <= k; ++j) term /= j;
  Real sum = term;
  for (unsigned m = 1; m < kSeriesIterationCap; ++m) {
    term *= q / (Real(m) * (m + k));
    if (sign < 0) term = -term;
    sum += term;
    if (term == 0) return sum;
    // Ratios decrease monotonically once m^2 > q.
    if (Real(m) * m > q && abs(term) <= eps * abs(sum)) return sum;
  }
  throw Error(ErrorKind::NonConvergence, "Bessel series did not converge");
}

inline Real working_eps(const PrecisionContext& ctx) {
  return pow10(-static_cast<long>(ctx.working_digits()));
}

}  // namespace detail

/// Confluent hypergeometric M(a;b;z) = sum (a)_k z^k / ((b)_k k!).
/// For z < 0 Kummer's transformation M(a;b;z) = e^z M(b-a;b;-z) keeps the
/// series free of cancellation.
inline Real kummer_m(const Real& a, const Real& b, const Real& z, const PrecisionContext& ctx) {
  WorkingPrecision wp(ctx.working_digits());
  if (detail::is_nonpositive_integer(b)) {
    throw Error(ErrorKind::PolarParameter, "Kummer M: b is zero or a negative integer");
  }
  if (!is_finite(z) || !is_finite(a) || !is_finite(b)) {
    throw Error(ErrorKind::DomainError, "Kummer M: non-finite argument");
  }
  if (z == 0) return Real(1);
  const Real eps = detail::working_eps(ctx);
  if (z < 0) {
    return boost::multiprecision::exp(z) * detail::kummer_series(b - a, b, -z, eps);
  }
  return detail::kummer_series(a, b, z, eps);
}

/// Bessel function of the first kind J_k(t), integer order k >= 0.
inline Real bessel_j(unsigned k, const Real& t, const PrecisionContext& ctx) {
  using boost::multiprecision::abs;
  if (t == 0) return Real(k == 0 ? 1 : 0);
  // The alternating series cancels roughly |t| / ln 10 digits.
  const unsigned extra = static_cast<unsigned>(std::ceil(abs(t).convert_to<double>() / std::log(10.0))) + 2;
  const PrecisionContext hi = ctx.escalated(extra);
  WorkingPrecision wp(hi.working_digits());
  return rounded(detail::bessel_series(k, t, -1, detail::working_eps(ctx)), ctx.working_digits());
}

/// Modified Bessel function I_k(t), integer order k >= 0.
inline Real bessel_i(unsigned k, const Real& t, const PrecisionContext& ctx) {
  WorkingPrecision wp(ctx.working_digits());
  if (t == 0) return Real(k == 0 ? 1 : 0);
  return detail::bessel_series(k, t, +1, detail::working_eps(ctx));
}

/// log Gamma(z), z > 0.
inline Real log_gamma(const Real& z, const PrecisionContext& ctx) {
  WorkingPrecision wp(ctx.working_digits());
  if (!(z > 0)) throw Error(ErrorKind::DomainError, "log_gamma requires z > 0");
  return log_gamma_positive(z);
}

/// (a)_k = a (a+1) ... (a+k-1).
inline Real pochhammer(const Real& a, unsigned k) {
  Real p = 1;
  for (unsigned j = 0; j < k; ++j) p *= a + j;
  return p;
}

/// Binomial coefficient C(n, k); zero outside 0 <= k <= n.
inline Real binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Real(0);
  if (k > n - k) k = n - k;
  Real c = 1;
  for (long j = 1; j <= k; ++j) {
    c *= n - k + j;
    c /= j;
  }
  return c;
}

/// log G(z) for the Barnes G-function, z > 0.
///
/// Integer z uses G(m) = prod_{j=1}^{m-1} Gamma(j). Otherwise z is shifted
/// into [1/2, 3/2) with G(z+1) = Gamma(z) G(z) and the Taylor series
///   log G(1+w) = w log(2 pi)/2 - (w + (1+gamma) w^2)/2
///                + sum_{k>=2} (-1)^k zeta(k) w^(k+1)/(k+1),  |w| <= 1/2
/// is summed.
inline Real log_barnes_g(const Real& z, const PrecisionContext& ctx) {
  using boost::multiprecision::abs;
  using boost::multiprecision::floor;
  using boost::multiprecision::log;
  WorkingPrecision wp(ctx.working_digits());
  if (!(z > 0) || !is_finite(z)) throw Error(ErrorKind::DomainError, "log_barnes_g requires z > 0");

  if (floor(z) == z) {
    Real sum = 0;
    const unsigned long m = detail::to_ulong(z);
    for (unsigned long j = 2; j < m; ++j) sum += log_gamma_positive(Real(j));
    return sum;
  }

  Real u = lift(z);
  Real shift = 0;  // log G(z) = log G(u) + shift
  if (u < 0.5) {
    shift -= log_gamma_positive(u);
    u += 1;
  }
  while (u >= 1.5) {
    u -= 1;
    shift += log_gamma_positive(u);
  }
  const Real w = u - 1;
  const Real eps = detail::working_eps(ctx);
  Real sum = w * log(2 * pi_value()) / 2 - (w + (1 + euler_gamma()) * w * w) / 2;
  Real wpow = w * w;  // w^(k+1) at k = 1
  for (unsigned long k = 2; k < detail::kSeriesIterationCap; ++k) {
    wpow *= w;
    Real term = zeta_at(k) * wpow / (k + 1);
    if (k % 2 == 1) term = -term;
    sum += term;
    if (abs(wpow) <= eps * (abs(sum) + eps)) return sum + shift;
  }
  throw Error(ErrorKind::NonConvergence, "Barnes G series did not converge");
}

}  // namespace pjl
