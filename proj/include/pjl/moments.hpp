#pragma once
// Moments of the deformed Jacobi weight w(x) = (1-x)^alpha (1+x)^beta e^{-tx}
// on [-1, 1] and the Hankel determinants D_n(t) = det(mu_{i+j}).

#include <pjl/linalg.hpp>
#include <pjl/quadrature.hpp>
#include <pjl/specfun.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace pjl {

struct WeightParams {
  Real alpha;
  Real beta;
  Real t;

  void validate() const {
    if (!is_finite(alpha) || !is_finite(beta) || !is_finite(t)) {
      throw Error(ErrorKind::InvalidArgument, "weight parameters must be finite");
    }
    if (!(alpha > -1) || !(beta > -1)) {
      throw Error(ErrorKind::InvalidArgument, "weight requires alpha > -1 and beta > -1");
    }
  }

  WeightParams with_t(const Real& t_new) const { return WeightParams{alpha, beta, t_new}; }
  /// x -> -x image: (beta, alpha, -t).
  WeightParams reflected() const { return WeightParams{beta, alpha, -t}; }
};

struct MomentVector {
  WeightParams params;
  std::vector<Real> mu;
};

namespace detail {

// 2^{alpha+beta+1} B(alpha+1, beta+1) e^t, the t-dependent prefactor of mu_0.
inline Real moment_prefactor(const WeightParams& p) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  const Real s = p.alpha + p.beta + 1;
  return exp(s * log(Real(2)) + log_gamma_positive(p.alpha + 1) + log_gamma_positive(p.beta + 1) -
             log_gamma_positive(s + 1) + p.t);
}

// Binomial-sum moments at a fixed precision. Returns false when the
// cancellation in some sum exceeds `budget` decimal digits. Sums that vanish
// (odd moments of a symmetric weight) are measured against
// 10^(-digits) mu_0 instead of their own size.
inline bool moments_at(const WeightParams& p, unsigned k_max, const PrecisionContext& ctx, unsigned budget,
                       std::vector<Real>& out) {
  using boost::multiprecision::abs;
  using boost::multiprecision::log10;
  WorkingPrecision wp(ctx.working_digits());
  const Real a = lift(p.alpha), b = lift(p.beta), t = lift(p.t);
  const WeightParams q{a, b, t};
  const Real pre = moment_prefactor(q);
  // c_r = (-2)^r (beta+1)_r / (alpha+beta+2)_r M(beta+1+r; alpha+beta+2+r; -2t)
  std::vector<Real> c(k_max + 1);
  Real ratio = 1;
  for (unsigned r = 0; r <= k_max; ++r) {
    if (r > 0) ratio *= -2 * (b + r) / (a + b + 1 + r);
    c[r] = ratio * kummer_m(b + 1 + r, a + b + 2 + r, -2 * t, ctx);
  }
  out.assign(k_max + 1, Real(0));
  const Real floor_scale = abs(c[0]) * pow10(-static_cast<long>(ctx.digits));
  for (unsigned k = 0; k <= k_max; ++k) {
    Real sum = 0, abs_sum = 0, binom = 1;
    for (unsigned r = 0; r <= k; ++r) {
      if (r > 0) binom = binom * (k - r + 1) / r;
      const Real term = binom * c[r];
      sum += term;
      abs_sum += abs(term);
    }
    const Real scale = abs(sum) > floor_scale ? abs(sum) : floor_scale;
    if (log10(abs_sum / scale) > budget) return false;
    out[k] = (k % 2 == 0 ? pre : -pre) * sum;
  }
  return true;
}

}  // namespace detail

/// mu_0(t) = 2^{alpha+beta+1} B(alpha+1, beta+1) e^t M(beta+1; alpha+beta+2; -2t).
inline Real mu0(const WeightParams& p, const PrecisionContext& ctx) {
  p.validate();
  WorkingPrecision wp(ctx.working_digits());
  const Real a = lift(p.alpha), b = lift(p.beta);
  return detail::moment_prefactor(WeightParams{a, b, lift(p.t)}) * kummer_m(b + 1, a + b + 2, -2 * lift(p.t), ctx);
}

/// mu_0 .. mu_{k_max} from
///   mu_k = (-1)^k d^k/dt^k mu_0
///        = (-1)^k 2^{a+b+1} B(a+1,b+1) e^t sum_r C(k,r) (-2)^r (b+1)_r/(a+b+2)_r M(b+1+r; a+b+2+r; -2t).
/// The alternating binomial sums cancel; precision is raised until the
/// observed cancellation fits in the extra digits, and results are rounded
/// back to the caller's working precision.
inline MomentVector moments(const WeightParams& p, unsigned k_max, const PrecisionContext& ctx) {
  p.validate();
  unsigned extra = 5 + k_max / 2;
  for (int attempt = 0; attempt < 6; ++attempt) {
    std::vector<Real> mu;
    const PrecisionContext hi = ctx.escalated(extra);
    if (detail::moments_at(p, k_max, hi, extra, mu)) {
      for (auto& m : mu) m = rounded(m, ctx.working_digits());
      return MomentVector{p, std::move(mu)};
    }
    extra *= 2;
  }
  throw Error(ErrorKind::PrecisionLoss, "moment binomial sums lost too many digits");
}

/// Single moment mu_k. For k = 0 this is mu0 itself.
inline Real mu_k(const WeightParams& p, unsigned k, const PrecisionContext& ctx) {
  if (k == 0) return mu0(p, ctx);
  return moments(p, k, ctx).mu[k];
}

/// Oracle: mu_0 .. mu_{k_max} by tanh-sinh quadrature of x^k w(x).
inline std::vector<Real> moments_by_quadrature(const WeightParams& p, unsigned k_max, const PrecisionContext& ctx) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  p.validate();
  WorkingPrecision wp(ctx.working_digits());
  const Real a = lift(p.alpha), b = lift(p.beta), t = lift(p.t);
  auto r = tanh_sinh_vector(
      [&](const Real& x, const Real& omx, const Real& opx, std::vector<Real>& out) {
        Real w = exp(a * log(omx) + b * log(opx) - t * x);
        for (unsigned k = 0; k <= k_max; ++k) {
          out[k] = w;
          w *= x;
        }
      },
      k_max + 1, ctx);
  return r.value;
}

/// n x n moment matrix (mu_{i+j}) from a moment vector with at least 2n-1 entries.
inline DenseMatrix hankel_moment_matrix(const std::vector<Real>& mu, unsigned n) {
  if (mu.size() < 2 * static_cast<std::size_t>(n) - 1) {
    throw Error(ErrorKind::InsufficientCoeffs, "moment vector too short for the Hankel matrix");
  }
  DenseMatrix h(n, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) h(i, j) = mu[i + j];
  return h;
}

/// Decimal digits added for n x n moment matrices, whose condition number
/// grows geometrically in n.
inline unsigned hankel_extra_digits(unsigned n) { return 10 * n; }

/// D_n(t) = det(mu_{i+j})_{i,j<n} by pivoted LU at digits + 10 n.
inline Real hankel_det(const WeightParams& p, unsigned n, const PrecisionContext& ctx) {
  if (n == 0) return Real(1);
  const PrecisionContext hi = ctx.escalated(hankel_extra_digits(n));
  const MomentVector mv = moments(p, 2 * n - 2, hi);
  Real d;
  {
    WorkingPrecision wp(hi.working_digits());
    d = determinant(hankel_moment_matrix(mv.mu, n));
  }
  if (!(d > 0)) {
    throw Error(ErrorKind::SingularMatrix, "Hankel determinant is not positive at n = " + std::to_string(n));
  }
  return rounded(d, ctx.working_digits());
}

}  // namespace pjl
