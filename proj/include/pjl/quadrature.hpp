#pragma once
// Double-exponential (tanh-sinh) quadrature on [-1, 1].
//
// Integrands receive the node together with its exact distances to both
// endpoints, so algebraic endpoint factors (1-x)^a (1+x)^b are evaluated
// without cancellation even when x rounds to +-1.

#include <pjl/real.hpp>

#include <algorithm>
#include <functional>
#include <vector>

namespace pjl {

struct QuadratureResult {
  Real value;
  /// |I_L - I_{L-1}| at the final level.
  Real error_estimate;
  /// Same rule applied to |f|; scale for the error estimate.
  Real abs_integral;
  unsigned levels = 0;
};

struct VectorQuadratureResult {
  std::vector<Real> value;
  Real error_estimate;
  Real abs_integral;
  unsigned levels = 0;
};

namespace detail {

struct TanhSinhNode {
  Real x;
  Real one_minus_x;
  Real one_plus_x;
  Real weight;  // dx/ds
};

inline TanhSinhNode tanh_sinh_node(const Real& s, const Real& half_pi) {
  using boost::multiprecision::cosh;
  using boost::multiprecision::exp;
  using boost::multiprecision::sinh;
  const Real u = half_pi * sinh(s);
  const Real ep = exp(u);
  const Real em = 1 / ep;
  const Real c = (ep + em) / 2;
  TanhSinhNode node;
  node.x = (ep - em) / (ep + em);
  node.one_minus_x = em / c;
  node.one_plus_x = ep / c;
  node.weight = half_pi * cosh(s) / (c * c);
  return node;
}

}  // namespace detail

/// Integrates an m-component integrand f(x, 1-x, 1+x, out) over [-1, 1].
/// Levels halve the step until successive estimates agree to
/// `tol` relative to the integral of |f| (max over components).
template <class F>
VectorQuadratureResult tanh_sinh_vector(F&& f, std::size_t m, const PrecisionContext& ctx,
                                        const Real* tol_override = nullptr) {
  using boost::multiprecision::abs;
  WorkingPrecision wp(ctx.working_digits());
  const Real tol = tol_override ? lift(*tol_override) : lift(ctx.series_tol);
  const Real eps = pow10(-static_cast<long>(ctx.working_digits()));
  const Real half_pi = pi_value() / 2;

  std::vector<Real> sum(m, Real(0));
  Real abs_sum = 0;
  std::vector<Real> fx(m, Real(0));

  auto add_node = [&](const Real& s) -> Real {
    const auto node = detail::tanh_sinh_node(s, half_pi);
    for (auto& v : fx) v = 0;
    f(node.x, node.one_minus_x, node.one_plus_x, fx);
    Real mag = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_finite(fx[i])) throw Error(ErrorKind::NonConvergence, "quadrature integrand is not finite");
      sum[i] += node.weight * fx[i];
      const Real a = abs(node.weight * fx[i]);
      if (a > mag) mag = a;
    }
    abs_sum += mag;
    return mag;
  };

  // Level 0 (h = 1) also fixes how far out the nodes have to go.
  const int max_k = 12;
  add_node(Real(0));
  Real s_max = max_k;
  for (int side : {-1, 1}) {
    int small = 0;
    for (int k = 1; k <= max_k; ++k) {
      const Real mag = add_node(Real(side * k));
      if (mag <= eps * (abs_sum + eps)) {
        if (++small >= 2) break;
      } else {
        small = 0;
      }
    }
  }

  std::vector<Real> prev(m);
  for (std::size_t i = 0; i < m; ++i) prev[i] = sum[i];
  Real h = 1;
  for (unsigned level = 1; level <= ctx.quad_levels; ++level) {
    h /= 2;
    // New nodes are the odd multiples of h.
    for (int side : {-1, 1}) {
      int small = 0;
      for (long j = 1;; j += 2) {
        const Real s = h * j;
        if (s > s_max) break;
        const Real mag = add_node(side * s);
        if (mag <= eps * (abs_sum + eps) && s > 1) {
          if (++small >= 4) break;
        } else {
          small = 0;
        }
      }
    }
    Real err = 0;
    std::vector<Real> cur(m);
    for (std::size_t i = 0; i < m; ++i) {
      cur[i] = h * sum[i];
      const Real d = abs(cur[i] - prev[i]);
      if (d > err) err = d;
    }
    const Real scale = h * abs_sum;
    if (level >= 3 && err <= tol * (scale + eps)) {
      return VectorQuadratureResult{cur, err, scale, level};
    }
    prev = std::move(cur);
  }
  throw Error(ErrorKind::NonConvergence, "tanh-sinh quadrature did not reach the requested tolerance");
}

/// Scalar integrand f(x, 1-x, 1+x) on [-1, 1].
template <class F>
QuadratureResult tanh_sinh(F&& f, const PrecisionContext& ctx, const Real* tol_override = nullptr) {
  auto r = tanh_sinh_vector(
      [&](const Real& x, const Real& omx, const Real& opx, std::vector<Real>& out) { out[0] = f(x, omx, opx); },
      1, ctx, tol_override);
  return QuadratureResult{std::move(r.value[0]), std::move(r.error_estimate), std::move(r.abs_integral), r.levels};
}

/// f(x, x - lo, hi - x) on [lo, hi].
template <class F>
QuadratureResult tanh_sinh_interval(F&& f, const Real& lo, const Real& hi, const PrecisionContext& ctx,
                                    const Real* tol_override = nullptr) {
  WorkingPrecision wp(ctx.working_digits());
  const Real half = (hi - lo) / 2;
  const Real mid = (hi + lo) / 2;
  auto r = tanh_sinh(
      [&](const Real& s, const Real& oms, const Real& ops) { return f(mid + half * s, half * ops, half * oms); }, ctx,
      tol_override);
  r.value *= half;
  r.error_estimate *= half;
  r.abs_integral *= half;
  return r;
}

}  // namespace pjl
