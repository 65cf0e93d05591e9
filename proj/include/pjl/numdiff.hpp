#pragma once
// Central finite-difference stencils and Chebyshev spectral differentiation.

#include <pjl/real.hpp>

#include <vector>

namespace pjl {

/// Step used by the difference oracles: max(|t|, 1) * fd_step.
inline Real fd_step_at(const Real& t, const PrecisionContext& ctx) {
  using boost::multiprecision::abs;
  const Real s = abs(t) > 1 ? abs(t) : Real(1);
  return s * ctx.fd_step;
}

/// Five-point central first derivative.
template <class F>
Real central_diff1(F&& f, const Real& x, const Real& h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

/// Five-point central second derivative.
template <class F>
Real central_diff2(F&& f, const Real& x, const Real& h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

/// Stencil values f(x + j h), j = -2..2, shared between the first and second
/// derivative so vector-valued routes are evaluated only once per point.
template <class V>
struct Stencil5 {
  V m2, m1, c, p1, p2;
};

template <class V, class F>
Stencil5<V> sample_stencil(F&& f, const Real& x, const Real& h) {
  return Stencil5<V>{f(x - 2 * h), f(x - h), f(x), f(x + h), f(x + 2 * h)};
}

inline Real stencil_d1(const Real& m2, const Real& m1, const Real& p1, const Real& p2, const Real& h) {
  return (-p2 + 8 * p1 - 8 * m1 + m2) / (12 * h);
}

inline Real stencil_d2(const Real& m2, const Real& m1, const Real& c, const Real& p1, const Real& p2,
                       const Real& h) {
  return (-p2 + 16 * p1 - 30 * c + 16 * m1 - m2) / (12 * h * h);
}

/// Chebyshev-Gauss-Lobatto grid on [a, b] with N+1 points, ordered from a to b.
struct ChebyshevGrid {
  Real a, b;
  std::vector<Real> nodes;
  /// (N+1) x (N+1) first-derivative matrix on [a, b], row-major.
  std::vector<std::vector<Real>> diff;

  std::vector<Real> differentiate(const std::vector<Real>& f) const {
    std::vector<Real> d(f.size(), Real(0));
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j) d[i] += diff[i][j] * f[j];
    return d;
  }
};

inline ChebyshevGrid chebyshev_grid(const Real& a, const Real& b, unsigned N) {
  using boost::multiprecision::cos;
  if (N < 2) throw Error(ErrorKind::InvalidArgument, "Chebyshev grid needs at least 3 points");
  ChebyshevGrid g;
  g.a = a;
  g.b = b;
  const Real pi = pi_value();
  // Standard points x_j = cos(pi j / N) on [-1, 1], here reversed so that
  // s_j increases with j.
  std::vector<Real> x(N + 1), c(N + 1, Real(1));
  for (unsigned j = 0; j <= N; ++j) x[j] = -cos(pi * j / N);
  c[0] = 2;
  c[N] = 2;
  for (unsigned j = 1; j <= N; j += 2) c[j] = -c[j];
  std::vector<std::vector<Real>> D(N + 1, std::vector<Real>(N + 1, Real(0)));
  for (unsigned i = 0; i <= N; ++i) {
    for (unsigned j = 0; j <= N; ++j) {
      if (i != j) D[i][j] = (c[i] / c[j]) / (x[i] - x[j]);
    }
    // Negative-sum trick keeps the diagonal exact for constants.
    Real s = 0;
    for (unsigned j = 0; j <= N; ++j)
      if (j != i) s += D[i][j];
    D[i][i] = -s;
  }
  const Real half = (b - a) / 2;
  g.nodes.resize(N + 1);
  for (unsigned j = 0; j <= N; ++j) g.nodes[j] = a + half * (x[j] + 1);
  for (auto& row : D)
    for (auto& v : row) v /= half;
  g.diff = std::move(D);
  return g;
}

}  // namespace pjl
