#pragma once
// Adaptive Dormand-Prince 5(4) integration of y' = f(t, y) in working
// precision.

#include <pjl/real.hpp>

#include <algorithm>
#include <vector>

namespace pjl {

using StateVector = std::vector<Real>;

struct OdeOptions {
  Real rtol;
  Real atol;
  /// Initial step; zero selects |t1 - t0| / 100.
  Real h0 = 0;
  unsigned max_steps = 200000;
};

struct OdeStats {
  unsigned accepted = 0;
  unsigned rejected = 0;
  unsigned rhs_calls = 0;
};

/// Integrates from t0 to t1 (either direction) and returns y(t1). The
/// right-hand side is invoked as f(t, y, dydt).
template <class F>
StateVector integrate_dp45(F&& f, const Real& t0, const Real& t1, StateVector y, const OdeOptions& opt,
                           OdeStats* stats = nullptr) {
  using boost::multiprecision::abs;
  using boost::multiprecision::pow;
  using boost::multiprecision::sqrt;
  if (t0 == t1) return y;
  const std::size_t m = y.size();

  // Butcher tableau.
  const Real a21 = Real(1) / 5;
  const Real a31 = Real(3) / 40, a32 = Real(9) / 40;
  const Real a41 = Real(44) / 45, a42 = Real(-56) / 15, a43 = Real(32) / 9;
  const Real a51 = Real(19372) / 6561, a52 = Real(-25360) / 2187, a53 = Real(64448) / 6561,
             a54 = Real(-212) / 729;
  const Real a61 = Real(9017) / 3168, a62 = Real(-355) / 33, a63 = Real(46732) / 5247, a64 = Real(49) / 176,
             a65 = Real(-5103) / 18656;
  const Real b1 = Real(35) / 384, b3 = Real(500) / 1113, b4 = Real(125) / 192, b5 = Real(-2187) / 6784,
             b6 = Real(11) / 84;
  const Real e1 = Real(71) / 57600, e3 = Real(-71) / 16695, e4 = Real(71) / 1920, e5 = Real(-17253) / 339200,
             e6 = Real(22) / 525, e7 = Real(-1) / 40;

  const int dir = t1 > t0 ? 1 : -1;
  Real t = t0;
  Real h = opt.h0 != 0 ? abs(opt.h0) : abs(t1 - t0) / 100;
  const Real h_min = abs(t1 - t0) * pow10(-static_cast<long>(Real::default_precision()) / 2);

  std::vector<StateVector> k(7, StateVector(m));
  StateVector tmp(m), ynew(m);
  auto call = [&](const Real& tt, const StateVector& yy, StateVector& out) {
    f(tt, yy, out);
    if (stats) ++stats->rhs_calls;
  };
  call(t, y, k[0]);

  for (unsigned step = 0; step < opt.max_steps; ++step) {
    if (abs(t1 - t) <= h_min) return y;
    if (h > abs(t1 - t)) h = abs(t1 - t);
    const Real hs = dir * h;

    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + hs * (a21 * k[0][i]);
    call(t + hs / 5, tmp, k[1]);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + hs * (a31 * k[0][i] + a32 * k[1][i]);
    call(t + hs * 3 / 10, tmp, k[2]);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + hs * (a41 * k[0][i] + a42 * k[1][i] + a43 * k[2][i]);
    call(t + hs * 4 / 5, tmp, k[3]);
    for (std::size_t i = 0; i < m; ++i)
      tmp[i] = y[i] + hs * (a51 * k[0][i] + a52 * k[1][i] + a53 * k[2][i] + a54 * k[3][i]);
    call(t + hs * 8 / 9, tmp, k[4]);
    for (std::size_t i = 0; i < m; ++i)
      tmp[i] = y[i] + hs * (a61 * k[0][i] + a62 * k[1][i] + a63 * k[2][i] + a64 * k[3][i] + a65 * k[4][i]);
    call(t + hs, tmp, k[5]);
    for (std::size_t i = 0; i < m; ++i)
      ynew[i] = y[i] + hs * (b1 * k[0][i] + b3 * k[2][i] + b4 * k[3][i] + b5 * k[4][i] + b6 * k[5][i]);
    call(t + hs, ynew, k[6]);

    Real err = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Real ei =
          hs * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] + e6 * k[5][i] + e7 * k[6][i]);
      const Real sc = opt.atol + opt.rtol * std::max(abs(y[i]), abs(ynew[i]));
      const Real q = ei / sc;
      err += q * q;
    }
    err = sqrt(err / m);
    if (!is_finite(err)) err = 1e10;

    if (err <= 1) {
      t += hs;
      y.swap(ynew);
      k[0].swap(k[6]);
      if (stats) ++stats->accepted;
      if (t == t1 || abs(t1 - t) <= h_min) return y;
    } else if (stats) {
      ++stats->rejected;
    }
    Real fac = err == 0 ? Real(5) : Real(0.9) * pow(err, Real(-0.2));
    if (fac > 5) fac = 5;
    if (fac < 0.2) fac = 0.2;
    h *= fac;
    if (h < h_min) throw Error(ErrorKind::StepFailure, "adaptive step size underflow");
  }
  throw Error(ErrorKind::StepFailure, "step limit reached");
}

}  // namespace pjl
