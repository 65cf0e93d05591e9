#include <pjl/orthopoly.hpp>

#include "test_util.hpp"

using namespace pjl;
using namespace pjl::test;
using boost::multiprecision::abs;

namespace {

WeightParams wp_of(const char* a, const char* b, const char* t) { return WeightParams{dec(a), dec(b), dec(t)}; }

}  // namespace

TEST(Recurrence, SymmetricWeightHasZeroDiagonal) {
  const auto ctx = ctx60();
  const auto tab = recurrence_from_moments(wp_of("1", "1", "0"), 4, ctx);
  for (unsigned n = 0; n <= 4; ++n) EXPECT_TRUE(Below(abs(tab.alpha[n]), tol10(-70))) << n;
}

TEST(Recurrence, BetaMatchesGramOrthogonalizationOfQuadratureMoments) {
  const auto ctx = ctx60();
  const auto p = wp_of("0.5", "1.5", "0");
  const auto tab = recurrence_from_moments(p, 3, ctx);
  // Independent route: Gram-Schmidt on quadrature moments.
  const auto mu = moments_by_quadrature(p, 8, ctx);
  WorkingPrecision wp(ctx.working_digits());
  const auto f = ldlt(hankel_moment_matrix(mu, 4));
  EXPECT_TRUE(RelClose(tab.beta[2], f.D[2] / f.D[1], tol10(-40)));
  EXPECT_TRUE(RelClose(tab.beta[2], JacobiClosedForms::beta(p.alpha, p.beta, 2), tol10(-60)));
}

TEST(Recurrence, BetaIsDeterminantRatio) {
  const auto ctx = ctx60();
  const auto p = wp_of("0.5", "0.5", "1");
  const auto tab = recurrence_from_moments(p, 3, ctx);
  WorkingPrecision wp(ctx.working_digits());
  const Real d2 = hankel_det(p, 2, ctx), d3 = hankel_det(p, 3, ctx), d4 = hankel_det(p, 4, ctx);
  EXPECT_TRUE(RelClose(tab.beta[3], d4 * d2 / (d3 * d3), tol10(-30)));
}

TEST(Recurrence, TableInvariants) {
  const auto ctx = ctx60();
  for (const char* t : {"-2", "0", "1.3"}) {
    const auto tab = recurrence_from_moments(wp_of("-0.4", "1.5", t), 6, ctx);
    WorkingPrecision wp(ctx.working_digits());
    EXPECT_EQ(tab.p1[0], 0);
    Real partial = 0;
    for (unsigned n = 0; n <= 6; ++n) {
      EXPECT_GT(tab.h[n], 0);
      if (n > 0) {
        EXPECT_GT(tab.beta[n], 0);
        EXPECT_TRUE(RelClose(tab.beta[n], tab.h[n] / tab.h[n - 1], tol10(-65)));
      }
      EXPECT_TRUE(AbsClose(tab.p1[n], -partial, tol10(-60)));
      partial += tab.alpha[n];
    }
    EXPECT_TRUE(RelClose(tab.h[0], mu0(tab.params, ctx), tol10(-65)));
  }
}

TEST(Recurrence, ClosedFormsAtZeroTime) {
  const auto ctx = ctx60();
  for (const char* a : {"0.3", "-0.4", "1.5"})
    for (const char* b : {"0.5", "-0.7"}) {
      const auto p = wp_of(a, b, "0");
      const auto tab = recurrence_from_moments(p, 10, ctx);
      WorkingPrecision wp(ctx.working_digits());
      for (unsigned n = 0; n <= 10; ++n) {
        EXPECT_TRUE(AbsClose(tab.alpha[n], JacobiClosedForms::alpha(p.alpha, p.beta, n), tol10(-50))) << n;
        EXPECT_TRUE(RelClose(tab.h[n], JacobiClosedForms::h(p.alpha, p.beta, n), tol10(-50))) << n;
        if (n > 0) EXPECT_TRUE(RelClose(tab.beta[n], JacobiClosedForms::beta(p.alpha, p.beta, n), tol10(-50))) << n;
      }
    }
}

TEST(Polynomials, LowDegreesAndOrthogonality) {
  const auto ctx = ctx60();
  const auto p = wp_of("0.5", "0.5", "1");
  const auto tab = recurrence_from_moments(p, 4, ctx);
  WorkingPrecision wp(ctx.working_digits());
  const Real z = dec("0.37");
  EXPECT_EQ(eval_pn(tab, 0, z), 1);
  EXPECT_TRUE(AbsClose(eval_pn(tab, 1, z), z - tab.alpha[0], tol10(-70)));
  const auto P3 = pn_coeffs(tab, 3);
  EXPECT_EQ(P3.coeffs.back(), 1);
  EXPECT_TRUE(AbsClose(P3.coeffs[2], tab.p1[3], tol10(-65)));
  EXPECT_TRUE(AbsClose(P3(z), eval_pn(tab, 3, z), tol10(-65)));
  using boost::multiprecision::exp;
  using boost::multiprecision::sqrt;
  auto ip = [&](unsigned i, unsigned j) {
    return tanh_sinh(
               [&](const Real& x, const Real& omx, const Real& opx) {
                 return eval_pn(tab, i, x) * eval_pn(tab, j, x) * sqrt(omx * opx) * exp(-x);
               },
               ctx)
        .value;
  };
  EXPECT_TRUE(Below(abs(ip(3, 2)), tol10(-30)));
  EXPECT_TRUE(RelClose(ip(3, 3), tab.h[3], tol10(-30)));
  EXPECT_THROW(eval_pn(tab, 9, z), Error);
}

TEST(Toda, ResidualsByFiniteDifferences) {
  const auto ctx = ctx60();
  auto r = toda_residual(wp_of("0.5", "0.5", "0.7"), 2, ctx);
  EXPECT_TRUE(Below(r.beta_eq, tol10(-15)));
  EXPECT_TRUE(Below(r.alpha_eq, tol10(-15)));
  auto r0 = toda_residual(wp_of("0.8", "0.8", "0"), 3, ctx);
  EXPECT_TRUE(Below(r0.alpha_eq, tol10(-15)));
  EXPECT_TRUE(Below(r0.beta_eq, tol10(-15)));
  auto r1 = toda_residual(wp_of("1", "2", "1"), 3, ctx);
  EXPECT_TRUE(Below(r1.p1_eq, tol10(-15)));
}

TEST(Toda, LogDerivativeAndMolecule) {
  const auto ctx = ctx60();
  const auto p = wp_of("0.5", "0.5", "1");
  const auto tab = recurrence_from_moments(p, 3, ctx);
  EXPECT_TRUE(AbsClose(log_hankel_derivative(p, 3, ctx), tab.p1[3], tol10(-15)));
  EXPECT_TRUE(RelClose(log_hankel_second_derivative(p, 3, ctx), tab.beta[3], tol10(-15)));
}

TEST(Toda, IntegrationMatchesMomentRoute) {
  const auto ctx = PrecisionContext::with_digits(40);
  const auto p0 = wp_of("0.5", "0.5", "0");
  const auto start = recurrence_from_moments(p0, 4, ctx);
  const auto same = integrate_toda(start, p0.t, ctx);
  EXPECT_EQ(same.alpha[2], start.alpha[2]);
  const auto end = integrate_toda(start, Real(1), ctx);
  const auto ref = recurrence_from_moments(p0.with_t(Real(1)), 4, ctx);
  for (unsigned n = 0; n <= 4; ++n) {
    EXPECT_TRUE(AbsClose(end.alpha[n], ref.alpha[n], tol10(-8))) << n;
    if (n > 0) EXPECT_TRUE(RelClose(end.beta[n], ref.beta[n], tol10(-8))) << n;
    EXPECT_TRUE(RelClose(end.h[n], ref.h[n], tol10(-8))) << n;
  }
  const auto back = integrate_toda(end, Real(0), ctx);
  for (unsigned n = 0; n <= 4; ++n) {
    EXPECT_TRUE(AbsClose(back.alpha[n], start.alpha[n], tol10(-7))) << n;
    if (n > 0) EXPECT_TRUE(RelClose(back.beta[n], start.beta[n], tol10(-7))) << n;
  }
}

TEST(Toda, SeriesMatchesMomentRoute) {
  const auto ctx = ctx60();
  const auto p = wp_of("0.3", "1.5", "1.3");
  const auto s = recurrence_from_toda_series(p, 5, ctx);
  const auto ref = recurrence_from_moments(p, 5, ctx);
  EXPECT_TRUE(Below(s.tail, tol10(-40)));
  for (unsigned n = 0; n <= 5; ++n) {
    EXPECT_TRUE(RelClose(s.table.alpha[n], ref.alpha[n], tol10(-40))) << n;
    EXPECT_TRUE(RelClose(s.table.h[n], ref.h[n], tol10(-40))) << n;
    if (n > 0) {
      EXPECT_TRUE(RelClose(s.table.beta[n], ref.beta[n], tol10(-40))) << n;
      EXPECT_TRUE(RelClose(s.table.p1[n], ref.p1[n], tol10(-40))) << n;
    }
  }
  // alpha_n vanishes like a high power of t when a = b; the series keeps it
  // to full relative accuracy.
  const auto sym = wp_of("0.5", "0.5", "0.5");
  EXPECT_TRUE(RelClose(recurrence_from_toda_series(sym, 6, ctx).table.alpha[6],
                       recurrence_from_moments(sym, 6, ctx).alpha[6], tol10(-30)));
  // Outside the radius the tail estimate says so.
  EXPECT_GT(recurrence_from_toda_series(p.with_t(Real(8)), 5, ctx).tail, tol10(-5));
}
