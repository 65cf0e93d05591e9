#include <pjl/moments.hpp>
#include <pjl/numdiff.hpp>

#include "test_util.hpp"

using namespace pjl;
using namespace pjl::test;

namespace {

WeightParams wp_of(const char* a, const char* b, const char* t) { return WeightParams{dec(a), dec(b), dec(t)}; }

}  // namespace

TEST(Moments, Mu0BetaIntegralAtZeroTime) {
  const auto ctx = ctx60();
  WorkingPrecision wp(ctx.working_digits());
  EXPECT_TRUE(RelClose(mu0(wp_of("0.5", "0.5", "0"), ctx), pi_value() / 2, tol10(-70)));
}

TEST(Moments, Mu0MatchesQuadrature) {
  const auto ctx = ctx60();
  const auto p = wp_of("1", "2", "1");
  const Real want = dec("1.185266284167871317998852920200970618510106171171901871207127175106154");
  EXPECT_TRUE(RelClose(mu0(p, ctx), want, tol10(-68)));
  EXPECT_TRUE(RelClose(moments_by_quadrature(p, 0, ctx)[0], want, tol10(-30)));
}

TEST(Moments, Mu0Reflection) {
  const auto ctx = ctx60();
  EXPECT_TRUE(RelClose(mu0(wp_of("0.3", "1.7", "0.9"), ctx), mu0(wp_of("1.7", "0.3", "-0.9"), ctx), tol10(-70)));
}

TEST(Moments, MuKZeroIsMu0) {
  const auto ctx = ctx60();
  const auto p = wp_of("0.4", "1.1", "0.8");
  EXPECT_EQ(mu_k(p, 0, ctx), mu0(p, ctx));
}

TEST(Moments, DerivativeRelationByFiniteDifferences) {
  const auto ctx = ctx60();
  const auto p = wp_of("0.4", "1.1", "0.8");
  WorkingPrecision wp(ctx.working_digits());
  const Real h = fd_step_at(p.t, ctx);
  const Real d = central_diff1([&](const Real& s) { return mu0(p.with_t(s), ctx); }, p.t, h);
  EXPECT_TRUE(RelClose(mu_k(p, 1, ctx), -d, tol10(-20)));
  // mu_k' = -mu_{k+1} for a run of k
  const auto mv = moments(p, 8, ctx);
  for (unsigned k = 0; k < 8; ++k) {
    const Real dk = central_diff1([&](const Real& s) { return moments(p.with_t(s), k, ctx).mu[k]; }, p.t, h);
    EXPECT_TRUE(RelClose(-dk, mv.mu[k + 1], tol10(-20))) << "k = " << k;
  }
}

TEST(Moments, ThirdMomentMatchesQuadrature) {
  const auto ctx = ctx60();
  const auto p = wp_of("0.5", "0.5", "2");
  const Real want = dec("-0.5809409711915390505782575410899261084247006714468803900812780646320057");
  EXPECT_TRUE(RelClose(mu_k(p, 3, ctx), want, tol10(-66)));
  EXPECT_TRUE(RelClose(moments_by_quadrature(p, 3, ctx)[3], want, tol10(-30)));
}

TEST(Moments, ClosedFormAgreesWithQuadratureAcrossExponents) {
  const auto ctx = ctx40();
  for (const char* a : {"-0.4", "0.5", "1.5"})
    for (const char* b : {"-0.4", "0.5", "1.5"})
      for (const char* t : {"-2", "0.5", "3"}) {
        const auto p = wp_of(a, b, t);
        const auto closed = moments(p, 10, ctx);
        const auto quad = moments_by_quadrature(p, 10, ctx);
        for (unsigned k = 0; k <= 10; ++k) {
          WorkingPrecision w(ctx.working_digits());
          // Odd moments can be small relative to mu_0; compare on the mu_0 scale.
          EXPECT_TRUE(Below(boost::multiprecision::abs(closed.mu[k] - quad[k]) / quad[0], tol10(-20)))
              << a << " " << b << " " << t << " k=" << k;
        }
      }
}

TEST(Moments, HankelSmallCases) {
  const auto ctx = ctx60();
  const auto p = wp_of("0.5", "1.5", "1");
  const auto mv = moments(p, 2, ctx);
  EXPECT_TRUE(RelClose(hankel_det(p, 1, ctx), mv.mu[0], tol10(-70)));
  WorkingPrecision wp(ctx.working_digits());
  EXPECT_TRUE(RelClose(hankel_det(p, 2, ctx), mv.mu[0] * mv.mu[2] - mv.mu[1] * mv.mu[1], tol10(-65)));
}

TEST(Moments, HankelReflection) {
  const auto ctx = ctx60();
  EXPECT_TRUE(RelClose(hankel_det(wp_of("0.3", "1.5", "1"), 4, ctx), hankel_det(wp_of("1.5", "0.3", "-1"), 4, ctx),
                       tol10(-30)));
}

TEST(Moments, HankelPositivity) {
  const auto ctx = PrecisionContext::with_digits(30);
  for (const char* a : {"-0.4", "0.5", "1.5"})
    for (const char* b : {"-0.4", "0.5", "1.5"})
      for (const char* t : {"0", "0.5", "-0.5", "2", "-2"}) {
        const auto p = wp_of(a, b, t);
        for (unsigned n = 1; n <= 12; n += 11) EXPECT_GT(hankel_det(p, n, ctx), 0) << a << b << t << n;
      }
}

TEST(Moments, InvalidParametersRejected) {
  const auto ctx = ctx60();
  EXPECT_THROW(mu0(wp_of("-1", "0", "0"), ctx), Error);
  EXPECT_THROW(mu0(wp_of("0", "-1.5", "0"), ctx), Error);
}
