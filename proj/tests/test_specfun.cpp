#include <pjl/numdiff.hpp>
#include <pjl/specfun.hpp>

#include <random>

#include "test_util.hpp"

using namespace pjl;
using namespace pjl::test;

namespace {

// Direct partial sums of the hypergeometric series, no transformation.
Real brute_kummer(const Real& a, const Real& b, const Real& z, unsigned terms) {
  Real sum = 0, term = 1;
  for (unsigned k = 0; k < terms; ++k) {
    sum += term;
    term *= (a + k) * z / ((b + k) * (k + 1));
  }
  return sum;
}

}  // namespace

TEST(Kummer, UnitAtZero) {
  const auto ctx = ctx60();
  EXPECT_EQ(kummer_m(dec("1.3"), dec("2.7"), Real(0), ctx), 1);
  EXPECT_EQ(kummer_m(dec("-4.5"), dec("0.25"), Real(0), ctx), 1);
}

TEST(Kummer, ExponentialCase) {
  const auto ctx = ctx60();
  WorkingPrecision wp(ctx.working_digits());
  const Real want = boost::multiprecision::exp(Real(1)) - 1;
  EXPECT_TRUE(RelClose(kummer_m(Real(1), Real(2), Real(1), ctx), want, tol10(-70)));
}

TEST(Kummer, AgreesWithBruteForceSeries) {
  const auto ctx = ctx60();
  WorkingPrecision wp(120);
  for (const char* z : {"0.7", "-0.7", "-3.2", "4.1"}) {
    const Real zz = dec(z, 120);
    EXPECT_TRUE(RelClose(kummer_m(dec("1.5"), dec("2.5"), zz, ctx), brute_kummer(dec("1.5", 120), dec("2.5", 120), zz, 400),
                         tol10(-65)))
        << "z = " << z;
  }
  EXPECT_TRUE(RelClose(kummer_m(dec("1.5"), dec("2.5"), dec("0.7"), ctx),
                       dec("1.547142982732951830663341160269262783772917831287046445104090552625337"), tol10(-65)));
}

TEST(Kummer, PoleInLowerParameterIsRejected) {
  const auto ctx = ctx60();
  for (int b : {0, -1, -7}) {
    try {
      kummer_m(Real(1), Real(b), Real(1), ctx);
      FAIL() << "expected PolarParameter for b = " << b;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::PolarParameter);
    }
  }
}

TEST(Kummer, DerivativeIdentityByFiniteDifferences) {
  const auto ctx = ctx60();
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> ua(-2.0, 3.0), ub(0.2, 4.0), uz(-3.0, 3.0);
  WorkingPrecision wp(ctx.working_digits());
  auto check = [&](const Real& a, const Real& b, const Real& z) {
    const Real h = fd_step_at(z, ctx);
    const Real fd = central_diff1([&](const Real& x) { return kummer_m(a, b, x, ctx); }, z, h);
    const Real exact = a / b * kummer_m(a + 1, b + 1, z, ctx);
    EXPECT_TRUE(RelClose(fd, exact, tol10(-20))) << "a=" << to_string(a) << " b=" << to_string(b) << " z=" << to_string(z);
  };
  check(dec("1.5"), dec("2.5"), dec("0.7"));
  for (int i = 0; i < 20; ++i) check(Real(ua(rng)), Real(ub(rng)), Real(uz(rng)));
}

TEST(Kummer, Deterministic) {
  const auto ctx = ctx60();
  const Real a = kummer_m(dec("0.3"), dec("1.9"), dec("-2.25"), ctx);
  const Real b = kummer_m(dec("0.3"), dec("1.9"), dec("-2.25"), ctx);
  EXPECT_EQ(a, b);
}

TEST(Bessel, ValuesAtZero) {
  const auto ctx = ctx60();
  EXPECT_EQ(bessel_j(0, Real(0), ctx), 1);
  EXPECT_EQ(bessel_j(3, Real(0), ctx), 0);
  EXPECT_EQ(bessel_i(0, Real(0), ctx), 1);
  EXPECT_EQ(bessel_i(2, Real(0), ctx), 0);
}

TEST(Bessel, SeriesOracleValues) {
  const auto ctx = ctx60();
  EXPECT_TRUE(RelClose(bessel_j(1, Real(1), ctx),
                       dec("0.4400505857449335159596822037189149131273723019927652511367581717801382"), tol10(-68)));
  EXPECT_TRUE(RelClose(bessel_i(1, Real(2), ctx),
                       dec("1.590636854637329063382254424999666247954478159495536647132287984608545"), tol10(-68)));
}

TEST(Bessel, SmallArgumentLeadingTerm) {
  const auto ctx = ctx60();
  WorkingPrecision wp(ctx.working_digits());
  const Real t = dec("1e-4");
  const Real lead = boost::multiprecision::pow(t / 2, 3) / 6;
  EXPECT_TRUE(RelClose(bessel_j(3, t, ctx) / lead, Real(1), tol10(-6)));
}

TEST(Bessel, BoundedAndPositiveProperties) {
  const auto ctx = ctx40();
  for (const char* ts : {"-9.5", "-3", "-0.4", "0.7", "2", "6.25", "10"}) {
    const Real t = dec(ts);
    for (unsigned k = 0; k <= 40; k += 3) EXPECT_LE(boost::multiprecision::abs(bessel_j(k, t, ctx)), 1) << ts;
    EXPECT_GE(bessel_i(0, t, ctx), 1) << ts;
  }
}

TEST(Bessel, LargeArgumentCancellationIsAbsorbed) {
  // J_0(10) by the ascending series cancels about four digits.
  const auto ctx = ctx40();
  EXPECT_TRUE(RelClose(bessel_j(0, Real(10), ctx), dec("-0.2459357644513483351977608624853287538296"),
                       tol10(-38)));
}

TEST(BarnesG, IntegerValues) {
  const auto ctx = ctx60();
  EXPECT_EQ(log_barnes_g(Real(1), ctx), 0);
  WorkingPrecision wp(ctx.working_digits());
  EXPECT_TRUE(RelClose(log_barnes_g(Real(4), ctx), boost::multiprecision::log(Real(2)), tol10(-70)));
  // G(6) = 1! 2! 3! 4! = 288
  EXPECT_TRUE(RelClose(log_barnes_g(Real(6), ctx), boost::multiprecision::log(Real(288)), tol10(-70)));
}

TEST(BarnesG, NonIntegerValues) {
  const auto ctx = ctx60();
  EXPECT_TRUE(RelClose(log_barnes_g(dec("0.5"), ctx),
                       dec("-0.5054330544896953827976849898083449517213991014666199327898275603418492"), tol10(-66)));
  EXPECT_TRUE(RelClose(log_barnes_g(dec("2.6"), ctx),
                       dec("-0.05418665050464804967277835464244350084615378623072699895133985266390542"), tol10(-64)));
}

TEST(BarnesG, FunctionalEquation) {
  const auto ctx = ctx60();
  WorkingPrecision wp(ctx.working_digits());
  for (const char* zs : {"2.6", "0.3", "1.5", "7.25"}) {
    const Real z = dec(zs);
    const Real res = log_barnes_g(z + 1, ctx) - log_gamma(z, ctx) - log_barnes_g(z, ctx);
    EXPECT_TRUE(Below(boost::multiprecision::abs(res), tol10(-55))) << zs;
  }
}

TEST(BarnesG, RejectsNonPositive) {
  const auto ctx = ctx60();
  EXPECT_THROW(log_barnes_g(Real(0), ctx), Error);
  EXPECT_THROW(log_barnes_g(dec("-1.5"), ctx), Error);
}

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(10, 0), 1);
  EXPECT_EQ(binomial(4, 5), 0);
  EXPECT_EQ(binomial(30, 15), 155117520);
  EXPECT_EQ(pochhammer(Real(3), 3), 60);
}

TEST(Precision, ContextInvariants) {
  EXPECT_THROW(PrecisionContext::with_digits(20), Error);
  auto ctx = ctx60();
  EXPECT_NO_THROW(ctx.validate());
  ctx.fd_step = dec("0.01");
  EXPECT_THROW(ctx.validate(), Error);
}
