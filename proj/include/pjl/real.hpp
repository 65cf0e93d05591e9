#pragma once
// Working-precision scalar type, precision context and error type shared by
// every module.

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pjl {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

enum class ErrorKind {
  PolarParameter,
  NonConvergence,
  DomainError,
  SingularMatrix,
  PrecisionLoss,
  IndexOutOfRange,
  StepFailure,
  IterationBreakdown,
  SingularityHit,
  DivisionByZero,
  NotIntegrable,
  InsufficientCoeffs,
  InvalidArgument,
  UsageError,
  IoError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PolarParameter: return "PolarParameter";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::PrecisionLoss: return "PrecisionLoss";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::IterationBreakdown: return "IterationBreakdown";
    case ErrorKind::SingularityHit: return "SingularityHit";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotIntegrable: return "NotIntegrable";
    case ErrorKind::InsufficientCoeffs: return "InsufficientCoeffs";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Sets the MPFR default precision (decimal digits) for the lifetime of the
/// guard. Every value created while the guard is alive, including all
/// arithmetic results, carries this precision.
class WorkingPrecision {
 public:
  explicit WorkingPrecision(unsigned digits) : saved_(Real::default_precision()) {
    Real::default_precision(digits);
  }
  ~WorkingPrecision() { Real::default_precision(saved_); }
  WorkingPrecision(const WorkingPrecision&) = delete;
  WorkingPrecision& operator=(const WorkingPrecision&) = delete;

 private:
  unsigned saved_;
};

inline Real pow10(long e) {
  return boost::multiprecision::pow(Real(10), Real(e));
}

/// Parses a decimal literal at the current default precision. Avoids the
/// binary rounding a double literal such as 0.3 would carry.
inline Real real_from_string(const std::string& s) {
  Real r;
  r = Real(s);
  return r;
}

inline std::string to_string(const Real& x, unsigned digits = 20) {
  std::ostringstream os;
  os << std::setprecision(static_cast<int>(digits)) << std::scientific << x;
  return os.str();
}

inline bool is_finite(const Real& x) { return boost::multiprecision::isfinite(x); }

inline const Real& require_finite(const Real& x, std::string_view what) {
  if (!is_finite(x)) {
    throw Error(ErrorKind::NonConvergence, std::string(what) + " produced a non-finite value");
  }
  return x;
}

/// Relative gap |a/b - 1|, or |a - b| when b vanishes.
/// Largest of the absolute values, and at least `floor`.
inline Real max_abs_of(std::initializer_list<Real> xs, const Real& floor = Real(1)) {
  Real m = floor;
  for (const Real& x : xs) {
    const Real a = boost::multiprecision::abs(x);
    if (a > m) m = a;
  }
  return m;
}

inline Real relative_gap(const Real& a, const Real& b) {
  using boost::multiprecision::abs;
  if (b == 0) return abs(a - b);
  return abs(a / b - 1);
}

/// |a - b| / max(1, |a|, |b|): the scaling used for every reported residual.
inline Real scaled_difference(const Real& a, const Real& b) {
  using boost::multiprecision::abs;
  Real scale = 1;
  if (abs(a) > scale) scale = abs(a);
  if (abs(b) > scale) scale = abs(b);
  return abs(a - b) / scale;
}

/// Working precision, tolerances and truncation orders.
///
/// Invariants: digits >= 30, series_tol <= 10^(-digits/2), fd_step in (0, 1e-3].
struct PrecisionContext {
  unsigned digits = 60;
  /// Extra digits carried internally on top of `digits`.
  unsigned guard_digits = 15;
  Real series_tol;
  unsigned quad_levels = 14;
  Real fd_step;

  static PrecisionContext with_digits(unsigned d) {
    PrecisionContext ctx;
    ctx.digits = d;
    WorkingPrecision wp(d + ctx.guard_digits);
    ctx.series_tol = pow10(-static_cast<long>(d) - 5);
    ctx.fd_step = pow10(-static_cast<long>(d) / 5);
    ctx.validate();
    return ctx;
  }

  unsigned working_digits() const { return digits + guard_digits; }

  /// Same tolerances, more working digits. Used where conditioning eats
  /// precision (Hankel matrices, unstable recurrences).
  PrecisionContext escalated(unsigned extra_digits) const {
    PrecisionContext c = *this;
    c.guard_digits += extra_digits;
    return c;
  }

  void validate() const {
    if (digits < 30) throw Error(ErrorKind::InvalidArgument, "digits must be >= 30");
    WorkingPrecision wp(working_digits());
    if (!(series_tol > 0) || series_tol > pow10(-static_cast<long>(digits) / 2)) {
      throw Error(ErrorKind::InvalidArgument, "series_tol must lie in (0, 10^(-digits/2)]");
    }
    if (!(fd_step > 0) || fd_step > Real("1e-3")) {
      throw Error(ErrorKind::InvalidArgument, "fd_step must lie in (0, 1e-3]");
    }
    if (quad_levels == 0) throw Error(ErrorKind::InvalidArgument, "quad_levels must be positive");
  }
};

/// Copy of x carried at the current default precision.
inline Real lift(const Real& x) {
  Real r;
  mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

/// Copy of x rounded to `digits10` decimal digits.
inline Real rounded(const Real& x, unsigned digits10) {
  Real r = x;
  mpfr_prec_round(r.backend().data(),
                  static_cast<mpfr_prec_t>(boost::multiprecision::detail::digits10_2_2(digits10)),
                  MPFR_RNDN);
  return r;
}

// Thin wrappers over MPFR primitives, evaluated at the current default
// precision.
inline Real pi_value() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

inline Real euler_gamma() {
  Real r;
  mpfr_const_euler(r.backend().data(), MPFR_RNDN);
  return r;
}

inline Real zeta_at(unsigned long k) {
  Real r;
  mpfr_zeta_ui(r.backend().data(), k, MPFR_RNDN);
  return r;
}

/// log Gamma(x) for x > 0.
inline Real log_gamma_positive(const Real& x) {
  Real r;
  mpfr_lngamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

}  // namespace pjl
