#pragma once
// Toeplitz + Hankel structure of the Jacobi Hankel determinant.
//
// The moment Hankel H_n[b], b_k = (1/pi) int b(x) (2x)^k dx, agrees with
// Toeplitz + Hankel determinants of the even circle symbols
//   a(theta) = b(cos theta) (2+2cos theta)^e+ (2-2cos theta)^e-,
// e+- = -1/2 or +1/2 (four cases). The triangular transforms D_+-, R, S_#
// relating the four matrix families are finite banded products, so their
// leading-corner identities hold exactly at every truncation.

#include <pjl/linalg.hpp>
#include <pjl/moments.hpp>
#include <pjl/quadrature.hpp>
#include <pjl/residual.hpp>
#include <pjl/specfun.hpp>

#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

namespace pjl {

/// Exponents (e+, e-) of (2+2cos theta), (2-2cos theta) for cases 1..4.
struct SymbolExponents {
  Real e_plus;
  Real e_minus;
};

inline SymbolExponents symbol_exponents(int symbol_case) {
  switch (symbol_case) {
    case 1: return {Real(-0.5), Real(-0.5)};
    case 2: return {Real(-0.5), Real(0.5)};
    case 3: return {Real(0.5), Real(-0.5)};
    case 4: return {Real(0.5), Real(0.5)};
    default: throw Error(ErrorKind::InvalidArgument, "symbol case must be 1, 2, 3 or 4");
  }
}

/// Fourier coefficients a_0..a_k_max of an even symbol; a_{-k} = a_k.
struct EvenSymbol {
  int symbol_case = 0;  // 0 for a symbol given by values or coefficients
  WeightParams b;
  bool integrable = true;
  std::vector<Real> coeffs;

  std::size_t k_max() const { return coeffs.size() - 1; }

  const Real& at(long k) const {
    const std::size_t i = static_cast<std::size_t>(std::labs(k));
    if (i >= coeffs.size()) {
      throw Error(ErrorKind::InsufficientCoeffs, "Fourier coefficient index " + std::to_string(k) + " not available");
    }
    return coeffs[i];
  }
};

/// The case symbol is integrable iff 2a + 2e- > -1 and 2b + 2e+ > -1.
inline bool symbol_integrable(int symbol_case, const WeightParams& b) {
  const SymbolExponents e = symbol_exponents(symbol_case);
  return 2 * b.alpha + 2 * e.e_minus > -1 && 2 * b.beta + 2 * e.e_plus > -1;
}

/// a_k = (1/pi) int_0^pi a(theta) cos(k theta) d theta for a symbol given by
/// f(theta, pi - theta); both arguments are exact so endpoint factors
/// sin(theta/2), cos(theta/2) = sin((pi-theta)/2) keep full accuracy.
template <class F>
EvenSymbol fourier_coeffs_of(F&& f, unsigned k_max, const PrecisionContext& ctx) {
  using boost::multiprecision::cos;
  WorkingPrecision wp(ctx.working_digits());
  const Real half_pi = pi_value() / 2;
  auto r = tanh_sinh_vector(
      [&](const Real& x, const Real& omx, const Real& opx, std::vector<Real>& out) {
        const Real th = half_pi * opx;
        const Real v = f(th, half_pi * omx);
        const Real c = cos(th);
        // cos(k theta) by the Chebyshev recurrence.
        Real cm = 1, ck = c;
        out[0] = v;
        for (unsigned k = 1; k <= k_max; ++k) {
          out[k] = v * ck;
          const Real next = 2 * c * ck - cm;
          cm = ck;
          ck = next;
        }
        (void)x;
      },
      k_max + 1, ctx);
  EvenSymbol s;
  // d theta = (pi/2) dx and the 1/pi normalisation leave a factor 1/2.
  for (auto& v : r.value) s.coeffs.push_back(v / 2);
  return s;
}

/// Value of the case symbol at theta given theta and pi - theta.
inline Real case_symbol_value(int symbol_case, const WeightParams& b, const Real& th, const Real& th_c) {
  using boost::multiprecision::cos;
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  using boost::multiprecision::sin;
  const SymbolExponents e = symbol_exponents(symbol_case);
  // 1 - cos = 2 sin^2(theta/2), 1 + cos = 2 cos^2(theta/2),
  // 2 - 2cos = 4 sin^2(theta/2), 2 + 2cos = 4 cos^2(theta/2).
  const Real ls = log(sin(th / 2)), lc = log(sin(th_c / 2));
  const Real ln2 = log(Real(2));
  const Real l = (b.alpha + b.beta) * ln2 + 2 * (e.e_plus + e.e_minus) * ln2 + (2 * b.alpha + 2 * e.e_minus) * ls +
                 (2 * b.beta + 2 * e.e_plus) * lc - b.t * cos(th);
  return exp(l);
}

/// Fourier coefficients of the case symbol built on b(x) = (1-x)^a (1+x)^b e^(-tx).
inline EvenSymbol fourier_coeffs(int symbol_case, const WeightParams& b, unsigned k_max, const PrecisionContext& ctx) {
  if (!symbol_integrable(symbol_case, b)) {
    throw Error(ErrorKind::NotIntegrable, "case " + std::to_string(symbol_case) + " symbol is not integrable");
  }
  WorkingPrecision wp(ctx.working_digits());
  const WeightParams lb{lift(b.alpha), lift(b.beta), lift(b.t)};
  EvenSymbol s = fourier_coeffs_of(
      [&](const Real& th, const Real& th_c) { return case_symbol_value(symbol_case, lb, th, th_c); }, k_max, ctx);
  s.symbol_case = symbol_case;
  s.b = b;
  return s;
}

/// T_n(a) = (a_{j-k}), H_n(a) = (a_{j+k+1}), H_n(z a) = (a_{j+k}), H_n(z^-1 a) = (a_{j+k+2}).
struct SymbolMatrices {
  DenseMatrix toeplitz;
  DenseMatrix hankel;
  DenseMatrix hankel_za;
  DenseMatrix hankel_zinv_a;
};

inline SymbolMatrices build_matrices(const EvenSymbol& sym, unsigned n) {
  if (sym.coeffs.size() < 2 * static_cast<std::size_t>(n) + 1) {
    throw Error(ErrorKind::InsufficientCoeffs, "build_matrices needs a_k for k <= 2n");
  }
  SymbolMatrices m{DenseMatrix(n, n), DenseMatrix(n, n), DenseMatrix(n, n), DenseMatrix(n, n)};
  for (long j = 0; j < static_cast<long>(n); ++j)
    for (long k = 0; k < static_cast<long>(n); ++k) {
      m.toeplitz(j, k) = sym.at(j - k);
      m.hankel(j, k) = sym.at(j + k + 1);
      m.hankel_za(j, k) = sym.at(j + k);
      m.hankel_zinv_a(j, k) = sym.at(j + k + 2);
    }
  return m;
}

/// H_n[b] = (b_{j+k}), b_k = (1/pi) int_{-1}^{1} f(x) (2x)^k dx, for f given
/// as f(x, 1-x, 1+x).
template <class F>
DenseMatrix moment_hankel_of(F&& f, unsigned n, const PrecisionContext& ctx) {
  WorkingPrecision wp(ctx.working_digits());
  const unsigned k_max = n == 0 ? 0 : 2 * n - 2;
  auto r = tanh_sinh_vector(
      [&](const Real& x, const Real& omx, const Real& opx, std::vector<Real>& out) {
        Real w = f(x, omx, opx);
        for (unsigned k = 0; k <= k_max; ++k) {
          out[k] = w;
          w *= 2 * x;
        }
      },
      k_max + 1, ctx);
  const Real inv_pi = 1 / pi_value();
  DenseMatrix h(n, n);
  for (unsigned j = 0; j < n; ++j)
    for (unsigned k = 0; k < n; ++k) h(j, k) = r.value[j + k] * inv_pi;
  return h;
}

inline DenseMatrix moment_hankel(const WeightParams& b, unsigned n, const PrecisionContext& ctx) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  b.validate();
  WorkingPrecision wp(ctx.working_digits());
  const Real a = lift(b.alpha), bb = lift(b.beta), t = lift(b.t);
  return moment_hankel_of(
      [&](const Real& x, const Real& omx, const Real& opx) { return exp(a * log(omx) + bb * log(opx) - t * x); }, n,
      ctx);
}

// ---------------------------------------------------------------------------
// Transforms between the four coefficient families.

/// a+_k = 2a_k - a_{k-1} - a_{k+1}, the coefficients of (2 - 2cos theta) a.
inline EvenSymbol plus_transform(const EvenSymbol& a) {
  EvenSymbol out;
  for (long k = 0; k + 1 < static_cast<long>(a.coeffs.size()); ++k)
    out.coeffs.push_back(2 * a.at(k) - a.at(k - 1) - a.at(k + 1));
  return out;
}

/// a-_k = 2a_k + a_{k-1} + a_{k+1}, the coefficients of (2 + 2cos theta) a.
inline EvenSymbol minus_transform(const EvenSymbol& a) {
  EvenSymbol out;
  for (long k = 0; k + 1 < static_cast<long>(a.coeffs.size()); ++k)
    out.coeffs.push_back(2 * a.at(k) + a.at(k - 1) + a.at(k + 1));
  return out;
}

/// a#_k = 2a_k - a_{k-2} - a_{k+2}, the coefficients of (4 - 4cos^2 theta) a.
inline EvenSymbol sharp_transform(const EvenSymbol& a) {
  EvenSymbol out;
  for (long k = 0; k + 2 < static_cast<long>(a.coeffs.size()); ++k)
    out.coeffs.push_back(2 * a.at(k) - a.at(k - 2) - a.at(k + 2));
  return out;
}

/// b_m = (1/2) sum_k C(m,k) a#_{m-2k}, m = 0..m_max.
inline std::vector<Real> b_from_sharp(const EvenSymbol& sharp, unsigned m_max) {
  std::vector<Real> b;
  for (long m = 0; m <= static_cast<long>(m_max); ++m) {
    Real s = 0;
    for (long k = 0; k <= m; ++k) s += binomial(m, k) * sharp.at(m - 2 * k);
    b.push_back(s / 2);
  }
  return b;
}

/// Inverse of b_from_sharp: a#_0 = 2 b_0 and, for m >= 1,
///   a#_m = sum_{k <= m/2} (-1)^k b_{m-2k} (C(m-k,k) + C(m-k-1,k-1)).
inline std::vector<Real> sharp_from_b(const std::vector<Real>& b) {
  std::vector<Real> a;
  for (long m = 0; m < static_cast<long>(b.size()); ++m) {
    if (m == 0) {
      a.push_back(2 * b[0]);
      continue;
    }
    Real s = 0;
    for (long k = 0; 2 * k <= m; ++k) {
      const Real c = binomial(m - k, k) + binomial(m - k - 1, k - 1);
      s += k % 2 == 0 ? b[m - 2 * k] * c : -b[m - 2 * k] * c;
    }
    a.push_back(s);
  }
  return a;
}

/// Lower bidiagonal D_+ (1 on the diagonal, -1 below) and D_- (+1, +1).
inline DenseMatrix d_plus(unsigned n) {
  DenseMatrix d = DenseMatrix::identity(n);
  for (unsigned i = 1; i < n; ++i) d(i, i - 1) = -1;
  return d;
}

inline DenseMatrix d_minus(unsigned n) {
  DenseMatrix d = DenseMatrix::identity(n);
  for (unsigned i = 1; i < n; ++i) d(i, i - 1) = 1;
  return d;
}

/// R = diag(1/2, 1, 1, ...).
inline DenseMatrix r_matrix(unsigned n) {
  DenseMatrix r = DenseMatrix::identity(n);
  if (n > 0) r(0, 0) = Real(1) / 2;
  return r;
}

/// S_# with entries C(i, (i-j)/2) for i >= j, i - j even.
inline DenseMatrix s_sharp(unsigned n) {
  DenseMatrix s(n, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i % 2; j <= i; j += 2) s(i, j) = binomial(i, (i - j) / 2);
  return s;
}

/// A = (a_{j-k} - a_{j+k+2}), A+ = (a+_{j-k} + a+_{j+k+1}),
/// A- = (a-_{j-k} - a-_{j+k+1}), A# = (a#_{j-k} + a#_{j+k}).
inline DenseMatrix family_matrix(const EvenSymbol& a, unsigned n, long shift, int sign) {
  DenseMatrix m(n, n);
  for (long j = 0; j < static_cast<long>(n); ++j)
    for (long k = 0; k < static_cast<long>(n); ++k)
      m(j, k) = sign > 0 ? a.at(j - k) + a.at(j + k + shift) : a.at(j - k) - a.at(j + k + shift);
  return m;
}

inline Residual matrix_residual(std::string name, const DenseMatrix& lhs, const DenseMatrix& rhs) {
  Residual r;
  r.name = std::move(name);
  r.raw = max_abs_difference(lhs, rhs);
  r.lhs = max_abs_entry(lhs);
  r.rhs = max_abs_entry(rhs);
  r.scaled = r.raw / max_abs_of({r.lhs, r.rhs});
  return r;
}

/// Entrywise checks of the transform identities on n_trunc x n_trunc
/// leading corners, given a_0..a_K with K >= 2 n_trunc (the largest index
/// entering A):
///   D+ A D+^T = A+,  D- A D-^T = A-,  D- A+ D-^T = D+ A- D+^T = D A D^T = R A# R,
///   B = S# R A# R S#^T = S+ A+ S+^T = S- A- S-^T = S A S^T,
/// with B = (b_{j+k}), S+ = S# D-, S- = S# D+, S = S# D+ D-, the scalar forms
///   b_m = sum_k C(m,k)(a+_{m-2k} + a+_{m-2k+1})
///       = sum_k C(m,k)(a-_{m-2k} - a-_{m-2k+1})
///       = sum_k C(m,k)(a_{m-2k} - a_{m-2k+2}),
/// and the round trip b -> a# -> b.
inline std::vector<Residual> transform_check(const EvenSymbol& a, unsigned n_trunc, const PrecisionContext& ctx) {
  if (n_trunc < 1) throw Error(ErrorKind::InvalidArgument, "transform_check needs n_trunc >= 1");
  if (a.coeffs.size() < 2 * static_cast<std::size_t>(n_trunc) + 1) {
    throw Error(ErrorKind::InsufficientCoeffs, "transform_check needs a_k for k <= 2 n_trunc");
  }
  WorkingPrecision wp(ctx.working_digits());
  EvenSymbol al;
  for (const Real& c : a.coeffs) al.coeffs.push_back(lift(c));
  const unsigned n = n_trunc;
  const EvenSymbol ap = plus_transform(al), am = minus_transform(al), as = sharp_transform(al);
  const DenseMatrix A = family_matrix(al, n, 2, -1);
  const DenseMatrix Ap = family_matrix(ap, n, 1, +1);
  const DenseMatrix Am = family_matrix(am, n, 1, -1);
  const DenseMatrix As = family_matrix(as, n, 0, +1);
  const DenseMatrix Dp = d_plus(n), Dm = d_minus(n), D = Dp * Dm, R = r_matrix(n), Ss = s_sharp(n);
  const DenseMatrix RAsR = R * As * R;
  const auto bvals = b_from_sharp(as, 2 * n - 2);
  DenseMatrix B(n, n);
  for (unsigned j = 0; j < n; ++j)
    for (unsigned k = 0; k < n; ++k) B(j, k) = bvals[j + k];
  auto sandwich = [](const DenseMatrix& L, const DenseMatrix& M) { return L * M * L.transpose(); };
  std::vector<Residual> out;
  out.push_back(matrix_residual("D+ A D+^T = A+", sandwich(Dp, A), Ap));
  out.push_back(matrix_residual("D- A D-^T = A-", sandwich(Dm, A), Am));
  out.push_back(matrix_residual("D- A+ D-^T = R A# R", sandwich(Dm, Ap), RAsR));
  out.push_back(matrix_residual("D+ A- D+^T = R A# R", sandwich(Dp, Am), RAsR));
  out.push_back(matrix_residual("D A D^T = R A# R", sandwich(D, A), RAsR));
  out.push_back(matrix_residual("B = S# R A# R S#^T", sandwich(Ss, RAsR), B));
  out.push_back(matrix_residual("B = S+ A+ S+^T", sandwich(Ss * Dm, Ap), B));
  out.push_back(matrix_residual("B = S- A- S-^T", sandwich(Ss * Dp, Am), B));
  out.push_back(matrix_residual("B = S A S^T", sandwich(Ss * D, A), B));

  Real raw1 = 0, raw2 = 0, raw3 = 0, scale = 1;
  for (long m = 0; m <= static_cast<long>(2 * n - 2); ++m) {
    Real f1 = 0, f2 = 0, f3 = 0;
    for (long k = 0; k <= m; ++k) {
      const Real c = binomial(m, k);
      f1 += c * (ap.at(m - 2 * k) + ap.at(m - 2 * k + 1));
      f2 += c * (am.at(m - 2 * k) - am.at(m - 2 * k + 1));
      f3 += c * (al.at(m - 2 * k) - al.at(m - 2 * k + 2));
    }
    using boost::multiprecision::abs;
    raw1 = std::max(raw1, Real(abs(f1 - bvals[m])));
    raw2 = std::max(raw2, Real(abs(f2 - bvals[m])));
    raw3 = std::max(raw3, Real(abs(f3 - bvals[m])));
    scale = max_abs_of({scale, bvals[m]});
  }
  out.push_back(Residual{"b from a+", Real(0), Real(0), raw1, raw1 / scale});
  out.push_back(Residual{"b from a-", Real(0), Real(0), raw2, raw2 / scale});
  out.push_back(Residual{"b from a", Real(0), Real(0), raw3, raw3 / scale});

  const auto back = sharp_from_b(bvals);
  Real raw = 0;
  for (std::size_t m = 0; m < back.size(); ++m) raw = std::max(raw, Real(boost::multiprecision::abs(back[m] - as.at(m))));
  out.push_back(Residual{"a# from b round trip", Real(0), Real(0), raw, raw / scale});
  return out;
}

struct DetIdentity {
  int symbol_case = 0;
  unsigned n = 0;
  Real lhs;  // det H_n[b]
  Real rhs;  // Toeplitz + Hankel form of the case
  Real relative;
};

/// Right hand side of the case identity from Fourier coefficients:
///   1: det(a_{j-k} - a_{j+k+2})     2: det(a_{j-k} + a_{j+k+1})
///   3: det(a_{j-k} - a_{j+k+1})     4: (1/4) det(a_{j-k} + a_{j+k})
inline Real toeplitz_hankel_det(const EvenSymbol& sym, int symbol_case, unsigned n) {
  if (n == 0) return Real(1);
  switch (symbol_case) {
    case 1: return determinant(family_matrix(sym, n, 2, -1));
    case 2: return determinant(family_matrix(sym, n, 1, +1));
    case 3: return determinant(family_matrix(sym, n, 1, -1));
    case 4: return determinant(family_matrix(sym, n, 0, +1)) / 4;
    default: throw Error(ErrorKind::InvalidArgument, "symbol case must be 1, 2, 3 or 4");
  }
}

/// det H_n[b] against the Toeplitz + Hankel determinant of the case symbol.
/// Entries of both sides are computed with hankel_extra_digits(n) more
/// digits, as for the moment Hankel determinants.
inline DetIdentity det_identity(int symbol_case, const WeightParams& b, unsigned n, const PrecisionContext& ctx) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "det_identity needs n >= 1");
  const PrecisionContext hi = ctx.escalated(hankel_extra_digits(n));
  const EvenSymbol sym = fourier_coeffs(symbol_case, b, 2 * n + 2, hi);
  const DenseMatrix H = moment_hankel(b, n, hi);
  WorkingPrecision wp(hi.working_digits());
  DetIdentity out;
  out.symbol_case = symbol_case;
  out.n = n;
  out.lhs = rounded(determinant(H), ctx.working_digits());
  out.rhs = rounded(toeplitz_hankel_det(sym, symbol_case, n), ctx.working_digits());
  WorkingPrecision wp2(ctx.working_digits());
  out.relative = relative_gap(out.lhs, out.rhs);
  return out;
}

/// det(T_n(a+) + H_n(a+)) against det(T_n(a-) - H_n(a-)) for symbols with
/// a+(theta)(2+2cos theta) = a-(theta)(2-2cos theta).
struct CrossDet {
  Real plus_det;
  Real minus_det;
  Real gap;  // relative, or absolute when both vanish
};

inline CrossDet cross_det_identity(const EvenSymbol& aplus, const EvenSymbol& aminus, unsigned n,
                                   const PrecisionContext& ctx) {
  using boost::multiprecision::abs;
  WorkingPrecision wp(ctx.working_digits());
  CrossDet out;
  out.plus_det = n == 0 ? Real(1) : determinant(family_matrix(aplus, n, 1, +1));
  out.minus_det = n == 0 ? Real(1) : determinant(family_matrix(aminus, n, 1, -1));
  const Real scale = max_abs_of({out.plus_det, out.minus_det}, Real(0));
  out.gap = scale == 0 ? Real(0) : abs(out.plus_det - out.minus_det) / scale;
  return out;
}

}  // namespace pjl
