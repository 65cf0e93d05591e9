#pragma once
// Named identity residuals shared by the verification routines and the CLI.

#include <pjl/real.hpp>

#include <string>
#include <vector>

namespace pjl {

/// One checked identity lhs = rhs. `raw` is |lhs - rhs|, `scaled` is
/// |lhs - rhs| / max(1, |lhs|, |rhs|).
struct Residual {
  std::string name;
  Real lhs;
  Real rhs;
  Real raw;
  Real scaled;
};

inline Residual make_residual(std::string name, const Real& lhs, const Real& rhs) {
  using boost::multiprecision::abs;
  return Residual{std::move(name), lhs, rhs, abs(lhs - rhs), scaled_difference(lhs, rhs)};
}

inline Real max_scaled(const std::vector<Residual>& rs) {
  Real m = 0;
  for (const auto& r : rs)
    if (r.scaled > m) m = r.scaled;
  return m;
}

inline Real max_raw(const std::vector<Residual>& rs) {
  Real m = 0;
  for (const auto& r : rs)
    if (r.raw > m) m = r.raw;
  return m;
}

}  // namespace pjl
