// Acceptance suite: one PASS/FAIL line per criterion. Exit status 0 only
// when every criterion passes.

#include <pjl/cli.hpp>
#include <pjl/pjl.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

using namespace pjl;
using boost::multiprecision::abs;

namespace {

const PrecisionContext ctx = PrecisionContext::with_digits(60);
const std::vector<const char*> kSweepAB{"0.3", "0.5", "1.5"};
const std::vector<const char*> kSweepT{"0.5", "1", "2"};
constexpr unsigned kSweepN = 6;

Real dec(const char* s) {
  WorkingPrecision wp(ctx.working_digits());
  return real_from_string(s);
}

Real tenth_power(long e) {
  WorkingPrecision wp(ctx.working_digits());
  return pow10(e);
}

/// Largest gap seen, with where it happened.
struct Worst {
  Real value = 0;
  std::string where;
  void add(const Real& g, const std::string& w) {
    if (!(g <= value)) {
      value = g;
      where = w;
    }
  }
  bool below(const Real& tol) const { return is_finite(value) && value <= tol; }
  std::string str() const { return to_string(value, 2) + (where.empty() ? "" : " at " + where); }
};

std::string tag(const char* a, const char* b, const char* t, unsigned n) {
  return std::string("a=") + a + " b=" + b + " t=" + t + " n=" + std::to_string(n);
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = Outcome{false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f s", secs);
  std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << "  " << title << ": " << o.detail << " (" << buf << ")"
            << std::endl;
}

// alpha_n and beta_n recovered from r_n, R_n:
//   R_n = (2n+1+a+b-t-t alpha_n)/2,   beta_n R_n R_{n-1} = r_n^2 + a r_n.
Real alpha_from_R(const WeightParams& p, unsigned n, const Real& R) {
  return (2 * Real(n) + 1 + p.alpha + p.beta - p.t - 2 * R) / p.t;
}
Real beta_from_aux(const WeightParams& p, const Real& r, const Real& R, const Real& R_prev) {
  return (r * r + p.alpha * r) / (R * R_prev);
}

Outcome cross_route() {
  const auto start = std::chrono::steady_clock::now();
  Worst exact, ode;
  for (const char* a : kSweepAB)
    for (const char* b : kSweepAB)
      for (const char* ts : kSweepT) {
        const WeightParams p{dec(a), dec(b), dec(ts)};
        const RecurrenceTable tab = recurrence_from_moments(p, kSweepN, ctx);
        const AuxTable ax = aux_from_recurrence(tab, ctx);
        const AuxTable it = difference_iterate(p, kSweepN, ctx);
        const SeriesTable series = recurrence_from_toda_series(p, kSweepN, ctx);
        const RecurrenceTable& toda = series.table;
        const AuxTable toda_aux = aux_from_recurrence(toda, ctx);
        std::vector<AuxPair> quad;
        for (unsigned n = 0; n <= kSweepN; ++n) quad.push_back(aux_from_quadrature(p, n, ctx));
        WorkingPrecision wp(ctx.working_digits());
        for (unsigned n = 1; n <= kSweepN; ++n) {
          const std::string w = tag(a, b, ts, n);
          // (b) difference iteration and (c) quadrature against (a).
          exact.add(relative_gap(it.r[n], ax.r[n]), w + " r (b)");
          exact.add(relative_gap(it.R[n], ax.R[n]), w + " R (b)");
          exact.add(relative_gap(alpha_from_R(p, n, it.R[n]), tab.alpha[n]), w + " alpha (b)");
          exact.add(relative_gap(beta_from_aux(p, it.r[n], it.R[n], it.R[n - 1]), tab.beta[n]), w + " beta (b)");
          exact.add(relative_gap(quad[n].r, ax.r[n]), w + " r (c)");
          exact.add(relative_gap(quad[n].R, ax.R[n]), w + " R (c)");
          exact.add(relative_gap(alpha_from_R(p, n, quad[n].R), tab.alpha[n]), w + " alpha (c)");
          exact.add(relative_gap(beta_from_aux(p, quad[n].r, quad[n].R, quad[n - 1].R), tab.beta[n]), w + " beta (c)");
          // (d) Toda system solved by its power series from the exact t = 0
          // data, and the Riccati system integrated over [t/2, t].
          ode.add(relative_gap(toda.alpha[n], tab.alpha[n]), w + " alpha (d, Toda)");
          ode.add(relative_gap(toda.beta[n], tab.beta[n]), w + " beta (d, Toda)");
          ode.add(relative_gap(toda_aux.r[n], ax.r[n]), w + " r (d, Toda)");
          ode.add(relative_gap(toda_aux.R[n], ax.R[n]), w + " R (d, Toda)");
          const Real t0 = p.t / 2;
          const AuxTable seed = aux_from_recurrence(recurrence_from_moments(p.with_t(t0), n, ctx), ctx);
          const AuxPair ric = integrate_riccati(p, n, t0, p.t, AuxPair{seed.r[n], seed.R[n]}, ctx);
          ode.add(relative_gap(ric.r, ax.r[n]), w + " r (d, Riccati)");
          ode.add(relative_gap(ric.R, ax.R[n]), w + " R (d, Riccati)");
        }
      }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = exact.below(tenth_power(-10)) && ode.below(tenth_power(-7)) && secs < 120;
  return {ok, "routes (b),(c) vs (a) max rel " + exact.str() + " [tol 1e-10]; route (d) max rel " + ode.str() +
                  " [tol 1e-7]; runtime limit 120 s"};
}

Outcome closed_forms() {
  Worst w;
  for (const char* a : kSweepAB)
    for (const char* b : kSweepAB) {
      const WeightParams p{dec(a), dec(b), Real(0)};
      const RecurrenceTable tab = recurrence_from_moments(p, 10, ctx);
      const AuxTable ax = aux_from_recurrence(tab, ctx);
      WorkingPrecision wp(ctx.working_digits());
      for (unsigned n = 0; n <= 10; ++n) {
        const std::string where = tag(a, b, "0", n);
        // alpha_n vanishes identically when a = b, so it is compared on the
        // max(1, |.|) scale.
        w.add(scaled_difference(tab.alpha[n], JacobiClosedForms::alpha(p.alpha, p.beta, n)), where + " alpha");
        w.add(relative_gap(ax.R[n], JacobiClosedForms::R(p.alpha, p.beta, n)), where + " R");
        if (n >= 1) {
          w.add(relative_gap(tab.beta[n], JacobiClosedForms::beta(p.alpha, p.beta, n)), where + " beta");
          w.add(relative_gap(ax.r[n], JacobiClosedForms::r(p.alpha, p.beta, n)), where + " r");
        }
      }
    }
  return {w.below(tenth_power(-20)), "max gap " + w.str() + " [tol 1e-20, n <= 10]"};
}

Outcome painleve_suite() {
  Worst eq, ic;
  const Real tol = tenth_power(-5);
  for (const char* a : kSweepAB)
    for (const char* b : kSweepAB)
      for (unsigned n = 1; n <= kSweepN; ++n) {
        const WeightParams p0{dec(a), dec(b), Real(1)};
        const PVGridResult g = pv_residual(p0, n, dec("0.5"), Real(2), ctx);
        eq.add(g.max_scaled, tag(a, b, "[0.5,2]", n) + " P_V");
        for (const auto& r : initial_conditions(p0, n, ctx)) ic.add(r.scaled, tag(a, b, "0", n) + " " + r.name);
        for (const char* ts : kSweepT) {
          const WeightParams p{dec(a), dec(b), dec(ts)};
          const std::string w = tag(a, b, ts, n);
          eq.add(sigma_form_residual(p, n, p.t, ctx).scaled, w + " sigma-form");
          for (auto c : {HamiltonianCase::CaseI, HamiltonianCase::CaseII})
            for (const auto& r : hamiltonian_identity(p, n, c, ctx))
              if (r.name.find("printed") == std::string::npos) eq.add(r.scaled, w + " " + r.name);
          eq.add(discrete_sigma_residual(p, n, ctx).scaled, w + " discrete sigma");
          const auto d = deformed_ode_residual(p, n, {Real(0), dec("0.4"), dec("-0.6"), Real(3)}, ctx);
          eq.add(d[0].scaled, w + " " + d[0].name);
        }
      }
  const bool ok = eq.below(tol) && ic.below(tenth_power(-4));
  return {ok, "max scaled residual " + eq.str() + " [tol 1e-5]; initial conditions " + ic.str() + " [tol 1e-4]"};
}

Outcome dn_from_sigma() {
  Worst w;
  for (unsigned n = 1; n <= 4; ++n) {
    const auto d = dn_reconstruction(WeightParams{dec("0.5"), dec("0.5"), Real(1)}, n, ctx);
    w.add(d.relative, "n=" + std::to_string(n));
  }
  return {w.below(tenth_power(-6)), "max rel gap " + w.str() + " [tol 1e-6]"};
}

Outcome symbol_identities() {
  Worst transform, det;
  std::mt19937 gen(20240611);
  std::uniform_int_distribution<int> dist(-1000, 1000);
  for (int rep = 0; rep < 20; ++rep) {
    EvenSymbol a;
    WorkingPrecision wp(ctx.working_digits());
    for (int k = 0; k < 25; ++k) a.coeffs.push_back(Real(dist(gen)) / 1000);
    for (const auto& r : transform_check(a, 12, ctx)) transform.add(r.scaled, "seq " + std::to_string(rep) + " " + r.name);
  }
  for (const char* a : kSweepAB)
    for (const char* b : kSweepAB)
      for (const char* ts : {"0", "1"})
        for (int c = 1; c <= 4; ++c)
          for (unsigned n = 1; n <= kSweepN; ++n) {
            const auto r = det_identity(c, WeightParams{dec(a), dec(b), dec(ts)}, n, ctx);
            det.add(r.relative, tag(a, b, ts, n) + " case " + std::to_string(c));
          }
  const auto hand = det_identity(4, WeightParams{Real(0), Real(0), Real(0)}, 1, ctx);
  WorkingPrecision wp(ctx.working_digits());
  const Real want = 2 / pi_value();
  const Real hand_gap = max_abs_of({hand.lhs - want, hand.rhs - want}, Real(0));
  const Real rounding = tenth_power(-static_cast<long>(ctx.digits) + 10);
  const bool ok = transform.below(rounding) && det.below(tenth_power(-8)) && hand_gap <= rounding;
  return {ok, "transforms on 20 random 12x12 " + transform.str() + " [tol 1e-50]; determinants " + det.str() +
                  " [tol 1e-8]; case 4 hand value 2/pi gap " + to_string(hand_gap, 2) + " [tol 1e-50]"};
}

Outcome fredholm_identities() {
  Worst id, dev;
  for (int c = 1; c <= 4; ++c) {
    for (const char* ts : kSweepT)
      for (unsigned n = 1; n <= 5; ++n)
        id.add(identity_check(c, n, dec(ts), ctx).relative, "case " + std::to_string(c) + " t=" + ts + " n=" +
                                                                 std::to_string(n));
    const Real f = fredholm_det(c, Real(1), 6, ctx).value;
    WorkingPrecision wp(ctx.working_digits());
    dev.add(abs(f - 1), "case " + std::to_string(c));
  }
  const auto phi = phi_identity(2, Real(1), ctx);
  const bool ok = id.below(tenth_power(-8)) && dev.below(tenth_power(-4)) && phi[0].raw <= tenth_power(-6);
  return {ok, "identity gaps " + id.str() + " [tol 1e-8]; |det - 1| at n=6, t=1 " + dev.str() +
                  " [tol 1e-4]; phi residual " + to_string(phi[0].raw, 2) + " [tol 1e-6]"};
}

Outcome conjecture_probes() {
  // Only trend (i) is asserted. Tables (ii) and (iii) are printed as they come.
  bool trend = true;
  std::string detail;
  const std::vector<unsigned> n_list{1, 2, 3, 4, 5, 6};
  for (int c = 1; c <= 4; ++c) {
    const auto rows = leading_factor_probe(c, n_list, Real(1), ctx);
    const bool ok = trend_to_one(rows, tenth_power(-4));
    trend = trend && ok;
    WorkingPrecision wp(ctx.working_digits());
    detail += "case " + std::to_string(c) + " |ratio-1| n=6 " + to_string(abs(rows.back().ratio - 1), 2) +
              (ok ? " monotone; " : " NOT monotone; ");
  }
  const auto corr = correction_probe(1, {1, 2, 3, 4}, dec("0.5"), ctx);
  std::vector<unsigned> bn;
  for (unsigned n = 1; n <= 20; ++n) bn.push_back(n);
  const auto barnes = barnes_probe(dec("0.3"), dec("1.5"), bn, ctx);
  std::cout << "      report (ii) case 1, t=0.5: log det / ((t/2)^(2n+2)/Gamma(2n+3)):";
  for (const auto& r : corr) std::cout << " n=" << r.n << " " << to_string(r.ratio, 3);
  std::cout << "\n      report (iii) a=0.3 b=1.5: D_n(0) / large-n form:";
  for (const auto& r : barnes)
    if (r.n == 1 || r.n == 5 || r.n == 10 || r.n == 20) std::cout << " n=" << r.n << " " << to_string(r.ratio, 4);
  std::cout << std::endl;
  return {trend, detail + "tables (ii), (iii) reported, not asserted"};
}

Outcome properties() {
  bool positive = true;
  Worst reflection, derivative;
  std::string negative_at;
  for (const char* a : kSweepAB)
    for (const char* b : kSweepAB)
      for (const char* ts : kSweepT) {
        const WeightParams p{dec(a), dec(b), dec(ts)};
        const RecurrenceTable tab = recurrence_from_moments(p, kSweepN, ctx);
        for (unsigned n = 0; n <= kSweepN; ++n) {
          const std::string w = tag(a, b, ts, n);
          if (!(tab.h[n] > 0) || (n >= 1 && !(tab.beta[n] > 0))) {
            positive = false;
            negative_at = w;
          }
          if (n >= 1) {
            const Real d = hankel_det(p, n, ctx), dr = hankel_det(p.reflected(), n, ctx);
            if (!(d > 0)) {
              positive = false;
              negative_at = w + " D_n";
            }
            WorkingPrecision wp(ctx.working_digits());
            reflection.add(relative_gap(d, dr), w);
          }
        }
        const unsigned k_max = 2 * kSweepN;
        const MomentVector mv = moments(p, k_max + 1, ctx);
        WorkingPrecision wp(ctx.working_digits());
        const Real h = fd_step_at(p.t, ctx);
        std::vector<MomentVector> s;
        for (int j : {-2, -1, 1, 2}) s.push_back(moments(p.with_t(p.t + j * h), k_max, ctx));
        for (unsigned k = 0; k < k_max; ++k) {
          const Real d = stencil_d1(s[0].mu[k], s[1].mu[k], s[2].mu[k], s[3].mu[k], h);
          derivative.add(scaled_difference(d, -mv.mu[k + 1]), tag(a, b, ts, 0) + " k=" + std::to_string(k));
        }
      }
  // Determinism: two independent evaluations of the same report differ only
  // in the timestamp, which is left out here.
  cli::RunConfig cfg;
  cfg.command = cli::Command::Recurrence;
  cfg.alpha = "0.3";
  cfg.beta = "1.5";
  cfg.t = "2";
  cfg.n_max = 6;
  const bool deterministic = cli::to_json(cli::build_report(cfg), false) == cli::to_json(cli::build_report(cfg), false) &&
                             cli::to_csv(cli::build_report(cfg)) == cli::to_csv(cli::build_report(cfg));
  const Real tol = tenth_power(-static_cast<long>(ctx.digits) / 2);
  const bool ok = positive && reflection.below(tol) && derivative.below(tol) && deterministic;
  return {ok, std::string("positivity ") + (positive ? "holds" : "fails at " + negative_at) + "; reflection " +
                  reflection.str() + " [tol 1e-30]; mu_k' + mu_{k+1} " + derivative.str() + " [tol 1e-30]; output " +
                  (deterministic ? "deterministic" : "NOT deterministic")};
}

}  // namespace

int main() {
  std::cout << "acceptance at " << ctx.digits << " digits" << std::endl;
  criterion(1, "cross-route agreement", cross_route);
  criterion(2, "t = 0 closed forms", closed_forms);
  criterion(3, "Painleve suite", painleve_suite);
  criterion(4, "D_n from the sigma integral", dn_from_sigma);
  criterion(5, "Toeplitz + Hankel identities", symbol_identities);
  criterion(6, "Fredholm identities", fredholm_identities);
  criterion(7, "conjecture probes", conjecture_probes);
  criterion(8, "property suite", properties);
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
