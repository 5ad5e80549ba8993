// Acceptance gate: one pass/fail line per criterion, exit 0 only if all pass.
// Tolerances are pinned here and are not configurable.

#include "qonsager/sampling.hpp"
#include "qonsager/transfer.hpp"
#include "qonsager/verification.hpp"
#include "qonsager/yang_baxter.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

using namespace qonsager;

namespace {

constexpr std::uint64_t kSeed = 20260815ULL;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

BoundaryParams sample_boundary(Sampler& s) {
  for (;;) {
    BoundaryParams bp;
    bp.eps_plus = s.on_annulus(0.7, 1.4);
    bp.eps_minus = s.on_annulus(0.7, 1.4);
    bp.k_plus = s.on_annulus(0.7, 1.4);
    bp.k_minus = s.on_annulus(0.7, 1.4);
    bp.kappa = s.on_annulus(0.7, 1.4);
    bp.kappa_star = s.on_annulus(0.7, 1.4);
    bp.kappa_plus = s.on_annulus(0.7, 1.4);
    bp.kappa_minus = s.on_annulus(0.7, 1.4);
    if (std::abs(bp.eps_plus + bp.eps_minus) >= 0.2 &&
        std::abs(bp.kappa + bp.kappa_star) >= 0.2)
      return bp;
  }
}

ModelParams sample_params(Sampler& s, int n, bool homogeneous = false) {
  ModelParams mp;
  mp.q = s.generic_q(0.7, 1.4);
  mp.n_sites = n;
  for (int i = 0; i < n; ++i) {
    mp.t.push_back(s.unimodular());
    mp.v.push_back(homogeneous ? Complex(1, 0) : s.generic_u(0.7, 1.4));
  }
  mp.bp = sample_boundary(s);
  return mp;
}

struct Gate {
  int index = 0;
  int passed = 0;
  int failed = 0;

  void report(const std::string& name, bool ok, const std::string& detail) {
    ++index;
    ok ? ++passed : ++failed;
    std::printf("[%d/9] %s  %s (%s)\n", index, ok ? "PASS" : "FAIL", name.c_str(),
                detail.c_str());
    std::fflush(stdout);
  }
};

std::string res_str(double r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "max residual %.3e", r);
  return buf;
}

}  // namespace

int main() {
  Gate gate;

  // 1. Yang-Baxter equation, 100 random points, within one second. ----------
  {
    Sampler s(Sampler::sub_seed(kSeed, "acceptance-ybe"));
    const double t0 = now_seconds();
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
      const Complex q = s.generic_q(0.7, 1.4);
      const Complex t = s.unimodular();
      worst = std::max(worst, check_ybe(q, t, s.generic_u(0.7, 1.4), s.generic_u(0.7, 1.4),
                                        s.generic_u(0.7, 1.4)));
    }
    const double dt = now_seconds() - t0;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%s, %.2fs", res_str(worst).c_str(), dt);
    gate.report("yang-baxter over 100 samples, tol 1e-10", worst <= 1e-10 && dt < 1.0, detail);
  }

  // 2. Unitarity and the crossing-type relation; diagonal conjugator must fail.
  {
    Sampler s(Sampler::sub_seed(kSeed, "acceptance-unitarity"));
    double worst = 0, control_min = 1e300;
    CMatrix bad = CMatrix::Zero(2, 2);
    bad(0, 0) = 1;
    bad(1, 1) = 2;
    for (int i = 0; i < 50; ++i) {
      const Complex q = s.generic_q(0.7, 1.4);
      const Complex t = s.unimodular();
      const Complex u = s.generic_u(0.7, 1.4);
      worst = std::max(worst, check_unitarity(q, t, u));
      worst = std::max(worst, check_m_relation(q, t, u));
      control_min = std::min(control_min, check_m_relation_with(q, t, u, bad));
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "%s, negative control min %.3e",
                  res_str(worst).c_str(), control_min);
    gate.report("unitarity and crossing relation, tol 1e-10; diag(1,2) control",
                worst <= 1e-10 && control_min > 1e-3, detail);
  }

  // 3. Exchange algebra: relations, central values, Lax inverse. ------------
  {
    Sampler s(Sampler::sub_seed(kSeed, "acceptance-algebra"));
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
      const Complex q = s.generic_q(0.7, 1.4);
      const Complex t = s.unimodular();
      const SklyaninRep rep = spin_half_rep(q, t);
      worst = std::max(worst, max_residual(check_unetsa(rep)));
      worst = std::max(worst, max_residual(check_tdef_etsa(rep).corrected));
      worst = std::max(worst, max_residual(check_factorization(rep)));
      const CasimirSet cs = casimirs(rep);
      const Complex qh = std::sqrt(q);
      worst = std::max(
          {worst, std::abs(cs.w_plus - 1.0 / qh), std::abs(cs.w_minus - qh),
           std::abs(cs.w01 + 1.0), std::abs(cs.w02 + 1.0), std::abs(cs.w - (q + 1.0 / q))});
      worst = std::max(worst, check_lax_inverse(s.generic_u(0.7, 1.4), rep));
    }
    gate.report("exchange algebra, central values, Lax inverse over 100 samples, tol 1e-12",
                worst <= 1e-12, res_str(worst));
  }

  // 4. Scalar boundary matrices: direct and dual reflection, components. ----
  {
    Sampler s(Sampler::sub_seed(kSeed, "acceptance-reflection"));
    double worst_re = 0, worst_sixteen = 0, worst_tind = 0;
    for (int i = 0; i < 25; ++i) {
      const ModelParams mp = sample_params(s, 1);
      const Complex u = s.generic_u(0.7, 1.4), v = s.generic_u(0.7, 1.4);
      KBuilder kb = [mp](Complex x) {
        return AuxOperator::from_scalar_matrix(build_kminus_c(x, mp), 0);
      };
      const double r1 = check_reflection(kb, mp.q, s.unimodular(), u, v).canonical;
      const double r2 = check_reflection(kb, mp.q, s.unimodular(), u, v).canonical;
      worst_re = std::max(worst_re, r1);
      worst_tind = std::max(worst_tind, std::abs(r1 - r2));
      worst_re = std::max(
          worst_re,
          check_dual_reflection(dualize(kb, mp.q), mp.q, s.unimodular(), u, v).canonical);
      const SixteenResult sx = check_sixteen(mp, u, v, 1e-12);
      for (double r : sx.matrix_derived) worst_sixteen = std::max(worst_sixteen, r);
    }
    char detail[192];
    std::snprintf(detail, sizeof(detail),
                  "reflection %.3e, components %.3e, twist-independence %.3e", worst_re,
                  worst_sixteen, worst_tind);
    gate.report("boundary matrices: reflection 1e-10, components 1e-12, independence 1e-12",
                worst_re <= 1e-10 && worst_sixteen <= 1e-12 && worst_tind <= 1e-12, detail);
  }

  // 5. Lax dressing preserves the reflection equation, sizes one to five. ---
  {
    Sampler s(Sampler::sub_seed(kSeed, "acceptance-dressing"));
    const double t0 = now_seconds();
    double worst = 0, worst_blocks = 0;
    for (int n = 1; n <= 5; ++n)
      for (int i = 0; i < 20; ++i) {
        const ModelParams mp = sample_params(s, n);
        const double r = check_reflection(dress(n, mp).builder(), mp.q, s.unimodular(),
                                          s.generic_u(0.7, 1.4), s.generic_u(0.7, 1.4))
                             .canonical;
        worst = std::max(worst, r);
      }
    for (int i = 0; i < 10; ++i) {
      const ModelParams mp = sample_params(s, 1);
      const GeneratorFamily fam = build_family(mp, 1, 1);
      const CoefficientTower tw = coefficient_tower(mp, 1);
      worst_blocks =
          std::max(worst_blocks, check_dressed_blocks(fam, tw, mp, s.generic_u(0.7, 1.4)).max());
    }
    const double dt = now_seconds() - t0;
    char detail[160];
    std::snprintf(detail, sizeof(detail), "reflection %.3e, one-site blocks %.3e, %.1fs",
                  worst, worst_blocks, dt);
    gate.report("dressed reflection sizes 1..5 tol 1e-9, one-site blocks 1e-10",
                worst <= 1e-9 && worst_blocks <= 1e-10 && dt < 120.0, detail);
  }

  // 6. Boundary symmetry algebra: quadratic, cubic, and tower relations. ----
  {
    Sampler s(Sampler::sub_seed(kSeed, "acceptance-symmetry"));
    double worst_aw = 0, worst_cubic = 0, worst_rel = 0;
    for (int i = 0; i < 10; ++i) {
      const ModelParams mp = sample_params(s, 1);
      const GeneratorFamily fam = build_family(mp, 1, 0);
      const CoefficientTower tw = coefficient_tower(mp, 1);
      worst_aw = std::max(worst_aw, max_residual(check_askey_wilson(fam, tw, mp)));
    }
    for (int n = 1; n <= 4; ++n)
      for (int i = 0; i < 3; ++i) {
        const ModelParams mp = sample_params(s, n);
        const CoefficientTower tw = coefficient_tower(mp, n);
        const GeneratorFamily shallow = build_family(mp, n, 0);
        worst_cubic = std::max(worst_cubic, max_residual(check_q_dolan_grady(shallow, tw, mp)));
        const GeneratorFamily deep = build_family(mp, n, n + 2);
        worst_rel = std::max(worst_rel, max_residual(check_relations(deep, tw, mp)));
      }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "quadratic %.3e, cubic %.3e, tower %.3e", worst_aw,
                  worst_cubic, worst_rel);
    gate.report("symmetry algebra: quadratic 1e-9 (one site), cubic and tower 1e-8 (sizes 1..4)",
                worst_aw <= 1e-9 && worst_cubic <= 1e-8 && worst_rel <= 1e-8, detail);
  }

  // 7. Transfer matrices commute, decompose over charges, pin t(1). ---------
  {
    Sampler s(Sampler::sub_seed(kSeed, "acceptance-transfer"));
    double worst_comm = 0, worst_dec = 0, worst_t1 = 0;
    for (int n = 1; n <= 6; ++n)
      for (int i = 0; i < 3; ++i) {
        const ModelParams mp = sample_params(s, n);
        worst_comm = std::max(
            worst_comm, check_commuting_transfer(mp, s.generic_u(0.7, 1.4), s.generic_u(0.7, 1.4)));
        const CMatrix t1 = transfer(Complex(1, 0), mp);
        worst_t1 = std::max(
            worst_t1, rel_residual(t1, transfer_identity_value(mp) * ident(t1.rows())));
      }
    for (int n = 1; n <= 3; ++n) {
      const ModelParams mp = sample_params(s, n);
      std::vector<Complex> us;
      for (int i = 0; i < 2 * n + 4; ++i) us.push_back(s.generic_u(0.7, 1.4));
      worst_dec = std::max(worst_dec, check_decomposition(mp, us).residual_selected);
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "commutation %.3e, decomposition %.3e, t(1) %.3e",
                  worst_comm, worst_dec, worst_t1);
    gate.report(
        "transfer: commutation 1e-9 (sizes 1..6), decomposition 1e-8 (1..3), t(1) 1e-10",
        worst_comm <= 1e-9 && worst_dec <= 1e-8 && worst_t1 <= 1e-10, detail);
  }

  // 8. Hamiltonian: derivation, conservation, flat-twist limit, spectrum. ---
  {
    Sampler s(Sampler::sub_seed(kSeed, "acceptance-hamiltonian"));
    double worst_der = 0, worst_cons = 0, worst_xxz = 0, worst_spec = 0;
    for (int n = 1; n <= 4; ++n) {
      const ModelParams mp = sample_params(s, n, /*homogeneous=*/true);
      worst_der = std::max(worst_der, check_hamiltonian_derivation(mp));
      for (double r : check_charge_conservation(mp, ChargeConvention::SingleSite))
        worst_cons = std::max(worst_cons, r);
      ModelParams flat = mp;
      for (auto& t : flat.t) t = Complex(1, 0);
      worst_xxz = std::max(
          worst_xxz, rel_residual(mccoy_wu_hamiltonian(flat), xxz_reference_hamiltonian(flat)));
    }
    {
      ModelParams mp;
      mp.q = Complex(1.69, 0.0);  // q^{1/2} = 1.3
      mp.n_sites = 2;
      mp.t = {Complex(1, 0), Complex(1, 0)};
      mp.v = {Complex(1, 0), Complex(1, 0)};
      mp.bp.eps_plus = mp.bp.eps_minus = 1.0;
      mp.bp.kappa = mp.bp.kappa_star = 1.0;
      const Spectrum sp = diagonalize(mccoy_wu_hamiltonian(mp));
      const double delta = (1.3 + 1.0 / 1.3) / 2.0;
      const Complex expected[4] = {Complex(-delta - 2.0, 0), Complex(-delta + 2.0, 0),
                                   Complex(delta, 0), Complex(delta, 0)};
      for (int i = 0; i < 4; ++i)
        worst_spec = std::max(worst_spec, std::abs(sp.eigenvalues[std::size_t(i)] - expected[i]));
    }
    char detail[192];
    std::snprintf(detail, sizeof(detail),
                  "derivation %.3e, conservation %.3e, flat-twist %.3e, spectrum %.3e",
                  worst_der, worst_cons, worst_xxz, worst_spec);
    gate.report(
        "Hamiltonian: derivation 1e-6, conservation 1e-8 (sizes 1..4), flat twist 1e-12, "
        "two-site spectrum 1e-10",
        worst_der <= 1e-6 && worst_cons <= 1e-8 && worst_xxz <= 1e-12 && worst_spec <= 1e-10,
        detail);
  }

  // 9. Deterministic reports and a full default run within budget. ----------
  {
    RunConfig small = default_config();
    small.suites = {"ybe", "algebra"};
    small.q_sampling.count = 10;
    const std::string a = emit_report(run_suites(small), "json");
    const std::string b = emit_report(run_suites(small), "json");

    const double t0 = now_seconds();
    const VerificationReport full = run_suites(default_config());
    const double dt = now_seconds() - t0;
    char detail[160];
    std::snprintf(detail, sizeof(detail), "deterministic %s, default suite %s in %.1fs",
                  a == b ? "yes" : "NO", full.overall().c_str(), dt);
    gate.report("byte-identical reports for identical seeds; full default suite passes in <10min",
                a == b && full.all_pass && full.errors.empty() && dt < 600.0, detail);
  }

  std::printf("%d/9 criteria passed\n", gate.passed);
  return gate.failed == 0 ? 0 : 1;
}
