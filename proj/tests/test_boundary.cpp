#include "qonsager/boundary.hpp"

#include "qonsager/yang_baxter.hpp"

#include <doctest.h>

#include <algorithm>

using namespace qonsager;

namespace {

ModelParams fixed_params(int n) {
  ModelParams mp;
  mp.q = Complex(1.4, 0.3);
  mp.n_sites = n;
  const Complex twists[5] = {std::exp(Complex(0, 0.5)), std::exp(Complex(0, -1.1)),
                             std::exp(Complex(0, 2.0)), std::exp(Complex(0, 0.3)),
                             std::exp(Complex(0, -0.8))};
  const Complex inhoms[5] = {Complex(1.1, 0.1), Complex(0.9, -0.2), Complex(1.3, 0.0),
                             Complex(0.8, 0.15), Complex(1.05, -0.1)};
  for (int i = 0; i < n; ++i) {
    mp.t.push_back(twists[i % 5]);
    mp.v.push_back(inhoms[i % 5]);
  }
  mp.bp.eps_plus = Complex(0.9, 0.2);
  mp.bp.eps_minus = Complex(1.2, -0.3);
  mp.bp.k_plus = Complex(0.7, 0.4);
  mp.bp.k_minus = Complex(1.1, -0.1);
  mp.bp.kappa = Complex(1.3, 0.1);
  mp.bp.kappa_star = Complex(0.8, -0.4);
  mp.bp.kappa_plus = Complex(0.95, 0.25);
  mp.bp.kappa_minus = Complex(1.15, -0.2);
  return mp;
}

KBuilder right_builder(const ModelParams& mp) {
  return [mp](Complex u) { return AuxOperator::from_scalar_matrix(build_kminus_c(u, mp), 0); };
}

KBuilder left_builder(const ModelParams& mp) {
  return [mp](Complex u) { return AuxOperator::from_scalar_matrix(build_kplus_c(u, mp), 0); };
}

}  // namespace

TEST_CASE("right boundary matrix at u = 1 is the pinned scalar") {
  const ModelParams mp = fixed_params(1);
  const CMatrix k1 = build_kminus_c(Complex(1, 0), mp);
  CHECK(rel_residual(k1, (mp.bp.eps_plus + mp.bp.eps_minus) * ident(2)) < 1e-15);
}

TEST_CASE("left boundary trace at u = 1 is the pinned scalar") {
  const ModelParams mp = fixed_params(1);
  const CMatrix k1 = build_kplus_c(Complex(1, 0), mp);
  const Complex qh = std::sqrt(mp.q);
  const Complex d = qh + 1.0 / qh;
  CHECK(std::abs(k1(0, 0) + k1(1, 1) - d * (mp.bp.kappa + mp.bp.kappa_star)) < 1e-14);
  // Note the off-diagonal entries do NOT vanish at u = 1: they carry the
  // factor (q u^2 - q^{-1} u^{-2}), which equals q - q^{-1} there.
  CHECK(std::abs(k1(0, 1)) > 1e-6);
  CHECK(std::abs(k1(1, 0)) > 1e-6);
}

TEST_CASE("scalar right boundary satisfies the reflection equation") {
  const ModelParams mp = fixed_params(1);
  const Complex u(1.2, 0.1), v(0.75, -0.2);
  const Complex t = std::exp(Complex(0, 0.6));
  const ReflectionResult r = check_reflection(right_builder(mp), mp.q, t, u, v);
  CHECK(r.canonical < 1e-10);
}

TEST_CASE("reflection residual does not depend on the twist of R") {
  const ModelParams mp = fixed_params(1);
  const Complex u(1.2, 0.1), v(0.75, -0.2);
  const double r1 =
      check_reflection(right_builder(mp), mp.q, std::exp(Complex(0, 0.6)), u, v).canonical;
  const double r2 =
      check_reflection(right_builder(mp), mp.q, std::exp(Complex(0, 2.1)), u, v).canonical;
  CHECK(std::abs(r1 - r2) < 1e-12);
}

TEST_CASE("keeping R12 in the outer slots fails once twisted, matches when untwisted") {
  const ModelParams mp = fixed_params(1);
  const Complex u(1.2, 0.1), v(0.75, -0.2);
  const ReflectionResult twisted =
      check_reflection(right_builder(mp), mp.q, std::exp(Complex(0, 1.1)), u, v);
  CHECK(twisted.printed_variant > 1e-3);
  const ReflectionResult flat =
      check_reflection(right_builder(mp), mp.q, Complex(1, 0), u, v);
  CHECK(std::abs(flat.printed_variant - flat.canonical) < 1e-15);
}

TEST_CASE("left boundary satisfies the dual reflection equation") {
  const ModelParams mp = fixed_params(1);
  const ReflectionResult r = check_dual_reflection(left_builder(mp), mp.q,
                                                   std::exp(Complex(0, 0.8)),
                                                   Complex(1.15, 0.2), Complex(0.8, -0.15));
  CHECK(r.canonical < 1e-10);
}

TEST_CASE("dualized right boundary satisfies the dual reflection equation") {
  const ModelParams mp = fixed_params(1);
  const KBuilder dual = dualize(right_builder(mp), mp.q);
  const ReflectionResult r = check_dual_reflection(dual, mp.q, std::exp(Complex(0, 1.7)),
                                                   Complex(1.15, 0.2), Complex(0.8, -0.15));
  CHECK(r.canonical < 1e-10);
}

TEST_CASE("the closed-form parameter map realizes dualization") {
  const ModelParams mp = fixed_params(1);
  const DualizeFit fit =
      dualize_params(mp, {Complex(1.2, 0.1), Complex(0.8, -0.3), Complex(1.5, 0.25)});
  CHECK(fit.map_residual < 1e-12);
  CHECK(std::abs(fit.kappa - mp.bp.eps_minus) < 1e-15);
  CHECK(std::abs(fit.kappa_star - mp.bp.eps_plus) < 1e-15);
  const Complex denom = mp.q - 1.0 / mp.q;
  CHECK(std::abs(fit.kappa_plus + mp.bp.k_minus / denom) < 1e-15);
  CHECK(std::abs(fit.kappa_minus + mp.bp.k_plus / denom) < 1e-15);
}

TEST_CASE("sixteen component equations: matrix-derived forms all hold") {
  const ModelParams mp = fixed_params(1);
  const SixteenResult sx = check_sixteen(mp, Complex(1.25, 0.15), Complex(0.7, -0.25), 1e-12);
  for (int e = 0; e < 16; ++e) {
    CAPTURE(e);
    CHECK(sx.matrix_derived[std::size_t(e)] < 1e-12);
  }
}

TEST_CASE("sixteen component equations: only the two misprinted lines deviate") {
  const ModelParams mp = fixed_params(1);
  const SixteenResult sx = check_sixteen(mp, Complex(1.25, 0.15), Complex(0.7, -0.25), 1e-12);
  CHECK(sx.flagged == std::vector<int>({13, 14}));
  for (int e : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 15, 16}) {
    CAPTURE(e);
    CHECK(sx.printed[std::size_t(e - 1)] < 1e-12);
  }
  for (int e : {13, 14}) {
    CAPTURE(e);
    CHECK(sx.printed[std::size_t(e - 1)] > 1e-3);
  }
}

TEST_CASE("one dressing layer equals the direct Lax sandwich") {
  const ModelParams mp = fixed_params(1);
  const Complex u(1.3, 0.2);
  const AuxOperator dressed = dress(1, mp).at(u);

  const SklyaninRep rep = spin_half_rep(mp.q, mp.site_t(1));
  const AuxOperator manual = build_lax(u * mp.site_v(1), rep) *
                             AuxOperator::from_scalar_matrix(build_kminus_c(u, mp), 1) *
                             build_lax_tilde(mp.site_v(1) / u, rep);
  CHECK(dressed.diff(manual) < 1e-14);
}

TEST_CASE("dressed boundary matrices satisfy the reflection equation at every size") {
  for (int n = 1; n <= 4; ++n) {
    const ModelParams mp = fixed_params(n);
    const Complex u(1.15, 0.1), v(0.85, -0.2);
    const Complex t_r = std::exp(Complex(0, 1.9));  // independent of the site twists
    const double r = check_reflection(dress(n, mp).builder(), mp.q, t_r, u, v).canonical;
    CAPTURE(n);
    CHECK(r < 1e-9);
  }
}

TEST_CASE("perturbing one boundary entry breaks the reflection equation") {
  const ModelParams mp = fixed_params(1);
  KBuilder bad = [mp](Complex u) {
    CMatrix k = build_kminus_c(u, mp);
    k(0, 1) += Complex(0.1, 0.05);
    return AuxOperator::from_scalar_matrix(k, 0);
  };
  const double r =
      check_reflection(bad, mp.q, std::exp(Complex(0, 0.6)), Complex(1.2, 0.1),
                       Complex(0.75, -0.2))
          .canonical;
  CHECK(r > 1e-3);
}
