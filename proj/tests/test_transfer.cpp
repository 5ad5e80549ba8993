#include "qonsager/transfer.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace qonsager;

namespace {

ModelParams fixed_params(int n, bool homogeneous = true, bool flat_twist = false) {
  ModelParams mp;
  mp.q = Complex(1.3, 0.2);
  mp.n_sites = n;
  const Complex twists[4] = {std::exp(Complex(0, 0.6)), std::exp(Complex(0, -1.3)),
                             std::exp(Complex(0, 0.9)), std::exp(Complex(0, 1.8))};
  const Complex inhoms[4] = {Complex(1.1, 0.05), Complex(0.9, -0.1), Complex(1.15, 0.1),
                             Complex(0.95, 0.0)};
  for (int i = 0; i < n; ++i) {
    mp.t.push_back(flat_twist ? Complex(1, 0) : twists[i % 4]);
    mp.v.push_back(homogeneous ? Complex(1, 0) : inhoms[i % 4]);
  }
  mp.bp.eps_plus = Complex(1.05, 0.15);
  mp.bp.eps_minus = Complex(0.85, -0.2);
  mp.bp.k_plus = Complex(0.95, 0.3);
  mp.bp.k_minus = Complex(1.15, -0.1);
  mp.bp.kappa = Complex(1.1, 0.25);
  mp.bp.kappa_star = Complex(0.9, -0.15);
  mp.bp.kappa_plus = Complex(0.8, 0.2);
  mp.bp.kappa_minus = Complex(1.2, -0.25);
  return mp;
}

}  // namespace

TEST_CASE("transfer matrix at u = 1 is the pinned scalar") {
  for (int n = 1; n <= 3; ++n) {
    for (bool homogeneous : {true, false}) {
      const ModelParams mp = fixed_params(n, homogeneous);
      const CMatrix t1 = transfer(Complex(1, 0), mp);
      CAPTURE(n);
      CAPTURE(homogeneous);
      CHECK(rel_residual(t1, transfer_identity_value(mp) * ident(t1.rows())) < 1e-10);
    }
  }
}

TEST_CASE("transfer matrices at different arguments commute") {
  for (int n = 1; n <= 3; ++n) {
    const ModelParams mp = fixed_params(n, /*homogeneous=*/false);
    CAPTURE(n);
    CHECK(check_commuting_transfer(mp, Complex(1.25, 0.1), Complex(0.8, -0.2)) < 1e-9);
  }
}

TEST_CASE("transfer matrix decomposes over the conserved charges") {
  for (int n = 1; n <= 3; ++n) {
    const ModelParams mp = fixed_params(n);
    std::vector<Complex> us;
    const double step = 0.17;
    for (int i = 0; i < 2 * n + 4; ++i)
      us.push_back(Complex(1.05 + step * i, 0.08 - 0.03 * i));
    const DecompositionResult dr = check_decomposition(mp, us);
    CAPTURE(n);
    CHECK(dr.residual_selected < 1e-8);
    CHECK(dr.selected == ChargeConvention::SingleSite);
  }
}

TEST_CASE("one-site charge prefactor carries the first inverse power") {
  const ModelParams mp = fixed_params(1);
  std::vector<Complex> us;
  for (int i = 0; i < 6; ++i) us.push_back(Complex(1.1 + 0.2 * i, 0.05 * (i - 2)));
  const PrefactorProbe pr = adjudicate_n1_prefactor(mp, us);
  CHECK(pr.residual_qinv < 1e-8);
  CHECK(pr.residual_qinv2 > 1e-3);
}

TEST_CASE("flat-twist Hamiltonian equals the bit-built reference chain") {
  for (int n = 2; n <= 4; ++n) {
    const ModelParams mp = fixed_params(n, true, /*flat_twist=*/true);
    CAPTURE(n);
    CHECK(rel_residual(mccoy_wu_hamiltonian(mp), xxz_reference_hamiltonian(mp)) < 1e-12);
  }
}

TEST_CASE("degenerate boundary normalizations are rejected with named errors") {
  ModelParams mp = fixed_params(2);
  mp.bp.eps_minus = -mp.bp.eps_plus;
  CHECK_THROWS_WITH_AS((void)mccoy_wu_hamiltonian(mp),
                       doctest::Contains("eps_plus + eps_minus"), std::invalid_argument);
  ModelParams mp2 = fixed_params(2);
  mp2.bp.kappa_star = -mp2.bp.kappa;
  CHECK_THROWS_WITH_AS((void)mccoy_wu_hamiltonian(mp2), doctest::Contains("kappa"),
                       std::invalid_argument);
}

TEST_CASE("two sites with symmetric diagonal boundaries have the pinned spectrum") {
  ModelParams mp;
  mp.q = Complex(1.44, 0.0);  // q^{1/2} = 1.2
  mp.n_sites = 2;
  mp.t = {Complex(1, 0), Complex(1, 0)};
  mp.v = {Complex(1, 0), Complex(1, 0)};
  mp.bp.eps_plus = mp.bp.eps_minus = 1.0;
  mp.bp.kappa = mp.bp.kappa_star = 1.0;
  const Spectrum sp = diagonalize(mccoy_wu_hamiltonian(mp));
  REQUIRE(sp.eigenvalues.size() == 4);
  const double delta = (1.2 + 1.0 / 1.2) / 2.0;
  const Complex expected[4] = {Complex(-delta - 2.0, 0), Complex(-delta + 2.0, 0),
                               Complex(delta, 0), Complex(delta, 0)};
  for (int i = 0; i < 4; ++i) {
    CAPTURE(i);
    CHECK(std::abs(sp.eigenvalues[std::size_t(i)] - expected[i]) < 1e-12);
  }
}

TEST_CASE("logarithmic derivative of the transfer matrix yields the Hamiltonian") {
  for (int n = 1; n <= 3; ++n) {
    const ModelParams mp = fixed_params(n);
    CAPTURE(n);
    CHECK(check_hamiltonian_derivation(mp) < 1e-6);
  }
}

TEST_CASE("the Hamiltonian commutes with every charge") {
  for (int n = 1; n <= 3; ++n) {
    const ModelParams mp = fixed_params(n);
    const std::vector<double> rs = check_charge_conservation(mp, ChargeConvention::SingleSite);
    REQUIRE(int(rs.size()) == n);
    for (int k = 0; k < n; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(rs[std::size_t(k)] < 1e-8);
    }
  }
}

TEST_CASE("first charge agrees between the tower and the endpoint recursion") {
  for (int n = 1; n <= 3; ++n) {
    const ModelParams mp = fixed_params(n);
    CAPTURE(n);
    CHECK(check_i1_two_route(mp, n) < 1e-9);
  }
}

TEST_CASE("site twists act as a diagonal gauge on the spectrum") {
  const ModelParams twisted = fixed_params(3);
  ModelParams flat = twisted;
  for (auto& t : flat.t) t = Complex(1, 0);
  const Spectrum a = diagonalize(mccoy_wu_hamiltonian(twisted));
  const Spectrum b = diagonalize(mccoy_wu_hamiltonian(flat));
  REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
  for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(a.eigenvalues[i] - b.eigenvalues[i]) < 1e-10);
  }
}

TEST_CASE("spectrum CSV has the pinned header and row count") {
  const ModelParams mp = fixed_params(2);
  const Spectrum sp = diagonalize(mccoy_wu_hamiltonian(mp));
  const std::string csv = spectrum_csv(sp);
  CHECK(csv.rfind("index,re,im\n", 0) == 0);
  int lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == 5);  // header + 4 eigenvalues
}
