#include "qonsager/transfer.hpp"

#include "qonsager/yang_baxter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qonsager {

CMatrix transfer(Complex u, const ModelParams& mp) {
  const AuxOperator dressed = dress_at(build_kminus_c(u, mp), u, mp.n_sites, mp);
  const AuxOperator kplus = AuxOperator::from_scalar_matrix(build_kplus_c(u, mp), mp.n_sites);
  return (kplus * dressed).trace_aux();
}

Complex transfer_identity_value(const ModelParams& mp) {
  // K-(1) is scalar, so the dressing telescopes through L_i(v_i) Lt_i(v_i) =
  // zeta(v_i) I; on a homogeneous chain the product is c^{2N}.
  const Complex qh = std::sqrt(mp.q);
  const Complex d = qh + 1.0 / qh;
  Complex prod = 1.0;
  for (int i = 1; i <= mp.n_sites; ++i) prod *= zeta(mp.site_v(i), mp.q);
  return prod * d * (mp.bp.eps_plus + mp.bp.eps_minus) * (mp.bp.kappa + mp.bp.kappa_star);
}

Complex scalar_f(Complex u, const ModelParams& mp, const CoefficientTower& tw) {
  const Complex qh = std::sqrt(mp.q);
  const Complex d = qh + 1.0 / qh;
  const Complex quad = qh * u * u + 1.0 / (qh * u * u);
  const Complex uu = u * u - 1.0 / (u * u);
  const Complex shifted = mp.q * u * u - 1.0 / (mp.q * u * u);
  const Complex kappa_mix = mp.bp.kappa_plus / (mp.bp.k_plus * tw.prod_mw01) +
                            mp.bp.kappa_minus / (mp.bp.k_minus * tw.prod_mw02);
  return d * (mp.bp.kappa_star * tw.eps_plus_n + mp.bp.kappa * tw.eps_minus_n) +
         quad * (mp.bp.kappa * tw.eps_plus_n + mp.bp.kappa_star * tw.eps_minus_n) +
         d * uu * shifted * kappa_mix * tw.poly_j(u);
}

double check_commuting_transfer(const ModelParams& mp, Complex u, Complex v) {
  return commutator_residual(transfer(u, mp), transfer(v, mp));
}

namespace {

double decomposition_residual(const ModelParams& mp, const std::vector<Complex>& us,
                              const GeneratorFamily& fam, const CoefficientTower& tw,
                              const std::vector<CMatrix>& ops, int q_inv_exponent) {
  const Complex qh = std::sqrt(mp.q);
  double worst = 0;
  for (Complex u : us) {
    const CMatrix t_u = transfer(u, mp);
    const Complex uu = u * u - 1.0 / (u * u);
    Complex qpow = mp.q;  // exponent +1 on the leading piece
    Complex qneg = 1.0;
    for (int i = 0; i < q_inv_exponent; ++i) qneg /= mp.q;
    const Complex shifted = qpow * u * u - qneg / (u * u);
    CMatrix sum = scalar_f(u, mp, tw) * ident(t_u.rows());
    for (int k = 0; k < fam.n_sites; ++k) sum += uu * shifted * tw.poly_p(u, k) * ops[std::size_t(k)];
    worst = std::max(worst, rel_residual(t_u, sum));
  }
  return worst;
}

}  // namespace

DecompositionResult check_decomposition(const ModelParams& mp, const std::vector<Complex>& us) {
  const GeneratorFamily fam = build_family(mp, mp.n_sites, mp.n_sites);
  const CoefficientTower tw = coefficient_tower(mp, mp.n_sites);
  const auto ops_single = charges(fam, tw, mp, ChargeConvention::SingleSite);
  const auto ops_product = charges(fam, tw, mp, ChargeConvention::SiteProduct);

  DecompositionResult out{};
  out.residual_single_site = decomposition_residual(mp, us, fam, tw, ops_single, 1);
  out.residual_site_product = decomposition_residual(mp, us, fam, tw, ops_product, 1);
  if (out.residual_single_site <= out.residual_site_product) {
    out.selected = ChargeConvention::SingleSite;
    out.residual_selected = out.residual_single_site;
  } else {
    out.selected = ChargeConvention::SiteProduct;
    out.residual_selected = out.residual_site_product;
  }
  return out;
}

PrefactorProbe adjudicate_n1_prefactor(const ModelParams& mp, const std::vector<Complex>& us) {
  if (mp.n_sites != 1)
    throw std::invalid_argument("adjudicate_n1_prefactor: one-site chains only");
  const GeneratorFamily fam = build_family(mp, 1, 1);
  const CoefficientTower tw = coefficient_tower(mp, 1);
  const auto ops = charges(fam, tw, mp, ChargeConvention::SingleSite);
  PrefactorProbe out{};
  out.residual_qinv = decomposition_residual(mp, us, fam, tw, ops, 1);
  out.residual_qinv2 = decomposition_residual(mp, us, fam, tw, ops, 2);
  return out;
}

CMatrix mccoy_wu_hamiltonian(const ModelParams& mp) {
  mp.validate();
  const int n = mp.n_sites;
  if (n < 1) throw std::invalid_argument("mccoy_wu_hamiltonian: need at least one site");
  const Complex qh = std::sqrt(mp.q);
  const Complex c = qh - 1.0 / qh;
  const Complex d = qh + 1.0 / qh;
  const Complex delta = d / 2.0;
  const Complex eps_sum = mp.bp.eps_plus + mp.bp.eps_minus;
  const Complex kappa_sum = mp.bp.kappa + mp.bp.kappa_star;
  if (std::abs(eps_sum) < 1e-12)
    throw std::invalid_argument(
        "mccoy_wu_hamiltonian: eps_plus + eps_minus vanishes (right boundary normalization)");
  if (std::abs(kappa_sum) < 1e-12)
    throw std::invalid_argument(
        "mccoy_wu_hamiltonian: kappa + kappa_star vanishes (left boundary normalization)");

  const Eigen::Index dim = Eigen::Index(1) << n;
  CMatrix h = CMatrix::Zero(dim, dim);
  for (int k = 1; k < n; ++k) {
    const Complex ratio = std::sqrt(mp.site_t(k + 1)) / std::sqrt(mp.site_t(k));
    h += 2.0 * ratio * embed_site(sigma_plus(), k + 1, n) * embed_site(sigma_minus(), k, n);
    h += (2.0 / ratio) * embed_site(sigma_minus(), k + 1, n) * embed_site(sigma_plus(), k, n);
    h += delta * embed_site(pauli_z(), k + 1, n) * embed_site(pauli_z(), k, n);
  }
  const Complex th_n = std::sqrt(mp.site_t(n));
  h += (c / kappa_sum) *
       ((mp.bp.kappa - mp.bp.kappa_star) / 2.0 * embed_site(pauli_z(), n, n) +
        2.0 * d *
            (th_n * mp.bp.kappa_plus * embed_site(sigma_plus(), n, n) +
             mp.bp.kappa_minus / th_n * embed_site(sigma_minus(), n, n)));
  const Complex th_1 = std::sqrt(mp.site_t(1));
  h += (c / eps_sum) *
       ((mp.bp.eps_plus - mp.bp.eps_minus) / 2.0 * embed_site(pauli_z(), 1, n) +
        (2.0 / c) *
            (th_1 * mp.bp.k_plus * embed_site(sigma_plus(), 1, n) +
             mp.bp.k_minus / th_1 * embed_site(sigma_minus(), 1, n)));
  return h;
}

CMatrix xxz_reference_hamiltonian(const ModelParams& mp) {
  const int n = mp.n_sites;
  const Complex qh = std::sqrt(mp.q);
  const Complex c = qh - 1.0 / qh;
  const Complex d = qh + 1.0 / qh;
  const Complex delta = d / 2.0;
  const Complex eps_sum = mp.bp.eps_plus + mp.bp.eps_minus;
  const Complex kappa_sum = mp.bp.kappa + mp.bp.kappa_star;
  if (std::abs(eps_sum) < 1e-12 || std::abs(kappa_sum) < 1e-12)
    throw std::invalid_argument("xxz_reference_hamiltonian: boundary normalization vanishes");

  const long dim = 1L << n;
  CMatrix h = CMatrix::Zero(dim, dim);
  auto bit = [](long b, int pos) { return int((b >> pos) & 1L); };  // site i <-> bit i-1
  for (long b = 0; b < dim; ++b) {
    // Bulk.
    for (int k = 1; k < n; ++k) {
      const int hi = bit(b, k), lo = bit(b, k - 1);  // sites k+1, k
      const double s_hi = 1.0 - 2.0 * hi, s_lo = 1.0 - 2.0 * lo;
      h(b, b) += delta * s_hi * s_lo;
      if (hi == 1 && lo == 0) h(b ^ (1L << k) ^ (1L << (k - 1)), b) += 2.0;  // s+ s-
      if (hi == 0 && lo == 1) h(b ^ (1L << k) ^ (1L << (k - 1)), b) += 2.0;  // s- s+
    }
    // Left boundary fields at site n.
    const double s_n = 1.0 - 2.0 * bit(b, n - 1);
    h(b, b) += (c / kappa_sum) * (mp.bp.kappa - mp.bp.kappa_star) / 2.0 * s_n;
    if (bit(b, n - 1) == 1)
      h(b ^ (1L << (n - 1)), b) += (c / kappa_sum) * 2.0 * d * mp.bp.kappa_plus;
    else
      h(b ^ (1L << (n - 1)), b) += (c / kappa_sum) * 2.0 * d * mp.bp.kappa_minus;
    // Right boundary fields at site 1.
    const double s_1 = 1.0 - 2.0 * bit(b, 0);
    h(b, b) += (c / eps_sum) * (mp.bp.eps_plus - mp.bp.eps_minus) / 2.0 * s_1;
    if (bit(b, 0) == 1) h(b ^ 1L, b) += (c / eps_sum) * (2.0 / c) * mp.bp.k_plus;
    else h(b ^ 1L, b) += (c / eps_sum) * (2.0 / c) * mp.bp.k_minus;
  }
  return h;
}

double check_hamiltonian_derivation(const ModelParams& mp) {
  const CMatrix t1 = transfer(Complex(1.0, 0.0), mp);
  const Complex s = t1(0, 0);
  if (rel_residual(t1, s * ident(t1.rows())) > 1e-8)
    throw std::runtime_error("check_hamiltonian_derivation: t(1) is not scalar");

  auto central = [&](double h) {
    return ((transfer(Complex(1.0 + h, 0.0), mp) - transfer(Complex(1.0 - h, 0.0), mp)) /
            Complex(2.0 * h, 0.0))
        .eval();
  };
  const CMatrix d1 = central(1e-4);
  const CMatrix d2 = central(5e-5);
  const CMatrix deriv = (4.0 * d2 - d1) / 3.0;
  const CMatrix lhs = deriv / s;

  const Complex qh = std::sqrt(mp.q);
  const Complex c = qh - 1.0 / qh;
  const Complex d = qh + 1.0 / qh;
  const Complex delta = d / 2.0;
  const CMatrix rhs = (c / d + 2.0 * double(mp.n_sites) * delta / c) * ident(t1.rows()) +
                      (2.0 / c) * mccoy_wu_hamiltonian(mp);
  return rel_residual(lhs, rhs);
}

std::vector<double> check_charge_conservation(const ModelParams& mp,
                                              ChargeConvention convention) {
  const CMatrix h = mccoy_wu_hamiltonian(mp);
  const GeneratorFamily fam = build_family(mp, mp.n_sites, mp.n_sites);
  const CoefficientTower tw = coefficient_tower(mp, mp.n_sites);
  std::vector<double> out;
  for (const CMatrix& op : charges(fam, tw, mp, convention))
    out.push_back(commutator_residual(h, op));
  return out;
}

double check_i1_two_route(const ModelParams& mp, int n) {
  ModelParams local = mp;
  local.n_sites = n;
  const auto [w0, w1] = two_term_w_recursion(local, n);
  const CMatrix g1 = q_commutator(w1, w0, mp.q, +1);
  const CMatrix gt1 = q_commutator(w0, w1, mp.q, +1);
  const CMatrix i1_direct = mp.bp.kappa * w0 + mp.bp.kappa_star * w1 +
                            mp.bp.kappa_plus / mp.bp.k_plus * gt1 +
                            mp.bp.kappa_minus / mp.bp.k_minus * g1;

  const GeneratorFamily fam = build_family(local, n, n);
  const CoefficientTower tw = coefficient_tower(local, n);
  const auto ops = charges(fam, tw, local, ChargeConvention::SingleSite);
  return rel_residual(i1_direct, ops.at(0));
}

Spectrum diagonalize(const CMatrix& h) {
  Eigen::ComplexEigenSolver<CMatrix> solver(h, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("diagonalize: eigensolver failed to converge");
  Spectrum s;
  s.n_sites = int(std::log2(double(h.rows())) + 0.5);
  s.eigenvalues.assign(solver.eigenvalues().data(),
                       solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return s;
}

std::string spectrum_csv(const Spectrum& s) {
  std::string out = "index,re,im\n";
  char buf[96];
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", i, s.eigenvalues[i].real(),
                  s.eigenvalues[i].imag());
    out += buf;
  }
  return out;
}

}  // namespace qonsager
