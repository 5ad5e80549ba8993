#include "qonsager/lax.hpp"

#include "qonsager/yang_baxter.hpp"

#include <cmath>
#include <stdexcept>

namespace qonsager {

double max_residual(const NamedResiduals& rs) {
  double worst = 0;
  for (const auto& [name, r] : rs) worst = std::max(worst, r);
  return worst;
}

SklyaninRep spin_half_rep(Complex q, Complex t) {
  const Complex qh = std::sqrt(q);   // principal branch, fixed once per instance
  const Complex th = std::sqrt(t);
  const Complex c = qh - 1.0 / qh;
  SklyaninRep rep;
  rep.q = q;
  rep.t = t;
  rep.tau1_plus = CMatrix::Zero(2, 2);
  rep.tau1_plus(0, 0) = -1.0 / qh;
  rep.tau1_plus(1, 1) = -1.0;
  rep.tau1_minus = CMatrix::Zero(2, 2);
  rep.tau1_minus(0, 0) = qh;
  rep.tau1_minus(1, 1) = 1.0;
  rep.tau2_plus = CMatrix::Zero(2, 2);
  rep.tau2_plus(0, 0) = -1.0;
  rep.tau2_plus(1, 1) = -1.0 / qh;
  rep.tau2_minus = CMatrix::Zero(2, 2);
  rep.tau2_minus(0, 0) = 1.0;
  rep.tau2_minus(1, 1) = qh;
  rep.tau12 = c * sigma_minus();
  rep.tau21 = c * sigma_plus();
  rep.tau_g = CMatrix::Zero(2, 2);
  rep.tau_g(0, 0) = th;
  rep.tau_g(1, 1) = 1.0 / th;
  return rep;
}

namespace {

Complex scalar_of(const CMatrix& m, const char* what) {
  const CMatrix id = ident(m.rows());
  const Complex s = m(0, 0);
  if (rel_residual(m, s * id) > 1e-12)
    throw std::runtime_error(std::string("casimirs: ") + what +
                             " is not scalar in this representation");
  return s;
}

}  // namespace

CasimirSet casimirs(const SklyaninRep& rep) {
  const Complex qh = std::sqrt(rep.q);
  CasimirSet cs;
  cs.w_plus = scalar_of(rep.tau1_plus * rep.tau2_plus, "w_plus");
  cs.w_minus = scalar_of(rep.tau1_minus * rep.tau2_minus, "w_minus");
  cs.w01 = scalar_of(rep.tau1_minus * rep.tau1_plus, "w01");
  cs.w02 = scalar_of(rep.tau2_minus * rep.tau2_plus, "w02");
  const CMatrix w_m = rep.tau12 * rep.tau21 - qh * rep.tau1_minus * rep.tau2_plus -
                      (1.0 / qh) * rep.tau1_plus * rep.tau2_minus;
  cs.w = scalar_of(w_m, "w");
  // The same element written with the factors reversed must agree.
  const CMatrix w_alt = rep.tau21 * rep.tau12 - (1.0 / qh) * rep.tau1_minus * rep.tau2_plus -
                        qh * rep.tau1_plus * rep.tau2_minus;
  if (rel_residual(w_m, w_alt) > 1e-12)
    throw std::runtime_error("casimirs: the two orderings of w disagree");
  return cs;
}

NamedResiduals check_unetsa(const SklyaninRep& rep) {
  const Complex qh = std::sqrt(rep.q);
  const Complex c = qh - 1.0 / qh;
  const CMatrix* diag[4] = {&rep.tau1_plus, &rep.tau1_minus, &rep.tau2_plus, &rep.tau2_minus};
  const char* names[4] = {"tau1_plus", "tau1_minus", "tau2_plus", "tau2_minus"};
  NamedResiduals out;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      out.emplace_back(std::string("commute_") + names[i] + "_" + names[j],
                       commutator_residual(*diag[i], *diag[j]));

  auto exch = [&](const char* name, const CMatrix& x, const CMatrix& e, Complex scale) {
    out.emplace_back(name, rel_residual(x * e, scale * e * x));
  };
  exch("tau1_plus_tau12", rep.tau1_plus, rep.tau12, qh);
  exch("tau1_minus_tau12", rep.tau1_minus, rep.tau12, 1.0 / qh);
  exch("tau2_plus_tau12", rep.tau2_plus, rep.tau12, 1.0 / qh);
  exch("tau2_minus_tau12", rep.tau2_minus, rep.tau12, qh);
  exch("tau1_plus_tau21", rep.tau1_plus, rep.tau21, 1.0 / qh);
  exch("tau1_minus_tau21", rep.tau1_minus, rep.tau21, qh);
  exch("tau2_plus_tau21", rep.tau2_plus, rep.tau21, qh);
  exch("tau2_minus_tau21", rep.tau2_minus, rep.tau21, 1.0 / qh);

  const CMatrix lhs = rep.tau21 * rep.tau12 - rep.tau12 * rep.tau21;
  const CMatrix rhs = c * (rep.tau1_plus * rep.tau2_minus - rep.tau1_minus * rep.tau2_plus);
  out.emplace_back("off_diagonal_closing", rel_residual(lhs, rhs));
  return out;
}

TdefEtsaResult check_tdef_etsa(const SklyaninRep& rep) {
  const Complex qh = std::sqrt(rep.q);
  const Complex th = std::sqrt(rep.t);
  const Complex c = qh - 1.0 / qh;
  const Complex t = rep.t;

  // Twisted generators.
  const CMatrix t1p = rep.tau1_plus * rep.tau_g;
  const CMatrix t1m = rep.tau1_minus * rep.tau_g;
  const CMatrix t2p = rep.tau2_plus * rep.tau_g;
  const CMatrix t2m = rep.tau2_minus * rep.tau_g;
  const CMatrix t12 = (1.0 / th) * rep.tau12 * rep.tau_g;
  const CMatrix t21 = th * rep.tau21 * rep.tau_g;

  TdefEtsaResult res;
  NamedResiduals& out = res.corrected;

  const CMatrix* diag[4] = {&t1p, &t1m, &t2p, &t2m};
  const char* names[4] = {"tau1_plus", "tau1_minus", "tau2_plus", "tau2_minus"};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      out.emplace_back(std::string("commute_") + names[i] + "_" + names[j],
                       commutator_residual(*diag[i], *diag[j]));

  auto exch = [&out](const char* name, const CMatrix& x, const CMatrix& e, Complex scale) {
    out.emplace_back(name, rel_residual(x * e, scale * e * x));
  };
  exch("tau1_plus_tau12", t1p, t12, qh / t);
  exch("tau1_minus_tau12", t1m, t12, 1.0 / (qh * t));
  exch("tau2_plus_tau12", t2p, t12, 1.0 / (qh * t));
  exch("tau2_minus_tau12", t2m, t12, qh / t);
  exch("tau1_plus_tau21", t1p, t21, t / qh);
  exch("tau1_minus_tau21", t1m, t21, t * qh);
  exch("tau2_plus_tau21", t2p, t21, t * qh);
  exch("tau2_minus_tau21", t2m, t21, t / qh);

  const CMatrix lhs = t * t21 * t12 - (1.0 / t) * t12 * t21;
  const CMatrix rhs = c * (t1p * t2m - t1m * t2p);
  out.emplace_back("off_diagonal_closing", rel_residual(lhs, rhs));

  // Printed form of the fifth exchange pair: the left factor written with
  // tau12 instead of tau21. Fails at generic twisted points.
  res.printed_variant.emplace_back("tau2_plus_tau21_printed",
                                   rel_residual(t2p * t12, (t * qh) * t21 * t2p));
  res.printed_variant.emplace_back("tau2_minus_tau21_printed",
                                   rel_residual(t2m * t12, (t / qh) * t21 * t2m));
  return res;
}

NamedResiduals check_factorization(const SklyaninRep& rep) {
  NamedResiduals out;
  out.emplace_back("tau_g_tau12",
                   rel_residual(rep.tau_g * rep.tau12, (1.0 / rep.t) * rep.tau12 * rep.tau_g));
  out.emplace_back("tau_g_tau21",
                   rel_residual(rep.tau_g * rep.tau21, rep.t * rep.tau21 * rep.tau_g));
  out.emplace_back("tau_g_tau1_plus", commutator_residual(rep.tau_g, rep.tau1_plus));
  out.emplace_back("tau_g_tau1_minus", commutator_residual(rep.tau_g, rep.tau1_minus));
  out.emplace_back("tau_g_tau2_plus", commutator_residual(rep.tau_g, rep.tau2_plus));
  out.emplace_back("tau_g_tau2_minus", commutator_residual(rep.tau_g, rep.tau2_minus));
  return out;
}

AuxOperator build_lax(Complex u, const SklyaninRep& rep) {
  const Complex th = std::sqrt(rep.t);
  AuxOperator l(1);
  l.block(0, 0) = (u * rep.tau1_minus + (1.0 / u) * rep.tau1_plus) * rep.tau_g;
  l.block(0, 1) = (1.0 / th) * rep.tau12 * rep.tau_g;
  l.block(1, 0) = th * rep.tau21 * rep.tau_g;
  l.block(1, 1) = (u * rep.tau2_minus + (1.0 / u) * rep.tau2_plus) * rep.tau_g;
  return l;
}

AuxOperator build_lax_tilde(Complex u, const SklyaninRep& rep) {
  const Complex qh = std::sqrt(rep.q);
  const Complex th = std::sqrt(rep.t);
  const CMatrix tg_inv = rep.tau_g.inverse();
  AuxOperator l(1);
  l.block(0, 0) = tg_inv * (-(u / qh) * rep.tau2_minus - (qh / u) * rep.tau2_plus);
  l.block(0, 1) = tg_inv * ((1.0 / th) * rep.tau12);
  l.block(1, 0) = tg_inv * (th * rep.tau21);
  l.block(1, 1) = tg_inv * (-(u / qh) * rep.tau1_minus - (qh / u) * rep.tau1_plus);
  return l;
}

Complex rho_factor(Complex u, Complex q, const CasimirSet& cs) {
  const Complex qh = std::sqrt(q);
  return cs.w - ((1.0 / qh) * cs.w_minus * u * u + qh * cs.w_plus / (u * u));
}

double check_lax_inverse(Complex u, const SklyaninRep& rep) {
  const AuxOperator prod = build_lax(u, rep) * build_lax_tilde(u, rep);
  const Complex rho = rho_factor(u, rep.q, casimirs(rep));
  const AuxOperator target = AuxOperator::identity(1).scaled(rho);
  return prod.diff(target);
}

double check_rll_with_r(const CMatrix& r4, Complex u, Complex v, const SklyaninRep& rep) {
  const CMatrix l1 = build_lax(u, rep).embed(1, 2);
  const CMatrix l2 = build_lax(v, rep).embed(2, 2);
  const CMatrix r = kron(r4, qident(1));
  return rel_residual(r * l1 * l2, l2 * l1 * r);
}

double check_rll(Complex u, Complex v, const SklyaninRep& rep) {
  // The exchange relation closes when the auxiliary R carries the reciprocal
  // of the representation twist: L built at twist t pairs with R at 1/t.
  return check_rll_with_r(r12(u / v, rep.q, 1.0 / rep.t), u, v, rep);
}

}  // namespace qonsager
