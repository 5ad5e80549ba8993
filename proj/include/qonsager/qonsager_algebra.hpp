#pragma once
// The boundary-generator towers: explicit one-site generators, the site
// recursion that adds one spin to every generator, the scalar coefficient
// tower (epsilon flow, alpha products, closure coefficients, polynomial
// weights), and the algebraic relations the towers satisfy: the deformed
// quadratic pair at one site, the cubic pair at every size, mutual
// commutation, exchange symmetries, closure, and the lowest-order ladder.

#include "qonsager/boundary.hpp"
#include "qonsager/lax.hpp"
#include "qonsager/linalg.hpp"

#include <vector>

namespace qonsager {

// sign = +1: q^{1/2} X Y - q^{-1/2} Y X;  sign = -1: q^{-1/2} X Y - q^{1/2} Y X.
CMatrix q_commutator(const CMatrix& x, const CMatrix& y, Complex q, int sign);

// Towers of generators on an n-site chain, indexed by ladder depth:
//   Wm[l] = W_{-l} (l = 0..depth),
//   Wp[l] = W_{l}  (l = 0..depth+1, Wp[0] is a formal zero),
//   G[l], Gt[l]    (l = 0..depth+1, index 0 holds the scalar seed).
struct GeneratorFamily {
  int n_sites = 0;
  int depth = 0;
  std::vector<CMatrix> Wm, Wp, G, Gt;

  const CMatrix& W_minus(int l) const { return Wm.at(std::size_t(l)); }
  const CMatrix& W_plus(int l) const { return Wp.at(std::size_t(l)); }
  const CMatrix& G_op(int l) const { return G.at(std::size_t(l)); }
  const CMatrix& Gt_op(int l) const { return Gt.at(std::size_t(l)); }
};

// Zero-site (scalar) seed of the recursion.
GeneratorFamily level0_family(const ModelParams& mp, int depth);

// Adds site `level` (leftmost factor) to a family on level-1 sites. The
// output is reliable only for ladder indices below `level` (the independent
// range at that size); entries at higher indices must be rebuilt with
// closure_extend before use.
GeneratorFamily recurse_generators(const GeneratorFamily& prev, const ModelParams& mp,
                                   int level);

// Explicit closed-form one-site generators (depth 0), for cross-checking the
// recursion: W_0, W_1, G_1, Gt_1 on a single site.
GeneratorFamily n1_generators(const ModelParams& mp);

// Scalar data attached to the tower on n sites.
struct CoefficientTower {
  int n_sites = 0;
  Complex q;
  Complex kp_km;                         // k_plus * k_minus
  Complex eps_plus_n, eps_minus_n;       // boundary parameters after n dressing steps
  Complex omega0_n;                      // scalar closing coefficient
  Complex rho0_n;                        // cubic-relation coefficient (= rho1)
  Complex prod_mw01, prod_mw02;          // prod_k (-w01^(k)), prod_k (-w02^(k))
  Complex prod_wminus_wplus;             // prod_k w-^(k) w+^(k)
  std::vector<Complex> alpha;            // alpha_1..alpha_n
  std::vector<Complex> c_closure;        // c_closure[m] = C_{-m}, m = 0..n-1
  std::vector<Complex> x_site;           // X_1..X_n
  std::vector<CasimirSet> site_casimirs;

  Complex poly_p(Complex u, int k) const;  // P_{-k}(u)
  Complex poly_j(Complex u) const;         // scalar J(u)
  Complex eps_parity(int l) const;         // eps_+ for even l, eps_- for odd
};
CoefficientTower coefficient_tower(const ModelParams& mp, int n);

// Replaces every member at ladder index >= n_sites by the value the closure
// recurrence dictates from the members below it. On an n-site family the
// towers satisfy a length-(n+1) linear recurrence; only the first n members
// of each tower are independent.
void closure_extend(GeneratorFamily& f, const CoefficientTower& tw, const ModelParams& mp);

// Full tower on n sites: alternates the one-step recursion with the closure
// recurrence at each level, so all stored depths are consistent. depth < 0
// selects n + 2, enough for the relation suite.
GeneratorFamily build_family(const ModelParams& mp, int n, int depth = -1);

// One-site deformed quadratic pair:
// [W1,[W1,W0]_q]_{q^-1} = rho0 W0 + (q - q^-1) omega0 W1 - (rho0/D) eps_-^((1)) I
// and its mirror with W0 <-> W1 and eps_- -> eps_+.
NamedResiduals check_askey_wilson(const GeneratorFamily& fam, const CoefficientTower& tw,
                                  const ModelParams& mp);

// Cubic pair at any size:
// [W1, [W1, [W1, W0]_q]_{q^-1}] = rho0 [W1, W0], and the mirror with W0.
NamedResiduals check_q_dolan_grady(const GeneratorFamily& fam, const CoefficientTower& tw,
                                   const ModelParams& mp);

// Everything else the towers satisfy: mutual commutation within each family,
// pairwise exchange symmetries across families, q-bracket exchange
// symmetries, the bilinear Gt-G relation, the four closure sums, the
// lowest-order ladder identities, and G_1 = [W_1, W_0]_q.
NamedResiduals check_relations(const GeneratorFamily& fam, const CoefficientTower& tw,
                               const ModelParams& mp);

enum class ChargeConvention { SingleSite, SiteProduct };

// The commuting charges I_{2k+1}, k = 0..n-1:
//   kappa W_{-k} + kappa* W_{k+1} - (kappa+/(k+ P1)) Gt_{k+1} - (kappa-/(k- P2)) G_{k+1},
// where P1, P2 are w01/w02 read at the first site (SingleSite) or multiplied
// over all sites (SiteProduct); the two coincide on odd sizes.
std::vector<CMatrix> charges(const GeneratorFamily& fam, const CoefficientTower& tw,
                             const ModelParams& mp, ChargeConvention convention);

// Homogeneous two-term recursion for the endpoints W_0, W_1 of the tower
// (requires all inhomogeneities equal to 1); returns the pair (W_0, W_1).
std::pair<CMatrix, CMatrix> two_term_w_recursion(const ModelParams& mp, int n);

// The four blocks of the n-site dressed boundary matrix written through the
// generator towers and polynomial weights:
//   A = (u e+ + u^{-1} e-) I + (u^2-u^{-2}) (u q^{1/2} sum_k P_k W_{-k}
//        - u^{-1} q^{-1/2} sum_k P_k W_{k+1}),
//   D = same with W_{-k} <-> W_{k+1} and e+ <-> e-,
//   B = (u^2-u^{-2})/(k_- prod(-w02)) (J(u) I + (1/D_q) sum_k P_k G_{k+1}),
//   C = (u^2-u^{-2})/(k_+ prod(-w01)) (J(u) I + (1/D_q) sum_k P_k Gt_{k+1}),
// compared block by block against the Lax-dressed matrix itself.
struct DressedBlockResult {
  double block_a, block_b, block_c, block_d;
  double max() const;
};
DressedBlockResult check_dressed_blocks(const GeneratorFamily& fam,
                                        const CoefficientTower& tw, const ModelParams& mp,
                                        Complex u);

}  // namespace qonsager
