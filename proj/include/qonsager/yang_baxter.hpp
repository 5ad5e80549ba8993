#pragma once
// The twisted trigonometric six-vertex R-matrix and its structural
// identities: Yang-Baxter, unitarity, the diagonal twist, and the
// crossing-type relation built from inverses of partial transposes.

#include "qonsager/linalg.hpp"

namespace qonsager {

// Vertex weights. All functions take the principal branch of q^{1/2}.
Complex weight_a(Complex u, Complex q);   // q^{1/2} u - q^{-1/2} u^{-1}
Complex weight_b(Complex u);              // u - u^{-1}
Complex weight_c(Complex q);              // q^{1/2} - q^{-1/2}

struct RMatrix {
  Complex u, q, t;
  CMatrix matrix;  // 4x4 on aux (x) aux, basis (11, 12, 21, 22)
};

// R(u) = [[a,0,0,0],[0,t b,c,0],[0,c,b/t,0],[0,0,0,a]]; t = 1 is the
// untwisted case. Symmetric for every t, so the double transpose is itself.
RMatrix build_r(Complex u, Complex q, Complex t);

// Diagonal twist F = diag(1, f, 1/f, 1) with f = e^{i theta_z}; conjugating
// the untwisted R by F^{-1} ... F^{-1} produces build_r with t = f^{-2}.
CMatrix build_twist(Complex theta_z);

CMatrix swap_gate();  // 4x4 permutation of the two factors

CMatrix r12(Complex u, Complex q, Complex t);  // build_r(u, q, t).matrix
CMatrix r21(Complex u, Complex q, Complex t);  // P * R12 * P

// q + q^{-1} - u^2 - u^{-2} = a(u) a(1/u): the unitarity scalar.
Complex zeta(Complex u, Complex q);

// max residual of R12(u/v) R13(u/w) R23(v/w) == R23(v/w) R13(u/w) R12(u/v)
// on the triple tensor space.
double check_ybe(Complex q, Complex t, Complex u, Complex v, Complex w);

// rel_residual of R12(u) R21(1/u) against zeta(u) * I.
double check_unitarity(Complex q, Complex t, Complex u);

// Transpose in the second tensor factor of a 4x4 two-space matrix.
CMatrix partial_transpose_2(const CMatrix& r4);

// {{ (R12^{t2}(u))^{-1} }^{t2}}^{-1} == (zeta(q^{1/2}u)/zeta(qu)) *
// (1 (x) M) R12(qu) (1 (x) M)^{-1}, checked for a given 2x2 M. The identity
// holds with M = I; a generic diagonal M is a negative control.
double check_m_relation_with(Complex q, Complex t, Complex u, const CMatrix& m);
double check_m_relation(Complex q, Complex t, Complex u);  // M = I

struct TwistConditionResult {
  double conjugation;      // F^{-1} R(t=1) F^{-1} == R(t = e^{-2 i theta_z})
  double corrected_mixed;  // R12 F13 F23 == F23 F13 R12
  double printed_mixed;    // R12 F12 F23 == F23 F13 R12 (fails generically)
  double triple;           // F12 F13 F23 == F23 F13 F12
  double inverse_pair;     // F(theta) F(-theta) == I
};
// Checked on the triple space with F_{ij} = exp(i theta_z (s3_i - s3_j)/2),
// untwisted R.
TwistConditionResult check_twist_conditions(Complex q, Complex u, Complex theta_z);

}  // namespace qonsager
