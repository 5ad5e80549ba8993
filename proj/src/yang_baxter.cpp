#include "qonsager/yang_baxter.hpp"

#include <cmath>
#include <stdexcept>

namespace qonsager {

namespace {

// Diagonal F_{ij} on the triple space: entry exp(i theta_z (s_i - s_j) / 2)
// with s_k = +/-1 the third spin component of factor k (factor 1 leftmost).
CMatrix twist_pair_on_triple(Complex theta_z, int i, int j) {
  CMatrix f = CMatrix::Zero(8, 8);
  const Complex iu(0, 1);
  for (int b = 0; b < 8; ++b) {
    const int bits[3] = {(b >> 2) & 1, (b >> 1) & 1, b & 1};
    const double si = 1.0 - 2.0 * bits[i - 1];
    const double sj = 1.0 - 2.0 * bits[j - 1];
    f(b, b) = std::exp(iu * theta_z * ((si - sj) / 2.0));
  }
  return f;
}

}  // namespace

Complex weight_a(Complex u, Complex q) {
  const Complex qh = std::sqrt(q);
  return qh * u - (1.0 / qh) * (1.0 / u);
}

Complex weight_b(Complex u) { return u - 1.0 / u; }

Complex weight_c(Complex q) {
  const Complex qh = std::sqrt(q);
  return qh - 1.0 / qh;
}

RMatrix build_r(Complex u, Complex q, Complex t) {
  const Complex a = weight_a(u, q);
  const Complex b = weight_b(u);
  const Complex c = weight_c(q);
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = a;
  m(1, 1) = t * b;
  m(1, 2) = c;
  m(2, 1) = c;
  m(2, 2) = b / t;
  m(3, 3) = a;
  return RMatrix{u, q, t, m};
}

CMatrix build_twist(Complex theta_z) {
  const Complex f = std::exp(Complex(0, 1) * theta_z);
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = f;
  m(2, 2) = 1.0 / f;
  m(3, 3) = 1;
  return m;
}

CMatrix swap_gate() {
  CMatrix p = CMatrix::Zero(4, 4);
  p(0, 0) = 1;
  p(1, 2) = 1;
  p(2, 1) = 1;
  p(3, 3) = 1;
  return p;
}

CMatrix r12(Complex u, Complex q, Complex t) { return build_r(u, q, t).matrix; }

CMatrix r21(Complex u, Complex q, Complex t) {
  const CMatrix p = swap_gate();
  return p * r12(u, q, t) * p;
}

Complex zeta(Complex u, Complex q) { return q + 1.0 / q - u * u - 1.0 / (u * u); }

double check_ybe(Complex q, Complex t, Complex u, Complex v, Complex w) {
  const CMatrix i2 = ident(2);
  const CMatrix s23 = kron(i2, swap_gate());
  const CMatrix a = kron(r12(u / v, q, t), i2);                  // acts on factors 1,2
  const CMatrix b = s23 * kron(r12(u / w, q, t), i2) * s23;      // acts on factors 1,3
  const CMatrix c = kron(i2, r12(v / w, q, t));                  // acts on factors 2,3
  return rel_residual(a * b * c, c * b * a);
}

double check_unitarity(Complex q, Complex t, Complex u) {
  const CMatrix lhs = r12(u, q, t) * r21(1.0 / u, q, t);
  return rel_residual(lhs, zeta(u, q) * ident(4));
}

CMatrix partial_transpose_2(const CMatrix& r4) {
  if (r4.rows() != 4 || r4.cols() != 4)
    throw std::invalid_argument("partial_transpose_2: need a 4x4 matrix");
  CMatrix out(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          // (i k | j l) -> transpose second indices: out(i l | j k) = in(i k | j l)
          out(2 * i + l, 2 * j + k) = r4(2 * i + k, 2 * j + l);
  return out;
}

double check_m_relation_with(Complex q, Complex t, Complex u, const CMatrix& m) {
  const Complex qh = std::sqrt(q);
  const CMatrix r = r12(u, q, t);
  const CMatrix rt2 = partial_transpose_2(r);
  Eigen::FullPivLU<CMatrix> lu1(rt2);
  if (!lu1.isInvertible())
    throw std::runtime_error("check_m_relation: R^{t2} is singular at this point");
  const CMatrix inner = partial_transpose_2(lu1.inverse());
  Eigen::FullPivLU<CMatrix> lu2(inner);
  if (!lu2.isInvertible())
    throw std::runtime_error("check_m_relation: inner matrix is singular at this point");
  const CMatrix lhs = lu2.inverse();

  const Complex scale = zeta(qh * u, q) / zeta(q * u, q);
  const CMatrix m_full = kron(ident(2), m);
  Eigen::FullPivLU<CMatrix> lum(m_full);
  const CMatrix rhs = scale * m_full * r12(q * u, q, t) * lum.inverse();
  return rel_residual(lhs, rhs);
}

double check_m_relation(Complex q, Complex t, Complex u) {
  return check_m_relation_with(q, t, u, ident(2));
}

TwistConditionResult check_twist_conditions(Complex q, Complex u, Complex theta_z) {
  TwistConditionResult out{};

  // Conjugation: F^{-1} R(t=1) F^{-1} equals the twisted R with t = f^{-2}.
  const CMatrix f4 = build_twist(theta_z);
  const CMatrix f4inv = build_twist(-theta_z);
  const Complex f = std::exp(Complex(0, 1) * theta_z);
  const Complex t = 1.0 / (f * f);
  out.conjugation = rel_residual(f4inv * r12(u, q, 1.0) * f4inv, r12(u, q, t));

  // Mixed relations on the triple space (untwisted R in spaces 1,2).
  const CMatrix i2 = ident(2);
  const CMatrix r = kron(r12(u, q, 1.0), i2);
  const CMatrix f12 = twist_pair_on_triple(theta_z, 1, 2);
  const CMatrix f13 = twist_pair_on_triple(theta_z, 1, 3);
  const CMatrix f23 = twist_pair_on_triple(theta_z, 2, 3);
  out.corrected_mixed = rel_residual(r * f13 * f23, f23 * f13 * r);
  out.printed_mixed = rel_residual(r * f12 * f23, f23 * f13 * r);
  out.triple = rel_residual(f12 * f13 * f23, f23 * f13 * f12);
  out.inverse_pair =
      rel_residual(build_twist(theta_z) * build_twist(-theta_z), ident(4));
  return out;
}

}  // namespace qonsager
