#pragma once
// Dense complex tensor-product linear algebra: Kronecker products, single-site
// embeddings, relative residuals, and 2x2 auxiliary-space operator matrices
// whose entries act on a spin chain.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace qonsager {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
CMatrix sigma_plus();   // [[0,1],[0,0]]
CMatrix sigma_minus();  // [[0,0],[1,0]]
CMatrix ident(Eigen::Index d);
CMatrix qident(int n_sites);  // identity on the 2^n_sites quantum space

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Embeds a 2x2 operator at `site` of an n_sites chain (1-based). Site 1 is
// the RIGHTMOST Kronecker factor; site n_sites the leftmost. Operator strings
// written O_N ... O_1 therefore map onto kron factors in reading order.
CMatrix embed_site(const CMatrix& op, int site, int n_sites);

// ||a - b||_F / max(1, ||a||_F, ||b||_F). Exactly 0 for bitwise-equal inputs.
double rel_residual(const CMatrix& a, const CMatrix& b);

// ||sum_k terms[k]||_F / max(1, max_k ||terms[k]||_F): residual of an
// identity stated as "these terms sum to zero".
double residual_of_sum(const std::vector<CMatrix>& terms);

// Scalar version of residual_of_sum.
double scalar_residual_of_sum(const std::vector<Complex>& terms);

// rel_residual(xy, yx).
double commutator_residual(const CMatrix& x, const CMatrix& y);

bool all_finite(const CMatrix& m);

// A 2x2 matrix in one auxiliary space whose entries are operators on an
// n_sites quantum space. In full-space embeddings the auxiliary factors sit
// to the LEFT of the quantum space: aux_1 (x) ... (x) aux_m (x) quantum.
struct AuxOperator {
  int n_sites = 0;
  // Row-major blocks: [0]=(1,1), [1]=(1,2), [2]=(2,1), [3]=(2,2).
  std::array<CMatrix, 4> blocks;

  AuxOperator() = default;
  explicit AuxOperator(int n);  // zero blocks on n sites

  // Promotes a 2x2 scalar matrix: block(i,j) = k2(i,j) * qident(n_sites).
  static AuxOperator from_scalar_matrix(const CMatrix& k2, int n_sites);
  static AuxOperator identity(int n_sites);

  const CMatrix& block(int r, int c) const { return blocks[std::size_t(2 * r + c)]; }
  CMatrix& block(int r, int c) { return blocks[std::size_t(2 * r + c)]; }

  AuxOperator operator*(const AuxOperator& o) const;
  AuxOperator operator+(const AuxOperator& o) const;
  AuxOperator operator-(const AuxOperator& o) const;
  AuxOperator scaled(const Complex& s) const;

  // Transpose in the auxiliary index only; quantum entries are untouched.
  AuxOperator transpose_aux() const;

  // Applies a 2x2 scalar map in the auxiliary index: result = m2 * this (or
  // this * m2), entries of m2 multiplying the operator blocks.
  AuxOperator aux_left_multiply(const CMatrix& m2) const;
  AuxOperator aux_right_multiply(const CMatrix& m2) const;

  CMatrix trace_aux() const;  // block(0,0) + block(1,1)

  // Full matrix on aux_1 (x) ... (x) aux_m (x) quantum, with this operator's
  // auxiliary index in slot `which` (1-based) of n_aux auxiliary slots.
  CMatrix embed(int which, int n_aux) const;

  // Max over the four blocks of rel_residual against o's blocks.
  double diff(const AuxOperator& o) const;

  double norm() const;  // Frobenius norm of embed(1, 1)
};

}  // namespace qonsager
