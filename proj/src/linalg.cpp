#include "qonsager/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qonsager {

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix sigma_plus() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1;
  return m;
}

CMatrix sigma_minus() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(1, 0) = 1;
  return m;
}

CMatrix ident(Eigen::Index d) { return CMatrix::Identity(d, d); }

CMatrix qident(int n_sites) {
  if (n_sites < 0) throw std::invalid_argument("qident: negative site count");
  return ident(Eigen::Index(1) << n_sites);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix embed_site(const CMatrix& op, int site, int n_sites) {
  if (op.rows() != 2 || op.cols() != 2)
    throw std::invalid_argument("embed_site: operator must be 2x2");
  if (site < 1 || site > n_sites)
    throw std::out_of_range("embed_site: site index out of range");
  // site 1 is the rightmost factor.
  return kron(qident(n_sites - site), kron(op, qident(site - 1)));
}

double rel_residual(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("rel_residual: dimension mismatch");
  const double na = a.norm();
  const double nb = b.norm();
  return (a - b).norm() / std::max({1.0, na, nb});
}

double residual_of_sum(const std::vector<CMatrix>& terms) {
  if (terms.empty()) return 0.0;
  CMatrix sum = terms.front();
  double max_norm = terms.front().norm();
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i].rows() != sum.rows() || terms[i].cols() != sum.cols())
      throw std::invalid_argument("residual_of_sum: dimension mismatch");
    sum += terms[i];
    max_norm = std::max(max_norm, terms[i].norm());
  }
  return sum.norm() / std::max(1.0, max_norm);
}

double scalar_residual_of_sum(const std::vector<Complex>& terms) {
  Complex sum = 0;
  double max_mag = 0;
  for (const Complex& t : terms) {
    sum += t;
    max_mag = std::max(max_mag, std::abs(t));
  }
  return std::abs(sum) / std::max(1.0, max_mag);
}

double commutator_residual(const CMatrix& x, const CMatrix& y) {
  return rel_residual(x * y, y * x);
}

bool all_finite(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

AuxOperator::AuxOperator(int n) : n_sites(n) {
  const Eigen::Index d = Eigen::Index(1) << n;
  for (auto& b : blocks) b = CMatrix::Zero(d, d);
}

AuxOperator AuxOperator::from_scalar_matrix(const CMatrix& k2, int n) {
  if (k2.rows() != 2 || k2.cols() != 2)
    throw std::invalid_argument("AuxOperator::from_scalar_matrix: need a 2x2 matrix");
  AuxOperator out(n);
  const CMatrix id = qident(n);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.block(r, c) = k2(r, c) * id;
  return out;
}

AuxOperator AuxOperator::identity(int n) { return from_scalar_matrix(ident(2), n); }

AuxOperator AuxOperator::operator*(const AuxOperator& o) const {
  if (n_sites != o.n_sites)
    throw std::invalid_argument("AuxOperator::operator*: site-count mismatch");
  AuxOperator out(n_sites);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      out.block(r, c) = block(r, 0) * o.block(0, c) + block(r, 1) * o.block(1, c);
  return out;
}

AuxOperator AuxOperator::operator+(const AuxOperator& o) const {
  if (n_sites != o.n_sites)
    throw std::invalid_argument("AuxOperator::operator+: site-count mismatch");
  AuxOperator out(n_sites);
  for (int i = 0; i < 4; ++i) out.blocks[std::size_t(i)] = blocks[std::size_t(i)] + o.blocks[std::size_t(i)];
  return out;
}

AuxOperator AuxOperator::operator-(const AuxOperator& o) const {
  return *this + o.scaled(-1.0);
}

AuxOperator AuxOperator::scaled(const Complex& s) const {
  AuxOperator out(n_sites);
  for (int i = 0; i < 4; ++i) out.blocks[std::size_t(i)] = s * blocks[std::size_t(i)];
  return out;
}

AuxOperator AuxOperator::transpose_aux() const {
  AuxOperator out = *this;
  std::swap(out.blocks[1], out.blocks[2]);
  return out;
}

AuxOperator AuxOperator::aux_left_multiply(const CMatrix& m2) const {
  AuxOperator out(n_sites);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      out.block(r, c) = m2(r, 0) * block(0, c) + m2(r, 1) * block(1, c);
  return out;
}

AuxOperator AuxOperator::aux_right_multiply(const CMatrix& m2) const {
  AuxOperator out(n_sites);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      out.block(r, c) = block(r, 0) * m2(0, c) + block(r, 1) * m2(1, c);
  return out;
}

CMatrix AuxOperator::trace_aux() const { return block(0, 0) + block(1, 1); }

CMatrix AuxOperator::embed(int which, int n_aux) const {
  if (which < 1 || which > n_aux)
    throw std::out_of_range("AuxOperator::embed: auxiliary slot out of range");
  const CMatrix left = ident(Eigen::Index(1) << (which - 1));
  const CMatrix right = ident(Eigen::Index(1) << (n_aux - which));
  const Eigen::Index dq = blocks[0].rows();
  const Eigen::Index dim = (Eigen::Index(1) << n_aux) * dq;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      CMatrix e = CMatrix::Zero(2, 2);
      e(r, c) = 1;
      out += kron(left, kron(e, kron(right, block(r, c))));
    }
  return out;
}

double AuxOperator::diff(const AuxOperator& o) const {
  if (n_sites != o.n_sites)
    throw std::invalid_argument("AuxOperator::diff: site-count mismatch");
  double worst = 0;
  for (int i = 0; i < 4; ++i)
    worst = std::max(worst, rel_residual(blocks[std::size_t(i)], o.blocks[std::size_t(i)]));
  return worst;
}

double AuxOperator::norm() const {
  double s = 0;
  for (const auto& b : blocks) s += b.squaredNorm();
  return std::sqrt(s);
}

}  // namespace qonsager
