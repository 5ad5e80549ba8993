#include "qonsager/linalg.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace qonsager;

TEST_CASE("relative residual has the pinned normalization") {
  const CMatrix i2 = ident(2);
  // ||I - 2I||_F / max(1, ||I||_F, ||2I||_F) = sqrt(2) / (2 sqrt(2)) = 1/2.
  CHECK(rel_residual(i2, 2.0 * i2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rel_residual(i2, i2) == 0.0);
  CHECK_THROWS_AS((void)rel_residual(i2, ident(3)), std::invalid_argument);
}

TEST_CASE("residual of a sum uses the largest term as scale") {
  const CMatrix i2 = ident(2);
  CHECK(residual_of_sum({i2, -i2}) == 0.0);
  // ||I||_F / max(1, ||I||_F) = 1 for a single identity term.
  CHECK(residual_of_sum({i2}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(scalar_residual_of_sum({Complex(1), Complex(-1)}) == 0.0);
  CHECK(scalar_residual_of_sum({Complex(3), Complex(4)}) ==
        doctest::Approx(1.75).epsilon(1e-15));
}

TEST_CASE("kron places the raising-lowering product at the pinned position") {
  const CMatrix k = kron(sigma_plus(), sigma_minus());
  REQUIRE(k.rows() == 4);
  REQUIRE(k.cols() == 4);
  int nonzero = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (std::abs(k(r, c)) > 0) ++nonzero;
  CHECK(nonzero == 1);
  // Row-major flat index 6 = (row 1, col 2).
  CHECK(k(1, 2) == Complex(1.0));
}

TEST_CASE("kron is associative and multiplicative") {
  CMatrix a(2, 2), b(2, 2), c(2, 2);
  a << Complex(1, 2), Complex(0, -1), Complex(3, 0), Complex(-2, 1);
  b << Complex(0, 1), Complex(2, 2), Complex(1, -3), Complex(4, 0);
  c << Complex(-1, 0), Complex(1, 1), Complex(0, 2), Complex(2, -1);
  CHECK(rel_residual(kron(kron(a, b), c), kron(a, kron(b, c))) == 0.0);
  CHECK(rel_residual(kron(a * b, c * c), kron(a, c) * kron(b, c)) < 1e-14);
}

TEST_CASE("site embedding: site 1 is the rightmost factor") {
  const CMatrix z = pauli_z();
  CHECK(rel_residual(embed_site(z, 1, 2), kron(ident(2), z)) == 0.0);
  CHECK(rel_residual(embed_site(z, 2, 2), kron(z, ident(2))) == 0.0);

  // Different sites commute exactly.
  const CMatrix x1 = embed_site(pauli_x(), 1, 3);
  const CMatrix z3 = embed_site(pauli_z(), 3, 3);
  CHECK(rel_residual(x1 * z3, z3 * x1) == 0.0);

  CHECK_THROWS_AS((void)embed_site(z, 0, 3), std::out_of_range);
  CHECK_THROWS_AS((void)embed_site(z, 4, 3), std::out_of_range);
  CHECK_THROWS_AS((void)embed_site(ident(3), 1, 2), std::invalid_argument);
}

TEST_CASE("auxiliary-space operators embed and multiply consistently") {
  CMatrix k2(2, 2);
  k2 << Complex(1, 1), Complex(2, -1), Complex(0, 3), Complex(-1, 0);
  const AuxOperator a = AuxOperator::from_scalar_matrix(k2, 1);
  CHECK(rel_residual(a.embed(1, 1), kron(k2, ident(2))) == 0.0);

  AuxOperator b(1);
  b.block(0, 0) = pauli_x();
  b.block(0, 1) = sigma_plus();
  b.block(1, 0) = pauli_z();
  b.block(1, 1) = sigma_minus();
  CHECK(rel_residual((a * b).embed(1, 1), a.embed(1, 1) * b.embed(1, 1)) < 1e-14);
  CHECK(rel_residual((a + b).embed(1, 1), a.embed(1, 1) + b.embed(1, 1)) == 0.0);

  // Trace over the auxiliary index.
  CHECK(rel_residual(b.trace_aux(), pauli_x() + sigma_minus()) == 0.0);

  // Auxiliary transpose is an involution and swaps the off-diagonal blocks.
  CHECK(b.transpose_aux().transpose_aux().diff(b) == 0.0);
  CHECK(rel_residual(b.transpose_aux().block(0, 1), pauli_z()) == 0.0);

  // Left/right scalar action in the auxiliary index.
  CMatrix m2(2, 2);
  m2 << Complex(2, 0), Complex(1, -1), Complex(0, 1), Complex(-3, 2);
  CHECK(rel_residual(b.aux_left_multiply(m2).embed(1, 1),
                     kron(m2, ident(2)) * b.embed(1, 1)) < 1e-14);
  CHECK(rel_residual(b.aux_right_multiply(m2).embed(1, 1),
                     b.embed(1, 1) * kron(m2, ident(2))) < 1e-14);
}

TEST_CASE("auxiliary slot placement in multi-aux embeddings") {
  CMatrix k2(2, 2);
  k2 << Complex(1, 0), Complex(2, 1), Complex(-1, 1), Complex(0, -2);
  const AuxOperator a = AuxOperator::from_scalar_matrix(k2, 0);
  CHECK(rel_residual(a.embed(1, 2), kron(k2, ident(2))) == 0.0);
  CHECK(rel_residual(a.embed(2, 2), kron(ident(2), k2)) == 0.0);
}

TEST_CASE("commutator residual of anticommuting matrices is two") {
  CHECK(commutator_residual(pauli_x(), pauli_z()) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(commutator_residual(pauli_x(), pauli_x()) == 0.0);
}

TEST_CASE("finiteness guard") {
  CMatrix m = ident(2);
  CHECK(all_finite(m));
  m(0, 0) = Complex(std::numeric_limits<double>::infinity(), 0);
  CHECK(!all_finite(m));
}
