#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qfactor/complex_matrix.hpp"

#include <cmath>

using namespace qf;

// ---- independent oracles (kept free of the library's own routines) ----

// Rank by plain Gaussian elimination with partial pivoting.
static int rank_by_elimination(CMat m, double eps) {
  int rank = 0;
  for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
    int piv = -1;
    double best = eps;
    for (int r = rank; r < m.rows(); ++r) {
      if (std::abs(m(r, col)) > best) {
        best = std::abs(m(r, col));
        piv = r;
      }
    }
    if (piv < 0) continue;
    m.row(piv).swap(m.row(rank));
    for (int r = rank + 1; r < m.rows(); ++r) m.row(r) -= (m(r, col) / m(rank, col)) * m.row(rank);
    ++rank;
  }
  return rank;
}

// 2x2 inverse by the adjugate formula.
static CMat inverse2(const CMat& a) {
  CMat out(2, 2);
  Cx det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  out << a(1, 1) / det, -a(0, 1) / det, -a(1, 0) / det, a(0, 0) / det;
  return out;
}

// Polar part of an invertible matrix via a (a*a)^{-1/2}, with the inverse
// square root from a scalar Newton iteration on the Hermitian part.
static CMat polar_by_newton(const CMat& a) {
  // Newton iteration X <- (X + X^{-*})/2 converges to the unitary polar factor.
  CMat x = a;
  for (int it = 0; it < 60; ++it) x = 0.5 * (x + x.adjoint().inverse());
  return x;
}

TEST_CASE("tensor product against direct 2x2 inversion") {
  Rng rng(7);
  CMat a = rng.gaussian_matrix(2, 2), b = rng.gaussian_matrix(2, 2);
  CMat k = tensor_product(a, b);
  REQUIRE(k.rows() == 4);
  // (A kron B)^{-1} = A^{-1} kron B^{-1}; oracle inverts the 2x2 factors directly.
  CMat lhs = k.inverse();
  CMat rhs = tensor_product(inverse2(a), inverse2(b));
  CHECK(operator_norm(lhs - rhs) < 1e-10);
  // index pairing: entry ((i,k),(j,l)) = a(i,j) b(k,l)
  CHECK(std::abs(k(1 * 2 + 0, 0 * 2 + 1) - a(1, 0) * b(0, 1)) < 1e-14);
}

TEST_CASE("tensor product is associative and multiplicative") {
  Rng rng(8);
  CMat a = rng.gaussian_matrix(2, 3), b = rng.gaussian_matrix(3, 2), c = rng.gaussian_matrix(2, 2);
  CHECK(operator_norm(tensor_product(tensor_product(a, b), c) -
                      tensor_product(a, tensor_product(b, c))) < 1e-12);
  CMat a2 = rng.gaussian_matrix(3, 2), b2 = rng.gaussian_matrix(2, 3);
  CHECK(operator_norm(tensor_product(a * a2, b * b2) -
                      tensor_product(a, b) * tensor_product(a2, b2)) < 1e-12);
}

TEST_CASE("operator norm satisfies the C* identity") {
  Rng rng(9);
  CMat a = rng.gaussian_matrix(4, 3);
  double n = operator_norm(a);
  CHECK(std::abs(operator_norm(a.adjoint() * a) - n * n) < 1e-10 * (1 + n * n));
  CHECK(operator_norm(CMat(0, 0)) == 0.0);
}

TEST_CASE("polar partial isometry of an invertible matrix matches Newton polar") {
  Rng rng(10);
  CMat a = rng.gaussian_matrix(4, 4) + 4.0 * CMat::Identity(4, 4);
  CMat v = polar_partial_isometry(a);
  CHECK(operator_norm(v - polar_by_newton(a)) < 1e-9);
  CHECK(operator_norm(v * v.adjoint() - CMat::Identity(4, 4)) < 1e-10);
}

TEST_CASE("polar partial isometry truncates small singular directions") {
  // rank-1 with a tiny second singular value below atol
  CMat u = CMat::Identity(2, 2);
  CMat s = CMat::Zero(2, 2);
  s(0, 0) = 2.0;
  s(1, 1) = 1e-12;
  CMat a = u * s;
  CMat v = polar_partial_isometry(a, Tolerance{1e-9, 1e-9});
  CHECK(matrix_rank(v, 0.5) == 1);
  auto chk = is_partial_isometry(v);
  CHECK(chk.ok);
  CHECK(chk.residual < 1e-12);
  CHECK(operator_norm(polar_partial_isometry(CMat::Zero(3, 2))) == 0.0);
}

TEST_CASE("is_partial_isometry flags near misses with the right residual") {
  CMat v = CMat::Identity(3, 3);
  auto good = is_partial_isometry(v);
  CHECK(good.ok);
  CMat w = 1.1 * v;  // ||w w* w - w|| = |1.1^3 - 1.1|
  auto bad = is_partial_isometry(w);
  CHECK(!bad.ok);
  CHECK(std::abs(bad.residual - (1.1 * 1.1 * 1.1 - 1.1)) < 1e-12);
}

TEST_CASE("span rank against Gaussian elimination") {
  Rng rng(11);
  std::vector<CMat> fam;
  CMat a = rng.gaussian_matrix(3, 3), b = rng.gaussian_matrix(3, 3);
  fam.push_back(a);
  fam.push_back(b);
  fam.push_back(a + b);           // dependent
  fam.push_back(2.0 * a - 0.5 * b);  // dependent
  CMat stacked(9, 4);
  for (int k = 0; k < 4; ++k)
    stacked.col(k) = Eigen::Map<const CVec>(fam[k].data(), 9);
  CHECK(span_rank(fam) == rank_by_elimination(stacked.transpose(), 1e-9));
  CHECK(span_rank(fam) == 2);
  CHECK(span_rank({}) == 0);
}

TEST_CASE("positive sqrt squares back and rejects genuinely negative input") {
  Rng rng(12);
  CMat g = rng.gaussian_matrix(4, 4);
  CMat p = g * g.adjoint();
  CMat r = positive_sqrt(p);
  CHECK(operator_norm(r * r - p) < 1e-10 * (1 + operator_norm(p)));
  CHECK(operator_norm(r - r.adjoint()) < 1e-10);
  // tiny negative eigenvalue within -atol is clamped
  CMat near = -5e-10 * CMat::Identity(2, 2);
  CHECK(operator_norm(positive_sqrt(near, Tolerance{1e-9, 1e-9})) < 1e-9);
  CMat neg = -CMat::Identity(2, 2);
  CHECK_THROWS_AS((void)positive_sqrt(neg), StructuralError);
}

TEST_CASE("kernel and column space bases") {
  CMat a(2, 3);
  a << 1, 0, 1, 0, 1, 1;  // kernel spanned by (1,1,-1)
  CMat k = kernel_basis(a, 1e-9);
  REQUIRE(k.cols() == 1);
  CHECK(operator_norm(a * k) < 1e-12);
  CMat c = column_space_basis(a, 1e-9);
  CHECK(c.cols() == 2);
  CHECK(operator_norm(c.adjoint() * c - CMat::Identity(2, 2)) < 1e-12);
}

TEST_CASE("rng unitary is unitary and deterministic") {
  Rng r1(42), r2(42);
  CMat u1 = r1.unitary(5), u2 = r2.unitary(5);
  CHECK(operator_norm(u1 - u2) == 0.0);
  CHECK(operator_norm(u1.adjoint() * u1 - CMat::Identity(5, 5)) < 1e-12);
}

TEST_CASE("tolerance threshold") {
  Tolerance t{1e-9, 1e-6};
  CHECK(t.threshold(1.0) == 1e-6);
  CHECK(t.threshold(0.0) == 1e-9);
}
