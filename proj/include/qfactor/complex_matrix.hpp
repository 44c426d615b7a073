#pragma once

// Dense complex linear algebra used by every other module.  Matrices are
// Eigen matrices; the JSON layer fixes row-major semantics for exchange.

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qf {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Cx = std::complex<double>;

// Structural problems (bad shapes, malformed input, inconsistent data).
struct StructuralError : std::runtime_error {
  explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency failures (a passed precondition later contradicted).
struct IntegrityError : std::runtime_error {
  explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

struct Tolerance {
  double atol = 1e-9;
  double rtol = 1e-9;
  // Pass/fail threshold for a residual whose inputs have the given scale.
  double threshold(double scale = 1.0) const {
    return atol > rtol * scale ? atol : rtol * scale;
  }
};

struct CheckOutcome {
  bool ok = false;
  double residual = 0.0;
};

struct NamedCheck {
  std::string name;
  bool ok = false;
  double residual = 0.0;
};

// Accumulated pass/fail record of a family of residual checks.
struct ValidationReport {
  std::vector<NamedCheck> checks;
  bool ok = true;
  double residual = 0.0;

  void add(const std::string& name, double res, double threshold);
  std::string first_failure() const;
};

bool all_finite(const CMat& a);
void require_finite(const CMat& a, const char* where);

// Largest singular value; 0x0 gives 0.
double operator_norm(const CMat& a);

// Kronecker product, row-major index pairing: (i,k),(j,l) -> entry a(i,j)*b(k,l).
CMat tensor_product(const CMat& a, const CMat& b);

// Polar part of a: singular directions with sigma <= tol.atol are dropped,
// the rest are mapped to 1.  Zero matrix stays zero.
CMat polar_partial_isometry(const CMat& a, const Tolerance& tol = {});

// ||a a* a - a|| in operator norm, compared against tol.
CheckOutcome is_partial_isometry(const CMat& a, const Tolerance& tol = {});

// Numerical rank of the span of a family of equally-shaped matrices
// (flattened); empty family has rank 0.
int span_rank(const std::vector<CMat>& family, const Tolerance& tol = {});

// Rank of a single matrix by absolute singular-value threshold.
int matrix_rank(const CMat& a, double atol);

// Positive square root of a Hermitian positive semidefinite matrix.
// Eigenvalues in [-atol, 0) are clamped to 0; more negative ones throw.
CMat positive_sqrt(const CMat& a, const Tolerance& tol = {});

// Orthonormal basis of the column span (columns of the result).
CMat column_space_basis(const CMat& a, double atol);

// Orthonormal basis of the kernel (columns of the result).
CMat kernel_basis(const CMat& a, double atol);

// Least-squares solve min ||A x - b|| via SVD.
CVec lstsq(const CMat& a, const CVec& b);

// Deterministic pseudo-random data for searches and probes.
struct Rng {
  explicit Rng(unsigned long long seed);
  double gaussian();
  CMat gaussian_matrix(int rows, int cols);
  CMat unitary(int n);  // Haar-ish via QR of a Gaussian matrix
  unsigned long long state;
};

}  // namespace qf
