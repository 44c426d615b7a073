#include "qfactor/complex_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace qf {

void ValidationReport::add(const std::string& name, double res, double threshold) {
  checks.push_back({name, res <= threshold, res});
  ok = ok && res <= threshold;
  if (res > residual) residual = res;
}

std::string ValidationReport::first_failure() const {
  for (const NamedCheck& c : checks)
    if (!c.ok) return c.name;
  return "";
}

bool all_finite(const CMat& a) {
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
  return true;
}

void require_finite(const CMat& a, const char* where) {
  if (!all_finite(a)) throw StructuralError(std::string(where) + ": non-finite entry");
}

double operator_norm(const CMat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(a);
  return svd.singularValues()(0);
}

CMat tensor_product(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat polar_partial_isometry(const CMat& a, const Tolerance& tol) {
  if (a.rows() == 0 || a.cols() == 0) return a;
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  CMat out = CMat::Zero(a.rows(), a.cols());
  for (int k = 0; k < sv.size(); ++k) {
    if (sv(k) > tol.atol) out += svd.matrixU().col(k) * svd.matrixV().col(k).adjoint();
  }
  return out;
}

CheckOutcome is_partial_isometry(const CMat& a, const Tolerance& tol) {
  double r = operator_norm(a * a.adjoint() * a - a);
  return {r <= tol.threshold(std::max(1.0, operator_norm(a))), r};
}

int matrix_rank(const CMat& a, double atol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(a);
  int r = 0;
  for (int k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) > atol) ++r;
  return r;
}

int span_rank(const std::vector<CMat>& family, const Tolerance& tol) {
  if (family.empty()) return 0;
  const auto rows = family[0].rows(), cols = family[0].cols();
  CMat stacked(rows * cols, static_cast<int>(family.size()));
  for (size_t k = 0; k < family.size(); ++k) {
    if (family[k].rows() != rows || family[k].cols() != cols)
      throw StructuralError("span_rank: mixed shapes in family");
    stacked.col(static_cast<int>(k)) = Eigen::Map<const CVec>(family[k].data(), rows * cols);
  }
  // Scale-aware threshold: rank relative to the family's own magnitude.
  double scale = 0.0;
  for (const auto& m : family) scale = std::max(scale, operator_norm(m));
  return matrix_rank(stacked, tol.threshold(scale));
}

CMat positive_sqrt(const CMat& a, const Tolerance& tol) {
  if (a.rows() != a.cols()) throw StructuralError("positive_sqrt: not square");
  double herm = operator_norm(a - a.adjoint());
  if (herm > tol.threshold(operator_norm(a)))
    throw StructuralError("positive_sqrt: not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> es((a + a.adjoint()) / 2.0);
  Eigen::VectorXd ev = es.eigenvalues();
  for (int k = 0; k < ev.size(); ++k) {
    if (ev(k) < -tol.threshold(std::max(1.0, ev.cwiseAbs().maxCoeff())))
      throw StructuralError("positive_sqrt: negative eigenvalue " + std::to_string(ev(k)));
    if (ev(k) < 0) ev(k) = 0;
  }
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

CMat column_space_basis(const CMat& a, double atol) {
  if (a.rows() == 0 || a.cols() == 0) return CMat(a.rows(), 0);
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU);
  int r = 0;
  for (int k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) > atol) ++r;
  return svd.matrixU().leftCols(r);
}

CMat kernel_basis(const CMat& a, double atol) {
  if (a.cols() == 0) return CMat(0, 0);
  if (a.rows() == 0) return CMat::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullV);
  int r = 0;
  for (int k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) > atol) ++r;
  return svd.matrixV().rightCols(a.cols() - r);
}

CVec lstsq(const CMat& a, const CVec& b) {
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.solve(b);
}

// splitmix64; deterministic across platforms, unlike distribution adapters.
Rng::Rng(unsigned long long seed) : state(seed + 0x9e3779b97f4a7c15ULL) {}

static unsigned long long next_u64(unsigned long long& s) {
  s += 0x9e3779b97f4a7c15ULL;
  unsigned long long z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::gaussian() {
  // Box-Muller on two uniforms from splitmix64.
  double u1 = (next_u64(state) >> 11) * 0x1.0p-53;
  double u2 = (next_u64(state) >> 11) * 0x1.0p-53;
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

CMat Rng::gaussian_matrix(int rows, int cols) {
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Cx(gaussian(), gaussian());
  return m;
}

CMat Rng::unitary(int n) {
  Eigen::HouseholderQR<CMat> qr(gaussian_matrix(n, n));
  CMat q = qr.householderQ() * CMat::Identity(n, n);
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    Cx d = r(k, k);
    double m = std::abs(d);
    q.col(k) *= (m > 0 ? d / m : Cx(1, 0));
  }
  return q;
}

}  // namespace qf
