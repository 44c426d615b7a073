#include "qfactor/fusion_ring.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace qf {

Eigen::MatrixXd FusionRing::mult_matrix(int i) const {
  const int m = size();
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) t(k, j) = mult[i][j][k];
  return t;
}

void FusionRing::validate() const {
  const int m = size();
  if (static_cast<int>(dims.size()) != m || static_cast<int>(conj.size()) != m ||
      static_cast<int>(mult.size()) != m)
    throw StructuralError("fusion ring tables have mismatched sizes");
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      long sum = 0;
      for (int k = 0; k < m; ++k) {
        int n = mult[i][j][k];
        if (n < 0) throw IntegrityError("fusion ring: negative multiplicity");
        sum += static_cast<long>(n) * dims[k];
      }
      if (sum != static_cast<long>(dims[i]) * dims[j])
        throw IntegrityError("fusion ring: dimensions are not multiplicative at (" + labels[i] +
                             ", " + labels[j] + ")");
      if (mult[i][j][0] != (conj[i] == j ? 1 : 0))
        throw IntegrityError("fusion ring: trivial multiplicities disagree with conjugation");
      if (mult[0][i][j] != (i == j ? 1 : 0) || mult[i][0][j] != (i == j ? 1 : 0))
        throw IntegrityError("fusion ring: the trivial class is not a unit");
    }
}

FusionRing fusion_ring(const Catalog& cat) {
  FusionRing fr;
  const int m = static_cast<int>(cat.irreps.size());
  for (const Irrep& p : cat.irreps) {
    fr.labels.push_back(p.label);
    fr.dims.push_back(p.dim);
    fr.conj.push_back(p.conj);
  }
  fr.mult.assign(m, std::vector<std::vector<int>>(m, std::vector<int>(m, 0)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) fr.mult[i][j][k] = cat.fusion_mult(i, j, k);
  return fr;
}

namespace {

Eigen::VectorXd hom_residual(const FusionRing& fr, const Eigen::VectorXd& r) {
  const int m = fr.size();
  Eigen::VectorXd f(m * m + 1);
  int idx = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double s = r(i) * r(j);
      for (int k = 0; k < m; ++k) s -= fr.mult[i][j][k] * r(k);
      f(idx++) = s;
    }
  f(idx) = r(0) - 1.0;
  return f;
}

Eigen::MatrixXd hom_jacobian(const FusionRing& fr, const Eigen::VectorXd& r) {
  const int m = fr.size();
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(m * m + 1, m);
  int idx = 0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      j(idx, a) += r(b);
      j(idx, b) += r(a);
      for (int k = 0; k < m; ++k) j(idx, k) -= fr.mult[a][b][k];
      ++idx;
    }
  j(idx, 0) = 1.0;
  return j;
}

}  // namespace

std::vector<Eigen::VectorXd> positive_ring_homs(const FusionRing& fr, unsigned long long seed,
                                                double atol) {
  const int m = fr.size();
  std::vector<Eigen::VectorXd> found;
  Rng rng(seed);
  const int starts = 48;
  for (int trial = 0; trial < starts; ++trial) {
    Eigen::VectorXd r(m);
    for (int i = 0; i < m; ++i)
      r(i) = trial == 0 ? fr.dims[i] : fr.dims[i] * std::exp(0.7 * rng.gaussian());
    bool ok = false;
    for (int it = 0; it < 80 && !ok; ++it) {
      Eigen::VectorXd f = hom_residual(fr, r);
      double cur = f.norm();
      if (cur < atol) {
        ok = true;
        break;
      }
      Eigen::VectorXd step = hom_jacobian(fr, r).colPivHouseholderQr().solve(-f);
      double lam = 1.0;
      bool moved = false;
      for (int h = 0; h < 25 && !moved; ++h) {
        Eigen::VectorXd cand = r + lam * step;
        if (hom_residual(fr, cand).norm() < cur) {
          r = cand;
          moved = true;
        }
        lam *= 0.5;
      }
      if (!moved) break;
    }
    if (!ok && hom_residual(fr, r).norm() >= atol) continue;
    if (r.minCoeff() <= 1e-6) continue;
    bool dup = false;
    for (const auto& q : found)
      if ((q - r).lpNorm<Eigen::Infinity>() <= 1e-7 * std::max(1.0, q.lpNorm<Eigen::Infinity>()))
        dup = true;
    if (!dup) found.push_back(r);
  }
  std::sort(found.begin(), found.end(), [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    for (int i = 0; i < x.size(); ++i)
      if (std::abs(x(i) - y(i)) > 1e-9) return x(i) < y(i);
    return false;
  });
  return found;
}

Eigen::MatrixXd stochastic_matrix(const FusionRing& fr, int pi, const Eigen::VectorXd& r) {
  const int m = fr.size();
  if (static_cast<int>(r.size()) != m)
    throw StructuralError("stochastic_matrix: weight vector has the wrong size");
  if (pi < 0 || pi >= m) throw StructuralError("stochastic_matrix: class index out of range");
  if (r.minCoeff() <= 0.0)
    throw StructuralError("stochastic_matrix: weights must be strictly positive");
  Eigen::MatrixXd t(m, m);
  for (int rho = 0; rho < m; ++rho)
    for (int sg = 0; sg < m; ++sg) t(rho, sg) = fr.mult[rho][pi][sg] * r(sg) / (r(rho) * r(pi));
  return t;
}

}  // namespace qf
