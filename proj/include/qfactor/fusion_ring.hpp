#pragma once

// The Grothendieck ring of the irreducible corepresentations, its positive
// ring homomorphisms, and the associated random walk transition matrices.

#include "qfactor/complex_matrix.hpp"
#include "qfactor/quantum_group.hpp"

#include <string>
#include <vector>

namespace qf {

struct FusionRing {
  std::vector<std::string> labels;
  std::vector<int> dims;
  std::vector<int> conj;
  std::vector<std::vector<std::vector<int>>> mult;  // mult[i][j][k] = multiplicity of k in i x j

  int size() const { return static_cast<int>(labels.size()); }
  Eigen::MatrixXd mult_matrix(int i) const;  // (k, j) entry = mult[i][j][k]
  void validate() const;
};

FusionRing fusion_ring(const Catalog& cat);

// All ring homomorphisms into the reals with strictly positive values,
// found by damped Gauss-Newton from the dimension vector and random starts.
std::vector<Eigen::VectorXd> positive_ring_homs(const FusionRing& fr,
                                                unsigned long long seed = 1, double atol = 1e-9);

// Row-stochastic transition matrix of the random walk on the classes driven
// by tensoring with pi, weighted by the positive homomorphism r.
Eigen::MatrixXd stochastic_matrix(const FusionRing& fr, int pi, const Eigen::VectorXd& r);

}  // namespace qf
