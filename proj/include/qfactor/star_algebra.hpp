#pragma once

// Finite-dimensional *-algebras on a fixed basis, their numeric Wedderburn
// decomposition onto a multimatrix algebra, and basic constructions
// (subalgebras, tensor products, matrix models).

#include "qfactor/complex_matrix.hpp"
#include "qfactor/cstar.hpp"
#include "qfactor/quantum_group.hpp"

#include <vector>

namespace qf {

struct StarAlgebra {
  int dim = 0;
  std::vector<std::vector<CVec>> mult_t;  // mult_t[i][j] = coordinates of e_i e_j
  CVec unit_v;
  CMat star_m;  // star(x) = star_m * conj(x)

  CVec prod(const CVec& x, const CVec& y) const;
  CVec star(const CVec& x) const;
  CMat left_mult_matrix(const CVec& x) const;
  CMat right_mult_matrix(const CVec& x) const;
  Cx trace_of(const CVec& x) const;  // normalized trace of the left regular representation
  void validate(const Tolerance& tol = {}) const;
};

struct WedderburnDecomp {
  BlockAlgebra blocks;
  std::vector<BMat> phi;  // image of each basis element
  CMat phi_m;             // basis coordinates -> flat block coordinates
  CMat phi_inv_m;
  double residual = 0.0;

  BMat apply(const CVec& x) const;
  CVec invert(const BMat& b) const;
};

WedderburnDecomp wedderburn(const StarAlgebra& a, unsigned long long seed = 1);
int center_dimension(const StarAlgebra& a, double atol = 1e-9);

// Induced structure on a linearly independent family whose span is closed
// under products, star, and contains the unit. Throws otherwise.
StarAlgebra subalgebra_from_basis(const StarAlgebra& a, const std::vector<CVec>& basis,
                                  const Tolerance& tol = {});

StarAlgebra algebra_of_blocks(const BlockAlgebra& b);
StarAlgebra algebra_of_quantum_group(const QuantumGroup& g);
StarAlgebra tensor_algebra(const StarAlgebra& x, const StarAlgebra& y);

// Coaction axioms for a linear map alpha: A -> A x G given by coefficient
// matrices alpha[i](j, k) of e_j x g_k in alpha(e_i): unital, *-compatible,
// multiplicative, coassociative, injective, and spanning density of the
// translates (1 x G) alpha(A).
ValidationReport verify_coaction(const StarAlgebra& a, const QuantumGroup& g,
                                 const std::vector<CMat>& alpha, const Tolerance& tol = {});

}  // namespace qf
