#pragma once

// Rebuilding a graded *-algebra with coaction from a factor system: the
// multiplicity spaces Gamma(V), the multiplication maps between them, the
// unitary tensor functor obligations, and the full algebra assembly.

#include "qfactor/factor_system.hpp"
#include "qfactor/star_algebra.hpp"

#include <memory>
#include <vector>

namespace qf {

// Orthonormal complex basis of the range of gamma(1) inside H x B,
// elements stored as column matrices over the base algebra.
struct GammaSpace {
  int rows = 0;
  int cdim = 0;
  std::vector<BMat> basis;

  CVec coords(const BMat& x) const;
  BMat combine(const CVec& c) const;
};

GammaSpace gamma_space(const FactorSystem& fs, int irrep);
GammaSpace gamma_space(const FactorSystem& fs, const RepDecomp& d);

// m(x, y) in the stacked multiplicity coordinates of the fused pair
BMat mult_map(const FactorSystem& fs, int i, int j, const BMat& x, const BMat& y);

// dual of the adjoint of the k-th fusion isometry of (i, j): an intertwiner
// from conj(sigma_k) into conj(j) x conj(i), built from the R solutions
CMat dual_morphism(const Catalog& c, int i, int j, int k);

ValidationReport verify_unitary_tensor_functor(const FactorSystem& fs, const Tolerance& tol = {});

// Direct sum over the catalog of V_pi x Gamma(conj V_pi), with the fused
// product, the involution routed through the R solutions, and the coaction
// on the first leg. Basis order: irreps in catalog order, then the V index,
// then the Gamma basis index.
struct GradedAlgebra {
  StarAlgebra alg;
  BlockAlgebra base;
  std::shared_ptr<const Catalog> cat;
  std::vector<CMat> coaction;  // coaction[i](j, g): coefficient of e_j x g_g in alpha(e_i)
  std::vector<int> offsets;
  std::vector<int> mdim;
  std::vector<GammaSpace> gs;  // gamma space per irrep

  int flat(int irrep, int v, int mult) const { return offsets[irrep] + v * mdim[irrep] + mult; }
};

GradedAlgebra build_algebra(const FactorSystem& fs, const Tolerance& tol = {});

struct FreenessResult {
  bool free = true;
  std::string evidence;
};

FreenessResult check_free_m_surjective(const FactorSystem& fs, const Tolerance& tol = {});

}  // namespace qf
