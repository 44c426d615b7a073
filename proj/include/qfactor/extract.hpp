#pragma once

// Concrete actions of a finite quantum group on a finite-dimensional
// C*-algebra: fixed point data, isotypic components, multiplicity modules
// over the fixed point algebra, freeness tests, and extraction of a factor
// system from frame coisometries of a free action.

#include "qfactor/cstar.hpp"
#include "qfactor/factor_system.hpp"
#include "qfactor/quantum_group.hpp"
#include "qfactor/reconstruct.hpp"
#include "qfactor/star_algebra.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace qf {

// Action of the quantum group on a *-algebra, given by the coefficient
// matrices alpha[i](j, k) of e_j x g_k in alpha(e_i).
struct DynamicalSystem {
  StarAlgebra a;
  std::shared_ptr<const Catalog> cat;
  std::vector<CMat> alpha;

  ValidationReport validate(const Tolerance& tol = {}) const;
};

DynamicalSystem dynamical_system_of(const GradedAlgebra& g);

// B x G with the coaction id x Delta on the right tensor factor.
DynamicalSystem ds_tensor_trivial(const BlockAlgebra& b, std::shared_ptr<const Catalog> cat);

// M_2 graded over Z/2 with the diagonal in degree zero; cat must be dual:z2.
DynamicalSystem m2_gauge_ds(std::shared_ptr<const Catalog> cat);

// a |-> a x 1 on C^2; satisfies the coaction axioms but is not free.
DynamicalSystem trivial_coaction_ds(std::shared_ptr<const Catalog> cat);

// Conditional expectation (id x h) alpha onto the fixed point subalgebra.
CMat fixed_point_projection(const DynamicalSystem& ds);

struct FixedPointData {
  CMat basis;  // orthonormal columns spanning the fixed point subalgebra
  StarAlgebra sub;
  WedderburnDecomp wb;
};
FixedPointData fixed_point_data(const DynamicalSystem& ds, const Tolerance& tol = {});

// Spectral projection onto the isotypic component of a catalog irrep.
CMat isotypic_projection(const DynamicalSystem& ds, int irrep);

// Orthonormal kernel basis of the tuples x in A^d satisfying
// sum_j (1 x u_ij) alpha(x_j) = x_i x 1, in the flat layout j * dim A + mu.
CMat multiplicity_space(const DynamicalSystem& ds, const GMatrix& u);
CMat multiplicity_space(const DynamicalSystem& ds, int irrep);

// The span of the basis columns as a right Hilbert module over the fixed
// point algebra, with pairing <x, y> = sum_v x_v^* y_v.
MoritaModule multiplicity_module(const DynamicalSystem& ds, const FixedPointData& fp,
                                 const CMat& basis, const Tolerance& tol = {});

// Row coisometry with entries in A built from a Parseval frame of the
// multiplicity module. Throws IntegrityError when s s^* != 1, which happens
// exactly when the action fails to be free at the irrep.
GMatrix coisometry_for(const DynamicalSystem& ds, int irrep, std::uint64_t seed = 1,
                       const Tolerance& tol = {});

struct Extraction {
  FactorSystem fs;
  FixedPointData fixed;
  std::vector<GMatrix> s;   // frame coisometry per catalog irrep
  std::vector<CMat> bases;  // multiplicity space basis per catalog irrep
};

// Factor system of a free action: the base is the block picture of the fixed
// point algebra, gamma and omega are read off the frame coisometries. The
// seed rotates the multiplicity bases, so different seeds give conjugate
// systems. Throws IntegrityError when the action is not free.
Extraction factor_system_of(const DynamicalSystem& ds, std::uint64_t seed = 1,
                            const Tolerance& tol = {});

// Density criterion: (A x 1) alpha(A) spans A x G.
FreenessResult check_free_ellwood(const DynamicalSystem& ds, const Tolerance& tol = {});

// Multiplication criterion: products of multiplicity spaces exhaust the
// multiplicity space of every tensor product of irreducibles.
FreenessResult check_free_m_surjective(const DynamicalSystem& ds, const Tolerance& tol = {});

}  // namespace qf
