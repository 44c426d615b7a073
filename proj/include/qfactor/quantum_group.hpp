#pragma once

// Finite-dimensional Hopf *-algebras with a faithful invariant state, given
// by structure tensors on a fixed basis. Corepresentations are matrices over
// the algebra; the catalog lists the irreducibles with fusion isometries and
// normalized solutions of the conjugate equations. Only the tracial (Kac)
// case is supported and validate() enforces it.

#include "qfactor/complex_matrix.hpp"
#include "qfactor/group_table.hpp"

#include <string>
#include <vector>

namespace qf {

// Matrix with entries in the algebra; each entry is a coordinate vector.
struct GMatrix {
  int rows = 0, cols = 0, gdim = 0;
  std::vector<CVec> ent;  // row-major
  CVec& at(int i, int j) { return ent[i * cols + j]; }
  const CVec& at(int i, int j) const { return ent[i * cols + j]; }
  static GMatrix zero(int r, int c, int gdim);
};

struct QuantumGroup {
  std::string name;
  int dim = 0;
  std::vector<std::vector<CVec>> mult_t;  // mult_t[i][j] = coordinates of e_i e_j
  CVec unit_v;
  std::vector<CMat> comult_t;  // comult_t[i](a,b) = coefficient of e_a x e_b in Delta(e_i)
  CVec counit_v;
  CMat star_m;  // star(x) = star_m * conj(x)
  CVec haar_v;
  CMat gram;  // gram(i,j) = h(e_i^* e_j)

  CVec prod(const CVec& x, const CVec& y) const;
  CVec star(const CVec& x) const;
  CMat comult(const CVec& x) const;
  Cx counit(const CVec& x) const;
  Cx haar(const CVec& x) const;
  CMat left_mult_matrix(const CVec& x) const;
  double gns_norm(const CVec& x) const;           // sqrt h(x^* x)
  double tensor_norm2(const CMat& coeff) const;   // 2-norm on the coefficient of A x A
  void validate(const Tolerance& tol = {}) const;  // throws IntegrityError naming the identity

  GMatrix gm_unit(int n) const;
  GMatrix gm_scalar(const CMat& s) const;  // s x 1
  GMatrix gm_mul(const GMatrix& x, const GMatrix& y) const;
  GMatrix gm_add(const GMatrix& x, const GMatrix& y, Cx c = 1.0) const;  // x + c y
  GMatrix gm_adjoint(const GMatrix& x) const;
  double gm_opnorm(const GMatrix& x) const;  // operator norm in the GNS representation

  GMatrix rep_tensor(const GMatrix& u, const GMatrix& v) const;
  GMatrix rep_conjugate(const GMatrix& u) const;
  GMatrix sub_rep(const GMatrix& u, const CMat& w) const;  // w^* u w
  CVec character(const GMatrix& u) const;
  CheckOutcome verify_representation(const GMatrix& u, const Tolerance& tol = {}) const;

  // Intertwiners T with dst (T x 1) = (T x 1) src, via invariant averaging.
  CMat mor_project(const GMatrix& dst, const GMatrix& src, const CMat& t) const;
  std::vector<CMat> mor_basis(const GMatrix& dst, const GMatrix& src) const;

  static QuantumGroup dual_group_algebra(const GroupTable& g, const std::string& group_name);
  static QuantumGroup function_algebra(const GroupTable& g, const std::string& group_name);
  static QuantumGroup from_name(const std::string& name);  // "dual:<group>" or "fun:<group>"
};

struct Fusion {
  int sigma = 0;
  CMat S;  // isometry V_sigma -> V_i x V_j
};

struct Irrep {
  std::string label;
  int dim = 0;
  GMatrix u;
  int conj = 0;
  CMat R, Rbar;  // columns in V_pi x V_conj and V_conj x V_pi, |R| = sqrt(dim)
};

struct Catalog {
  QuantumGroup G;
  unsigned long long seed = 1;  // decomposition seed, kept for faithful rebuilds
  std::vector<Irrep> irreps;  // trivial first, then sorted by (dim, character)
  std::vector<std::vector<std::vector<Fusion>>> fusion;  // [i][j], parts by catalog index

  int index_of(const std::string& label) const;
  int fusion_mult(int i, int j, int sigma) const;
  void validate(const Tolerance& tol = {}) const;
};

Catalog build_catalog(const QuantumGroup& g, unsigned long long seed = 1);

}  // namespace qf
