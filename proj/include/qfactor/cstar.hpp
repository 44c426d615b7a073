#pragma once

// Multimatrix C*-algebras B = (+)_b M_{n_b}, rectangular matrices over them,
// *-homomorphisms B -> M_h(B) given on matrix units, and finitely generated
// right Hilbert B-modules with Parseval frames.

#include "qfactor/complex_matrix.hpp"

#include <vector>

namespace qf {

struct BlockAlgebra {
  std::vector<int> blocks;

  int nblocks() const { return (int)blocks.size(); }
  int dim() const;                      // sum of squared block sizes
  int unit_index(int b, int p, int q) const;
  bool operator==(const BlockAlgebra& o) const { return blocks == o.blocks; }
};

// Element of M_{rows x cols}(B); block b is a (rows*n_b) x (cols*n_b) matrix
// indexed module-major: row (i,p) sits at i*n_b + p.
struct BMat {
  BlockAlgebra alg;
  int rows = 0, cols = 0;
  std::vector<CMat> blocks;

  static BMat zero(const BlockAlgebra& a, int r, int c);
  static BMat identity(const BlockAlgebra& a, int n);
  static BMat scalar(const BlockAlgebra& a, const CMat& s);  // s x 1_B

  BMat operator*(const BMat& o) const;
  BMat operator+(const BMat& o) const;
  BMat operator-(const BMat& o) const;
  BMat scaled(Cx c) const;
  BMat adjoint() const;
  double norm() const;  // max block operator norm
  Cx trace() const;     // sum of block traces

  BMat kron_left(const CMat& s) const;           // s x this, scalar amplification
  BMat entry(int i, int j) const;                // 1x1 entry
  void set_entry(int i, int j, const BMat& e);
  BMat sub_rows(int r0, int n) const;
  BMat sub_cols(int c0, int n) const;
  void set_block(int r0, int c0, const BMat& x);

  std::vector<int> rank_vector(double atol = 1e-9) const;
  BMat polar(const Tolerance& tol = {}) const;   // blockwise partial isometry
  double min_eigenvalue() const;                  // over hermitian blocks
  CVec flatten() const;                           // all block entries, block-major
};

Cx trace_inner(const BMat& x, const BMat& y);     // sum_b Tr(x_b^* y_b)
BMat unflatten(const BlockAlgebra& a, int r, int c, const CVec& v);
CVec algebra_coords(const BMat& x);               // 1x1 only, matrix-unit coordinates
BMat algebra_element(const BlockAlgebra& a, const CVec& coords);
BMat random_hermitian(const BlockAlgebra& a, int n, Rng& rng);
BMat random_block_unitary(const BlockAlgebra& a, int n, Rng& rng);
BMat random_projection(const BlockAlgebra& a, int n, Rng& rng);

// Murray-von Neumann equivalence of projections: ranks per block must match;
// the witness v satisfies v v^* = p and v^* v = q.
struct MvnResult {
  bool equivalent = false;
  BMat witness;
};
MvnResult mvn_equivalent(const BMat& p, const BMat& q, const Tolerance& tol = {});

// *-homomorphism B -> M_h(B), stored as images of the matrix units of B.
struct StarHom {
  BlockAlgebra base;
  int hdim = 0;
  std::vector<BMat> images;  // per unit_index, each hdim x hdim

  BMat apply(const BMat& b) const;    // b is 1x1
  BMat amplify(const BMat& x) const;  // entrywise, source index outer
  BMat image_of_one() const;
  CheckOutcome verify(const Tolerance& tol = {}) const;

  static StarHom unital_amplification(const BlockAlgebra& a, int hdim);
};

// Right Hilbert B-module with a distinguished complex basis x_0..x_{dim-1}.
struct MoritaModule {
  BlockAlgebra base;
  int dim = 0;
  std::vector<std::vector<CVec>> act;    // act[i][mu] = coordinates of x_i * f_mu
  std::vector<std::vector<BMat>> inner;  // inner[i][j] = <x_i, x_j>_B

  CVec act_by(const CVec& x, const BMat& b) const;
  BMat pair(const CVec& x, const CVec& y) const;
  void validate(const Tolerance& tol = {}) const;
  std::vector<CVec> parseval_frame() const;
  CheckOutcome check_frame(const std::vector<CVec>& z, const Tolerance& tol = {}) const;
};

// The submodule p B^n for a projection p in M_n(B), with its inherited data.
MoritaModule corner_module(const BlockAlgebra& a, int n, const BMat& p);

// Canonical Parseval frame of the module, one vector per basis element.
std::vector<CVec> frame_for_module(const MoritaModule& m);

}  // namespace qf
