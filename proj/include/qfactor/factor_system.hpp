#pragma once

// Factor systems over a catalog: a multimatrix base B, a *-homomorphism
// gamma_pi : B -> M_{h_pi}(B) per irreducible and a structure matrix
// omega(pi, rho) per ordered pair, subject to the axioms enforced by
// validate(). Conjugation, the conjugacy search, and cleftness live here.

#include "qfactor/cstar.hpp"
#include "qfactor/quantum_group.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace qf {

// Decomposition of a tensor word into catalog irreducibles.
struct RepDecomp {
  std::vector<int> parts;
  std::vector<CMat> isos;  // isometries V_part -> ambient
  int ambient = 0;
};

RepDecomp rep_irrep(const Catalog& c, int i);
RepDecomp rep_tensor2(const Catalog& c, int i, int j);
RepDecomp rep_join(const Catalog& c, const RepDecomp& a, const RepDecomp& b);

struct FactorSystem {
  BlockAlgebra base;
  std::shared_ptr<const Catalog> cat;
  std::vector<int> hdim;
  std::vector<StarHom> gamma;
  std::map<std::pair<int, int>, BMat> omega;

  const BMat& om(int i, int j) const;
  int hdim_of(const RepDecomp& d) const;
  BMat gamma_ext(const RepDecomp& d, const BMat& b) const;  // block diagonal along parts
  BMat gamma_ext_one(const RepDecomp& d) const;
  BMat omega_ext(const RepDecomp& a, const RepDecomp& b) const;
  // multiplicity matrix of an ambient intertwiner between two decompositions
  CMat h_functor(const RepDecomp& dst, const RepDecomp& src, const CMat& t) const;

  ValidationReport validate(const Tolerance& tol = {}) const;
};

FactorSystem trivial_system(const BlockAlgebra& base, std::shared_ptr<const Catalog> cat);
FactorSystem pauli_system(std::shared_ptr<const Catalog> cat);  // base C over dual:z2xz2

// v(pi) : H'_pi -> H_pi with v v^* = gamma_pi(1); returns the system carried
// onto the new multiplicity spaces.
FactorSystem conjugate_by(const FactorSystem& fs, const std::vector<int>& hdim2,
                          const std::vector<BMat>& v);

// max deviation between two systems with identical shapes
double fs_distance(const FactorSystem& a, const FactorSystem& b);

struct CleftResult {
  bool cleft = true;
  std::string evidence;
};
CleftResult is_cleft(const FactorSystem& fs, const Tolerance& tol = {});

struct ConjugacyResult {
  enum class Verdict { found, not_conjugate, undecided } verdict = Verdict::undecided;
  std::vector<BMat> witness;  // per irrep, maps H_b(pi) into H_a(pi)
  double residual = 0.0;
  std::string evidence;
};
ConjugacyResult find_conjugacy(const FactorSystem& a, const FactorSystem& b,
                               unsigned long long seed = 1, int restarts = 32,
                               const Tolerance& tol = {});

}  // namespace qf
