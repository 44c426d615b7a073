#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qfactor/factor_system.hpp"

#include <cmath>
#include <memory>
#include <string>
#include <vector>

using namespace qf;

// ---- frozen oracles ----

// Scalar cocycle of the two qubit model, indexed by the group elements of
// z2xz2 in builder order (identity, Z, X, XZ): sigma_g sigma_h equals
// sign[g][h] * sigma_{gh} for sigma = (I, Z, X, XZ). Worked out by hand from
// the four matrices.
static const double kPauliSign[4][4] = {
    {1, 1, 1, 1},
    {1, 1, -1, -1},
    {1, 1, 1, 1},
    {1, 1, -1, -1},
};

static int element_of(const Irrep& pi) {
  REQUIRE(pi.dim == 1);
  const CVec& e = pi.u.at(0, 0);
  int best = 0;
  for (int k = 1; k < e.size(); ++k)
    if (std::abs(e(k)) > std::abs(e(best))) best = k;
  return best;
}

static std::shared_ptr<const Catalog> catalog_of(const std::string& name) {
  return std::make_shared<Catalog>(build_catalog(QuantumGroup::from_name(name)));
}

static const NamedCheck& check_named(const ValidationReport& rep, const std::string& name) {
  for (const NamedCheck& c : rep.checks)
    if (c.name == name) return c;
  REQUIRE_MESSAGE(false, "missing check: " << name);
  static NamedCheck none;
  return none;
}

TEST_CASE("two qubit structure matrices carry the frozen sign table") {
  auto cat = catalog_of("dual:z2xz2");
  FactorSystem fs = pauli_system(cat);
  REQUIRE(fs.hdim == std::vector<int>({1, 1, 1, 1}));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Cx w = fs.om(i, j).blocks[0](0, 0);
      double expected = kPauliSign[element_of(cat->irreps[i])][element_of(cat->irreps[j])];
      CHECK(std::abs(w - expected) < 1e-12);
    }
  CHECK(fs.validate().ok);
}

TEST_CASE("trivial systems validate over small bases and groups") {
  for (const char* name : {"dual:z2xz2", "fun:s3"}) {
    auto cat = catalog_of(name);
    for (const BlockAlgebra& base : {BlockAlgebra{{1}}, BlockAlgebra{{1, 1}}, BlockAlgebra{{2}}}) {
      FactorSystem fs = trivial_system(base, cat);
      ValidationReport rep = fs.validate();
      CHECK(rep.ok);
      CHECK(rep.residual <= 1e-9);
      // structure matrices of the trivial system are unitary
      for (int i = 0; i < (int)cat->irreps.size(); ++i)
        for (int j = 0; j < (int)cat->irreps.size(); ++j) {
          const BMat& w = fs.om(i, j);
          REQUIRE(w.rows == w.cols);
          CHECK((w * w.adjoint() - BMat::identity(base, w.rows)).norm() < 1e-9);
        }
    }
  }
}

TEST_CASE("a rescaled structure matrix fails the partial isometry check") {
  auto cat = catalog_of("dual:z2xz2");
  FactorSystem fs = pauli_system(cat);
  fs.omega[{1, 1}] = fs.omega.at({1, 1}).scaled(0.9);
  ValidationReport rep = fs.validate();
  CHECK_FALSE(rep.ok);
  const NamedCheck& pi = check_named(rep, "structure matrices are partial isometries");
  CHECK_FALSE(pi.ok);
  CHECK(pi.residual > 0.05);
}

TEST_CASE("conjugation by unitaries round trips and is rediscovered") {
  auto cat = catalog_of("fun:s3");
  FactorSystem fs = trivial_system(BlockAlgebra{{2}}, cat);
  Rng rng(23);
  std::vector<BMat> v, vadj;
  for (int i = 0; i < (int)cat->irreps.size(); ++i) {
    BMat u = i == 0 ? BMat::identity(fs.base, 1) : random_block_unitary(fs.base, fs.hdim[i], rng);
    v.push_back(u);
    vadj.push_back(u.adjoint());
  }
  FactorSystem fs2 = conjugate_by(fs, fs.hdim, v);
  CHECK(fs2.validate().ok);
  CHECK(fs_distance(fs, fs) == 0.0);
  // conjugating back with the adjoint family restores the system exactly
  FactorSystem fs3 = conjugate_by(fs2, fs.hdim, vadj);
  CHECK(fs_distance(fs, fs3) < 1e-9);
  // the search finds a witness between the two presentations
  ConjugacyResult cr = find_conjugacy(fs, fs2);
  REQUIRE(cr.verdict == ConjugacyResult::Verdict::found);
  CHECK(cr.residual <= 1e-8);
}

TEST_CASE("non conjugate scalar systems stay undecided under the budget") {
  auto cat = catalog_of("dual:z2xz2");
  FactorSystem a = pauli_system(cat);
  FactorSystem b = trivial_system(BlockAlgebra{{1}}, cat);
  // all multiplicity data agrees, only the cocycle class separates them
  ConjugacyResult cr = find_conjugacy(a, b, 1, 8);
  CHECK(cr.verdict == ConjugacyResult::Verdict::undecided);
}

TEST_CASE("cleftness of the model systems and of the corner probe") {
  auto cat2 = catalog_of("dual:z2xz2");
  CHECK(is_cleft(pauli_system(cat2)).cleft);
  CHECK(is_cleft(trivial_system(BlockAlgebra{{1}}, cat2)).cleft);
  CHECK(is_cleft(trivial_system(BlockAlgebra{{2}}, catalog_of("fun:s3"))).cleft);

  // corner probe: one multiplicity map embeds into the first summand only,
  // so its unit image has block ranks (1, 0) against the full (1, 1)
  auto catz2 = catalog_of("dual:z2");
  FactorSystem probe = trivial_system(BlockAlgebra{{1, 1}}, catz2);
  StarHom corner;
  corner.base = probe.base;
  corner.hdim = 1;
  BMat j0 = BMat::zero(probe.base, 1, 1);
  j0.blocks[0](0, 0) = 1.0;
  corner.images = {j0, BMat::zero(probe.base, 1, 1)};
  REQUIRE(corner.verify().ok);
  probe.gamma[1] = corner;
  CleftResult c = is_cleft(probe);
  CHECK_FALSE(c.cleft);
  // the verdict survives conjugation inside the probe's multiplicity range
  Rng rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<BMat> v = {BMat::identity(probe.base, 1),
                           j0 * random_block_unitary(probe.base, 1, rng)};
    FactorSystem moved = conjugate_by(probe, {1, 1}, v);
    CHECK_FALSE(is_cleft(moved).cleft);
  }
}

TEST_CASE("structure matrix shapes follow the fusion decomposition") {
  auto cat = catalog_of("fun:s3");
  FactorSystem fs = trivial_system(BlockAlgebra{{1, 1}}, cat);
  for (int i = 0; i < (int)cat->irreps.size(); ++i)
    for (int j = 0; j < (int)cat->irreps.size(); ++j) {
      int rows = 0;
      for (const Fusion& f : cat->fusion[i][j]) rows += fs.hdim[f.sigma];
      CHECK(fs.om(i, j).rows == rows);
      CHECK(fs.om(i, j).cols == fs.hdim[i] * fs.hdim[j]);
    }
}
