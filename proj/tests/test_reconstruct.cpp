#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qfactor/extract.hpp"
#include "qfactor/factor_system.hpp"
#include "qfactor/reconstruct.hpp"
#include "qfactor/star_algebra.hpp"

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

using namespace qf;

static std::shared_ptr<const Catalog> catalog_of(const std::string& name) {
  return std::make_shared<Catalog>(build_catalog(QuantumGroup::from_name(name)));
}

static std::vector<int> sorted_blocks(const StarAlgebra& a) {
  std::vector<int> b = wedderburn(a).blocks.blocks;
  std::sort(b.begin(), b.end());
  return b;
}

TEST_CASE("trivial systems rebuild the tensor product algebra") {
  struct Case {
    BlockAlgebra base;
    const char* group;
  };
  for (const Case& c : {Case{BlockAlgebra{{1}}, "dual:z2xz2"}, Case{BlockAlgebra{{2}}, "fun:z2"},
                        Case{BlockAlgebra{{1, 1}}, "dual:s3"}}) {
    auto cat = catalog_of(c.group);
    FactorSystem fs = trivial_system(c.base, cat);
    GradedAlgebra g = build_algebra(fs);
    // oracle: the expected algebra is B x G with its Wedderburn shape
    StarAlgebra expected = tensor_algebra(algebra_of_blocks(c.base), algebra_of_quantum_group(cat->G));
    CHECK(g.alg.dim == expected.dim);
    CHECK(sorted_blocks(g.alg) == sorted_blocks(expected));
    CHECK(center_dimension(g.alg) == center_dimension(expected));
  }
}

TEST_CASE("the two qubit system rebuilds a full matrix algebra") {
  auto cat = catalog_of("dual:z2xz2");
  GradedAlgebra pauli = build_algebra(pauli_system(cat));
  CHECK(pauli.alg.dim == 4);
  CHECK(center_dimension(pauli.alg) == 1);
  CHECK(sorted_blocks(pauli.alg) == std::vector<int>{2});
  GradedAlgebra trivial = build_algebra(trivial_system(BlockAlgebra{{1}}, cat));
  CHECK(trivial.alg.dim == 4);
  CHECK(center_dimension(trivial.alg) == 4);
}

TEST_CASE("component dimensions account for the full algebra") {
  auto cat = catalog_of("fun:s3");
  FactorSystem fs = trivial_system(BlockAlgebra{{1, 1}}, cat);
  GradedAlgebra g = build_algebra(fs);
  int total = 0;
  for (int t = 0; t < (int)cat->irreps.size(); ++t) {
    // the trivial system has a full multiplicity space at every class
    CHECK(g.gs[t].cdim == cat->irreps[t].dim * fs.base.dim());
    CHECK(g.mdim[t] == g.gs[t].cdim);
    CHECK(g.offsets[t] == total);
    total += cat->irreps[t].dim * g.mdim[t];
  }
  CHECK(total == g.alg.dim);
  CHECK(gamma_space(fs, 0).cdim == fs.base.dim());
}

TEST_CASE("the rebuilt coaction is a verified coaction fixing degree zero") {
  auto cat = catalog_of("dual:z2xz2");
  GradedAlgebra g = build_algebra(pauli_system(cat));
  DynamicalSystem ds = dynamical_system_of(g);
  ValidationReport rep = ds.validate();
  CHECK(rep.ok);
  int gd = cat->G.dim;
  for (int mu = 0; mu < g.mdim[0]; ++mu) {
    int i = g.flat(0, 0, mu);
    CMat want = CMat::Zero(g.alg.dim, gd);
    want.row(i) = cat->G.unit_v.transpose();
    CHECK((ds.alpha[i] - want).norm() < 1e-9);
  }
}

TEST_CASE("functor obligations pass on models and fail on the rescaled system") {
  auto cat = catalog_of("dual:z2xz2");
  FactorSystem good = pauli_system(cat);
  ValidationReport ok = verify_unitary_tensor_functor(good);
  CHECK(ok.ok);
  CHECK(ok.checks.size() == 4);

  FactorSystem bad = good;
  bad.omega[{1, 1}] = bad.omega.at({1, 1}).scaled(0.9);
  ValidationReport rep = verify_unitary_tensor_functor(bad);
  CHECK_FALSE(rep.ok);
  for (const NamedCheck& c : rep.checks)
    if (c.name == "unitarity") {
      CHECK_FALSE(c.ok);
      // scaling by 0.9 leaves a gram defect of 1 - 0.81
      CHECK(c.residual > 0.1);
      CHECK(c.residual < 0.3);
    }
}

TEST_CASE("multiplication closes on the fused multiplicity spaces") {
  auto cat = catalog_of("dual:z2xz2");
  for (const FactorSystem& fs :
       {pauli_system(cat), trivial_system(BlockAlgebra{{1, 1}}, cat)}) {
    FreenessResult fr = check_free_m_surjective(fs);
    CHECK(fr.free);
  }
}
