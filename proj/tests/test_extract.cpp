#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qfactor/extract.hpp"
#include "qfactor/factor_system.hpp"
#include "qfactor/reconstruct.hpp"

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

using namespace qf;

static std::shared_ptr<const Catalog> catalog_of(const std::string& name) {
  return std::make_shared<Catalog>(build_catalog(QuantumGroup::from_name(name)));
}

TEST_CASE("gauge grading of the two by two matrices, worked example") {
  auto cat = catalog_of("dual:z2");
  DynamicalSystem ds = m2_gauge_ds(cat);
  CHECK(ds.validate().ok);

  // the fixed points are the diagonal, in the basis e11, e12, e21, e22
  FixedPointData fp = fixed_point_data(ds);
  CHECK(fp.sub.dim == 2);
  std::vector<int> blocks = fp.wb.blocks.blocks;
  std::sort(blocks.begin(), blocks.end());
  CHECK(blocks == std::vector<int>{1, 1});
  CMat e = fixed_point_projection(ds);
  CMat diag = CMat::Zero(4, 4);
  diag(0, 0) = diag(3, 3) = 1.0;
  CHECK((e - diag).norm() < 1e-12);

  // isotypic projections: trivial part = fixed points, parts sum to one
  CMat p0 = isotypic_projection(ds, 0), p1 = isotypic_projection(ds, 1);
  CHECK((p0 - e).norm() < 1e-10);
  CHECK((p0 * p1).norm() < 1e-10);
  CHECK((p0 + p1 - CMat::Identity(4, 4)).norm() < 1e-10);

  // the multiplicity space of the sign class is spanned by e12 and e21
  CMat basis = multiplicity_space(ds, 1);
  REQUIRE(basis.cols() == 2);
  CMat proj = basis * basis.adjoint();
  CMat want = CMat::Zero(4, 4);
  want(1, 1) = want(2, 2) = 1.0;
  CHECK((proj - want).norm() < 1e-9);
  MoritaModule m = multiplicity_module(ds, fp, basis);
  m.validate(Tolerance{1e-7, 1e-7});

  // frame coisometry: one row, two columns, s s* = 1 inside the algebra
  GMatrix s = coisometry_for(ds, 1);
  REQUIRE(s.rows == 1);
  REQUIRE(s.cols == 2);
  CVec acc = CVec::Zero(4);
  for (int c = 0; c < s.cols; ++c) acc += ds.a.prod(s.at(0, c), ds.a.star(s.at(0, c)));
  CHECK((acc - ds.a.unit_v).norm() < 1e-8);

  // extracted system: base C + C, multiplicity dimensions (1, 2), cleft
  Extraction ex = factor_system_of(ds);
  CHECK(ex.fs.hdim == std::vector<int>({1, 2}));
  std::vector<int> base = ex.fs.base.blocks;
  std::sort(base.begin(), base.end());
  CHECK(base == std::vector<int>{1, 1});
  CHECK(ex.fs.validate().ok);
  CHECK(is_cleft(ex.fs).cleft);
  CHECK(check_free_ellwood(ds).free);
  CHECK(check_free_m_surjective(ds).free);
}

TEST_CASE("product actions extract full multiplicity at every class") {
  auto cat = catalog_of("dual:z2xz2");
  DynamicalSystem ds = ds_tensor_trivial(BlockAlgebra{{2}}, cat);
  CHECK(ds.validate().ok);
  Extraction ex = factor_system_of(ds);
  CHECK(ex.fs.base.blocks == std::vector<int>{2});
  CHECK(ex.fs.hdim == std::vector<int>({1, 4, 4, 4}));
  CHECK(ex.fs.validate().ok);
  CHECK(is_cleft(ex.fs).cleft);

  // a different frame rotation gives a conjugate presentation
  Extraction ex2 = factor_system_of(ds, 7);
  ConjugacyResult cr = find_conjugacy(ex.fs, ex2.fs);
  REQUIRE(cr.verdict == ConjugacyResult::Verdict::found);
  CHECK(cr.residual <= 1e-8);
}

TEST_CASE("isotypic projections are orthogonal and complete") {
  auto cat = catalog_of("dual:z2xz2");
  DynamicalSystem ds = ds_tensor_trivial(BlockAlgebra{{2}}, cat);
  int n = ds.a.dim;
  std::vector<CMat> p;
  for (int t = 0; t < (int)cat->irreps.size(); ++t) p.push_back(isotypic_projection(ds, t));
  CMat sum = CMat::Zero(n, n);
  int ranks = 0;
  for (int sidx = 0; sidx < (int)p.size(); ++sidx) {
    for (int tidx = 0; tidx < (int)p.size(); ++tidx) {
      CMat prod = p[sidx] * p[tidx];
      if (sidx == tidx)
        CHECK((prod - p[sidx]).norm() < 1e-9);
      else
        CHECK(prod.norm() < 1e-9);
    }
    sum += p[sidx];
    ranks += matrix_rank(p[sidx], 1e-9);
  }
  CHECK((sum - CMat::Identity(n, n)).norm() < 1e-9);
  CHECK(ranks == n);
}

TEST_CASE("the trivial coaction passes the axioms but fails freeness") {
  auto cat = catalog_of("dual:z2");
  DynamicalSystem ds = trivial_coaction_ds(cat);
  CHECK(ds.validate().ok);
  CHECK(multiplicity_space(ds, 1).cols() == 0);
  CHECK_FALSE(check_free_ellwood(ds).free);
  CHECK_FALSE(check_free_m_surjective(ds).free);
  CHECK_THROWS_AS(coisometry_for(ds, 1), IntegrityError);
  CHECK_THROWS_AS(factor_system_of(ds), IntegrityError);
}

TEST_CASE("extraction undoes reconstruction of the two qubit system") {
  auto cat = catalog_of("dual:z2xz2");
  FactorSystem fs = pauli_system(cat);
  DynamicalSystem ds = dynamical_system_of(build_algebra(fs));
  Extraction ex = factor_system_of(ds);
  CHECK(ex.fs.hdim == fs.hdim);
  ConjugacyResult cr = find_conjugacy(ex.fs, fs);
  REQUIRE(cr.verdict == ConjugacyResult::Verdict::found);
  CHECK(cr.residual <= 1e-8);
}

TEST_CASE("systems with different multiplicity ranks are separated") {
  auto cat = catalog_of("dual:z2");
  Extraction gauge = factor_system_of(m2_gauge_ds(cat));
  // force the trivial comparison onto the same base by extracting a product
  DynamicalSystem prod = ds_tensor_trivial(BlockAlgebra{{1, 1}}, cat);
  Extraction plain = factor_system_of(prod);
  CHECK(plain.fs.hdim == std::vector<int>({1, 2}));
  std::vector<int> ga = gauge.fs.gamma[1].image_of_one().rank_vector();
  std::vector<int> pa = plain.fs.gamma[1].image_of_one().rank_vector();
  CHECK(ga != pa);
  ConjugacyResult cr = find_conjugacy(gauge.fs, plain.fs);
  CHECK(cr.verdict == ConjugacyResult::Verdict::not_conjugate);
}
