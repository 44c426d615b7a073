#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qfactor/group_table.hpp"
#include "qfactor/quantum_group.hpp"

#include <cmath>
#include <string>
#include <vector>

using namespace qf;

// ---- independent oracles ----

static CVec unit_coord(int n, int k) {
  CVec e = CVec::Zero(n);
  e(k) = 1.0;
  return e;
}

// Haar functional from scratch: the unique functional with h(1) = 1 and
// (h x id) Delta(x) = h(x) 1, found by a dense least squares solve on the
// comultiplication tensor.
static CVec haar_by_solve(const QuantumGroup& g) {
  int n = g.dim;
  CMat m = CMat::Zero(n * n + 1, n);
  CVec rhs = CVec::Zero(n * n + 1);
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < n; ++b) {
      for (int a = 0; a < n; ++a) m(i * n + b, a) += g.comult_t[i](a, b);
      m(i * n + b, i) -= g.unit_v(b);
    }
  for (int i = 0; i < n; ++i) m(n * n, i) = g.unit_v(i);
  rhs(n * n) = 1.0;
  return m.colPivHouseholderQr().solve(rhs);
}

// group element behind a one-dimensional corepresentation of a dual group
// algebra: the single entry is a group-like basis vector
static int element_of(const Irrep& pi) {
  REQUIRE(pi.dim == 1);
  const CVec& e = pi.u.at(0, 0);
  int best = 0;
  for (int k = 1; k < e.size(); ++k)
    if (std::abs(e(k)) > std::abs(e(best))) best = k;
  return best;
}

TEST_CASE("haar state solves the invariance equations") {
  for (const char* name : {"dual:z2", "dual:s3", "fun:s3", "fun:z4"}) {
    QuantumGroup g = QuantumGroup::from_name(name);
    CVec h = haar_by_solve(g);
    for (int i = 0; i < g.dim; ++i)
      CHECK(std::abs(h(i) - g.haar(unit_coord(g.dim, i))) < 1e-10);
  }
}

TEST_CASE("builders validate and the haar state is normalized") {
  for (const char* name : {"dual:q8", "dual:z2xz4", "fun:d4", "fun:z2"}) {
    QuantumGroup g = QuantumGroup::from_name(name);
    g.validate();
    CHECK(std::abs(g.haar(g.unit_v) - 1.0) < 1e-12);
    CHECK(std::abs(g.counit(g.unit_v) - 1.0) < 1e-12);
  }
}

TEST_CASE("catalog exhausts the regular corepresentation") {
  for (const char* name : {"dual:s3", "dual:q8", "fun:s3", "fun:d4", "dual:z2xz4"}) {
    QuantumGroup g = QuantumGroup::from_name(name);
    Catalog c = build_catalog(g);
    int sum = 0;
    for (const Irrep& pi : c.irreps) sum += pi.dim * pi.dim;
    CHECK(sum == g.dim);
    CHECK(c.irreps[0].dim == 1);
    CHECK((c.irreps[0].u.at(0, 0) - g.unit_v).norm() < 1e-12);
    for (const Irrep& pi : c.irreps) CHECK(g.verify_representation(pi.u).ok);
    for (int i = 0; i < (int)c.irreps.size(); ++i) {
      CHECK(c.index_of(c.irreps[i].label) == i);
      CHECK(c.irreps[c.irreps[i].conj].conj == i);
      REQUIRE(c.fusion[0][i].size() == 1);
      CHECK(c.fusion[0][i][0].sigma == i);
      CHECK(c.fusion_mult(i, c.irreps[i].conj, 0) == 1);
    }
  }
}

TEST_CASE("dual catalog fusion follows the group table") {
  GroupTable t = GroupTable::builtin("s3");
  Catalog c = build_catalog(QuantumGroup::from_name("dual:s3"));
  REQUIRE(c.irreps.size() == 6);
  std::vector<int> elem(6);
  for (int i = 0; i < 6; ++i) elem[i] = element_of(c.irreps[i]);
  CHECK(elem[0] == 0);
  for (int i = 0; i < 6; ++i) {
    CHECK(elem[c.irreps[i].conj] == t.inverse(elem[i]));
    for (int j = 0; j < 6; ++j) {
      REQUIRE(c.fusion[i][j].size() == 1);
      CHECK(elem[c.fusion[i][j][0].sigma] == t.mul(elem[i], elem[j]));
    }
  }
}

TEST_CASE("conjugate equations hold for the catalog solutions") {
  for (const char* name : {"dual:s3", "fun:s3"}) {
    Catalog c = build_catalog(QuantumGroup::from_name(name));
    for (const Irrep& pi : c.irreps) {
      int d = pi.dim, dc = c.irreps[pi.conj].dim;
      REQUIRE(pi.R.rows() == d * dc);
      REQUIRE(pi.Rbar.rows() == dc * d);
      CHECK(std::abs(pi.R.norm() - std::sqrt((double)d)) < 1e-9);
      // (R* x 1)(1 x Rbar) = 1 on V_pi
      CMat m1 = CMat::Zero(d, d);
      for (int p = 0; p < d; ++p)
        for (int pp = 0; pp < d; ++pp)
          for (int q = 0; q < dc; ++q)
            m1(pp, p) += std::conj(pi.R(p * dc + q, 0)) * pi.Rbar(q * d + pp, 0);
      CHECK(operator_norm(m1 - CMat::Identity(d, d)) < 1e-9);
      // (Rbar* x 1)(1 x R) = 1 on the conjugate
      CMat m2 = CMat::Zero(dc, dc);
      for (int q = 0; q < dc; ++q)
        for (int qq = 0; qq < dc; ++qq)
          for (int p = 0; p < d; ++p)
            m2(qq, q) += std::conj(pi.Rbar(q * d + p, 0)) * pi.R(p * dc + qq, 0);
      CHECK(operator_norm(m2 - CMat::Identity(dc, dc)) < 1e-9);
      // R is invariant under u x conj(u)
      const QuantumGroup& g = c.G;
      GMatrix t = g.rep_tensor(pi.u, c.irreps[pi.conj].u);
      for (int i = 0; i < d * dc; ++i) {
        CVec acc = CVec::Zero(g.dim);
        for (int j = 0; j < d * dc; ++j) acc += pi.R(j, 0) * t.at(i, j);
        CHECK((acc - pi.R(i, 0) * g.unit_v).norm() < 1e-9);
      }
    }
  }
}

TEST_CASE("quaternion two dimensional class pairs antisymmetrically") {
  Catalog c = build_catalog(QuantumGroup::from_name("dual:q8"));
  int two = -1;
  for (int i = 0; i < (int)c.irreps.size(); ++i)
    if (c.irreps[i].dim == 2) two = i;
  REQUIRE(two >= 0);
  CHECK(c.irreps[two].conj == two);
  const CMat& r = c.irreps[two].R;
  CHECK(std::abs(r(0 * 2 + 0, 0)) < 1e-9);
  CHECK(std::abs(r(1 * 2 + 1, 0)) < 1e-9);
  CHECK(std::abs(r(0 * 2 + 1, 0) + r(1 * 2 + 0, 0)) < 1e-9);
}

TEST_CASE("symmetric group standard class pairs symmetrically") {
  Catalog c = build_catalog(QuantumGroup::from_name("fun:s3"));
  int two = -1;
  for (int i = 0; i < (int)c.irreps.size(); ++i)
    if (c.irreps[i].dim == 2) two = i;
  REQUIRE(two >= 0);
  CHECK(c.irreps[two].conj == two);
  const CMat& r = c.irreps[two].R;
  CHECK(std::abs(r(0 * 2 + 1, 0) - r(1 * 2 + 0, 0)) < 1e-9);
}

TEST_CASE("morphism projection produces intertwiners") {
  QuantumGroup g = QuantumGroup::from_name("fun:s3");
  Catalog c = build_catalog(g);
  int two = -1;
  for (int i = 0; i < (int)c.irreps.size(); ++i)
    if (c.irreps[i].dim == 2) two = i;
  REQUIRE(two >= 0);
  GMatrix t2 = g.rep_tensor(c.irreps[two].u, c.irreps[two].u);
  // std x std = trivial + sign + std, so the self-morphism space has rank 3
  std::vector<CMat> basis = g.mor_basis(t2, t2);
  CHECK(basis.size() == 3);
  auto is_intertwiner = [&](const CMat& w) {
    double res = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int l = 0; l < 4; ++l) {
        CVec lhs = CVec::Zero(g.dim), rhs = CVec::Zero(g.dim);
        for (int j = 0; j < 4; ++j) lhs += t2.at(i, j) * w(j, l);
        for (int k = 0; k < 4; ++k) rhs += w(i, k) * t2.at(k, l);
        res = std::max(res, (lhs - rhs).norm());
      }
    return res;
  };
  for (const CMat& w : basis) CHECK(is_intertwiner(w) < 1e-9);
  // projecting a random matrix lands in the space, and fixes what is there
  Rng rng(11);
  CMat raw = rng.gaussian_matrix(4, 4);
  CMat proj = g.mor_project(t2, t2, raw);
  CHECK(is_intertwiner(proj) < 1e-9);
  CHECK(operator_norm(g.mor_project(t2, t2, proj) - proj) < 1e-9);
}

TEST_CASE("catalogs pass their own validation") {
  for (const char* name : {"dual:z2xz2", "fun:s3", "dual:q8"}) {
    Catalog c = build_catalog(QuantumGroup::from_name(name));
    c.validate();
  }
}
