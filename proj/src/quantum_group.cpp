#include "qfactor/quantum_group.hpp"

#include <algorithm>
#include <cmath>

namespace qf {

GMatrix GMatrix::zero(int r, int c, int gdim) {
  GMatrix m;
  m.rows = r;
  m.cols = c;
  m.gdim = gdim;
  m.ent.assign((size_t)r * c, CVec::Zero(gdim));
  return m;
}

CVec QuantumGroup::prod(const CVec& x, const CVec& y) const {
  CVec out = CVec::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    if (x(i) == Cx(0)) continue;
    for (int j = 0; j < dim; ++j) {
      if (y(j) == Cx(0)) continue;
      out += x(i) * y(j) * mult_t[i][j];
    }
  }
  return out;
}

CVec QuantumGroup::star(const CVec& x) const { return star_m * x.conjugate(); }

CMat QuantumGroup::comult(const CVec& x) const {
  CMat out = CMat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) out += x(i) * comult_t[i];
  return out;
}

Cx QuantumGroup::counit(const CVec& x) const { return (counit_v.transpose() * x)(0, 0); }

Cx QuantumGroup::haar(const CVec& x) const { return (haar_v.transpose() * x)(0, 0); }

CMat QuantumGroup::left_mult_matrix(const CVec& x) const {
  CMat l = CMat::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    CVec ej = CVec::Zero(dim);
    ej(j) = 1.0;
    l.col(j) = prod(x, ej);
  }
  return l;
}

double QuantumGroup::gns_norm(const CVec& x) const {
  Cx v = (x.adjoint() * gram * x)(0, 0);
  return std::sqrt(std::max(0.0, v.real()));
}

double QuantumGroup::tensor_norm2(const CMat& coeff) const {
  Cx v = coeff.conjugate().cwiseProduct(gram * coeff * gram.transpose()).sum();
  return std::sqrt(std::max(0.0, v.real()));
}

GMatrix QuantumGroup::gm_unit(int n) const {
  GMatrix m = GMatrix::zero(n, n, dim);
  for (int i = 0; i < n; ++i) m.at(i, i) = unit_v;
  return m;
}

GMatrix QuantumGroup::gm_scalar(const CMat& s) const {
  GMatrix m = GMatrix::zero((int)s.rows(), (int)s.cols(), dim);
  for (int i = 0; i < s.rows(); ++i)
    for (int j = 0; j < s.cols(); ++j) m.at(i, j) = s(i, j) * unit_v;
  return m;
}

GMatrix QuantumGroup::gm_mul(const GMatrix& x, const GMatrix& y) const {
  if (x.cols != y.rows) throw StructuralError("matrix over algebra: shape mismatch in product");
  GMatrix m = GMatrix::zero(x.rows, y.cols, dim);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < y.cols; ++j)
      for (int k = 0; k < x.cols; ++k) m.at(i, j) += prod(x.at(i, k), y.at(k, j));
  return m;
}

GMatrix QuantumGroup::gm_add(const GMatrix& x, const GMatrix& y, Cx c) const {
  if (x.rows != y.rows || x.cols != y.cols)
    throw StructuralError("matrix over algebra: shape mismatch in sum");
  GMatrix m = x;
  for (size_t k = 0; k < m.ent.size(); ++k) m.ent[k] += c * y.ent[k];
  return m;
}

GMatrix QuantumGroup::gm_adjoint(const GMatrix& x) const {
  GMatrix m = GMatrix::zero(x.cols, x.rows, dim);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) m.at(j, i) = star(x.at(i, j));
  return m;
}

double QuantumGroup::gm_opnorm(const GMatrix& x) const {
  // Faithful GNS representation of the entries; gram^(1/2) orthonormalizes the basis.
  CMat gh = positive_sqrt(gram);
  CMat ghi = gh.inverse();
  CMat big = CMat::Zero((long)x.rows * dim, (long)x.cols * dim);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j)
      big.block((long)i * dim, (long)j * dim, dim, dim) = gh * left_mult_matrix(x.at(i, j)) * ghi;
  return operator_norm(big);
}

GMatrix QuantumGroup::rep_tensor(const GMatrix& u, const GMatrix& v) const {
  GMatrix m = GMatrix::zero(u.rows * v.rows, u.cols * v.cols, dim);
  for (int i = 0; i < u.rows; ++i)
    for (int k = 0; k < v.rows; ++k)
      for (int j = 0; j < u.cols; ++j)
        for (int l = 0; l < v.cols; ++l)
          m.at(i * v.rows + k, j * v.cols + l) = prod(u.at(i, j), v.at(k, l));
  return m;
}

GMatrix QuantumGroup::rep_conjugate(const GMatrix& u) const {
  GMatrix m = GMatrix::zero(u.rows, u.cols, dim);
  for (int i = 0; i < u.rows; ++i)
    for (int j = 0; j < u.cols; ++j) m.at(i, j) = star(u.at(i, j));
  return m;
}

GMatrix QuantumGroup::sub_rep(const GMatrix& u, const CMat& w) const {
  GMatrix m = GMatrix::zero((int)w.cols(), (int)w.cols(), dim);
  for (int a = 0; a < w.cols(); ++a)
    for (int b = 0; b < w.cols(); ++b)
      for (int i = 0; i < u.rows; ++i)
        for (int j = 0; j < u.cols; ++j)
          m.at(a, b) += std::conj(w(i, a)) * w(j, b) * u.at(i, j);
  return m;
}

CVec QuantumGroup::character(const GMatrix& u) const {
  CVec c = CVec::Zero(dim);
  for (int i = 0; i < u.rows; ++i) c += u.at(i, i);
  return c;
}

CheckOutcome QuantumGroup::verify_representation(const GMatrix& u, const Tolerance& tol) const {
  int n = u.rows;
  double res = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CMat lhs = comult(u.at(i, j));
      CMat rhs = CMat::Zero(dim, dim);
      for (int k = 0; k < n; ++k) rhs += u.at(i, k) * u.at(k, j).transpose();
      res = std::max(res, tensor_norm2(lhs - rhs));
      res = std::max(res, std::abs(counit(u.at(i, j)) - (i == j ? Cx(1) : Cx(0))));
    }
  GMatrix one = gm_unit(n);
  res = std::max(res, gm_opnorm(gm_add(gm_mul(gm_adjoint(u), u), one, -1.0)));
  res = std::max(res, gm_opnorm(gm_add(gm_mul(u, gm_adjoint(u)), one, -1.0)));
  return {res <= tol.threshold(1.0), res};
}

CMat QuantumGroup::mor_project(const GMatrix& dst, const GMatrix& src, const CMat& t) const {
  CMat out = CMat::Zero(dst.rows, src.rows);
  for (int a = 0; a < dst.rows; ++a)
    for (int b = 0; b < src.rows; ++b) {
      Cx acc = 0;
      for (int c = 0; c < dst.rows; ++c)
        for (int d = 0; d < src.rows; ++d)
          acc += t(c, d) * haar(prod(dst.at(a, c), star(src.at(b, d))));
      out(a, b) = acc;
    }
  return out;
}

namespace {

void fix_phase(CMat& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > 1e-8) {
        m *= std::conj(m(i, j)) / std::abs(m(i, j));
        return;
      }
}

}  // namespace

std::vector<CMat> QuantumGroup::mor_basis(const GMatrix& dst, const GMatrix& src) const {
  int dr = dst.rows, sr = src.rows;
  // kernel of the averaging map, assembled once: K[(a,b),(c,d)] = h(dst_ac src_bd^*)
  CMat k = CMat::Zero(dr * sr, dr * sr);
  for (int a = 0; a < dr; ++a)
    for (int b = 0; b < sr; ++b)
      for (int c = 0; c < dr; ++c)
        for (int d = 0; d < sr; ++d)
          k(a * sr + b, c * sr + d) = haar(prod(dst.at(a, c), star(src.at(b, d))));
  auto inner = [sr](const CMat& x, const CMat& y) {
    return (x.adjoint() * y).trace() / (double)sr;
  };
  std::vector<CMat> basis;
  for (int c = 0; c < dr; ++c)
    for (int d = 0; d < sr; ++d) {
      CVec img = k.col(c * sr + d);
      CMat t = Eigen::Map<CMat>(img.data(), sr, dr).transpose();
      for (int pass = 0; pass < 2; ++pass)
        for (const CMat& b : basis) t -= inner(b, t) * b;
      double n = std::sqrt(std::abs(inner(t, t)));
      if (n > 1e-7) {
        t /= n;
        fix_phase(t);
        basis.push_back(t);
      }
    }
  return basis;
}

void QuantumGroup::validate(const Tolerance& tol) const {
  auto fail = [](const std::string& what, double r) {
    throw IntegrityError("hopf data: " + what + " fails (residual " + std::to_string(r) + ")");
  };
  if (dim <= 0) throw StructuralError("hopf data: dimension must be positive");
  if ((int)mult_t.size() != dim || (int)comult_t.size() != dim || unit_v.size() != dim ||
      counit_v.size() != dim || haar_v.size() != dim || star_m.rows() != dim ||
      star_m.cols() != dim || gram.rows() != dim || gram.cols() != dim)
    throw StructuralError("hopf data: tensor sizes do not match dimension");
  double th = tol.threshold(1.0);
  std::vector<CVec> e(dim, CVec::Zero(dim));
  for (int i = 0; i < dim; ++i) e[i](i) = 1.0;

  for (int i = 0; i < dim; ++i) {
    if (gns_norm(prod(unit_v, e[i]) - e[i]) > th || gns_norm(prod(e[i], unit_v) - e[i]) > th)
      fail("unit law", std::max(gns_norm(prod(unit_v, e[i]) - e[i]),
                                gns_norm(prod(e[i], unit_v) - e[i])));
    for (int j = 0; j < dim; ++j)
      for (int l = 0; l < dim; ++l) {
        double r = gns_norm(prod(prod(e[i], e[j]), e[l]) - prod(e[i], prod(e[j], e[l])));
        if (r > th) fail("associativity", r);
      }
  }

  for (int i = 0; i < dim; ++i) {
    const CMat& c = comult_t[i];
    double r3 = 0.0;
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b)
        for (int g = 0; g < dim; ++g) {
          Cx lhs = 0, rhs = 0;
          for (int j = 0; j < dim; ++j) {
            lhs += c(j, g) * comult_t[j](a, b);
            rhs += c(a, j) * comult_t[j](b, g);
          }
          r3 = std::max(r3, std::abs(lhs - rhs));
        }
    if (r3 > th) fail("coassociativity", r3);
    CVec left = CVec::Zero(dim), right = CVec::Zero(dim);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        left(b) += counit_v(a) * c(a, b);
        right(a) += counit_v(b) * c(a, b);
      }
    if (gns_norm(left - e[i]) > th || gns_norm(right - e[i]) > th)
      fail("counit law", std::max(gns_norm(left - e[i]), gns_norm(right - e[i])));
  }

  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      // Delta multiplicative: Delta(e_i e_j) = Delta(e_i) Delta(e_j)
      CMat lhs = comult(prod(e[i], e[j]));
      CMat rhs = CMat::Zero(dim, dim);
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
          for (int c = 0; c < dim; ++c)
            for (int d = 0; d < dim; ++d) {
              Cx w = comult_t[i](a, b) * comult_t[j](c, d);
              if (w == Cx(0)) continue;
              rhs += w * (mult_t[a][c] * mult_t[b][d].transpose());
            }
      double r = tensor_norm2(lhs - rhs);
      if (r > th) fail("comultiplication multiplicativity", r);
      r = gns_norm(star(prod(e[i], e[j])) - prod(star(e[j]), star(e[i])));
      if (r > th) fail("star antimultiplicativity", r);
      if (std::abs(counit(prod(e[i], e[j])) - counit_v(i) * counit_v(j)) > th)
        fail("counit multiplicativity", std::abs(counit(prod(e[i], e[j]))));
      r = std::abs(haar(prod(e[i], e[j])) - haar(prod(e[j], e[i])));
      if (r > th) fail("trace property of the invariant state", r);
      if (std::abs(gram(i, j) - haar(prod(star(e[i]), e[j]))) > th)
        fail("gram consistency", std::abs(gram(i, j) - haar(prod(star(e[i]), e[j]))));
    }

  for (int i = 0; i < dim; ++i) {
    double r = gns_norm(star(star(e[i])) - e[i]);
    if (r > th) fail("star involutivity", r);
    CMat lhs = comult(star(e[i]));
    CMat rhs = star_m * comult_t[i].conjugate() * star_m.transpose();
    r = tensor_norm2(lhs - rhs);
    if (r > th) fail("comultiplication star compatibility", r);
    if (std::abs(counit(star(e[i])) - std::conj(counit_v(i))) > th)
      fail("counit star compatibility", std::abs(counit(star(e[i]))));
    if (std::abs(haar(star(e[i])) - std::conj(haar(e[i]))) > th)
      fail("state hermiticity", std::abs(haar(star(e[i])) - std::conj(haar(e[i]))));
    CVec inv_left = CVec::Zero(dim), inv_right = CVec::Zero(dim);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        inv_left(a) += comult_t[i](a, b) * haar_v(b);
        inv_right(b) += comult_t[i](a, b) * haar_v(a);
      }
    r = std::max(gns_norm(inv_left - haar(e[i]) * unit_v), gns_norm(inv_right - haar(e[i]) * unit_v));
    if (r > th) fail("state invariance", r);
  }

  if (std::abs(haar(unit_v) - Cx(1)) > th) fail("state normalization", std::abs(haar(unit_v) - Cx(1)));
  Eigen::SelfAdjointEigenSolver<CMat> es(gram);
  if (es.eigenvalues().minCoeff() <= tol.atol)
    fail("state faithfulness", es.eigenvalues().minCoeff());
}

QuantumGroup QuantumGroup::dual_group_algebra(const GroupTable& g, const std::string& group_name) {
  g.validate();
  QuantumGroup q;
  q.name = "dual:" + group_name;
  q.dim = g.order;
  int n = g.order;
  q.mult_t.assign(n, std::vector<CVec>(n, CVec::Zero(n)));
  q.comult_t.assign(n, CMat::Zero(n, n));
  q.unit_v = CVec::Zero(n);
  q.unit_v(0) = 1.0;
  q.counit_v = CVec::Ones(n);
  q.star_m = CMat::Zero(n, n);
  q.haar_v = CVec::Zero(n);
  q.haar_v(0) = 1.0;
  q.gram = CMat::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    q.comult_t[i](i, i) = 1.0;
    q.star_m(g.inverse(i), i) = 1.0;
    for (int j = 0; j < n; ++j) q.mult_t[i][j](g.mul(i, j)) = 1.0;
  }
  return q;
}

QuantumGroup QuantumGroup::function_algebra(const GroupTable& g, const std::string& group_name) {
  g.validate();
  QuantumGroup q;
  q.name = "fun:" + group_name;
  q.dim = g.order;
  int n = g.order;
  q.mult_t.assign(n, std::vector<CVec>(n, CVec::Zero(n)));
  q.comult_t.assign(n, CMat::Zero(n, n));
  q.unit_v = CVec::Ones(n);
  q.counit_v = CVec::Zero(n);
  q.counit_v(0) = 1.0;
  q.star_m = CMat::Identity(n, n);
  q.haar_v = CVec::Constant(n, 1.0 / n);
  q.gram = CMat::Identity(n, n) / (double)n;
  for (int i = 0; i < n; ++i) {
    q.mult_t[i][i](i) = 1.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (g.mul(a, b) == i) q.comult_t[i](a, b) = 1.0;
  }
  return q;
}

QuantumGroup QuantumGroup::from_name(const std::string& name) {
  auto pos = name.find(':');
  if (pos == std::string::npos)
    throw StructuralError("quantum group name must be dual:<group> or fun:<group>");
  std::string kind = name.substr(0, pos), gname = name.substr(pos + 1);
  GroupTable g = GroupTable::builtin(gname);
  if (kind == "dual") return dual_group_algebra(g, gname);
  if (kind == "fun") return function_algebra(g, gname);
  throw StructuralError("unknown quantum group construction: " + kind);
}

int Catalog::index_of(const std::string& label) const {
  for (size_t i = 0; i < irreps.size(); ++i)
    if (irreps[i].label == label) return (int)i;
  throw StructuralError("catalog: no irreducible labeled " + label);
}

int Catalog::fusion_mult(int i, int j, int sigma) const {
  int m = 0;
  for (const Fusion& f : fusion[i][j]) m += f.sigma == sigma ? 1 : 0;
  return m;
}

void Catalog::validate(const Tolerance& tol) const {
  double th = tol.threshold(1.0);
  if (irreps.empty() || irreps[0].dim != 1) throw StructuralError("catalog: missing trivial entry");
  for (const Irrep& p : irreps) {
    auto chk = G.verify_representation(p.u, tol);
    if (!chk.ok)
      throw IntegrityError("catalog: " + p.label + " is not a unitary representation (residual " +
                           std::to_string(chk.residual) + ")");
    int d = p.dim, dc = irreps[p.conj].dim;
    CMat idp = CMat::Identity(d, d), idc = CMat::Identity(dc, dc);
    double r1 = operator_norm(tensor_product(p.R.adjoint(), idp) * tensor_product(idp, p.Rbar) - idp);
    double r2 = operator_norm(tensor_product(p.Rbar.adjoint(), idc) * tensor_product(idc, p.R) - idc);
    if (r1 > th || r2 > th)
      throw IntegrityError("catalog: conjugate equations fail for " + p.label);
    if (std::abs(p.R.norm() - std::sqrt((double)d)) > 1e-7 ||
        std::abs(p.Rbar.norm() - std::sqrt((double)d)) > 1e-7)
      throw IntegrityError("catalog: conjugate solution is not normalized for " + p.label);
  }
  for (size_t i = 0; i < irreps.size(); ++i)
    for (size_t j = 0; j < irreps.size(); ++j) {
      int dt = irreps[i].dim * irreps[j].dim, covered = 0;
      CMat sum = CMat::Zero(dt, dt);
      for (const Fusion& f : fusion[i][j]) {
        const CMat& s = f.S;
        if (operator_norm(s.adjoint() * s - CMat::Identity(s.cols(), s.cols())) > th)
          throw IntegrityError("catalog: fusion map is not an isometry");
        sum += s * s.adjoint();
        covered += irreps[f.sigma].dim;
      }
      if (covered != dt || operator_norm(sum - CMat::Identity(dt, dt)) > th)
        throw IntegrityError("catalog: fusion decomposition is not complete at (" +
                             irreps[i].label + "," + irreps[j].label + ")");
    }
}

namespace {

bool char_less(const CVec& a, const CVec& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (std::abs(a(i).real() - b(i).real()) > 1e-7) return a(i).real() < b(i).real();
    if (std::abs(a(i).imag() - b(i).imag()) > 1e-7) return a(i).imag() < b(i).imag();
  }
  return false;
}

void decompose_rec(const QuantumGroup& g, const GMatrix& u, const CMat& w, Rng& rng,
                   std::vector<std::pair<GMatrix, CMat>>& out) {
  auto self = g.mor_basis(u, u);
  if (self.size() == 1) {
    out.emplace_back(u, w);
    return;
  }
  for (int attempt = 0; attempt < 64; ++attempt) {
    CMat x = rng.gaussian_matrix(u.rows, u.rows);
    CMat t = g.mor_project(u, u, x + x.adjoint());
    t = 0.5 * (t + t.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(t);
    CVec vals = es.eigenvalues().cast<Cx>();
    std::vector<std::pair<int, int>> clusters;  // [begin, end)
    int begin = 0;
    for (int i = 1; i <= u.rows; ++i)
      if (i == u.rows || vals(i).real() - vals(i - 1).real() > 1e-7) {
        clusters.emplace_back(begin, i);
        begin = i;
      }
    if (clusters.size() < 2) continue;
    for (auto [b, e] : clusters) {
      CMat v = es.eigenvectors().middleCols(b, e - b);
      decompose_rec(g, g.sub_rep(u, v), w * v, rng, out);
    }
    return;
  }
  throw IntegrityError("catalog: failed to split a reducible representation");
}

}  // namespace

Catalog build_catalog(const QuantumGroup& g, unsigned long long seed) {
  Catalog cat;
  cat.G = g;
  cat.seed = seed;
  int n = g.dim;

  // regular corepresentation: Delta(e_j) = sum_i e_i x u_ij
  GMatrix reg = GMatrix::zero(n, n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) reg.at(i, j)(k) = g.comult_t[j](i, k);

  Rng rng(seed ^ 0x8a5cd789635d2dffULL);
  std::vector<std::pair<GMatrix, CMat>> parts;
  decompose_rec(g, reg, CMat::Identity(n, n), rng, parts);

  std::vector<Irrep> found;
  for (auto& [u, w] : parts) {
    CVec chi = g.character(u);
    bool dup = false;
    for (const Irrep& p : found)
      dup = dup || g.gns_norm(chi - g.character(p.u)) < 1e-6;
    if (dup) continue;
    Irrep p;
    p.dim = u.rows;
    p.u = u;
    found.push_back(std::move(p));
  }

  int triv = -1;
  for (size_t i = 0; i < found.size(); ++i)
    if (found[i].dim == 1 && g.gns_norm(found[i].u.at(0, 0) - g.unit_v) < 1e-6) triv = (int)i;
  if (triv < 0) throw IntegrityError("catalog: trivial representation not found");
  std::swap(found[0], found[triv]);
  std::sort(found.begin() + 1, found.end(), [&](const Irrep& a, const Irrep& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return char_less(g.character(a.u), g.character(b.u));
  });
  int total = 0;
  for (size_t i = 0; i < found.size(); ++i) {
    found[i].label = "pi" + std::to_string(i);
    total += found[i].dim * found[i].dim;
  }
  if (total != n) throw IntegrityError("catalog: squared dimensions do not sum to the order");
  cat.irreps = std::move(found);

  // conjugates by matching the starred character, then solving the conjugate equations
  int m = (int)cat.irreps.size();
  std::vector<bool> done(m, false);
  for (int i = 0; i < m; ++i) {
    Irrep& p = cat.irreps[i];
    CVec chibar = g.character(g.rep_conjugate(p.u));
    p.conj = -1;
    for (int j = 0; j < m; ++j)
      if (g.gns_norm(chibar - g.character(cat.irreps[j].u)) < 1e-6) p.conj = j;
    if (p.conj < 0) throw IntegrityError("catalog: conjugate of " + p.label + " not found");
  }
  GMatrix triv_u = cat.irreps[0].u;
  for (int i = 0; i < m; ++i) {
    if (done[i]) continue;
    Irrep& p = cat.irreps[i];
    int c = p.conj, d = p.dim;
    auto rb = g.mor_basis(g.rep_tensor(p.u, cat.irreps[c].u), triv_u);
    if (rb.size() != 1)
      throw IntegrityError("catalog: conjugate pairing of " + p.label + " is not unique");
    p.R = std::sqrt((double)d) * rb[0];
    auto bb = g.mor_basis(g.rep_tensor(cat.irreps[c].u, p.u), triv_u);
    CMat idp = CMat::Identity(d, d);
    CMat comp = tensor_product(p.R.adjoint(), idp) * tensor_product(idp, bb[0]);
    Cx lambda = comp.trace() / (double)d;
    if (std::abs(lambda) < 1e-9)
      throw IntegrityError("catalog: degenerate conjugate equation for " + p.label);
    p.Rbar = bb[0] / lambda;
    done[i] = true;
    if (c != i) {
      cat.irreps[c].R = p.Rbar;
      cat.irreps[c].Rbar = p.R;
      done[c] = true;
    }
  }

  cat.fusion.assign(m, std::vector<std::vector<Fusion>>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      GMatrix t = g.rep_tensor(cat.irreps[i].u, cat.irreps[j].u);
      for (int s = 0; s < m; ++s)
        for (CMat& iso : g.mor_basis(t, cat.irreps[s].u))
          cat.fusion[i][j].push_back({s, std::move(iso)});
    }
  cat.validate();
  return cat;
}

}  // namespace qf
