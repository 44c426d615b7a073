#include "qfactor/star_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace qf {

CVec StarAlgebra::prod(const CVec& x, const CVec& y) const {
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

CVec StarAlgebra::star(const CVec& x) const { return star_m * x.conjugate(); }

CMat StarAlgebra::left_mult_matrix(const CVec& x) const {
  CMat l = CMat::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    CVec ej = CVec::Zero(dim);
    ej(j) = 1.0;
    l.col(j) = prod(x, ej);
  }
  return l;
}

CMat StarAlgebra::right_mult_matrix(const CVec& x) const {
  CMat r = CMat::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    CVec ej = CVec::Zero(dim);
    ej(j) = 1.0;
    r.col(j) = prod(ej, x);
  }
  return r;
}

Cx StarAlgebra::trace_of(const CVec& x) const { return left_mult_matrix(x).trace() / (double)dim; }

void StarAlgebra::validate(const Tolerance& tol) const {
  if (dim <= 0) throw StructuralError("algebra: dimension must be positive");
  if ((int)mult_t.size() != dim || unit_v.size() != dim || star_m.rows() != dim ||
      star_m.cols() != dim)
    throw StructuralError("algebra: tensor sizes do not match dimension");
  double th = tol.threshold(1.0);
  std::vector<CVec> e(dim, CVec::Zero(dim));
  for (int i = 0; i < dim; ++i) e[i](i) = 1.0;
  for (int i = 0; i < dim; ++i) {
    if ((prod(unit_v, e[i]) - e[i]).norm() > th || (prod(e[i], unit_v) - e[i]).norm() > th)
      throw IntegrityError("algebra: unit law fails");
    if ((star(star(e[i])) - e[i]).norm() > th)
      throw IntegrityError("algebra: star is not involutive");
    for (int j = 0; j < dim; ++j) {
      if ((star(prod(e[i], e[j])) - prod(star(e[j]), star(e[i]))).norm() > th)
        throw IntegrityError("algebra: star is not antimultiplicative");
      for (int k = 0; k < dim; ++k)
        if ((prod(prod(e[i], e[j]), e[k]) - prod(e[i], prod(e[j], e[k]))).norm() > th)
          throw IntegrityError("algebra: product is not associative");
    }
  }
  CMat gram(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) gram(i, j) = trace_of(prod(star(e[i]), e[j]));
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (gram + gram.adjoint()));
  if (es.eigenvalues().minCoeff() <= tol.atol)
    throw IntegrityError("algebra: the canonical trace is not faithful positive");
}

BMat WedderburnDecomp::apply(const CVec& x) const {
  BMat out = BMat::zero(blocks, 1, 1);
  for (int i = 0; i < x.size(); ++i)
    if (x(i) != Cx(0)) out = out + phi[i].scaled(x(i));
  return out;
}

CVec WedderburnDecomp::invert(const BMat& b) const { return phi_inv_m * b.flatten(); }

namespace {

// basis of {T : T reps[r] = reps[r] T for all r}, reshaped row-major
std::vector<CMat> commutant_basis(const std::vector<CMat>& reps, double atol) {
  if (reps.empty()) return {};
  int k = (int)reps[0].rows();
  if (k == 0) return {};
  CMat stacked(reps.size() * k * k, k * k);
  CMat id = CMat::Identity(k, k);
  for (size_t r = 0; r < reps.size(); ++r)
    stacked.middleRows(r * k * k, k * k) =
        tensor_product(reps[r], id) - tensor_product(id, reps[r].transpose());
  CMat kb = kernel_basis(stacked, atol);
  std::vector<CMat> out;
  for (int c = 0; c < kb.cols(); ++c) {
    CVec v = kb.col(c);
    out.push_back(Eigen::Map<const CMat>(v.data(), k, k).transpose());
  }
  return out;
}

struct GnsRep {
  std::vector<CMat> left;  // orthonormalized left regular representation
};

GnsRep gns_rep(const StarAlgebra& a) {
  int n = a.dim;
  CMat gram(n, n);
  std::vector<CVec> e(n, CVec::Zero(n));
  for (int i = 0; i < n; ++i) e[i](i) = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram(i, j) = a.trace_of(a.prod(a.star(e[i]), e[j]));
  CMat gh = positive_sqrt(0.5 * (gram + gram.adjoint()));
  CMat ghi = gh.inverse();
  GnsRep out;
  for (int i = 0; i < n; ++i) out.left.push_back(gh * a.left_mult_matrix(e[i]) * ghi);
  return out;
}

void split_modules(const GnsRep& rep, const CMat& w, Rng& rng, std::vector<CMat>& out) {
  std::vector<CMat> compressed;
  for (const CMat& l : rep.left) compressed.push_back(w.adjoint() * l * w);
  std::vector<CMat> comm = commutant_basis(compressed, 1e-9);
  if (comm.size() <= 1) {
    out.push_back(w);
    return;
  }
  for (int attempt = 0; attempt < 64; ++attempt) {
    CMat c = CMat::Zero(w.cols(), w.cols());
    for (const CMat& t : comm) c += Cx(rng.gaussian(), rng.gaussian()) * t;
    c = 0.5 * (c + c.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(c);
    std::vector<std::pair<int, int>> clusters;
    int begin = 0;
    for (int i = 1; i <= (int)w.cols(); ++i)
      if (i == (int)w.cols() || es.eigenvalues()(i) - es.eigenvalues()(i - 1) > 1e-7) {
        clusters.emplace_back(begin, i);
        begin = i;
      }
    if (clusters.size() < 2) continue;
    for (auto [b, e] : clusters)
      split_modules(rep, w * es.eigenvectors().middleCols(b, e - b), rng, out);
    return;
  }
  throw IntegrityError("wedderburn: failed to split a reducible module");
}

bool vec_less(const std::vector<Cx>& a, const std::vector<Cx>& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i].real() - b[i].real()) > 1e-7) return a[i].real() < b[i].real();
    if (std::abs(a[i].imag() - b[i].imag()) > 1e-7) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace

WedderburnDecomp wedderburn(const StarAlgebra& a, unsigned long long seed) {
  int n = a.dim;
  GnsRep rep = gns_rep(a);
  Rng rng(seed ^ 0x6a09e667f3bcc909ULL);
  std::vector<CMat> modules;
  split_modules(rep, CMat::Identity(n, n), rng, modules);

  // one representative per equivalence class, recognized by its character
  std::vector<std::vector<CMat>> reps;
  std::vector<std::vector<Cx>> chars;
  for (const CMat& w : modules) {
    std::vector<CMat> r;
    std::vector<Cx> ch;
    for (const CMat& l : rep.left) {
      r.push_back(w.adjoint() * l * w);
      ch.push_back(r.back().trace());
    }
    bool dup = false;
    for (const auto& c : chars) {
      double d = 0;
      for (size_t i = 0; i < c.size(); ++i) d += std::abs(c[i] - ch[i]);
      dup = dup || d < 1e-6;
    }
    if (!dup) {
      reps.push_back(std::move(r));
      chars.push_back(std::move(ch));
    }
  }
  std::vector<int> order(reps.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    int dx = (int)reps[x][0].rows(), dy = (int)reps[y][0].rows();
    if (dx != dy) return dx < dy;
    return vec_less(chars[x], chars[y]);
  });

  WedderburnDecomp wd;
  int total = 0;
  for (int i : order) {
    wd.blocks.blocks.push_back((int)reps[i][0].rows());
    total += (int)(reps[i][0].rows() * reps[i][0].rows());
  }
  if (total != n)
    throw IntegrityError("wedderburn: block dimensions do not account for the algebra");
  for (int i = 0; i < n; ++i) {
    BMat im = BMat::zero(wd.blocks, 1, 1);
    for (size_t b = 0; b < order.size(); ++b) im.blocks[b] = reps[order[b]][i];
    wd.phi.push_back(im);
  }
  wd.phi_m = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i) wd.phi_m.col(i) = wd.phi[i].flatten();
  if (matrix_rank(wd.phi_m, 1e-9) != n)
    throw IntegrityError("wedderburn: the block map is not bijective");
  wd.phi_inv_m = wd.phi_m.inverse();

  std::vector<CVec> e(n, CVec::Zero(n));
  for (int i = 0; i < n; ++i) e[i](i) = 1.0;
  double res = (wd.apply(a.unit_v) - BMat::identity(wd.blocks, 1)).norm();
  for (int i = 0; i < n; ++i) {
    res = std::max(res, (wd.apply(a.star(e[i])) - wd.phi[i].adjoint()).norm());
    for (int j = 0; j < n; ++j)
      res = std::max(res, (wd.apply(a.prod(e[i], e[j])) - wd.phi[i] * wd.phi[j]).norm());
  }
  wd.residual = res;
  if (res > 1e-8) throw IntegrityError("wedderburn: block map is not a *-homomorphism");
  return wd;
}

int center_dimension(const StarAlgebra& a, double atol) {
  int n = a.dim;
  CMat stacked(n * n, n);
  std::vector<CVec> e(n, CVec::Zero(n));
  for (int i = 0; i < n; ++i) e[i](i) = 1.0;
  for (int i = 0; i < n; ++i)
    stacked.middleRows(i * n, n) = a.left_mult_matrix(e[i]) - a.right_mult_matrix(e[i]);
  return n - matrix_rank(stacked, atol);
}

StarAlgebra subalgebra_from_basis(const StarAlgebra& a, const std::vector<CVec>& basis,
                                  const Tolerance& tol) {
  int k = (int)basis.size();
  CMat b(a.dim, k);
  for (int i = 0; i < k; ++i) b.col(i) = basis[i];
  if (matrix_rank(b, tol.atol) != k)
    throw StructuralError("subalgebra: basis is linearly dependent");
  auto coords = [&](const CVec& x) {
    CVec c = lstsq(b, x);
    if ((b * c - x).norm() > tol.threshold(std::max(1.0, x.norm())))
      throw IntegrityError("subalgebra: span is not closed");
    return c;
  };
  StarAlgebra s;
  s.dim = k;
  s.mult_t.assign(k, std::vector<CVec>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) s.mult_t[i][j] = coords(a.prod(basis[i], basis[j]));
  s.unit_v = coords(a.unit_v);
  s.star_m = CMat::Zero(k, k);
  for (int i = 0; i < k; ++i) s.star_m.col(i) = coords(a.star(basis[i]));
  return s;
}

StarAlgebra algebra_of_blocks(const BlockAlgebra& b) {
  int n = b.dim();
  StarAlgebra s;
  s.dim = n;
  s.mult_t.assign(n, std::vector<CVec>(n));
  std::vector<BMat> units;
  for (int mu = 0; mu < n; ++mu) {
    CVec c = CVec::Zero(n);
    c(mu) = 1.0;
    units.push_back(algebra_element(b, c));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.mult_t[i][j] = algebra_coords(units[i] * units[j]);
  s.unit_v = algebra_coords(BMat::identity(b, 1));
  s.star_m = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i) s.star_m.col(i) = algebra_coords(units[i].adjoint());
  return s;
}

StarAlgebra algebra_of_quantum_group(const QuantumGroup& g) {
  StarAlgebra s;
  s.dim = g.dim;
  s.mult_t = g.mult_t;
  s.unit_v = g.unit_v;
  s.star_m = g.star_m;
  return s;
}

StarAlgebra tensor_algebra(const StarAlgebra& x, const StarAlgebra& y) {
  StarAlgebra s;
  s.dim = x.dim * y.dim;
  s.mult_t.assign(s.dim, std::vector<CVec>(s.dim));
  for (int i = 0; i < x.dim; ++i)
    for (int j = 0; j < y.dim; ++j)
      for (int k = 0; k < x.dim; ++k)
        for (int l = 0; l < y.dim; ++l) {
          CVec out = CVec::Zero(s.dim);
          const CVec& xm = x.mult_t[i][k];
          const CVec& ym = y.mult_t[j][l];
          for (int p = 0; p < x.dim; ++p)
            for (int q = 0; q < y.dim; ++q) out(p * y.dim + q) = xm(p) * ym(q);
          s.mult_t[i * y.dim + j][k * y.dim + l] = out;
        }
  s.unit_v = CVec::Zero(s.dim);
  for (int p = 0; p < x.dim; ++p)
    for (int q = 0; q < y.dim; ++q) s.unit_v(p * y.dim + q) = x.unit_v(p) * y.unit_v(q);
  s.star_m = tensor_product(x.star_m, y.star_m);
  return s;
}

ValidationReport verify_coaction(const StarAlgebra& a, const QuantumGroup& g,
                                 const std::vector<CMat>& alpha, const Tolerance& tol) {
  const int dim = a.dim;
  const int gd = g.dim;
  if (static_cast<int>(alpha.size()) != dim)
    throw StructuralError("coaction has " + std::to_string(alpha.size()) +
                          " coefficient matrices for an algebra of dimension " +
                          std::to_string(dim));
  for (const CMat& al : alpha)
    if (al.rows() != dim || al.cols() != gd)
      throw StructuralError("coaction coefficient matrix has the wrong shape");

  ValidationReport rep;
  double th = tol.threshold(1.0);

  CMat a_one = CMat::Zero(dim, gd);
  for (int k = 0; k < dim; ++k) a_one += a.unit_v(k) * alpha[k];
  CMat u_tensor = a.unit_v * g.unit_v.transpose();
  rep.add("coaction is unital", operator_norm(CMat(a_one - u_tensor)), th);

  double star_res = 0.0;
  for (int i = 0; i < dim; ++i) {
    CMat lhs = CMat::Zero(dim, gd);
    CVec si = a.star_m.col(i);
    for (int k = 0; k < dim; ++k) lhs += si(k) * alpha[k];
    CMat rhs = CMat::Zero(dim, gd);
    for (int j = 0; j < dim; ++j)
      for (int gg = 0; gg < gd; ++gg) {
        Cx c = std::conj(alpha[i](j, gg));
        if (std::abs(c) < 1e-15) continue;
        rhs += c * (a.star_m.col(j) * g.star_m.col(gg).transpose());
      }
    star_res = std::max(star_res, operator_norm(CMat(lhs - rhs)));
  }
  rep.add("coaction respects the involution", star_res, th);

  double mult_res = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      CMat lhs = CMat::Zero(dim, gd);
      const CVec& pr = a.mult_t[i][j];
      for (int k = 0; k < dim; ++k)
        if (std::abs(pr(k)) > 1e-15) lhs += pr(k) * alpha[k];
      CMat rhs = CMat::Zero(dim, gd);
      for (int j1 = 0; j1 < dim; ++j1)
        for (int g1 = 0; g1 < gd; ++g1) {
          Cx ca = alpha[i](j1, g1);
          if (std::abs(ca) < 1e-15) continue;
          for (int j2 = 0; j2 < dim; ++j2)
            for (int g2 = 0; g2 < gd; ++g2) {
              Cx cb = alpha[j](j2, g2);
              if (std::abs(cb) < 1e-15) continue;
              rhs += (ca * cb) * (a.mult_t[j1][j2] * g.mult_t[g1][g2].transpose());
            }
        }
      mult_res = std::max(mult_res, operator_norm(CMat(lhs - rhs)));
    }
  rep.add("coaction is multiplicative", mult_res, th);

  double coass_res = 0.0;
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int gg = 0; gg < gd; ++gg) {
        CVec x1 = CVec::Zero(gd);
        for (int j = 0; j < dim; ++j)
          if (std::abs(alpha[k](j, gg)) > 1e-15) x1 += alpha[k](j, gg) * alpha[j].row(i).transpose();
        CVec x2 = CVec::Zero(gd);
        for (int h = 0; h < gd; ++h)
          if (std::abs(alpha[k](i, h)) > 1e-15) x2 += alpha[k](i, h) * g.comult_t[h].col(gg);
        coass_res = std::max(coass_res, (x1 - x2).norm());
      }
  rep.add("coaction is coassociative", coass_res, th);

  CMat stacked(dim * gd, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < gd; ++k) stacked(j * gd + k, i) = alpha[i](j, k);
  int inj_deficit = dim - matrix_rank(stacked, 1e-7);
  rep.add("coaction is injective", static_cast<double>(inj_deficit), 0.0);

  std::vector<CMat> translates;
  translates.reserve(static_cast<std::size_t>(dim) * gd);
  for (int gg = 0; gg < gd; ++gg) {
    CVec eg = CVec::Zero(gd);
    eg(gg) = 1.0;
    CMat lg = g.left_mult_matrix(eg);
    for (int i = 0; i < dim; ++i) translates.push_back(CMat(alpha[i] * lg.transpose()));
  }
  int density_deficit = dim * gd - span_rank(translates, Tolerance{1e-7, 1e-7});
  rep.add("coaction translates span the full crossed tensor space",
          static_cast<double>(density_deficit), 0.0);

  return rep;
}

}  // namespace qf
