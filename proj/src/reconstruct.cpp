#include "qfactor/reconstruct.hpp"

#include <algorithm>
#include <cmath>

namespace qf {

CVec GammaSpace::coords(const BMat& x) const {
  CVec c = CVec::Zero(cdim);
  for (int k = 0; k < cdim; ++k) c(k) = basis[k].flatten().dot(x.flatten());
  return c;
}

BMat GammaSpace::combine(const CVec& c) const {
  if (cdim == 0 || basis.empty())
    throw StructuralError("gamma space: cannot combine over an empty basis");
  BMat out = basis[0].scaled(c(0));
  for (int k = 1; k < cdim; ++k) out = out + basis[k].scaled(c(k));
  return out;
}

GammaSpace gamma_space(const FactorSystem& fs, int irrep) {
  GammaSpace g;
  g.rows = fs.hdim[irrep];
  BMat p = fs.gamma[irrep].image_of_one();
  for (int b = 0; b < fs.base.nblocks(); ++b) {
    int nb = fs.base.blocks[b];
    CMat w = column_space_basis(p.blocks[b], 1e-9);
    for (int r = 0; r < w.cols(); ++r)
      for (int q = 0; q < nb; ++q) {
        BMat x = BMat::zero(fs.base, g.rows, 1);
        CMat blk = CMat::Zero(g.rows * nb, nb);
        blk.col(q) = w.col(r);
        x.blocks[b] = blk;
        g.basis.push_back(std::move(x));
      }
  }
  g.cdim = (int)g.basis.size();
  return g;
}

GammaSpace gamma_space(const FactorSystem& fs, const RepDecomp& d) {
  GammaSpace g;
  g.rows = fs.hdim_of(d);
  int off = 0;
  for (int p : d.parts) {
    GammaSpace part = gamma_space(fs, p);
    for (const BMat& x : part.basis) {
      BMat big = BMat::zero(fs.base, g.rows, 1);
      big.set_block(off, 0, x);
      g.basis.push_back(std::move(big));
    }
    off += fs.hdim[p];
  }
  g.cdim = (int)g.basis.size();
  return g;
}

BMat mult_map(const FactorSystem& fs, int i, int j, const BMat& x, const BMat& y) {
  return fs.om(i, j) * fs.gamma[j].amplify(x) * y;
}

namespace {

// entrywise application of the block-diagonal homomorphism of a decomposition
BMat amplify_ext(const FactorSystem& fs, const RepDecomp& d, const BMat& x) {
  int h2 = fs.hdim_of(d);
  BMat out = BMat::zero(fs.base, x.rows * h2, x.cols * h2);
  for (int a = 0; a < x.rows; ++a)
    for (int b = 0; b < x.cols; ++b)
      out.set_block(a * h2, b * h2, fs.gamma_ext(d, x.entry(a, b)));
  return out;
}

BMat mult_map_ext(const FactorSystem& fs, const RepDecomp& d1, const RepDecomp& d2, const BMat& x,
                  const BMat& y) {
  return fs.omega_ext(d1, d2) * amplify_ext(fs, d2, x) * y;
}

std::vector<BMat> unit_elements(const BlockAlgebra& a) {
  std::vector<BMat> out;
  for (int mu = 0; mu < a.dim(); ++mu) {
    CVec c = CVec::Zero(a.dim());
    c(mu) = 1.0;
    out.push_back(algebra_element(a, c));
  }
  return out;
}

}  // namespace

CMat dual_morphism(const Catalog& c, int i, int j, int k) {
  const Fusion& f = c.fusion[i][j][k];
  int di = c.irreps[i].dim, dj = c.irreps[j].dim, ds = c.irreps[f.sigma].dim;
  int dp = di * dj;
  const CMat& rbi = c.irreps[i].Rbar;
  const CMat& rbj = c.irreps[j].Rbar;
  CMat rbp = CMat::Zero(dp * dp, 1);
  for (int a = 0; a < dj; ++a)
    for (int b = 0; b < di; ++b)
      for (int cc = 0; cc < di; ++cc)
        for (int e = 0; e < dj; ++e)
          rbp(((a * di + b) * di + cc) * dj + e, 0) = rbj(a * dj + e, 0) * rbi(b * di + cc, 0);
  CMat idp = CMat::Identity(dp, dp), ids = CMat::Identity(ds, ds);
  CMat lift = tensor_product(rbp, ids);
  CMat mid = tensor_product(idp, tensor_product(f.S.adjoint(), ids));
  CMat cap = tensor_product(idp, c.irreps[f.sigma].R.adjoint());
  return cap * mid * lift;
}

ValidationReport verify_unitary_tensor_functor(const FactorSystem& fs, const Tolerance& tol) {
  const Catalog& cat = *fs.cat;
  int m = (int)cat.irreps.size();
  double th = tol.threshold(1.0);
  ValidationReport rep;
  std::vector<GammaSpace> gs;
  for (int i = 0; i < m; ++i) gs.push_back(gamma_space(fs, i));
  std::vector<BMat> units = unit_elements(fs.base);

  double norm_res = std::abs((double)gs[0].cdim - (double)fs.base.dim());
  for (int i = 0; i < m; ++i)
    for (const BMat& x : gs[i].basis)
      for (const BMat& f : units) {
        norm_res = std::max(norm_res, (mult_map(fs, i, 0, x, f) - x * f).norm());
        norm_res =
            std::max(norm_res, (mult_map(fs, 0, i, f, x) - fs.gamma[i].apply(f) * x).norm());
      }
  rep.add("normalization", norm_res, th);

  double adj_res = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      RepDecomp t2 = rep_tensor2(cat, i, j);
      BMat pt = fs.gamma_ext_one(t2);
      for (size_t k = 0; k < cat.fusion[i][j].size(); ++k) {
        const Fusion& f = cat.fusion[i][j][k];
        CMat h1 = fs.h_functor(t2, rep_irrep(cat, f.sigma), f.S);
        CMat h2 = fs.h_functor(rep_irrep(cat, f.sigma), t2, f.S.adjoint());
        adj_res = std::max(adj_res, operator_norm(CMat(h1.adjoint() - h2)));
        BMat nat = BMat::scalar(fs.base, h1) * fs.gamma[f.sigma].image_of_one();
        adj_res = std::max(adj_res, (pt * nat - nat).norm());
        CMat sb = dual_morphism(cat, i, j, k);
        int ds = cat.irreps[f.sigma].dim;
        adj_res =
            std::max(adj_res, operator_norm(CMat(sb.adjoint() * sb - CMat::Identity(ds, ds))));
        GMatrix dst = cat.G.rep_tensor(cat.irreps[cat.irreps[j].conj].u,
                                       cat.irreps[cat.irreps[i].conj].u);
        const GMatrix& src = cat.irreps[cat.irreps[f.sigma].conj].u;
        adj_res = std::max(adj_res, operator_norm(CMat(cat.G.mor_project(dst, src, sb) - sb)));
      }
    }
  rep.add("adjoint compatibility", adj_res, th);

  double ass_res = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        RepDecomp ri = rep_irrep(cat, i), rk = rep_irrep(cat, k);
        RepDecomp tjk = rep_tensor2(cat, j, k), tij = rep_tensor2(cat, i, j);
        RepDecomp dl = rep_join(cat, ri, tjk), dr = rep_join(cat, tij, rk);
        BMat assoc =
            BMat::scalar(fs.base, fs.h_functor(dr, dl, CMat::Identity(dl.ambient, dl.ambient)));
        for (const BMat& x : gs[i].basis)
          for (const BMat& y : gs[j].basis)
            for (const BMat& z : gs[k].basis) {
              BMat lhs = mult_map_ext(fs, ri, tjk, x, mult_map(fs, j, k, y, z));
              BMat rhs = mult_map_ext(fs, tij, rk, mult_map(fs, i, j, x, y), z);
              ass_res = std::max(ass_res, (assoc * lhs - rhs).norm());
            }
      }
  rep.add("associativity", ass_res, th);

  double uni_res = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int target = 0;
      for (const Fusion& f : cat.fusion[i][j]) target += gs[f.sigma].cdim;
      std::vector<BMat> images;
      for (const BMat& x : gs[i].basis)
        for (const BMat& y : gs[j].basis) images.push_back(mult_map(fs, i, j, x, y));
      for (size_t a = 0; a < images.size(); ++a)
        for (size_t b = 0; b < images.size(); ++b) {
          const BMat& x1 = gs[i].basis[a / gs[j].cdim];
          const BMat& y1 = gs[j].basis[a % gs[j].cdim];
          const BMat& x2 = gs[i].basis[b / gs[j].cdim];
          const BMat& y2 = gs[j].basis[b % gs[j].cdim];
          BMat lhs = images[a].adjoint() * images[b];
          BMat rhs = y1.adjoint() * fs.gamma[j].apply(x1.adjoint() * x2) * y2;
          uni_res = std::max(uni_res, (lhs - rhs).norm());
        }
      std::vector<CMat> flat;
      for (const BMat& im : images) flat.push_back(CMat(im.flatten()));
      int rank = span_rank(flat, Tolerance{1e-7, 1e-7});
      uni_res = std::max(uni_res, std::abs((double)rank - (double)target));
    }
  rep.add("unitarity", uni_res, th);
  return rep;
}

GradedAlgebra build_algebra(const FactorSystem& fs, const Tolerance& tol) {
  ValidationReport axioms = fs.validate(tol);
  if (!axioms.ok)
    throw IntegrityError("reconstruction refused, axiom failed: " + axioms.first_failure());
  ValidationReport functor = verify_unitary_tensor_functor(fs, tol);
  if (!functor.ok)
    throw IntegrityError("reconstruction refused, functor obligation failed: " +
                         functor.first_failure());

  const Catalog& cat = *fs.cat;
  int m = (int)cat.irreps.size();
  GradedAlgebra g;
  g.base = fs.base;
  g.cat = fs.cat;
  for (int i = 0; i < m; ++i) g.gs.push_back(gamma_space(fs, i));
  int dim = 0;
  for (int t = 0; t < m; ++t) {
    g.offsets.push_back(dim);
    g.mdim.push_back(g.gs[cat.irreps[t].conj].cdim);
    dim += cat.irreps[t].dim * g.mdim[t];
  }
  g.alg.dim = dim;

  g.alg.unit_v = CVec::Zero(dim);
  CVec one_c = g.gs[0].coords(BMat::identity(fs.base, 1));
  for (int jj = 0; jj < g.mdim[0]; ++jj) g.alg.unit_v(g.flat(0, 0, jj)) = one_c(jj);

  g.alg.mult_t.assign(dim, std::vector<CVec>(dim, CVec::Zero(dim)));
  for (int t1 = 0; t1 < m; ++t1)
    for (int t2 = 0; t2 < m; ++t2) {
      int c1 = cat.irreps[t1].conj, c2 = cat.irreps[t2].conj;
      int d2 = cat.irreps[t2].dim;
      RepDecomp rev = rep_tensor2(cat, c2, c1);
      struct PartData {
        int sigma;
        CMat sk_adj;
        BMat hadj;
      };
      std::vector<PartData> parts;
      for (size_t k = 0; k < cat.fusion[t1][t2].size(); ++k) {
        const Fusion& f = cat.fusion[t1][t2][k];
        CMat sb = dual_morphism(cat, t1, t2, k);
        CMat h = fs.h_functor(rev, rep_irrep(cat, cat.irreps[f.sigma].conj), sb);
        parts.push_back({f.sigma, CMat(f.S.adjoint()), BMat::scalar(fs.base, CMat(h.adjoint()))});
      }
      for (int j1 = 0; j1 < g.mdim[t1]; ++j1)
        for (int j2 = 0; j2 < g.mdim[t2]; ++j2) {
          const BMat& x = g.gs[c1].basis[j1];
          const BMat& y = g.gs[c2].basis[j2];
          BMat z = mult_map(fs, c2, c1, y, x);
          for (const PartData& pd : parts) {
            int cs = cat.irreps[pd.sigma].conj;
            CVec cw = g.gs[cs].coords(pd.hadj * z);
            for (int r = 0; r < cat.irreps[t1].dim; ++r)
              for (int s = 0; s < d2; ++s) {
                CVec vk = pd.sk_adj.col(r * d2 + s);
                CVec& out = g.alg.mult_t[g.flat(t1, r, j1)][g.flat(t2, s, j2)];
                for (int tt = 0; tt < cat.irreps[pd.sigma].dim; ++tt)
                  for (int jj = 0; jj < g.gs[cs].cdim; ++jj)
                    out(g.flat(pd.sigma, tt, jj)) += vk(tt) * cw(jj);
              }
          }
        }
    }

  g.alg.star_m = CMat::Zero(dim, dim);
  for (int t = 0; t < m; ++t) {
    int p = cat.irreps[t].conj;
    int d = cat.irreps[t].dim;
    RepDecomp tpc = rep_tensor2(cat, p, t);
    GammaSpace target = gamma_space(fs, tpc);
    CVec w0 = target.coords(
        BMat::scalar(fs.base, fs.h_functor(tpc, rep_irrep(cat, 0), cat.irreps[p].R)));
    for (int j1 = 0; j1 < g.mdim[t]; ++j1) {
      const BMat& x = g.gs[p].basis[j1];
      CMat mx(target.cdim, g.gs[t].cdim);
      for (int jj = 0; jj < g.gs[t].cdim; ++jj)
        mx.col(jj) = target.coords(mult_map(fs, p, t, x, g.gs[t].basis[jj]));
      CVec xplus = mx.adjoint() * w0;
      for (int r = 0; r < d; ++r)
        for (int b = 0; b < d; ++b)
          for (int jj = 0; jj < g.mdim[p]; ++jj)
            g.alg.star_m(g.flat(p, b, jj), g.flat(t, r, j1)) +=
                cat.irreps[p].Rbar(r * d + b, 0) * xplus(jj);
    }
  }

  for (int t = 0; t < m; ++t) {
    int d = cat.irreps[t].dim;
    for (int r = 0; r < d; ++r)
      for (int j = 0; j < g.mdim[t]; ++j) {
        CMat al = CMat::Zero(dim, cat.G.dim);
        for (int i = 0; i < d; ++i) al.row(g.flat(t, i, j)) = cat.irreps[t].u.at(i, r).transpose();
        g.coaction.push_back(std::move(al));
      }
  }

  g.alg.validate(tol);

  ValidationReport cr = verify_coaction(g.alg, cat.G, g.coaction, tol);
  if (!cr.ok)
    throw IntegrityError("reconstructed coaction failed verification: " + cr.first_failure());
  return g;
}

FreenessResult check_free_m_surjective(const FactorSystem& fs, const Tolerance& tol) {
  (void)tol;
  const Catalog& cat = *fs.cat;
  int m = (int)cat.irreps.size();
  std::vector<GammaSpace> gs;
  for (int i = 0; i < m; ++i) gs.push_back(gamma_space(fs, i));
  if (gs[0].cdim != fs.base.dim())
    return {false, "trivial multiplicity space has dimension " + std::to_string(gs[0].cdim) +
                       " instead of " + std::to_string(fs.base.dim())};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int target = 0;
      for (const Fusion& f : cat.fusion[i][j]) target += gs[f.sigma].cdim;
      std::vector<CMat> flat;
      for (const BMat& x : gs[i].basis)
        for (const BMat& y : gs[j].basis) flat.push_back(CMat(mult_map(fs, i, j, x, y).flatten()));
      int rank = span_rank(flat, Tolerance{1e-7, 1e-7});
      if (rank != target)
        return {false, "multiplication image at (" + cat.irreps[i].label + "," +
                           cat.irreps[j].label + ") has rank " + std::to_string(rank) + " of " +
                           std::to_string(target)};
    }
  return {true, ""};
}

}  // namespace qf
