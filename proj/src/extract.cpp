#include "qfactor/extract.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qf {

namespace {

CVec unit_coord(int n, int k) {
  CVec v = CVec::Zero(n);
  v(k) = 1.0;
  return v;
}

std::uint64_t mix_seed(std::uint64_t seed, int irrep) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(irrep + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  return x;
}

// Embedding of the block matrix units back into A, one column per unit.
CMat iota_matrix(const FixedPointData& fp) {
  const int nb = fp.wb.blocks.dim();
  CMat iota(fp.basis.rows(), nb);
  for (int mu = 0; mu < nb; ++mu)
    iota.col(mu) = fp.basis * fp.wb.invert(algebra_element(fp.wb.blocks, unit_coord(nb, mu)));
  return iota;
}

}  // namespace

ValidationReport DynamicalSystem::validate(const Tolerance& tol) const {
  if (!cat) throw StructuralError("dynamical system has no catalog");
  if (static_cast<int>(alpha.size()) != a.dim)
    throw StructuralError("dynamical system has " + std::to_string(alpha.size()) +
                          " coaction matrices for an algebra of dimension " +
                          std::to_string(a.dim));
  a.validate(tol);
  return verify_coaction(a, cat->G, alpha, tol);
}

DynamicalSystem dynamical_system_of(const GradedAlgebra& g) {
  DynamicalSystem ds;
  ds.a = g.alg;
  ds.cat = g.cat;
  ds.alpha = g.coaction;
  return ds;
}

DynamicalSystem ds_tensor_trivial(const BlockAlgebra& b, std::shared_ptr<const Catalog> cat) {
  DynamicalSystem ds;
  ds.cat = cat;
  const QuantumGroup& g = cat->G;
  StarAlgebra left = algebra_of_blocks(b);
  ds.a = tensor_algebra(left, algebra_of_quantum_group(g));
  ds.alpha.reserve(ds.a.dim);
  for (int i = 0; i < left.dim; ++i)
    for (int x = 0; x < g.dim; ++x) {
      CMat al = CMat::Zero(ds.a.dim, g.dim);
      for (int y = 0; y < g.dim; ++y)
        for (int c = 0; c < g.dim; ++c) al(i * g.dim + y, c) = g.comult_t[x](y, c);
      ds.alpha.push_back(std::move(al));
    }
  return ds;
}

DynamicalSystem m2_gauge_ds(std::shared_ptr<const Catalog> cat) {
  if (cat->G.name != "dual:z2")
    throw StructuralError("the matrix gauge action lives over dual:z2, got " + cat->G.name);
  DynamicalSystem ds;
  ds.cat = cat;
  ds.a = algebra_of_blocks(BlockAlgebra{{2}});
  const int deg[4] = {0, 1, 1, 0};  // e11, e12, e21, e22
  for (int i = 0; i < 4; ++i) {
    CMat al = CMat::Zero(4, 2);
    al(i, deg[i]) = 1.0;
    ds.alpha.push_back(std::move(al));
  }
  return ds;
}

DynamicalSystem trivial_coaction_ds(std::shared_ptr<const Catalog> cat) {
  DynamicalSystem ds;
  ds.cat = cat;
  ds.a = algebra_of_blocks(BlockAlgebra{{1, 1}});
  for (int i = 0; i < ds.a.dim; ++i) {
    CMat al = CMat::Zero(ds.a.dim, cat->G.dim);
    al.row(i) = cat->G.unit_v.transpose();
    ds.alpha.push_back(std::move(al));
  }
  return ds;
}

CMat fixed_point_projection(const DynamicalSystem& ds) {
  const QuantumGroup& g = ds.cat->G;
  CVec hv(g.dim);
  for (int k = 0; k < g.dim; ++k) hv(k) = g.haar(unit_coord(g.dim, k));
  CMat e(ds.a.dim, ds.a.dim);
  for (int i = 0; i < ds.a.dim; ++i) e.col(i) = ds.alpha[i] * hv;
  return e;
}

FixedPointData fixed_point_data(const DynamicalSystem& ds, const Tolerance& tol) {
  const int n = ds.a.dim;
  const int gd = ds.cat->G.dim;
  CMat m = CMat::Zero(n * gd, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < gd; ++k)
        m(j * gd + k, i) = ds.alpha[i](j, k) - (i == j ? ds.cat->G.unit_v(k) : Cx(0.0));
  FixedPointData fp;
  fp.basis = kernel_basis(m, 1e-9);
  if (fp.basis.cols() == 0) throw IntegrityError("the action has no fixed points");
  std::vector<CVec> cols;
  for (int c = 0; c < fp.basis.cols(); ++c) cols.push_back(fp.basis.col(c));
  fp.sub = subalgebra_from_basis(ds.a, cols, tol);
  fp.wb = wedderburn(fp.sub);
  return fp;
}

CMat isotypic_projection(const DynamicalSystem& ds, int irrep) {
  const QuantumGroup& g = ds.cat->G;
  const Irrep& p = ds.cat->irreps[irrep];
  CMat lm = g.left_mult_matrix(g.star(g.character(p.u)));
  CVec w(g.dim);
  for (int k = 0; k < g.dim; ++k) w(k) = g.haar(lm.col(k));
  CMat proj(ds.a.dim, ds.a.dim);
  for (int i = 0; i < ds.a.dim; ++i) proj.col(i) = static_cast<double>(p.dim) * (ds.alpha[i] * w);
  return proj;
}

CMat multiplicity_space(const DynamicalSystem& ds, const GMatrix& u) {
  const QuantumGroup& g = ds.cat->G;
  const int n = ds.a.dim;
  const int gd = g.dim;
  const int d = u.rows;
  CMat k = CMat::Zero(d * n * gd, d * n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      CMat lg = g.left_mult_matrix(u.at(i, j));
      for (int mu = 0; mu < n; ++mu) {
        CMat t = ds.alpha[mu] * lg.transpose();
        for (int a = 0; a < n; ++a)
          for (int h = 0; h < gd; ++h) {
            Cx val = t(a, h);
            if (i == j && a == mu) val -= g.unit_v(h);
            k(i * n * gd + a * gd + h, j * n + mu) = val;
          }
      }
    }
  return kernel_basis(k, 1e-9);
}

CMat multiplicity_space(const DynamicalSystem& ds, int irrep) {
  return multiplicity_space(ds, ds.cat->irreps[irrep].u);
}

MoritaModule multiplicity_module(const DynamicalSystem& ds, const FixedPointData& fp,
                                 const CMat& basis, const Tolerance& tol) {
  const int n = ds.a.dim;
  const int d = basis.rows() == 0 ? 1 : static_cast<int>(basis.rows()) / n;
  const int md = static_cast<int>(basis.cols());
  const int nb = fp.wb.blocks.dim();
  const double gate = std::max(1e-7, tol.threshold(1.0));
  CMat iota = iota_matrix(fp);

  MoritaModule mod;
  mod.base = fp.wb.blocks;
  mod.dim = md;
  mod.act.assign(md, std::vector<CVec>(nb));
  mod.inner.assign(md, std::vector<BMat>(md));
  for (int i = 0; i < md; ++i)
    for (int mu = 0; mu < nb; ++mu) {
      CVec flat(d * n);
      for (int v = 0; v < d; ++v)
        flat.segment(v * n, n) = ds.a.prod(basis.col(i).segment(v * n, n), iota.col(mu));
      CVec c = basis.adjoint() * flat;
      if ((basis * c - flat).norm() > gate)
        throw IntegrityError("multiplicity space is not stable under the fixed point algebra");
      mod.act[i][mu] = c;
    }
  for (int i = 0; i < md; ++i)
    for (int j = 0; j < md; ++j) {
      CVec w = CVec::Zero(n);
      for (int v = 0; v < d; ++v)
        w += ds.a.prod(ds.a.star(basis.col(i).segment(v * n, n)),
                       basis.col(j).segment(v * n, n));
      CVec c = fp.basis.adjoint() * w;
      if ((fp.basis * c - w).norm() > gate)
        throw IntegrityError("multiplicity pairing leaves the fixed point subalgebra");
      mod.inner[i][j] = fp.wb.apply(c);
    }
  mod.validate(Tolerance{1e-7, 1e-7});
  return mod;
}

namespace {

GMatrix assemble_coisometry(const StarAlgebra& a, int d, const CMat& basis,
                            const std::vector<CVec>& frame) {
  const int n = a.dim;
  GMatrix s = GMatrix::zero(d, static_cast<int>(frame.size()), n);
  for (int col = 0; col < static_cast<int>(frame.size()); ++col)
    for (int v = 0; v < d; ++v) {
      CVec e = CVec::Zero(n);
      for (int i = 0; i < basis.cols(); ++i) e += frame[col](i) * basis.col(i).segment(v * n, n);
      s.at(v, col) = e;
    }
  return s;
}

double coisometry_defect(const StarAlgebra& a, const GMatrix& s) {
  double worst = 0.0;
  for (int v = 0; v < s.rows; ++v)
    for (int w = 0; w < s.rows; ++w) {
      CVec acc = CVec::Zero(a.dim);
      for (int c = 0; c < s.cols; ++c) acc += a.prod(s.at(v, c), a.star(s.at(w, c)));
      if (v == w) acc -= a.unit_v;
      worst = std::max(worst, acc.norm());
    }
  return worst;
}

GMatrix irrep_coisometry(const DynamicalSystem& ds, const FixedPointData& fp, int irrep,
                         const CMat& basis, const Tolerance& tol) {
  if (irrep == 0) {
    GMatrix s = GMatrix::zero(1, 1, ds.a.dim);
    s.at(0, 0) = ds.a.unit_v;
    return s;
  }
  MoritaModule mod = multiplicity_module(ds, fp, basis, tol);
  GMatrix s = assemble_coisometry(ds.a, ds.cat->irreps[irrep].dim, basis, mod.parseval_frame());
  double defect = coisometry_defect(ds.a, s);
  if (defect > std::max(1e-7, tol.threshold(1.0)))
    throw IntegrityError("the action is not free: the multiplicity frame at " +
                         ds.cat->irreps[irrep].label + " has coisometry defect " +
                         std::to_string(defect));
  return s;
}

CMat rotated_basis(const DynamicalSystem& ds, int irrep, std::uint64_t seed) {
  CMat basis = multiplicity_space(ds, irrep);
  if (irrep != 0 && basis.cols() > 0) {
    Rng rng(mix_seed(seed, irrep));
    basis = basis * rng.unitary(static_cast<int>(basis.cols()));
  }
  return basis;
}

// Projection of an invariant element of A onto its block picture.
BMat to_block(const FixedPointData& fp, const CMat& efix, const CVec& x, double gate) {
  CVec xf = efix * x;
  if ((xf - x).norm() > gate * (1.0 + x.norm()))
    throw IntegrityError("extracted structure entry is not fixed by the action");
  return fp.wb.apply(fp.basis.adjoint() * xf);
}

}  // namespace

GMatrix coisometry_for(const DynamicalSystem& ds, int irrep, std::uint64_t seed,
                       const Tolerance& tol) {
  FixedPointData fp = fixed_point_data(ds, tol);
  return irrep_coisometry(ds, fp, irrep, rotated_basis(ds, irrep, seed), tol);
}

Extraction factor_system_of(const DynamicalSystem& ds, std::uint64_t seed, const Tolerance& tol) {
  const Catalog& cat = *ds.cat;
  const int m = static_cast<int>(cat.irreps.size());
  const double gate = std::max(1e-7, tol.threshold(1.0));

  Extraction ex;
  ex.fixed = fixed_point_data(ds, tol);
  CMat efix = fixed_point_projection(ds);
  CMat iota = iota_matrix(ex.fixed);
  const int nb = ex.fixed.wb.blocks.dim();

  for (int t = 0; t < m; ++t) {
    ex.bases.push_back(rotated_basis(ds, t, seed));
    ex.s.push_back(irrep_coisometry(ds, ex.fixed, t, ex.bases.back(), tol));
  }

  FactorSystem fs;
  fs.base = ex.fixed.wb.blocks;
  fs.cat = ds.cat;
  for (int t = 0; t < m; ++t) {
    const GMatrix& s = ex.s[t];
    const int h = s.cols;
    fs.hdim.push_back(h);
    StarHom gam;
    gam.base = fs.base;
    gam.hdim = h;
    for (int mu = 0; mu < nb; ++mu) {
      BMat img = BMat::zero(fs.base, h, h);
      for (int k = 0; k < h; ++k)
        for (int l = 0; l < h; ++l) {
          CVec acc = CVec::Zero(ds.a.dim);
          for (int v = 0; v < s.rows; ++v)
            acc += ds.a.prod(ds.a.star(s.at(v, k)), ds.a.prod(iota.col(mu), s.at(v, l)));
          img.set_entry(k, l, to_block(ex.fixed, efix, acc, gate));
        }
      gam.images.push_back(std::move(img));
    }
    fs.gamma.push_back(std::move(gam));
  }

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const auto& parts = cat.fusion[i][j];
      const int di = cat.irreps[i].dim;
      const int dj = cat.irreps[j].dim;
      const int hi = fs.hdim[i];
      const int hj = fs.hdim[j];
      int rows = 0;
      for (const Fusion& f : parts) rows += fs.hdim[f.sigma];
      BMat om = BMat::zero(fs.base, rows, hi * hj);
      int off = 0;
      for (const Fusion& f : parts) {
        const int hs = fs.hdim[f.sigma];
        const int dsg = cat.irreps[f.sigma].dim;
        for (int a1 = 0; a1 < hs; ++a1) {
          std::vector<CVec> tcol(di * dj, CVec::Zero(ds.a.dim));
          for (int vw = 0; vw < di * dj; ++vw)
            for (int tau = 0; tau < dsg; ++tau)
              if (std::abs(f.S(vw, tau)) > 1e-15)
                tcol[vw] += f.S(vw, tau) * ex.s[f.sigma].at(tau, a1);
          for (int p = 0; p < hi; ++p)
            for (int q = 0; q < hj; ++q) {
              CVec acc = CVec::Zero(ds.a.dim);
              for (int v = 0; v < di; ++v)
                for (int w = 0; w < dj; ++w)
                  acc += ds.a.prod(ds.a.star(tcol[v * dj + w]),
                                   ds.a.prod(ex.s[i].at(v, p), ex.s[j].at(w, q)));
              om.set_entry(off + a1, p * hj + q, to_block(ex.fixed, efix, acc, gate));
            }
        }
        off += hs;
      }
      fs.omega[{i, j}] = std::move(om);
    }

  ex.fs = std::move(fs);
  return ex;
}

FreenessResult check_free_ellwood(const DynamicalSystem& ds, const Tolerance& tol) {
  (void)tol;
  const int n = ds.a.dim;
  const int gd = ds.cat->G.dim;
  std::vector<CMat> items;
  items.reserve(static_cast<std::size_t>(n) * n);
  for (int mu = 0; mu < n; ++mu) {
    CMat lm = ds.a.left_mult_matrix(unit_coord(n, mu));
    for (int i = 0; i < n; ++i) items.push_back(CMat(lm * ds.alpha[i]));
  }
  int got = span_rank(items, Tolerance{1e-7, 1e-7});
  int want = n * gd;
  if (got != want)
    return {false, "products (a x 1) alpha(b) span " + std::to_string(got) + " of " +
                       std::to_string(want) + " dimensions"};
  return {true, "products (a x 1) alpha(b) span the full tensor product"};
}

FreenessResult check_free_m_surjective(const DynamicalSystem& ds, const Tolerance& tol) {
  (void)tol;
  const Catalog& cat = *ds.cat;
  const int m = static_cast<int>(cat.irreps.size());
  const int n = ds.a.dim;
  std::vector<CMat> bases(m);
  for (int t = 0; t < m; ++t) bases[t] = multiplicity_space(ds, t);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const int di = cat.irreps[i].dim;
      const int dj = cat.irreps[j].dim;
      CMat target = multiplicity_space(ds, cat.G.rep_tensor(cat.irreps[i].u, cat.irreps[j].u));
      const int want = static_cast<int>(target.cols());
      std::vector<CMat> prods;
      for (int a = 0; a < bases[i].cols(); ++a)
        for (int b = 0; b < bases[j].cols(); ++b) {
          CVec z(di * dj * n);
          for (int v = 0; v < di; ++v)
            for (int w = 0; w < dj; ++w)
              z.segment((v * dj + w) * n, n) =
                  ds.a.prod(bases[j].col(b).segment(w * n, n),
                            bases[i].col(a).segment(v * n, n));
          prods.push_back(CMat(z));
        }
      int got = span_rank(prods, Tolerance{1e-7, 1e-7});
      if (got != want)
        return {false, "multiplication image at (" + cat.irreps[i].label + ", " +
                           cat.irreps[j].label + ") spans " + std::to_string(got) + " of " +
                           std::to_string(want) + " dimensions"};
    }
  return {true, "multiplication maps onto every tensor product multiplicity space"};
}

}  // namespace qf
