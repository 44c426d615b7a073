#include "qfactor/factor_system.hpp"

#include <algorithm>
#include <cmath>

namespace qf {

RepDecomp rep_irrep(const Catalog& c, int i) {
  RepDecomp d;
  d.parts = {i};
  d.isos = {CMat::Identity(c.irreps[i].dim, c.irreps[i].dim)};
  d.ambient = c.irreps[i].dim;
  return d;
}

RepDecomp rep_tensor2(const Catalog& c, int i, int j) {
  RepDecomp d;
  d.ambient = c.irreps[i].dim * c.irreps[j].dim;
  for (const Fusion& f : c.fusion[i][j]) {
    d.parts.push_back(f.sigma);
    d.isos.push_back(f.S);
  }
  return d;
}

RepDecomp rep_join(const Catalog& c, const RepDecomp& a, const RepDecomp& b) {
  RepDecomp d;
  d.ambient = a.ambient * b.ambient;
  for (size_t x = 0; x < a.parts.size(); ++x)
    for (size_t y = 0; y < b.parts.size(); ++y)
      for (const Fusion& f : c.fusion[a.parts[x]][b.parts[y]]) {
        d.parts.push_back(f.sigma);
        d.isos.push_back(tensor_product(a.isos[x], b.isos[y]) * f.S);
      }
  return d;
}

const BMat& FactorSystem::om(int i, int j) const {
  auto it = omega.find({i, j});
  if (it == omega.end())
    throw StructuralError("factor system: missing structure matrix at (" +
                          cat->irreps[i].label + "," + cat->irreps[j].label + ")");
  return it->second;
}

int FactorSystem::hdim_of(const RepDecomp& d) const {
  int h = 0;
  for (int p : d.parts) h += hdim[p];
  return h;
}

BMat FactorSystem::gamma_ext(const RepDecomp& d, const BMat& b) const {
  BMat out = BMat::zero(base, hdim_of(d), hdim_of(d));
  int off = 0;
  for (int p : d.parts) {
    out.set_block(off, off, gamma[p].apply(b));
    off += hdim[p];
  }
  return out;
}

BMat FactorSystem::gamma_ext_one(const RepDecomp& d) const {
  return gamma_ext(d, BMat::identity(base, 1));
}

BMat FactorSystem::omega_ext(const RepDecomp& a, const RepDecomp& b) const {
  int h1 = hdim_of(a), h2 = hdim_of(b);
  RepDecomp join = rep_join(*cat, a, b);
  BMat out = BMat::zero(base, hdim_of(join), h1 * h2);
  int join_off = 0, o1 = 0;
  for (size_t x = 0; x < a.parts.size(); ++x) {
    int hx = hdim[a.parts[x]];
    int o2 = 0;
    for (size_t y = 0; y < b.parts.size(); ++y) {
      int hy = hdim[b.parts[y]];
      const BMat& w = om(a.parts[x], b.parts[y]);
      int woff = 0;
      for (const Fusion& f : cat->fusion[a.parts[x]][b.parts[y]]) {
        int hk = hdim[f.sigma];
        BMat slice = w.sub_rows(woff, hk);
        for (int p = 0; p < hx; ++p)
          for (int q = 0; q < hy; ++q)
            out.set_block(join_off, (o1 + p) * h2 + (o2 + q), slice.sub_cols(p * hy + q, 1));
        woff += hk;
        join_off += hk;
      }
      o2 += hy;
    }
    o1 += hx;
  }
  return out;
}

CMat FactorSystem::h_functor(const RepDecomp& dst, const RepDecomp& src, const CMat& t) const {
  CMat out = CMat::Zero(hdim_of(dst), hdim_of(src));
  int roff = 0;
  for (size_t l = 0; l < dst.parts.size(); ++l) {
    int coff = 0;
    for (size_t k = 0; k < src.parts.size(); ++k) {
      int h = hdim[src.parts[k]];
      if (dst.parts[l] == src.parts[k]) {
        Cx c = (dst.isos[l].adjoint() * t * src.isos[k]).trace() /
               (double)cat->irreps[src.parts[k]].dim;
        out.block(roff, coff, h, h) = c * CMat::Identity(h, h);
      }
      coff += h;
    }
    roff += hdim[dst.parts[l]];
  }
  return out;
}

namespace {

std::vector<BMat> unit_elements(const BlockAlgebra& a) {
  std::vector<BMat> out;
  int d = a.dim();
  for (int mu = 0; mu < d; ++mu) {
    CVec c = CVec::Zero(d);
    c(mu) = 1.0;
    out.push_back(algebra_element(a, c));
  }
  return out;
}

}  // namespace

ValidationReport FactorSystem::validate(const Tolerance& tol) const {
  int m = (int)cat->irreps.size();
  if ((int)hdim.size() != m || (int)gamma.size() != m)
    throw StructuralError("factor system: one multiplicity space and one homomorphism per "
                          "irreducible are required");
  if (hdim[0] != 1) throw StructuralError("factor system: the trivial multiplicity space must be one dimensional");
  for (int i = 0; i < m; ++i) {
    if (gamma[i].hdim != hdim[i] || !(gamma[i].base == base))
      throw StructuralError("factor system: homomorphism shape mismatch at " +
                            cat->irreps[i].label);
    if ((int)gamma[i].images.size() != base.dim())
      throw StructuralError("factor system: homomorphism must list one image per matrix unit");
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const BMat& w = om(i, j);
      if (w.rows != hdim_of(rep_tensor2(*cat, i, j)) || w.cols != hdim[i] * hdim[j] ||
          !(w.alg == base))
        throw StructuralError("factor system: structure matrix shape mismatch at (" +
                              cat->irreps[i].label + "," + cat->irreps[j].label + ")");
    }

  ValidationReport rep;
  double th = tol.threshold(1.0);
  std::vector<BMat> units = unit_elements(base);

  double hom_res = 0.0;
  for (int i = 0; i < m; ++i) hom_res = std::max(hom_res, gamma[i].verify(tol).residual);
  rep.add("multiplicity maps are *-homomorphisms", hom_res, th);

  double norm_res = 0.0;
  for (size_t mu = 0; mu < units.size(); ++mu)
    norm_res = std::max(norm_res, (gamma[0].apply(units[mu]) - units[mu]).norm());
  norm_res = std::max(norm_res, (om(0, 0) - BMat::identity(base, 1)).norm());
  rep.add("normalization at the trivial representation", norm_res, th);

  double iso_res = 0.0, range_res = 0.0, coker_res = 0.0, cov_res = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const BMat& w = om(i, j);
      RepDecomp t2 = rep_tensor2(*cat, i, j);
      iso_res = std::max(iso_res, (w * w.adjoint() * w - w).norm());
      range_res = std::max(range_res, (w * w.adjoint() - gamma_ext_one(t2)).norm());
      coker_res = std::max(coker_res,
                           (w.adjoint() * w - gamma[j].amplify(gamma[i].image_of_one())).norm());
      for (const BMat& f : units)
        cov_res = std::max(cov_res,
                           (gamma_ext(t2, f) * w - w * gamma[j].amplify(gamma[i].apply(f))).norm());
    }
  rep.add("structure matrices are partial isometries", iso_res, th);
  rep.add("structure matrix ranges match the fused multiplicity projections", range_res, th);
  rep.add("structure matrix supports match the amplified projections", coker_res, th);
  rep.add("structure matrices intertwine the multiplicity actions", cov_res, th);

  double coc_res = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        RepDecomp ri = rep_irrep(*cat, i), rk = rep_irrep(*cat, k);
        RepDecomp tjk = rep_tensor2(*cat, j, k), tij = rep_tensor2(*cat, i, j);
        BMat lhs = omega_ext(ri, tjk) * om(j, k).kron_left(CMat::Identity(hdim[i], hdim[i]));
        BMat rhs = omega_ext(tij, rk) * gamma[k].amplify(om(i, j));
        RepDecomp dl = rep_join(*cat, ri, tjk), dr = rep_join(*cat, tij, rk);
        CMat assoc = h_functor(dr, dl, CMat::Identity(dl.ambient, dl.ambient));
        coc_res = std::max(coc_res, (BMat::scalar(base, assoc) * lhs - rhs).norm());
      }
  rep.add("associativity cocycle", coc_res, th);
  return rep;
}

FactorSystem trivial_system(const BlockAlgebra& base, std::shared_ptr<const Catalog> cat) {
  FactorSystem fs;
  fs.base = base;
  fs.cat = cat;
  int m = (int)cat->irreps.size();
  for (int i = 0; i < m; ++i) {
    fs.hdim.push_back(cat->irreps[i].dim);
    fs.gamma.push_back(StarHom::unital_amplification(base, cat->irreps[i].dim));
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int dt = cat->irreps[i].dim * cat->irreps[j].dim;
      CMat stacked(dt, dt);
      int off = 0;
      for (const Fusion& f : cat->fusion[i][j]) {
        stacked.middleRows(off, f.S.cols()) = f.S.adjoint();
        off += (int)f.S.cols();
      }
      fs.omega[{i, j}] = BMat::scalar(base, stacked);
    }
  return fs;
}

FactorSystem pauli_system(std::shared_ptr<const Catalog> cat) {
  if (cat->G.name != "dual:z2xz2")
    throw StructuralError("the two qubit model system is defined over dual:z2xz2");
  BlockAlgebra base{{1}};
  FactorSystem fs;
  fs.base = base;
  fs.cat = cat;
  int m = (int)cat->irreps.size();
  fs.hdim.assign(m, 1);
  for (int i = 0; i < m; ++i) fs.gamma.push_back(StarHom::unital_amplification(base, 1));

  // group element behind each catalog entry, read off the character
  std::vector<int> elem(m);
  for (int i = 0; i < m; ++i) {
    CVec chi = cat->G.character(cat->irreps[i].u);
    int best = 0;
    for (int g = 1; g < chi.size(); ++g)
      if (std::abs(chi(g)) > std::abs(chi(best))) best = g;
    elem[i] = best;
  }
  std::vector<CMat> sigma(4, CMat::Zero(2, 2));
  sigma[0] << 1, 0, 0, 1;
  sigma[1] << 1, 0, 0, -1;
  sigma[2] << 0, 1, 1, 0;
  sigma[3] = sigma[2] * sigma[1];
  GroupTable gt = GroupTable::builtin("z2xz2");
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int gh = gt.mul(elem[i], elem[j]);
      Cx c = (sigma[gh].adjoint() * sigma[elem[i]] * sigma[elem[j]]).trace() / 2.0;
      CMat w(1, 1);
      w << c;
      fs.omega[{i, j}] = BMat::scalar(base, w);
    }
  return fs;
}

FactorSystem conjugate_by(const FactorSystem& fs, const std::vector<int>& hdim2,
                          const std::vector<BMat>& v) {
  int m = (int)fs.cat->irreps.size();
  if ((int)hdim2.size() != m || (int)v.size() != m)
    throw StructuralError("conjugation: one map per irreducible is required");
  for (int i = 0; i < m; ++i)
    if (v[i].rows != fs.hdim[i] || v[i].cols != hdim2[i])
      throw StructuralError("conjugation: map shape mismatch at " + fs.cat->irreps[i].label);
  FactorSystem out;
  out.base = fs.base;
  out.cat = fs.cat;
  out.hdim = hdim2;
  std::vector<BMat> units = unit_elements(fs.base);
  for (int i = 0; i < m; ++i) {
    StarHom h;
    h.base = fs.base;
    h.hdim = hdim2[i];
    for (const BMat& f : units) h.images.push_back(v[i].adjoint() * fs.gamma[i].apply(f) * v[i]);
    out.gamma.push_back(std::move(h));
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const std::vector<Fusion>& parts = fs.cat->fusion[i][j];
      int ra = 0, rb = 0;
      for (const Fusion& f : parts) {
        ra += fs.hdim[f.sigma];
        rb += hdim2[f.sigma];
      }
      BMat vjoin = BMat::zero(fs.base, ra, rb);
      int oa = 0, ob = 0;
      for (const Fusion& f : parts) {
        vjoin.set_block(oa, ob, v[f.sigma]);
        oa += fs.hdim[f.sigma];
        ob += hdim2[f.sigma];
      }
      out.omega[{i, j}] = vjoin.adjoint() * fs.om(i, j) * fs.gamma[j].amplify(v[i]) *
                          v[j].kron_left(CMat::Identity(hdim2[i], hdim2[i]));
    }
  return out;
}

double fs_distance(const FactorSystem& a, const FactorSystem& b) {
  if (!(a.base == b.base) || a.hdim != b.hdim)
    throw StructuralError("system distance: shapes differ");
  double d = 0.0;
  int m = (int)a.cat->irreps.size();
  std::vector<BMat> units = unit_elements(a.base);
  for (int i = 0; i < m; ++i)
    for (const BMat& f : units)
      d = std::max(d, (a.gamma[i].apply(f) - b.gamma[i].apply(f)).norm());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) d = std::max(d, (a.om(i, j) - b.om(i, j)).norm());
  return d;
}

CleftResult is_cleft(const FactorSystem& fs, const Tolerance& tol) {
  for (size_t i = 0; i < fs.cat->irreps.size(); ++i) {
    std::vector<int> rv = fs.gamma[i].image_of_one().rank_vector(tol.atol);
    std::vector<int> want;
    for (int nb : fs.base.blocks) want.push_back(fs.cat->irreps[i].dim * nb);
    if (rv != want) {
      std::string ev = "multiplicity projection of " + fs.cat->irreps[i].label + " has ranks (";
      for (size_t k = 0; k < rv.size(); ++k) ev += (k ? "," : "") + std::to_string(rv[k]);
      ev += ") but a cleft system needs (";
      for (size_t k = 0; k < want.size(); ++k) ev += (k ? "," : "") + std::to_string(want[k]);
      ev += ")";
      return {false, ev};
    }
  }
  return {true, ""};
}

namespace {

// per-block orthonormal bases of {x : gamma_a(f) x = x gamma_b(f) for all f}
struct SolSpace {
  std::vector<std::vector<CMat>> basis;
};

SolSpace intertwiner_space(const FactorSystem& a, const FactorSystem& b, int i) {
  SolSpace s;
  const BlockAlgebra& alg = a.base;
  std::vector<BMat> units = unit_elements(alg);
  for (int blk = 0; blk < alg.nblocks(); ++blk) {
    int ra = a.hdim[i] * alg.blocks[blk], rb = b.hdim[i] * alg.blocks[blk];
    std::vector<CMat> out;
    if (ra > 0 && rb > 0) {
      CMat stacked(units.size() * ra * rb, ra * rb);
      for (size_t mu = 0; mu < units.size(); ++mu) {
        CMat ga = a.gamma[i].apply(units[mu]).blocks[blk];
        CMat gb = b.gamma[i].apply(units[mu]).blocks[blk];
        stacked.middleRows(mu * ra * rb, ra * rb) =
            tensor_product(ga, CMat::Identity(rb, rb)) -
            tensor_product(CMat::Identity(ra, ra), gb.transpose());
      }
      CMat kb = kernel_basis(stacked, 1e-9);
      for (int c = 0; c < kb.cols(); ++c) {
        CVec v = kb.col(c);
        out.push_back(Eigen::Map<const CMat>(v.data(), rb, ra).transpose());
      }
    }
    s.basis.push_back(std::move(out));
  }
  return s;
}

BMat project_sol(const SolSpace& s, const BMat& x) {
  BMat out = x;
  for (size_t blk = 0; blk < out.blocks.size(); ++blk) {
    CMat acc = CMat::Zero(x.blocks[blk].rows(), x.blocks[blk].cols());
    for (const CMat& bas : s.basis[blk])
      acc += (bas.adjoint() * x.blocks[blk]).trace() * bas;
    out.blocks[blk] = acc;
  }
  return out;
}

BMat normalize_candidate(const FactorSystem& a, const FactorSystem& b, int i, const BMat& x,
                         const Tolerance& tol) {
  return (a.gamma[i].image_of_one() * x * b.gamma[i].image_of_one()).polar(tol);
}

BMat vjoin_of(const FactorSystem& a, const FactorSystem& b, const std::vector<BMat>& v, int i,
              int j) {
  const std::vector<Fusion>& parts = a.cat->fusion[i][j];
  int ra = 0, rb = 0;
  for (const Fusion& f : parts) {
    ra += a.hdim[f.sigma];
    rb += b.hdim[f.sigma];
  }
  BMat out = BMat::zero(a.base, ra, rb);
  int oa = 0, ob = 0;
  for (const Fusion& f : parts) {
    out.set_block(oa, ob, v[f.sigma]);
    oa += a.hdim[f.sigma];
    ob += b.hdim[f.sigma];
  }
  return out;
}

BMat pair_rhs(const FactorSystem& a, const FactorSystem& b, const std::vector<BMat>& v, int i,
              int j) {
  return a.om(i, j) * a.gamma[j].amplify(v[i]) *
         v[j].kron_left(CMat::Identity(b.hdim[i], b.hdim[i]));
}

double family_residual(const FactorSystem& a, const FactorSystem& b, const std::vector<BMat>& v) {
  int m = (int)a.cat->irreps.size();
  std::vector<BMat> units = unit_elements(a.base);
  double r = 0.0;
  for (int i = 0; i < m; ++i) {
    r = std::max(r, (v[i] * v[i].adjoint() - a.gamma[i].image_of_one()).norm());
    r = std::max(r, (v[i].adjoint() * v[i] - b.gamma[i].image_of_one()).norm());
    for (const BMat& f : units)
      r = std::max(r, (a.gamma[i].apply(f) * v[i] - v[i] * b.gamma[i].apply(f)).norm());
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      r = std::max(r, (vjoin_of(a, b, v, i, j) * b.om(i, j) - pair_rhs(a, b, v, i, j)).norm());
  return r;
}

}  // namespace

ConjugacyResult find_conjugacy(const FactorSystem& a, const FactorSystem& b,
                               unsigned long long seed, int restarts, const Tolerance& tol) {
  ConjugacyResult res;
  if (a.cat->G.name != b.cat->G.name || !(a.base == b.base))
    throw StructuralError("conjugacy: systems must share the quantum group and the base");
  int m = (int)a.cat->irreps.size();
  for (int i = 0; i < m; ++i) {
    auto ra = a.gamma[i].image_of_one().rank_vector(tol.atol);
    auto rb = b.gamma[i].image_of_one().rank_vector(tol.atol);
    if (ra != rb) {
      res.verdict = ConjugacyResult::Verdict::not_conjugate;
      res.evidence = "multiplicity projections of " + a.cat->irreps[i].label +
                     " have different block ranks";
      return res;
    }
  }

  std::vector<SolSpace> sol;
  for (int i = 0; i < m; ++i) sol.push_back(intertwiner_space(a, b, i));
  double accept = tol.threshold(1.0);
  Rng rng(seed ^ 0x3c6ef372fe94f82bULL);

  auto seeded_guess = [&](int i, bool deterministic) {
    BMat x = BMat::zero(a.base, a.hdim[i], b.hdim[i]);
    if (deterministic) {
      CMat j = CMat::Identity(a.hdim[i], b.hdim[i]);
      x = BMat::scalar(a.base, j);
    } else {
      for (CMat& blk : x.blocks) blk = rng.gaussian_matrix((int)blk.rows(), (int)blk.cols());
    }
    return normalize_candidate(a, b, i, project_sol(sol[i], x), tol);
  };

  double best = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < restarts; ++attempt) {
    std::vector<BMat> v;
    std::vector<bool> have(m, false);
    for (int i = 0; i < m; ++i) v.push_back(BMat::zero(a.base, a.hdim[i], b.hdim[i]));
    v[0] = BMat::identity(a.base, 1);
    have[0] = true;

    // propagate assignments through fused pairs, seeding when stuck
    for (int round = 0; round < 2 * m; ++round) {
      bool progress = false;
      for (int i = 0; i < m && !progress; ++i)
        for (int j = 0; j < m && !progress; ++j) {
          if (!have[i] || !have[j]) continue;
          BMat med = pair_rhs(a, b, v, i, j) * b.om(i, j).adjoint();
          int oa = 0, ob = 0;
          for (const Fusion& f : a.cat->fusion[i][j]) {
            if (!have[f.sigma]) {
              BMat cand = med.sub_rows(oa, a.hdim[f.sigma]).sub_cols(ob, b.hdim[f.sigma]);
              v[f.sigma] = normalize_candidate(a, b, f.sigma, project_sol(sol[f.sigma], cand), tol);
              have[f.sigma] = true;
              progress = true;
              break;
            }
            oa += a.hdim[f.sigma];
            ob += b.hdim[f.sigma];
          }
        }
      if (!progress) {
        int missing = -1;
        for (int i = 0; i < m && missing < 0; ++i)
          if (!have[i]) missing = i;
        if (missing < 0) break;
        v[missing] = seeded_guess(missing, attempt == 0);
        have[missing] = true;
      }
    }

    // block relaxation: refit one irreducible at a time inside its intertwiner space
    double r = family_residual(a, b, v);
    for (int sweep = 0; sweep < 50 && r > accept; ++sweep) {
      for (int t = 1; t < m; ++t) {
        int nb = 0;
        for (const auto& bas : sol[t].basis) nb += (int)bas.size();
        if (nb == 0) continue;
        auto with_t = [&](const BMat& cand) {
          std::vector<BMat> w = v;
          w[t] = cand;
          std::vector<CVec> cols;
          for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
              bool touches = i == t || j == t;
              for (const Fusion& f : a.cat->fusion[i][j]) touches = touches || f.sigma == t;
              if (!touches) continue;
              cols.push_back(
                  (vjoin_of(a, b, w, i, j) * b.om(i, j) - pair_rhs(a, b, w, i, j)).flatten());
            }
          long total = 0;
          for (const CVec& c : cols) total += c.size();
          CVec out(total);
          long at = 0;
          for (const CVec& c : cols) {
            out.segment(at, c.size()) = c;
            at += c.size();
          }
          return out;
        };
        CVec f0 = with_t(BMat::zero(a.base, a.hdim[t], b.hdim[t]));
        CMat sys(f0.size(), nb);
        int col = 0;
        for (size_t blk = 0; blk < sol[t].basis.size(); ++blk)
          for (const CMat& bas : sol[t].basis[blk]) {
            BMat e = BMat::zero(a.base, a.hdim[t], b.hdim[t]);
            e.blocks[blk] = bas;
            sys.col(col++) = with_t(e) - f0;
          }
        CVec x = lstsq(sys, CVec(-f0));
        BMat fit = BMat::zero(a.base, a.hdim[t], b.hdim[t]);
        col = 0;
        for (size_t blk = 0; blk < sol[t].basis.size(); ++blk)
          for (const CMat& bas : sol[t].basis[blk]) fit.blocks[blk] += x(col++) * bas;
        v[t] = normalize_candidate(a, b, t, fit, tol);
      }
      r = family_residual(a, b, v);
    }
    if (r < best) {
      best = r;
      res.witness = v;
      res.residual = r;
    }
    if (r <= accept) {
      res.verdict = ConjugacyResult::Verdict::found;
      return res;
    }
  }
  res.verdict = ConjugacyResult::Verdict::undecided;
  res.evidence = "no witness found within the search budget";
  return res;
}

}  // namespace qf
