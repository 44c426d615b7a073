#include "qfactor/cstar.hpp"

#include <cmath>
#include <limits>

namespace qf {

int BlockAlgebra::dim() const {
  int d = 0;
  for (int n : blocks) d += n * n;
  return d;
}

int BlockAlgebra::unit_index(int b, int p, int q) const {
  int off = 0;
  for (int i = 0; i < b; ++i) off += blocks[i] * blocks[i];
  return off + p * blocks[b] + q;
}

BMat BMat::zero(const BlockAlgebra& a, int r, int c) {
  BMat m;
  m.alg = a;
  m.rows = r;
  m.cols = c;
  for (int n : a.blocks) m.blocks.push_back(CMat::Zero((long)r * n, (long)c * n));
  return m;
}

BMat BMat::identity(const BlockAlgebra& a, int n) {
  BMat m = zero(a, n, n);
  for (size_t b = 0; b < m.blocks.size(); ++b)
    m.blocks[b] = CMat::Identity(m.blocks[b].rows(), m.blocks[b].cols());
  return m;
}

BMat BMat::scalar(const BlockAlgebra& a, const CMat& s) {
  BMat m = zero(a, (int)s.rows(), (int)s.cols());
  for (int b = 0; b < a.nblocks(); ++b)
    m.blocks[b] = tensor_product(s, CMat::Identity(a.blocks[b], a.blocks[b]));
  return m;
}

BMat BMat::operator*(const BMat& o) const {
  if (!(alg == o.alg) || cols != o.rows)
    throw StructuralError("matrix over blocks: shape mismatch in product");
  BMat m = zero(alg, rows, o.cols);
  for (size_t b = 0; b < blocks.size(); ++b) m.blocks[b] = blocks[b] * o.blocks[b];
  return m;
}

BMat BMat::operator+(const BMat& o) const {
  if (!(alg == o.alg) || rows != o.rows || cols != o.cols)
    throw StructuralError("matrix over blocks: shape mismatch in sum");
  BMat m = *this;
  for (size_t b = 0; b < blocks.size(); ++b) m.blocks[b] += o.blocks[b];
  return m;
}

BMat BMat::operator-(const BMat& o) const { return *this + o.scaled(-1.0); }

BMat BMat::scaled(Cx c) const {
  BMat m = *this;
  for (CMat& b : m.blocks) b *= c;
  return m;
}

BMat BMat::adjoint() const {
  BMat m = zero(alg, cols, rows);
  for (size_t b = 0; b < blocks.size(); ++b) m.blocks[b] = blocks[b].adjoint();
  return m;
}

double BMat::norm() const {
  double n = 0.0;
  for (const CMat& b : blocks) n = std::max(n, operator_norm(b));
  return n;
}

Cx BMat::trace() const {
  Cx t = 0;
  for (const CMat& b : blocks) t += b.trace();
  return t;
}

BMat BMat::kron_left(const CMat& s) const {
  BMat m = zero(alg, (int)s.rows() * rows, (int)s.cols() * cols);
  for (size_t b = 0; b < blocks.size(); ++b) m.blocks[b] = tensor_product(s, blocks[b]);
  return m;
}

BMat BMat::entry(int i, int j) const {
  BMat m = zero(alg, 1, 1);
  for (int b = 0; b < alg.nblocks(); ++b) {
    int n = alg.blocks[b];
    m.blocks[b] = blocks[b].block((long)i * n, (long)j * n, n, n);
  }
  return m;
}

void BMat::set_entry(int i, int j, const BMat& e) { set_block(i, j, e); }

BMat BMat::sub_rows(int r0, int n) const {
  BMat m = zero(alg, n, cols);
  for (int b = 0; b < alg.nblocks(); ++b) {
    int nb = alg.blocks[b];
    m.blocks[b] = blocks[b].middleRows((long)r0 * nb, (long)n * nb);
  }
  return m;
}

BMat BMat::sub_cols(int c0, int n) const {
  BMat m = zero(alg, rows, n);
  for (int b = 0; b < alg.nblocks(); ++b) {
    int nb = alg.blocks[b];
    m.blocks[b] = blocks[b].middleCols((long)c0 * nb, (long)n * nb);
  }
  return m;
}

void BMat::set_block(int r0, int c0, const BMat& x) {
  for (int b = 0; b < alg.nblocks(); ++b) {
    int nb = alg.blocks[b];
    blocks[b].block((long)r0 * nb, (long)c0 * nb, x.blocks[b].rows(), x.blocks[b].cols()) =
        x.blocks[b];
  }
}

std::vector<int> BMat::rank_vector(double atol) const {
  std::vector<int> r;
  for (const CMat& b : blocks) r.push_back(matrix_rank(b, atol));
  return r;
}

BMat BMat::polar(const Tolerance& tol) const {
  BMat m = *this;
  for (CMat& b : m.blocks) b = polar_partial_isometry(b, tol);
  return m;
}

double BMat::min_eigenvalue() const {
  double v = std::numeric_limits<double>::infinity();
  for (const CMat& b : blocks) {
    if (b.rows() == 0) continue;
    Eigen::SelfAdjointEigenSolver<CMat> es(b);
    v = std::min(v, es.eigenvalues().minCoeff());
  }
  return std::isfinite(v) ? v : 0.0;
}

CVec BMat::flatten() const {
  long total = 0;
  for (const CMat& b : blocks) total += b.size();
  CVec v(total);
  long at = 0;
  for (const CMat& b : blocks) {
    v.segment(at, b.size()) = Eigen::Map<const CVec>(b.data(), b.size());
    at += b.size();
  }
  return v;
}

BMat unflatten(const BlockAlgebra& a, int r, int c, const CVec& v) {
  BMat m = BMat::zero(a, r, c);
  long at = 0;
  for (CMat& b : m.blocks) {
    b = Eigen::Map<const CMat>(v.data() + at, b.rows(), b.cols());
    at += b.size();
  }
  return m;
}

Cx trace_inner(const BMat& x, const BMat& y) {
  Cx t = 0;
  for (size_t b = 0; b < x.blocks.size(); ++b) t += (x.blocks[b].adjoint() * y.blocks[b]).trace();
  return t;
}

CVec algebra_coords(const BMat& x) {
  if (x.rows != 1 || x.cols != 1)
    throw StructuralError("algebra coordinates are defined for 1x1 matrices only");
  return x.flatten();
}

BMat algebra_element(const BlockAlgebra& a, const CVec& coords) {
  return unflatten(a, 1, 1, coords);
}

BMat random_hermitian(const BlockAlgebra& a, int n, Rng& rng) {
  BMat m = BMat::zero(a, n, n);
  for (CMat& b : m.blocks) {
    CMat g = rng.gaussian_matrix((int)b.rows(), (int)b.cols());
    b = 0.5 * (g + g.adjoint());
  }
  return m;
}

BMat random_block_unitary(const BlockAlgebra& a, int n, Rng& rng) {
  BMat m = BMat::zero(a, n, n);
  for (CMat& b : m.blocks) b = rng.unitary((int)b.rows());
  return m;
}

BMat random_projection(const BlockAlgebra& a, int n, Rng& rng) {
  BMat h = random_hermitian(a, n, rng);
  for (CMat& b : h.blocks) {
    if (b.rows() == 0) continue;
    Eigen::SelfAdjointEigenSolver<CMat> es(b);
    double mid = 0.5 * (es.eigenvalues().minCoeff() + es.eigenvalues().maxCoeff());
    CMat p = CMat::Zero(b.rows(), b.cols());
    for (int k = 0; k < b.rows(); ++k)
      if (es.eigenvalues()(k) > mid) p += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
    b = p;
  }
  return h;
}

MvnResult mvn_equivalent(const BMat& p, const BMat& q, const Tolerance& tol) {
  MvnResult res;
  res.witness = BMat::zero(p.alg, p.rows, q.rows);
  for (size_t b = 0; b < p.blocks.size(); ++b) {
    int rp = matrix_rank(p.blocks[b], tol.atol), rq = matrix_rank(q.blocks[b], tol.atol);
    if (rp != rq) return res;
    CMat up = column_space_basis(p.blocks[b], tol.atol);
    CMat uq = column_space_basis(q.blocks[b], tol.atol);
    res.witness.blocks[b] = up * uq.adjoint();
  }
  res.equivalent = true;
  return res;
}

BMat StarHom::apply(const BMat& b) const {
  CVec c = algebra_coords(b);
  BMat out = BMat::zero(base, hdim, hdim);
  for (int mu = 0; mu < c.size(); ++mu)
    if (c(mu) != Cx(0)) out = out + images[mu].scaled(c(mu));
  return out;
}

BMat StarHom::amplify(const BMat& x) const {
  BMat out = BMat::zero(base, x.rows * hdim, x.cols * hdim);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) out.set_block(i * hdim, j * hdim, apply(x.entry(i, j)));
  return out;
}

BMat StarHom::image_of_one() const {
  return apply(BMat::identity(base, 1));
}

CheckOutcome StarHom::verify(const Tolerance& tol) const {
  double res = 0.0;
  int d = base.dim();
  for (int mu = 0; mu < d; ++mu) {
    CVec cmu = CVec::Zero(d);
    cmu(mu) = 1.0;
    BMat fmu = algebra_element(base, cmu);
    res = std::max(res, (apply(fmu).adjoint() - apply(fmu.adjoint())).norm());
    for (int nu = 0; nu < d; ++nu) {
      CVec cnu = CVec::Zero(d);
      cnu(nu) = 1.0;
      BMat fnu = algebra_element(base, cnu);
      res = std::max(res, (apply(fmu) * apply(fnu) - apply(fmu * fnu)).norm());
    }
  }
  return {res <= tol.threshold(1.0), res};
}

StarHom StarHom::unital_amplification(const BlockAlgebra& a, int hdim) {
  StarHom h;
  h.base = a;
  h.hdim = hdim;
  int d = a.dim();
  for (int mu = 0; mu < d; ++mu) {
    CVec c = CVec::Zero(d);
    c(mu) = 1.0;
    h.images.push_back(algebra_element(a, c).kron_left(CMat::Identity(hdim, hdim)));
  }
  return h;
}

CVec MoritaModule::act_by(const CVec& x, const BMat& b) const {
  CVec c = algebra_coords(b);
  CVec out = CVec::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    if (x(i) == Cx(0)) continue;
    for (int mu = 0; mu < c.size(); ++mu)
      if (c(mu) != Cx(0)) out += x(i) * c(mu) * act[i][mu];
  }
  return out;
}

BMat MoritaModule::pair(const CVec& x, const CVec& y) const {
  BMat out = BMat::zero(base, 1, 1);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      Cx c = std::conj(x(i)) * y(j);
      if (c != Cx(0)) out = out + inner[i][j].scaled(c);
    }
  return out;
}

void MoritaModule::validate(const Tolerance& tol) const {
  double th = tol.threshold(1.0);
  int d = base.dim();
  std::vector<BMat> units;
  for (int mu = 0; mu < d; ++mu) {
    CVec c = CVec::Zero(d);
    c(mu) = 1.0;
    units.push_back(algebra_element(base, c));
  }
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if ((inner[i][j].adjoint() - inner[j][i]).norm() > th)
        throw IntegrityError("module: pairing is not hermitian");
      CVec ei = CVec::Zero(dim), ej = CVec::Zero(dim);
      ei(i) = 1.0;
      ej(j) = 1.0;
      for (int mu = 0; mu < d; ++mu) {
        if ((pair(ei, act_by(ej, units[mu])) - inner[i][j] * units[mu]).norm() > th)
          throw IntegrityError("module: pairing is not right linear");
        for (int nu = 0; nu < d; ++nu)
          if (i == 0 && (act_by(act_by(ej, units[mu]), units[nu]) -
                         act_by(ej, units[mu] * units[nu]))
                                .norm() > th * (double)dim)
            throw IntegrityError("module: action is not associative");
      }
    }
  // positivity of the full B-valued gram matrix
  BMat gram = BMat::zero(base, dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) gram.set_block(i, j, inner[i][j]);
  if (gram.min_eigenvalue() < -th) throw IntegrityError("module: gram matrix is not positive");
}

std::vector<CVec> MoritaModule::parseval_frame() const {
  if (dim == 0) return {};
  // frame operator S x = sum_a x_a <x_a, x>_B over the basis, inverted by half
  CMat s = CMat::Zero(dim, dim);
  CMat g = CMat::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    CVec ek = CVec::Zero(dim);
    ek(k) = 1.0;
    CVec col = CVec::Zero(dim);
    for (int a = 0; a < dim; ++a) {
      CVec ea = CVec::Zero(dim);
      ea(a) = 1.0;
      col += act_by(ea, inner[a][k]);
      g(a, k) = inner[a][k].trace();
    }
    s.col(k) = col;
  }
  // symmetrize s with the scalar gram; S is positive for a nondegenerate module
  CMat gh = positive_sqrt(0.5 * (g + g.adjoint()));
  CMat ghi = gh.inverse();
  CMat w = gh * s * ghi;
  w = 0.5 * (w + w.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(w);
  if (es.eigenvalues().minCoeff() < 1e-10 * std::max(1.0, es.eigenvalues().maxCoeff()))
    throw IntegrityError("module: frame operator is singular");
  CMat winvh = es.eigenvectors() *
               es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal().toDenseMatrix().cast<Cx>() *
               es.eigenvectors().adjoint();
  CMat sinvh = ghi * winvh * gh;
  std::vector<CVec> z;
  for (int a = 0; a < dim; ++a) z.push_back(sinvh.col(a));
  return z;
}

CheckOutcome MoritaModule::check_frame(const std::vector<CVec>& z, const Tolerance& tol) const {
  double res = 0.0;
  for (int k = 0; k < dim; ++k) {
    CVec ek = CVec::Zero(dim);
    ek(k) = 1.0;
    CVec rec = CVec::Zero(dim);
    for (const CVec& za : z) rec += act_by(za, pair(za, ek));
    res = std::max(res, (rec - ek).norm());
  }
  return {res <= tol.threshold(1.0), res};
}

MoritaModule corner_module(const BlockAlgebra& a, int n, const BMat& p) {
  int flat = 0;
  for (int nb : a.blocks) flat += n * nb * nb;
  CMat plin = CMat::Zero(flat, flat);
  for (int k = 0; k < flat; ++k) {
    CVec e = CVec::Zero(flat);
    e(k) = 1.0;
    plin.col(k) = (p * unflatten(a, n, 1, e)).flatten();
  }
  CMat basis = column_space_basis(plin, 1e-9);
  MoritaModule m;
  m.base = a;
  m.dim = (int)basis.cols();
  int d = a.dim();
  m.act.assign(m.dim, std::vector<CVec>(d));
  m.inner.assign(m.dim, std::vector<BMat>(m.dim, BMat::zero(a, 1, 1)));
  std::vector<BMat> xs;
  for (int i = 0; i < m.dim; ++i) xs.push_back(unflatten(a, n, 1, basis.col(i)));
  for (int i = 0; i < m.dim; ++i) {
    for (int mu = 0; mu < d; ++mu) {
      CVec c = CVec::Zero(d);
      c(mu) = 1.0;
      BMat moved = xs[i] * algebra_element(a, c);
      m.act[i][mu] = basis.adjoint() * moved.flatten();
    }
    for (int j = 0; j < m.dim; ++j) m.inner[i][j] = xs[i].adjoint() * xs[j];
  }
  return m;
}

std::vector<CVec> frame_for_module(const MoritaModule& m) { return m.parseval_frame(); }

}  // namespace qf
