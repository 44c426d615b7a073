#include "qfactor/serialization.hpp"

#include "json.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace qf {

namespace {

using nlohmann::json;

json enc(const Cx& z) { return json::array({z.real(), z.imag()}); }

Cx dec_cx(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw StructuralError("complex numbers are encoded as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json enc(const CVec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(enc(v(i)));
  return a;
}

CVec dec_cvec(const json& j, int want = -1) {
  if (!j.is_array()) throw StructuralError("vector entries are encoded as an array");
  if (want >= 0 && static_cast<int>(j.size()) != want)
    throw StructuralError("vector has length " + std::to_string(j.size()) + ", expected " +
                          std::to_string(want));
  CVec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = dec_cx(j[i]);
  return v;
}

json enc(const CMat& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  json d = json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) d.push_back(enc(m(r, c)));
  j["data"] = d;
  return j;
}

CMat dec_cmat(const json& j, int wr = -1, int wc = -1) {
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  if (rows < 0 || cols < 0) throw StructuralError("matrix with negative shape");
  if ((wr >= 0 && rows != wr) || (wc >= 0 && cols != wc))
    throw StructuralError("matrix is " + std::to_string(rows) + "x" + std::to_string(cols) +
                          ", expected " + std::to_string(wr) + "x" + std::to_string(wc));
  const json& d = j.at("data");
  if (static_cast<long long>(d.size()) != static_cast<long long>(rows) * cols)
    throw StructuralError("matrix data length does not match its shape");
  CMat m(rows, cols);
  size_t idx = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = dec_cx(d[idx++]);
  return m;
}

json enc(const BMat& b) {
  json j;
  j["rows"] = b.rows;
  j["cols"] = b.cols;
  json blocks = json::array();
  for (const CMat& m : b.blocks) blocks.push_back(enc(m));
  j["blocks"] = blocks;
  return j;
}

BMat dec_bmat(const BlockAlgebra& alg, const json& j, int wr = -1, int wc = -1) {
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  if ((wr >= 0 && rows != wr) || (wc >= 0 && cols != wc))
    throw StructuralError("block matrix is " + std::to_string(rows) + "x" + std::to_string(cols) +
                          ", expected " + std::to_string(wr) + "x" + std::to_string(wc));
  const json& bl = j.at("blocks");
  if (static_cast<int>(bl.size()) != alg.nblocks())
    throw StructuralError("block matrix has " + std::to_string(bl.size()) +
                          " blocks over a base with " + std::to_string(alg.nblocks()));
  BMat b = BMat::zero(alg, rows, cols);
  for (int k = 0; k < alg.nblocks(); ++k)
    b.blocks[k] = dec_cmat(bl[k], rows * alg.blocks[k], cols * alg.blocks[k]);
  return b;
}

json enc_tensors(const QuantumGroup& g) {
  json t;
  t["dim"] = g.dim;
  json mult = json::array();
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) mult.push_back(enc(g.mult_t[i][j]));
  t["mult"] = mult;
  t["unit"] = enc(g.unit_v);
  json comult = json::array();
  for (const CMat& m : g.comult_t) comult.push_back(enc(m));
  t["comult"] = comult;
  t["counit"] = enc(g.counit_v);
  t["star"] = enc(g.star_m);
  t["haar"] = enc(g.haar_v);
  t["gram"] = enc(g.gram);
  return t;
}

QuantumGroup dec_tensors(const json& t, const std::string& name) {
  QuantumGroup g;
  g.name = name;
  g.dim = t.at("dim").get<int>();
  if (g.dim <= 0) throw StructuralError("group tensors need a positive dimension");
  const json& mult = t.at("mult");
  if (static_cast<int>(mult.size()) != g.dim * g.dim)
    throw StructuralError("group multiplication table has the wrong length");
  g.mult_t.assign(g.dim, std::vector<CVec>(g.dim));
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) g.mult_t[i][j] = dec_cvec(mult[i * g.dim + j], g.dim);
  g.unit_v = dec_cvec(t.at("unit"), g.dim);
  const json& comult = t.at("comult");
  if (static_cast<int>(comult.size()) != g.dim)
    throw StructuralError("group comultiplication table has the wrong length");
  for (int i = 0; i < g.dim; ++i) g.comult_t.push_back(dec_cmat(comult[i], g.dim, g.dim));
  g.counit_v = dec_cvec(t.at("counit"), g.dim);
  g.star_m = dec_cmat(t.at("star"), g.dim, g.dim);
  g.haar_v = dec_cvec(t.at("haar"), g.dim);
  g.gram = dec_cmat(t.at("gram"), g.dim, g.dim);
  return g;
}

json enc_group(const Catalog& cat) {
  json g;
  g["name"] = cat.G.name;
  g["seed"] = cat.seed;
  bool builtin = cat.G.name.rfind("dual:", 0) == 0 || cat.G.name.rfind("fun:", 0) == 0;
  if (!builtin) g["tensors"] = enc_tensors(cat.G);
  return g;
}

std::shared_ptr<const Catalog> dec_group(const json& j) {
  std::string name = j.at("name").get<std::string>();
  unsigned long long seed = j.value("seed", 1ULL);
  QuantumGroup g;
  if (j.contains("tensors")) {
    g = dec_tensors(j["tensors"], name);
    g.validate();
  } else {
    g = QuantumGroup::from_name(name);
  }
  return std::make_shared<Catalog>(build_catalog(g, seed));
}

std::pair<std::string, std::string> split_pair_key(const std::string& key) {
  auto pos = key.find(',');
  if (pos == std::string::npos)
    throw StructuralError("omega keys are comma-joined label pairs, got " + key);
  return {key.substr(0, pos), key.substr(pos + 1)};
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw StructuralError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string to_json(const FactorSystem& fs) {
  json j;
  j["format"] = "factor_system/v1";
  j["base"]["blocks"] = fs.base.blocks;
  j["group"] = enc_group(*fs.cat);
  json h = json::object();
  json gamma = json::object();
  for (size_t t = 0; t < fs.cat->irreps.size(); ++t) {
    const std::string& lab = fs.cat->irreps[t].label;
    h[lab] = fs.hdim[t];
    json imgs = json::array();
    for (const BMat& b : fs.gamma[t].images) imgs.push_back(enc(b));
    gamma[lab] = imgs;
  }
  j["H"] = h;
  j["gamma"] = gamma;
  json omega = json::object();
  for (const auto& [key, om] : fs.omega)
    omega[fs.cat->irreps[key.first].label + "," + fs.cat->irreps[key.second].label] = enc(om);
  j["omega"] = omega;
  return j.dump(2);
}

std::string to_json(const DynamicalSystem& ds) {
  json j;
  j["format"] = "dynamical_system/v1";
  j["group"] = enc_group(*ds.cat);
  json alg;
  alg["dim"] = ds.a.dim;
  json mult = json::array();
  for (int i = 0; i < ds.a.dim; ++i)
    for (int k = 0; k < ds.a.dim; ++k) mult.push_back(enc(ds.a.mult_t[i][k]));
  alg["mult"] = mult;
  alg["unit"] = enc(ds.a.unit_v);
  alg["star"] = enc(ds.a.star_m);
  j["algebra"] = alg;
  json co = json::array();
  for (const CMat& m : ds.alpha) co.push_back(enc(m));
  j["coaction"] = co;
  return j.dump(2);
}

std::string catalog_to_json(const Catalog& cat) {
  json j;
  j["format"] = "catalog/v1";
  j["group"]["name"] = cat.G.name;
  j["group"]["seed"] = cat.seed;
  j["group"]["dim"] = cat.G.dim;
  json irr = json::array();
  for (const Irrep& p : cat.irreps)
    irr.push_back({{"label", p.label}, {"dim", p.dim}, {"conj", cat.irreps[p.conj].label}});
  j["irreps"] = irr;
  json fus = json::object();
  for (size_t i = 0; i < cat.irreps.size(); ++i)
    for (size_t k = 0; k < cat.irreps.size(); ++k) {
      json parts = json::array();
      for (const Fusion& f : cat.fusion[i][k]) parts.push_back(cat.irreps[f.sigma].label);
      fus[cat.irreps[i].label + "," + cat.irreps[k].label] = parts;
    }
  j["fusion"] = fus;
  return j.dump(2);
}

std::string json_format(const std::string& text) {
  json j = parse_document(text);
  if (!j.is_object() || !j.contains("format") || !j["format"].is_string())
    throw StructuralError("document has no format tag");
  return j["format"].get<std::string>();
}

FactorSystem factor_system_from_json(const std::string& text) {
  json j = parse_document(text);
  try {
    if (j.value("format", "") != "factor_system/v1")
      throw StructuralError("expected a factor_system/v1 document");
    FactorSystem fs;
    fs.cat = dec_group(j.at("group"));
    fs.base.blocks = j.at("base").at("blocks").get<std::vector<int>>();
    for (int nb : fs.base.blocks)
      if (nb <= 0) throw StructuralError("base blocks must be positive");
    const json& h = j.at("H");
    const json& gamma = j.at("gamma");
    for (const Irrep& p : fs.cat->irreps) {
      int hd = h.at(p.label).get<int>();
      if (hd < 0) throw StructuralError("negative multiplicity dimension at " + p.label);
      fs.hdim.push_back(hd);
      const json& imgs = gamma.at(p.label);
      if (static_cast<int>(imgs.size()) != fs.base.dim())
        throw StructuralError("gamma at " + p.label + " lists " + std::to_string(imgs.size()) +
                              " images for a base of dimension " + std::to_string(fs.base.dim()));
      StarHom sh;
      sh.base = fs.base;
      sh.hdim = hd;
      for (const json& img : imgs) sh.images.push_back(dec_bmat(fs.base, img, hd, hd));
      fs.gamma.push_back(std::move(sh));
    }
    for (const auto& [key, val] : j.at("omega").items()) {
      auto [la, lb] = split_pair_key(key);
      int i = fs.cat->index_of(la);
      int k = fs.cat->index_of(lb);
      int rows = 0;
      for (const Fusion& f : fs.cat->fusion[i][k]) rows += fs.hdim[f.sigma];
      fs.omega[{i, k}] = dec_bmat(fs.base, val, rows, fs.hdim[i] * fs.hdim[k]);
    }
    return fs;
  } catch (const json::exception& e) {
    throw StructuralError(std::string("factor system decode: ") + e.what());
  }
}

DynamicalSystem dynamical_system_from_json(const std::string& text) {
  json j = parse_document(text);
  try {
    if (j.value("format", "") != "dynamical_system/v1")
      throw StructuralError("expected a dynamical_system/v1 document");
    DynamicalSystem ds;
    ds.cat = dec_group(j.at("group"));
    const json& alg = j.at("algebra");
    StarAlgebra a;
    a.dim = alg.at("dim").get<int>();
    if (a.dim <= 0) throw StructuralError("algebra needs a positive dimension");
    const json& mult = alg.at("mult");
    if (static_cast<int>(mult.size()) != a.dim * a.dim)
      throw StructuralError("algebra multiplication table has the wrong length");
    a.mult_t.assign(a.dim, std::vector<CVec>(a.dim));
    for (int i = 0; i < a.dim; ++i)
      for (int k = 0; k < a.dim; ++k) a.mult_t[i][k] = dec_cvec(mult[i * a.dim + k], a.dim);
    a.unit_v = dec_cvec(alg.at("unit"), a.dim);
    a.star_m = dec_cmat(alg.at("star"), a.dim, a.dim);
    ds.a = std::move(a);
    const json& co = j.at("coaction");
    if (static_cast<int>(co.size()) != ds.a.dim)
      throw StructuralError("coaction table has the wrong length");
    for (int i = 0; i < ds.a.dim; ++i)
      ds.alpha.push_back(dec_cmat(co[i], ds.a.dim, ds.cat->G.dim));
    return ds;
  } catch (const json::exception& e) {
    throw StructuralError(std::string("dynamical system decode: ") + e.what());
  }
}

}  // namespace qf
