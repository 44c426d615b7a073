#include "qfactor/qfactor.h"

#include "qfactor/extract.hpp"
#include "qfactor/factor_system.hpp"
#include "qfactor/fixtures.hpp"
#include "qfactor/fusion_ring.hpp"
#include "qfactor/group_table.hpp"
#include "qfactor/quantum_group.hpp"
#include "qfactor/reconstruct.hpp"
#include "qfactor/report.hpp"
#include "qfactor/serialization.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

// Exactly one of the two payloads is set.
struct qf_object {
  std::unique_ptr<qf::FactorSystem> fs;
  std::unique_ptr<qf::DynamicalSystem> ds;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

qf::Tolerance make_tol(double tol) {
  qf::Tolerance t;
  if (tol > 0.0) {
    t.atol = tol;
    t.rtol = tol;
  }
  return t;
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void merge(qf::Report& r, const qf::ValidationReport& v) {
  for (const qf::NamedCheck& c : v.checks) {
    r.checks.checks.push_back(c);
    r.checks.ok = r.checks.ok && c.ok;
    if (c.residual > r.checks.residual) r.checks.residual = c.residual;
  }
}

// Boolean criteria enter the report as 0/1 residuals against 0.5.
void add_flag(qf::Report& r, const std::string& name, bool ok) {
  r.checks.add(name, ok ? 0.0 : 1.0, 0.5);
}

std::string object_json(const qf_object* obj) {
  return obj->fs ? qf::to_json(*obj->fs) : qf::to_json(*obj->ds);
}

void hash_input(qf::Report& r, const std::string& name, const std::string& payload) {
  r.inputs.emplace_back(name, qf::fnv1a64(payload));
}

void emit(qf::Report& r, const Timer& t, char** out) {
  r.wall_seconds = t.seconds();
  if (out) *out = dup_string(r.to_json());
}

void require_arg(const void* p, const char* what) {
  if (!p) throw qf::StructuralError(std::string("null argument: ") + what);
}

const qf::FactorSystem& require_fs(const qf_object* obj) {
  if (!obj || !obj->fs) throw qf::StructuralError("expected a factor system object");
  return *obj->fs;
}

const qf::DynamicalSystem& require_ds(const qf_object* obj) {
  if (!obj || !obj->ds) throw qf::StructuralError("expected a dynamical system object");
  return *obj->ds;
}

template <typename F>
qf_status guarded(F&& f) {
  try {
    return f();
  } catch (const qf::StructuralError& e) {
    g_last_error = e.what();
    return QF_STRUCTURAL_ERROR;
  } catch (const qf::IntegrityError& e) {
    g_last_error = e.what();
    return QF_CHECK_FAILED;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QF_STRUCTURAL_ERROR;
  }
}

std::string format_hom(const qf::FusionRing& fr, int index, const Eigen::VectorXd& h) {
  std::string line = "hom " + std::to_string(index) + ":";
  char buf[64];
  for (int i = 0; i < fr.size(); ++i) {
    std::snprintf(buf, sizeof buf, " %s=%.6f", fr.labels[i].c_str(), h(i));
    line += buf;
  }
  return line;
}

}  // namespace

extern "C" {

const char* qf_version(void) { return "1.0.0"; }

const char* qf_last_error(void) { return g_last_error.c_str(); }

void qf_string_free(char* s) { std::free(s); }

void qf_object_free(qf_object* obj) { delete obj; }

const char* qf_object_kind(const qf_object* obj) {
  if (!obj) return "";
  return obj->fs ? "factor_system" : "dynamical_system";
}

qf_status qf_parse(const char* json, qf_object** out) {
  g_last_error.clear();
  if (out) *out = nullptr;
  return guarded([&]() {
    require_arg(json, "json");
    require_arg(out, "out");
    std::string text(json);
    std::string fmt = qf::json_format(text);
    auto obj = std::make_unique<qf_object>();
    if (fmt == "factor_system/v1") {
      obj->fs = std::make_unique<qf::FactorSystem>(qf::factor_system_from_json(text));
    } else if (fmt == "dynamical_system/v1") {
      obj->ds = std::make_unique<qf::DynamicalSystem>(qf::dynamical_system_from_json(text));
    } else {
      throw qf::StructuralError("unrecognized document format: " + fmt);
    }
    *out = obj.release();
    return QF_OK;
  });
}

qf_status qf_to_json(const qf_object* obj, char** json_out) {
  g_last_error.clear();
  if (json_out) *json_out = nullptr;
  return guarded([&]() {
    require_arg(obj, "obj");
    require_arg(json_out, "json_out");
    *json_out = dup_string(object_json(obj));
    return QF_OK;
  });
}

qf_status qf_fixture(const char* name, qf_object** out) {
  g_last_error.clear();
  if (out) *out = nullptr;
  return guarded([&]() {
    require_arg(name, "name");
    require_arg(out, "out");
    std::string n(name);
    auto obj = std::make_unique<qf_object>();
    if (qf::fixture_is_dynamical(n))
      obj->ds = std::make_unique<qf::DynamicalSystem>(qf::fixture_dynamical_system(n));
    else
      obj->fs = std::make_unique<qf::FactorSystem>(qf::fixture_factor_system(n));
    *out = obj.release();
    return QF_OK;
  });
}

qf_status qf_fixture_list(char** json_out) {
  g_last_error.clear();
  if (json_out) *json_out = nullptr;
  return guarded([&]() {
    require_arg(json_out, "json_out");
    nlohmann::json arr = nlohmann::json::array();
    for (const std::string& n : qf::fixture_names())
      arr.push_back({{"name", n},
                     {"kind", qf::fixture_is_dynamical(n) ? "dynamical_system" : "factor_system"}});
    *json_out = dup_string(arr.dump(2));
    return QF_OK;
  });
}

qf_status qf_builtin_groups(char** json_out) {
  g_last_error.clear();
  if (json_out) *json_out = nullptr;
  return guarded([&]() {
    require_arg(json_out, "json_out");
    nlohmann::json arr = nlohmann::json::array();
    for (const std::string& n : qf::GroupTable::builtin_names()) {
      arr.push_back("dual:" + n);
      arr.push_back("fun:" + n);
    }
    *json_out = dup_string(arr.dump(2));
    return QF_OK;
  });
}

qf_status qf_catalog_build(const char* group_name, uint64_t seed, char** catalog_json_out) {
  g_last_error.clear();
  if (catalog_json_out) *catalog_json_out = nullptr;
  return guarded([&]() {
    require_arg(group_name, "group_name");
    require_arg(catalog_json_out, "catalog_json_out");
    qf::QuantumGroup g = qf::QuantumGroup::from_name(group_name);
    qf::Catalog cat = qf::build_catalog(g, seed);
    *catalog_json_out = dup_string(qf::catalog_to_json(cat));
    return QF_OK;
  });
}

qf_status qf_validate(const qf_object* obj, double tol, char** report_json_out) {
  g_last_error.clear();
  if (report_json_out) *report_json_out = nullptr;
  return guarded([&]() {
    require_arg(obj, "obj");
    Timer t;
    qf::Tolerance tl = make_tol(tol);
    qf::Report r;
    r.command = "validate";
    r.tolerance = tl.threshold(1.0);
    hash_input(r, "system", object_json(obj));
    qf::ValidationReport v = obj->fs ? obj->fs->validate(tl) : require_ds(obj).validate(tl);
    merge(r, v);
    r.verdict = v.ok ? "valid" : "invalid";
    emit(r, t, report_json_out);
    return v.ok ? QF_OK : QF_CHECK_FAILED;
  });
}

qf_status qf_reconstruct(const qf_object* fs, double tol, qf_object** ds_out,
                         char** report_json_out) {
  g_last_error.clear();
  if (ds_out) *ds_out = nullptr;
  if (report_json_out) *report_json_out = nullptr;
  return guarded([&]() {
    require_arg(ds_out, "ds_out");
    const qf::FactorSystem& f = require_fs(fs);
    Timer t;
    qf::Tolerance tl = make_tol(tol);
    qf::Report r;
    r.command = "reconstruct";
    r.tolerance = tl.threshold(1.0);
    hash_input(r, "system", qf::to_json(f));
    qf::ValidationReport ax = f.validate(tl);
    merge(r, ax);
    qf::ValidationReport fu = qf::verify_unitary_tensor_functor(f, tl);
    merge(r, fu);
    if (!ax.ok || !fu.ok) {
      r.verdict = "refused";
      emit(r, t, report_json_out);
      return QF_CHECK_FAILED;
    }
    qf::GradedAlgebra g = qf::build_algebra(f, tl);
    auto obj = std::make_unique<qf_object>();
    obj->ds = std::make_unique<qf::DynamicalSystem>(qf::dynamical_system_of(g));
    merge(r, obj->ds->validate(tl));
    r.notes.push_back("built algebra dimension " + std::to_string(obj->ds->a.dim));
    r.verdict = "built";
    emit(r, t, report_json_out);
    *ds_out = obj.release();
    return QF_OK;
  });
}

qf_status qf_extract(const qf_object* ds, uint64_t seed, double tol, qf_object** fs_out,
                     char** report_json_out) {
  g_last_error.clear();
  if (fs_out) *fs_out = nullptr;
  if (report_json_out) *report_json_out = nullptr;
  return guarded([&]() {
    require_arg(fs_out, "fs_out");
    const qf::DynamicalSystem& d = require_ds(ds);
    Timer t;
    qf::Tolerance tl = make_tol(tol);
    qf::Report r;
    r.command = "extract";
    r.seed = seed;
    r.tolerance = tl.threshold(1.0);
    hash_input(r, "system", qf::to_json(d));
    qf::ValidationReport v = d.validate(tl);
    merge(r, v);
    if (!v.ok) {
      r.verdict = "refused";
      emit(r, t, report_json_out);
      return QF_CHECK_FAILED;
    }
    try {
      qf::Extraction ex = qf::factor_system_of(d, seed, tl);
      qf::ValidationReport ax = ex.fs.validate(tl);
      merge(r, ax);
      if (!ax.ok) {
        r.verdict = "invalid";
        emit(r, t, report_json_out);
        return QF_CHECK_FAILED;
      }
      auto obj = std::make_unique<qf_object>();
      obj->fs = std::make_unique<qf::FactorSystem>(std::move(ex.fs));
      r.verdict = "extracted";
      emit(r, t, report_json_out);
      *fs_out = obj.release();
      return QF_OK;
    } catch (const qf::IntegrityError& e) {
      r.notes.push_back(e.what());
      r.verdict = "refused";
      emit(r, t, report_json_out);
      return QF_CHECK_FAILED;
    }
  });
}

qf_status qf_check_free(const qf_object* obj, double tol, char** report_json_out) {
  g_last_error.clear();
  if (report_json_out) *report_json_out = nullptr;
  return guarded([&]() {
    require_arg(obj, "obj");
    Timer t;
    qf::Tolerance tl = make_tol(tol);
    qf::Report r;
    r.command = "check-free";
    r.tolerance = tl.threshold(1.0);
    hash_input(r, "system", object_json(obj));
    bool all = true;
    const qf::DynamicalSystem* dsp = nullptr;
    std::unique_ptr<qf::DynamicalSystem> built;
    if (obj->fs) {
      qf::ValidationReport ax = obj->fs->validate(tl);
      merge(r, ax);
      if (!ax.ok) {
        r.verdict = "refused";
        emit(r, t, report_json_out);
        return QF_CHECK_FAILED;
      }
      qf::FreenessResult fm = qf::check_free_m_surjective(*obj->fs, tl);
      add_flag(r, "multiplication criterion on the factor system", fm.free);
      r.notes.push_back(fm.evidence);
      all = all && fm.free;
      qf::GradedAlgebra g = qf::build_algebra(*obj->fs, tl);
      built = std::make_unique<qf::DynamicalSystem>(qf::dynamical_system_of(g));
      dsp = built.get();
    } else {
      dsp = obj->ds.get();
    }
    qf::FreenessResult fe = qf::check_free_ellwood(*dsp, tl);
    add_flag(r, "density criterion", fe.free);
    r.notes.push_back(fe.evidence);
    qf::FreenessResult fm2 = qf::check_free_m_surjective(*dsp, tl);
    add_flag(r, "multiplication criterion", fm2.free);
    r.notes.push_back(fm2.evidence);
    all = all && fe.free && fm2.free;
    r.verdict = all ? "free" : "not free";
    emit(r, t, report_json_out);
    return all ? QF_OK : QF_CHECK_FAILED;
  });
}

qf_status qf_check_cleft(const qf_object* obj, uint64_t seed, double tol,
                         char** report_json_out) {
  g_last_error.clear();
  if (report_json_out) *report_json_out = nullptr;
  return guarded([&]() {
    require_arg(obj, "obj");
    Timer t;
    qf::Tolerance tl = make_tol(tol);
    qf::Report r;
    r.command = "check-cleft";
    r.seed = seed;
    r.tolerance = tl.threshold(1.0);
    hash_input(r, "system", object_json(obj));
    const qf::FactorSystem* f = obj->fs.get();
    std::unique_ptr<qf::FactorSystem> extracted;
    if (obj->ds) {
      qf::ValidationReport v = obj->ds->validate(tl);
      merge(r, v);
      if (!v.ok) {
        r.verdict = "refused";
        emit(r, t, report_json_out);
        return QF_CHECK_FAILED;
      }
      try {
        extracted =
            std::make_unique<qf::FactorSystem>(qf::factor_system_of(*obj->ds, seed, tl).fs);
      } catch (const qf::IntegrityError& e) {
        r.notes.push_back(e.what());
        r.verdict = "refused";
        emit(r, t, report_json_out);
        return QF_CHECK_FAILED;
      }
      f = extracted.get();
    }
    qf::CleftResult c = qf::is_cleft(*f, tl);
    add_flag(r, "multiplicity projections equivalent to the unit amplifications", c.cleft);
    r.notes.push_back(c.evidence);
    r.verdict = c.cleft ? "cleft" : "not cleft";
    emit(r, t, report_json_out);
    return c.cleft ? QF_OK : QF_CHECK_FAILED;
  });
}

qf_status qf_conjugate(const qf_object* a, const qf_object* b, uint64_t seed, double tol,
                       char** report_json_out) {
  g_last_error.clear();
  if (report_json_out) *report_json_out = nullptr;
  return guarded([&]() {
    require_arg(a, "a");
    require_arg(b, "b");
    Timer t;
    qf::Tolerance tl = make_tol(tol);
    qf::Report r;
    r.command = "conjugate";
    r.seed = seed;
    r.tolerance = tl.threshold(1.0);
    hash_input(r, "left", object_json(a));
    hash_input(r, "right", object_json(b));
    std::unique_ptr<qf::FactorSystem> ha, hb;
    auto as_fs = [&](const qf_object* o, const char* side,
                     std::unique_ptr<qf::FactorSystem>& hold) -> const qf::FactorSystem& {
      if (o->fs) return *o->fs;
      hold = std::make_unique<qf::FactorSystem>(qf::factor_system_of(*o->ds, seed, tl).fs);
      r.notes.push_back(std::string(side) + " input extracted from a dynamical system");
      return *hold;
    };
    const qf::FactorSystem& fa = as_fs(a, "left", ha);
    const qf::FactorSystem& fb = as_fs(b, "right", hb);
    qf::ConjugacyResult cr = qf::find_conjugacy(fa, fb, seed, 32, tl);
    r.notes.push_back(cr.evidence);
    qf_status status = QF_UNDECIDED;
    if (cr.verdict == qf::ConjugacyResult::Verdict::found) {
      r.checks.add("conjugation witness residual", cr.residual, tl.threshold(1.0));
      r.verdict = "conjugate";
      status = r.checks.ok ? QF_OK : QF_CHECK_FAILED;
    } else if (cr.verdict == qf::ConjugacyResult::Verdict::not_conjugate) {
      r.verdict = "not conjugate";
      status = QF_CHECK_FAILED;
    } else {
      r.verdict = "undecided";
      status = QF_UNDECIDED;
    }
    emit(r, t, report_json_out);
    return status;
  });
}

qf_status qf_fusion_homs(const char* group_name, uint64_t seed, double tol,
                         char** report_json_out) {
  g_last_error.clear();
  if (report_json_out) *report_json_out = nullptr;
  return guarded([&]() {
    require_arg(group_name, "group_name");
    Timer t;
    double atol = tol > 0.0 ? tol : 1e-9;
    qf::Report r;
    r.command = "fusion-homs";
    r.seed = seed;
    r.tolerance = atol;
    hash_input(r, "group", group_name);
    qf::QuantumGroup g = qf::QuantumGroup::from_name(group_name);
    qf::Catalog cat = qf::build_catalog(g, seed);
    qf::FusionRing fr = qf::fusion_ring(cat);
    fr.validate();
    add_flag(r, "fusion ring axioms", true);
    std::vector<Eigen::VectorXd> homs = qf::positive_ring_homs(fr, seed, atol);
    std::string classes = "classes:";
    for (int i = 0; i < fr.size(); ++i)
      classes += " " + fr.labels[i] + "(" + std::to_string(fr.dims[i]) + ")";
    r.notes.push_back(classes);
    for (int k = 0; k < static_cast<int>(homs.size()); ++k)
      r.notes.push_back(format_hom(fr, k, homs[k]));
    r.verdict = std::to_string(homs.size()) + " positive ring homomorphisms";
    emit(r, t, report_json_out);
    return QF_OK;
  });
}

}  // extern "C"
