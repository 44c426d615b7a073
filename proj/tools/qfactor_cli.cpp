// Command line front end. Talks to the library exclusively through the C
// interface; JSON is parsed here only to render and compose documents.

#include "qfactor/qfactor.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace {

struct Options {
  double tol = 0.0;  // 0 selects the library default
  unsigned long long seed = 1;
  std::string out;
  std::string format = "text";
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--tol", o.tol, "residual tolerance, 0 for the built-in default")
      ->envname("QFACTOR_TOL");
  cmd->add_option("--seed", o.seed, "seed for randomized searches and basis choices");
  cmd->add_option("--out", o.out, "write the primary output document to this file");
  cmd->add_option("--format", o.format, "report rendering on stdout")
      ->check(CLI::IsMember({"text", "json"}));
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

struct CStr {
  char* p = nullptr;
  CStr() = default;
  CStr(const CStr&) = delete;
  CStr& operator=(const CStr&) = delete;
  ~CStr() { qf_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct Obj {
  qf_object* p = nullptr;
  Obj() = default;
  Obj(const Obj&) = delete;
  Obj& operator=(const Obj&) = delete;
  ~Obj() { qf_object_free(p); }
};

int fail(qf_status st) {
  const char* msg = qf_last_error();
  if (msg && *msg) std::cerr << "error: " << msg << "\n";
  return static_cast<int>(st);
}

void print_report(const std::string& report_json, const Options& o) {
  if (o.format == "json") {
    std::cout << report_json << "\n";
    return;
  }
  nlohmann::json j = nlohmann::json::parse(report_json);
  std::cout << j.value("text", report_json);
}

// Embed the run report into an output document under "report".
std::string merge_report(const std::string& payload_json, const std::string& report_json) {
  nlohmann::json p = nlohmann::json::parse(payload_json);
  nlohmann::json r = nlohmann::json::parse(report_json);
  r.erase("text");
  p["report"] = r;
  return p.dump(2);
}

int parse_file(const std::string& path, Obj& obj) {
  std::string text = read_input(path);
  qf_status st = qf_parse(text.c_str(), &obj.p);
  return st == QF_OK ? 0 : fail(st);
}

// Commands whose only output is the report: print it, honor --out, pass
// the status through as the exit code.
int finish_report(qf_status st, const CStr& rep, const Options& o) {
  if (!rep.p) return fail(st);
  print_report(rep.str(), o);
  if (!o.out.empty()) write_output(o.out, rep.str());
  return static_cast<int>(st);
}

int cmd_validate(const std::string& file, const Options& o) {
  Obj obj;
  if (int rc = parse_file(file, obj)) return rc;
  CStr rep;
  qf_status st = qf_validate(obj.p, o.tol, &rep.p);
  return finish_report(st, rep, o);
}

int cmd_reconstruct(const std::string& file, const Options& o) {
  Obj obj;
  if (int rc = parse_file(file, obj)) return rc;
  Obj ds;
  CStr rep;
  qf_status st = qf_reconstruct(obj.p, o.tol, &ds.p, &rep.p);
  if (!rep.p) return fail(st);
  print_report(rep.str(), o);
  if (!o.out.empty() && ds.p) {
    CStr dj;
    qf_status s2 = qf_to_json(ds.p, &dj.p);
    if (s2 != QF_OK) return fail(s2);
    write_output(o.out, merge_report(dj.str(), rep.str()));
  }
  return static_cast<int>(st);
}

int cmd_extract(const std::string& file, const Options& o) {
  Obj obj;
  if (int rc = parse_file(file, obj)) return rc;
  Obj fs;
  CStr rep;
  qf_status st = qf_extract(obj.p, o.seed, o.tol, &fs.p, &rep.p);
  if (!rep.p) return fail(st);
  print_report(rep.str(), o);
  if (!o.out.empty() && fs.p) {
    CStr fj;
    qf_status s2 = qf_to_json(fs.p, &fj.p);
    if (s2 != QF_OK) return fail(s2);
    write_output(o.out, merge_report(fj.str(), rep.str()));
  }
  return static_cast<int>(st);
}

int cmd_check_free(const std::string& file, const Options& o) {
  Obj obj;
  if (int rc = parse_file(file, obj)) return rc;
  CStr rep;
  qf_status st = qf_check_free(obj.p, o.tol, &rep.p);
  return finish_report(st, rep, o);
}

int cmd_check_cleft(const std::string& file, const Options& o) {
  Obj obj;
  if (int rc = parse_file(file, obj)) return rc;
  CStr rep;
  qf_status st = qf_check_cleft(obj.p, o.seed, o.tol, &rep.p);
  return finish_report(st, rep, o);
}

int cmd_conjugate(const std::string& file_a, const std::string& file_b, const Options& o) {
  Obj a, b;
  if (int rc = parse_file(file_a, a)) return rc;
  if (int rc = parse_file(file_b, b)) return rc;
  CStr rep;
  qf_status st = qf_conjugate(a.p, b.p, o.seed, o.tol, &rep.p);
  return finish_report(st, rep, o);
}

int cmd_fusion_homs(const std::string& group, const Options& o) {
  CStr rep;
  qf_status st = qf_fusion_homs(group.c_str(), o.seed, o.tol, &rep.p);
  return finish_report(st, rep, o);
}

int cmd_catalog_build(const std::string& group, const Options& o) {
  CStr js;
  qf_status st = qf_catalog_build(group.c_str(), o.seed, &js.p);
  if (st != QF_OK) return fail(st);
  std::cout << js.str() << "\n";
  if (!o.out.empty()) write_output(o.out, js.str());
  return 0;
}

int cmd_catalog_list(const Options& o) {
  CStr js;
  qf_status st = qf_builtin_groups(&js.p);
  if (st != QF_OK) return fail(st);
  if (o.format == "json") {
    std::cout << js.str() << "\n";
  } else {
    nlohmann::json arr = nlohmann::json::parse(js.str());
    for (const auto& n : arr) std::cout << n.get<std::string>() << "\n";
  }
  if (!o.out.empty()) write_output(o.out, js.str());
  return 0;
}

int cmd_fixtures(const std::string& name, const Options& o) {
  if (name.empty()) {
    CStr js;
    qf_status st = qf_fixture_list(&js.p);
    if (st != QF_OK) return fail(st);
    if (o.format == "json") {
      std::cout << js.str() << "\n";
    } else {
      nlohmann::json arr = nlohmann::json::parse(js.str());
      for (const auto& e : arr)
        std::cout << e.value("name", "") << " (" << e.value("kind", "") << ")\n";
    }
    return 0;
  }
  Obj obj;
  qf_status st = qf_fixture(name.c_str(), &obj.p);
  if (st != QF_OK) return fail(st);
  CStr js;
  st = qf_to_json(obj.p, &js.p);
  if (st != QF_OK) return fail(st);
  if (!o.out.empty())
    write_output(o.out, js.str());
  else
    std::cout << js.str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("qfactor ") + qf_version() +
               ": factor systems of free quantum group actions"};
  app.require_subcommand(1);
  int rc = 0;
  Options opt;
  std::string file_a, file_b, group, fixture_name;

  CLI::App* validate = app.add_subcommand("validate", "check the axioms of a stored system");
  validate->add_option("file", file_a, "factor system or dynamical system JSON, - for stdin")
      ->required();
  add_common(validate, opt);
  validate->callback([&]() { rc = cmd_validate(file_a, opt); });

  CLI::App* reconstruct =
      app.add_subcommand("reconstruct", "build the dynamical system of a factor system");
  reconstruct->add_option("file", file_a, "factor system JSON, - for stdin")->required();
  add_common(reconstruct, opt);
  reconstruct->callback([&]() { rc = cmd_reconstruct(file_a, opt); });

  CLI::App* extract =
      app.add_subcommand("extract", "extract the factor system of a free dynamical system");
  extract->add_option("file", file_a, "dynamical system JSON, - for stdin")->required();
  add_common(extract, opt);
  extract->callback([&]() { rc = cmd_extract(file_a, opt); });

  CLI::App* free_cmd = app.add_subcommand("check-free", "decide freeness of an action");
  free_cmd->add_option("file", file_a, "factor system or dynamical system JSON, - for stdin")
      ->required();
  add_common(free_cmd, opt);
  free_cmd->callback([&]() { rc = cmd_check_free(file_a, opt); });

  CLI::App* cleft_cmd = app.add_subcommand("check-cleft", "decide cleftness of a system");
  cleft_cmd->add_option("file", file_a, "factor system or dynamical system JSON, - for stdin")
      ->required();
  add_common(cleft_cmd, opt);
  cleft_cmd->callback([&]() { rc = cmd_check_cleft(file_a, opt); });

  CLI::App* conjugate =
      app.add_subcommand("conjugate", "search for a conjugation witness between two systems");
  conjugate->add_option("left", file_a, "first system JSON")->required();
  conjugate->add_option("right", file_b, "second system JSON")->required();
  add_common(conjugate, opt);
  conjugate->callback([&]() { rc = cmd_conjugate(file_a, file_b, opt); });

  CLI::App* homs =
      app.add_subcommand("fusion-homs", "positive ring homomorphisms of a fusion ring");
  homs->add_option("group", group, "quantum group name, e.g. dual:s3 or fun:z2xz2")->required();
  add_common(homs, opt);
  homs->callback([&]() { rc = cmd_fusion_homs(group, opt); });

  CLI::App* catalog = app.add_subcommand("catalog", "irreducible corepresentation catalogs");
  catalog->require_subcommand(1);
  CLI::App* cat_build = catalog->add_subcommand("build", "decompose the regular corepresentation");
  cat_build->add_option("group", group, "quantum group name")->required();
  add_common(cat_build, opt);
  cat_build->callback([&]() { rc = cmd_catalog_build(group, opt); });
  CLI::App* cat_list = catalog->add_subcommand("list", "builder names accepted by this tool");
  add_common(cat_list, opt);
  cat_list->callback([&]() { rc = cmd_catalog_list(opt); });

  CLI::App* fixtures = app.add_subcommand("fixtures", "built-in example systems");
  fixtures->add_option("name", fixture_name, "emit this fixture instead of listing");
  add_common(fixtures, opt);
  fixtures->callback([&]() { rc = cmd_fixtures(fixture_name, opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
