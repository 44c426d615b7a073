#include "qfactor/report.hpp"

#include "json.hpp"

#include <cstdio>
#include <sstream>

namespace qf {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string Report::to_text() const {
  std::ostringstream out;
  out << "command: " << command << "\n";
  for (const auto& [name, hash] : inputs) out << "input " << name << ": " << hex64(hash) << "\n";
  for (const NamedCheck& c : checks.checks) {
    out << "check " << c.name << ": " << (c.ok ? "pass" : "FAIL");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", c.residual);
    out << " (residual " << buf << ")\n";
  }
  for (const std::string& n : notes) out << "note: " << n << "\n";
  out << "verdict: " << verdict << "\n";
  char buf[96];
  std::snprintf(buf, sizeof buf, "seed: %llu  tolerance: %.3e  wall: %.3fs",
                static_cast<unsigned long long>(seed), tolerance, wall_seconds);
  out << buf << "\n";
  return out.str();
}

std::string Report::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  nlohmann::json in = nlohmann::json::array();
  for (const auto& [name, hash] : inputs) in.push_back({{"name", name}, {"fnv1a64", hex64(hash)}});
  j["inputs"] = in;
  nlohmann::json cs = nlohmann::json::array();
  for (const NamedCheck& c : checks.checks)
    cs.push_back({{"name", c.name}, {"ok", c.ok}, {"residual", c.residual}});
  j["checks"] = cs;
  j["notes"] = notes;
  j["verdict"] = verdict;
  j["seed"] = seed;
  j["tolerance"] = tolerance;
  j["wall_seconds"] = wall_seconds;
  j["text"] = to_text();
  return j.dump(2);
}

}  // namespace qf
