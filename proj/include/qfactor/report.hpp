#pragma once

// Uniform run record: the command, content hashes of the inputs, the named
// checks with residuals, a verdict, and the determinism parameters.

#include "qfactor/complex_matrix.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qf {

std::uint64_t fnv1a64(const std::string& bytes);

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::uint64_t>> inputs;  // name, content hash
  ValidationReport checks;
  std::vector<std::string> notes;
  std::string verdict;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  double wall_seconds = 0.0;

  std::string to_text() const;
  std::string to_json() const;  // includes the text rendering under "text"
};

}  // namespace qf
