#pragma once

// Finite groups as multiplication tables. Element 0 is always the identity;
// builders keep a fixed element order so downstream output is reproducible.

#include "qfactor/complex_matrix.hpp"

#include <string>
#include <vector>

namespace qf {

struct GroupTable {
  int order = 0;
  std::vector<std::vector<int>> table;  // table[i][j] = product i*j

  int mul(int i, int j) const { return table[i][j]; }
  int inverse(int g) const;
  bool is_abelian() const;

  // Throws StructuralError naming the first violated group axiom.
  void validate() const;

  static GroupTable cyclic(int n);
  static GroupTable direct_product(const GroupTable& a, const GroupTable& b);
  static GroupTable dihedral4();
  static GroupTable quaternion8();
  static GroupTable symmetric3();

  // Named builders: z1..z8, z2xz2, z2xz4, z2xz2xz2, d4, q8, s3.
  static GroupTable builtin(const std::string& name);
  static std::vector<std::string> builtin_names();
};

}  // namespace qf
