#include "qfactor/group_table.hpp"

#include <algorithm>
#include <array>

namespace qf {

int GroupTable::inverse(int g) const {
  for (int h = 0; h < order; ++h)
    if (table[g][h] == 0 && table[h][g] == 0) return h;
  throw StructuralError("group table: element " + std::to_string(g) + " has no inverse");
}

bool GroupTable::is_abelian() const {
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < i; ++j)
      if (table[i][j] != table[j][i]) return false;
  return true;
}

void GroupTable::validate() const {
  if (order <= 0) throw StructuralError("group table: order must be positive");
  if ((int)table.size() != order)
    throw StructuralError("group table: row count does not match order");
  for (int i = 0; i < order; ++i) {
    if ((int)table[i].size() != order)
      throw StructuralError("group table: row " + std::to_string(i) + " has wrong length");
    for (int j = 0; j < order; ++j)
      if (table[i][j] < 0 || table[i][j] >= order)
        throw StructuralError("group table: closure fails at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
  }
  for (int g = 0; g < order; ++g)
    if (table[0][g] != g || table[g][0] != g)
      throw StructuralError("group table: element 0 is not an identity at " + std::to_string(g));
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j)
      for (int k = 0; k < order; ++k)
        if (table[table[i][j]][k] != table[i][table[j][k]])
          throw StructuralError("group table: associativity fails at (" + std::to_string(i) + "," +
                                std::to_string(j) + "," + std::to_string(k) + ")");
  for (int g = 0; g < order; ++g) {
    bool has = false;
    for (int h = 0; h < order && !has; ++h)
      has = table[g][h] == 0 && table[h][g] == 0;
    if (!has)
      throw StructuralError("group table: element " + std::to_string(g) + " has no inverse");
  }
}

GroupTable GroupTable::cyclic(int n) {
  GroupTable g;
  g.order = n;
  g.table.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.table[i][j] = (i + j) % n;
  return g;
}

GroupTable GroupTable::direct_product(const GroupTable& a, const GroupTable& b) {
  GroupTable g;
  g.order = a.order * b.order;
  g.table.assign(g.order, std::vector<int>(g.order));
  for (int i1 = 0; i1 < a.order; ++i1)
    for (int i2 = 0; i2 < b.order; ++i2)
      for (int j1 = 0; j1 < a.order; ++j1)
        for (int j2 = 0; j2 < b.order; ++j2)
          g.table[i1 * b.order + i2][j1 * b.order + j2] =
              a.table[i1][j1] * b.order + b.table[i2][j2];
  return g;
}

GroupTable GroupTable::dihedral4() {
  // r^a s^b, index a + 4b; s r s = r^{-1}
  GroupTable g;
  g.order = 8;
  g.table.assign(8, std::vector<int>(8));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 2; ++d) {
          int e = ((b ? a - c : a + c) % 4 + 4) % 4;
          g.table[a + 4 * b][c + 4 * d] = e + 4 * ((b + d) % 2);
        }
  return g;
}

GroupTable GroupTable::quaternion8() {
  // elements (sign, letter) with letters 1,i,j,k; index = letter*2 + (sign<0)
  static const int lmul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int lsgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  GroupTable g;
  g.order = 8;
  g.table.assign(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int lx = x / 2, ly = y / 2;
      int s = ((x % 2) ? -1 : 1) * ((y % 2) ? -1 : 1) * lsgn[lx][ly];
      g.table[x][y] = lmul[lx][ly] * 2 + (s < 0 ? 1 : 0);
    }
  return g;
}

GroupTable GroupTable::symmetric3() {
  // permutations of {0,1,2} in lexicographic order, composed as (p*q)(x) = p(q(x))
  std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  auto index_of = [&](const std::array<int, 3>& p) {
    for (int i = 0; i < 6; ++i)
      if (perms[i] == p) return i;
    return -1;
  };
  GroupTable g;
  g.order = 6;
  g.table.assign(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      std::array<int, 3> c = {perms[i][perms[j][0]], perms[i][perms[j][1]], perms[i][perms[j][2]]};
      g.table[i][j] = index_of(c);
    }
  return g;
}

GroupTable GroupTable::builtin(const std::string& name) {
  for (int n = 1; n <= 8; ++n)
    if (name == "z" + std::to_string(n)) return cyclic(n);
  if (name == "z2xz2") return direct_product(cyclic(2), cyclic(2));
  if (name == "z2xz4") return direct_product(cyclic(2), cyclic(4));
  if (name == "z2xz2xz2") return direct_product(cyclic(2), direct_product(cyclic(2), cyclic(2)));
  if (name == "d4") return dihedral4();
  if (name == "q8") return quaternion8();
  if (name == "s3") return symmetric3();
  throw StructuralError("unknown group name: " + name);
}

std::vector<std::string> GroupTable::builtin_names() {
  std::vector<std::string> out;
  for (int n = 1; n <= 8; ++n) out.push_back("z" + std::to_string(n));
  out.insert(out.end(), {"z2xz2", "z2xz4", "z2xz2xz2", "d4", "q8", "s3"});
  return out;
}

}  // namespace qf
