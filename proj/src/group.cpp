#include "ohol/group.hpp"

#include <algorithm>

namespace ohol {

OrientifoldGroup::OrientifoldGroup(std::vector<std::string> names, std::vector<std::vector<int>> table,
                                   std::vector<int> epsilon)
    : names_(std::move(names)), table_(std::move(table)), epsilon_(std::move(epsilon)) {
  const int n = size();
  if (n == 0) throw InputError("group has no elements");
  if (static_cast<int>(names_.size()) != n || static_cast<int>(epsilon_.size()) != n)
    throw InputError("group names, table and epsilon have different sizes");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw InputError("multiplication table is not square");
    for (int x : row)
      if (x < 0 || x >= n) throw InputError("multiplication table entry out of range");
  }
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw InputError("multiplication table has no identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) throw InputError("multiplication table is not associative");
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
  if (std::count(inverse_.begin(), inverse_.end(), -1)) throw InputError("multiplication table has an element without inverse");
  for (int a = 0; a < n; ++a)
    if (epsilon_[a] != 1 && epsilon_[a] != -1) throw InputError("epsilon values must be +1 or -1");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (epsilon_[table_[a][b]] != epsilon_[a] * epsilon_[b]) throw InputError("epsilon is not a homomorphism");
}

bool OrientifoldGroup::epsilonTrivial() const {
  return std::all_of(epsilon_.begin(), epsilon_.end(), [](int e) { return e == 1; });
}

std::vector<int> OrientifoldGroup::kernel() const {
  std::vector<int> out;
  for (int a = 0; a < size(); ++a)
    if (epsilon_[a] == 1) out.push_back(a);
  return out;
}

OrientifoldGroup OrientifoldGroup::withEpsilon(std::vector<int> epsilon) const {
  return OrientifoldGroup(names_, table_, std::move(epsilon));
}

OrientifoldGroup jandl_group() { return OrientifoldGroup({"1", "k"}, {{0, 1}, {1, 0}}, {1, -1}); }

OrientifoldGroup trivial_group() { return OrientifoldGroup({"1"}, {{0}}, {1}); }

OrientifoldGroup cyclic_group(int n) {
  std::vector<std::string> names;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    names.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  }
  return OrientifoldGroup(names, table, std::vector<int>(n, 1));
}

OrientifoldGroup direct_product(const OrientifoldGroup& a, const OrientifoldGroup& b) {
  const int na = a.size(), nb = b.size();
  std::vector<std::string> names;
  std::vector<std::vector<int>> table(na * nb, std::vector<int>(na * nb));
  std::vector<int> eps;
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y) {
      names.push_back("(" + a.name(x) + "," + b.name(y) + ")");
      eps.push_back(a.epsilon(x) * b.epsilon(y));
      for (int u = 0; u < na; ++u)
        for (int v = 0; v < nb; ++v) table[x * nb + y][u * nb + v] = a.mul(x, u) * nb + b.mul(y, v);
    }
  return OrientifoldGroup(names, table, eps);
}

OrientifoldGroup dihedral_group(int n) {
  // r^i s^j stored as i + n*j.
  auto mulD = [n](int x, int y) {
    int i = x % n, j = x / n, k = y % n, l = y / n;
    int rot = j == 0 ? (i + k) % n : ((i - k) % n + n) % n;
    return rot + n * (j ^ l);
  };
  std::vector<std::string> names;
  std::vector<std::vector<int>> table(2 * n, std::vector<int>(2 * n));
  for (int x = 0; x < 2 * n; ++x) {
    names.push_back((x / n ? "sr" : "r") + std::to_string(x % n));
    for (int y = 0; y < 2 * n; ++y) table[x][y] = mulD(x, y);
  }
  return OrientifoldGroup(names, table, std::vector<int>(2 * n, 1));
}

OrientifoldGroup quaternion_group() {
  // Unit quaternions +-1, +-i, +-j, +-k as (sign, unit) with unit in {1,i,j,k}.
  static const int unitMul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unitSign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  const char* base[4] = {"1", "i", "j", "k"};
  std::vector<std::string> names;
  std::vector<std::vector<int>> table(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x) {
    names.push_back(std::string(x / 4 ? "-" : "") + base[x % 4]);
    for (int y = 0; y < 8; ++y) {
      int u = x % 4, v = y % 4;
      int sign = (x / 4 ? -1 : 1) * (y / 4 ? -1 : 1) * unitSign[u][v];
      table[x][y] = unitMul[u][v] + (sign < 0 ? 4 : 0);
    }
  }
  return OrientifoldGroup(names, table, std::vector<int>(8, 1));
}

std::vector<std::vector<int>> sign_characters(const OrientifoldGroup& g) {
  // Characters to {+-1} are determined by their values; brute force over
  // assignments is too large in general, so extend along a generating walk.
  std::vector<std::vector<int>> out;
  const int n = g.size();
  std::vector<int> gens;
  std::vector<bool> inSpan(n, false);
  inSpan[g.identity()] = true;
  std::vector<int> span{g.identity()};
  for (int a = 0; a < n; ++a) {
    if (inSpan[a]) continue;
    gens.push_back(a);
    // Close the span under multiplication by all generators.
    span.assign(1, g.identity());
    std::fill(inSpan.begin(), inSpan.end(), false);
    inSpan[g.identity()] = true;
    for (std::size_t i = 0; i < span.size(); ++i)
      for (int s : gens) {
        int p = g.mul(span[i], s);
        if (!inSpan[p]) {
          inSpan[p] = true;
          span.push_back(p);
        }
      }
  }
  for (int mask = 0; mask < (1 << gens.size()); ++mask) {
    std::vector<int> eps(n, 0);
    eps[g.identity()] = 1;
    std::vector<int> queue{g.identity()};
    bool ok = true;
    for (std::size_t i = 0; i < queue.size() && ok; ++i)
      for (std::size_t s = 0; s < gens.size() && ok; ++s) {
        int p = g.mul(queue[i], gens[s]);
        int want = eps[queue[i]] * ((mask >> s) & 1 ? -1 : 1);
        if (eps[p] == 0) {
          eps[p] = want;
          queue.push_back(p);
        } else if (eps[p] != want) {
          ok = false;
        }
      }
    if (ok) {
      for (int a = 0; a < n && ok; ++a)
        for (int b = 0; b < n && ok; ++b) ok = eps[g.mul(a, b)] == eps[a] * eps[b];
    }
    if (ok) out.push_back(eps);
  }
  return out;
}

Phase twisted_action_on_phase(const OrientifoldGroup& g, int gamma, const Phase& p) { return p.pow(g.epsilon(gamma)); }

GroupQuotient quotient_group(const OrientifoldGroup& g) {
  GroupQuotient q{g.epsilonTrivial() ? trivial_group() : jandl_group(), {}};
  for (int a = 0; a < g.size(); ++a) q.projection.push_back(g.epsilon(a) == 1 ? 0 : 1);
  return q;
}

void check_action(const OrientifoldGroup& g, const IndexAction& a) {
  if (static_cast<int>(a.act.size()) != g.size()) throw SemanticError("action table does not match the group");
  for (const auto& row : a.act) {
    if (static_cast<int>(row.size()) != a.size) throw SemanticError("action row has the wrong length");
    for (int x : row)
      if (x < 0 || x >= a.size) throw SemanticError("action value out of range");
  }
  for (int i = 0; i < a.size; ++i)
    if (a.act[g.identity()][i] != i) throw SemanticError("identity does not act trivially");
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y)
      for (int i = 0; i < a.size; ++i)
        if (a.act[g.mul(x, y)][i] != a.act[x][a.act[y][i]]) throw SemanticError("action is not compatible with the product");
}

bool kernel_acts_freely(const OrientifoldGroup& g, const IndexAction& a) {
  for (int x : g.kernel()) {
    if (x == g.identity()) continue;
    for (int i = 0; i < a.size; ++i)
      if (a.act[x][i] == i) return false;
  }
  return true;
}

IndexAction regular_action(const OrientifoldGroup& g) {
  IndexAction a;
  a.size = g.size();
  a.act.assign(g.size(), std::vector<int>(g.size()));
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y) a.act[x][y] = g.mul(x, y);
  return a;
}

}  // namespace ohol
