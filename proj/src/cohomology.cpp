#include "ohol/cohomology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace ohol {

using boost::multiprecision::cpp_int;

TwistedCochain::TwistedCochain(int groupSize, int degree) : n_(groupSize), k_(degree) {
  if (groupSize < 1 || degree < 0) throw std::invalid_argument("cochain needs a nonempty group and degree >= 0");
  std::size_t count = 1;
  for (int i = 0; i < degree; ++i) count *= static_cast<std::size_t>(groupSize);
  values_.assign(count, Phase());
}

std::size_t TwistedCochain::encode(const std::vector<int>& tuple) const {
  if (static_cast<int>(tuple.size()) != k_) throw std::invalid_argument("tuple length differs from cochain degree");
  std::size_t idx = 0;
  for (int x : tuple) {
    if (x < 0 || x >= n_) throw std::out_of_range("group element out of range");
    idx = idx * n_ + x;
  }
  return idx;
}

std::vector<int> TwistedCochain::decode(std::size_t idx) const {
  std::vector<int> t(k_);
  for (int i = k_ - 1; i >= 0; --i) {
    t[i] = static_cast<int>(idx % n_);
    idx /= n_;
  }
  return t;
}

TwistedCochain TwistedCochain::operator+(const TwistedCochain& o) const {
  if (o.n_ != n_ || o.k_ != k_) throw std::invalid_argument("adding cochains of different shape");
  TwistedCochain out = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] *= o.values_[i];
  return out;
}

TwistedCochain TwistedCochain::operator-() const {
  TwistedCochain out = *this;
  for (auto& v : out.values_) v = v.inv();
  return out;
}

bool TwistedCochain::isZero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Phase& p) { return p.isIdentity(); });
}

bool TwistedCochain::normalized(const OrientifoldGroup& g) const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    auto t = decode(i);
    if (std::find(t.begin(), t.end(), g.identity()) != t.end() && !values_[i].isIdentity()) return false;
  }
  return true;
}

namespace {

// Signed terms of the coboundary of the basis cochain supported on one tuple:
// the value at tuple t of delta(c) is sum over terms (sign, face tuple).
template <class Fn>
void faces(const OrientifoldGroup& g, const std::vector<int>& t, Fn&& fn) {
  const int k = static_cast<int>(t.size()) - 1;
  std::vector<int> face(t.begin() + 1, t.end());
  fn(g.epsilon(t[0]), face);
  for (int i = 0; i < k; ++i) {
    face.assign(t.begin(), t.begin() + i);
    face.push_back(g.mul(t[i], t[i + 1]));
    face.insert(face.end(), t.begin() + i + 2, t.end());
    fn((i % 2 == 0) ? -1 : 1, face);
  }
  face.assign(t.begin(), t.end() - 1);
  fn((k % 2 == 0) ? -1 : 1, face);
}

}  // namespace

TwistedCochain delta(const OrientifoldGroup& g, const TwistedCochain& c) {
  if (c.groupSize() != g.size()) throw std::invalid_argument("cochain and group sizes differ");
  const std::size_t n = static_cast<std::size_t>(g.size());
  const int k = c.degree();
  TwistedCochain out(g.size(), k + 1);
  std::size_t tail = 1;  // number of k-tuples
  for (int j = 0; j < k; ++j) tail *= n;
  std::vector<int> t(k + 1);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    std::size_t rest = idx;
    for (int j = k; j >= 0; --j) {
      t[j] = static_cast<int>(rest % n);
      rest /= n;
    }
    Phase sum;
    auto add = [&](int sign, std::size_t face) {
      const Phase& v = c[face];
      if (!v.isIdentity()) sum *= sign > 0 ? v : v.inv();
    };
    add(g.epsilon(t[0]), idx % tail);
    for (int i = 0; i < k; ++i) {
      std::size_t face = 0;
      for (int j = 0; j <= k; ++j) {
        if (j == i) {
          face = face * n + static_cast<std::size_t>(g.mul(t[i], t[i + 1]));
          ++j;
        } else {
          face = face * n + static_cast<std::size_t>(t[j]);
        }
      }
      add((i % 2 == 0) ? -1 : 1, face);
    }
    add((k % 2 == 0) ? -1 : 1, idx / n);
    out[idx] = sum;
  }
  return out;
}

bool is_cocycle(const OrientifoldGroup& g, const TwistedCochain& c) { return delta(g, c).isZero(); }

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Sparse integer matrix of delta from degree k to k+1, either on all
// cochains or on normalized ones (tuples of non-identity elements).
struct DeltaMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<std::pair<std::size_t, int>>> entries;
};

class TupleIndex {
 public:
  TupleIndex(const OrientifoldGroup& g, bool normalized) : n_(g.size()) {
    for (int x = 0; x < g.size(); ++x)
      if (!normalized || x != g.identity()) elems_.push_back(x);
    pos_.assign(g.size(), -1);
    for (std::size_t i = 0; i < elems_.size(); ++i) pos_[elems_[i]] = static_cast<int>(i);
  }
  std::size_t count(int k) const { return ipow(elems_.size(), k); }
  std::optional<std::size_t> encode(const std::vector<int>& t) const {
    std::size_t idx = 0;
    for (int x : t) {
      if (pos_[x] < 0) return std::nullopt;
      idx = idx * elems_.size() + pos_[x];
    }
    return idx;
  }
  std::vector<int> decode(std::size_t idx, int k) const {
    std::vector<int> t(k);
    for (int i = k - 1; i >= 0; --i) {
      t[i] = elems_[idx % elems_.size()];
      idx /= elems_.size();
    }
    return t;
  }
  const std::vector<int>& elements() const { return elems_; }

 private:
  int n_;
  std::vector<int> elems_;
  std::vector<int> pos_;
};

void checkCap(std::uint64_t rows, std::uint64_t cols, std::uint64_t cap) {
  if (rows != 0 && cols > cap / rows) throw SemanticError("size cap exceeded for the coboundary matrix");
}

DeltaMatrix deltaMatrix(const OrientifoldGroup& g, int k, bool normalized, std::uint64_t cap) {
  TupleIndex ix(g, normalized);
  DeltaMatrix m;
  m.rows = ix.count(k + 1);
  m.cols = ix.count(k);
  checkCap(m.rows, m.cols, cap);
  m.entries.resize(m.rows);
  for (std::size_t r = 0; r < m.rows; ++r) {
    std::map<std::size_t, int> row;
    faces(g, ix.decode(r, k + 1), [&](int sign, const std::vector<int>& face) {
      if (auto col = ix.encode(face)) row[*col] += sign;
    });
    for (auto [c, v] : row)
      if (v != 0) m.entries[r].push_back({c, v});
  }
  return m;
}

std::vector<std::pair<int, int>> primeFactors(std::int64_t n) {
  std::vector<std::pair<int, int>> out;
  for (int p = 2; static_cast<std::int64_t>(p) * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({static_cast<int>(n), 1});
  return out;
}

// Diagonalization of a matrix over Z/p^e. Records the pivot valuations and
// the column transform R with L M R diagonal.
struct LocalSmith {
  int rank = 0;
  std::vector<int> valuation;                // per pivot
  std::vector<std::vector<int>> columnOp;    // R, cols x cols, entries mod p^e
};

int modInverse(int a, int m) {
  int g = m, x = 0, x1 = 1, a1 = a;
  while (a1 != 0) {
    int q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  return ((x % m) + m) % m;
}

LocalSmith localSmith(const DeltaMatrix& dm, int p, int e, bool trackColumns) {
  int q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  const std::size_t R = dm.rows, C = dm.cols;
  std::vector<std::uint8_t> storage;
  std::vector<int> wide;
  const bool narrow = q <= 256;
  if (narrow) storage.assign(R * C, 0);
  else wide.assign(R * C, 0);
  auto get = [&](std::size_t r, std::size_t c) -> int { return narrow ? storage[r * C + c] : wide[r * C + c]; };
  auto put = [&](std::size_t r, std::size_t c, int v) {
    v %= q;
    if (v < 0) v += q;
    if (narrow) storage[r * C + c] = static_cast<std::uint8_t>(v);
    else wide[r * C + c] = v;
  };
  for (std::size_t r = 0; r < R; ++r)
    for (auto [c, v] : dm.entries[r]) put(r, c, v);
  auto val = [&](int x) {
    if (x == 0) return e;
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  };

  LocalSmith out;
  if (trackColumns) {
    out.columnOp.assign(C, std::vector<int>(C, 0));
    for (std::size_t i = 0; i < C; ++i) out.columnOp[i][i] = 1;
  }
  std::vector<std::size_t> rowPerm(R);
  std::iota(rowPerm.begin(), rowPerm.end(), 0);
  const std::size_t steps = std::min(R, C);
  for (std::size_t t = 0; t < steps; ++t) {
    int best = e;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = t; i < R && best > 0; ++i)
      for (std::size_t j = t; j < C; ++j) {
        const int x = get(i, j);
        if (x == 0) continue;
        const int v = val(x);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    if (best >= e) break;
    if (bi != t)
      for (std::size_t j = 0; j < C; ++j) {
        const int a = get(t, j), b = get(bi, j);
        put(t, j, b);
        put(bi, j, a);
      }
    if (bj != t) {
      for (std::size_t i = 0; i < R; ++i) {
        const int a = get(i, t), b = get(i, bj);
        put(i, t, b);
        put(i, bj, a);
      }
      if (trackColumns)
        for (std::size_t i = 0; i < C; ++i) std::swap(out.columnOp[i][t], out.columnOp[i][bj]);
    }
    int pv = 1;
    for (int i = 0; i < best; ++i) pv *= p;
    const int unitInv = modInverse((get(t, t) / pv) % q, q);
    std::vector<std::size_t> support;
    for (std::size_t j = t; j < C; ++j) {
      if (get(t, j) == 0) continue;
      put(t, j, static_cast<int>((static_cast<long long>(get(t, j)) * unitInv) % q));
      support.push_back(j);
    }
    for (std::size_t i = t + 1; i < R; ++i) {
      const int x = get(i, t);
      if (x == 0) continue;
      const int c = x / pv;
      for (std::size_t j : support) put(i, j, get(i, j) - c * get(t, j));
    }
    for (std::size_t j : support) {
      if (j == t) continue;
      const int c = get(t, j) / pv;
      if (trackColumns)
        for (std::size_t i = 0; i < C; ++i)
          out.columnOp[i][j] = ((out.columnOp[i][j] - c * out.columnOp[i][t]) % q + q) % q;
      put(t, j, 0);
    }
    out.valuation.push_back(best);
    ++out.rank;
  }
  return out;
}

TwistedCochain expandNormalized(const OrientifoldGroup& g, int k, const std::vector<Phase>& coords) {
  TupleIndex ix(g, true);
  TwistedCochain c(g.size(), k);
  for (std::size_t i = 0; i < coords.size(); ++i) c.set(ix.decode(i, k), coords[i]);
  return c;
}

}  // namespace

std::int64_t CohomologyGroup::order() const {
  std::int64_t o = 1;
  for (auto f : invariantFactors) o *= f;
  return o;
}

CohomologyGroup cohomology(const OrientifoldGroup& g, int degree) {
  if (degree < 0) throw std::invalid_argument("negative cohomological degree");
  CohomologyGroup out;
  out.degree = degree;
  const DeltaMatrix dn = deltaMatrix(g, degree, true, kCohomologySizeCap);
  auto primes = primeFactors(g.size());
  if (std::none_of(primes.begin(), primes.end(), [](auto pe) { return pe.first == 2; })) primes.push_back({2, 0});

  struct Part {
    int exponent;
    std::vector<Phase> rep;
  };
  std::map<int, std::vector<Part>> parts;  // prime -> parts, descending exponent
  int rankN = -1;
  for (auto [p, v] : primes) {
    LocalSmith s = localSmith(dn, p, v + 1, true);
    rankN = s.rank;
    std::vector<Part> ps;
    for (int t = 0; t < s.rank; ++t) {
      const int a = s.valuation[t];
      if (a == 0) continue;
      std::int64_t pa = 1;
      for (int i = 0; i < a; ++i) pa *= p;
      std::vector<Phase> rep(dn.cols);
      for (std::size_t x = 0; x < dn.cols; ++x) rep[x] = Phase::fromFraction(s.columnOp[x][t] % pa, pa);
      ps.push_back({a, std::move(rep)});
    }
    std::stable_sort(ps.begin(), ps.end(), [](const Part& l, const Part& r) { return l.exponent > r.exponent; });
    parts[p] = std::move(ps);
  }
  int rankPrev = 0;
  if (degree > 0) rankPrev = localSmith(deltaMatrix(g, degree - 1, true, kCohomologySizeCap), primes.front().first,
                                        primes.front().second + 1, false).rank;
  out.divisibleRank = static_cast<int>(dn.cols) - rankN - rankPrev;

  std::size_t m = 0;
  for (const auto& [p, ps] : parts) m = std::max(m, ps.size());
  for (std::size_t j = 0; j < m; ++j) {
    std::int64_t order = 1;
    std::vector<Phase> rep(dn.cols);
    for (const auto& [p, ps] : parts) {
      if (j >= ps.size()) continue;
      for (int i = 0; i < ps[j].exponent; ++i) order *= p;
      for (std::size_t x = 0; x < dn.cols; ++x) rep[x] *= ps[j].rep[x];
    }
    out.invariantFactors.push_back(order);
    out.representatives.push_back(expandNormalized(g, degree, rep));
  }
  std::reverse(out.invariantFactors.begin(), out.invariantFactors.end());
  std::reverse(out.representatives.begin(), out.representatives.end());
  return out;
}

namespace {

inline constexpr std::uint64_t kExactSizeCap = 4'000'000;

std::int64_t toInt64(const cpp_int& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("coboundary witness exceeds 64-bit denominators");
  return static_cast<std::int64_t>(x);
}

}  // namespace

std::optional<TwistedCochain> is_coboundary(const OrientifoldGroup& g, const TwistedCochain& c) {
  if (c.groupSize() != g.size()) throw std::invalid_argument("cochain and group sizes differ");
  if (c.degree() < 1) throw std::invalid_argument("coboundaries start in degree 1");
  const int k = c.degree() - 1;
  if (c.isZero()) return TwistedCochain(g.size(), k);
  const DeltaMatrix dm = deltaMatrix(g, k, false, kExactSizeCap);
  const std::size_t R = dm.rows, C = dm.cols;

  std::int64_t L = 1;
  for (std::size_t i = 0; i < c.size(); ++i) L = std::lcm(L, c[i].den());
  std::vector<cpp_int> rhs(R);
  for (std::size_t i = 0; i < R; ++i) rhs[i] = cpp_int(c[i].num()) * (L / c[i].den());

  std::vector<std::vector<cpp_int>> M(R, std::vector<cpp_int>(C));
  for (std::size_t r = 0; r < R; ++r)
    for (auto [col, v] : dm.entries[r]) M[r][col] = v;
  std::vector<std::vector<cpp_int>> Q(C, std::vector<cpp_int>(C));
  for (std::size_t i = 0; i < C; ++i) Q[i][i] = 1;

  auto swapRows = [&](std::size_t a, std::size_t b) {
    std::swap(M[a], M[b]);
    std::swap(rhs[a], rhs[b]);
  };
  auto swapCols = [&](std::size_t a, std::size_t b) {
    for (auto& row : M) std::swap(row[a], row[b]);
    for (auto& row : Q) std::swap(row[a], row[b]);
  };

  std::size_t r = 0;
  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    // Smallest nonzero entry of the remaining block as pivot.
    bool found = false;
    std::size_t bi = 0, bj = 0;
    cpp_int best;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (M[i][j] != 0 && (!found || abs(M[i][j]) < best)) {
          found = true;
          best = abs(M[i][j]);
          bi = i;
          bj = j;
        }
    if (!found) break;
    swapRows(t, bi);
    swapCols(t, bj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (M[i][t] == 0) continue;
        const cpp_int qt = M[i][t] / M[t][t];
        if (qt != 0) {
          for (std::size_t j = t; j < C; ++j)
            if (M[t][j] != 0) M[i][j] -= qt * M[t][j];
          rhs[i] -= qt * rhs[t];
        }
        if (M[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (M[t][j] == 0) continue;
        const cpp_int qt = M[t][j] / M[t][t];
        if (qt != 0) {
          for (std::size_t i = t; i < R; ++i)
            if (M[i][t] != 0) M[i][j] -= qt * M[i][t];
          for (std::size_t i = 0; i < C; ++i) Q[i][j] -= qt * Q[i][t];
        }
        if (M[t][j] != 0) clean = false;
      }
      if (clean) break;
      // Move the smallest remainder in row or column t onto the diagonal.
      std::size_t mi = t, mj = t;
      cpp_int m = abs(M[t][t]);
      for (std::size_t i = t + 1; i < R; ++i)
        if (M[i][t] != 0 && abs(M[i][t]) < m) {
          m = abs(M[i][t]);
          mi = i;
          mj = t;
        }
      for (std::size_t j = t + 1; j < C; ++j)
        if (M[t][j] != 0 && abs(M[t][j]) < m) {
          m = abs(M[t][j]);
          mi = t;
          mj = j;
        }
      if (mi != t) swapRows(t, mi);
      if (mj != t) swapCols(t, mj);
    }
    ++r;
  }

  for (std::size_t i = r; i < R; ++i)
    if (rhs[i] % L != 0) return std::nullopt;
  std::vector<Phase> y(C);
  for (std::size_t i = 0; i < r; ++i) {
    cpp_int den = cpp_int(L) * M[i][i];
    cpp_int num = rhs[i];
    if (den < 0) {
      den = -den;
      num = -num;
    }
    num %= den;
    y[i] = Phase::fromFraction(toInt64(num), toInt64(den));
  }
  TwistedCochain b(g.size(), k);
  for (std::size_t a = 0; a < C; ++a) {
    Phase s;
    for (std::size_t i = 0; i < r; ++i) {
      if (y[i].isIdentity() || Q[a][i] == 0) continue;
      cpp_int coef = Q[a][i] % y[i].den();
      s *= y[i].pow(toInt64(coef));
    }
    b[a] = s;
  }
  if (!(delta(g, b) == c)) throw std::logic_error("coboundary witness failed to reproduce the cochain");
  return b;
}

ObstructionClass obstruction_o3(const OrientifoldGroup& g, const TwistedCochain& u) {
  if (u.degree() != 3) throw SemanticError("o3 expects a 3-cochain");
  if (!is_cocycle(g, u)) throw SemanticError("o3 input is not closed");
  ObstructionClass out{false, std::nullopt, u};
  out.trivialization = is_coboundary(g, u);
  out.vanishes = out.trivialization.has_value();
  return out;
}

}  // namespace ohol
