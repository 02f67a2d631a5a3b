#include "ohol/descent.hpp"

#include <algorithm>
#include <map>

#include "ohol/cohomology.hpp"

namespace ohol {

void check_cover(const OrientifoldGroup& g, const IndexCover& c) {
  check_action(g, c.indices);
  check_action(g, c.base);
  if (static_cast<int>(c.projection.size()) != c.indices.size) throw SemanticError("projection has wrong size");
  for (int i = 0; i < c.indices.size; ++i) {
    if (c.projection[i] < 0 || c.projection[i] >= c.base.size) throw SemanticError("projection leaves the base");
    for (int gamma = 0; gamma < g.size(); ++gamma)
      if (c.projection[c.indices.apply(gamma, i)] != c.base.apply(gamma, c.projection[i]))
        throw SemanticError("projection is not equivariant");
  }
  if (!kernel_acts_freely(g, c.base)) throw SemanticError("ker(epsilon) does not act freely on the base");
}

FlatEquivariantDatum::FlatEquivariantDatum(OrientifoldGroup group, IndexCover cover, int rank, bool withModule)
    : group_(std::move(group)), cover_(std::move(cover)), rank_(rank) {
  check_cover(group_, cover_);
  if (rank_ < 1) throw SemanticError("rank must be positive");
  if (rank_ > 1 && !withModule) throw SemanticError("rank above one needs a module layer");
  const std::size_t n = cover_.indices.size, G = group_.size();
  g_.assign(n * n * n, Phase());
  chi_.assign(G * n * n, Phase());
  f_.assign(G * G * n, Phase());
  if (withModule)
    module_ = FlatModule{std::vector<ModuleElement>(n * n, ModuleElement::identity(rank_)),
                         std::vector<ModuleElement>(G * n, ModuleElement::identity(rank_))};
}

namespace {

bool sameAction(const IndexAction& a, const IndexAction& b) { return a.size == b.size && a.act == b.act; }

bool sameModules(const std::vector<ModuleElement>& a, const std::vector<ModuleElement>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].near(b[i], 0.0)) return false;
  return true;
}

}  // namespace

bool operator==(const FlatEquivariantDatum& a, const FlatEquivariantDatum& b) {
  if (a.group_.table() != b.group_.table() || a.group_.epsilons() != b.group_.epsilons()) return false;
  if (!sameAction(a.cover_.indices, b.cover_.indices) || !sameAction(a.cover_.base, b.cover_.base) ||
      a.cover_.projection != b.cover_.projection)
    return false;
  if (a.rank_ != b.rank_ || a.g_ != b.g_ || a.chi_ != b.chi_ || a.f_ != b.f_) return false;
  if (a.module_.has_value() != b.module_.has_value()) return false;
  return !a.module_ || (sameModules(a.module_->G, b.module_->G) && sameModules(a.module_->H, b.module_->H));
}

namespace {

// gamma acting on a module element through epsilon.
ModuleElement twisted(const OrientifoldGroup& g, int gamma, const ModuleElement& m) {
  return g.epsilon(gamma) < 0 ? m.conj() : m;
}

Phase twisted(const OrientifoldGroup& g, int gamma, const Phase& p) { return twisted_action_on_phase(g, gamma, p); }

}  // namespace

std::vector<Violation> validate_flat(const FlatEquivariantDatum& d, ValidationOptions opt) {
  std::vector<Violation> out;
  const auto& G = d.group();
  const auto& act = d.cover().indices;
  const int n = d.numIndices(), N = G.size(), one = G.identity();
  auto report = [&](const char* rel, std::vector<int> idx) {
    out.push_back({rel, "index " + std::to_string(idx.empty() ? 0 : idx.back()), std::move(idx)});
  };
  auto back = [&](int gamma, int i) { return act.apply(G.inv(gamma), i); };

  for (int gamma = 0; gamma < N; ++gamma)
    for (int i = 0; i < n; ++i) {
      if (gamma == one)
        for (int j = 0; j < n; ++j)
          if (!d.chi(one, i, j).isIdentity()) report("N", {gamma, i, j});
      for (int g2 = 0; g2 < N; ++g2)
        if ((gamma == one || g2 == one) && !d.f(gamma, g2, i).isIdentity()) report("N", {gamma, g2, i});
    }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!d.samePoint(i, j)) continue;
      for (int l = 0; l < n; ++l) {
        if (!d.samePoint(i, l)) continue;
        for (int m = 0; m < n; ++m)
          if (d.samePoint(i, m) && d.g(i, j, l) * d.g(j, m, l) != d.g(i, m, l) * d.g(i, j, m)) report("E3", {i, j, m, l});
        for (int gamma = 0; gamma < N; ++gamma) {
          Phase lhs = twisted(G, gamma, d.g(back(gamma, i), back(gamma, j), back(gamma, l))) / d.g(i, j, l);
          Phase rhs = d.chi(gamma, i, l) / d.chi(gamma, i, j) / d.chi(gamma, j, l);
          if (lhs != rhs) report("E12", {gamma, i, j, l});
        }
      }
    }

  for (int g1 = 0; g1 < N; ++g1)
    for (int g2 = 0; g2 < N; ++g2) {
      const int g12 = G.mul(g1, g2);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (!d.samePoint(i, j)) continue;
          Phase lhs = twisted(G, g1, d.chi(g2, back(g1, i), back(g1, j))) / d.chi(g12, i, j) * d.chi(g1, i, j);
          if (lhs != d.f(g1, g2, j) / d.f(g1, g2, i)) report("E15", {g1, g2, i, j});
        }
        for (int g3 = 0; g3 < N; ++g3) {
          Phase lhs = twisted(G, g1, d.f(g2, g3, back(g1, i))) / d.f(g12, g3, i) * d.f(g1, G.mul(g2, g3), i) / d.f(g1, g2, i);
          if (!lhs.isIdentity()) report("E13", {g1, g2, g3, i});
        }
      }
    }

  if (d.hasModule()) {
    auto near = [&](const ModuleElement& a, const ModuleElement& b) { return a.near(b, opt.tolerance); };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (!d.samePoint(i, j)) continue;
        for (int l = 0; l < n; ++l)
          if (d.samePoint(i, l) && !near(d.G(i, j) * d.G(j, l), d.G(i, l).scaled(d.g(i, j, l)))) report("M1", {i, j, l});
        for (int gamma = 0; gamma < N; ++gamma) {
          ModuleElement rhs = (d.H(gamma, i).inv() * d.G(i, j) * d.H(gamma, j)).scaled(d.chi(gamma, i, j).inv());
          if (!near(twisted(G, gamma, d.G(back(gamma, i), back(gamma, j))), rhs)) report("M2", {gamma, i, j});
        }
      }
    for (int g1 = 0; g1 < N; ++g1)
      for (int g2 = 0; g2 < N; ++g2)
        for (int i = 0; i < n; ++i) {
          ModuleElement rhs = (d.H(g1, i) * twisted(G, g1, d.H(g2, back(g1, i)))).scaled(d.f(g1, g2, i).inv());
          if (!near(d.H(G.mul(g1, g2), i), rhs)) report("M3", {g1, g2, i});
        }
  }
  return out;
}

FlatGauge identity_flat_gauge(const FlatEquivariantDatum& d) {
  const std::size_t n = d.numIndices();
  FlatGauge out{std::vector<Phase>(n * n), std::vector<Phase>(d.group().size() * n), std::nullopt};
  if (d.hasModule()) out.U = std::vector<ModuleElement>(n, ModuleElement::identity(d.rank()));
  return out;
}

FlatGauge random_flat_gauge(const FlatEquivariantDatum& d, std::mt19937_64& rng) {
  FlatGauge out = identity_flat_gauge(d);
  const int n = d.numIndices();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (d.samePoint(i, j)) {
        out.u[i * n + j] = random_phase(rng);
        out.u[j * n + i] = out.u[i * n + j].inv();
      }
  for (int gamma = 0; gamma < d.group().size(); ++gamma)
    if (gamma != d.group().identity())
      for (int i = 0; i < n; ++i) out.h[gamma * n + i] = random_phase(rng);
  if (out.U)
    for (auto& x : *out.U)
      x = d.rank() == 1 ? ModuleElement(random_phase(rng)) : ModuleElement(Unitary::random(d.rank(), rng));
  return out;
}

FlatEquivariantDatum apply_flat_gauge(const FlatEquivariantDatum& d, const FlatGauge& gauge) {
  FlatEquivariantDatum out = d;
  const auto& G = d.group();
  const auto& act = d.cover().indices;
  const int n = d.numIndices(), N = G.size();
  if (d.hasModule() != gauge.U.has_value()) throw SemanticError("gauge and datum disagree on the module layer");
  auto u = [&](int i, int j) { return gauge.u[i * n + j]; };
  auto h = [&](int gamma, int i) { return gauge.h[gamma * n + i]; };
  auto back = [&](int gamma, int i) { return act.apply(G.inv(gamma), i); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!d.samePoint(i, j)) continue;
      for (int l = 0; l < n; ++l)
        if (d.samePoint(i, l)) out.g(i, j, l) = d.g(i, j, l) / (u(i, j) / u(i, l) * u(j, l));
      for (int gamma = 0; gamma < N; ++gamma)
        out.chi(gamma, i, j) = d.chi(gamma, i, j) * twisted(G, gamma, u(back(gamma, i), back(gamma, j))) / u(i, j) *
                               h(gamma, i) / h(gamma, j);
      if (d.hasModule()) out.G(i, j) = ((*gauge.U)[i].inv() * d.G(i, j) * (*gauge.U)[j]).scaled(u(i, j).inv());
    }
  for (int g1 = 0; g1 < N; ++g1)
    for (int i = 0; i < n; ++i) {
      for (int g2 = 0; g2 < N; ++g2)
        out.f(g1, g2, i) = d.f(g1, g2, i) / (twisted(G, g1, h(g2, back(g1, i))) / h(G.mul(g1, g2), i) * h(g1, i));
      if (d.hasModule())
        out.H(g1, i) = ((*gauge.U)[i].inv() * d.H(g1, i) * twisted(G, g1, (*gauge.U)[back(g1, i)])).scaled(h(g1, i).inv());
    }
  return out;
}

FlatEquivariantDatum random_flat_datum(const OrientifoldGroup& group, const IndexCover& cover, std::uint64_t seed,
                                       int rank, bool withModule) {
  std::mt19937_64 rng(seed);
  FlatEquivariantDatum d(group, cover, rank, withModule);
  if (!withModule) {
    const CohomologyGroup h2 = cohomology(group, 2);
    TwistedCochain omega(group.size(), 2);
    for (std::size_t s = 0; s < h2.invariantFactors.size(); ++s) {
      const auto m = std::uniform_int_distribution<std::int64_t>(0, h2.invariantFactors[s] - 1)(rng);
      TwistedCochain part = h2.representatives[s];
      for (std::size_t x = 0; x < part.size(); ++x) part[x] = part[x].pow(m);
      omega = omega + part;
    }
    for (int g1 = 0; g1 < group.size(); ++g1)
      for (int g2 = 0; g2 < group.size(); ++g2)
        for (int i = 0; i < d.numIndices(); ++i) d.f(g1, g2, i) = omega.at({g1, g2});
  }
  return apply_flat_gauge(d, random_flat_gauge(d, rng));
}

IndexCover regular_cover(const OrientifoldGroup& group, int copies) {
  IndexCover c;
  c.base = regular_action(group);
  const int N = group.size();
  c.indices.size = N * copies;
  c.indices.act.assign(N, std::vector<int>(N * copies));
  for (int gamma = 0; gamma < N; ++gamma)
    for (int x = 0; x < N; ++x)
      for (int s = 0; s < copies; ++s) c.indices.act[gamma][x * copies + s] = group.mul(gamma, x) * copies + s;
  for (int x = 0; x < N; ++x)
    for (int s = 0; s < copies; ++s) c.projection.push_back(x);
  return c;
}

namespace {

// Orbits of ker(epsilon) numbered by least element.
std::vector<int> kernelOrbits(const OrientifoldGroup& g, const IndexAction& a) {
  std::vector<int> cls(a.size, -1);
  int next = 0;
  for (int i = 0; i < a.size; ++i) {
    if (cls[i] >= 0) continue;
    for (int gamma : g.kernel()) cls[a.apply(gamma, i)] = next;
    ++next;
  }
  return cls;
}

int anyOdd(const OrientifoldGroup& g) {
  for (int gamma = 0; gamma < g.size(); ++gamma)
    if (g.epsilon(gamma) < 0) return gamma;
  return -1;
}

}  // namespace

QuotientMap quotient_map(const FlatEquivariantDatum& d) {
  const auto& G = d.group();
  const auto& cover = d.cover();
  QuotientMap q;
  q.indexClass = kernelOrbits(G, cover.indices);
  q.baseClass = kernelOrbits(G, cover.base);
  const int nI = *std::max_element(q.indexClass.begin(), q.indexClass.end()) + 1;
  const int nX = *std::max_element(q.baseClass.begin(), q.baseClass.end()) + 1;
  std::vector<int> rho(nX, -1);
  for (int x = 0; x < cover.base.size; ++x)
    if (rho[q.baseClass[x]] < 0) rho[q.baseClass[x]] = x;
  q.representative.assign(nI, -1);
  for (int i = 0; i < cover.indices.size; ++i)
    if (cover.projection[i] == rho[q.baseClass[cover.projection[i]]]) q.representative[q.indexClass[i]] = i;
  q.twist.assign(nX, G.identity());
  const int odd = anyOdd(G);
  if (odd >= 0)
    for (int xp = 0; xp < nX; ++xp) {
      const int target = rho[q.baseClass[cover.base.apply(odd, rho[xp])]];
      for (int gamma = 0; gamma < G.size(); ++gamma)
        if (G.epsilon(gamma) < 0 && cover.base.apply(G.inv(gamma), rho[xp]) == target) q.twist[xp] = gamma;
    }
  return q;
}

namespace {

IndexAction quotientAction(const OrientifoldGroup& G, const OrientifoldGroup& Gq, const IndexAction& a,
                           const std::vector<int>& cls) {
  const int n = *std::max_element(cls.begin(), cls.end()) + 1;
  IndexAction out;
  out.size = n;
  out.act.assign(Gq.size(), std::vector<int>(n));
  const int odd = anyOdd(G);
  for (int i = 0; i < a.size; ++i) {
    out.act[Gq.identity()][cls[i]] = cls[i];
    if (Gq.size() == 2) out.act[1 - Gq.identity()][cls[i]] = cls[a.apply(odd, i)];
  }
  return out;
}

}  // namespace

FlatEquivariantDatum quotient(const FlatEquivariantDatum& d) {
  const auto& G = d.group();
  const QuotientMap q = quotient_map(d);
  const OrientifoldGroup Gq = G.epsilonTrivial() ? trivial_group() : jandl_group();
  const int k = Gq.size() == 2 ? 1 - Gq.identity() : -1;
  IndexCover qc;
  qc.indices = quotientAction(G, Gq, d.cover().indices, q.indexClass);
  qc.base = quotientAction(G, Gq, d.cover().base, q.baseClass);
  const int n = qc.indices.size;
  qc.projection.resize(n);
  for (int a = 0; a < n; ++a) qc.projection[a] = q.baseClass[d.cover().projection[q.representative[a]]];
  FlatEquivariantDatum out(Gq, qc, d.rank(), d.hasModule());
  const auto& r = q.representative;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!out.samePoint(a, b)) continue;
      for (int c = 0; c < n; ++c)
        if (out.samePoint(a, c)) out.g(a, b, c) = d.g(r[a], r[b], r[c]);
      if (k >= 0) out.chi(k, a, b) = d.chi(q.twist[qc.projection[a]], r[a], r[b]);
    }
  if (k >= 0)
    for (int a = 0; a < n; ++a) {
      const int gamma = q.twist[qc.projection[a]];
      out.f(k, k, a) = d.f(gamma, G.inv(gamma), r[a]);
    }
  if (d.hasModule()) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b)
        if (out.samePoint(a, b)) out.G(a, b) = d.G(r[a], r[b]);
      if (k >= 0) out.H(k, a) = d.H(q.twist[qc.projection[a]], r[a]);
    }
  }
  return out;
}

FlatModule quotient_module(const FlatEquivariantDatum& d) {
  if (!d.hasModule()) throw SemanticError("datum carries no module layer");
  FlatEquivariantDatum q = quotient(d);
  FlatModule m;
  const int n = q.numIndices();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m.G.push_back(q.G(a, b));
  for (int gamma = 0; gamma < q.group().size(); ++gamma)
    for (int a = 0; a < n; ++a) m.H.push_back(q.H(gamma, a));
  return m;
}

FlatGauge induced_gauge(const FlatEquivariantDatum& d, const FlatGauge& gauge) {
  const QuotientMap q = quotient_map(d);
  const int N = d.numIndices();
  const int n = static_cast<int>(q.representative.size());
  const bool jandl = !d.group().epsilonTrivial();
  FlatGauge out;
  out.u.assign(n * n, Phase());
  out.h.assign((jandl ? 2 : 1) * n, Phase());
  const auto& r = q.representative;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) out.u[a * n + b] = gauge.u[r[a] * N + r[b]];
    if (jandl) out.h[n + a] = gauge.h[q.twist[q.baseClass[d.cover().projection[r[a]]]] * N + r[a]];
  }
  if (gauge.U) {
    out.U.emplace();
    for (int a = 0; a < n; ++a) out.U->push_back((*gauge.U)[r[a]]);
  }
  return out;
}

BaseLift lift_base(const OrientifoldGroup& group, const FlatEquivariantDatum& qd) {
  const auto& qbase = qd.cover().base;
  const int nX = qbase.size;
  const bool jandl = qd.group().size() == 2;
  if (jandl == group.epsilonTrivial()) throw SemanticError("quotient group does not match the sign character");
  const int k = jandl ? 1 - qd.group().identity() : -1;
  const auto kernel = group.kernel();
  std::vector<int> odd;
  for (int gamma = 0; gamma < group.size(); ++gamma)
    if (group.epsilon(gamma) < 0) odd.push_back(gamma);
  int involution = -1;
  for (int t : odd)
    if (group.mul(t, t) == group.identity()) {
      involution = t;
      break;
    }

  // Each point is (orbit, label) where label is a group element standing
  // for label . base point of the orbit.
  struct Point {
    int orbit;
    int label;
  };
  std::vector<Point> pts;
  std::vector<int> orbitOf(nX, -1);
  std::vector<bool> orbitFixed;
  BaseLift out;
  auto cosetRep = [&](int gamma) { return std::min(gamma, group.mul(gamma, involution)); };
  for (int xp = 0; xp < nX; ++xp) {
    const int partner = k >= 0 ? qbase.apply(k, xp) : xp;
    if (orbitOf[xp] < 0) {
      orbitOf[xp] = orbitOf[partner] = static_cast<int>(orbitFixed.size());
      orbitFixed.push_back(jandl && partner == xp);
    }
    const int o = orbitOf[xp];
    std::vector<int> labels;
    if (orbitFixed[o]) {
      if (involution < 0) throw SemanticError("no involution with epsilon = -1 to lift a fixed point");
      for (int gamma = 0; gamma < group.size(); ++gamma)
        if (cosetRep(gamma) == gamma) labels.push_back(gamma);
    } else {
      labels = (xp <= partner) ? kernel : odd;
    }
    for (int l : labels) {
      pts.push_back({o, l});
      out.toQuotient.push_back(xp);
    }
  }
  std::map<std::pair<int, int>, int> index;
  for (std::size_t p = 0; p < pts.size(); ++p) index[{pts[p].orbit, pts[p].label}] = static_cast<int>(p);
  out.base.size = static_cast<int>(pts.size());
  out.base.act.assign(group.size(), std::vector<int>(pts.size()));
  for (int gamma = 0; gamma < group.size(); ++gamma)
    for (std::size_t p = 0; p < pts.size(); ++p) {
      int label = group.mul(gamma, pts[p].label);
      if (orbitFixed[pts[p].orbit]) label = cosetRep(label);
      out.base.act[gamma][p] = index.at({pts[p].orbit, label});
    }
  return out;
}

FlatEquivariantDatum canonical_pullback(const FlatEquivariantDatum& qd, const OrientifoldGroup& group,
                                        const BaseLift& lift) {
  const bool jandl = qd.group().size() == 2;
  if (jandl == group.epsilonTrivial()) throw SemanticError("quotient group does not match the sign character");
  const int k = jandl ? 1 - qd.group().identity() : -1;
  check_action(group, lift.base);
  if (!kernel_acts_freely(group, lift.base)) throw SemanticError("ker(epsilon) does not act freely on the lifted base");
  const auto& qcov = qd.cover();
  if (static_cast<int>(lift.toQuotient.size()) != lift.base.size) throw SemanticError("base map has wrong size");
  // The base map must be the quotient by ker(epsilon), with the numbering
  // of classes by least element.
  const std::vector<int> cls = kernelOrbits(group, lift.base);
  for (int x = 0; x < lift.base.size; ++x) {
    if (cls[x] != lift.toQuotient[x]) throw SemanticError("base map is not the quotient by ker(epsilon)");
    for (int gamma = 0; gamma < group.size(); ++gamma) {
      const int img = lift.toQuotient[lift.base.apply(gamma, x)];
      const int want = group.epsilon(gamma) < 0 ? qcov.base.apply(k, lift.toQuotient[x]) : lift.toQuotient[x];
      if (img != want) throw SemanticError("base map is not equivariant");
    }
  }
  if (*std::max_element(cls.begin(), cls.end()) + 1 != qcov.base.size) throw SemanticError("base map is not onto");

  IndexCover cover;
  cover.base = lift.base;
  std::vector<std::pair<int, int>> pairs;  // (a, x) in lexicographic order
  for (int a = 0; a < qcov.indices.size; ++a)
    for (int x = 0; x < lift.base.size; ++x)
      if (lift.toQuotient[x] == qcov.projection[a]) pairs.push_back({a, x});
  std::map<std::pair<int, int>, int> index;
  for (std::size_t p = 0; p < pairs.size(); ++p) index[pairs[p]] = static_cast<int>(p);
  cover.indices.size = static_cast<int>(pairs.size());
  cover.indices.act.assign(group.size(), std::vector<int>(pairs.size()));
  for (int gamma = 0; gamma < group.size(); ++gamma)
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      auto [a, x] = pairs[p];
      const int na = group.epsilon(gamma) < 0 ? qcov.indices.apply(k, a) : a;
      cover.indices.act[gamma][p] = index.at({na, lift.base.apply(gamma, x)});
    }
  for (auto [a, x] : pairs) cover.projection.push_back(x);

  FlatEquivariantDatum out(group, cover, qd.rank(), qd.hasModule());
  const int n = cover.indices.size;
  auto cl = [&](int i) { return pairs[i].first; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!out.samePoint(i, j)) continue;
      for (int l = 0; l < n; ++l)
        if (out.samePoint(i, l)) out.g(i, j, l) = qd.g(cl(i), cl(j), cl(l));
      for (int gamma = 0; gamma < group.size(); ++gamma)
        if (group.epsilon(gamma) < 0) out.chi(gamma, i, j) = qd.chi(k, cl(i), cl(j));
      if (qd.hasModule()) out.G(i, j) = qd.G(cl(i), cl(j));
    }
  for (int i = 0; i < n; ++i)
    for (int g1 = 0; g1 < group.size(); ++g1) {
      if (group.epsilon(g1) > 0) continue;
      if (qd.hasModule()) out.H(g1, i) = qd.H(k, cl(i));
      for (int g2 = 0; g2 < group.size(); ++g2)
        if (group.epsilon(g2) < 0) out.f(g1, g2, i) = qd.f(k, k, cl(i));
    }
  return out;
}

}  // namespace ohol
