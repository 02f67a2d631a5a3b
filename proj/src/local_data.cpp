#include "ohol/local_data.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ohol {

int OrientifoldDatum::pos(const std::vector<int>& set, int i) const {
  auto it = std::lower_bound(set.begin(), set.end(), i);
  if (it == set.end() || *it != i) throw SemanticError("index " + std::to_string(i) + " is not admissible here");
  return static_cast<int>(it - set.begin());
}

int OrientifoldDatum::pairIndex(const std::vector<int>& set, int i, int j) const {
  const int s = static_cast<int>(set.size());
  return pos(set, i) * s + pos(set, j);
}

int OrientifoldDatum::tripleIndex(const std::vector<int>& set, int i, int j, int l) const {
  const int s = static_cast<int>(set.size());
  return (pos(set, i) * s + pos(set, j)) * s + pos(set, l);
}

namespace {

std::size_t power(std::size_t s, int r) {
  std::size_t out = 1;
  while (r-- > 0) out *= s;
  return out;
}

bool boundaryLiftedEdge(const DoubleCover& dc, int le) { return dc.isBoundaryEdge(project(le)); }
bool boundaryLiftedVertex(const DoubleCover& dc, int lv) { return dc.isBoundaryVertex(project(lv)); }

}  // namespace

void check_shape(const OrientifoldDatum& d, const DoubleCover& dc) {
  if (d.rank < 1) throw SemanticError("malformed datum: rank must be positive");
  check_admissibility(dc, d.adm);
  auto table = [&](const auto& t, const std::vector<std::vector<int>>& fam, int arity, const char* name) {
    if (t.size() != fam.size()) throw SemanticError(std::string("malformed datum: ") + name + " has wrong cell count");
    for (std::size_t x = 0; x < fam.size(); ++x)
      if (t[x].size() != power(fam[x].size(), arity))
        throw SemanticError(std::string("malformed datum: ") + name + " is missing entries on cell " + std::to_string(x));
  };
  table(d.faceB, d.adm.face, 1, "faceB");
  table(d.edgeA, d.adm.edge, 2, "edgeA");
  table(d.gV, d.adm.vertex, 3, "gV");
  table(d.edgePi, d.adm.edge, 1, "edgePi");
  table(d.chiV, d.adm.vertex, 2, "chiV");
  table(d.fV, d.adm.vertex, 1, "fV");
  auto module = [&](const auto& t, const std::vector<std::vector<int>>& fam, int arity, auto onBoundary, const char* name) {
    if (t.size() != fam.size()) throw SemanticError(std::string("malformed datum: ") + name + " has wrong cell count");
    for (std::size_t x = 0; x < fam.size(); ++x) {
      const std::size_t want = onBoundary(static_cast<int>(x)) ? power(fam[x].size(), arity) : 0;
      if (t[x].size() != want)
        throw SemanticError(std::string("malformed datum: ") + name + " has wrong entries on cell " + std::to_string(x));
      for (const auto& m : t[x])
        if (m.rank() != d.rank) throw SemanticError(std::string("malformed datum: ") + name + " rank mismatch");
    }
  };
  module(d.edgeT, d.adm.edge, 1, [&](int x) { return boundaryLiftedEdge(dc, x); }, "edgeT");
  module(d.GV, d.adm.vertex, 2, [&](int x) { return boundaryLiftedVertex(dc, x); }, "GV");
  module(d.HV, d.adm.vertex, 1, [&](int x) { return boundaryLiftedVertex(dc, x); }, "HV");
}

std::vector<Violation> validate(const OrientifoldDatum& d, const DoubleCover& dc, ValidationOptions opt) {
  check_shape(d, dc);
  std::vector<Violation> out;
  auto report = [&](const char* rel, const char* kind, int cell, std::vector<int> idx) {
    out.push_back({rel, std::string(kind) + " " + std::to_string(cell), std::move(idx)});
  };
  const auto& k = d.adm.k;
  auto near = [&](const ModuleElement& x, const ModuleElement& y) { return x.near(y, opt.tolerance); };

  for (int t = 0; t < 2 * dc.numFaces(); ++t) {
    const auto bd = dc.faceBoundary(t);
    for (int i : d.adm.face[t]) {
      for (int j : d.adm.face[t]) {
        Phase lhs;
        for (const auto& oe : bd) lhs *= d.a(oe, i, j);
        if (lhs != d.b(t, j) / d.b(t, i)) report("R1", "face", t, {i, j});
      }
      Phase flux;
      for (const auto& oe : bd) flux *= d.pi(oe, i);
      if (d.b(sigma(t), k[i]) / d.b(t, i) != flux) report("R4", "face", t, {i});
    }
  }

  for (int e = 0; e < 2 * dc.numEdges(); ++e) {
    const int s = dc.edgeStart(e), t = dc.edgeEnd(e);
    const auto& A = d.adm.edge[e];
    for (int i : A)
      for (int j : A) {
        if (d.a(e, j, i) != d.a(e, i, j).inv()) report("A", "edge", e, {i, j});
        for (int l : A)
          if (d.a(e, i, j) / d.a(e, i, l) * d.a(e, j, l) != d.g(s, i, j, l) / d.g(t, i, j, l)) report("R2", "edge", e, {i, j, l});
        Phase lhs = (d.a(sigma(e), k[i], k[j]) * d.a(e, i, j)).inv();
        Phase rhs = d.pi(e, j) / d.pi(e, i) * d.chi(t, i, j) / d.chi(s, i, j);
        if (lhs != rhs) report("R5", "edge", e, {i, j});
      }
    for (int i : A)
      if (d.pi(e, i) / d.pi(sigma(e), k[i]) != d.f(s, i) / d.f(t, i)) report("R7", "edge", e, {i});
    if (boundaryLiftedEdge(dc, e)) {
      for (int i : A) {
        ModuleElement rhs = (d.H(t, i).inv() * d.T(e, i) * d.H(s, i)).scaled(d.pi(e, i).inv());
        if (!near(d.T(sigma(e), k[i]).conj(), rhs)) report("R10", "edge", e, {i});
        for (int j : A) {
          ModuleElement tj = (d.G(t, i, j).inv() * d.T(e, i) * d.G(s, i, j)).scaled(d.a(e, i, j).inv());
          if (!near(d.T(e, j), tj)) report("R13", "edge", e, {i, j});
        }
      }
    }
  }

  for (int v = 0; v < 2 * dc.numVertices(); ++v) {
    const auto& A = d.adm.vertex[v];
    const bool bd = boundaryLiftedVertex(dc, v);
    for (int i : A) {
      if (d.f(sigma(v), k[i]) != d.f(v, i).inv()) report("R9", "vertex", v, {i});
      if (bd && !near(d.H(v, i) * d.H(sigma(v), k[i]).conj(), ModuleElement::scalar(d.rank, d.f(v, i))))
        report("R12", "vertex", v, {i});
      for (int j : A) {
        if (d.chi(v, j, i) != d.chi(v, i, j).inv()) report("A", "vertex", v, {i, j});
        if (d.chi(v, i, j) / d.chi(sigma(v), k[i], k[j]) != d.f(v, j) / d.f(v, i)) report("R8", "vertex", v, {i, j});
        if (bd) {
          ModuleElement rhs = (d.H(v, i).inv() * d.G(v, i, j) * d.H(v, j)).scaled(d.chi(v, i, j).inv());
          if (!near(d.G(sigma(v), k[i], k[j]).conj(), rhs)) report("R11", "vertex", v, {i, j});
        }
        for (int l : A) {
          const Phase g = d.g(v, i, j, l);
          if (d.g(v, j, i, l) != g.inv() || d.g(v, i, l, j) != g.inv()) report("A", "vertex", v, {i, j, l});
          Phase lhs = (d.g(sigma(v), k[i], k[j], k[l]) * g).inv();
          Phase rhs = d.chi(v, i, j).inv() * d.chi(v, i, l) / d.chi(v, j, l);
          if (lhs != rhs) report("R6", "vertex", v, {i, j, l});
          if (bd && !near(d.G(v, i, j) * d.G(v, j, l), d.G(v, i, l).scaled(g))) report("R13", "vertex", v, {i, j, l});
          for (int m : A)
            if (g * d.g(v, j, m, l) != d.g(v, i, m, l) * d.g(v, i, j, m)) report("R3", "vertex", v, {i, j, m, l});
        }
      }
    }
  }
  return out;
}

ValidatedDatum::ValidatedDatum(OrientifoldDatum d, const DoubleCover& dc, ValidationOptions opt) : d_(std::move(d)) {
  auto report = validate(d_, dc, opt);
  if (!report.empty())
    throw SemanticError("datum violates " + report.front().relation + " at " + report.front().cell);
}

Phase random_phase(std::mt19937_64& rng) {
  return Phase::fromFraction(std::uniform_int_distribution<std::int64_t>(0, kRandomDenominator - 1)(rng), kRandomDenominator);
}

namespace {

std::vector<std::vector<Phase>> zeros(const std::vector<std::vector<int>>& fam, int arity) {
  std::vector<std::vector<Phase>> out;
  for (const auto& s : fam) out.emplace_back(power(s.size(), arity));
  return out;
}

template <class Pred>
std::vector<std::vector<ModuleElement>> moduleTable(const std::vector<std::vector<int>>& fam, int arity, int rank, Pred onBoundary) {
  std::vector<std::vector<ModuleElement>> out(fam.size());
  for (std::size_t x = 0; x < fam.size(); ++x)
    if (onBoundary(static_cast<int>(x))) out[x].assign(power(fam[x].size(), arity), ModuleElement::identity(rank));
  return out;
}

ModuleElement randomModule(int rank, std::mt19937_64& rng) {
  if (rank == 1) return ModuleElement(random_phase(rng));
  return ModuleElement(Unitary::random(rank, rng));
}

}  // namespace

OrientifoldDatum identity_datum(const DoubleCover& dc, const Admissibility& adm, int rank) {
  check_admissibility(dc, adm);
  OrientifoldDatum d;
  d.rank = rank;
  d.adm = adm;
  d.faceB = zeros(adm.face, 1);
  d.edgeA = zeros(adm.edge, 2);
  d.gV = zeros(adm.vertex, 3);
  d.edgePi = zeros(adm.edge, 1);
  d.chiV = zeros(adm.vertex, 2);
  d.fV = zeros(adm.vertex, 1);
  auto be = [&](int x) { return boundaryLiftedEdge(dc, x); };
  auto bv = [&](int x) { return boundaryLiftedVertex(dc, x); };
  d.edgeT = moduleTable(adm.edge, 1, rank, be);
  d.GV = moduleTable(adm.vertex, 2, rank, bv);
  d.HV = moduleTable(adm.vertex, 1, rank, bv);
  return d;
}

GaugeDatum identity_gauge(const OrientifoldDatum& d, const DoubleCover& dc) {
  GaugeDatum g;
  g.edgeW = zeros(d.adm.edge, 1);
  g.uV = zeros(d.adm.vertex, 2);
  g.hV = zeros(d.adm.vertex, 1);
  g.moduleU = moduleTable(d.adm.vertex, 1, d.rank, [&](int x) { return boundaryLiftedVertex(dc, x); });
  return g;
}

GaugeDatum random_gauge(const OrientifoldDatum& d, const DoubleCover& dc, std::mt19937_64& rng) {
  GaugeDatum g = identity_gauge(d, dc);
  for (auto& row : g.edgeW)
    for (auto& x : row) x = random_phase(rng);
  for (std::size_t v = 0; v < g.uV.size(); ++v) {
    const std::size_t s = d.adm.vertex[v].size();
    for (std::size_t p = 0; p < s; ++p)
      for (std::size_t q = p + 1; q < s; ++q) {
        g.uV[v][p * s + q] = random_phase(rng);
        g.uV[v][q * s + p] = g.uV[v][p * s + q].inv();
      }
  }
  for (auto& row : g.hV)
    for (auto& x : row) x = random_phase(rng);
  for (auto& row : g.moduleU)
    for (auto& x : row) x = randomModule(d.rank, rng);
  return g;
}

GaugeDatum compose(const GaugeDatum& a, const GaugeDatum& b) {
  GaugeDatum out = a;
  auto add = [](auto& x, const auto& y) {
    for (std::size_t c = 0; c < x.size(); ++c)
      for (std::size_t i = 0; i < x[c].size(); ++i) x[c][i] = x[c][i] * y[c][i];
  };
  add(out.edgeW, b.edgeW);
  add(out.uV, b.uV);
  add(out.hV, b.hV);
  add(out.moduleU, b.moduleU);
  return out;
}

OrientifoldDatum apply_gauge(const OrientifoldDatum& d, const DoubleCover& dc, const GaugeDatum& gauge) {
  check_shape(d, dc);
  OrientifoldDatum out = d;
  const auto& adm = d.adm;
  const auto& k = adm.k;
  auto w = [&](int e, int i) { return gauge.edgeW[e][d.pos(adm.edge[e], i)]; };
  auto u = [&](int v, int i, int j) { return gauge.uV[v][d.pairIndex(adm.vertex[v], i, j)]; };
  auto h = [&](int v, int i) { return gauge.hV[v][d.pos(adm.vertex[v], i)]; };
  auto U = [&](int v, int i) -> const ModuleElement& { return gauge.moduleU[v][d.pos(adm.vertex[v], i)]; };

  for (int t = 0; t < 2 * dc.numFaces(); ++t)
    for (int i : adm.face[t]) {
      Phase shift;
      for (const auto& oe : dc.faceBoundary(t)) shift *= oe.dir > 0 ? w(oe.edge, i) : w(oe.edge, i).inv();
      out.faceB[t][d.pos(adm.face[t], i)] = d.b(t, i) * shift;
    }
  for (int e = 0; e < 2 * dc.numEdges(); ++e) {
    const int s = dc.edgeStart(e), t = dc.edgeEnd(e);
    for (int i : adm.edge[e]) {
      for (int j : adm.edge[e])
        out.edgeA[e][d.pairIndex(adm.edge[e], i, j)] = d.a(e, i, j) * u(t, i, j) / u(s, i, j) * w(e, j) / w(e, i);
      out.edgePi[e][d.pos(adm.edge[e], i)] = d.pi(e, i) / w(sigma(e), k[i]) / w(e, i) * h(t, i) / h(s, i);
      if (boundaryLiftedEdge(dc, e))
        out.edgeT[e][d.pos(adm.edge[e], i)] = (U(t, i).inv() * d.T(e, i) * U(s, i)).scaled(w(e, i).inv());
    }
  }
  for (int v = 0; v < 2 * dc.numVertices(); ++v) {
    const auto& A = adm.vertex[v];
    const bool bd = boundaryLiftedVertex(dc, v);
    for (int i : A) {
      out.fV[v][d.pos(A, i)] = d.f(v, i) / h(v, i) * h(sigma(v), k[i]);
      if (bd) out.HV[v][d.pos(A, i)] = (U(v, i).inv() * d.H(v, i) * U(sigma(v), k[i]).conj()).scaled(h(v, i).inv());
      for (int j : A) {
        out.chiV[v][d.pairIndex(A, i, j)] = d.chi(v, i, j) / u(sigma(v), k[i], k[j]) / u(v, i, j) * h(v, i) / h(v, j);
        if (bd) out.GV[v][d.pairIndex(A, i, j)] = (U(v, i).inv() * d.G(v, i, j) * U(v, j)).scaled(u(v, i, j).inv());
        for (int l : A) out.gV[v][d.tripleIndex(A, i, j, l)] = d.g(v, i, j, l) / (u(v, i, j) / u(v, i, l) * u(v, j, l));
      }
    }
  }
  return out;
}

Admissibility random_admissibility(const DoubleCover& dc, const IndexOptions& opt, std::mt19937_64& rng) {
  Admissibility adm;
  adm.numIndices = 2 * opt.pairs + opt.fixed;
  if (adm.numIndices <= 0) throw SemanticError("empty index set");
  for (int i = 0; i < adm.numIndices; ++i) adm.k.push_back(i < 2 * opt.pairs ? (i ^ 1) : i);
  std::uniform_int_distribution<int> pick(0, adm.numIndices - 1);
  std::uniform_int_distribution<int> extraCount(0, std::max(0, opt.maxExtra));
  auto finish = [&](std::set<int> s, std::vector<std::vector<int>>& fam, int cell) {
    for (int n = extraCount(rng); n > 0; --n) s.insert(pick(rng));
    fam[2 * cell].assign(s.begin(), s.end());
    std::vector<int> img;
    for (int i : s) img.push_back(adm.k[i]);
    std::sort(img.begin(), img.end());
    fam[2 * cell + 1] = img;
  };
  adm.face.assign(2 * dc.numFaces(), {});
  adm.edge.assign(2 * dc.numEdges(), {});
  adm.vertex.assign(2 * dc.numVertices(), {});
  for (int f = 0; f < dc.numFaces(); ++f) finish({pick(rng)}, adm.face, f);
  for (int e = 0; e < dc.numEdges(); ++e) {
    std::set<int> s;
    for (auto [lf, dir] : dc.edgeFaces(2 * e)) s.insert(adm.face[lf].begin(), adm.face[lf].end());
    finish(s, adm.edge, e);
  }
  for (int v = 0; v < dc.numVertices(); ++v) {
    std::set<int> s;
    for (int le = 0; le < 2 * dc.numEdges(); ++le)
      if (dc.edgeStart(le) == 2 * v || dc.edgeEnd(le) == 2 * v) s.insert(adm.edge[le].begin(), adm.edge[le].end());
    finish(s, adm.vertex, v);
  }
  return adm;
}

namespace {

void requireJandl(const OrientifoldGroup& group) {
  if (group.size() != 2 || group.epsilonTrivial())
    throw SemanticError("surface data are defined for the Jandl group Z2 with epsilon(k) = -1");
}

Phase checkedTwist(std::optional<Phase> twist) {
  if (!twist) return Phase();
  if (twist->pow(2) != Phase()) throw SemanticError("twist " + twist->str() + " is not a 2-cocycle of Z2 with sign action");
  return *twist;
}

// Adds a constant twist to f, compensating the module layer: H picks up the
// twist on lift 1 of each vertex and transports on lift 1 of each boundary
// edge absorb the resulting endpoint mismatch.
void addTwist(OrientifoldDatum& d, const DoubleCover& dc, const Phase& a) {
  if (a.isIdentity()) return;
  auto hshift = [&](int v) { return (v & 1) ? a : Phase(); };
  for (int v = 0; v < 2 * dc.numVertices(); ++v) {
    for (auto& x : d.fV[v]) x *= a;
    for (auto& x : d.HV[v]) x = x.scaled(hshift(v));
  }
  for (int e = 0; e < dc.numEdges(); ++e) {
    if (!dc.isBoundaryEdge(e)) continue;
    const int base = 2 * e;
    Phase c = hshift(dc.edgeEnd(base)) / hshift(dc.edgeStart(base));
    for (auto& x : d.edgeT[sigma(base)]) x = x.scaled(c);
  }
}

}  // namespace

OrientifoldDatum generate_pure_gauge(const DoubleCover& dc, const OrientifoldGroup& group, std::uint64_t seed, int rank,
                                     std::optional<Phase> twist, IndexOptions idx) {
  requireJandl(group);
  const Phase a = checkedTwist(twist);
  std::mt19937_64 rng(seed);
  OrientifoldDatum d = identity_datum(dc, random_admissibility(dc, idx, rng), rank);
  addTwist(d, dc, a);
  return apply_gauge(d, dc, random_gauge(d, dc, rng));
}

OrientifoldDatum generate_background(const DoubleCover& dc, const OrientifoldGroup& group, std::uint64_t seed, int rank,
                                     std::optional<Phase> twist, IndexOptions idx) {
  requireJandl(group);
  const Phase a = checkedTwist(twist);
  std::mt19937_64 rng(seed);
  OrientifoldDatum d = identity_datum(dc, random_admissibility(dc, idx, rng), rank);
  for (int f = 0; f < dc.numFaces(); ++f) {
    Phase beta = random_phase(rng);
    for (auto& x : d.faceB[2 * f]) x = beta;
    for (auto& x : d.faceB[2 * f + 1]) x = beta;
  }
  for (int e = 0; e < dc.numEdges(); ++e) {
    if (!dc.isBoundaryEdge(e)) continue;
    ModuleElement W = randomModule(rank, rng);
    for (auto& x : d.edgeT[2 * e]) x = W;
    for (auto& x : d.edgeT[2 * e + 1]) x = W.conj();
  }
  addTwist(d, dc, a);
  return apply_gauge(d, dc, random_gauge(d, dc, rng));
}

Subdivision subdivide(const OrientifoldDatum& d, const DoubleCover& dc, int e, std::optional<std::uint64_t> seed) {
  if (e < 0 || e >= dc.numEdges()) throw SemanticError("subdivide: " + std::to_string(e) + " is not an edge");
  const auto sides = dc.edgeSides(e);
  if (sides.size() == 2 && sides[0].face == sides[1].face)
    throw SemanticError("subdivide: both sides of edge " + std::to_string(e) + " lie in one face");
  check_shape(d, dc);

  // Refined surface. Face f split at slot s becomes ta = (c0, m, c2) in place
  // of f and tb = (m, c1, c2) appended.
  const SurfaceSpec& old = dc.spec();
  SurfaceSpec spec = old;
  spec.model.clear();
  int m = 0;
  for (const auto& f : old.faces)
    for (int lab : f) m = std::max(m, lab + 1);
  std::map<int, int> splitSlot, tbOf;
  for (const FaceEdge& fe : sides) {
    const auto c = old.faces[fe.face];
    const int s = fe.slot;
    splitSlot[fe.face] = s;
    tbOf[fe.face] = static_cast<int>(spec.faces.size());
    spec.faces[fe.face] = {c[s], m, c[(s + 2) % 3]};
    spec.faces.push_back({m, c[(s + 1) % 3], c[(s + 2) % 3]});
  }
  auto mapSide = [&](FaceEdge fe) -> FaceEdge {
    auto it = splitSlot.find(fe.face);
    if (it == splitSlot.end()) return fe;
    const int s = it->second;
    if (fe.slot == (s + 1) % 3) return {tbOf[fe.face], 1};
    if (fe.slot == (s + 2) % 3) return {fe.face, 2};
    throw SemanticError("subdivide: internal side mapping error");
  };
  spec.identifications.clear();
  for (const auto& id : old.identifications) {
    const bool isE = dc.edgeOf(id.a) == e;
    if (!isE) {
      spec.identifications.push_back({mapSide(id.a), mapSide(id.b), id.reversing});
      continue;
    }
    const int fa = id.a.face, fb = id.b.face;
    if (id.reversing) {
      spec.identifications.push_back({{fa, 0}, {fb, 0}, true});
      spec.identifications.push_back({{tbOf[fa], 0}, {tbOf[fb], 0}, true});
    } else {
      spec.identifications.push_back({{fa, 0}, {tbOf[fb], 0}, false});
      spec.identifications.push_back({{tbOf[fa], 0}, {fb, 0}, false});
    }
  }
  for (const auto& [f, tb] : tbOf) spec.identifications.push_back({{f, 1}, {tb, 2}, false});
  if (old.boundary) {
    std::vector<FaceEdge> bd;
    for (const FaceEdge& fe : *old.boundary) {
      if (dc.edgeOf(fe) == e) {
        bd.push_back({fe.face, 0});
        bd.push_back({tbOf[fe.face], 0});
      } else {
        bd.push_back(mapSide(fe));
      }
    }
    std::sort(bd.begin(), bd.end());
    spec.boundary = bd;
  }
  DoubleCover nc = DoubleCover::build(spec);

  // Correspondence of cells. For every new lifted cell we record how to
  // obtain its data from the old datum.
  const int nF = nc.numFaces(), nE = nc.numEdges(), nV = nc.numVertices();
  std::vector<int> faceOrigin(2 * nF, -1);  // old lifted face
  std::vector<bool> faceIsTb(2 * nF, false);
  for (int f = 0; f < nF; ++f) {
    int origin = f;
    for (const auto& [of, tb] : tbOf)
      if (tb == f) {
        origin = of;
        faceIsTb[2 * f] = faceIsTb[2 * f + 1] = true;
      }
    faceOrigin[2 * f] = 2 * origin;
    faceOrigin[2 * f + 1] = 2 * origin + 1;
  }
  std::vector<int> vertexOrigin(2 * nV, -1);  // old lifted vertex supplying the data
  std::vector<int> vertexAdmEdge(2 * nV, -1);  // old lifted edge restricting adm for midpoints
  auto oldCornerOf = [&](int nf, int corner) -> int {  // old corner or -1 for the midpoint
    auto it = tbOf.begin();
    for (; it != tbOf.end(); ++it)
      if (it->second == nf) break;
    if (it != tbOf.end()) {
      const int s = splitSlot[it->first];
      return corner == 0 ? -1 : (corner == 1 ? (s + 1) % 3 : (s + 2) % 3);
    }
    auto jt = splitSlot.find(nf);
    if (jt != splitSlot.end()) {
      const int s = jt->second;
      return corner == 1 ? -1 : (corner == 0 ? s : (s + 2) % 3);
    }
    return corner;
  };
  auto oldFaceOf = [&](int nf) { return faceOrigin[2 * nf] / 2; };

  // Old oriented lift of a split side in its geometric direction c0 -> c1.
  auto splitSideLift = [&](int oldLf) {
    const int f = oldLf / 2;
    return dc.liftOfSide(oldLf, splitSlot.at(f));
  };
  auto geomSign = [](const OrientedEdge& oe, int lf) { return oe.dir * ((lf & 1) ? -1 : 1); };

  for (int nf = 0; nf < nF; ++nf)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 3; ++c) {
        const int nv = nc.liftedCorner(2 * nf + b, c);
        const int oc = oldCornerOf(nf, c);
        const int oldLf = 2 * oldFaceOf(nf) + b;
        if (oc >= 0) {
          vertexOrigin[nv] = dc.liftedCorner(oldLf, oc);
        } else {
          const OrientedEdge oe = splitSideLift(oldLf);
          vertexOrigin[nv] = dc.edgeStart(oe.edge);
          vertexAdmEdge[nv] = oe.edge;
        }
      }

  // Edge sources, in the geometric direction of a side of a new lifted face.
  enum class Kind { Old, Trivial, OldWhole, Diagonal };
  struct EdgeSource {
    Kind kind = Kind::Old;
    OrientedEdge old;        // Old / OldWhole: value = old^(old.dir) in geometric direction
    OrientedEdge half;       // Diagonal: half (m -> c1) part
    OrientedEdge next;       // Diagonal: old side c1 -> c2
    bool halfTrivial = false;
    int admFace = -1;        // old lifted face supplying adm of diagonals
    int admEdge = -1;        // old lifted edge supplying adm of halves
  };
  std::vector<EdgeSource> source(2 * nE);
  std::vector<int> sourceSign(2 * nE, 0);  // new canonical = geometric^(sign)
  for (int nf = 0; nf < nF; ++nf)
    for (int b = 0; b < 2; ++b) {
      const int nlf = 2 * nf + b;
      const int oldLf = 2 * oldFaceOf(nf) + b;
      for (int slot = 0; slot < 3; ++slot) {
        const OrientedEdge noe = nc.liftOfSide(nlf, slot);
        if (sourceSign[noe.edge] != 0) continue;
        EdgeSource src;
        const bool split = splitSlot.count(oldFaceOf(nf)) > 0;
        if (!split) {
          const OrientedEdge ooe = dc.liftOfSide(oldLf, slot);
          src.kind = Kind::Old;
          src.old = {ooe.edge, geomSign(ooe, oldLf)};
        } else {
          const int s = splitSlot.at(oldFaceOf(nf));
          const OrientedEdge whole = splitSideLift(oldLf);
          const int gs = geomSign(whole, oldLf);
          const bool isTb = faceIsTb[nlf];
          // slot 0 of ta is c0 -> m, slot 0 of tb is m -> c1.
          if (slot == 0) {
            const bool trivial = isTb ? (gs < 0) : (gs > 0);
            src.kind = trivial ? Kind::Trivial : Kind::OldWhole;
            src.old = {whole.edge, gs};
            src.admEdge = whole.edge;
          } else if ((!isTb && slot == 2) || (isTb && slot == 1)) {
            const int os = isTb ? (s + 1) % 3 : (s + 2) % 3;
            const OrientedEdge ooe = dc.liftOfSide(oldLf, os);
            src.kind = Kind::Old;
            src.old = {ooe.edge, geomSign(ooe, oldLf)};
          } else {
            // Diagonal in geometric direction m -> c2 (ta slot 1); tb slot 2
            // runs c2 -> m and is handled through the sign below.
            src.kind = Kind::Diagonal;
            src.half = {whole.edge, gs};
            src.halfTrivial = gs < 0;
            const OrientedEdge ooe = dc.liftOfSide(oldLf, (s + 1) % 3);
            src.next = {ooe.edge, geomSign(ooe, oldLf)};
            src.admFace = oldLf;
          }
        }
        int sign = geomSign(noe, nlf);
        if (src.kind == Kind::Diagonal && faceIsTb[nlf]) sign = -sign;
        source[noe.edge] = src;
        sourceSign[noe.edge] = sign;
      }
    }

  // Admissible sets.
  Admissibility adm;
  adm.numIndices = d.adm.numIndices;
  adm.k = d.adm.k;
  for (int lf = 0; lf < 2 * nF; ++lf) adm.face.push_back(d.adm.face[faceOrigin[lf]]);
  for (int le = 0; le < 2 * nE; ++le) {
    const auto& src = source[le];
    if (src.kind == Kind::Old) adm.edge.push_back(d.adm.edge[src.old.edge]);
    else if (src.kind == Kind::Diagonal) adm.edge.push_back(d.adm.face[src.admFace]);
    else adm.edge.push_back(d.adm.edge[src.admEdge]);
  }
  for (int lv = 0; lv < 2 * nV; ++lv)
    adm.vertex.push_back(vertexAdmEdge[lv] >= 0 ? d.adm.edge[vertexAdmEdge[lv]] : d.adm.vertex[vertexOrigin[lv]]);

  OrientifoldDatum nd = identity_datum(nc, adm, d.rank);
  for (int lf = 0; lf < 2 * nF; ++lf) {
    if (faceIsTb[lf]) continue;
    for (int i : adm.face[lf]) nd.faceB[lf][nd.pos(adm.face[lf], i)] = d.b(faceOrigin[lf], i);
  }
  auto oldGeomA = [&](const OrientedEdge& g, int i, int j) { return g.dir > 0 ? d.a(g.edge, i, j) : d.a(g.edge, i, j).inv(); };
  auto oldGeomPi = [&](const OrientedEdge& g, int i) { return g.dir > 0 ? d.pi(g.edge, i) : d.pi(g.edge, i).inv(); };
  auto oldGeomT = [&](const OrientedEdge& g, int i) { return g.dir > 0 ? d.T(g.edge, i) : d.T(g.edge, i).inv(); };
  for (int le = 0; le < 2 * nE; ++le) {
    const auto& src = source[le];
    const int sign = sourceSign[le];
    const auto& A = adm.edge[le];
    auto orient = [&](Phase p) { return sign > 0 ? p : p.inv(); };
    for (int i : A) {
      Phase pi;
      if (src.kind == Kind::Old || src.kind == Kind::OldWhole) pi = oldGeomPi(src.old, i);
      if (src.kind == Kind::Diagonal) pi = (src.halfTrivial ? Phase() : oldGeomPi(src.half, i)) * oldGeomPi(src.next, i);
      nd.edgePi[le][nd.pos(A, i)] = orient(pi);
      for (int j : A) {
        Phase a;
        if (src.kind == Kind::Old || src.kind == Kind::OldWhole) a = oldGeomA(src.old, i, j);
        if (src.kind == Kind::Diagonal) a = (src.halfTrivial ? Phase() : oldGeomA(src.half, i, j)) * oldGeomA(src.next, i, j);
        nd.edgeA[le][nd.pairIndex(A, i, j)] = orient(a);
      }
      if (nc.isBoundaryEdge(project(le))) {
        ModuleElement T = ModuleElement::identity(d.rank);
        if (src.kind == Kind::Old || src.kind == Kind::OldWhole) T = oldGeomT(src.old, i);
        nd.edgeT[le][nd.pos(A, i)] = sign > 0 ? T : T.inv();
      }
    }
  }
  for (int lv = 0; lv < 2 * nV; ++lv) {
    const int ov = vertexOrigin[lv];
    const auto& A = adm.vertex[lv];
    const bool bd = nc.isBoundaryVertex(project(lv));
    for (int i : A) {
      nd.fV[lv][nd.pos(A, i)] = d.f(ov, i);
      if (bd) nd.HV[lv][nd.pos(A, i)] = d.H(ov, i);
      for (int j : A) {
        nd.chiV[lv][nd.pairIndex(A, i, j)] = d.chi(ov, i, j);
        if (bd) nd.GV[lv][nd.pairIndex(A, i, j)] = d.G(ov, i, j);
        for (int l : A) nd.gV[lv][nd.tripleIndex(A, i, j, l)] = d.g(ov, i, j, l);
      }
    }
  }

  if (!seed) return {std::move(nd), std::move(nc)};
  // Random gauge on the new cells only.
  std::mt19937_64 rng(*seed);
  GaugeDatum full = random_gauge(nd, nc, rng);
  GaugeDatum local = identity_gauge(nd, nc);
  for (int le = 0; le < 2 * nE; ++le)
    if (source[le].kind != Kind::Old) local.edgeW[le] = full.edgeW[le];
  for (int lv = 0; lv < 2 * nV; ++lv)
    if (vertexAdmEdge[lv] >= 0) {
      local.uV[lv] = full.uV[lv];
      local.hV[lv] = full.hV[lv];
      local.moduleU[lv] = full.moduleU[lv];
    }
  return {apply_gauge(nd, nc, local), std::move(nc)};
}

}  // namespace ohol
