#include "ohol/double_cover.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace ohol {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

std::string sideName(FaceEdge fe) {
  return "side (" + std::to_string(fe.face) + "," + std::to_string(fe.slot) + ")";
}

// Square [A,B,C,D] split along AC into (A,B,C) and (A,C,D). Sides: t0 has
// bottom AB, right BC and diagonal CA; t1 has diagonal AC, top CD, left DA.
SurfaceSpec square(std::string model, std::array<int, 4> label, std::optional<bool> rightLeftReversing,
                   std::optional<bool> bottomTopReversing) {
  auto [a, b, c, d] = label;
  SurfaceSpec s;
  s.model = std::move(model);
  s.faces = {{a, b, c}, {a, c, d}};
  s.identifications.push_back({{0, 2}, {1, 0}, false});
  std::vector<FaceEdge> free;
  if (rightLeftReversing)
    s.identifications.push_back({{0, 1}, {1, 2}, *rightLeftReversing});
  else
    free.insert(free.end(), {{0, 1}, {1, 2}});
  if (bottomTopReversing)
    s.identifications.push_back({{0, 0}, {1, 1}, *bottomTopReversing});
  else
    free.insert(free.end(), {{0, 0}, {1, 1}});
  std::sort(free.begin(), free.end());
  s.boundary = free;
  return s;
}

}  // namespace

SurfaceSpec named_surface(std::string_view model) {
  if (model == "mobius") return square("mobius", {0, 1, 0, 1}, true, std::nullopt);
  if (model == "annulus") return square("annulus", {0, 0, 1, 1}, false, std::nullopt);
  if (model == "torus") return square("torus", {0, 0, 0, 0}, false, false);
  if (model == "klein") return square("klein", {0, 0, 0, 0}, true, false);
  if (model == "rp2") return square("rp2", {0, 1, 0, 1}, true, true);
  if (model == "sphere") {
    SurfaceSpec s;
    s.model = "sphere";
    s.faces = {{0, 1, 2}, {0, 2, 1}};
    s.identifications = {{{0, 0}, {1, 2}, false}, {{0, 1}, {1, 1}, false}, {{0, 2}, {1, 0}, false}};
    s.boundary = std::vector<FaceEdge>{};
    return s;
  }
  if (model == "disk") {
    SurfaceSpec s;
    s.model = "disk";
    s.faces = {{0, 1, 2}};
    s.boundary = std::vector<FaceEdge>{{0, 0}, {0, 1}, {0, 2}};
    return s;
  }
  throw InputError("unknown surface model \"" + std::string(model) + "\"");
}

DoubleCover DoubleCover::build(const SurfaceSpec& spec) {
  DoubleCover dc;
  dc.spec_ = spec;
  const int F = static_cast<int>(spec.faces.size());
  if (F == 0) throw InputError("surface has no faces");
  auto label = [&](int f, int c) { return spec.faces[f][((c % 3) + 3) % 3]; };

  // Sides and gluings.
  std::vector<std::array<int, 3>> used(F, {0, 0, 0});
  struct RawEdge {
    std::vector<FaceEdge> sides;
    bool reversing = false;
  };
  std::vector<RawEdge> raw;
  for (const auto& id : spec.identifications) {
    for (const FaceEdge& fe : {id.a, id.b}) {
      if (fe.face < 0 || fe.face >= F || fe.slot < 0 || fe.slot > 2)
        throw InputError("identification refers to missing " + sideName(fe));
    }
    if (id.a == id.b) throw InputError("non-manifold gluing: " + sideName(id.a) + " glued to itself");
    for (const FaceEdge& fe : {id.a, id.b}) {
      if (++used[fe.face][fe.slot] > 1)
        throw InputError("non-manifold gluing: " + sideName(fe) + " is used by more than two faces");
    }
    const int fa = id.a.face, sa = id.a.slot, fb = id.b.face, sb = id.b.slot;
    bool ok = id.reversing ? (label(fa, sa) == label(fb, sb) && label(fa, sa + 1) == label(fb, sb + 1))
                           : (label(fa, sa) == label(fb, sb + 1) && label(fa, sa + 1) == label(fb, sb));
    if (!ok)
      throw InputError("inconsistent identification of " + sideName(id.a) + " with " + sideName(id.b) +
                       (id.reversing ? " flagged reversing" : " flagged non-reversing"));
    RawEdge r;
    r.sides = {std::min(id.a, id.b), std::max(id.a, id.b)};
    r.reversing = id.reversing;
    raw.push_back(r);
  }
  std::vector<FaceEdge> freeSides;
  for (int f = 0; f < F; ++f)
    for (int s = 0; s < 3; ++s)
      if (used[f][s] == 0) {
        freeSides.push_back({f, s});
        raw.push_back({{{f, s}}, false});
      }
  if (spec.boundary) {
    std::vector<FaceEdge> declared = *spec.boundary;
    std::sort(declared.begin(), declared.end());
    if (declared != freeSides) throw InputError("declared boundary does not match the unglued sides");
  }
  std::sort(raw.begin(), raw.end(), [](const RawEdge& x, const RawEdge& y) { return x.sides[0] < y.sides[0]; });
  const int E = static_cast<int>(raw.size());
  dc.faceEdge_.assign(F, {0, 0, 0});
  for (int e = 0; e < E; ++e) {
    dc.edgeSides_.push_back(raw[e].sides);
    dc.edgeReversing_.push_back(raw[e].reversing);
    for (const FaceEdge& fe : raw[e].sides) dc.faceEdge_[fe.face][fe.slot] = e;
  }

  // Corner classes on the surface and on the double.
  UnionFind base(3 * F);
  UnionFind lifted(6 * F);
  auto node = [](int lf, int c) { return 3 * lf + ((c % 3) + 3) % 3; };
  for (int e = 0; e < E; ++e) {
    if (raw[e].sides.size() != 2) continue;
    const auto [f1, s1] = raw[e].sides[0];
    const auto [f2, s2] = raw[e].sides[1];
    const bool rev = raw[e].reversing;
    const int o1 = rev ? s2 : s2 + 1, o2 = rev ? s2 + 1 : s2;
    base.unite(node(f1, s1), node(f2, o1));
    base.unite(node(f1, s1 + 1), node(f2, o2));
    for (int b = 0; b < 2; ++b) {
      const int l1 = 2 * f1 + b, l2 = 2 * f2 + (b ^ int(rev));
      lifted.unite(node(l1, s1), node(l2, o1));
      lifted.unite(node(l1, s1 + 1), node(l2, o2));
    }
  }
  std::map<int, int> rootLabel;
  for (int f = 0; f < F; ++f)
    for (int c = 0; c < 3; ++c) {
      int r = base.find(node(f, c));
      auto [it, fresh] = rootLabel.emplace(r, label(f, c));
      if (!fresh && it->second != label(f, c))
        throw InputError("inconsistent identification: corners with labels " + std::to_string(it->second) +
                         " and " + std::to_string(label(f, c)) + " are glued");
    }
  std::map<int, int> labelVertex;
  for (const auto& [root, lab] : rootLabel) {
    if (labelVertex.count(lab)) throw InputError("vertex label " + std::to_string(lab) + " names several vertices");
    labelVertex[lab] = 0;
  }
  int V = 0;
  for (auto& [lab, id] : labelVertex) {
    id = V++;
    dc.vertexLabel_.push_back(lab);
  }
  // Lifted vertex numbering: bit 0 holds the sheet-0 copy of the least corner.
  std::vector<int> liftRoot0(V, -1);
  std::vector<int> firstCorner(V, -1);
  for (int f = 0; f < F; ++f)
    for (int c = 0; c < 3; ++c) {
      int v = labelVertex[label(f, c)];
      if (firstCorner[v] < 0) firstCorner[v] = node(f, c);
    }
  std::map<int, int> liftedRootId;
  for (int v = 0; v < V; ++v) {
    const int f = firstCorner[v] / 3, c = firstCorner[v] % 3;
    const int r0 = lifted.find(node(2 * f, c)), r1 = lifted.find(node(2 * f + 1, c));
    if (r0 == r1) throw InputError("non-manifold vertex " + std::to_string(dc.vertexLabel_[v]));
    liftedRootId[r0] = 2 * v;
    liftedRootId[r1] = 2 * v + 1;
  }
  dc.liftedCorner_.assign(2 * F, {0, 0, 0});
  for (int lf = 0; lf < 2 * F; ++lf)
    for (int c = 0; c < 3; ++c) {
      auto it = liftedRootId.find(lifted.find(node(lf, c)));
      if (it == liftedRootId.end())
        throw InputError("non-manifold vertex " + std::to_string(label(lf / 2, c)) + " has more than two lifts");
      dc.liftedCorner_[lf][c] = it->second;
    }
  for (int f = 0; f < F; ++f)
    for (int c = 0; c < 3; ++c)
      if (sigma(dc.liftedCorner_[2 * f][c]) != dc.liftedCorner_[2 * f + 1][c])
        throw InputError("non-manifold vertex " + std::to_string(label(f, c)));

  // Lifted sides and edge endpoints.
  dc.sideLift_.assign(2 * F, {});
  dc.edgeEnds_.assign(2 * E, {0, 0});
  dc.edgeFaces_.assign(2 * E, {});
  for (int e = 0; e < E; ++e) {
    const auto [f1, s1] = raw[e].sides[0];
    for (int b = 0; b < 2; ++b) {
      dc.sideLift_[2 * f1 + b][s1] = {2 * e + b, b == 0 ? 1 : -1};
      dc.edgeEnds_[2 * e + b] = {dc.liftedCorner_[2 * f1 + b][s1], dc.liftedCorner_[2 * f1 + b][(s1 + 1) % 3]};
    }
    if (raw[e].sides.size() == 2) {
      const auto [f2, s2] = raw[e].sides[1];
      const bool rev = raw[e].reversing;
      for (int c = 0; c < 2; ++c) dc.sideLift_[2 * f2 + c][s2] = {2 * e + (c ^ int(rev)), (rev ? 1 : -1) * (c == 0 ? 1 : -1)};
    }
  }
  for (int lf = 0; lf < 2 * F; ++lf)
    for (int s = 0; s < 3; ++s) dc.edgeFaces_[dc.sideLift_[lf][s].edge].push_back({lf, dc.sideLift_[lf][s].dir});

  // Boundary components and their two lifted circles.
  dc.boundaryVertex_.assign(V, false);
  dc.edgeComponent_.assign(E, -1);
  dc.liftedEdgeCircle_.assign(2 * E, -1);
  UnionFind comp(E);
  std::map<int, int> vertexBoundaryEdge;
  for (int e = 0; e < E; ++e) {
    if (raw[e].sides.size() != 1) continue;
    for (int v : dc.edgeVertices(e)) {
      dc.boundaryVertex_[v] = true;
      auto [it, fresh] = vertexBoundaryEdge.emplace(v, e);
      if (!fresh) comp.unite(it->second, e);
    }
  }
  std::map<int, int> compId;
  for (int e = 0; e < E; ++e) {
    if (raw[e].sides.size() != 1) continue;
    auto [it, fresh] = compId.emplace(comp.find(e), static_cast<int>(dc.componentEdges_.size()));
    if (fresh) dc.componentEdges_.emplace_back();
    dc.componentEdges_[it->second].push_back(e);
    dc.edgeComponent_[e] = it->second;
  }
  std::map<int, OrientedEdge> outgoing;
  for (int le = 0; le < 2 * E; ++le) {
    if (raw[project(le)].sides.size() != 1) continue;
    OrientedEdge oe{le, dc.edgeFaces_[le].front().second};
    if (!outgoing.emplace(dc.tail(oe), oe).second)
      throw InputError("non-manifold boundary at lifted vertex " + std::to_string(dc.tail(oe)));
  }
  for (int c = 0; c < dc.numBoundaryComponents(); ++c) {
    const auto& edges = dc.componentEdges_[c];
    int least = std::numeric_limits<int>::max();
    for (int e : edges)
      for (int v : dc.edgeVertices(e)) least = std::min(least, v);
    for (int b = 0; b < 2; ++b) {
      // Walk the circle through the lift of the component's first edge.
      const int seed = 2 * edges.front() + b;
      OrientedEdge cur{seed, dc.edgeFaces_[seed].front().second};
      std::vector<OrientedEdge> loop;
      do {
        loop.push_back(cur);
        auto it = outgoing.find(dc.head(cur));
        if (it == outgoing.end()) throw InputError("boundary circle does not close");
        cur = it->second;
        if (loop.size() > edges.size()) throw InputError("boundary circle does not project bijectively");
      } while (cur.edge != seed);
      if (loop.size() != edges.size()) throw InputError("boundary circle does not project bijectively");
      auto start = std::find_if(loop.begin(), loop.end(), [&](const OrientedEdge& oe) { return project(dc.tail(oe)) == least; });
      std::rotate(loop.begin(), start, loop.end());
      for (const auto& oe : loop) dc.liftedEdgeCircle_[oe.edge] = 2 * c + b;
      dc.circles_.push_back(std::move(loop));
    }
    for (std::size_t i = 0; i < dc.circles_[2 * c].size(); ++i)
      if (dc.liftedEdgeCircle_[sigma(dc.circles_[2 * c][i].edge)] != 2 * c + 1)
        throw InputError("boundary lifts are not swapped by the involution");
  }

  // Orientability via a consistent choice of sheets.
  std::vector<int> sheet(F, -1);
  bool orientable = true;
  for (int root = 0; root < F && orientable; ++root) {
    if (sheet[root] >= 0) continue;
    sheet[root] = 0;
    std::vector<int> stack{root};
    while (!stack.empty() && orientable) {
      int f = stack.back();
      stack.pop_back();
      for (int s = 0; s < 3 && orientable; ++s) {
        int e = dc.faceEdge_[f][s];
        if (raw[e].sides.size() != 2) continue;
        const FaceEdge other = raw[e].sides[0] == FaceEdge{f, s} ? raw[e].sides[1] : raw[e].sides[0];
        int want = sheet[f] ^ int(raw[e].reversing);
        if (sheet[other.face] < 0) {
          sheet[other.face] = want;
          stack.push_back(other.face);
        } else if (sheet[other.face] != want) {
          orientable = false;
        }
      }
    }
  }
  if (orientable) dc.section_ = sheet;
  return dc;
}

std::array<OrientedEdge, 3> DoubleCover::faceBoundary(int lf) const {
  const auto& s = sideLift_[lf];
  if (lf % 2 == 0) return {s[0], s[1], s[2]};
  return {s[2], s[1], s[0]};
}

bool Admissibility::admits(const std::vector<int>& set, int i) const {
  return std::binary_search(set.begin(), set.end(), i);
}

void check_admissibility(const DoubleCover& dc, const Admissibility& adm) {
  const int n = adm.numIndices;
  if (n <= 0 || static_cast<int>(adm.k.size()) != n) throw SemanticError("index set and involution disagree");
  for (int i = 0; i < n; ++i)
    if (adm.k[i] < 0 || adm.k[i] >= n || adm.k[adm.k[i]] != i) throw SemanticError("k is not an involution");
  auto checkFamily = [&](const std::vector<std::vector<int>>& fam, int cells, const char* what) {
    if (static_cast<int>(fam.size()) != 2 * cells) throw SemanticError(std::string("wrong number of ") + what + " sets");
    for (int x = 0; x < 2 * cells; ++x) {
      const auto& s = fam[x];
      if (s.empty()) throw SemanticError(std::string("empty admissible set on ") + what + " " + std::to_string(x));
      if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
        throw SemanticError(std::string("admissible set not sorted on ") + what + " " + std::to_string(x));
      if (s.front() < 0 || s.back() >= n) throw SemanticError("admissible index out of range");
      std::vector<int> image;
      for (int i : s) image.push_back(adm.k[i]);
      std::sort(image.begin(), image.end());
      if (image != fam[sigma(x)]) throw SemanticError(std::string("admissible sets not equivariant on ") + what + " " + std::to_string(x));
    }
  };
  checkFamily(adm.face, dc.numFaces(), "face");
  checkFamily(adm.edge, dc.numEdges(), "edge");
  checkFamily(adm.vertex, dc.numVertices(), "vertex");
  auto subset = [](const std::vector<int>& a, const std::vector<int>& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); };
  for (int lf = 0; lf < 2 * dc.numFaces(); ++lf)
    for (int s = 0; s < 3; ++s)
      if (!subset(adm.face[lf], adm.edge[dc.liftOfSide(lf, s).edge]))
        throw SemanticError("admissible sets not monotone at lifted face " + std::to_string(lf));
  for (int le = 0; le < 2 * dc.numEdges(); ++le)
    if (!subset(adm.edge[le], adm.vertex[dc.edgeStart(le)]) || !subset(adm.edge[le], adm.vertex[dc.edgeEnd(le)]))
      throw SemanticError("admissible sets not monotone at lifted edge " + std::to_string(le));
}

void check_choice(const DoubleCover& dc, const Admissibility& adm, const DomainChoice& c) {
  auto bits = [](const std::vector<int>& v, int n, const char* what) {
    if (static_cast<int>(v.size()) != n) throw SemanticError(std::string("choice has wrong number of ") + what);
    for (int b : v)
      if (b != 0 && b != 1) throw SemanticError(std::string("choice bit out of range in ") + what);
  };
  bits(c.sheet, dc.numFaces(), "sheets");
  bits(c.boundaryLift, dc.numBoundaryComponents(), "boundary lifts");
  bits(c.edgeLift, dc.numEdges(), "edge lifts");
  bits(c.vertexLift, dc.numVertices(), "vertex lifts");
  auto indices = [&](const std::vector<int>& idx, const std::vector<std::vector<int>>& fam, const char* what) {
    if (idx.size() != fam.size()) throw SemanticError(std::string("choice has wrong number of ") + what + " indices");
    for (std::size_t x = 0; x < idx.size(); ++x) {
      if (!adm.admits(fam[x], idx[x])) throw SemanticError(std::string("inadmissible index on ") + what + " " + std::to_string(x));
      if (idx[sigma(static_cast<int>(x))] != adm.k[idx[x]]) throw SemanticError(std::string("index assignment not equivariant on ") + what + " " + std::to_string(x));
    }
  };
  indices(c.faceIndex, adm.face, "face");
  indices(c.edgeIndex, adm.edge, "edge");
  indices(c.vertexIndex, adm.vertex, "vertex");
}

std::vector<int> orientation_reversing_edges(const DoubleCover& dc, const DomainChoice& c) {
  std::vector<int> out;
  for (int e = 0; e < dc.numEdges(); ++e) {
    const auto& sides = dc.edgeSides(e);
    if (sides.size() != 2) continue;
    int l1 = dc.liftOfSide(c.chosenFace(sides[0].face), sides[0].slot).edge;
    int l2 = dc.liftOfSide(c.chosenFace(sides[1].face), sides[1].slot).edge;
    if (l1 != l2) out.push_back(e);
  }
  return out;
}

BoundarySets boundary_sets(const DoubleCover& dc, const DomainChoice& c) {
  BoundarySets out;
  for (int e = 0; e < dc.numEdges(); ++e) {
    if (!dc.isBoundaryEdge(e)) continue;
    out.all.push_back(e);
    const FaceEdge fe = dc.edgeSides(e).front();
    int lift = dc.liftOfSide(c.chosenFace(fe.face), fe.slot).edge;
    if (dc.circleOfLiftedEdge(lift) != c.chosenCircle(dc.componentOfEdge(e))) out.flagged.push_back(e);
  }
  return out;
}

std::vector<CutEdge> f_bar(const DoubleCover& dc, const DomainChoice& c) {
  std::vector<int> cut = orientation_reversing_edges(dc, c);
  auto bs = boundary_sets(dc, c);
  cut.insert(cut.end(), bs.flagged.begin(), bs.flagged.end());
  std::sort(cut.begin(), cut.end());
  std::vector<CutEdge> out;
  for (int e : cut) {
    const int lift = 2 * e + c.edgeLift[e];
    int dir = 0;
    for (const FaceEdge& fe : dc.edgeSides(e)) {
      OrientedEdge oe = dc.liftOfSide(c.chosenFace(fe.face), fe.slot);
      if (oe.edge == lift || dc.isBoundaryEdge(e)) {
        dir = oe.dir;
        break;
      }
    }
    out.push_back({e, {lift, dir}});
  }
  return out;
}

namespace {

int faceInducedLiftBit(const DoubleCover& dc, const std::vector<int>& sheet, int e) {
  const FaceEdge fe = dc.edgeSides(e).front();
  return dc.liftOfSide(2 * fe.face + sheet[fe.face], fe.slot).edge & 1;
}

}  // namespace

DomainChoice section_choice(const DoubleCover& dc, const Admissibility& adm, const std::vector<int>& section) {
  DomainChoice c;
  c.sheet = section;
  for (int comp = 0; comp < dc.numBoundaryComponents(); ++comp) {
    int e = dc.componentEdges(comp).front();
    c.boundaryLift.push_back(dc.circleOfLiftedEdge(2 * e + faceInducedLiftBit(dc, section, e)) & 1);
  }
  for (int e = 0; e < dc.numEdges(); ++e) c.edgeLift.push_back(faceInducedLiftBit(dc, section, e));
  c.vertexLift.assign(dc.numVertices(), 0);
  auto lowest = [&](const std::vector<std::vector<int>>& fam) {
    std::vector<int> idx(fam.size());
    for (std::size_t x = 0; x < fam.size(); x += 2) {
      idx[x] = fam[x].front();
      idx[x + 1] = adm.k[idx[x]];
    }
    return idx;
  };
  c.faceIndex = lowest(adm.face);
  c.edgeIndex = lowest(adm.edge);
  c.vertexIndex = lowest(adm.vertex);
  return c;
}

ChoiceEnumerator::ChoiceEnumerator(const DoubleCover& dc, const Admissibility& adm, EnumerationConfig cfg)
    : dc_(&dc), adm_(&adm), cfg_(cfg) {
  auto push = [&](int count, bool swept, auto radixOf) {
    for (int i = 0; i < count; ++i) radix_.push_back(swept ? radixOf(i) : 1);
  };
  auto two = [](int) { return std::uint64_t{2}; };
  push(dc.numFaces(), cfg.sweepSheets, two);
  push(dc.numBoundaryComponents(), cfg.sweepBoundary, two);
  push(dc.numEdges(), cfg.sweepEdgeLifts, two);
  push(dc.numVertices(), cfg.sweepVertexLifts, two);
  push(dc.numFaces(), cfg.sweepIndices, [&](int f) { return std::uint64_t(adm.face[2 * f].size()); });
  push(dc.numEdges(), cfg.sweepIndices, [&](int e) { return std::uint64_t(adm.edge[2 * e].size()); });
  push(dc.numVertices(), cfg.sweepIndices, [&](int v) { return std::uint64_t(adm.vertex[2 * v].size()); });
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (auto r : radix_) space_ = (space_ > kMax / r) ? kMax : space_ * r;
}

DomainChoice ChoiceEnumerator::decode(const std::vector<std::uint64_t>& d) const {
  const DoubleCover& dc = *dc_;
  const Admissibility& adm = *adm_;
  DomainChoice c;
  std::size_t p = 0;
  auto take = [&](int n, std::vector<int>& out) {
    out.clear();
    for (int i = 0; i < n; ++i) out.push_back(static_cast<int>(d[p++]));
  };
  take(dc.numFaces(), c.sheet);
  take(dc.numBoundaryComponents(), c.boundaryLift);
  take(dc.numEdges(), c.edgeLift);
  if (!cfg_.sweepEdgeLifts)
    for (int e = 0; e < dc.numEdges(); ++e) c.edgeLift[e] = faceInducedLiftBit(dc, c.sheet, e);
  take(dc.numVertices(), c.vertexLift);
  auto indices = [&](int cells, const std::vector<std::vector<int>>& fam, std::vector<int>& out) {
    out.assign(2 * cells, 0);
    for (int x = 0; x < cells; ++x) {
      out[2 * x] = fam[2 * x][d[p++]];
      out[2 * x + 1] = adm.k[out[2 * x]];
    }
  };
  indices(dc.numFaces(), adm.face, c.faceIndex);
  indices(dc.numEdges(), adm.edge, c.edgeIndex);
  indices(dc.numVertices(), adm.vertex, c.vertexIndex);
  return c;
}

void ChoiceEnumerator::forEach(const std::function<bool(const DomainChoice&)>& fn) const {
  if (cfg_.cap == 0) return;
  std::vector<std::uint64_t> digits(radix_.size(), 0);
  if (exhaustive()) {
    for (std::uint64_t n = 0; n < space_; ++n) {
      if (!fn(decode(digits))) return;
      for (std::size_t i = 0; i < digits.size(); ++i) {
        if (++digits[i] < radix_[i]) break;
        digits[i] = 0;
      }
    }
    return;
  }
  std::mt19937_64 rng(cfg_.seed);
  for (std::uint64_t n = 0; n < cfg_.samples; ++n) {
    for (std::size_t i = 0; i < digits.size(); ++i)
      digits[i] = std::uniform_int_distribution<std::uint64_t>(0, radix_[i] - 1)(rng);
    if (!fn(decode(digits))) return;
  }
}

}  // namespace ohol
