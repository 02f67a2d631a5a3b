#include "ohol/holonomy.hpp"

#include <cmath>
#include <functional>

namespace ohol {

bool HolonomyValue::agrees(const HolonomyValue& o, double tol) const {
  if (exact && o.exact) return *exact == *o.exact;
  return std::abs(value - o.value) <= tol * std::max(rank, 1);
}

HolonomyValue HolonomyValue::squared() const {
  HolonomyValue out = *this;
  if (exact) out.exact = exact->pow(2);
  out.value = value * value;
  return out;
}

namespace {

// Accumulates exact phases and floating traces separately.
struct Accumulator {
  int rank = 1;
  Phase phase;
  std::complex<double> traces{1.0, 0.0};
  bool floating = false;

  void trace(const ModuleElement& m) {
    if (m.exact()) {
      phase *= m.phase();
    } else {
      traces *= m.trace();
      floating = true;
    }
  }
  HolonomyValue result() const {
    HolonomyValue v;
    v.rank = rank;
    if (!floating) v.exact = phase;
    v.value = phase.value() * traces;
    return v;
  }
};

// Signed vertex factor of an oriented edge: -1 at the tail, +1 at the head.
Phase vertexPair(const DoubleCover& dc, const OrientedEdge& oe, const std::function<Phase(int)>& at) {
  return at(dc.head(oe)) / at(dc.tail(oe));
}

ModuleElement oriented(const ModuleElement& t, int dir) { return dir > 0 ? t : t.inv(); }

// One boundary circle, transports with later segments on the left.
ModuleElement circleTransport(const OrientifoldDatum& d, const DoubleCover& dc, const std::vector<OrientedEdge>& circle,
                              const std::vector<int>& edgeIndex, const std::vector<int>& vertexIndex) {
  ModuleElement x = ModuleElement::identity(d.rank);
  for (const OrientedEdge& oe : circle) {
    const int ie = edgeIndex[oe.edge];
    const int h = dc.head(oe), t = dc.tail(oe);
    ModuleElement m = d.G(h, ie, vertexIndex[h]).inv() * oriented(d.T(oe.edge, ie), oe.dir) * d.G(t, ie, vertexIndex[t]);
    x = m * x;
  }
  return x;
}

Phase faceTerm(const OrientifoldDatum& d, const DoubleCover& dc, int lf, const std::vector<int>& faceIndex,
               const std::vector<int>& edgeIndex, const std::vector<int>& vertexIndex) {
  const int it = faceIndex[lf];
  Phase out = d.b(lf, it);
  for (const OrientedEdge& oe : dc.faceBoundary(lf)) {
    const int ie = edgeIndex[oe.edge];
    out *= d.a(oe, it, ie);
    out *= vertexPair(dc, oe, [&](int v) { return d.g(v, it, ie, vertexIndex[v]); });
  }
  return out;
}

std::vector<int> lowestIndices(const std::vector<std::vector<int>>& fam) {
  std::vector<int> out;
  for (const auto& s : fam) out.push_back(s.front());
  return out;
}

}  // namespace

HolonomyValue holonomy(const ValidatedDatum& vd, const DoubleCover& dc, const DomainChoice& c) {
  const OrientifoldDatum& d = vd.datum();
  check_choice(dc, d.adm, c);
  Accumulator acc;
  acc.rank = d.rank;

  for (int f = 0; f < dc.numFaces(); ++f) {
    const int lf = c.chosenFace(f);
    const int it = c.faceIndex[lf];
    acc.phase *= d.b(lf, it);
    for (const OrientedEdge& oe : dc.faceBoundary(lf)) {
      const int ie = c.edgeIndex[oe.edge];
      acc.phase *= d.a(oe, it, ie);
      acc.phase *= d.g(dc.head(oe), it, ie, c.vertexIndex[dc.head(oe)]);
      acc.phase /= d.g(dc.tail(oe), it, ie, c.vertexIndex[dc.tail(oe)]);
    }
  }

  for (const CutEdge& ce : f_bar(dc, c)) {
    const OrientedEdge& oe = ce.lift;
    const int ie = c.edgeIndex[oe.edge];
    const int h = dc.head(oe), t = dc.tail(oe);
    acc.phase *= d.pi(oe, ie);
    acc.phase /= d.chi(h, ie, c.vertexIndex[h]);
    acc.phase *= d.chi(t, ie, c.vertexIndex[t]);
    // Chosen vertex lifts contribute only when they bound the chosen edge lift.
    for (int v : dc.edgeVertices(ce.edge)) {
      const int cv = 2 * v + c.vertexLift[v];
      const Phase fv = d.f(cv, c.vertexIndex[cv]);
      if (cv == h) acc.phase *= fv;
      if (cv == t) acc.phase /= fv;
    }
    // A loop edge lists its vertex twice; undo the duplicate.
    const auto ends = dc.edgeVertices(ce.edge);
    if (ends[0] == ends[1]) {
      const int cv = 2 * ends[0] + c.vertexLift[ends[0]];
      const Phase fv = d.f(cv, c.vertexIndex[cv]);
      if (cv == h) acc.phase /= fv;
      if (cv == t) acc.phase *= fv;
    }
  }

  for (int comp = 0; comp < dc.numBoundaryComponents(); ++comp)
    acc.trace(circleTransport(d, dc, dc.circle(c.chosenCircle(comp)), c.edgeIndex, c.vertexIndex));
  return acc.result();
}

namespace {

// Lines one and three over a set of lifted faces and lifted circles.
HolonomyValue orientedEvaluation(const OrientifoldDatum& d, const DoubleCover& dc, const std::vector<int>& faces,
                                 const std::vector<int>& circles) {
  const auto fi = lowestIndices(d.adm.face);
  const auto ei = lowestIndices(d.adm.edge);
  const auto vi = lowestIndices(d.adm.vertex);
  Accumulator acc;
  acc.rank = d.rank;
  for (int lf : faces) acc.phase *= faceTerm(d, dc, lf, fi, ei, vi);
  for (int id : circles) acc.trace(circleTransport(d, dc, dc.circle(id), ei, vi));
  return acc.result();
}

}  // namespace

HolonomyValue holonomy_oriented(const ValidatedDatum& vd, const DoubleCover& dc, const std::vector<int>& section) {
  const OrientifoldDatum& d = vd.datum();
  if (!dc.orientable()) throw SemanticError("holonomy_oriented: surface is not orientable");
  if (static_cast<int>(section.size()) != dc.numFaces()) throw SemanticError("holonomy_oriented: section has wrong size");
  std::vector<int> faces;
  for (int f = 0; f < dc.numFaces(); ++f) faces.push_back(2 * f + section[f]);
  // Every interior edge must be shared by the chosen lifts.
  for (int e = 0; e < dc.numEdges(); ++e) {
    const auto& sides = dc.edgeSides(e);
    if (sides.size() == 2 &&
        dc.liftOfSide(faces[sides[0].face], sides[0].slot).edge != dc.liftOfSide(faces[sides[1].face], sides[1].slot).edge)
      throw SemanticError("holonomy_oriented: sheets do not form a global section");
  }
  std::vector<int> circles;
  for (int comp = 0; comp < dc.numBoundaryComponents(); ++comp) {
    const int e = dc.componentEdges(comp).front();
    const FaceEdge fe = dc.edgeSides(e).front();
    circles.push_back(dc.circleOfLiftedEdge(dc.liftOfSide(faces[fe.face], fe.slot).edge));
  }
  return orientedEvaluation(d, dc, faces, circles);
}

HolonomyValue holonomy_double(const ValidatedDatum& vd, const DoubleCover& dc) {
  std::vector<int> faces, circles;
  for (int lf = 0; lf < 2 * dc.numFaces(); ++lf) faces.push_back(lf);
  for (int id = 0; id < 2 * dc.numBoundaryComponents(); ++id) circles.push_back(id);
  return orientedEvaluation(vd.datum(), dc, faces, circles);
}

SweepResult sweep_holonomy(const ValidatedDatum& d, const DoubleCover& dc, const EnumerationConfig& cfg, double tol) {
  SweepResult out;
  ChoiceEnumerator en(dc, d->adm, cfg);
  out.exhaustive = en.exhaustive();
  bool first = true;
  en.forEach([&](const DomainChoice& c) {
    HolonomyValue h = holonomy(d, dc, c);
    if (first) {
      out.value = h;
      first = false;
    } else {
      out.maxDeviation = std::max(out.maxDeviation, std::abs(h.value - out.value.value));
      if (!h.agrees(out.value, tol)) out.invariant = false;
    }
    ++out.swept;
    return true;
  });
  if (first) out.value = HolonomyValue::fromPhase(d->rank, Phase());
  return out;
}

}  // namespace ohol
