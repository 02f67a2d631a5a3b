#pragma once
// Triangulated surfaces, their oriented doubles, and the choices that enter
// the local holonomy formula.
//
// Lifted cells of the double are numbered 2*c + b, where c is the cell of the
// surface and b the lift bit; sigma flips b. Lifted face 2f+0 carries the
// corner order (0,1,2) of face f, lifted face 2f+1 the reversed order.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ohol/phase.hpp"

namespace ohol {

// Side s of a triangle runs from corner s to corner s+1 (mod 3).
struct FaceEdge {
  int face = 0;
  int slot = 0;
  friend auto operator<=>(const FaceEdge&, const FaceEdge&) = default;
};

struct Identification {
  FaceEdge a;
  FaceEdge b;
  // Reversing gluings map corner a.slot to corner b.slot; the others map
  // corner a.slot to corner b.slot+1.
  bool reversing = false;
};

struct SurfaceSpec {
  std::string model;  // named model, empty for explicit specs
  std::vector<std::array<int, 3>> faces;  // vertex labels per corner
  std::vector<Identification> identifications;
  std::optional<std::vector<FaceEdge>> boundary;
};

// One of "mobius", "klein", "rp2", "torus", "annulus", "disk", "sphere".
SurfaceSpec named_surface(std::string_view model);

struct OrientedEdge {
  int edge = 0;  // lifted edge id
  int dir = 1;   // +1 along the canonical orientation, -1 against it
  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

inline int sigma(int lifted) { return lifted ^ 1; }
inline int project(int lifted) { return lifted >> 1; }

class DoubleCover {
 public:
  // Throws InputError on non-manifold gluings, self-gluings, label clashes
  // or a boundary list that disagrees with the unglued sides.
  static DoubleCover build(const SurfaceSpec& spec);

  const SurfaceSpec& spec() const { return spec_; }
  int numFaces() const { return static_cast<int>(spec_.faces.size()); }
  int numEdges() const { return static_cast<int>(edgeSides_.size()); }
  int numVertices() const { return static_cast<int>(vertexLabel_.size()); }
  int eulerCharacteristic() const { return numVertices() - numEdges() + numFaces(); }

  // Surface-level incidence.
  int edgeOf(FaceEdge fe) const { return faceEdge_[fe.face][fe.slot]; }
  const std::vector<FaceEdge>& edgeSides(int e) const { return edgeSides_[e]; }
  bool edgeReversing(int e) const { return edgeReversing_[e]; }
  bool isBoundaryEdge(int e) const { return edgeSides_[e].size() == 1; }
  bool isBoundaryVertex(int v) const { return boundaryVertex_[v]; }
  int vertexOfCorner(int face, int corner) const { return project(liftedCorner_[2 * face][corner]); }
  int vertexLabel(int v) const { return vertexLabel_[v]; }
  std::array<int, 2> edgeVertices(int e) const {
    return {project(edgeStart(2 * e)), project(edgeEnd(2 * e))};
  }

  // Lifted incidence.
  OrientedEdge liftOfSide(int liftedFace, int slot) const { return sideLift_[liftedFace][slot]; }
  int liftedCorner(int liftedFace, int corner) const { return liftedCorner_[liftedFace][corner]; }
  // Oriented boundary of a lifted face in its own orientation.
  std::array<OrientedEdge, 3> faceBoundary(int liftedFace) const;
  int edgeStart(int liftedEdge) const { return edgeEnds_[liftedEdge][0]; }
  int edgeEnd(int liftedEdge) const { return edgeEnds_[liftedEdge][1]; }
  int tail(const OrientedEdge& oe) const { return oe.dir > 0 ? edgeStart(oe.edge) : edgeEnd(oe.edge); }
  int head(const OrientedEdge& oe) const { return oe.dir > 0 ? edgeEnd(oe.edge) : edgeStart(oe.edge); }
  // Lifted faces adjacent to a lifted edge with the induced direction.
  const std::vector<std::pair<int, int>>& edgeFaces(int liftedEdge) const { return edgeFaces_[liftedEdge]; }

  // Boundary structure. Component c lifts to circles 2c and 2c+1, swapped by
  // sigma; each circle is listed in traversal order from the lift of the
  // least surface vertex on the component.
  int numBoundaryComponents() const { return static_cast<int>(componentEdges_.size()); }
  const std::vector<int>& componentEdges(int c) const { return componentEdges_[c]; }
  const std::vector<OrientedEdge>& circle(int id) const { return circles_[id]; }
  int componentOfEdge(int e) const { return edgeComponent_[e]; }
  int circleOfLiftedEdge(int liftedEdge) const { return liftedEdgeCircle_[liftedEdge]; }

  // Sheet per face forming a global section, if the surface is orientable.
  const std::optional<std::vector<int>>& globalSection() const { return section_; }
  bool orientable() const { return section_.has_value(); }

 private:
  SurfaceSpec spec_;
  std::vector<std::array<int, 3>> faceEdge_;
  std::vector<std::vector<FaceEdge>> edgeSides_;
  std::vector<bool> edgeReversing_;
  std::vector<int> vertexLabel_;
  std::vector<bool> boundaryVertex_;
  std::vector<std::array<OrientedEdge, 3>> sideLift_;
  std::vector<std::array<int, 3>> liftedCorner_;
  std::vector<std::array<int, 2>> edgeEnds_;
  std::vector<std::vector<std::pair<int, int>>> edgeFaces_;
  std::vector<std::vector<int>> componentEdges_;
  std::vector<std::vector<OrientedEdge>> circles_;
  std::vector<int> edgeComponent_;
  std::vector<int> liftedEdgeCircle_;
  std::optional<std::vector<int>> section_;
};

// Admissible index sets per lifted cell together with the involution k on
// the index set. Sets are sorted.
struct Admissibility {
  int numIndices = 0;
  std::vector<int> k;
  std::vector<std::vector<int>> face, edge, vertex;

  bool admits(const std::vector<int>& set, int i) const;
};

// Throws SemanticError unless adm is sigma-equivariant, monotone under
// incidence and k is an involution.
void check_admissibility(const DoubleCover& dc, const Admissibility& adm);

struct DomainChoice {
  std::vector<int> sheet;         // per face
  std::vector<int> boundaryLift;  // per boundary component
  std::vector<int> edgeLift;      // per edge, used on cut edges
  std::vector<int> vertexLift;    // per vertex
  std::vector<int> faceIndex;     // per lifted face
  std::vector<int> edgeIndex;     // per lifted edge
  std::vector<int> vertexIndex;   // per lifted vertex

  int chosenFace(int f) const { return 2 * f + sheet[f]; }
  int chosenCircle(int c) const { return 2 * c + boundaryLift[c]; }
};

// Throws SemanticError when the choice is malformed, not equivariant or not
// subordinate to adm.
void check_choice(const DoubleCover& dc, const Admissibility& adm, const DomainChoice& c);

// Interior edges whose adjacent chosen face lifts share no lift of the edge.
std::vector<int> orientation_reversing_edges(const DoubleCover& dc, const DomainChoice& c);

struct BoundarySets {
  std::vector<int> all;      // B
  std::vector<int> flagged;  // B-bar
};
BoundarySets boundary_sets(const DoubleCover& dc, const DomainChoice& c);

// One arc of F-bar: the surface edge and its chosen oriented lift.
struct CutEdge {
  int edge = 0;
  OrientedEdge lift;
};
// Edges of E and B-bar in edge-id order, each with its chosen lift oriented
// as an arc of F-bar.
std::vector<CutEdge> f_bar(const DoubleCover& dc, const DomainChoice& c);

// The choice induced by a global section: all faces on that section, the
// boundary circles inside it, lowest admissible indices.
DomainChoice section_choice(const DoubleCover& dc, const Admissibility& adm, const std::vector<int>& section);

struct EnumerationConfig {
  bool sweepSheets = true;
  bool sweepBoundary = true;
  bool sweepEdgeLifts = true;
  bool sweepVertexLifts = true;
  bool sweepIndices = true;
  std::uint64_t cap = std::uint64_t{1} << 14;  // exhaustive up to this many
  std::uint64_t samples = 1000;               // drawn when above the cap
  std::uint64_t seed = 0;
};

class ChoiceEnumerator {
 public:
  ChoiceEnumerator(const DoubleCover& dc, const Admissibility& adm, EnumerationConfig cfg);

  // Size of the full choice space, saturating at UINT64_MAX.
  std::uint64_t spaceSize() const { return space_; }
  bool exhaustive() const { return space_ <= cfg_.cap; }
  // Calls fn on every emitted choice; stops early when fn returns false.
  void forEach(const std::function<bool(const DomainChoice&)>& fn) const;

 private:
  DomainChoice decode(const std::vector<std::uint64_t>& digits) const;

  const DoubleCover* dc_;
  const Admissibility* adm_;
  EnumerationConfig cfg_;
  std::vector<std::uint64_t> radix_;
  std::uint64_t space_ = 1;
};

}  // namespace ohol
