#pragma once
// Local data of a gerbe with Jandl structure and a brane module, pulled back
// to the cells of an oriented double.
//
// Conventions, written additively for phases (angle sums mod 1):
//   faces     sum_{e in dt} a(e,i,j)            = b(t,j) - b(t,i)
//   edges     a(e,ij) - a(e,il) + a(e,jl)         = g(start,ijl) - g(end,ijl)
//   vertices  g(ijl) + g(jml)                    = g(iml) + g(ijm)
//   Jandl     b(st,ki) - b(t,i)                   = sum_{e in dt} pi(e,i)
//             -a(se,ki,kj) - a(e,ij)              = pi(e,j) - pi(e,i) + chi(end,ij) - chi(start,ij)
//             -g(sv,ki,kj,kl) - g(v,ijl)          = -chi(ij) + chi(il) - chi(jl)
//             pi(e,i) - pi(se,ki)                 = f(start,i) - f(end,i)
//             chi(v,ij) - chi(sv,ki,kj)           = f(v,j) - f(v,i)
//             f(sv,ki) + f(v,i)                   = 0
// where s is the involution on lifted cells. Edge values refer to the
// canonical orientation of each lifted edge; the orientation of s(e) is the
// pushforward of that of e, while s reverses face orientations. Transports
// solve dT = i Lambda T, so later path segments multiply on the left.
// Module relations on boundary cells:
//   conj T(se,ki)   = H(end,i)^-1 T(e,i) H(start,i) exp(-2 pi i pi(e,i))
//   conj G(sv,ki,kj) = H(i)^-1 G(ij) H(j) exp(-2 pi i chi(ij))
//   H(v,i) conj H(sv,ki) = exp(2 pi i f(v,i))
//   G(ij) G(jl)      = exp(2 pi i g(ijl)) G(il)
//   T(e,j)           = G(end,ij)^-1 T(e,i) G(start,ij) exp(-2 pi i a(e,ij))
// Relations are reported as R1..R13 in the order above; "A" marks a broken
// antisymmetry convention.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ohol/double_cover.hpp"
#include "ohol/group.hpp"
#include "ohol/phase.hpp"
#include "ohol/unitary.hpp"

namespace ohol {

struct OrientifoldDatum {
  int rank = 1;
  Admissibility adm;
  // Tables per lifted cell, flattened over admissible tuples in
  // lexicographic order of positions within the sorted admissible set.
  std::vector<std::vector<Phase>> faceB, edgeA, gV, edgePi, chiV, fV;
  // Module layer; entries only on boundary cells, empty vectors elsewhere.
  std::vector<std::vector<ModuleElement>> edgeT, GV, HV;

  int pos(const std::vector<int>& set, int i) const;
  int pairIndex(const std::vector<int>& set, int i, int j) const;
  int tripleIndex(const std::vector<int>& set, int i, int j, int l) const;

  Phase b(int t, int i) const { return faceB[t][pos(adm.face[t], i)]; }
  Phase a(int e, int i, int j) const { return edgeA[e][pairIndex(adm.edge[e], i, j)]; }
  Phase a(const OrientedEdge& oe, int i, int j) const { return oe.dir > 0 ? a(oe.edge, i, j) : a(oe.edge, i, j).inv(); }
  Phase g(int v, int i, int j, int l) const { return gV[v][tripleIndex(adm.vertex[v], i, j, l)]; }
  Phase pi(int e, int i) const { return edgePi[e][pos(adm.edge[e], i)]; }
  Phase pi(const OrientedEdge& oe, int i) const { return oe.dir > 0 ? pi(oe.edge, i) : pi(oe.edge, i).inv(); }
  Phase chi(int v, int i, int j) const { return chiV[v][pairIndex(adm.vertex[v], i, j)]; }
  Phase f(int v, int i) const { return fV[v][pos(adm.vertex[v], i)]; }
  const ModuleElement& T(int e, int i) const { return edgeT[e][pos(adm.edge[e], i)]; }
  const ModuleElement& G(int v, int i, int j) const { return GV[v][pairIndex(adm.vertex[v], i, j)]; }
  const ModuleElement& H(int v, int i) const { return HV[v][pos(adm.vertex[v], i)]; }
};

// Throws SemanticError when a table is missing entries for admissible tuples
// or when module data sit on the wrong cells.
void check_shape(const OrientifoldDatum& d, const DoubleCover& dc);

struct Violation {
  std::string relation;  // "R1".."R13" or "A"
  std::string cell;      // e.g. "edge 3" (lifted cell id)
  std::vector<int> indices;
};

struct ValidationOptions {
  double tolerance = kUnitaryTolerance;
};

std::vector<Violation> validate(const OrientifoldDatum& d, const DoubleCover& dc, ValidationOptions opt = {});

// A datum that passed validation against a particular double cover.
class ValidatedDatum {
 public:
  // Throws SemanticError naming the first violated relation.
  ValidatedDatum(OrientifoldDatum d, const DoubleCover& dc, ValidationOptions opt = {});
  const OrientifoldDatum& datum() const { return d_; }
  const OrientifoldDatum* operator->() const { return &d_; }

 private:
  OrientifoldDatum d_;
};

struct GaugeDatum {
  std::vector<std::vector<Phase>> edgeW;  // per lifted edge, admissible index
  std::vector<std::vector<Phase>> uV;     // per lifted vertex, admissible pair
  std::vector<std::vector<Phase>> hV;     // per lifted vertex, admissible index
  std::vector<std::vector<ModuleElement>> moduleU;  // boundary lifted vertices only
};

GaugeDatum identity_gauge(const OrientifoldDatum& d, const DoubleCover& dc);
// Random gauge with antisymmetric uV and rank-matched module unitaries.
GaugeDatum random_gauge(const OrientifoldDatum& d, const DoubleCover& dc, std::mt19937_64& rng);
// Applying a then b equals applying compose(a, b).
GaugeDatum compose(const GaugeDatum& a, const GaugeDatum& b);
OrientifoldDatum apply_gauge(const OrientifoldDatum& d, const DoubleCover& dc, const GaugeDatum& g);

// Random angle with denominator dividing kRandomDenominator.
inline constexpr std::int64_t kRandomDenominator = 720720;
Phase random_phase(std::mt19937_64& rng);

struct IndexOptions {
  int pairs = 2;       // index set {0..2*pairs-1}, k swaps 2m and 2m+1
  int fixed = 0;       // extra indices fixed by k
  int maxExtra = 1;    // extra indices added per cell on top of incident cells
};

Admissibility random_admissibility(const DoubleCover& dc, const IndexOptions& opt, std::mt19937_64& rng);

OrientifoldDatum identity_datum(const DoubleCover& dc, const Admissibility& adm, int rank);

// The twist is the value a(k,k) of a normalized 2-cocycle of the Jandl group;
// it must satisfy 2a = 0. Throws SemanticError for other groups or for a
// twist that is not a cocycle.
OrientifoldDatum generate_pure_gauge(const DoubleCover& dc, const OrientifoldGroup& group, std::uint64_t seed,
                                     int rank, std::optional<Phase> twist = std::nullopt, IndexOptions idx = {});

// Pure gauge plus a flat background: each face carries a random phase on
// both lifts and each boundary edge a random transport W on lift 0 and
// conj(W) on lift 1. Holonomies of such data are generally nontrivial.
OrientifoldDatum generate_background(const DoubleCover& dc, const OrientifoldGroup& group, std::uint64_t seed,
                                     int rank, std::optional<Phase> twist = std::nullopt, IndexOptions idx = {});

struct Subdivision {
  OrientifoldDatum datum;
  DoubleCover cover;
};

// Bisects surface edge e. The new cells carry values composing to the parent
// ones; with a seed, a random gauge supported on the new cells follows.
// Throws SemanticError if e is not an edge or both its sides lie in one face.
Subdivision subdivide(const OrientifoldDatum& d, const DoubleCover& dc, int e,
                      std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace ohol
