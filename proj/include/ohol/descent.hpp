#pragma once
// Flat equivariant local data over a finite index set and their descent to
// the quotient by the orientation-preserving subgroup.
//
// Indices sit over base points: Gamma acts on the index set I and on a base
// set X, with the projection I -> X equivariant and ker(epsilon) acting
// freely on X. Tables are only meaningful on tuples over a common base point.
// Written additively, with (gamma u)_ij = epsilon(gamma) u(gamma^-1 i, gamma^-1 j):
//   E3   g(ijl) + g(jml) = g(iml) + g(ijm)
//   E12  (gamma g)(ijl) - g(ijl) = -chi^gamma_ij + chi^gamma_il - chi^gamma_jl
//   E15  (g1 chi^g2)_ij - chi^{g1 g2}_ij + chi^g1_ij = f^{g1,g2}_j - f^{g1,g2}_i
//   E13  (g1 f^{g2,g3}) - f^{g1 g2,g3} + f^{g1,g2 g3} - f^{g1,g2} = 0
//   N    chi^1 = 0 and f^{1,g} = f^{g,1} = 0
// and for the module layer, with gamma acting on matrices by conjugation when
// epsilon(gamma) = -1:
//   M1   G_ij G_jl = exp(2 pi i g_ijl) G_il
//   M2   (gamma G)_ij = (H^gamma_i)^-1 G_ij H^gamma_j exp(-2 pi i chi^gamma_ij)
//   M3   H^{g1 g2}_i = H^g1_i (g1 H^g2)_i exp(-2 pi i f^{g1,g2}_i)
// A Jandl datum is the case of the Jandl group; a plain datum the case of the
// trivial group.

#include <cstdint>
#include <optional>
#include <vector>

#include "ohol/group.hpp"
#include "ohol/local_data.hpp"
#include "ohol/phase.hpp"
#include "ohol/unitary.hpp"

namespace ohol {

struct IndexCover {
  IndexAction indices;          // Gamma on I
  IndexAction base;             // Gamma on X
  std::vector<int> projection;  // I -> X
};

// Throws SemanticError unless both actions are actions, the projection is
// equivariant and ker(epsilon) acts freely on the base.
void check_cover(const OrientifoldGroup& g, const IndexCover& c);

struct FlatModule {
  std::vector<ModuleElement> G;  // |I|^2, over common base points
  std::vector<ModuleElement> H;  // |Gamma| * |I|
};

class FlatEquivariantDatum {
 public:
  FlatEquivariantDatum(OrientifoldGroup group, IndexCover cover, int rank = 1, bool withModule = false);

  const OrientifoldGroup& group() const { return group_; }
  const IndexCover& cover() const { return cover_; }
  int numIndices() const { return cover_.indices.size; }
  int rank() const { return rank_; }
  bool samePoint(int i, int j) const { return cover_.projection[i] == cover_.projection[j]; }

  Phase& g(int i, int j, int l) { return g_[(i * n() + j) * n() + l]; }
  const Phase& g(int i, int j, int l) const { return g_[(i * n() + j) * n() + l]; }
  Phase& chi(int gamma, int i, int j) { return chi_[(gamma * n() + i) * n() + j]; }
  const Phase& chi(int gamma, int i, int j) const { return chi_[(gamma * n() + i) * n() + j]; }
  Phase& f(int g1, int g2, int i) { return f_[(g1 * group_.size() + g2) * n() + i]; }
  const Phase& f(int g1, int g2, int i) const { return f_[(g1 * group_.size() + g2) * n() + i]; }

  bool hasModule() const { return module_.has_value(); }
  ModuleElement& G(int i, int j) { return module_->G[i * n() + j]; }
  const ModuleElement& G(int i, int j) const { return module_->G[i * n() + j]; }
  ModuleElement& H(int gamma, int i) { return module_->H[gamma * n() + i]; }
  const ModuleElement& H(int gamma, int i) const { return module_->H[gamma * n() + i]; }
  void dropModule() { module_.reset(); }

  friend bool operator==(const FlatEquivariantDatum& a, const FlatEquivariantDatum& b);

 private:
  int n() const { return cover_.indices.size; }
  OrientifoldGroup group_;
  IndexCover cover_;
  int rank_;
  std::vector<Phase> g_, chi_, f_;
  std::optional<FlatModule> module_;
};

// Violations of E3, E12, E15, E13, N and, with a module, M1..M3.
std::vector<Violation> validate_flat(const FlatEquivariantDatum& d, ValidationOptions opt = {});

struct FlatGauge {
  std::vector<Phase> u;  // |I|^2
  std::vector<Phase> h;  // |Gamma| * |I|, zero for the identity
  std::optional<std::vector<ModuleElement>> U;  // |I|, with a module
};

FlatGauge identity_flat_gauge(const FlatEquivariantDatum& d);
FlatGauge random_flat_gauge(const FlatEquivariantDatum& d, std::mt19937_64& rng);
FlatEquivariantDatum apply_flat_gauge(const FlatEquivariantDatum& d, const FlatGauge& gauge);

// Identity datum, then a normalized 2-cocycle of the group added to f
// (only without a module), then a random gauge.
FlatEquivariantDatum random_flat_datum(const OrientifoldGroup& group, const IndexCover& cover, std::uint64_t seed,
                                       int rank = 1, bool withModule = false);

// Gamma acting on X = Gamma (regular) and on I = X x {0..copies-1}.
IndexCover regular_cover(const OrientifoldGroup& group, int copies);

struct QuotientMap {
  std::vector<int> indexClass;  // I -> I'
  std::vector<int> baseClass;   // X -> X'
  std::vector<int> representative;  // I' -> I over the least point of its base class
  std::vector<int> twist;       // X' -> the element gamma with gamma^-1 rho(x') = rho(k x'), or identity
};

QuotientMap quotient_map(const FlatEquivariantDatum& d);

// Jandl datum over I' when epsilon is nontrivial, plain datum otherwise.
// Carries the module layer along when present. Throws SemanticError when
// ker(epsilon) does not act freely.
FlatEquivariantDatum quotient(const FlatEquivariantDatum& d);

// Only the module layer of the quotient.
FlatModule quotient_module(const FlatEquivariantDatum& d);

// The gauge on the quotient induced by a gauge upstairs.
FlatGauge induced_gauge(const FlatEquivariantDatum& d, const FlatGauge& gauge);

struct BaseLift {
  IndexAction base;            // Gamma on X
  std::vector<int> toQuotient; // X -> X'
};

// A Gamma-set X over the base of a quotient datum: a regular orbit over each
// free pair and Gamma/{1,t} over each fixed point, t an involution with
// epsilon(t) = -1. Points are listed fibre by fibre in the order of X'.
BaseLift lift_base(const OrientifoldGroup& group, const FlatEquivariantDatum& quotientDatum);

// The pullback over I = I' x_{X'} X, with trivial data along ker(epsilon)
// and the quotient's data along the other coset. Throws SemanticError when
// the base map is not the quotient by ker(epsilon) or the groups disagree.
FlatEquivariantDatum canonical_pullback(const FlatEquivariantDatum& quotientDatum, const OrientifoldGroup& group,
                                        const BaseLift& lift);

}  // namespace ohol
