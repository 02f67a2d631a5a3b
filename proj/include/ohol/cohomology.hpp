#pragma once
// Cohomology of a finite group with coefficients in U(1) twisted by a sign
// character, modelled on Q/Z through the bar complex.

#include <cstdint>
#include <optional>
#include <vector>

#include "ohol/group.hpp"
#include "ohol/phase.hpp"

namespace ohol {

// A map Gamma^k -> Q/Z. Tuples are encoded with the first entry most
// significant.
class TwistedCochain {
 public:
  TwistedCochain(int groupSize, int degree);

  int groupSize() const { return n_; }
  int degree() const { return k_; }
  std::size_t size() const { return values_.size(); }
  const Phase& at(const std::vector<int>& tuple) const { return values_[encode(tuple)]; }
  void set(const std::vector<int>& tuple, const Phase& p) { values_[encode(tuple)] = p; }
  const Phase& operator[](std::size_t idx) const { return values_[idx]; }
  Phase& operator[](std::size_t idx) { return values_[idx]; }
  std::size_t encode(const std::vector<int>& tuple) const;
  std::vector<int> decode(std::size_t idx) const;

  TwistedCochain operator+(const TwistedCochain& o) const;
  TwistedCochain operator-() const;
  bool isZero() const;
  // Vanishes whenever some argument is the identity.
  bool normalized(const OrientifoldGroup& g) const;
  friend bool operator==(const TwistedCochain&, const TwistedCochain&) = default;

 private:
  int n_;
  int k_;
  std::vector<Phase> values_;
};

TwistedCochain delta(const OrientifoldGroup& g, const TwistedCochain& c);
bool is_cocycle(const OrientifoldGroup& g, const TwistedCochain& c);
// A cochain b with delta(b) = c, if one exists.
std::optional<TwistedCochain> is_coboundary(const OrientifoldGroup& g, const TwistedCochain& c);

struct CohomologyGroup {
  int degree = 0;
  // Orders of the cyclic summands, ascending, each dividing the next.
  std::vector<std::int64_t> invariantFactors;
  // Number of Q/Z summands; nonzero only in degree 0 with trivial epsilon.
  int divisibleRank = 0;
  // One normalized cocycle per invariant factor, of exactly that order.
  std::vector<TwistedCochain> representatives;

  std::int64_t order() const;  // order of the finite part
};

// Largest product of row and column counts of a coboundary matrix accepted.
inline constexpr std::uint64_t kCohomologySizeCap = 40'000'000;

// Throws SemanticError ("size cap exceeded") when a coboundary matrix is too
// large and std::invalid_argument for a negative degree.
CohomologyGroup cohomology(const OrientifoldGroup& g, int degree);

struct ObstructionClass {
  bool vanishes = false;
  std::optional<TwistedCochain> trivialization;  // v with delta(v) = u
  TwistedCochain representative;                  // the input cocycle
};

// Throws SemanticError when u is not a closed 3-cochain.
ObstructionClass obstruction_o3(const OrientifoldGroup& g, const TwistedCochain& u);

}  // namespace ohol
