#pragma once
// The local holonomy formula on a triangulated unoriented surface with
// boundary, its oriented specialization, and the holonomy of the double.

#include <complex>
#include <cstdint>
#include <optional>

#include "ohol/double_cover.hpp"
#include "ohol/local_data.hpp"

namespace ohol {

struct HolonomyValue {
  int rank = 1;
  std::optional<Phase> exact;  // present whenever no floating factor entered
  std::complex<double> value{1.0, 0.0};

  static HolonomyValue fromPhase(int rank, const Phase& p) { return {rank, p, p.value()}; }
  // Exact comparison when both sides are exact, else |a - b| <= tol * rank.
  bool agrees(const HolonomyValue& o, double tol) const;
  HolonomyValue squared() const;
};

// Face, cut-edge and boundary contributions for one domain choice.
// Throws SemanticError on an invalid choice.
HolonomyValue holonomy(const ValidatedDatum& d, const DoubleCover& dc, const DomainChoice& c);

// Oriented surfaces only: faces on the sheet given by section, boundary
// circles inside it, lowest admissible indices. Throws SemanticError if the
// section is not a global one.
HolonomyValue holonomy_oriented(const ValidatedDatum& d, const DoubleCover& dc, const std::vector<int>& section);

// Oriented holonomy of the double itself: every lifted face and every
// lifted boundary circle.
HolonomyValue holonomy_double(const ValidatedDatum& d, const DoubleCover& dc);

struct SweepResult {
  HolonomyValue value;       // value at the first emitted choice
  std::uint64_t swept = 0;   // number of choices evaluated
  bool exhaustive = false;
  bool invariant = true;     // all evaluated choices agree
  double maxDeviation = 0;   // largest |h(c) - h(c0)| seen
};

SweepResult sweep_holonomy(const ValidatedDatum& d, const DoubleCover& dc, const EnumerationConfig& cfg,
                           double tol = kUnitaryTolerance);

}  // namespace ohol
