#pragma once
// Helpers shared by the surface-level tests.
#include <random>
#include <string>
#include <vector>

#include "ohol/local_data.hpp"

namespace support {

inline const std::vector<std::string>& models() {
  static const std::vector<std::string> m = {"mobius", "klein", "rp2", "torus", "annulus", "disk", "sphere"};
  return m;
}

// Multiplies one random entry of one random nonempty table by a phase other
// than 1. Module entries are rescaled by that phase.
inline void perturb(ohol::OrientifoldDatum& d, std::mt19937_64& rng) {
  using namespace ohol;
  std::vector<std::vector<std::vector<Phase>>*> phases = {&d.faceB, &d.edgeA, &d.gV, &d.edgePi, &d.chiV, &d.fV};
  std::vector<std::vector<std::vector<ModuleElement>>*> modules = {&d.edgeT, &d.GV, &d.HV};
  Phase delta;
  while (delta.isIdentity()) delta = random_phase(rng);
  auto pickCell = [&](auto& table) -> int {
    std::vector<int> cells;
    for (std::size_t c = 0; c < table.size(); ++c)
      if (!table[c].empty()) cells.push_back(static_cast<int>(c));
    if (cells.empty()) return -1;
    return cells[std::uniform_int_distribution<std::size_t>(0, cells.size() - 1)(rng)];
  };
  while (true) {
    std::size_t which = std::uniform_int_distribution<std::size_t>(0, phases.size() + modules.size() - 1)(rng);
    if (which < phases.size()) {
      auto& table = *phases[which];
      int c = pickCell(table);
      if (c < 0) continue;
      auto& row = table[c];
      row[std::uniform_int_distribution<std::size_t>(0, row.size() - 1)(rng)] *= delta;
      return;
    }
    auto& table = *modules[which - phases.size()];
    int c = pickCell(table);
    if (c < 0) continue;
    auto& row = table[c];
    auto& x = row[std::uniform_int_distribution<std::size_t>(0, row.size() - 1)(rng)];
    x = x.scaled(delta);
    return;
  }
}

// Exact on phases, within tol on module entries.
inline bool same_datum(const ohol::OrientifoldDatum& a, const ohol::OrientifoldDatum& b, double tol) {
  if (a.rank != b.rank) return false;
  if (a.faceB != b.faceB || a.edgeA != b.edgeA || a.gV != b.gV || a.edgePi != b.edgePi || a.chiV != b.chiV ||
      a.fV != b.fV)
    return false;
  auto close = [&](const auto& x, const auto& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t c = 0; c < x.size(); ++c) {
      if (x[c].size() != y[c].size()) return false;
      for (std::size_t i = 0; i < x[c].size(); ++i)
        if (!x[c][i].near(y[c][i], tol)) return false;
    }
    return true;
  };
  return close(a.edgeT, b.edgeT) && close(a.GV, b.GV) && close(a.HV, b.HV);
}

inline bool all_identity(const ohol::OrientifoldDatum& d) {
  for (const auto* t : {&d.faceB, &d.edgeA, &d.gV, &d.edgePi, &d.chiV, &d.fV})
    for (const auto& row : *t)
      for (const auto& x : row)
        if (!x.isIdentity()) return false;
  for (const auto* t : {&d.edgeT, &d.GV, &d.HV})
    for (const auto& row : *t)
      for (const auto& x : row)
        if (!x.near(ohol::ModuleElement::identity(d.rank), 1e-12)) return false;
  return true;
}

}  // namespace support
