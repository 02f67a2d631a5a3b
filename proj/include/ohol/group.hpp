#pragma once
// Finite orientifold groups (Gamma, epsilon) given by multiplication tables,
// and their actions on finite sets.

#include <string>
#include <vector>

#include "ohol/phase.hpp"

namespace ohol {

class OrientifoldGroup {
 public:
  // Validates the group axioms and that epsilon is a homomorphism to {+1,-1}.
  // Throws InputError otherwise.
  OrientifoldGroup(std::vector<std::string> names, std::vector<std::vector<int>> table, std::vector<int> epsilon);

  int size() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  int epsilon(int a) const { return epsilon_[a]; }
  const std::string& name(int a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::vector<int>& epsilons() const { return epsilon_; }
  bool epsilonTrivial() const;
  // Elements with epsilon = +1.
  std::vector<int> kernel() const;
  // Same table, different sign character.
  OrientifoldGroup withEpsilon(std::vector<int> epsilon) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<int>> table_;
  std::vector<int> epsilon_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

// Z2 = {1, k} with epsilon(k) = -1.
OrientifoldGroup jandl_group();
OrientifoldGroup trivial_group();
// Z_n with trivial epsilon.
OrientifoldGroup cyclic_group(int n);
// Direct product with elements ordered (a, b) -> a * |B| + b and epsilon the
// product of the factors' signs.
OrientifoldGroup direct_product(const OrientifoldGroup& a, const OrientifoldGroup& b);
OrientifoldGroup dihedral_group(int n);  // order 2n
OrientifoldGroup quaternion_group();
// All sign characters of the group's table.
std::vector<std::vector<int>> sign_characters(const OrientifoldGroup& g);

// angle -> epsilon(gamma) * angle.
Phase twisted_action_on_phase(const OrientifoldGroup& g, int gamma, const Phase& p);

struct GroupQuotient {
  OrientifoldGroup group;       // trivial, or the Jandl group
  std::vector<int> projection;  // Gamma -> Gamma'
};
GroupQuotient quotient_group(const OrientifoldGroup& g);

// A left action of Gamma on {0, ..., size-1}; act[gamma][i] = gamma . i.
struct IndexAction {
  int size = 0;
  std::vector<std::vector<int>> act;

  int apply(int gamma, int i) const { return act[gamma][i]; }
};

// Throws SemanticError if the action laws fail.
void check_action(const OrientifoldGroup& g, const IndexAction& a);
// True when no element of ker(epsilon) other than 1 fixes a point.
bool kernel_acts_freely(const OrientifoldGroup& g, const IndexAction& a);
// The regular action of Gamma on itself.
IndexAction regular_action(const OrientifoldGroup& g);

}  // namespace ohol
