#pragma once
// Small unitary matrices with complex double entries, and the module-layer
// element type that is an exact Phase at rank 1 and a Unitary above it.

#include <complex>
#include <random>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ohol/phase.hpp"

namespace ohol {

inline constexpr double kUnitaryTolerance = 1e-9;

class Unitary {
 public:
  // Checks unitarity; throws InputError if max|U U^dagger - 1| exceeds tol.
  explicit Unitary(Eigen::MatrixXcd m, double tol = kUnitaryTolerance);

  static Unitary identity(int n);
  static Unitary scalar(int n, const Phase& p);
  // Haar-distributed sample via QR of a complex Gaussian matrix.
  static Unitary random(int n, std::mt19937_64& rng);

  int rank() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }

  Unitary operator*(const Unitary& other) const;
  Unitary dagger() const { return Unitary(m_.adjoint(), Unchecked{}); }
  Unitary inv() const { return dagger(); }
  Unitary conj() const { return Unitary(m_.conjugate(), Unchecked{}); }
  Unitary scaled(const Phase& p) const { return Unitary(m_ * p.value(), Unchecked{}); }
  std::complex<double> trace() const { return m_.trace(); }
  double unitarityDefect() const;

  static double maxDiff(const Unitary& a, const Unitary& b);

 private:
  struct Unchecked {};
  Unitary(Eigen::MatrixXcd m, Unchecked) : m_(std::move(m)) {}

  Eigen::MatrixXcd m_;
};

// Left-to-right product of the list. Throws SemanticError on rank mismatch
// or an empty list.
Unitary unitary_path_product(const std::vector<Unitary>& factors);

class ModuleElement {
 public:
  explicit ModuleElement(Phase p) : v_(p) {}
  explicit ModuleElement(Unitary u);

  static ModuleElement identity(int rank);
  static ModuleElement scalar(int rank, const Phase& p);

  int rank() const;
  bool exact() const { return std::holds_alternative<Phase>(v_); }
  const Phase& phase() const { return std::get<Phase>(v_); }
  const Unitary& unitary() const { return std::get<Unitary>(v_); }

  ModuleElement operator*(const ModuleElement& o) const;
  ModuleElement inv() const;
  ModuleElement conj() const;
  ModuleElement scaled(const Phase& p) const;
  std::complex<double> trace() const;

  // Exact comparison at rank 1, max-norm distance within tol otherwise.
  bool near(const ModuleElement& o, double tol = kUnitaryTolerance) const;

 private:
  std::variant<Phase, Unitary> v_;
};

}  // namespace ohol
