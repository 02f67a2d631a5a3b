#include "ohol/unitary.hpp"

#include <cmath>

namespace ohol {

Unitary::Unitary(Eigen::MatrixXcd m, double tol) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) throw InputError("unitary must be a nonempty square matrix");
  if (unitarityDefect() > tol) throw InputError("matrix is not unitary within tolerance");
}

Unitary Unitary::identity(int n) { return Unitary(Eigen::MatrixXcd::Identity(n, n), Unchecked{}); }

Unitary Unitary::scalar(int n, const Phase& p) {
  return Unitary(Eigen::MatrixXcd::Identity(n, n) * p.value(), Unchecked{});
}

Unitary Unitary::random(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = {gauss(rng), gauss(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases of R's diagonal so the distribution is Haar.
  for (int j = 0; j < n; ++j) {
    std::complex<double> d = r(j, j);
    double a = std::abs(d);
    if (a > 0) q.col(j) *= d / a;
  }
  return Unitary(q, Unchecked{});
}

Unitary Unitary::operator*(const Unitary& other) const {
  if (rank() != other.rank()) throw SemanticError("unitary rank mismatch");
  return Unitary(m_ * other.m_, Unchecked{});
}

double Unitary::unitarityDefect() const {
  Eigen::MatrixXcd d = m_ * m_.adjoint() - Eigen::MatrixXcd::Identity(m_.rows(), m_.cols());
  return d.cwiseAbs().maxCoeff();
}

double Unitary::maxDiff(const Unitary& a, const Unitary& b) {
  if (a.rank() != b.rank()) throw SemanticError("unitary rank mismatch");
  return (a.m_ - b.m_).cwiseAbs().maxCoeff();
}

Unitary unitary_path_product(const std::vector<Unitary>& factors) {
  if (factors.empty()) throw SemanticError("empty path product");
  Unitary out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = out * factors[i];
  return out;
}

ModuleElement::ModuleElement(Unitary u) : v_(std::move(u)) {
  if (std::get<Unitary>(v_).rank() == 1) throw SemanticError("rank-1 module data must be exact phases");
}

ModuleElement ModuleElement::identity(int rank) { return scalar(rank, Phase()); }

ModuleElement ModuleElement::scalar(int rank, const Phase& p) {
  if (rank == 1) return ModuleElement(p);
  return ModuleElement(Unitary::scalar(rank, p));
}

int ModuleElement::rank() const { return exact() ? 1 : unitary().rank(); }

ModuleElement ModuleElement::operator*(const ModuleElement& o) const {
  if (exact() != o.exact()) throw SemanticError("module element rank mismatch");
  if (exact()) return ModuleElement(phase() * o.phase());
  return ModuleElement(unitary() * o.unitary());
}

ModuleElement ModuleElement::inv() const {
  return exact() ? ModuleElement(phase().inv()) : ModuleElement(unitary().inv());
}

ModuleElement ModuleElement::conj() const {
  return exact() ? ModuleElement(phase().conj()) : ModuleElement(unitary().conj());
}

ModuleElement ModuleElement::scaled(const Phase& p) const {
  return exact() ? ModuleElement(phase() * p) : ModuleElement(unitary().scaled(p));
}

std::complex<double> ModuleElement::trace() const { return exact() ? phase().value() : unitary().trace(); }

bool ModuleElement::near(const ModuleElement& o, double tol) const {
  if (exact() != o.exact()) return false;
  if (exact()) return phase() == o.phase();
  return Unitary::maxDiff(unitary(), o.unitary()) <= tol;
}

}  // namespace ohol
