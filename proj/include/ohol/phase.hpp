#pragma once
// Exact U(1) arithmetic. A Phase stores a reduced rational angle p/q in [0,1)
// and stands for exp(2 pi i p/q).

#include <complex>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ohol {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SemanticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Phase {
 public:
  Phase() = default;

  // Angle p/q mod 1. Throws std::domain_error when q == 0.
  static Phase fromFraction(std::int64_t p, std::int64_t q);
  // Parses "p/q" (or a bare integer). Throws InputError on malformed text.
  static Phase parse(std::string_view text);
  static Phase half() { return fromFraction(1, 2); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool isIdentity() const { return num_ == 0; }

  Phase operator*(const Phase& other) const;
  Phase& operator*=(const Phase& other) { return *this = *this * other; }
  Phase operator/(const Phase& other) const { return *this * other.inv(); }
  Phase& operator/=(const Phase& other) { return *this = *this / other; }
  Phase inv() const;
  Phase pow(std::int64_t k) const;
  // For unimodular values conjugation is inversion.
  Phase conj() const { return inv(); }

  std::complex<double> value() const;
  std::string str() const;

  friend bool operator==(const Phase&, const Phase&) = default;
  friend auto operator<=>(const Phase&, const Phase&) = default;

 private:
  Phase(std::int64_t p, std::int64_t q) : num_(p), den_(q) {}
  static Phase reduce(__int128 p, __int128 q);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace ohol
