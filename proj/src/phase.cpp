#include "ohol/phase.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

namespace ohol {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

__int128 floorMod(__int128 a, __int128 m) {
  __int128 r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

Phase Phase::reduce(__int128 p, __int128 q) {
  if (q == 0) throw std::domain_error("phase with zero denominator");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  p = floorMod(p, q);
  __int128 g = gcd128(p, q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  if (p == 0) q = 1;
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  if (q > kMax) throw std::overflow_error("phase denominator exceeds 64 bits");
  return Phase(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q));
}

Phase Phase::fromFraction(std::int64_t p, std::int64_t q) { return reduce(p, q); }

Phase Phase::parse(std::string_view text) {
  auto parseInt = [&](std::string_view s) {
    std::int64_t v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last)
      throw InputError("malformed phase \"" + std::string(text) + "\"");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return fromFraction(parseInt(text), 1);
  std::int64_t q = parseInt(text.substr(slash + 1));
  if (q == 0) throw InputError("phase with zero denominator: \"" + std::string(text) + "\"");
  return fromFraction(parseInt(text.substr(0, slash)), q);
}

Phase Phase::operator*(const Phase& other) const {
  if (den_ == other.den_) return reduce(static_cast<__int128>(num_) + other.num_, den_);
  __int128 g = gcd128(den_, other.den_);
  __int128 l = static_cast<__int128>(den_) / g * other.den_;
  __int128 p = static_cast<__int128>(num_) * (l / den_) + static_cast<__int128>(other.num_) * (l / other.den_);
  return reduce(p, l);
}

Phase Phase::inv() const { return num_ == 0 ? *this : Phase(den_ - num_, den_); }

Phase Phase::pow(std::int64_t k) const {
  __int128 kk = floorMod(k, den_);
  return reduce(kk * num_, den_);
}

std::complex<double> Phase::value() const {
  double a = 2.0 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
  return {std::cos(a), std::sin(a)};
}

std::string Phase::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

}  // namespace ohol
