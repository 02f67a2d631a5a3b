#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ohol/descent.hpp"

using namespace ohol;

namespace {

OrientifoldGroup klein_four_projection() { return direct_product(cyclic_group(2), jandl_group()); }

// Jandl group on three points, k swapping the first two and fixing the third.
IndexCover jandl_cover_with_fixed_point() {
  IndexCover c;
  c.base.size = 3;
  c.base.act = {{0, 1, 2}, {1, 0, 2}};
  c.indices = c.base;
  c.projection = {0, 1, 2};
  return c;
}

bool close(const FlatEquivariantDatum& a, const FlatEquivariantDatum& b, double tol) {
  if (a.numIndices() != b.numIndices() || a.group().size() != b.group().size() || a.hasModule() != b.hasModule())
    return false;
  const int n = a.numIndices(), G = a.group().size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l)
        if (a.g(i, j, l) != b.g(i, j, l)) return false;
      for (int x = 0; x < G; ++x)
        if (a.chi(x, i, j) != b.chi(x, i, j)) return false;
      if (a.hasModule() && a.samePoint(i, j) && !a.G(i, j).near(b.G(i, j), tol)) return false;
    }
  for (int x = 0; x < G; ++x)
    for (int i = 0; i < n; ++i) {
      for (int y = 0; y < G; ++y)
        if (a.f(x, y, i) != b.f(x, y, i)) return false;
      if (a.hasModule() && !a.H(x, i).near(b.H(x, i), tol)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("covers") {
  auto g = klein_four_projection();
  auto c = regular_cover(g, 2);
  CHECK(c.indices.size == 8);
  CHECK_NOTHROW(check_cover(g, c));
  auto bad = c;
  bad.projection[0] = (bad.projection[0] + 1) % bad.base.size;
  CHECK_THROWS_AS(check_cover(g, bad), SemanticError);
  // The kernel must act freely on the base.
  IndexCover fixed;
  fixed.base = {1, std::vector<std::vector<int>>(4, {0})};
  fixed.indices = fixed.base;
  fixed.projection = {0};
  CHECK_THROWS_AS(check_cover(g, fixed), SemanticError);
  CHECK_NOTHROW(check_cover(jandl_group(), jandl_cover_with_fixed_point()));
}

TEST_CASE("random equivariant data are clean") {
  auto g = klein_four_projection();
  auto cover = regular_cover(g, 2);
  for (std::uint64_t s = 0; s < 10; ++s) {
    CHECK(validate_flat(random_flat_datum(g, cover, s)).empty());
    CHECK(validate_flat(random_flat_datum(g, cover, s, 1, true)).empty());
    CHECK(validate_flat(random_flat_datum(g, cover, s, 2, true)).empty());
  }
}

TEST_CASE("broken entries are reported") {
  auto g = klein_four_projection();
  auto d = random_flat_datum(g, regular_cover(g, 2), 3);
  auto e = d;
  e.g(0, 1, 0) *= Phase::fromFraction(1, 3);
  CHECK_FALSE(validate_flat(e).empty());
  e = d;
  e.f(1, 2, 0) *= Phase::half();
  CHECK_FALSE(validate_flat(e).empty());
  e = d;
  e.chi(g.identity(), 0, 1) *= Phase::half();
  bool normalization = false;
  for (const auto& v : validate_flat(e)) normalization |= (v.relation == "N");
  CHECK(normalization);
}

TEST_CASE("quotients of equivariant data are clean Jandl data") {
  auto g = klein_four_projection();
  auto cover = regular_cover(g, 2);
  for (std::uint64_t s = 0; s < 25; ++s)
    for (int mode = 0; mode < 3; ++mode) {
      const int rank = mode == 2 ? 2 : 1;
      auto d = random_flat_datum(g, cover, s, rank, mode > 0);
      auto q = quotient(d);
      CHECK(q.group().size() == 2);
      CHECK_FALSE(q.group().epsilonTrivial());
      CHECK(q.numIndices() == 4);
      CHECK(q.hasModule() == (mode > 0));
      CHECK(validate_flat(q).empty());
    }
}

TEST_CASE("descent commutes with gauge transformations") {
  auto g = klein_four_projection();
  auto cover = regular_cover(g, 2);
  for (std::uint64_t s = 0; s < 10; ++s)
    for (int mode = 0; mode < 3; ++mode) {
      const int rank = mode == 2 ? 2 : 1;
      auto d = random_flat_datum(g, cover, s, rank, mode > 0);
      std::mt19937_64 rng(s + 100);
      auto gauge = random_flat_gauge(d, rng);
      auto lhs = quotient(apply_flat_gauge(d, gauge));
      auto rhs = apply_flat_gauge(quotient(d), induced_gauge(d, gauge));
      CHECK(close(lhs, rhs, 1e-9));
    }
}

TEST_CASE("pullback and descent are inverse on Jandl data") {
  auto g = klein_four_projection();
  for (std::uint64_t s = 0; s < 25; ++s) {
    auto q = random_flat_datum(jandl_group(), jandl_cover_with_fixed_point(), s);
    auto lift = lift_base(g, q);
    auto pb = canonical_pullback(q, g, lift);
    CHECK(validate_flat(pb).empty());
    CHECK(quotient(pb) == q);
  }
  auto cover = regular_cover(g, 2);
  for (std::uint64_t s = 0; s < 10; ++s)
    for (int mode = 0; mode < 3; ++mode) {
      const int rank = mode == 2 ? 2 : 1;
      auto q = quotient(random_flat_datum(g, cover, s, rank, mode > 0));
      auto pb = canonical_pullback(q, g, lift_base(g, q));
      CHECK(validate_flat(pb).empty());
      CHECK(close(quotient(pb), q, 1e-12));
    }
}

TEST_CASE("trivial epsilon descends to plain data") {
  auto g = cyclic_group(2);
  auto cover = regular_cover(g, 3);
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto d = random_flat_datum(g, cover, s, 1, s % 2 == 1);
    auto q = quotient(d);
    CHECK(q.group().size() == 1);
    CHECK(q.numIndices() == 3);
    CHECK(validate_flat(q).empty());
    auto pb = canonical_pullback(q, g, lift_base(g, q));
    CHECK(validate_flat(pb).empty());
    CHECK(close(quotient(pb), q, 1e-12));
  }
}

TEST_CASE("module layer requirements") {
  auto g = klein_four_projection();
  CHECK_THROWS(FlatEquivariantDatum(g, regular_cover(g, 1), 2, false));
  auto d = random_flat_datum(g, regular_cover(g, 1), 1, 1, true);
  CHECK(quotient_module(d).G.size() == 4u);
  auto plain = d;
  plain.dropModule();
  CHECK_FALSE(plain.hasModule());
  CHECK(validate_flat(plain).empty());
}

TEST_CASE("bad pullback inputs") {
  auto g = klein_four_projection();
  auto q = random_flat_datum(jandl_group(), jandl_cover_with_fixed_point(), 1);
  auto lift = lift_base(g, q);
  auto broken = lift;
  broken.toQuotient.assign(broken.toQuotient.size(), 0);
  CHECK_THROWS_AS(canonical_pullback(q, g, broken), SemanticError);
  CHECK_THROWS_AS(canonical_pullback(q, cyclic_group(4), lift), SemanticError);
}
