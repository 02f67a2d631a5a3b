#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ohol/holonomy.hpp"
#include "test_support.hpp"

using namespace ohol;

namespace {

EnumerationConfig sweep_config(std::uint64_t seed = 0) {
  EnumerationConfig cfg;
  cfg.seed = seed;
  return cfg;
}

// Evaluates every emitted choice and checks each against the first and
// against the holonomy of the double.
void check_all_choices(const ValidatedDatum& vd, const DoubleCover& dc, double tol) {
  auto dbl = holonomy_double(vd, dc);
  std::optional<HolonomyValue> first;
  int count = 0;
  ChoiceEnumerator(dc, vd->adm, sweep_config()).forEach([&](const DomainChoice& c) {
    auto h = holonomy(vd, dc, c);
    if (!first) first = h;
    CHECK(h.agrees(*first, tol));
    CHECK(h.squared().agrees(dbl, tol));
    CHECK(std::abs(h.value) <= std::pow(double(vd->rank), dc.numBoundaryComponents()) + 1e-9);
    ++count;
    return true;
  });
  CHECK(count > 0);
}

}  // namespace

TEST_CASE("identity data have trivial holonomy") {
  for (const auto& m : support::models()) {
    CAPTURE(m);
    auto dc = DoubleCover::build(named_surface(m));
    std::mt19937_64 rng(3);
    for (int rank : {1, 2}) {
      ValidatedDatum vd(identity_datum(dc, random_admissibility(dc, {}, rng), rank), dc);
      auto r = sweep_holonomy(vd, dc, sweep_config());
      CHECK(r.invariant);
      const double expect = std::pow(double(rank), dc.numBoundaryComponents());
      CHECK(std::abs(r.value.value - expect) < 1e-12);
      if (rank == 1 || dc.numBoundaryComponents() == 0) {
        REQUIRE(r.value.exact);
        CHECK(r.value.exact->isIdentity());
      }
    }
  }
}

TEST_CASE("face phases alone give their product on closed surfaces") {
  for (const std::string m : {"torus", "klein", "rp2", "sphere"}) {
    CAPTURE(m);
    auto dc = DoubleCover::build(named_surface(m));
    std::mt19937_64 rng(8);
    auto d = identity_datum(dc, random_admissibility(dc, {}, rng), 1);
    Phase expect;
    for (int f = 0; f < dc.numFaces(); ++f) {
      Phase beta = random_phase(rng);
      expect *= beta;
      for (auto& x : d.faceB[2 * f]) x = beta;
      for (auto& x : d.faceB[2 * f + 1]) x = beta;
    }
    ValidatedDatum vd(d, dc);
    ChoiceEnumerator(dc, d.adm, sweep_config()).forEach([&](const DomainChoice& c) {
      auto h = holonomy(vd, dc, c);
      REQUIRE(h.exact);
      CHECK(*h.exact == expect);
      return true;
    });
    if (dc.orientable()) CHECK(*holonomy_oriented(vd, dc, *dc.globalSection()).exact == expect);
  }
}

TEST_CASE("annulus with transports U and V has holonomy tr U tr V") {
  auto dc = DoubleCover::build(named_surface("annulus"));
  REQUIRE(dc.numBoundaryComponents() == 2);
  std::mt19937_64 rng(12);
  auto d = identity_datum(dc, random_admissibility(dc, {}, rng), 2);
  const auto& section = *dc.globalSection();
  auto c = section_choice(dc, d.adm, section);
  std::complex<double> expect{1.0, 0.0};
  for (int comp = 0; comp < 2; ++comp) {
    auto u = Unitary::random(2, rng);
    expect *= u.trace();
    const OrientedEdge oe = dc.circle(c.chosenCircle(comp)).front();
    ModuleElement t = oe.dir > 0 ? ModuleElement(u) : ModuleElement(u).inv();
    for (auto& x : d.edgeT[oe.edge]) x = t;
    for (auto& x : d.edgeT[sigma(oe.edge)]) x = t.conj();
  }
  ValidatedDatum vd(d, dc);
  CHECK(std::abs(holonomy_oriented(vd, dc, section).value - expect) < 1e-12);
  CHECK(std::abs(holonomy(vd, dc, c).value - expect) < 1e-12);
  auto r = sweep_holonomy(vd, dc, sweep_config());
  CHECK(r.invariant);
  CHECK(std::abs(r.value.value - expect) < 1e-9);
}

TEST_CASE("holonomy is independent of all choices") {
  auto jandl = jandl_group();
  for (const auto& m : support::models()) {
    CAPTURE(m);
    auto dc = DoubleCover::build(named_surface(m));
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      check_all_choices(ValidatedDatum(generate_pure_gauge(dc, jandl, seed, 1), dc), dc, 0.0);
      check_all_choices(ValidatedDatum(generate_background(dc, jandl, seed, 1), dc), dc, 0.0);
      check_all_choices(ValidatedDatum(generate_background(dc, jandl, seed, 2, Phase::half()), dc), dc, 1e-7);
    }
  }
}

TEST_CASE("pure gauge data on the mobius strip have trivial holonomy") {
  auto dc = DoubleCover::build(named_surface("mobius"));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ValidatedDatum vd(generate_pure_gauge(dc, jandl_group(), seed, 1), dc);
    auto r = sweep_holonomy(vd, dc, sweep_config(seed));
    CHECK(r.invariant);
    REQUIRE(r.value.exact);
    CHECK(r.value.exact->isIdentity());
  }
}

TEST_CASE("gauge invariance") {
  auto jandl = jandl_group();
  for (const auto& m : support::models()) {
    CAPTURE(m);
    auto dc = DoubleCover::build(named_surface(m));
    std::mt19937_64 rng(21);
    for (int rank : {1, 2, 3}) {
      auto d = generate_background(dc, jandl, 30 + rank, rank);
      ValidatedDatum vd(d, dc);
      std::vector<DomainChoice> choices;
      EnumerationConfig cfg = sweep_config(rank);
      cfg.cap = 1;  // force sampling
      cfg.samples = 20;
      ChoiceEnumerator(dc, d.adm, cfg).forEach([&](const DomainChoice& c) {
        choices.push_back(c);
        return true;
      });
      for (int rep = 0; rep < 5; ++rep) {
        ValidatedDatum gd(apply_gauge(d, dc, random_gauge(d, dc, rng)), dc);
        for (const auto& c : choices) CHECK(holonomy(gd, dc, c).agrees(holonomy(vd, dc, c), 1e-9));
      }
    }
  }
}

TEST_CASE("oriented reductions") {
  auto jandl = jandl_group();
  for (const std::string m : {"torus", "annulus", "disk", "sphere"}) {
    CAPTURE(m);
    auto dc = DoubleCover::build(named_surface(m));
    for (int rank : {1, 2}) {
      ValidatedDatum vd(generate_background(dc, jandl, 40 + rank, rank), dc);
      auto section = *dc.globalSection();
      for (int flip = 0; flip < 2; ++flip) {
        if (flip)
          for (auto& s : section) s ^= 1;
        auto c = section_choice(dc, vd->adm, section);
        CHECK(f_bar(dc, c).empty());
        auto h = holonomy(vd, dc, c), ho = holonomy_oriented(vd, dc, section);
        // Exact at rank one; above it the circles may start at different
        // points, which only reorders a cyclic product.
        CHECK(h.agrees(ho, rank == 1 ? 0.0 : 1e-12));
      }
    }
  }
  // Without boundary nothing floating enters, even above rank one.
  for (const auto& m : {"torus", "klein", "rp2", "sphere"}) {
    auto dc = DoubleCover::build(named_surface(m));
    ValidatedDatum vd(generate_background(dc, jandl, 3, 3), dc);
    CHECK(holonomy_double(vd, dc).exact.has_value());
    CHECK(sweep_holonomy(vd, dc, sweep_config()).value.exact.has_value());
  }
}

TEST_CASE("refinement invariance") {
  auto jandl = jandl_group();
  for (const auto& m : support::models()) {
    CAPTURE(m);
    auto dc = DoubleCover::build(named_surface(m));
    for (int rank : {1, 2}) {
      OrientifoldDatum d = generate_background(dc, jandl, 50 + rank, rank, Phase::half());
      DoubleCover cover = dc;
      auto before = sweep_holonomy(ValidatedDatum(d, cover), cover, sweep_config());
      std::mt19937_64 rng(60 + rank);
      for (int step = 0; step < 5; ++step) {
        std::optional<Subdivision> s;
        while (!s) {
          // Edges with both sides on one face cannot be bisected; draw again.
          int e = std::uniform_int_distribution<int>(0, cover.numEdges() - 1)(rng);
          try {
            s = subdivide(d, cover, e, rng());
          } catch (const SemanticError&) {
          }
        }
        d = std::move(s->datum);
        cover = std::move(s->cover);
        auto after = sweep_holonomy(ValidatedDatum(d, cover), cover, sweep_config(step));
        CHECK(after.invariant);
        CHECK(after.value.agrees(before.value, 1e-9));
      }
    }
  }
}

TEST_CASE("the Z2 twist acts through w1 squared") {
  auto jandl = jandl_group();
  // Shift of the holonomy when f is twisted by one half.
  const std::vector<std::pair<std::string, Phase>> expected = {
      {"mobius", Phase::half()}, {"rp2", Phase::half()}, {"klein", Phase()},  {"torus", Phase()},
      {"annulus", Phase()},      {"disk", Phase()},      {"sphere", Phase()}};
  for (const auto& [m, shift] : expected) {
    CAPTURE(m);
    auto dc = DoubleCover::build(named_surface(m));
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto plain = sweep_holonomy(ValidatedDatum(generate_background(dc, jandl, seed, 1), dc), dc, sweep_config());
      auto twisted =
          sweep_holonomy(ValidatedDatum(generate_background(dc, jandl, seed, 1, Phase::half()), dc), dc, sweep_config());
      CHECK(plain.invariant);
      CHECK(twisted.invariant);
      REQUIRE(plain.value.exact);
      REQUIRE(twisted.value.exact);
      CHECK(*twisted.value.exact / *plain.value.exact == shift);
    }
  }
}

TEST_CASE("invalid requests") {
  auto dc = DoubleCover::build(named_surface("klein"));
  ValidatedDatum vd(generate_pure_gauge(dc, jandl_group(), 1, 1), dc);
  CHECK_THROWS_AS(holonomy_oriented(vd, dc, {0, 0}), SemanticError);
  auto torus = DoubleCover::build(named_surface("torus"));
  ValidatedDatum vt(generate_pure_gauge(torus, jandl_group(), 1, 1), torus);
  auto bad = *torus.globalSection();
  bad[0] ^= 1;
  CHECK_THROWS_AS(holonomy_oriented(vt, torus, bad), SemanticError);
  auto c = section_choice(torus, vt->adm, *torus.globalSection());
  c.vertexLift.clear();
  CHECK_THROWS_AS(holonomy(vt, torus, c), SemanticError);
}
