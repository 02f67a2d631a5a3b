// Command-line front end: validate, holonomy, generate, cohomology,
// classify, descend. Exit codes: 0 ok, 1 semantic failure, 2 input error.

#include <CLI11.hpp>

#include <iostream>
#include <limits>

#include "ohol/io.hpp"

using namespace ohol;

namespace {

constexpr int kOk = 0;
constexpr int kSemantic = 1;
constexpr int kInput = 2;

void emit(const json& report, const std::string& out) {
  if (out.empty()) std::cout << canonical_dump(report);
  else write_text_file(out, canonical_dump(report));
}

json header(const char* command) { return json{{"schema", kSchemaVersion}, {"command", command}}; }

OrientifoldGroup groupWithEpsilon(const std::string& name, const std::string& eps) {
  OrientifoldGroup g = load_group(name);
  if (eps.empty()) return g;
  try {
    return g.withEpsilon(parse_epsilon(eps));
  } catch (const SemanticError& e) {
    throw InputError(e.what());
  }
}

EnumerationConfig sweepConfig(const std::string& sweep, std::uint64_t seed) {
  EnumerationConfig cfg;
  cfg.seed = seed;
  if (sweep == "all") {
    cfg.cap = std::uint64_t{1} << 22;
    cfg.samples = 1000;
    return cfg;
  }
  std::uint64_t n = 0;
  try {
    std::size_t used = 0;
    n = std::stoull(sweep, &used);
    if (used != sweep.size()) throw std::invalid_argument(sweep);
  } catch (const std::exception&) {
    throw InputError("--sweep expects a count or 'all', got '" + sweep + "'");
  }
  cfg.cap = n;
  cfg.samples = n;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holonomy of gerbes with Jandl structure on unoriented surfaces"};
  app.require_subcommand(1);

  std::string scene, out, sweep, surface = "mobius", kind = "pure_gauge", twist, group = "jandl", epsilon, datum;
  std::uint64_t seed = 0;
  int rank = 1, degree = 2;
  double tolerance = kUnitaryTolerance;

  auto* validate = app.add_subcommand("validate", "Check every relation of a scene's datum");
  validate->add_option("--scene", scene, "Scene file")->required();
  validate->add_option("--tolerance", tolerance, "Tolerance for unitary relations");
  validate->add_option("--out", out, "Report file (default: stdout)");

  auto* holo = app.add_subcommand("holonomy", "Evaluate the holonomy and check choice independence");
  holo->add_option("--scene", scene, "Scene file")->required();
  holo->add_option("--sweep", sweep, "Number of choices, or 'all'");
  holo->add_option("--seed", seed, "Seed for sampled choices");
  holo->add_option("--tolerance", tolerance, "Agreement tolerance at rank above one");
  holo->add_option("--out", out, "Report file (default: stdout)");

  auto* gen = app.add_subcommand("generate", "Write a scene with a generated datum");
  gen->add_option("--surface", surface, "Named model or surface file");
  gen->add_option("--kind", kind, "pure_gauge or background");
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("--rank", rank, "Module rank");
  gen->add_option("--twist", twist, "Twist angle p/q (0 or 1/2)");
  gen->add_option("--out", out, "Scene file (default: stdout)");

  auto* coh = app.add_subcommand("cohomology", "Twisted group cohomology with U(1) coefficients");
  coh->add_option("--group", group, "Builtin group name or group file");
  coh->add_option("--epsilon", epsilon, "Sign character, e.g. 1,-1");
  coh->add_option("--degree", degree, "Degree")->required();
  coh->add_option("--out", out, "Report file (default: stdout)");

  auto* cls = app.add_subcommand("classify", "List the twist classes in degree two");
  cls->add_option("--group", group, "Builtin group name or group file");
  cls->add_option("--epsilon", epsilon, "Sign character, e.g. 1,-1");
  cls->add_option("--out", out, "Report file (default: stdout)");

  auto* desc = app.add_subcommand("descend", "Quotient of a flat equivariant datum");
  desc->add_option("--datum", datum, "Flat equivariant datum file")->required();
  desc->add_option("--group", group, "Group file replacing the datum's own group");
  desc->add_option("--tolerance", tolerance, "Tolerance for unitary relations");
  desc->add_option("--out", out, "Report file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*validate) {
      Scene s = load_scene(scene);
      auto violations = ohol::validate(s.datum, s.cover, {tolerance});
      json r = header("validate");
      r["clean"] = violations.empty();
      r["violations"] = violations_to_json(violations);
      emit(r, out);
      return violations.empty() ? kOk : kSemantic;
    }
    if (*holo) {
      Scene s = load_scene(scene);
      ValidatedDatum vd(s.datum, s.cover, {tolerance});
      json r = header("holonomy");
      r["rank"] = vd->rank;
      if (s.choice && sweep.empty()) {
        HolonomyValue h = holonomy(vd, s.cover, *s.choice);
        r["value"] = holonomy_value_to_json(h);
        r["choices_swept"] = 1;
        r["invariant"] = true;
        r["exhaustive"] = false;
        emit(r, out);
        return kOk;
      }
      SweepResult res = sweep_holonomy(vd, s.cover, sweepConfig(sweep.empty() ? "1000" : sweep, seed), tolerance);
      r["value"] = holonomy_value_to_json(res.value);
      r["choices_swept"] = res.swept;
      r["invariant"] = res.invariant;
      r["exhaustive"] = res.exhaustive;
      r["max_deviation"] = res.maxDeviation;
      emit(r, out);
      return res.invariant ? kOk : kSemantic;
    }
    if (*gen) {
      SurfaceSpec spec;
      try {
        spec = named_surface(surface);
      } catch (const std::exception&) {
        spec = surface_from_json(read_json_file(surface));
      }
      DoubleCover dc = DoubleCover::build(spec);
      GeneratorSpec g;
      g.kind = kind;
      g.seed = seed;
      g.rank = rank;
      if (!twist.empty()) g.twist = Phase::parse(twist);
      if (kind != "pure_gauge" && kind != "background") throw InputError("--kind must be pure_gauge or background");
      if (rank < 1) throw InputError("--rank must be positive");
      emit(scene_to_json(spec, generate_datum(dc, g)), out);
      return kOk;
    }
    if (*coh) {
      OrientifoldGroup g = groupWithEpsilon(group, epsilon);
      if (degree < 0) throw InputError("--degree must be non-negative");
      json r = header("cohomology");
      r["group"] = group_to_json(g);
      r["cohomology"] = cohomology_to_json(cohomology(g, degree));
      emit(r, out);
      return kOk;
    }
    if (*cls) {
      OrientifoldGroup g = groupWithEpsilon(group, epsilon);
      CohomologyGroup h2 = cohomology(g, 2);
      json r = header("classify");
      r["group"] = group_to_json(g);
      r["classes"] = h2.order();
      r["invariant_factors"] = h2.invariantFactors;
      // Every class as a combination of the generators, in mixed radix order.
      json twists = json::array();
      for (std::int64_t n = 0; n < h2.order(); ++n) {
        TwistedCochain c(g.size(), 2);
        std::int64_t rest = n;
        std::vector<std::int64_t> coeffs;
        for (std::size_t i = 0; i < h2.invariantFactors.size(); ++i) {
          const std::int64_t m = rest % h2.invariantFactors[i];
          rest /= h2.invariantFactors[i];
          coeffs.push_back(m);
          TwistedCochain part = h2.representatives[i];
          for (std::size_t x = 0; x < part.size(); ++x) part[x] = part[x].pow(m);
          c = c + part;
        }
        twists.push_back({{"coefficients", coeffs}, {"cocycle", cochain_to_json(c)}});
      }
      r["twists"] = twists;
      emit(r, out);
      return kOk;
    }
    if (*desc) {
      json dj = read_json_file(datum);
      if (desc->count("--group")) dj["group"] = group_to_json(load_group(group));
      FlatEquivariantDatum d = flat_datum_from_json(dj);
      json r = header("descend");
      auto upstairs = validate_flat(d, {tolerance});
      r["input_violations"] = violations_to_json(upstairs);
      if (!upstairs.empty()) {
        r["clean"] = false;
        emit(r, out);
        return kSemantic;
      }
      FlatEquivariantDatum q = quotient(d);
      auto violations = validate_flat(q, {tolerance});
      r["clean"] = violations.empty();
      r["violations"] = violations_to_json(violations);
      r["quotient"] = flat_datum_to_json(q);
      emit(r, out);
      return violations.empty() ? kOk : kSemantic;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const SemanticError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSemantic;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSemantic;
  }
  return kOk;
}
