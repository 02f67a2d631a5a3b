#pragma once
// JSON forms of every artifact, scenes, and report records.
//
// Phases are "p/q" strings. Unitaries are row-major arrays of [re, im]
// pairs. Table entries are keyed "cell:i,j,..." with lifted cell ids.
// Canonical files are dump(2) with sorted keys and a trailing newline.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "ohol/cohomology.hpp"
#include "ohol/descent.hpp"
#include "ohol/double_cover.hpp"
#include "ohol/group.hpp"
#include "ohol/holonomy.hpp"
#include "ohol/local_data.hpp"

namespace ohol {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// All parsers throw InputError naming the offending field.
json phase_to_json(const Phase& p);
Phase phase_from_json(const json& j);
json module_to_json(const ModuleElement& m);
ModuleElement module_from_json(const json& j, int rank);

json surface_to_json(const SurfaceSpec& s);
SurfaceSpec surface_from_json(const json& j);

json group_to_json(const OrientifoldGroup& g);
OrientifoldGroup group_from_json(const json& j);
// "trivial", "jandl", "z2", "z4", "z2xz2", "z2xjandl", "d4", "q8"; or a
// group file.
OrientifoldGroup load_group(const std::string& nameOrPath);
// Comma separated signs such as "1,-1,1,-1".
std::vector<int> parse_epsilon(const std::string& text);

json datum_to_json(const OrientifoldDatum& d);
OrientifoldDatum datum_from_json(const json& j);

json flat_datum_to_json(const FlatEquivariantDatum& d);
FlatEquivariantDatum flat_datum_from_json(const json& j);

json choice_to_json(const DomainChoice& c);
DomainChoice choice_from_json(const json& j);

json violations_to_json(const std::vector<Violation>& v);
json holonomy_value_to_json(const HolonomyValue& v);
json cohomology_to_json(const CohomologyGroup& h);
json cochain_to_json(const TwistedCochain& c);

// Reads and parses a JSON file. Missing files and syntax errors raise
// InputError with the path and, for syntax errors, line and column.
json read_json_file(const std::filesystem::path& path);
std::string canonical_dump(const json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

struct GeneratorSpec {
  std::string kind = "pure_gauge";  // or "background"
  std::uint64_t seed = 0;
  int rank = 1;
  std::optional<Phase> twist;
  IndexOptions indices;
};
json generator_to_json(const GeneratorSpec& g);
GeneratorSpec generator_from_json(const json& j);

// A surface with a datum given explicitly or by a generator, and an optional
// fixed choice. Relative paths resolve against the scene file's directory.
struct Scene {
  SurfaceSpec surface;
  DoubleCover cover;
  OrientifoldDatum datum;
  std::optional<DomainChoice> choice;
  std::optional<GeneratorSpec> generator;
};

Scene scene_from_json(const json& j, const std::filesystem::path& baseDir = {});
Scene load_scene(const std::filesystem::path& path);
json scene_to_json(const SurfaceSpec& surface, const OrientifoldDatum& d, const std::optional<DomainChoice>& choice = {});

OrientifoldDatum generate_datum(const DoubleCover& dc, const GeneratorSpec& g);

}  // namespace ohol
