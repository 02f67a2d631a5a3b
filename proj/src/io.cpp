#include "ohol/io.hpp"

#include <fstream>
#include <sstream>

namespace ohol {

namespace {

[[noreturn]] void fail(const std::string& what) { throw InputError(what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) fail(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

template <class T>
T get(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    fail(std::string("field '") + what + "' has the wrong type");
  }
}

std::string key(int cell, const std::vector<int>& idx) {
  std::string s = std::to_string(cell) + ":";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s;
}

std::string tupleKey(const std::vector<int>& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s;
}

void checkSchema(const json& j) {
  if (j.contains("schema") && j["schema"] != kSchemaVersion)
    fail("unsupported schema version " + j["schema"].dump());
}

}  // namespace

json phase_to_json(const Phase& p) { return p.str(); }

Phase phase_from_json(const json& j) {
  if (!j.is_string()) fail("phase must be a \"p/q\" string");
  return Phase::parse(j.get<std::string>());
}

json module_to_json(const ModuleElement& m) {
  if (m.exact()) return phase_to_json(m.phase());
  json arr = json::array();
  const auto& mat = m.unitary().matrix();
  for (int r = 0; r < mat.rows(); ++r)
    for (int c = 0; c < mat.cols(); ++c) arr.push_back({mat(r, c).real(), mat(r, c).imag()});
  return arr;
}

ModuleElement module_from_json(const json& j, int rank) {
  if (rank == 1) {
    if (j.is_string()) return ModuleElement(phase_from_json(j));
    fail("rank-1 module entries must be \"p/q\" strings");
  }
  if (!j.is_array() || j.size() != static_cast<std::size_t>(rank * rank))
    fail("unitary must be a row-major array of " + std::to_string(rank * rank) + " [re, im] pairs");
  Eigen::MatrixXcd m(rank, rank);
  for (int r = 0; r < rank; ++r)
    for (int c = 0; c < rank; ++c) {
      const json& e = j[r * rank + c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) fail("unitary entries must be [re, im]");
      m(r, c) = {e[0].get<double>(), e[1].get<double>()};
    }
  return ModuleElement(Unitary(m));
}

json surface_to_json(const SurfaceSpec& s) {
  if (!s.model.empty()) return json{{"model", s.model}};
  json j;
  j["faces"] = s.faces;
  json ids = json::array();
  for (const auto& id : s.identifications)
    ids.push_back({{"a", {id.a.face, id.a.slot}}, {"b", {id.b.face, id.b.slot}}, {"reversing", id.reversing}});
  j["identifications"] = ids;
  if (s.boundary) {
    json b = json::array();
    for (const auto& fe : *s.boundary) b.push_back({fe.face, fe.slot});
    j["boundary"] = b;
  }
  return j;
}

SurfaceSpec surface_from_json(const json& j) {
  if (j.is_object() && j.contains("model")) {
    const auto name = get<std::string>(j["model"], "model");
    try {
      return named_surface(name);
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  SurfaceSpec s;
  s.faces = get<std::vector<std::array<int, 3>>>(field(j, "faces"), "faces");
  auto side = [](const json& x) {
    auto v = get<std::array<int, 2>>(x, "side");
    return FaceEdge{v[0], v[1]};
  };
  for (const json& id : field(j, "identifications"))
    s.identifications.push_back({side(field(id, "a")), side(field(id, "b")), get<bool>(field(id, "reversing"), "reversing")});
  if (j.contains("boundary")) {
    std::vector<FaceEdge> b;
    for (const json& x : j["boundary"]) b.push_back(side(x));
    s.boundary = b;
  }
  return s;
}

json group_to_json(const OrientifoldGroup& g) {
  return json{{"elements", g.names()}, {"table", g.table()}, {"epsilon", g.epsilons()}};
}

OrientifoldGroup group_from_json(const json& j) {
  return OrientifoldGroup(get<std::vector<std::string>>(field(j, "elements"), "elements"),
                          get<std::vector<std::vector<int>>>(field(j, "table"), "table"),
                          get<std::vector<int>>(field(j, "epsilon"), "epsilon"));
}

OrientifoldGroup load_group(const std::string& s) {
  if (s == "trivial") return trivial_group();
  if (s == "jandl") return jandl_group();
  if (s == "z2") return cyclic_group(2);
  if (s == "z4") return cyclic_group(4);
  if (s == "z2xz2") return direct_product(cyclic_group(2), cyclic_group(2));
  if (s == "z2xjandl") return direct_product(cyclic_group(2), jandl_group());
  if (s == "d4") return dihedral_group(4);
  if (s == "q8") return quaternion_group();
  return group_from_json(read_json_file(s));
}

std::vector<int> parse_epsilon(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "1" || item == "+1") out.push_back(1);
    else if (item == "-1") out.push_back(-1);
    else fail("epsilon entries must be 1 or -1, got '" + item + "'");
  }
  return out;
}

namespace {

template <class Emit>
void forTuples(const std::vector<int>& set, int arity, Emit&& emit) {
  std::vector<int> idx(arity);
  std::vector<std::size_t> pos(arity, 0);
  if (set.empty()) return;
  for (;;) {
    for (int a = 0; a < arity; ++a) idx[a] = set[pos[a]];
    emit(idx);
    int a = arity - 1;
    while (a >= 0 && ++pos[a] == set.size()) pos[a--] = 0;
    if (a < 0) return;
  }
}

json phaseTable(const std::vector<std::vector<Phase>>& t, const std::vector<std::vector<int>>& fam, int arity) {
  json out = json::object();
  for (std::size_t c = 0; c < t.size(); ++c) {
    std::size_t n = 0;
    forTuples(fam[c], arity, [&](const std::vector<int>& idx) { out[key(static_cast<int>(c), idx)] = t[c][n++].str(); });
  }
  return out;
}

json moduleTable(const std::vector<std::vector<ModuleElement>>& t, const std::vector<std::vector<int>>& fam, int arity) {
  json out = json::object();
  for (std::size_t c = 0; c < t.size(); ++c) {
    if (t[c].empty()) continue;
    std::size_t n = 0;
    forTuples(fam[c], arity, [&](const std::vector<int>& idx) { out[key(static_cast<int>(c), idx)] = module_to_json(t[c][n++]); });
  }
  return out;
}

// Reads a keyed table back into the flattened layout, requiring every
// admissible tuple and nothing else.
template <class T, class Parse>
std::vector<std::vector<T>> readTable(const json& j, const char* name, const std::vector<std::vector<int>>& fam, int arity,
                                      const std::vector<bool>& present, const T& fill, Parse&& parse) {
  if (!j.is_object()) fail(std::string("table '") + name + "' must be an object");
  std::vector<std::vector<T>> out(fam.size());
  std::size_t used = 0;
  for (std::size_t c = 0; c < fam.size(); ++c) {
    if (!present[c]) continue;
    forTuples(fam[c], arity, [&](const std::vector<int>& idx) {
      auto it = j.find(key(static_cast<int>(c), idx));
      if (it == j.end()) fail(std::string("missing entry ") + name + " " + key(static_cast<int>(c), idx));
      out[c].push_back(parse(*it));
      ++used;
    });
  }
  if (used != j.size()) fail(std::string("table '") + name + "' has entries outside the admissible tuples");
  (void)fill;
  return out;
}

}  // namespace

json datum_to_json(const OrientifoldDatum& d) {
  json j;
  j["schema"] = kSchemaVersion;
  j["rank"] = d.rank;
  j["indices"] = d.adm.numIndices;
  j["k"] = d.adm.k;
  j["adm"] = {{"face", d.adm.face}, {"edge", d.adm.edge}, {"vertex", d.adm.vertex}};
  j["faceB"] = phaseTable(d.faceB, d.adm.face, 1);
  j["edgeA"] = phaseTable(d.edgeA, d.adm.edge, 2);
  j["gV"] = phaseTable(d.gV, d.adm.vertex, 3);
  j["edgePi"] = phaseTable(d.edgePi, d.adm.edge, 1);
  j["chiV"] = phaseTable(d.chiV, d.adm.vertex, 2);
  j["fV"] = phaseTable(d.fV, d.adm.vertex, 1);
  j["edgeT"] = moduleTable(d.edgeT, d.adm.edge, 1);
  j["GV"] = moduleTable(d.GV, d.adm.vertex, 2);
  j["HV"] = moduleTable(d.HV, d.adm.vertex, 1);
  return j;
}

OrientifoldDatum datum_from_json(const json& j) {
  checkSchema(j);
  OrientifoldDatum d;
  d.rank = get<int>(field(j, "rank"), "rank");
  if (d.rank < 1) fail("rank must be positive");
  d.adm.numIndices = get<int>(field(j, "indices"), "indices");
  d.adm.k = get<std::vector<int>>(field(j, "k"), "k");
  const json& adm = field(j, "adm");
  d.adm.face = get<std::vector<std::vector<int>>>(field(adm, "face"), "adm.face");
  d.adm.edge = get<std::vector<std::vector<int>>>(field(adm, "edge"), "adm.edge");
  d.adm.vertex = get<std::vector<std::vector<int>>>(field(adm, "vertex"), "adm.vertex");
  auto all = [](std::size_t n) { return std::vector<bool>(n, true); };
  const Phase zero;
  d.faceB = readTable(field(j, "faceB"), "faceB", d.adm.face, 1, all(d.adm.face.size()), zero, phase_from_json);
  d.edgeA = readTable(field(j, "edgeA"), "edgeA", d.adm.edge, 2, all(d.adm.edge.size()), zero, phase_from_json);
  d.gV = readTable(field(j, "gV"), "gV", d.adm.vertex, 3, all(d.adm.vertex.size()), zero, phase_from_json);
  d.edgePi = readTable(field(j, "edgePi"), "edgePi", d.adm.edge, 1, all(d.adm.edge.size()), zero, phase_from_json);
  d.chiV = readTable(field(j, "chiV"), "chiV", d.adm.vertex, 2, all(d.adm.vertex.size()), zero, phase_from_json);
  d.fV = readTable(field(j, "fV"), "fV", d.adm.vertex, 1, all(d.adm.vertex.size()), zero, phase_from_json);
  // Module tables live on the cells that carry keys; the shape check against
  // the surface decides whether those are the boundary cells.
  auto present = [&](const json& t, std::size_t n) {
    std::vector<bool> p(n, false);
    if (!t.is_object()) fail("module tables must be objects");
    for (auto it = t.begin(); it != t.end(); ++it) {
      const auto colon = it.key().find(':');
      std::size_t c = 0;
      try {
        c = std::stoul(it.key().substr(0, colon));
      } catch (const std::exception&) {
        fail("malformed table key '" + it.key() + "'");
      }
      if (colon == std::string::npos || c >= n) fail("malformed table key '" + it.key() + "'");
      p[c] = true;
    }
    return p;
  };
  const ModuleElement one = ModuleElement::identity(d.rank);
  auto parseModule = [&](const json& x) { return module_from_json(x, d.rank); };
  const json& T = field(j, "edgeT");
  const json& G = field(j, "GV");
  const json& H = field(j, "HV");
  d.edgeT = readTable(T, "edgeT", d.adm.edge, 1, present(T, d.adm.edge.size()), one, parseModule);
  d.GV = readTable(G, "GV", d.adm.vertex, 2, present(G, d.adm.vertex.size()), one, parseModule);
  d.HV = readTable(H, "HV", d.adm.vertex, 1, present(H, d.adm.vertex.size()), one, parseModule);
  return d;
}

json flat_datum_to_json(const FlatEquivariantDatum& d) {
  json j;
  j["schema"] = kSchemaVersion;
  j["group"] = group_to_json(d.group());
  j["rank"] = d.rank();
  j["indices"] = d.cover().indices.act;
  j["base"] = d.cover().base.act;
  j["projection"] = d.cover().projection;
  const int n = d.numIndices(), N = d.group().size();
  json g = json::object(), chi = json::object(), f = json::object(), G = json::object(), H = json::object();
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) {
      if (!d.samePoint(i, a)) continue;
      for (int b = 0; b < n; ++b)
        if (d.samePoint(i, b)) g[tupleKey({i, a, b})] = d.g(i, a, b).str();
      for (int gamma = 0; gamma < N; ++gamma) chi[key(gamma, {i, a})] = d.chi(gamma, i, a).str();
      if (d.hasModule()) G[tupleKey({i, a})] = module_to_json(d.G(i, a));
    }
  for (int g1 = 0; g1 < N; ++g1)
    for (int i = 0; i < n; ++i) {
      for (int g2 = 0; g2 < N; ++g2) f[tupleKey({g1, g2}) + ":" + std::to_string(i)] = d.f(g1, g2, i).str();
      if (d.hasModule()) H[key(g1, {i})] = module_to_json(d.H(g1, i));
    }
  j["g"] = g;
  j["chi"] = chi;
  j["f"] = f;
  if (d.hasModule()) j["module"] = {{"G", G}, {"H", H}};
  return j;
}

FlatEquivariantDatum flat_datum_from_json(const json& j) {
  checkSchema(j);
  OrientifoldGroup group = group_from_json(field(j, "group"));
  IndexCover cover;
  cover.indices.act = get<std::vector<std::vector<int>>>(field(j, "indices"), "indices");
  cover.base.act = get<std::vector<std::vector<int>>>(field(j, "base"), "base");
  cover.projection = get<std::vector<int>>(field(j, "projection"), "projection");
  cover.indices.size = cover.indices.act.empty() ? 0 : static_cast<int>(cover.indices.act.front().size());
  cover.base.size = cover.base.act.empty() ? 0 : static_cast<int>(cover.base.act.front().size());
  if (static_cast<int>(cover.indices.act.size()) != group.size() || static_cast<int>(cover.base.act.size()) != group.size())
    fail("actions need one row per group element");
  const int rank = get<int>(field(j, "rank"), "rank");
  FlatEquivariantDatum d(group, cover, rank, j.contains("module"));
  const int n = d.numIndices(), N = group.size();
  auto entry = [&](const json& t, const char* name, const std::string& k) -> const json& {
    auto it = t.find(k);
    if (it == t.end()) fail(std::string("missing entry ") + name + " " + k);
    return *it;
  };
  const json& g = field(j, "g");
  const json& chi = field(j, "chi");
  const json& f = field(j, "f");
  const json* G = nullptr;
  const json* H = nullptr;
  if (d.hasModule()) {
    G = &field(j["module"], "G");
    H = &field(j["module"], "H");
  }
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) {
      if (!d.samePoint(i, a)) continue;
      for (int b = 0; b < n; ++b)
        if (d.samePoint(i, b)) d.g(i, a, b) = phase_from_json(entry(g, "g", tupleKey({i, a, b})));
      for (int gamma = 0; gamma < N; ++gamma) d.chi(gamma, i, a) = phase_from_json(entry(chi, "chi", key(gamma, {i, a})));
      if (G) d.G(i, a) = module_from_json(entry(*G, "G", tupleKey({i, a})), rank);
    }
  for (int g1 = 0; g1 < N; ++g1)
    for (int i = 0; i < n; ++i) {
      for (int g2 = 0; g2 < N; ++g2)
        d.f(g1, g2, i) = phase_from_json(entry(f, "f", tupleKey({g1, g2}) + ":" + std::to_string(i)));
      if (H) d.H(g1, i) = module_from_json(entry(*H, "H", key(g1, {i})), rank);
    }
  return d;
}

json choice_to_json(const DomainChoice& c) {
  return json{{"sheet", c.sheet},           {"boundary_lift", c.boundaryLift}, {"edge_lift", c.edgeLift},
              {"vertex_lift", c.vertexLift}, {"face_index", c.faceIndex},       {"edge_index", c.edgeIndex},
              {"vertex_index", c.vertexIndex}};
}

DomainChoice choice_from_json(const json& j) {
  DomainChoice c;
  auto vec = [&](const char* k) { return get<std::vector<int>>(field(j, k), k); };
  c.sheet = vec("sheet");
  c.boundaryLift = vec("boundary_lift");
  c.edgeLift = vec("edge_lift");
  c.vertexLift = vec("vertex_lift");
  c.faceIndex = vec("face_index");
  c.edgeIndex = vec("edge_index");
  c.vertexIndex = vec("vertex_index");
  return c;
}

json violations_to_json(const std::vector<Violation>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back({{"relation", x.relation}, {"cell", x.cell}, {"indices", x.indices}});
  return out;
}

json holonomy_value_to_json(const HolonomyValue& v) {
  if (v.exact) return v.exact->str();
  return json::array({v.value.real(), v.value.imag()});
}

json cochain_to_json(const TwistedCochain& c) {
  json out = json::object();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].isIdentity()) out[tupleKey(c.decode(i))] = c[i].str();
  return out;
}

json cohomology_to_json(const CohomologyGroup& h) {
  json reps = json::array();
  for (std::size_t i = 0; i < h.representatives.size(); ++i)
    reps.push_back({{"order", h.invariantFactors[i]}, {"cocycle", cochain_to_json(h.representatives[i])}});
  return json{{"degree", h.degree},
              {"invariant_factors", h.invariantFactors},
              {"divisible_rank", h.divisibleRank},
              {"order", h.order()},
              {"representatives", reps}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) + ": parse error: " + e.what());
  }
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail("cannot write " + path.string());
  out << text;
  if (!out) fail("failed writing " + path.string());
}

json generator_to_json(const GeneratorSpec& g) {
  json j{{"kind", g.kind},
         {"seed", g.seed},
         {"rank", g.rank},
         {"pairs", g.indices.pairs},
         {"fixed", g.indices.fixed},
         {"max_extra", g.indices.maxExtra}};
  if (g.twist) j["twist"] = g.twist->str();
  return j;
}

GeneratorSpec generator_from_json(const json& j) {
  GeneratorSpec g;
  if (j.contains("kind")) g.kind = get<std::string>(j["kind"], "kind");
  if (g.kind != "pure_gauge" && g.kind != "background") fail("generator kind must be pure_gauge or background");
  if (j.contains("seed")) g.seed = get<std::uint64_t>(j["seed"], "seed");
  if (j.contains("rank")) g.rank = get<int>(j["rank"], "rank");
  if (j.contains("twist")) g.twist = phase_from_json(j["twist"]);
  if (j.contains("pairs")) g.indices.pairs = get<int>(j["pairs"], "pairs");
  if (j.contains("fixed")) g.indices.fixed = get<int>(j["fixed"], "fixed");
  if (j.contains("max_extra")) g.indices.maxExtra = get<int>(j["max_extra"], "max_extra");
  if (g.rank < 1) fail("generator rank must be positive");
  return g;
}

OrientifoldDatum generate_datum(const DoubleCover& dc, const GeneratorSpec& g) {
  if (g.kind == "background") return generate_background(dc, jandl_group(), g.seed, g.rank, g.twist, g.indices);
  return generate_pure_gauge(dc, jandl_group(), g.seed, g.rank, g.twist, g.indices);
}

Scene scene_from_json(const json& j, const std::filesystem::path& baseDir) {
  checkSchema(j);
  auto resolve = [&](const json& x) -> json {
    if (x.is_string()) return read_json_file(baseDir / x.get<std::string>());
    return x;
  };
  Scene s;
  s.surface = surface_from_json(resolve(field(j, "surface")));
  s.cover = DoubleCover::build(s.surface);
  if (j.contains("group")) {
    OrientifoldGroup g = group_from_json(resolve(j["group"]));
    if (g.size() != 2 || g.epsilonTrivial()) fail("scene group must be the Jandl group");
  }
  if (j.contains("datum")) {
    s.datum = datum_from_json(resolve(j["datum"]));
  } else if (j.contains("generator")) {
    s.generator = generator_from_json(j["generator"]);
    s.datum = generate_datum(s.cover, *s.generator);
  } else {
    fail("scene needs a 'datum' or a 'generator'");
  }
  if (j.contains("choice")) s.choice = choice_from_json(j["choice"]);
  return s;
}

Scene load_scene(const std::filesystem::path& path) {
  return scene_from_json(read_json_file(path), path.parent_path());
}

json scene_to_json(const SurfaceSpec& surface, const OrientifoldDatum& d, const std::optional<DomainChoice>& choice) {
  json j{{"schema", kSchemaVersion}, {"surface", surface_to_json(surface)}, {"datum", datum_to_json(d)}};
  if (choice) j["choice"] = choice_to_json(*choice);
  return j;
}

}  // namespace ohol
