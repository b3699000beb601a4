#include "modaldef/io.hpp"

#include <fstream>

#include "modaldef/error.hpp"

namespace modaldef {

namespace {

Formula formula_from(const Json& j) {
  if (!j.is_string()) throw InputError("formula must be a string");
  return parse(j.get<std::string>(), ParseOptions{.allow_reserved = true});
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw InputError(std::string(what) + " entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

Json frame_to_json(const Frame& f) {
  Json rel = Json::array();
  for (auto [a, b] : f.edges()) rel.push_back({f.name(a), f.name(b)});
  return Json{{"points", f.names()}, {"rel", std::move(rel)}};
}

Json model_to_json(const Model& m) {
  Json j = frame_to_json(m.frame());
  Json val = Json::object();
  for (const auto& [p, s] : m.valuation()) val[p] = m.frame().names_of(s);
  j["val"] = std::move(val);
  return j;
}

Frame frame_from_json(const Json& j) {
  std::vector<std::string> names = string_list(field(j, "points"), "points");
  // Name lookup before the frame exists.
  auto index = [&](const Json& e) -> std::size_t {
    if (!e.is_string()) throw InputError("relation endpoints must be point names");
    const auto s = e.get<std::string>();
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == s) return i;
    }
    throw InputError("unknown point in relation: " + s);
  };
  std::vector<Edge> edges;
  const Json rel = j.contains("rel") ? j.at("rel") : Json::array();
  if (!rel.is_array()) throw InputError("rel must be an array of pairs");
  for (const auto& pair : rel) {
    if (!pair.is_array() || pair.size() != 2) throw InputError("rel entries must be pairs");
    edges.emplace_back(index(pair[0]), index(pair[1]));
  }
  return Frame(std::move(names), edges);
}

Model model_from_json(const Json& j) {
  Frame f = frame_from_json(j);
  Valuation v;
  if (j.contains("val")) {
    const Json& val = j.at("val");
    if (!val.is_object()) throw InputError("val must map propositions to point lists");
    for (const auto& [p, pts] : val.items()) {
      if (!is_valid_symbol(p, true)) throw InputError("invalid proposition symbol: " + p);
      const auto names = string_list(pts, "valuation");
      v.emplace(p, f.set_of(names));
    }
  }
  return Model(std::move(f), std::move(v));
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

Json team_to_json(const Frame& f, Team t) { return f.names_of(t); }

Team team_from_json(const Frame& f, const Json& j) { return f.set_of(string_list(j, "team")); }

Team parse_team(const Frame& f, std::string_view text) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) names.emplace_back(item);
    start = end + 1;
  }
  return f.set_of(names);
}

Json morphism_to_json(const BoundedMorphism& bm) {
  Json map = Json::object();
  for (std::size_t i = 0; i < bm.map.size(); ++i) map[bm.source.name(i)] = bm.target.name(bm.map[i]);
  return Json{{"map", std::move(map)}};
}

std::vector<std::size_t> morphism_from_json(const Frame& source, const Frame& target, const Json& j) {
  const Json& map = field(j, "map");
  if (!map.is_object()) throw InputError("map must be an object");
  std::vector<std::size_t> out(source.size());
  std::vector<bool> seen(source.size(), false);
  for (const auto& [from, to] : map.items()) {
    if (!to.is_string()) throw InputError("morphism images must be point names");
    const std::size_t i = source.index_of(from);
    out[i] = target.index_of(to.get<std::string>());
    seen[i] = true;
  }
  for (bool s : seen) {
    if (!s) throw InputError("morphism map is not total on the source");
  }
  return out;
}

Json clauses_to_json(const ClosedClauseSet& clauses) {
  Json out = Json::array();
  for (const auto& c : clauses) {
    Json parts = Json::array();
    for (const auto& g : c) parts.push_back(render(g));
    out.push_back(std::move(parts));
  }
  return out;
}

ClosedClauseSet clauses_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("clause set must be an array");
  ClosedClauseSet out;
  for (const auto& c : j) {
    if (!c.is_array()) throw InputError("clauses must be arrays of formulas");
    ClosedClause clause;
    for (const auto& g : c) clause.push_back(formula_from(g));
    out.push_back(std::move(clause));
  }
  return out;
}

Json countermodel_to_json(const Countermodel& c) {
  Json j{{"model", model_to_json(c.model)}};
  if (c.point) j["point"] = c.model.frame().name(*c.point);
  if (c.team) j["team"] = team_to_json(c.model.frame(), *c.team);
  return j;
}

Countermodel countermodel_from_json(const Json& j) {
  Countermodel c{model_from_json(field(j, "model")), std::nullopt, std::nullopt};
  if (j.contains("point")) {
    if (!j.at("point").is_string()) throw InputError("point must be a name");
    c.point = c.model.frame().index_of(j.at("point").get<std::string>());
  }
  if (j.contains("team")) c.team = team_from_json(c.model.frame(), j.at("team"));
  return c;
}

Json witness_to_json(const Witness& w) {
  Json sources = Json::array();
  for (const auto& s : w.sources) sources.push_back(frame_to_json(s));
  Json j{{"sources", std::move(sources)}, {"target", frame_to_json(w.target)}};
  if (w.seed && !w.sources.empty()) j["seed"] = w.sources[0].names_of(*w.seed);
  if (w.morphism && !w.sources.empty()) {
    j["morphism"] = morphism_to_json(BoundedMorphism{w.sources[0], w.target, *w.morphism});
  }
  if (w.max_seed) j["max_seed"] = w.max_seed;
  if (w.countermodel) j["countermodel"] = countermodel_to_json(*w.countermodel);
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

Witness witness_from_json(const Json& j) {
  Witness w{{}, frame_from_json(field(j, "target")), std::nullopt, std::nullopt, 0, std::nullopt, {}};
  const Json& sources = field(j, "sources");
  if (!sources.is_array()) throw InputError("sources must be an array of frames");
  for (const auto& s : sources) w.sources.push_back(frame_from_json(s));
  if (j.contains("seed")) {
    if (w.sources.empty()) throw InputError("seed without a source frame");
    w.seed = w.sources[0].set_of(string_list(j.at("seed"), "seed"));
  }
  if (j.contains("morphism")) {
    if (w.sources.empty()) throw InputError("morphism without a source frame");
    w.morphism = morphism_from_json(w.sources[0], w.target, j.at("morphism"));
  }
  if (j.contains("max_seed")) w.max_seed = j.at("max_seed").get<std::size_t>();
  if (j.contains("countermodel")) w.countermodel = countermodel_from_json(j.at("countermodel"));
  if (j.contains("note")) w.note = j.at("note").get<std::string>();
  return w;
}

Json audit_to_json(const AuditReport& r) {
  Json j{{"property", property_name(r.property)},
         {"formula", render(r.formula)},
         {"max_points", r.max_points},
         {"verdict", verdict_name(r.verdict)},
         {"frames_checked", r.frames_checked}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (r.witness) {
    j["witness"] = witness_to_json(*r.witness);
    j["replay"] = Json{{"kind", "audit"},
                       {"property", property_name(r.property)},
                       {"formula", render(r.formula)},
                       {"witness", j["witness"]}};
  }
  return j;
}

namespace {

Json equiv_counterexample_to_json(const EquivCounterexample& c) {
  Json j{{"model", model_to_json(c.model)}, {"first_holds", c.first_holds}, {"second_holds", c.second_holds}};
  if (c.point) j["point"] = c.model.frame().name(*c.point);
  if (c.team) j["team"] = team_to_json(c.model.frame(), *c.team);
  return j;
}

EquivCounterexample equiv_counterexample_from_json(const Json& j) {
  EquivCounterexample c{model_from_json(field(j, "model")), std::nullopt, std::nullopt, false, false};
  if (j.contains("point")) c.point = c.model.frame().index_of(j.at("point").get<std::string>());
  if (j.contains("team")) c.team = team_from_json(c.model.frame(), j.at("team"));
  c.first_holds = field(j, "first_holds").get<bool>();
  c.second_holds = field(j, "second_holds").get<bool>();
  return c;
}

}  // namespace

Json equiv_to_json(const Formula& f, const Formula& g, EquivMode mode, const EquivResult& r) {
  Json j{{"first", render(f)},
         {"second", render(g)},
         {"mode", equiv_mode_name(mode)},
         {"verdict", r.equivalent ? "pass" : "counterexample"},
         {"cases", r.cases}};
  if (r.counterexample) {
    j["witness"] = equiv_counterexample_to_json(*r.counterexample);
    j["replay"] = Json{{"kind", "equiv"},
                       {"first", render(f)},
                       {"second", render(g)},
                       {"mode", equiv_mode_name(mode)},
                       {"witness", j["witness"]}};
  }
  return j;
}

bool replay_json(const Json& j) {
  try {
    const Json& block = j.contains("replay") ? j.at("replay") : j;
    const std::string kind = field(block, "kind").get<std::string>();
    if (kind == "audit") {
      const Property p = property_from_name(field(block, "property").get<std::string>());
      return replay(p, formula_from(field(block, "formula")), witness_from_json(field(block, "witness")));
    }
    if (kind == "equiv") {
      const EquivMode mode = equiv_mode_from_name(field(block, "mode").get<std::string>());
      return replay(formula_from(field(block, "first")), formula_from(field(block, "second")), mode,
                    equiv_counterexample_from_json(field(block, "witness")));
    }
    throw InputError("unknown replay kind: " + kind);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed replay block: ") + e.what());
  }
}

}  // namespace modaldef
