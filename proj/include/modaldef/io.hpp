#ifndef MODALDEF_IO_HPP_
#define MODALDEF_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "modaldef/definability.hpp"
#include "modaldef/frameops.hpp"
#include "modaldef/kripke.hpp"
#include "modaldef/transform.hpp"

namespace modaldef {

using Json = nlohmann::ordered_json;

// {"points": [...], "rel": [[a, b], ...]}; models add "val": {p: [...]}.
Json frame_to_json(const Frame& f);
Json model_to_json(const Model& m);
// Throws InputError on malformed input. A missing "val" is an empty valuation.
Frame frame_from_json(const Json& j);
Model model_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

Json team_to_json(const Frame& f, Team t);
Team team_from_json(const Frame& f, const Json& j);
// Comma-separated point names; blank entries are ignored.
Team parse_team(const Frame& f, std::string_view text);

// {"map": {"source point": "target point", ...}}
Json morphism_to_json(const BoundedMorphism& bm);
std::vector<std::size_t> morphism_from_json(const Frame& source, const Frame& target, const Json& j);

// Array of arrays of ML formula strings.
Json clauses_to_json(const ClosedClauseSet& clauses);
ClosedClauseSet clauses_from_json(const Json& j);

Json countermodel_to_json(const Countermodel& c);
Countermodel countermodel_from_json(const Json& j);

Json witness_to_json(const Witness& w);
Witness witness_from_json(const Json& j);

// Report with a "replay" block whenever the verdict is a counterexample.
Json audit_to_json(const AuditReport& r);
Json equiv_to_json(const Formula& f, const Formula& g, EquivMode mode, const EquivResult& r);

// Re-verifies a replay block (or a whole report holding one). True iff the
// recorded verdict reproduces.
bool replay_json(const Json& j);

}  // namespace modaldef

#endif  // MODALDEF_IO_HPP_
