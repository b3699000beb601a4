#include <doctest.h>

#include <filesystem>

#include "modaldef/error.hpp"
#include "modaldef/io.hpp"

using namespace modaldef;

TEST_CASE("frames and models round trip") {
  const Frame f({"a", "b", "c"}, std::vector<Edge>{{0, 1}, {2, 2}});
  const Json j = frame_to_json(f);
  CHECK(j.dump() == R"({"points":["a","b","c"],"rel":[["a","b"],["c","c"]]})");
  CHECK(frame_from_json(j) == f);
  const Model m(f, {{"p", 0b101}, {"q", 0}});
  const Model back = model_from_json(model_to_json(m));
  CHECK(back.frame() == f);
  CHECK(back.value("p") == 0b101);
  CHECK(back.value("q") == 0);
  CHECK(model_from_json(Json::parse(R"({"points":["1"]})")).frame().size() == 1);
}

TEST_CASE("malformed frames are input errors") {
  CHECK_THROWS_AS(frame_from_json(Json::parse(R"({"rel":[]})")), InputError);
  CHECK_THROWS_AS(frame_from_json(Json::parse(R"({"points":["a"],"rel":[["a","z"]]})")), InputError);
  CHECK_THROWS_AS(frame_from_json(Json::parse(R"({"points":["a"],"rel":[["a"]]})")), InputError);
  CHECK_THROWS_AS(frame_from_json(Json::parse(R"({"points":["a","a"]})")), InputError);
  CHECK_THROWS_AS(model_from_json(Json::parse(R"({"points":["a"],"val":{"p":["b"]}})")), InputError);
  CHECK_THROWS_AS(model_from_json(Json::parse(R"({"points":["a"],"val":{"P q":[]}})")), InputError);
}

TEST_CASE("teams") {
  const Frame f = Frame::numbered(3, {});
  CHECK(parse_team(f, "1, 3") == 0b101);
  CHECK(parse_team(f, "") == 0);
  CHECK(team_from_json(f, team_to_json(f, 0b110)) == 0b110);
  CHECK_THROWS_AS(parse_team(f, "4"), InputError);
}

TEST_CASE("clause sets round trip") {
  const ClosedClauseSet cs{{parse("p"), parse("<>q")}, {parse("[]p & q")}};
  CHECK(clauses_from_json(clauses_to_json(cs)) == cs);
}

TEST_CASE("audit reports replay from JSON") {
  const auto r = audit(Property::disjoint_union_closed, parse("~p | [u] p"), FrameUniverse{2});
  const Json j = audit_to_json(r);
  CHECK(j["verdict"] == "counterexample");
  REQUIRE(j.contains("replay"));
  CHECK(replay_json(j));
  CHECK(replay_json(j["replay"]));
  Json broken = j["replay"];
  broken["witness"]["target"]["rel"] = Json::array({Json::array({"0.1", "1.1"})});
  CHECK_FALSE(replay_json(broken));
  broken["kind"] = "other";
  CHECK_THROWS_AS(replay_json(broken), InputError);
}

TEST_CASE("every audit witness survives a JSON round trip") {
  const FrameUniverse u{2};
  for (auto p : {Property::gen_subframe_closed, Property::disjoint_union_closed, Property::bounded_morphic_image_closed,
                 Property::reflects_fin_gen_subframes, Property::reflects_ultrafilter_ext}) {
    for (const char* text : {"~p | [u] p", "<u><>(p | ~p)", "[u] ~p | [u] p", "<u> p"}) {
      const auto r = audit(p, parse(text), u);
      if (!r.witness) continue;
      CHECK(replay_json(Json::parse(audit_to_json(r).dump())));
    }
  }
}

TEST_CASE("equivalence reports replay from JSON") {
  const Formula f = parse("p | ~p"), g = parse("p \\/ ~p");
  const auto r = oracle_equiv(f, g, FrameUniverse{2}, EquivMode::team);
  const Json j = equiv_to_json(f, g, EquivMode::team, r);
  CHECK(j["verdict"] == "counterexample");
  CHECK(replay_json(j));
  Json flipped = j["replay"];
  flipped["witness"]["second_holds"] = true;
  CHECK_FALSE(replay_json(flipped));
}

TEST_CASE("files") {
  const auto path = std::filesystem::temp_directory_path() / "modaldef_io_test.json";
  write_json_file(path, frame_to_json(Frame::numbered(2, std::vector<Edge>{{0, 1}})));
  CHECK(frame_from_json(read_json_file(path)) == Frame::numbered(2, std::vector<Edge>{{0, 1}}));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_json_file(path), InputError);
}
