#include <doctest.h>

#include "modaldef/corpus.hpp"
#include "modaldef/definability.hpp"
#include "modaldef/error.hpp"
#include "modaldef/frameops.hpp"
#include "oracle.hpp"

using namespace modaldef;

namespace {
Formula P(const char* s) { return parse(s); }
}  // namespace

TEST_CASE("universe enumeration") {
  CHECK(FrameUniverse{1}.count() == 2);
  CHECK(FrameUniverse{2}.count() == 18);
  CHECK(FrameUniverse{3}.count() == 530);
  const auto frames = FrameUniverse{2}.frames();
  REQUIRE(frames.size() == 18);
  CHECK(frames[0] == Frame::from_code(1, 0));
  CHECK(frames[2] == Frame::from_code(2, 0));
  CHECK(frames[17] == Frame::from_code(2, 15));
}

TEST_CASE("frame validity examples") {
  const Formula single = P("~p | [u] p");
  const Formula nonempty = P("<u><>(p | ~p)");
  CHECK(frame_valid(Frame::numbered(1, {}), single));
  CHECK(frame_valid(Frame::from_code(1, 1), single));
  CHECK_FALSE(frame_valid(Frame::numbered(2, {}), single));
  CHECK(frame_valid(Frame({"a", "b"}, std::vector<Edge>{{0, 1}}), nonempty));
  CHECK_FALSE(frame_valid(Frame::numbered(3, {}), nonempty));
  CHECK_THROWS_AS(frame_valid(Frame::numbered(1, {}), P("(p \\/ q) & [u] p")), FragmentError);
}

TEST_CASE("countermodels falsify") {
  const auto c = find_countermodel(Frame::numbered(2, {}), P("~p | [u] p"));
  REQUIRE(c);
  REQUIRE(c->point);
  CHECK(countermodel_falsifies(P("~p | [u] p"), *c));
  CHECK_FALSE(find_countermodel(Frame::numbered(1, {}), P("~p | [u] p")));
  const auto t = find_countermodel(Frame::numbered(2, {}), P("p \\/ ~p"));
  REQUIRE(t);
  REQUIRE(t->team);
  CHECK(countermodel_falsifies(P("p \\/ ~p"), *t));
}

TEST_CASE("frame classes") {
  CHECK(frame_class(P("~p | [u] p"), FrameUniverse{2}).size() == 2);
  CHECK(frame_class(P("p | ~p"), FrameUniverse{2}).size() == 18);
  const auto nonempty = frame_class(P("<u><>(p | ~p)"), FrameUniverse{2});
  CHECK(nonempty.size() == 16);
  for (const auto& f : nonempty) CHECK_FALSE(f.empty_relation());
}

TEST_CASE("frame validity matches the definitional oracle") {
  for (auto fr : {Fragment::ml, Fragment::ml_ubox_pos, Fragment::ml_ubox, Fragment::ml_idis, Fragment::mdl,
                  Fragment::emdl}) {
    for (const auto& f : generate(GenConfig{fr, 2, 2, 53, 25, 1})) {
      for (const auto& frame : oracle::frames(2)) REQUIRE(frame_valid(frame, f) == oracle::frame_valid(frame, f));
    }
  }
}

TEST_CASE("extra symbols do not change validity") {
  for (auto fr : {Fragment::ml_ubox, Fragment::emdl}) {
    for (const auto& f : generate(GenConfig{fr, 2, 2, 59, 30, 1})) {
      const ValidityChecker plain(f), padded(f, {"zz"});
      for (const auto& frame : FrameUniverse{3}.frames()) REQUIRE(plain.valid(frame) == padded.valid(frame));
    }
  }
}

TEST_CASE("audit examples and replay") {
  const FrameUniverse u2{2};
  const auto a = audit(Property::disjoint_union_closed, P("~p | [u] p"), u2);
  REQUIRE(a.verdict == Verdict::counterexample);
  REQUIRE(a.witness);
  CHECK(a.witness->sources.size() == 2);
  CHECK(a.witness->target.size() == 2);
  CHECK(replay(a.property, a.formula, *a.witness));

  const auto b = audit(Property::gen_subframe_closed, P("<u><>(p | ~p)"), u2);
  REQUIRE(b.verdict == Verdict::counterexample);
  CHECK(b.witness->target.empty_relation());
  CHECK(replay(b.property, b.formula, *b.witness));

  const auto c = audit(Property::gen_subframe_closed, P("[u] ~p | [u] p"), FrameUniverse{3});
  CHECK(c.verdict == Verdict::pass);
  CHECK_FALSE(c.witness);
}

TEST_CASE("tampered witnesses do not replay") {
  const auto a = audit(Property::disjoint_union_closed, P("~p | [u] p"), FrameUniverse{2});
  Witness w = *a.witness;
  w.target = Frame::numbered(2, {});
  CHECK_FALSE(replay(a.property, a.formula, w));
  w = *a.witness;
  w.countermodel->point = 1 - *w.countermodel->point;
  w.countermodel->model = Model(w.target, {{"p", 0}});
  CHECK_FALSE(replay(a.property, a.formula, w));
  CHECK_FALSE(replay(Property::gen_subframe_closed, a.formula, *a.witness));
}

TEST_CASE("disjoint union audit reports a bounded pass when pairs are pruned") {
  const auto r = audit(Property::disjoint_union_closed, P("p | ~p"), FrameUniverse{2});
  CHECK(r.verdict == Verdict::bounded_pass);
  CHECK(audit(Property::disjoint_union_closed, P("[]p -> p"), FrameUniverse{2}).verdict == Verdict::bounded_pass);
}

TEST_CASE("modal formulas pass every closure audit") {
  for (const auto& f : generate(GenConfig{Fragment::ml, 2, 1, 61, 15, 0})) {
    for (auto p : {Property::gen_subframe_closed, Property::bounded_morphic_image_closed,
                   Property::reflects_fin_gen_subframes, Property::reflects_ultrafilter_ext}) {
      CHECK(audit(p, f, FrameUniverse{3}).verdict == Verdict::pass);
    }
    CHECK(audit(Property::disjoint_union_closed, f, FrameUniverse{3}).verdict != Verdict::counterexample);
  }
}

TEST_CASE("bounded morphic images of the one-point class") {
  // A bounded morphic image of a frame never has more points.
  CHECK(audit(Property::bounded_morphic_image_closed, P("~p | [u] p"), FrameUniverse{3}).verdict == Verdict::pass);
  const auto r = audit(Property::bounded_morphic_image_closed, P("~<u>(p & ~[]<>p & []p) | ~<u>~p"), FrameUniverse{2});
  if (r.witness) CHECK(replay(r.property, r.formula, *r.witness));
}

TEST_CASE("ultrafilter audit asserts the isomorphism") {
  const auto r = audit(Property::reflects_ultrafilter_ext, P("~p | [u] p"), FrameUniverse{3});
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.frames_checked == 530);
}

TEST_CASE("property names") {
  CHECK(property_from_name("disjoint-union") == Property::disjoint_union_closed);
  CHECK(property_from_name("gen_subframe_closed") == Property::gen_subframe_closed);
  CHECK_THROWS_AS(property_from_name("nope"), InputError);
}

TEST_CASE("equivalence oracle") {
  const FrameUniverse u{3};
  CHECK(oracle_equiv(P("[](p | [u] q)"), P("[]p | [u] q"), u, EquivMode::kripke_point).equivalent);
  CHECK(oracle_equiv(P("p"), P("p \\/ p"), u, EquivMode::team).equivalent);
  CHECK(oracle_equiv(P("p \\/ q"), P("[u] p | [u] q"), u, EquivMode::model_validity).equivalent);
  const auto r = oracle_equiv(P("p | ~p"), P("p \\/ ~p"), u, EquivMode::team);
  REQUIRE_FALSE(r.equivalent);
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->first_holds);
  CHECK_FALSE(r.counterexample->second_holds);
  CHECK(replay(P("p | ~p"), P("p \\/ ~p"), EquivMode::team, *r.counterexample));
  const auto fv = oracle_equiv(P("~p | [u] p"), P("p | ~p"), u, EquivMode::frame_validity);
  REQUIRE_FALSE(fv.equivalent);
  CHECK(replay(P("~p | [u] p"), P("p | ~p"), EquivMode::frame_validity, *fv.counterexample));
  CHECK_THROWS_AS(oracle_equiv(P("p \\/ q"), P("p"), u, EquivMode::kripke_point), FragmentError);
  CHECK_THROWS_AS(oracle_equiv(P("[u] p"), P("p"), u, EquivMode::team), FragmentError);
}

TEST_CASE("the first counterexample is deterministic") {
  const auto a = oracle_equiv(P("<>p"), P("[]p"), FrameUniverse{3}, EquivMode::kripke_point);
  const auto b = oracle_equiv(P("<>p"), P("[]p"), FrameUniverse{3}, EquivMode::kripke_point);
  REQUIRE(a.counterexample);
  CHECK(a.counterexample->model.frame() == b.counterexample->model.frame());
  CHECK(a.counterexample->point == b.counterexample->point);
  CHECK(a.cases == b.cases);
}
