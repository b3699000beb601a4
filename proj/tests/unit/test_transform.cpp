#include <doctest.h>

#include "modaldef/corpus.hpp"
#include "modaldef/definability.hpp"
#include "modaldef/error.hpp"
#include "modaldef/transform.hpp"
#include "oracle.hpp"

using namespace modaldef;

namespace {
Formula P(const char* s) { return parse(s, ParseOptions{.allow_reserved = true}); }

ClosedClause clause(std::initializer_list<const char*> parts) {
  ClosedClause c;
  for (auto* p : parts) c.push_back(P(p));
  return c;
}

bool point_equivalent(const Formula& f, const Formula& g, std::size_t max_points) {
  bool ok = true;
  oracle::for_each_model(max_points, oracle::props_of({f, g}), [&](const Model& m) {
    for (std::size_t w = 0; w < m.frame().size() && ok; ++w) ok = oracle::holds(m, w, f) == oracle::holds(m, w, g);
  });
  return ok;
}

bool team_equivalent(const Formula& f, const Formula& g, std::size_t max_points) {
  bool ok = true;
  oracle::for_each_model(max_points, oracle::props_of({f, g}), [&](const Model& m) {
    for (Team t = 0; t <= m.frame().all() && ok; ++t) ok = oracle::team_holds(m, t, f) == oracle::team_holds(m, t, g);
  });
  return ok;
}

bool clause_set_valid(const Model& m, const ClosedClauseSet& set) {
  for (const auto& c : set) {
    if (!oracle::valid(m, closed_clause_formula(c))) return false;
  }
  return true;
}
}  // namespace

TEST_CASE("box form examples") {
  CHECK(to_box_form(P("[](p | [u] q)")) == P("[]p | [u] q"));
  CHECK(to_box_form(P("<>(p & [u] q)"), Polarity::disjunctive) == P("<>p & [u] q"));
  CHECK(to_box_form(P("p")) == P("p"));
  CHECK_THROWS_AS(to_box_form(P("<u> p")), FragmentError);
}

TEST_CASE("box form clauses have the promised shape") {
  for (const auto& f : generate(GenConfig{Fragment::ml_ubox_pos, 3, 2, 5, 80, 0})) {
    for (auto pol : {Polarity::conjunctive, Polarity::disjunctive}) {
      for (const auto& c : box_clauses(f, pol)) {
        CHECK(c.polarity != pol);
        if (c.local) CHECK(classify(*c.local) == Fragment::ml);
        for (const auto& g : c.globals) CHECK(classify(g) == Fragment::ml);
        if (c.polarity == Polarity::conjunctive) CHECK(c.globals.size() <= 1);
      }
    }
  }
}

TEST_CASE("box forms are point-equivalent (oracle, two points)") {
  for (const auto& f : generate(GenConfig{Fragment::ml_ubox_pos, 3, 2, 7, 80, 0})) {
    REQUIRE(point_equivalent(f, to_box_form(f, Polarity::conjunctive), 2));
    REQUIRE(point_equivalent(f, to_box_form(f, Polarity::disjunctive), 2));
  }
}

TEST_CASE("closed clause examples") {
  CHECK(to_closed_clauses(P("~p | [u] p")) == ClosedClauseSet{clause({"~p", "p"})});
  CHECK(to_closed_clauses(P("p")) == ClosedClauseSet{clause({"p"})});
  CHECK(to_closed_clauses(P("p & q")) == ClosedClauseSet{clause({"p"}), clause({"q"})});
}

TEST_CASE("closed clauses preserve model validity (oracle, two points)") {
  for (const auto& f : generate(GenConfig{Fragment::ml_ubox_pos, 3, 2, 9, 80, 0})) {
    const ClosedClauseSet set = to_closed_clauses(f);
    oracle::for_each_model(2, oracle::props_of({f}), [&](const Model& m) {
      REQUIRE(oracle::valid(m, f) == clause_set_valid(m, set));
    });
  }
}

TEST_CASE("rewrites around closed formulas") {
  for (std::size_t i = 0; i < 30; ++i) {
    const Formula phi = generate_one(GenConfig{Fragment::ml_ubox, 2, 2, 13, 30, 0}, i);
    const Formula psi = generate_closed(13, i, 2, 2);
    CHECK(point_equivalent(Formula::box(Formula::disj(phi, psi)), Formula::disj(Formula::box(phi), psi), 2));
    CHECK(point_equivalent(Formula::dia(Formula::conj(phi, psi)), Formula::conj(Formula::dia(phi), psi), 2));
    CHECK(point_equivalent(Formula::ubox(Formula::disj(phi, psi)), Formula::disj(Formula::ubox(phi), psi), 2));
  }
}

TEST_CASE("intuitionistic normal form examples") {
  CHECK(to_idis_normal_form(P("[](p \\/ q)")) == std::vector<Formula>{P("[]p"), P("[]q")});
  CHECK(to_idis_normal_form(P("p")) == std::vector<Formula>{P("p")});
  CHECK(to_idis_normal_form(P("(p \\/ q) & r")) == std::vector<Formula>{P("p & r"), P("q & r")});
  CHECK(to_idis_normal_form(P("p \\/ p")) == std::vector<Formula>{P("p")});
  CHECK_THROWS_AS(to_idis_normal_form(P("dep(p; q)")), FragmentError);
}

TEST_CASE("each rewrite rule preserves team semantics") {
  const char* lhs[] = {"(p \\/ []q) & <>r", "<>r & (p \\/ []q)", "(p \\/ []q) | <>r", "<>r | (p \\/ []q)",
                       "<>(p \\/ []q)", "[](p \\/ <>q)"};
  for (std::size_t i = 0; i < std::size(kIdisRules); ++i) {
    const auto out = apply_idis_rule(kIdisRules[i], P(lhs[i]));
    REQUIRE(out.has_value());
    CHECK(out->kind() == Kind::idisj);
    CHECK(team_equivalent(P(lhs[i]), *out, 2));
  }
  CHECK_FALSE(apply_idis_rule(IdisRule::dia, P("[](p \\/ q)")).has_value());
}

TEST_CASE("rules are sound on generated instances") {
  for (const auto& f : generate(GenConfig{Fragment::ml_idis, 2, 2, 15, 150, 0})) {
    for (IdisRule r : kIdisRules) {
      if (auto g = apply_idis_rule(r, f)) REQUIRE(team_equivalent(f, *g, 2));
    }
  }
}

TEST_CASE("normal form is team-equivalent") {
  for (const auto& f : generate(GenConfig{Fragment::ml_idis, 2, 2, 17, 60, 0})) {
    const auto parts = to_idis_normal_form(f);
    for (const auto& p : parts) CHECK(classify(p) == Fragment::ml);
    REQUIRE(team_equivalent(f, idisj_all(parts), 2));
  }
}

TEST_CASE("clause bridges") {
  CHECK(idis_to_clause(P("p \\/ q")) == ClosedClauseSet{clause({"p", "q"})});
  CHECK(idis_to_clause(P("p")) == ClosedClauseSet{clause({"p"})});
  CHECK(idis_to_clause(P("[](p \\/ q)")) == ClosedClauseSet{clause({"[]p", "[]q"})});
  CHECK(clause_to_idis(clause({"p", "q"})) == P("p \\/ q"));
  CHECK(clause_to_idis(clause({"p"})) == P("p"));
  CHECK(clause_to_idis(clause({"[]p", "<>q"})) == P("[]p \\/ <>q"));
  CHECK_THROWS_AS(clause_to_idis({}), InputError);
  CHECK_THROWS_AS(clause_to_idis(clause({"[u] p"})), FragmentError);
}

TEST_CASE("team validity equals validity of the universal clause") {
  for (const auto& f : generate(GenConfig{Fragment::ml_idis, 2, 2, 19, 60, 0})) {
    const Formula c = closed_clause_formula(idis_to_clause(f).at(0));
    const Formula back = clause_to_idis(idis_to_clause(f).at(0));
    oracle::for_each_model(2, oracle::props_of({f}), [&](const Model& m) {
      REQUIRE(oracle::team_valid(m, f) == oracle::valid(m, c));
      REQUIRE(oracle::team_valid(m, back) == oracle::team_valid(m, f));
    });
  }
  // Universal box of an ML formula against the full team.
  for (const auto& f : generate(GenConfig{Fragment::ml, 2, 2, 21, 40, 0})) {
    oracle::for_each_model(2, oracle::props_of({f}), [&](const Model& m) {
      REQUIRE(oracle::valid(m, Formula::ubox(f)) == oracle::team_holds(m, m.frame().all(), f));
    });
  }
}

TEST_CASE("fresh symbols") {
  FreshSupply s;
  CHECK(s.next() == "_f0");
  CHECK(s.next() == "_f1");
  CHECK(s.issued() == 2);
}

TEST_CASE("dependence-atom translation shape") {
  CHECK(emdl_to_mdl(P("dep(p; q)")) == P("dep(p; q)"));
  const Formula got = emdl_to_mdl(P("dep(<>p; q)"));
  const Formula bind = P("(_f0 <-> <>p) & (_f1 <-> q)");
  const Formula want = implies(Formula::conj(bind, Formula::box(bind)), P("dep(_f0; _f1)"));
  CHECK(got == want);
  CHECK(classify(got) == Fragment::mdl);
  CHECK_THROWS_AS(emdl_to_mdl(P("dep(_f0; q)")), InputError);
  CHECK_THROWS_AS(emdl_to_mdl(P("p \\/ q")), FragmentError);
}

TEST_CASE("translated formulas are MDL and keep frame validity") {
  for (const auto& f : generate(GenConfig{Fragment::emdl, 1, 2, 23, 40, 1})) {
    const Formula g = emdl_to_mdl(f);
    REQUIRE(fragment_leq(classify(g), Fragment::mdl));
    for (const auto& fr : oracle::frames(2)) REQUIRE(oracle::frame_valid(fr, f) == oracle::frame_valid(fr, g));
  }
}

TEST_CASE("dependence atoms as intuitionistic disjunctions") {
  CHECK(dep_to_idis(P("dep(; q)")) == P("q \\/ ~q"));
  CHECK(dep_to_idis(P("dep(p; q)")) == P("(p & (q \\/ ~q)) | (~p & (q \\/ ~q))"));
  CHECK(dep_to_idis(P("p & <>q")) == P("p & <>q"));
  CHECK_THROWS_AS(dep_to_idis(P("[u] p")), FragmentError);
  for (auto fr : {Fragment::mdl, Fragment::emdl}) {
    for (const auto& f : generate(GenConfig{fr, 2, 2, 29, 40, 2})) {
      const Formula g = dep_to_idis(f);
      CHECK_FALSE(contains(g, Kind::dep));
      REQUIRE(team_equivalent(f, g, 2));
    }
  }
}
