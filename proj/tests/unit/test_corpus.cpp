#include <doctest.h>

#include <set>

#include "modaldef/corpus.hpp"
#include "modaldef/error.hpp"

using namespace modaldef;

namespace {
constexpr Fragment kFragments[] = {Fragment::ml,      Fragment::ml_ubox_pos, Fragment::ml_ubox,
                                   Fragment::ml_idis, Fragment::mdl,         Fragment::emdl};

void collect_kinds(const Formula& f, std::set<Kind>& out) {
  out.insert(f.kind());
  for (const auto& c : f.children()) collect_kinds(c, out);
  if (f.kind() == Kind::dep) {
    for (const auto& a : f.args()) collect_kinds(a, out);
    collect_kinds(f.target(), out);
  }
}
}  // namespace

TEST_CASE("generation is deterministic and index-addressable") {
  for (Fragment fr : kFragments) {
    const GenConfig cfg{fr, 3, 3, 1234, 40, 2};
    const auto a = generate(cfg);
    const auto b = generate(cfg);
    REQUIRE(a.size() == 40);
    for (std::size_t i = 0; i < a.size(); ++i) {
      REQUIRE(a[i] == b[i]);
      REQUIRE(a[i] == generate_one(cfg, i));
    }
    GenConfig other = cfg;
    other.seed = 1235;
    CHECK(generate(other) != a);
  }
  CHECK(generate_closed(9, 3, 2, 2) == generate_closed(9, 3, 2, 2));
  CHECK(generate_clause(9, 3, 2, 2) == generate_clause(9, 3, 2, 2));
}

TEST_CASE("generated formulas respect the fragment, depth and proposition bounds") {
  for (Fragment fr : kFragments) {
    for (std::size_t depth : {0U, 1U, 3U}) {
      const GenConfig cfg{fr, depth, 2, 77, 60, 1};
      for (const auto& f : generate(cfg)) {
        REQUIRE(fragment_leq(classify(f), fr));
        REQUIRE(modal_depth(f) <= depth);
        for (const auto& p : propositions(f)) REQUIRE((p == "p1" || p == "p2"));
      }
    }
  }
}

TEST_CASE("generated batches cover every constructor") {
  for (Fragment fr : kFragments) {
    std::set<Kind> seen;
    for (const auto& f : generate(GenConfig{fr, 2, 2, 5, 30, 2})) collect_kinds(f, seen);
    for (Kind k : {Kind::atom, Kind::neg_atom, Kind::conj, Kind::disj, Kind::dia, Kind::box}) CHECK(seen.count(k));
    if (fr == Fragment::ml_ubox_pos || fr == Fragment::ml_ubox) CHECK(seen.count(Kind::ubox));
    if (fr == Fragment::ml_ubox) CHECK(seen.count(Kind::udia));
    if (fr == Fragment::ml_idis) CHECK(seen.count(Kind::idisj));
    if (fr == Fragment::mdl || fr == Fragment::emdl) CHECK(seen.count(Kind::dep));
  }
}

TEST_CASE("dependence atoms") {
  std::size_t compound = 0;
  for (const auto& f : generate(GenConfig{Fragment::emdl, 2, 2, 11, 100, 1})) {
    CHECK(fragment_leq(classify(f), Fragment::emdl));
    if (classify(f) == Fragment::emdl) ++compound;
  }
  CHECK(compound > 0);
  for (const auto& f : generate(GenConfig{Fragment::mdl, 2, 2, 11, 100, 3})) CHECK(fragment_leq(classify(f), Fragment::mdl));
}

TEST_CASE("closed formulas and clauses") {
  for (std::size_t i = 0; i < 50; ++i) {
    const Formula c = generate_closed(3, i, 2, 2);
    CHECK(fragment_leq(classify(c), Fragment::ml_ubox));
    const auto clause = generate_clause(3, i, 2, 2, 3);
    CHECK(!clause.empty());
    CHECK(clause.size() <= 3);
    for (const auto& g : clause) CHECK(classify(g) == Fragment::ml);
  }
}

TEST_CASE("generator input errors") {
  CHECK_THROWS_AS(generate(GenConfig{Fragment::mixed, 2, 2, 0, 1, 1}), FragmentError);
  CHECK_THROWS_AS(generate(GenConfig{Fragment::ml, 2, 0, 0, 1, 1}), InputError);
  CHECK(generate(GenConfig{Fragment::ml, 2, 2, 0, 0, 1}).empty());
}

TEST_CASE("curated formulas") {
  CHECK(render(paper_formula("ex_A5_singleton")) == "~p | [u] p");
  CHECK(classify(paper_formula("ex_A5_nonempty_rel")) == Fragment::ml_ubox);
  CHECK(classify(paper_formula("propA1_i_lhs")) == Fragment::ml_ubox_pos);
  CHECK(classify(paper_formula("dep_emdl")) == Fragment::emdl);
  CHECK_THROWS_AS(paper_formula("missing"), InputError);
  std::set<std::string> names;
  for (const auto& nf : paper_formulas()) names.insert(nf.name);
  CHECK(names.size() == paper_formulas().size());
}
