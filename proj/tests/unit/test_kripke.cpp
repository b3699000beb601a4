#include <doctest.h>

#include "modaldef/corpus.hpp"
#include "modaldef/error.hpp"
#include "modaldef/kripke.hpp"
#include "modaldef/team.hpp"
#include "oracle.hpp"

using namespace modaldef;

namespace {
Model model(std::vector<std::string> names, std::vector<Edge> edges, Valuation v) {
  return Model(Frame(std::move(names), edges), std::move(v));
}
}  // namespace

TEST_CASE("frame construction and validation") {
  const Frame f({"a", "b", "c"}, std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(f.size() == 3);
  CHECK(f.related(0, 1));
  CHECK_FALSE(f.related(1, 0));
  CHECK(f.successors(1) == singleton(2));
  CHECK(f.predecessors(1) == singleton(0));
  CHECK(f.index_of("c") == 2);
  CHECK(f.edge_count() == 2);
  CHECK_THROWS_AS(f.index_of("z"), InputError);
  CHECK_THROWS_AS(Frame({}, std::vector<Edge>{}), InputError);
  CHECK_THROWS_AS(Frame({"a", "a"}, std::vector<Edge>{}), InputError);
  CHECK_THROWS_AS(Frame({"a"}, std::vector<Edge>{{0, 1}}), InputError);
}

TEST_CASE("relation codes") {
  const Frame f = Frame::from_code(2, 0b0010);  // bit 1: 0 -> 1
  CHECK(f.related(0, 1));
  CHECK(f.edge_count() == 1);
  CHECK(f.code() == 0b0010);
  for (std::uint64_t c = 0; c < 512; ++c) CHECK(Frame::from_code(3, c).code() == c);
}

TEST_CASE("pointed evaluation examples") {
  CHECK(eval_pointed(model({"w"}, {}, {{"p", 1}}), std::size_t{0}, parse("[u] p")));
  CHECK_FALSE(eval_pointed(model({"a", "b"}, {}, {{"p", 1}}), "a", parse("~p | [u] p")));
  CHECK(eval_pointed(model({"a", "b"}, {{0, 1}}, {}), "a", parse("<u><>(p | ~p)")));
  CHECK(model_valid_kripke(model({"w"}, {{0, 0}}, {{"p", 1}}), parse("[u] p")));
  CHECK_FALSE(model_valid_kripke(model({"a", "b"}, {}, {{"p", 1}}), parse("~p | [u] p")));
  CHECK(model_valid_kripke(model({"a", "b"}, {{0, 1}}, {{"p", 2}}), parse("p | ~p")));
  CHECK_THROWS_AS(eval_pointed(model({"w"}, {}, {}), std::size_t{0}, parse("p \\/ q")), FragmentError);
}

TEST_CASE("missing propositions are empty") {
  const Model m = model({"a"}, {}, {});
  CHECK(m.value("zz") == 0);
  CHECK(eval_pointed(m, std::size_t{0}, parse("~zz")));
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(model({"a"}, {}, {{"p", 2}}), InputError);
}

TEST_CASE("bit-parallel extensions agree with the pointwise oracle") {
  GenConfig cfg{Fragment::ml_ubox, 3, 2, 3, 120, 0};
  for (const auto& f : generate(cfg)) {
    const auto props = oracle::props_of({f});
    oracle::for_each_model(3, props, [&](const Model& m) {
      const PointSet ext = extension(m, f);
      for (std::size_t w = 0; w < m.frame().size(); ++w) {
        REQUIRE(member(ext, w) == oracle::holds(m, w, f));
      }
    });
  }
}

TEST_CASE("shared subformulas are merged") {
  const Program p(parse("<>p & (<>p | q)"));
  CHECK(p.code().size() == 5);  // p, <>p, q, |, &
  CHECK(p.symbols() == std::vector<std::string>{"p", "q"});
}

TEST_CASE("ML pointwise truth equals singleton-team truth") {
  GenConfig cfg{Fragment::ml, 2, 2, 17, 60, 0};
  for (const auto& f : generate(cfg)) {
    oracle::for_each_model(3, oracle::props_of({f}), [&](const Model& m) {
      for (std::size_t w = 0; w < m.frame().size(); ++w) {
        REQUIRE(eval_pointed(m, w, f) == eval_team(m, singleton(w), f));
      }
    });
  }
}

TEST_CASE("adding edges never falsifies box-free positive formulas") {
  GenConfig cfg{Fragment::ml, 2, 2, 23, 200, 0};
  for (const auto& f : generate(cfg)) {
    if (contains(f, Kind::box) || contains(f, Kind::neg_atom)) continue;
    oracle::for_each_model(2, oracle::props_of({f}), [&](const Model& m) {
      const PointSet before = extension(m, f);
      for (std::size_t a = 0; a < m.frame().size(); ++a) {
        for (std::size_t b = 0; b < m.frame().size(); ++b) {
          auto edges = m.frame().edges();
          edges.emplace_back(a, b);
          const Model bigger(Frame(m.frame().names(), edges), m.valuation());
          REQUIRE((before & ~extension(bigger, f)) == 0);
        }
      }
    });
  }
}
