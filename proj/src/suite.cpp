#include "modaldef/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>

#include "modaldef/corpus.hpp"
#include "modaldef/definability.hpp"
#include "modaldef/error.hpp"
#include "modaldef/frameops.hpp"
#include "modaldef/team.hpp"
#include "modaldef/transform.hpp"

namespace modaldef {

Level level_from_name(std::string_view name) {
  if (name == "quick") return Level::quick;
  if (name == "full") return Level::full;
  throw InputError("unknown suite level: " + std::string(name));
}

namespace {

constexpr TeamOptions kExhaustive{Search::exhaustive, false};

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::vector<std::string> symbols_of(std::initializer_list<Formula> fs) {
  std::set<std::string> all;
  for (const auto& f : fs) {
    for (auto& p : propositions(f)) all.insert(p);
  }
  return {all.begin(), all.end()};
}

// Calls fn(frame, slots) for every model of u over `symbols`; stops when fn
// returns false.
bool for_each_model(const FrameUniverse& u, std::size_t symbols,
                    const std::function<bool(const Frame&, std::span<const PointSet>)>& fn) {
  bool ok = true;
  u.for_each([&](const Frame& fr) {
    if (!ok) return;
    ok = for_each_valuation(fr.size(), symbols, [&](std::span<const PointSet> slots) { return fn(fr, slots); });
  });
  return ok;
}

std::string model_text(const Frame& fr, const std::vector<std::string>& symbols, std::span<const PointSet> slots) {
  std::ostringstream os;
  os << "frame size " << fr.size() << " code " << fr.code() << ", valuation {";
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    os << (i ? ", " : "") << symbols[i] << ": " << slots[i];
  }
  os << "}";
  return os.str();
}

Outcome check_equiv(const Formula& f, const Formula& g, const FrameUniverse& u, EquivMode mode,
                    const std::string& label) {
  const EquivResult r = oracle_equiv(f, g, u, mode);
  if (r.equivalent) return {};
  return {false, label + ": " + render(f) + " vs " + render(g) + " differ (" + equiv_mode_name(mode) + ")"};
}

// M validates every clause of the set.
Formula clause_set_formula(const ClosedClauseSet& set) {
  std::vector<Formula> parts;
  for (const auto& c : set) parts.push_back(closed_clause_formula(c));
  return conj_all(parts);
}

std::string count_text(std::size_t n, const char* what) { return std::to_string(n) + " " + what; }

// --- criteria ---------------------------------------------------------------

Outcome criterion_1() {
  const FrameUniverse u{3};
  const auto singleton = frame_class(paper_formula("ex_A5_singleton"), u);
  const auto nonempty = frame_class(paper_formula("ex_A5_nonempty_rel"), u);
  std::vector<Frame> want_singleton, want_nonempty;
  u.for_each([&](const Frame& f) {
    if (f.size() == 1) want_singleton.push_back(f);
    if (!f.empty_relation()) want_nonempty.push_back(f);
  });
  Outcome o;
  o.ok = singleton == want_singleton && nonempty == want_nonempty && singleton.size() == 2;
  o.detail = "one-point class " + std::to_string(singleton.size()) + "/" + std::to_string(want_singleton.size()) +
             ", nonempty-relation class " + std::to_string(nonempty.size()) + "/" +
             std::to_string(want_nonempty.size()) + " of " + std::to_string(u.count()) + " frames";
  return o;
}

Outcome criterion_2() {
  const FrameUniverse u{2};
  const auto a = audit(Property::disjoint_union_closed, paper_formula("ex_A5_singleton"), u);
  const auto b = audit(Property::gen_subframe_closed, paper_formula("ex_A5_nonempty_rel"), u);
  const bool ra = a.witness && replay(a.property, a.formula, *a.witness);
  const bool rb = b.witness && replay(b.property, b.formula, *b.witness);
  Outcome o;
  o.ok = a.verdict == Verdict::counterexample && b.verdict == Verdict::counterexample && ra && rb;
  o.detail = std::string("disjoint union: ") + verdict_name(a.verdict) + (ra ? " (replayed)" : " (no replay)") +
             ", generated subframe: " + verdict_name(b.verdict) + (rb ? " (replayed)" : " (no replay)");
  return o;
}

Outcome criterion_3(std::uint64_t seed) {
  const FrameUniverse u{3};
  const GenConfig cfg{Fragment::ml_ubox_pos, 3, 2, seed, 200, 0};
  std::size_t clauses = 0;
  for (std::size_t i = 0; i < cfg.count; ++i) {
    const Formula f = generate_one(cfg, i);
    const Formula box = to_box_form(f);
    if (auto o = check_equiv(f, box, u, EquivMode::kripke_point, "box form #" + std::to_string(i)); !o.ok) return o;
    const ClosedClauseSet set = to_closed_clauses(f);
    clauses += set.size();
    if (set.empty()) {
      // Valid everywhere by construction: f must be too.
      const auto symbols = symbols_of({f});
      const Program p(f, symbols);
      const bool ok = for_each_model(u, symbols.size(), [&](const Frame& fr, std::span<const PointSet> s) {
        return extension(p, fr, s) == fr.all();
      });
      if (!ok) return {false, "empty clause set for non-valid formula " + render(f)};
      continue;
    }
    if (auto o = check_equiv(f, clause_set_formula(set), u, EquivMode::model_validity,
                             "closed clauses #" + std::to_string(i));
        !o.ok) {
      return o;
    }
  }
  return {true, count_text(cfg.count, "formulas") + ", " + count_text(clauses, "closed clauses") +
                    ", all models up to 3 points"};
}

Formula rewrite_lhs(int rule, const Formula& phi, const Formula& psi) {
  switch (rule) {
    case 0: return Formula::box(Formula::disj(phi, psi));
    case 1: return Formula::dia(Formula::conj(phi, psi));
    default: return Formula::ubox(Formula::disj(phi, psi));
  }
}

Formula rewrite_rhs(int rule, const Formula& phi, const Formula& psi) {
  switch (rule) {
    case 0: return Formula::disj(Formula::box(phi), psi);
    case 1: return Formula::conj(Formula::dia(phi), psi);
    default: return Formula::disj(Formula::ubox(phi), psi);
  }
}

Outcome criterion_4(std::uint64_t seed) {
  const FrameUniverse u{3};
  std::size_t pairs = 0;
  for (const char* rule : {"i", "ii", "iii"}) {
    for (const char* variant : {"", "_compound"}) {
      const std::string base = std::string("propA1_") + rule + variant;
      if (auto o = check_equiv(paper_formula(base + "_lhs"), paper_formula(base + "_rhs"), u,
                               EquivMode::kripke_point, base);
          !o.ok) {
        return o;
      }
      ++pairs;
    }
  }
  const GenConfig cfg{Fragment::ml_ubox, 2, 2, seed, 100, 0};
  for (std::size_t i = 0; i < cfg.count; ++i) {
    const int rule = static_cast<int>(i % 3);
    const Formula phi = generate_one(cfg, i);
    const Formula psi = generate_closed(seed, i, 2, 2);
    if (auto o = check_equiv(rewrite_lhs(rule, phi, psi), rewrite_rhs(rule, phi, psi), u, EquivMode::kripke_point,
                             "instance #" + std::to_string(i));
        !o.ok) {
      return o;
    }
    ++pairs;
  }
  return {true, count_text(pairs, "rewrite pairs") + " point-equivalent on all models up to 3 points"};
}

// Exhaustive unshortened team evaluation matches pointwise truth on every team.
Outcome flatness(const Formula& f, const FrameUniverse& u) {
  const auto symbols = symbols_of({f});
  const Program p(f, symbols);
  std::string where;
  const bool ok = for_each_model(u, symbols.size(), [&](const Frame& fr, std::span<const PointSet> slots) {
    const PointSet ext = extension(p, fr, slots);
    TeamEvaluator ev(p, fr, kExhaustive);
    ev.bind(slots);
    for (Team t = 0; t <= fr.all(); ++t) {
      if (ev.satisfies(t) != ((t & ~ext) == 0)) {
        where = model_text(fr, symbols, slots) + ", team " + std::to_string(t);
        return false;
      }
    }
    return true;
  });
  if (ok) return {};
  return {false, "flatness fails for " + render(f) + " at " + where};
}

// Every subteam of a satisfying team satisfies; the empty team satisfies.
Outcome downward_closure(const Formula& f, const FrameUniverse& u) {
  const auto symbols = symbols_of({f});
  const Program p(f, symbols);
  std::string where;
  const bool ok = for_each_model(u, symbols.size(), [&](const Frame& fr, std::span<const PointSet> slots) {
    TeamEvaluator ev(p, fr, kExhaustive);
    ev.bind(slots);
    std::vector<bool> sat(std::size_t{1} << fr.size());
    for (Team t = 0; t <= fr.all(); ++t) sat[t] = ev.satisfies(t);
    if (!sat[0]) {
      where = "empty team, " + model_text(fr, symbols, slots);
      return false;
    }
    for (Team t = 0; t <= fr.all(); ++t) {
      if (!sat[t]) continue;
      for (Team s = t;; s = (s - 1) & t) {
        if (!sat[s]) {
          where = model_text(fr, symbols, slots) + ", team " + std::to_string(t) + " contains " + std::to_string(s);
          return false;
        }
        if (s == 0) break;
      }
    }
    return true;
  });
  if (ok) return {};
  return {false, "downward closure fails for " + render(f) + " at " + where};
}

std::vector<Formula> team_corpus(std::uint64_t seed, std::size_t per_fragment) {
  std::vector<Formula> out = generate(GenConfig{Fragment::ml_idis, 2, 2, seed, per_fragment, 0});
  for (auto& f : generate(GenConfig{Fragment::emdl, 2, 2, seed, per_fragment, 2})) out.push_back(f);
  return out;
}

Outcome criterion_5(std::uint64_t seed) {
  const FrameUniverse u{3};
  const auto ml = generate(GenConfig{Fragment::ml, 2, 2, seed, 200, 0});
  for (const auto& f : ml) {
    if (auto o = flatness(f, u); !o.ok) return o;
  }
  const auto team = team_corpus(seed, 100);
  for (const auto& f : team) {
    if (auto o = downward_closure(f, u); !o.ok) return o;
  }
  // Empty-team property for the ML corpus as well.
  for (const auto& f : ml) {
    const auto symbols = symbols_of({f});
    const Program p(f, symbols);
    const bool ok = for_each_model(u, symbols.size(), [&](const Frame& fr, std::span<const PointSet> slots) {
      TeamEvaluator ev(p, fr, kExhaustive);
      ev.bind(slots);
      return ev.satisfies(0);
    });
    if (!ok) return {false, "empty team fails " + render(f)};
  }
  return {true, "flatness for 200 ML formulas, downward closure and empty team for 200 ML(\\/)/EMDL formulas"};
}

Outcome criterion_6(std::uint64_t seed) {
  const FrameUniverse u{3};
  std::uint64_t cases = 0;
  for (const auto& f : team_corpus(seed, 100)) {
    const auto symbols = symbols_of({f});
    const Program p(f, symbols);
    std::string where;
    const bool ok = for_each_model(u, symbols.size(), [&](const Frame& fr, std::span<const PointSet> slots) {
      TeamEvaluator reduced(p, fr, TeamOptions{});
      TeamEvaluator full(p, fr, kExhaustive);
      reduced.bind(slots);
      full.bind(slots);
      for (Team t = 0; t <= fr.all(); ++t) {
        ++cases;
        if (reduced.satisfies(t) != full.satisfies(t)) {
          where = model_text(fr, symbols, slots) + ", team " + std::to_string(t);
          return false;
        }
      }
      return true;
    });
    if (!ok) return {false, "reduced search disagrees for " + render(f) + " at " + where};
  }
  return {true, std::to_string(cases) + " (model, team) pairs agree for 200 formulas"};
}

// Team validity over all teams versus Kripke validity of `clause`.
Outcome team_vs_clause(const Formula& team_formula, const Formula& clause, const FrameUniverse& u) {
  const auto symbols = symbols_of({team_formula, clause});
  const Program pt(team_formula, symbols), pc(clause, symbols);
  std::string where;
  const bool ok = for_each_model(u, symbols.size(), [&](const Frame& fr, std::span<const PointSet> slots) {
    TeamEvaluator ev(pt, fr, kExhaustive);
    ev.bind(slots);
    bool team_valid = true;
    for (Team t = 0; t <= fr.all() && team_valid; ++t) team_valid = ev.satisfies(t);
    if (team_valid != (extension(pc, fr, slots) == fr.all())) {
      where = model_text(fr, symbols, slots);
      return false;
    }
    return true;
  });
  if (ok) return {};
  return {false, render(team_formula) + " and " + render(clause) + " disagree on validity at " + where};
}

Outcome criterion_7(std::uint64_t seed) {
  const FrameUniverse u{3};
  const auto fs = generate(GenConfig{Fragment::ml_idis, 2, 2, seed, 200, 0});
  std::size_t frames_agree = 0;
  for (const auto& f : fs) {
    const ClosedClause clause = idis_to_clause(f).at(0);
    const Formula cf = closed_clause_formula(clause);
    if (auto o = team_vs_clause(f, cf, u); !o.ok) return o;
    if (auto o = team_vs_clause(clause_to_idis(clause), cf, u); !o.ok) return o;
    if (auto o = check_equiv(f, cf, u, EquivMode::frame_validity, "frame classes"); !o.ok) return o;
    ++frames_agree;
  }
  for (std::size_t i = 0; i < 200; ++i) {
    const ClosedClause clause = generate_clause(seed, i, 2, 2);
    if (auto o = team_vs_clause(clause_to_idis(clause), closed_clause_formula(clause), u); !o.ok) return o;
  }
  return {true, std::to_string(frames_agree) +
                    " formulas: model validity and frame classes agree with their clauses; 200 generated "
                    "clauses agree with their \\/ form"};
}

Outcome criterion_8(std::uint64_t seed) {
  const FrameUniverse u{3};
  const auto fs = generate(GenConfig{Fragment::emdl, 2, 2, seed, 100, 1});
  std::size_t translated = 0, model_level_differences = 0;
  for (const auto& f : fs) {
    const Formula g = emdl_to_mdl(f);
    if (!(g == f)) ++translated;
    if (auto o = check_equiv(f, g, u, EquivMode::frame_validity, "translation"); !o.ok) return o;
    if (!oracle_equiv(f, g, FrameUniverse{2}, EquivMode::model_validity).equivalent) ++model_level_differences;
  }
  return {true, std::to_string(translated) + " of 100 formulas rewritten, frame validity preserved; " +
                    std::to_string(model_level_differences) +
                    " differ in model validity (expected, not asserted)"};
}

Outcome criterion_9(std::uint64_t seed) {
  const FrameUniverse u{3};
  auto fs = generate(GenConfig{Fragment::mdl, 2, 2, seed, 50, 2});
  for (auto& f : generate(GenConfig{Fragment::emdl, 2, 2, seed, 50, 2})) fs.push_back(f);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (auto o = check_equiv(fs[i], dep_to_idis(fs[i]), u, EquivMode::team, "dep_to_idis #" + std::to_string(i));
        !o.ok) {
      return o;
    }
  }
  return {true, "100 formulas team-equivalent on all (model, team) pairs up to 3 points"};
}

Outcome criterion_10(Level level) {
  const FrameUniverse u{level == Level::full ? std::size_t{4} : std::size_t{3}};
  std::size_t checked = 0;
  std::string failure;
  u.for_each([&](const Frame& f) {
    if (!failure.empty()) return;
    ++checked;
    const UltrafilterExtension ue = ultrafilter_extension(f);
    if (ue.filters.size() != f.size() || !ue.principal_is_isomorphism || !is_isomorphic(ue.frame, f)) {
      failure = "frame size " + std::to_string(f.size()) + " code " + std::to_string(f.code());
    }
  });
  if (!failure.empty()) return {false, "ultrafilter extension not isomorphic: " + failure};
  return {true, std::to_string(checked) + " labeled frames (sizes 1-" + std::to_string(u.max_points) +
                    ") isomorphic to their ultrafilter extensions"};
}

Outcome criterion_11(std::uint64_t seed) {
  const FrameUniverse u{3};
  for (std::size_t i = 0; i < 100; ++i) {
    const ClosedClause clause = generate_clause(seed, i, 2, 2);
    const Formula f = closed_clause_formula(clause);
    const auto gen = audit(Property::gen_subframe_closed, f, u);
    if (gen.verdict != Verdict::pass) return {false, "generated subframes: " + render(f)};
    const auto fin = audit(Property::reflects_fin_gen_subframes, f, u);
    if (fin.verdict != Verdict::pass) return {false, "finitely generated subframes: " + render(f)};
    // A failing frame already fails on a subframe generated by one point per disjunct.
    const auto narrow = audit(Property::reflects_fin_gen_subframes, f, u, AuditOptions{clause.size()});
    if (narrow.verdict != Verdict::pass) return {false, "seeds of clause width: " + render(f)};
  }
  return {true, "100 closed clauses pass both audits (also with seeds bounded by clause width)"};
}

Outcome criterion_12() {
  const FrameUniverse u{3};
  const Formula a = paper_formula("ex_A5_singleton");
  const Formula b = paper_formula("ex_A5_nonempty_rel");
  const auto ra = audit(Property::disjoint_union_closed, a, u);
  const auto rb = audit(Property::gen_subframe_closed, b, u);
  const bool ok_a = classify(a) == Fragment::ml_ubox_pos && ra.verdict == Verdict::counterexample &&
                    replay(ra.property, a, *ra.witness);
  const bool ok_b = classify(b) == Fragment::ml_ubox && rb.verdict == Verdict::counterexample &&
                    replay(rb.property, b, *rb.witness);
  return {ok_a && ok_b, render(a) + " [" + fragment_name(classify(a)) + "] not closed under disjoint unions: " +
                            (ok_a ? "yes" : "no") + "; " + render(b) + " [" + fragment_name(classify(b)) +
                            "] not closed under generated subframes: " + (ok_b ? "yes" : "no")};
}

struct Spec {
  const char* title;
  std::optional<double> budget;
};

Spec spec_of(int id, Level level) {
  switch (id) {
    case 1: return {"frame classes of the two universal-modality examples", 10.0};
    case 2: return {"closure counterexamples for the two examples replay", 5.0};
    case 3: return {"box form and closed clauses preserve meaning", 120.0};
    case 4: return {"closed-formula rewrites are point-equivalent", std::nullopt};
    case 5: return {"flatness, downward closure, empty team", 180.0};
    case 6: return {"choice/split search agrees with full enumeration", std::nullopt};
    case 7: return {"\\/ formulas and closed clauses agree on models and frames", std::nullopt};
    case 8: return {"dependence-atom translation preserves frame validity", 300.0};
    case 9: return {"dep_to_idis is team-equivalent", std::nullopt};
    case 10:
      return {"ultrafilter extensions are isomorphic to finite frames",
              level == Level::quick ? std::optional<double>(30.0) : std::nullopt};
    case 11: return {"closed clauses: generated-subframe closure and reflection", std::nullopt};
    case 12: return {"hierarchy witnesses", std::nullopt};
  }
  throw InputError("no acceptance criterion " + std::to_string(id));
}

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& options) {
  const Spec spec = spec_of(id, options.level);
  CriterionResult r;
  r.id = id;
  r.title = spec.title;
  r.budget_seconds = spec.budget;
  r.seed = options.seed + static_cast<std::uint64_t>(id);
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    switch (id) {
      case 1: o = criterion_1(); break;
      case 2: o = criterion_2(); break;
      case 3: o = criterion_3(r.seed); break;
      case 4: o = criterion_4(r.seed); break;
      case 5: o = criterion_5(r.seed); break;
      case 6: o = criterion_6(r.seed); break;
      case 7: o = criterion_7(r.seed); break;
      case 8: o = criterion_8(r.seed); break;
      case 9: o = criterion_9(r.seed); break;
      case 10: o = criterion_10(options.level); break;
      case 11: o = criterion_11(r.seed); break;
      case 12: o = criterion_12(); break;
    }
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.check_passed = o.ok;
  r.detail = o.detail;
  r.passed = o.ok && (!r.budget_seconds || r.seconds < *r.budget_seconds);
  if (o.ok && !r.passed) r.detail += "; over budget";
  return r;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& options,
                                       const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) {
      continue;
    }
    out.push_back(run_criterion(id, options));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char timing[96];
  if (r.budget_seconds) {
    std::snprintf(timing, sizeof timing, "%.2f s, budget %.0f s", r.seconds, *r.budget_seconds);
  } else {
    std::snprintf(timing, sizeof timing, "%.2f s", r.seconds);
  }
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.title << "  ("
     << timing << ", seed " << r.seed << ")  " << r.detail;
  return os.str();
}

}  // namespace modaldef
