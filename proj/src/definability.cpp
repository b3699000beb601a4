#include "modaldef/definability.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <unordered_map>

#include "modaldef/error.hpp"
#include "modaldef/frameops.hpp"

namespace modaldef {

std::uint64_t FrameUniverse::frames_of_size(std::size_t k) {
  if (k * k >= 64) throw InputError("frame universe too large");
  return std::uint64_t{1} << (k * k);
}

std::uint64_t FrameUniverse::count() const {
  std::uint64_t total = 0;
  for (std::size_t k = 1; k <= max_points; ++k) total += frames_of_size(k);
  return total;
}

void FrameUniverse::for_each(const std::function<void(const Frame&)>& fn) const {
  if (max_points > 7) throw InputError("frame universe supports at most 7 points");
  for (std::size_t k = 1; k <= max_points; ++k) {
    const std::uint64_t n = frames_of_size(k);
    for (std::uint64_t code = 0; code < n; ++code) fn(Frame::from_code(k, code));
  }
}

std::vector<Frame> FrameUniverse::frames() const {
  std::vector<Frame> out;
  for_each([&](const Frame& f) { out.push_back(f); });
  return out;
}

Semantics semantics_for(const Formula& f) {
  switch (classify(f)) {
    case Fragment::ml:
    case Fragment::ml_ubox_pos:
    case Fragment::ml_ubox:
      return Semantics::kripke;
    case Fragment::ml_idis:
    case Fragment::mdl:
    case Fragment::emdl:
      return Semantics::team;
    case Fragment::mixed:
      break;
  }
  throw FragmentError("formula mixes universal modalities, \\/ and dependence atoms: " + render(f));
}

bool for_each_valuation(std::size_t n, std::size_t symbols,
                        const std::function<bool(std::span<const PointSet>)>& fn) {
  if (symbols * n >= 63) throw InputError("too many valuations to enumerate");
  const std::uint64_t total = std::uint64_t{1} << (symbols * n);
  const PointSet mask = full_set(n);
  std::vector<PointSet> slots(symbols, 0);
  for (std::uint64_t v = 0; v < total; ++v) {
    for (std::size_t p = 0; p < symbols; ++p) slots[p] = (v >> (p * n)) & mask;
    if (!fn(slots)) return false;
  }
  return true;
}

namespace {

std::vector<std::string> merged_symbols(const Formula& f, const std::vector<std::string>& extra) {
  std::set<std::string> all = propositions(f);
  all.insert(extra.begin(), extra.end());
  return {all.begin(), all.end()};
}

std::vector<std::string> merged_symbols(const Formula& f, const Formula& g) {
  std::set<std::string> all = propositions(f);
  for (auto& p : propositions(g)) all.insert(p);
  return {all.begin(), all.end()};
}

Valuation valuation_of(const std::vector<std::string>& symbols, std::span<const PointSet> slots) {
  Valuation v;
  for (std::size_t i = 0; i < symbols.size(); ++i) v.emplace(symbols[i], slots[i]);
  return v;
}

std::vector<PointSet> slots_of(std::uint64_t index, std::size_t n, std::size_t symbols) {
  std::vector<PointSet> slots(symbols);
  for (std::size_t p = 0; p < symbols; ++p) slots[p] = (index >> (p * n)) & full_set(n);
  return slots;
}

std::size_t lowest(PointSet s) { return static_cast<std::size_t>(std::countr_zero(s)); }

}  // namespace

ValidityChecker::ValidityChecker(const Formula& f, std::vector<std::string> extra_symbols,
                                 TeamOptions team_options)
    : formula_(f),
      semantics_(semantics_for(f)),
      team_options_(team_options),
      program_(f, merged_symbols(f, extra_symbols)) {}

std::optional<std::uint64_t> ValidityChecker::search(const Frame& frame) const {
  const std::size_t n = frame.size();
  const std::size_t k = program_.symbols().size();
  if (k * n >= 63) throw InputError("too many valuations to enumerate");
  const std::uint64_t total = std::uint64_t{1} << (k * n);
  const PointSet mask = frame.all();
  std::vector<PointSet> slots(k, 0);
  auto fill = [&](std::uint64_t v) {
    for (std::size_t p = 0; p < k; ++p) slots[p] = (v >> (p * n)) & mask;
  };
  if (semantics_ == Semantics::kripke) {
    std::vector<PointSet> ext;
    for (std::uint64_t v = 0; v < total; ++v) {
      fill(v);
      extensions(program_, frame, slots, ext);
      if (ext[program_.root()] != mask) return v;
    }
    return std::nullopt;
  }
  TeamEvaluator ev(program_, frame, team_options_);
  for (std::uint64_t v = 0; v < total; ++v) {
    fill(v);
    ev.bind(slots);
    if (!ev.satisfies(mask)) return v;
  }
  return std::nullopt;
}

bool ValidityChecker::valid(const Frame& frame) const { return !search(frame).has_value(); }

std::optional<Countermodel> ValidityChecker::countermodel(const Frame& frame) const {
  const auto v = search(frame);
  if (!v) return std::nullopt;
  const auto slots = slots_of(*v, frame.size(), program_.symbols().size());
  Countermodel c{Model(frame, valuation_of(program_.symbols(), slots)), std::nullopt, std::nullopt};
  if (semantics_ == Semantics::kripke) {
    c.point = lowest(frame.all() & ~extension(program_, frame, slots));
  } else {
    c.team = frame.all();
  }
  return c;
}

bool model_valid(const Model& m, const Formula& f) {
  return semantics_for(f) == Semantics::kripke ? model_valid_kripke(m, f) : model_valid_team(m, f);
}

bool frame_valid(const Frame& frame, const Formula& f) { return ValidityChecker(f).valid(frame); }

std::optional<Countermodel> find_countermodel(const Frame& frame, const Formula& f) {
  return ValidityChecker(f).countermodel(frame);
}

std::vector<Frame> frame_class(const Formula& f, const FrameUniverse& u) {
  const ValidityChecker checker(f);
  std::vector<Frame> out;
  u.for_each([&](const Frame& fr) {
    if (checker.valid(fr)) out.push_back(fr);
  });
  return out;
}

const char* property_name(Property p) {
  switch (p) {
    case Property::gen_subframe_closed: return "gen_subframe_closed";
    case Property::disjoint_union_closed: return "disjoint_union_closed";
    case Property::bounded_morphic_image_closed: return "bounded_morphic_image_closed";
    case Property::reflects_fin_gen_subframes: return "reflects_fin_gen_subframes";
    case Property::reflects_ultrafilter_ext: return "reflects_ultrafilter_ext";
  }
  return "?";
}

Property property_from_name(std::string_view name) {
  static const std::pair<std::string_view, Property> table[] = {
      {"gen_subframe_closed", Property::gen_subframe_closed},
      {"gen-subframe", Property::gen_subframe_closed},
      {"disjoint_union_closed", Property::disjoint_union_closed},
      {"disjoint-union", Property::disjoint_union_closed},
      {"bounded_morphic_image_closed", Property::bounded_morphic_image_closed},
      {"bounded-morphism", Property::bounded_morphic_image_closed},
      {"reflects_fin_gen_subframes", Property::reflects_fin_gen_subframes},
      {"fin-gen", Property::reflects_fin_gen_subframes},
      {"reflects_ultrafilter_ext", Property::reflects_ultrafilter_ext},
      {"ultrafilter", Property::reflects_ultrafilter_ext},
  };
  for (auto [n, p] : table) {
    if (n == name) return p;
  }
  throw InputError("unknown audit property: " + std::string(name));
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::bounded_pass: return "bounded_pass";
    case Verdict::counterexample: return "counterexample";
  }
  return "?";
}

namespace {

// Frame validity keyed by (size, relation code); point names are irrelevant.
class ValidityCache {
 public:
  explicit ValidityCache(const ValidityChecker& checker) : checker_(checker) {}

  bool valid(const Frame& fr) {
    const std::size_t n = fr.size();
    if (n <= 4) {
      if (dense_.size() <= n) dense_.resize(n + 1);
      auto& table = dense_[n];
      if (table.empty()) table.assign(FrameUniverse::frames_of_size(n), -1);
      auto& slot = table[fr.code()];
      if (slot < 0) slot = checker_.valid(fr) ? 1 : 0;
      return slot == 1;
    }
    const auto key = std::make_pair(n, fr.code());
    auto it = sparse_.find(key);
    if (it != sparse_.end()) return it->second;
    const bool v = checker_.valid(fr);
    sparse_.emplace(key, v);
    return v;
  }

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<std::size_t, std::uint64_t>& k) const {
      return std::hash<std::uint64_t>{}(k.second * 31 + k.first);
    }
  };
  const ValidityChecker& checker_;
  std::vector<std::vector<std::int8_t>> dense_;
  std::unordered_map<std::pair<std::size_t, std::uint64_t>, bool, KeyHash> sparse_;
};

std::optional<BoundedMorphism> first_epimorphism(const Frame& src, const Frame& dst) {
  if (dst.size() > src.size()) return std::nullopt;
  // An edgeless frame only maps onto edgeless frames and vice versa.
  if (src.empty_relation() != dst.empty_relation()) return std::nullopt;
  BoundedMorphism bm{src, dst, std::vector<std::size_t>(src.size(), 0)};
  for (;;) {
    if (is_surjective(bm) && check_bounded_morphism(bm)) return bm;
    std::size_t i = src.size();
    while (i > 0) {
      --i;
      if (++bm.map[i] < dst.size()) break;
      bm.map[i] = 0;
      if (i == 0) return std::nullopt;
    }
  }
}

}  // namespace

AuditReport audit(Property p, const Formula& f, const FrameUniverse& u, AuditOptions options) {
  const ValidityChecker checker(f);
  ValidityCache cache(checker);
  AuditReport report{p, f, u.max_points, Verdict::pass, std::nullopt, 0, {}};
  const std::vector<Frame> frames = u.frames();

  auto fail = [&](Witness w) {
    if (!w.countermodel) w.countermodel = checker.countermodel(w.target);
    report.verdict = Verdict::counterexample;
    report.witness = std::move(w);
    return report;
  };

  switch (p) {
    case Property::gen_subframe_closed:
      for (const Frame& fr : frames) {
        ++report.frames_checked;
        if (!cache.valid(fr)) continue;
        for (PointSet seed = 1; seed <= fr.all(); ++seed) {
          Frame sub = generated_subframe(fr, seed);
          if (!cache.valid(sub)) return fail({{fr}, std::move(sub), seed, std::nullopt, 0, std::nullopt, {}});
        }
      }
      return report;

    case Property::disjoint_union_closed: {
      std::vector<const Frame*> members;
      for (const Frame& fr : frames) {
        ++report.frames_checked;
        if (cache.valid(fr)) members.push_back(&fr);
      }
      bool pruned = false;
      for (const Frame* a : members) {
        for (const Frame* b : members) {
          if (a->size() + b->size() > u.max_points) {
            pruned = true;
            continue;
          }
          const Frame parts[] = {*a, *b};
          Frame un = disjoint_union(parts);
          if (!cache.valid(un)) return fail({{*a, *b}, std::move(un), std::nullopt, std::nullopt, 0, std::nullopt, {}});
        }
      }
      if (pruned) {
        report.verdict = Verdict::bounded_pass;
        report.detail = "unions larger than the universe were not checked";
      }
      return report;
    }

    case Property::bounded_morphic_image_closed: {
      std::vector<const Frame*> outside;
      for (const Frame& fr : frames) {
        if (!cache.valid(fr)) outside.push_back(&fr);
      }
      for (const Frame& fr : frames) {
        ++report.frames_checked;
        if (!cache.valid(fr)) continue;
        for (const Frame* g : outside) {
          if (auto bm = first_epimorphism(fr, *g)) {
            return fail({{fr}, *g, std::nullopt, std::move(bm->map), 0, std::nullopt, {}});
          }
        }
      }
      return report;
    }

    case Property::reflects_fin_gen_subframes:
      for (const Frame& fr : frames) {
        ++report.frames_checked;
        if (cache.valid(fr)) continue;
        const std::size_t bound = options.max_seed == 0 ? fr.size() : options.max_seed;
        auto subs = finitely_generated_subframes(fr, bound);
        const bool all_valid = std::all_of(subs.begin(), subs.end(), [&](const Frame& s) { return cache.valid(s); });
        if (all_valid) return fail({std::move(subs), fr, std::nullopt, std::nullopt, bound, std::nullopt, {}});
      }
      return report;

    case Property::reflects_ultrafilter_ext:
      for (const Frame& fr : frames) {
        ++report.frames_checked;
        const UltrafilterExtension ue = ultrafilter_extension(fr);
        if (!ue.principal_is_isomorphism || !is_isomorphic(ue.frame, fr)) {
          Witness w{{ue.frame}, fr, std::nullopt, std::nullopt, 0, std::nullopt, "ultrafilter extension is not isomorphic to the frame"};
          report.verdict = Verdict::counterexample;
          report.witness = std::move(w);
          return report;
        }
        if (cache.valid(ue.frame) && !cache.valid(fr)) {
          return fail({{ue.frame}, fr, std::nullopt, std::nullopt, 0, std::nullopt, {}});
        }
      }
      report.detail = "every ultrafilter extension is isomorphic to its frame";
      return report;
  }
  return report;
}

bool countermodel_falsifies(const Formula& f, const Countermodel& c) {
  if (c.point) {
    if (*c.point >= c.model.frame().size()) return false;
    return !eval_pointed(c.model, *c.point, f);
  }
  if (c.team) return !eval_team(c.model, *c.team, f);
  return false;
}

bool replay(Property p, const Formula& f, const Witness& w) {
  if (w.sources.empty()) return false;
  for (const Frame& s : w.sources) {
    if (!frame_valid(s, f)) return false;
  }
  switch (p) {
    case Property::gen_subframe_closed:
      if (!w.seed || w.sources.size() != 1) return false;
      if (!(generated_subframe(w.sources[0], *w.seed) == w.target)) return false;
      break;
    case Property::disjoint_union_closed:
      if (!(disjoint_union(w.sources) == w.target)) return false;
      break;
    case Property::bounded_morphic_image_closed: {
      if (!w.morphism || w.sources.size() != 1) return false;
      const BoundedMorphism bm{w.sources[0], w.target, *w.morphism};
      if (!check_bounded_morphism(bm) || !is_surjective(bm)) return false;
      break;
    }
    case Property::reflects_fin_gen_subframes:
      if (w.max_seed == 0) return false;
      if (finitely_generated_subframes(w.target, w.max_seed) != w.sources) return false;
      break;
    case Property::reflects_ultrafilter_ext:
      if (w.sources.size() != 1 || !(ultrafilter_extension(w.target).frame == w.sources[0])) return false;
      break;
  }
  if (!w.countermodel || !(w.countermodel->model.frame() == w.target)) return false;
  return countermodel_falsifies(f, *w.countermodel);
}

const char* equiv_mode_name(EquivMode m) {
  switch (m) {
    case EquivMode::kripke_point: return "kripke_point";
    case EquivMode::team: return "team";
    case EquivMode::model_validity: return "model_validity";
    case EquivMode::frame_validity: return "frame_validity";
  }
  return "?";
}

EquivMode equiv_mode_from_name(std::string_view name) {
  if (name == "kripke_point" || name == "kripke-point" || name == "point") return EquivMode::kripke_point;
  if (name == "team") return EquivMode::team;
  if (name == "model_validity" || name == "model-validity" || name == "model") return EquivMode::model_validity;
  if (name == "frame_validity" || name == "frame-validity" || name == "frame") return EquivMode::frame_validity;
  throw InputError("unknown equivalence mode: " + std::string(name));
}

EquivResult oracle_equiv(const Formula& f, const Formula& g, const FrameUniverse& u, EquivMode mode) {
  EquivResult result;
  if (mode == EquivMode::frame_validity) {
    const ValidityChecker cf(f), cg(g);
    for (const Frame& fr : u.frames()) {
      ++result.cases;
      const auto mf = cf.countermodel(fr);
      const auto mg = cg.countermodel(fr);
      if (mf.has_value() != mg.has_value()) {
        const Countermodel& c = mf ? *mf : *mg;
        result.equivalent = false;
        result.counterexample = EquivCounterexample{c.model, c.point, c.team, !mf, !mg};
        return result;
      }
    }
    return result;
  }

  if (mode == EquivMode::kripke_point) {
    require_pointed(f);
    require_pointed(g);
  } else if (mode == EquivMode::team) {
    require_team(f);
    require_team(g);
  }
  const auto symbols = merged_symbols(f, g);
  const Program pf(f, symbols), pg(g, symbols);
  const Semantics sf = mode == EquivMode::team ? Semantics::team : semantics_for(f);
  const Semantics sg = mode == EquivMode::team ? Semantics::team : semantics_for(g);

  for (const Frame& fr : u.frames()) {
    const PointSet all = fr.all();
    std::optional<TeamEvaluator> tf, tg;
    if (sf == Semantics::team) tf.emplace(pf, fr);
    if (sg == Semantics::team) tg.emplace(pg, fr);
    std::vector<PointSet> ef, eg;
    const bool done = for_each_valuation(fr.size(), symbols.size(), [&](std::span<const PointSet> slots) {
      auto found = [&](std::optional<std::size_t> point, std::optional<Team> team, bool a, bool b) {
        result.equivalent = false;
        result.counterexample = EquivCounterexample{Model(fr, valuation_of(symbols, slots)), point, team, a, b};
        return false;
      };
      if (tf) tf->bind(slots);
      if (tg) tg->bind(slots);
      if (mode == EquivMode::kripke_point) {
        ++result.cases;
        const PointSet xf = extension(pf, fr, slots);
        const PointSet xg = extension(pg, fr, slots);
        if (xf != xg) {
          const std::size_t w = lowest(xf ^ xg);
          return found(w, std::nullopt, member(xf, w), member(xg, w));
        }
        return true;
      }
      if (mode == EquivMode::team) {
        for (Team t = 0;; ++t) {
          ++result.cases;
          const bool a = tf->satisfies(t), b = tg->satisfies(t);
          if (a != b) return found(std::nullopt, t, a, b);
          if (t == all) break;
        }
        return true;
      }
      ++result.cases;
      const bool a = tf ? tf->satisfies(all) : extension(pf, fr, slots) == all;
      const bool b = tg ? tg->satisfies(all) : extension(pg, fr, slots) == all;
      if (a != b) return found(std::nullopt, std::nullopt, a, b);
      return true;
    });
    if (!done) return result;
  }
  return result;
}

bool replay(const Formula& f, const Formula& g, EquivMode mode, const EquivCounterexample& c) {
  bool a = false, b = false;
  switch (mode) {
    case EquivMode::kripke_point:
      if (!c.point) return false;
      a = eval_pointed(c.model, *c.point, f);
      b = eval_pointed(c.model, *c.point, g);
      break;
    case EquivMode::team:
      if (!c.team) return false;
      a = eval_team(c.model, *c.team, f);
      b = eval_team(c.model, *c.team, g);
      break;
    case EquivMode::model_validity:
      a = model_valid(c.model, f);
      b = model_valid(c.model, g);
      break;
    case EquivMode::frame_validity: {
      a = frame_valid(c.model.frame(), f);
      b = frame_valid(c.model.frame(), g);
      const Formula& failing = a ? g : f;
      if (a != b && model_valid(c.model, failing)) return false;
      break;
    }
  }
  return a == c.first_holds && b == c.second_holds && a != b;
}

}  // namespace modaldef
