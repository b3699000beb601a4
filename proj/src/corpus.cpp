#include "modaldef/corpus.hpp"

#include <algorithm>
#include <optional>
#include <random>

#include "modaldef/error.hpp"

namespace modaldef {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream per (seed, stream, index).
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed ^ tag) + index));
}

std::vector<Kind> constructors(Fragment f) {
  std::vector<Kind> ks{Kind::atom, Kind::neg_atom, Kind::conj, Kind::disj, Kind::dia, Kind::box};
  switch (f) {
    case Fragment::ml: break;
    case Fragment::ml_ubox_pos: ks.push_back(Kind::ubox); break;
    case Fragment::ml_ubox: ks.push_back(Kind::ubox); ks.push_back(Kind::udia); break;
    case Fragment::ml_idis: ks.push_back(Kind::idisj); break;
    case Fragment::mdl:
    case Fragment::emdl: ks.push_back(Kind::dep); break;
    case Fragment::mixed: throw FragmentError("cannot generate MIXED formulas");
  }
  return ks;
}

bool is_modal(Kind k) { return k == Kind::dia || k == Kind::box || k == Kind::ubox || k == Kind::udia; }
bool is_binary(Kind k) { return k == Kind::conj || k == Kind::disj || k == Kind::idisj; }

class Generator {
 public:
  Generator(std::mt19937_64 rng, Fragment fragment, std::size_t props, std::size_t deps)
      : rng_(std::move(rng)), fragment_(fragment), kinds_(constructors(fragment)), props_(props), deps_left_(deps) {}

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  Formula literal() {
    std::string name = "p" + std::to_string(1 + pick(props_));
    return pick(2) ? Formula::atom(std::move(name)) : Formula::neg_atom(std::move(name));
  }

  // `budget` bounds the node count; `depth` the modal depth.
  Formula node(std::size_t depth, std::size_t budget, std::optional<Kind> forced = std::nullopt) {
    std::vector<Kind> feasible;
    for (Kind k : kinds_) {
      if (is_modal(k) && (depth == 0 || budget < 2)) continue;
      if (is_binary(k) && budget < 3) continue;
      if (k == Kind::dep && deps_left_ == 0) continue;
      feasible.push_back(k);
    }
    std::vector<Kind> compound;
    for (Kind k : feasible) {
      if (k != Kind::atom && k != Kind::neg_atom) compound.push_back(k);
    }
    Kind k;
    if (forced && std::find(feasible.begin(), feasible.end(), *forced) != feasible.end()) {
      k = *forced;
    } else if (!compound.empty() && pick(5) != 0) {
      k = compound[pick(compound.size())];
    } else {
      k = feasible[pick(feasible.size())];
    }
    switch (k) {
      case Kind::atom: return Formula::atom("p" + std::to_string(1 + pick(props_)));
      case Kind::neg_atom: return Formula::neg_atom("p" + std::to_string(1 + pick(props_)));
      case Kind::dia: return Formula::dia(node(depth - 1, budget - 1));
      case Kind::box: return Formula::box(node(depth - 1, budget - 1));
      case Kind::ubox: return Formula::ubox(node(depth - 1, budget - 1));
      case Kind::udia: return Formula::udia(node(depth - 1, budget - 1));
      case Kind::conj:
      case Kind::disj:
      case Kind::idisj: {
        const std::size_t left = 1 + pick(budget - 2);
        Formula a = node(depth, left);
        Formula b = node(depth, budget - 1 - left);
        if (k == Kind::conj) return Formula::conj(std::move(a), std::move(b));
        if (k == Kind::disj) return Formula::disj(std::move(a), std::move(b));
        return Formula::idisj(std::move(a), std::move(b));
      }
      case Kind::dep: return dependence(depth);
    }
    return literal();
  }

  // ML formula of modal depth <= depth.
  Formula ml(std::size_t depth, std::size_t budget) {
    Generator sub(std::mt19937_64(rng_()), Fragment::ml, props_, 0);
    return sub.node(depth, budget);
  }

 private:
  Formula dependence(std::size_t depth) {
    --deps_left_;
    const std::size_t arity = pick(3);
    auto operand = [&]() -> Formula {
      if (fragment_ == Fragment::mdl || pick(3) == 0) {
        return Formula::atom("p" + std::to_string(1 + pick(props_)));
      }
      return ml(depth, 2 + pick(3));
    };
    std::vector<Formula> args;
    for (std::size_t i = 0; i < arity; ++i) args.push_back(operand());
    return Formula::dep(std::move(args), operand());
  }

  std::mt19937_64 rng_;
  Fragment fragment_;
  std::vector<Kind> kinds_;
  std::size_t props_;
  std::size_t deps_left_;
};

constexpr std::uint64_t kFormulaTag = 0x666f726d756c61ULL;
constexpr std::uint64_t kClosedTag = 0x636c6f736564ULL;
constexpr std::uint64_t kClauseTag = 0x636c61757365ULL;

}  // namespace

Formula generate_one(const GenConfig& cfg, std::size_t index) {
  if (cfg.max_props == 0) throw InputError("max_props must be at least 1");
  const std::vector<Kind> kinds = constructors(cfg.fragment);
  auto rng = stream(cfg.seed, kFormulaTag ^ static_cast<std::uint64_t>(cfg.fragment), index);
  Generator gen(std::move(rng), cfg.fragment, cfg.max_props, cfg.max_dep_nodes);
  const std::size_t budget = 3 + gen.pick(3 + 3 * cfg.max_depth);
  if (index < kinds.size()) return gen.node(cfg.max_depth, budget, kinds[index]);
  return gen.node(cfg.max_depth, budget);
}

std::vector<Formula> generate(const GenConfig& cfg) {
  std::vector<Formula> out;
  out.reserve(cfg.count);
  for (std::size_t i = 0; i < cfg.count; ++i) out.push_back(generate_one(cfg, i));
  return out;
}

Formula generate_closed(std::uint64_t seed, std::size_t index, std::size_t max_depth, std::size_t max_props) {
  if (max_props == 0) throw InputError("max_props must be at least 1");
  Generator gen(stream(seed, kClosedTag, index), Fragment::ml, max_props, 0);
  auto closed_atom = [&]() {
    const std::size_t depth = max_depth == 0 ? 0 : gen.pick(max_depth);
    Formula body = gen.ml(depth, 1 + gen.pick(4));
    return gen.pick(2) ? Formula::ubox(std::move(body)) : Formula::udia(std::move(body));
  };
  Formula out = closed_atom();
  for (std::size_t extra = gen.pick(3); extra > 0; --extra) {
    out = gen.pick(2) ? Formula::conj(std::move(out), closed_atom()) : Formula::disj(std::move(out), closed_atom());
  }
  return out;
}

ClosedClause generate_clause(std::uint64_t seed, std::size_t index, std::size_t max_depth,
                             std::size_t max_props, std::size_t max_width) {
  if (max_props == 0 || max_width == 0) throw InputError("clause generator needs props and width");
  Generator gen(stream(seed, kClauseTag, index), Fragment::ml, max_props, 0);
  ClosedClause clause;
  for (std::size_t k = 1 + gen.pick(max_width); k > 0; --k) {
    clause.push_back(gen.ml(gen.pick(max_depth + 1), 1 + gen.pick(5)));
  }
  return clause;
}

const std::vector<NamedFormula>& paper_formulas() {
  static const std::vector<NamedFormula> table = [] {
    const std::pair<const char*, const char*> src[] = {
        {"ex_A5_singleton", "~p | [u] p"},
        {"ex_A5_nonempty_rel", "<u><>(p | ~p)"},
        {"propA1_i_lhs", "[](p | [u] q)"},
        {"propA1_i_rhs", "[]p | [u] q"},
        {"propA1_ii_lhs", "<>(p & [u] q)"},
        {"propA1_ii_rhs", "<>p & [u] q"},
        {"propA1_iii_lhs", "[u](p | [u] q)"},
        {"propA1_iii_rhs", "[u] p | [u] q"},
        {"propA1_i_compound_lhs", "[](<>p | (<u> q & [u] ~p))"},
        {"propA1_i_compound_rhs", "[]<>p | (<u> q & [u] ~p)"},
        {"propA1_ii_compound_lhs", "<>([]p & ([u] q | <u> <>p))"},
        {"propA1_ii_compound_rhs", "<>[]p & ([u] q | <u> <>p)"},
        {"propA1_iii_compound_lhs", "[u](~p | <u> []q)"},
        {"propA1_iii_compound_rhs", "[u] ~p | <u> []q"},
        {"lemC3_ml", "p | <>q"},
        {"lemC3_ubox", "[u](p | <>q)"},
        {"lemC4_idis", "p \\/ q"},
        {"lemC4_clause", "[u] p | [u] q"},
        {"lemC4_nested", "(p \\/ []q) & <>p"},
        {"lemC5_clause", "[u] ~p | [u] p"},
        {"lemC5_idis", "~p \\/ p"},
        {"dep_mdl", "dep(p; q)"},
        {"dep_emdl", "dep(<>p; q)"},
    };
    std::vector<NamedFormula> out;
    for (auto [name, text] : src) out.push_back({name, parse(text)});
    return out;
  }();
  return table;
}

const Formula& paper_formula(std::string_view name) {
  for (const auto& nf : paper_formulas()) {
    if (nf.name == name) return nf.formula;
  }
  throw InputError("unknown curated formula: " + std::string(name));
}

}  // namespace modaldef
