#include "modaldef/transform.hpp"

#include <algorithm>

#include "modaldef/error.hpp"

namespace modaldef {

namespace {

constexpr std::size_t kMaxClauses = 1u << 20;

template <class T>
void dedupe(std::vector<T>& items) {
  std::vector<T> out;
  for (auto& x : items) {
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(std::move(x));
  }
  items = std::move(out);
}

std::optional<Formula> join(const std::optional<Formula>& a, const std::optional<Formula>& b,
                            Formula (*op)(Formula, Formula)) {
  if (!a) return b;
  if (!b) return a;
  return op(*a, *b);
}

// Some proposition of `f`, used to spell out the constants true and false.
std::string some_symbol(const Formula& f) { return *propositions(f).begin(); }

Formula falsum(const std::string& p) {
  return Formula::conj(Formula::atom(p), Formula::neg_atom(p));
}

Formula verum(const std::string& p) {
  return Formula::disj(Formula::atom(p), Formula::neg_atom(p));
}

// local | [u] g1 | ... ; absent local is false.
struct DClause {
  std::optional<Formula> local;
  std::vector<Formula> globals;
  friend bool operator==(const DClause&, const DClause&) = default;
};

// local & [u] global ; absent parts are true.
struct CClause {
  std::optional<Formula> local;
  std::optional<Formula> global;
  friend bool operator==(const CClause&, const CClause&) = default;
};

using Cnf = std::vector<DClause>;
using Dnf = std::vector<CClause>;

void check_size(std::size_t n) {
  if (n > kMaxClauses) throw Error("box-form normalization exceeds the clause limit");
}

Dnf cnf_to_dnf(const Cnf& cnf) {
  Dnf out{CClause{}};
  for (const auto& clause : cnf) {
    Dnf next;
    for (const auto& partial : out) {
      if (clause.local) {
        next.push_back({join(partial.local, clause.local, &Formula::conj), partial.global});
      }
      for (const auto& g : clause.globals) {
        next.push_back({partial.local, join(partial.global, g, &Formula::conj)});
      }
    }
    dedupe(next);
    check_size(next.size());
    out = std::move(next);
  }
  return out;
}

Cnf dnf_to_cnf(const Dnf& dnf) {
  Cnf out{DClause{}};
  for (const auto& clause : dnf) {
    Cnf next;
    for (const auto& partial : out) {
      if (clause.local) {
        next.push_back({join(partial.local, clause.local, &Formula::disj), partial.globals});
      }
      if (clause.global) {
        DClause c = partial;
        if (std::find(c.globals.begin(), c.globals.end(), *clause.global) == c.globals.end()) {
          c.globals.push_back(*clause.global);
        }
        next.push_back(std::move(c));
      }
    }
    dedupe(next);
    check_size(next.size());
    out = std::move(next);
  }
  return out;
}

Dnf to_dnf(const Formula& f);

Cnf to_cnf(const Formula& f) {
  switch (f.kind()) {
    case Kind::atom:
    case Kind::neg_atom:
      return {DClause{f, {}}};
    case Kind::conj: {
      Cnf out = to_cnf(f.left());
      Cnf rhs = to_cnf(f.right());
      out.insert(out.end(), rhs.begin(), rhs.end());
      dedupe(out);
      return out;
    }
    case Kind::disj: {
      Cnf lhs = to_cnf(f.left());
      Cnf rhs = to_cnf(f.right());
      Cnf out;
      for (const auto& a : lhs) {
        for (const auto& b : rhs) {
          DClause c{join(a.local, b.local, &Formula::disj), a.globals};
          for (const auto& g : b.globals) {
            if (std::find(c.globals.begin(), c.globals.end(), g) == c.globals.end()) {
              c.globals.push_back(g);
            }
          }
          out.push_back(std::move(c));
        }
      }
      dedupe(out);
      check_size(out.size());
      return out;
    }
    case Kind::box: {
      // [](a | closed) == []a | closed
      Cnf out = to_cnf(f.body());
      for (auto& c : out) {
        c.local = Formula::box(c.local ? *c.local : falsum(some_symbol(f)));
      }
      return out;
    }
    case Kind::ubox: {
      // [u](a | closed) == [u]a | closed; [u] false is never true.
      Cnf out = to_cnf(f.body());
      for (auto& c : out) {
        if (c.local) c.globals.insert(c.globals.begin(), *c.local);
        c.local.reset();
        dedupe(c.globals);
      }
      dedupe(out);
      return out;
    }
    case Kind::dia:
      return dnf_to_cnf(to_dnf(f));
    default:
      throw FragmentError(std::string("box form is defined for ML_UBOX_POS only, found ") +
                          kind_name(f.kind()));
  }
}

Dnf to_dnf(const Formula& f) {
  switch (f.kind()) {
    case Kind::atom:
    case Kind::neg_atom:
      return {CClause{f, std::nullopt}};
    case Kind::disj: {
      Dnf out = to_dnf(f.left());
      Dnf rhs = to_dnf(f.right());
      out.insert(out.end(), rhs.begin(), rhs.end());
      dedupe(out);
      return out;
    }
    case Kind::conj: {
      Dnf lhs = to_dnf(f.left());
      Dnf rhs = to_dnf(f.right());
      Dnf out;
      for (const auto& a : lhs) {
        for (const auto& b : rhs) {
          out.push_back({join(a.local, b.local, &Formula::conj),
                         join(a.global, b.global, &Formula::conj)});
        }
      }
      dedupe(out);
      check_size(out.size());
      return out;
    }
    case Kind::dia: {
      // <>(a & closed) == <>a & closed
      Dnf out = to_dnf(f.body());
      for (auto& c : out) {
        c.local = Formula::dia(c.local ? *c.local : verum(some_symbol(f)));
      }
      return out;
    }
    case Kind::box:
    case Kind::ubox:
      return cnf_to_dnf(to_cnf(f));
    default:
      throw FragmentError(std::string("box form is defined for ML_UBOX_POS only, found ") +
                          kind_name(f.kind()));
  }
}

void require_box_fragment(const Formula& f) {
  Fragment fr = classify(f);
  if (fr != Fragment::ml && fr != Fragment::ml_ubox_pos) {
    throw FragmentError(std::string("box form needs an ML_UBOX_POS formula, got ") +
                        fragment_name(fr));
  }
}

}  // namespace

Formula BoxClause::to_formula() const {
  std::vector<Formula> parts;
  if (local) parts.push_back(*local);
  for (const auto& g : globals) parts.push_back(Formula::ubox(g));
  if (parts.empty()) throw std::logic_error("empty box clause");
  return polarity == Polarity::disjunctive ? disj_all(parts) : conj_all(parts);
}

Formula closed_clause_formula(const ClosedClause& clause) {
  if (clause.empty()) throw InputError("a closed clause needs at least one disjunct");
  std::vector<Formula> parts;
  for (const auto& g : clause) parts.push_back(Formula::ubox(g));
  return disj_all(parts);
}

std::vector<BoxClause> box_clauses(const Formula& f, Polarity form) {
  require_box_fragment(f);
  std::vector<BoxClause> out;
  if (form == Polarity::conjunctive) {
    for (auto& c : to_cnf(f)) out.push_back({c.local, c.globals, Polarity::disjunctive});
  } else {
    for (auto& c : to_dnf(f)) {
      std::vector<Formula> globals;
      if (c.global) globals.push_back(*c.global);
      std::optional<Formula> local = c.local;
      // A clause with neither part is the constant true.
      if (!local && globals.empty()) local = verum(some_symbol(f));
      out.push_back({local, globals, Polarity::conjunctive});
    }
  }
  return out;
}

Formula to_box_form(const Formula& f, Polarity form) {
  std::vector<Formula> parts;
  for (const auto& c : box_clauses(f, form)) parts.push_back(c.to_formula());
  return form == Polarity::conjunctive ? conj_all(parts) : disj_all(parts);
}

ClosedClauseSet to_closed_clauses(const Formula& f) {
  ClosedClauseSet out;
  for (const auto& c : box_clauses(f, Polarity::conjunctive)) {
    ClosedClause clause;
    if (c.local) clause.push_back(*c.local);
    clause.insert(clause.end(), c.globals.begin(), c.globals.end());
    dedupe(clause);
    out.push_back(std::move(clause));
  }
  dedupe(out);
  return out;
}

const char* idis_rule_name(IdisRule r) {
  switch (r) {
    case IdisRule::conj_left: return "conj_left";
    case IdisRule::conj_right: return "conj_right";
    case IdisRule::disj_left: return "disj_left";
    case IdisRule::disj_right: return "disj_right";
    case IdisRule::dia: return "dia";
    case IdisRule::box: return "box";
  }
  return "?";
}

std::optional<Formula> apply_idis_rule(IdisRule rule, const Formula& f) {
  auto is_idisj = [](const Formula& g) { return g.kind() == Kind::idisj; };
  switch (rule) {
    case IdisRule::conj_left:
    case IdisRule::disj_left: {
      const Kind k = rule == IdisRule::conj_left ? Kind::conj : Kind::disj;
      if (f.kind() != k || !is_idisj(f.left())) return std::nullopt;
      auto op = k == Kind::conj ? &Formula::conj : &Formula::disj;
      const auto& d = f.left();
      return Formula::idisj(op(d.left(), f.right()), op(d.right(), f.right()));
    }
    case IdisRule::conj_right:
    case IdisRule::disj_right: {
      const Kind k = rule == IdisRule::conj_right ? Kind::conj : Kind::disj;
      if (f.kind() != k || !is_idisj(f.right())) return std::nullopt;
      auto op = k == Kind::conj ? &Formula::conj : &Formula::disj;
      const auto& d = f.right();
      return Formula::idisj(op(f.left(), d.left()), op(f.left(), d.right()));
    }
    case IdisRule::dia:
    case IdisRule::box: {
      const Kind k = rule == IdisRule::dia ? Kind::dia : Kind::box;
      if (f.kind() != k || !is_idisj(f.body())) return std::nullopt;
      auto op = k == Kind::dia ? &Formula::dia : &Formula::box;
      return Formula::idisj(op(f.body().left()), op(f.body().right()));
    }
  }
  return std::nullopt;
}

namespace {

// Children of `f` are already normal; rewrite at the root until no rule applies.
Formula settle(const Formula& f) {
  for (IdisRule r : kIdisRules) {
    if (auto g = apply_idis_rule(r, f)) return Formula::idisj(settle(g->left()), settle(g->right()));
  }
  return f;
}

Formula idis_normalize(const Formula& f) {
  switch (f.kind()) {
    case Kind::atom:
    case Kind::neg_atom:
      return f;
    case Kind::conj: return settle(Formula::conj(idis_normalize(f.left()), idis_normalize(f.right())));
    case Kind::disj: return settle(Formula::disj(idis_normalize(f.left()), idis_normalize(f.right())));
    case Kind::idisj: return Formula::idisj(idis_normalize(f.left()), idis_normalize(f.right()));
    case Kind::dia: return settle(Formula::dia(idis_normalize(f.body())));
    case Kind::box: return settle(Formula::box(idis_normalize(f.body())));
    default:
      throw FragmentError(std::string("idis normal form is defined for ML_IDIS only, found ") +
                          kind_name(f.kind()));
  }
}

void flatten_idisj(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == Kind::idisj) {
    flatten_idisj(f.left(), out);
    flatten_idisj(f.right(), out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

std::vector<Formula> to_idis_normal_form(const Formula& f) {
  std::vector<Formula> out;
  flatten_idisj(idis_normalize(f), out);
  dedupe(out);
  return out;
}

ClosedClauseSet idis_to_clause(const Formula& f) { return {to_idis_normal_form(f)}; }

Formula clause_to_idis(const ClosedClause& clause) {
  if (clause.empty()) throw InputError("a closed clause needs at least one disjunct");
  for (const auto& g : clause) {
    if (classify(g) != Fragment::ml) {
      throw FragmentError("closed clause bodies must be ML formulas, got " + render(g));
    }
  }
  return idisj_all(clause);
}

namespace {

Formula rebuild(const Formula& f, std::vector<Formula> kids) {
  switch (f.kind()) {
    case Kind::conj: return Formula::conj(kids[0], kids[1]);
    case Kind::disj: return Formula::disj(kids[0], kids[1]);
    case Kind::idisj: return Formula::idisj(kids[0], kids[1]);
    case Kind::dia: return Formula::dia(kids[0]);
    case Kind::box: return Formula::box(kids[0]);
    case Kind::ubox: return Formula::ubox(kids[0]);
    case Kind::udia: return Formula::udia(kids[0]);
    default: return f;
  }
}

template <class Fn>
Formula map_deps(const Formula& f, Fn&& on_dep) {
  if (f.kind() == Kind::dep) return on_dep(f);
  if (f.is_literal()) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(map_deps(c, on_dep));
  return rebuild(f, std::move(kids));
}

Formula nested_box(Formula f, std::size_t times) {
  for (std::size_t i = 0; i < times; ++i) f = Formula::box(f);
  return f;
}

}  // namespace

Formula emdl_to_mdl(const Formula& f, FreshSupply& fresh) {
  if (contains(f, Kind::idisj) || contains(f, Kind::ubox) || contains(f, Kind::udia)) {
    throw FragmentError("EMDL translation needs an ML, MDL or EMDL formula, got " +
                        std::string(fragment_name(classify(f))));
  }
  for (const auto& p : propositions(f)) {
    if (p.starts_with(kFreshPrefix)) {
      throw InputError("symbol '" + p + "' collides with the fresh-symbol supply");
    }
  }
  return map_deps(f, [&](const Formula& d) {
    const auto ops = d.children();
    const bool atomic = std::all_of(ops.begin(), ops.end(),
                                    [](const Formula& g) { return g.kind() == Kind::atom; });
    if (atomic) return d;
    std::vector<Formula> symbols;
    std::vector<Formula> links;
    for (const auto& op : ops) {
      Formula q = Formula::atom(fresh.next());
      links.push_back(iff(q, op));
      symbols.push_back(q);
    }
    const Formula link = conj_all(links);
    std::vector<Formula> layers;
    for (std::size_t i = 0; i <= modal_depth(d); ++i) layers.push_back(nested_box(link, i));
    Formula target = symbols.back();
    symbols.pop_back();
    return implies(conj_all(layers), Formula::dep(std::move(symbols), std::move(target)));
  });
}

Formula emdl_to_mdl(const Formula& f) {
  FreshSupply fresh;
  return emdl_to_mdl(f, fresh);
}

Formula dep_to_idis(const Formula& f) {
  if (contains(f, Kind::ubox) || contains(f, Kind::udia)) {
    throw FragmentError("dependence elimination is undefined for the universal modality");
  }
  return map_deps(f, [](const Formula& d) {
    const auto args = d.args();
    const Formula& t = d.target();
    const Formula constant = Formula::idisj(t, negate(t));
    std::vector<Formula> branches;
    const std::size_t patterns = std::size_t{1} << args.size();
    for (std::size_t pat = 0; pat < patterns; ++pat) {
      std::vector<Formula> lits;
      for (std::size_t i = 0; i < args.size(); ++i) {
        lits.push_back(((pat >> i) & 1U) ? negate(args[i]) : args[i]);
      }
      branches.push_back(lits.empty() ? constant : Formula::conj(conj_all(lits), constant));
    }
    return disj_all(branches);
  });
}

}  // namespace modaldef
