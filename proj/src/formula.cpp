#include "modaldef/formula.hpp"

#include <algorithm>
#include <functional>

#include "modaldef/error.hpp"

namespace modaldef {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool is_ml(const Formula& f) {
  switch (f.kind()) {
    case Kind::ubox:
    case Kind::udia:
    case Kind::idisj:
    case Kind::dep:
      return false;
    default:
      return std::all_of(f.children().begin(), f.children().end(), is_ml);
  }
}

}  // namespace

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::atom: return "atom";
    case Kind::neg_atom: return "neg_atom";
    case Kind::conj: return "conj";
    case Kind::disj: return "disj";
    case Kind::dia: return "dia";
    case Kind::box: return "box";
    case Kind::ubox: return "ubox";
    case Kind::udia: return "udia";
    case Kind::idisj: return "idisj";
    case Kind::dep: return "dep";
  }
  return "?";
}

Formula Formula::make(Kind kind, std::string name, std::vector<Formula> children) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->name = std::move(name);
  std::size_t h = mix(std::hash<std::string>{}(node->name), static_cast<std::size_t>(kind));
  std::size_t size = 1;
  for (const auto& c : children) {
    h = mix(h, c.hash());
    size += c.size();
  }
  // Dependence atoms of different arity must not collide structurally.
  if (kind == Kind::dep) h = mix(h, children.size());
  node->children = std::move(children);
  node->hash = h;
  node->size = size;
  return Formula(std::move(node));
}

Formula Formula::atom(std::string name) { return make(Kind::atom, std::move(name), {}); }
Formula Formula::neg_atom(std::string name) { return make(Kind::neg_atom, std::move(name), {}); }
Formula Formula::conj(Formula l, Formula r) { return make(Kind::conj, {}, {std::move(l), std::move(r)}); }
Formula Formula::disj(Formula l, Formula r) { return make(Kind::disj, {}, {std::move(l), std::move(r)}); }
Formula Formula::idisj(Formula l, Formula r) { return make(Kind::idisj, {}, {std::move(l), std::move(r)}); }
Formula Formula::dia(Formula b) { return make(Kind::dia, {}, {std::move(b)}); }
Formula Formula::box(Formula b) { return make(Kind::box, {}, {std::move(b)}); }
Formula Formula::ubox(Formula b) { return make(Kind::ubox, {}, {std::move(b)}); }
Formula Formula::udia(Formula b) { return make(Kind::udia, {}, {std::move(b)}); }

Formula Formula::dep(std::vector<Formula> args, Formula target) {
  args.push_back(std::move(target));
  for (const auto& a : args) {
    if (!is_ml(a)) {
      throw FragmentError("dependence atom arguments must be ML formulas, got " + render(a));
    }
  }
  return make(Kind::dep, {}, std::move(args));
}

std::span<const Formula> Formula::args() const {
  if (kind() != Kind::dep) return {};
  return children().first(children().size() - 1);
}

const Formula& Formula::target() const {
  if (kind() != Kind::dep) throw std::logic_error("target() on a non-dependence formula");
  return children().back();
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
  if (a.name() != b.name()) return false;
  return std::equal(a.children().begin(), a.children().end(), b.children().begin(),
                    b.children().end());
}

bool operator<(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return false;
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  if (a.name() != b.name()) return a.name() < b.name();
  return std::lexicographical_compare(a.children().begin(), a.children().end(),
                                      b.children().begin(), b.children().end());
}

const char* fragment_name(Fragment f) {
  switch (f) {
    case Fragment::ml: return "ML";
    case Fragment::ml_ubox_pos: return "ML_UBOX_POS";
    case Fragment::ml_ubox: return "ML_UBOX";
    case Fragment::ml_idis: return "ML_IDIS";
    case Fragment::mdl: return "MDL";
    case Fragment::emdl: return "EMDL";
    case Fragment::mixed: return "MIXED";
  }
  return "?";
}

Fragment fragment_from_name(std::string_view name) {
  for (auto f : {Fragment::ml, Fragment::ml_ubox_pos, Fragment::ml_ubox, Fragment::ml_idis,
                 Fragment::mdl, Fragment::emdl, Fragment::mixed}) {
    if (name == fragment_name(f)) return f;
  }
  throw InputError("unknown fragment '" + std::string(name) + "'");
}

bool fragment_leq(Fragment a, Fragment b) {
  if (a == b || a == Fragment::ml || b == Fragment::mixed) return true;
  return (a == Fragment::ml_ubox_pos && b == Fragment::ml_ubox) ||
         (a == Fragment::mdl && b == Fragment::emdl);
}

namespace {

struct Features {
  bool ubox = false;
  bool udia = false;
  bool idisj = false;
  bool dep = false;
  bool compound_dep = false;
};

void collect(const Formula& f, Features& out) {
  switch (f.kind()) {
    case Kind::ubox: out.ubox = true; break;
    case Kind::udia: out.udia = true; break;
    case Kind::idisj: out.idisj = true; break;
    case Kind::dep:
      out.dep = true;
      for (const auto& c : f.children()) {
        if (c.kind() != Kind::atom) out.compound_dep = true;
      }
      return;
    default: break;
  }
  for (const auto& c : f.children()) collect(c, out);
}

}  // namespace

Fragment classify(const Formula& f) {
  Features ft;
  collect(f, ft);
  const bool universal = ft.ubox || ft.udia;
  const int families = int(universal) + int(ft.idisj) + int(ft.dep);
  if (families > 1) return Fragment::mixed;
  if (ft.udia) return Fragment::ml_ubox;
  if (ft.ubox) return Fragment::ml_ubox_pos;
  if (ft.idisj) return Fragment::ml_idis;
  if (ft.compound_dep) return Fragment::emdl;
  if (ft.dep) return Fragment::mdl;
  return Fragment::ml;
}

std::size_t modal_depth(const Formula& f) {
  std::size_t inner = 0;
  for (const auto& c : f.children()) inner = std::max(inner, modal_depth(c));
  return (f.kind() == Kind::dia || f.kind() == Kind::box) ? inner + 1 : inner;
}

namespace {

void collect_props(const Formula& f, std::set<std::string>& out) {
  if (f.is_literal()) {
    out.insert(f.name());
    return;
  }
  for (const auto& c : f.children()) collect_props(c, out);
}

}  // namespace

std::set<std::string> propositions(const Formula& f) {
  std::set<std::string> out;
  collect_props(f, out);
  return out;
}

bool contains(const Formula& f, Kind k) {
  if (f.kind() == k) return true;
  return std::any_of(f.children().begin(), f.children().end(),
                     [k](const Formula& c) { return contains(c, k); });
}

Formula negate(const Formula& f) {
  switch (f.kind()) {
    case Kind::atom: return Formula::neg_atom(f.name());
    case Kind::neg_atom: return Formula::atom(f.name());
    case Kind::conj: return Formula::disj(negate(f.left()), negate(f.right()));
    case Kind::disj: return Formula::conj(negate(f.left()), negate(f.right()));
    case Kind::dia: return Formula::box(negate(f.body()));
    case Kind::box: return Formula::dia(negate(f.body()));
    case Kind::ubox: return Formula::udia(negate(f.body()));
    case Kind::udia: return Formula::ubox(negate(f.body()));
    case Kind::idisj:
    case Kind::dep:
      throw FragmentError(std::string("negation is not defined over ") + kind_name(f.kind()));
  }
  throw std::logic_error("unreachable");
}

Formula implies(const Formula& a, const Formula& b) { return Formula::disj(negate(a), b); }

Formula iff(const Formula& a, const Formula& b) {
  return Formula::conj(implies(a, b), implies(b, a));
}

namespace {

Formula fold(std::span<const Formula> parts, Formula (*op)(Formula, Formula)) {
  if (parts.empty()) throw std::invalid_argument("cannot fold an empty formula list");
  Formula acc = parts.front();
  for (const auto& p : parts.subspan(1)) acc = op(acc, p);
  return acc;
}

}  // namespace

Formula conj_all(std::span<const Formula> parts) { return fold(parts, &Formula::conj); }
Formula disj_all(std::span<const Formula> parts) { return fold(parts, &Formula::disj); }
Formula idisj_all(std::span<const Formula> parts) { return fold(parts, &Formula::idisj); }

}  // namespace modaldef
