#ifndef MODALDEF_FORMULA_HPP_
#define MODALDEF_FORMULA_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace modaldef {

enum class Kind : std::uint8_t {
  atom,
  neg_atom,
  conj,
  disj,
  dia,
  box,
  ubox,   // universal box
  udia,   // universal diamond
  idisj,  // intuitionistic disjunction
  dep,    // dependence atom
};

const char* kind_name(Kind k);

// Immutable formula in negation normal form. Copies share structure.
//
// The constructor set spans ML, ML with the universal modality, ML with
// intuitionistic disjunction, and (extended) modal dependence logic. Negation
// exists only on atoms; see `negate` for the derived negation.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula neg_atom(std::string name);
  static Formula conj(Formula left, Formula right);
  static Formula disj(Formula left, Formula right);
  static Formula dia(Formula body);
  static Formula box(Formula body);
  static Formula ubox(Formula body);
  static Formula udia(Formula body);
  static Formula idisj(Formula left, Formula right);
  // Throws FragmentError if an argument or the target contains a universal
  // modality, an intuitionistic disjunction, or a dependence atom.
  static Formula dep(std::vector<Formula> args, Formula target);

  Kind kind() const { return node_->kind; }
  bool is_literal() const { return kind() == Kind::atom || kind() == Kind::neg_atom; }

  // Proposition symbol of an atom or negated atom; empty otherwise.
  const std::string& name() const { return node_->name; }

  // Children in order: binary nodes (left, right), unary nodes (body),
  // dependence atoms (args..., target).
  std::span<const Formula> children() const { return node_->children; }
  const Formula& left() const { return node_->children.at(0); }
  const Formula& right() const { return node_->children.at(1); }
  const Formula& body() const { return node_->children.at(0); }
  std::span<const Formula> args() const;
  const Formula& target() const;

  std::size_t hash() const { return node_->hash; }
  std::size_t size() const { return node_->size; }

  // Identity of the shared node, for memo tables.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Formula> children;
    std::size_t hash = 0;
    std::size_t size = 1;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Kind kind, std::string name, std::vector<Formula> children);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Syntactic fragments. The inclusion order is ML < ML_UBOX_POS < ML_UBOX,
// ML < MDL < EMDL, ML < ML_IDIS; MIXED sits above everything.
enum class Fragment : std::uint8_t { ml, ml_ubox_pos, ml_ubox, ml_idis, mdl, emdl, mixed };

const char* fragment_name(Fragment f);
Fragment fragment_from_name(std::string_view name);
bool fragment_leq(Fragment a, Fragment b);

Fragment classify(const Formula& f);
std::size_t modal_depth(const Formula& f);
std::set<std::string> propositions(const Formula& f);

bool contains(const Formula& f, Kind k);

// Negation of `f` pushed down to the atoms: box/dia, ubox/udia, conj/disj and
// atom/neg_atom are exchanged. Throws FragmentError on idisj or dep, for which
// no negation is defined.
Formula negate(const Formula& f);

// The shorthands a -> b and a <-> b, expanded into NNF.
Formula implies(const Formula& a, const Formula& b);
Formula iff(const Formula& a, const Formula& b);

// Left-folded n-ary connectives; `parts` must be nonempty.
Formula conj_all(std::span<const Formula> parts);
Formula disj_all(std::span<const Formula> parts);
Formula idisj_all(std::span<const Formula> parts);

// Proposition symbols reserved for generated fresh symbols.
inline constexpr std::string_view kFreshPrefix = "_f";

struct ParseOptions {
  // Accept `_f<digits>` symbols produced by the fresh-symbol supply.
  bool allow_reserved = false;
};

// Concrete syntax, lowest precedence first:
//   a -> b, a <-> b      (expanded; never stored)
//   a \/ b               intuitionistic disjunction
//   a | b
//   a & b
//   ~a !a [] a <> a [u] a <u> a
//   ( a ), dep(a1, ..., an; b), atoms [a-z][a-z0-9_]*
Formula parse(std::string_view text, ParseOptions options = {});

std::string render(const Formula& f);

bool is_valid_symbol(std::string_view name, bool allow_reserved = false);

}  // namespace modaldef

#endif  // MODALDEF_FORMULA_HPP_
