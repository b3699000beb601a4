#ifndef MODALDEF_TRANSFORM_HPP_
#define MODALDEF_TRANSFORM_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "modaldef/formula.hpp"

namespace modaldef {

enum class Polarity { disjunctive, conjunctive };

// A universal-box clause with ML parts.
//   disjunctive: local | [u] g1 | ... | [u] gn
//   conjunctive: local & [u] g1            (at most one global)
// An absent local part is dropped from the rendered formula.
struct BoxClause {
  std::optional<Formula> local;
  std::vector<Formula> globals;
  Polarity polarity = Polarity::disjunctive;

  Formula to_formula() const;
  friend bool operator==(const BoxClause&, const BoxClause&) = default;
};

// Each inner list [g1..gk] stands for the closed clause [u] g1 | ... | [u] gk.
using ClosedClause = std::vector<Formula>;
using ClosedClauseSet = std::vector<ClosedClause>;

Formula closed_clause_formula(const ClosedClause& clause);

// Box-form decomposition of an ML_UBOX_POS formula. With `conjunctive`
// polarity the result is a conjunction of disjunctive clauses; otherwise a
// disjunction of conjunctive clauses. Throws FragmentError outside
// ML_UBOX_POS.
std::vector<BoxClause> box_clauses(const Formula& f, Polarity form);
Formula to_box_form(const Formula& f, Polarity form = Polarity::conjunctive);

// Closed clauses valid in exactly the models where `f` is valid.
ClosedClauseSet to_closed_clauses(const Formula& f);

// Single-step rewrites that move intuitionistic disjunction upward.
enum class IdisRule {
  conj_left,   // (a \/ b) & c  =>  (a & c) \/ (b & c)
  conj_right,  // c & (a \/ b)  =>  (c & a) \/ (c & b)
  disj_left,   // (a \/ b) | c  =>  (a | c) \/ (b | c)
  disj_right,  // c | (a \/ b)  =>  (c | a) \/ (c | b)
  dia,         // <>(a \/ b)    =>  <>a \/ <>b
  box,         // [](a \/ b)    =>  []a \/ []b
};

inline constexpr IdisRule kIdisRules[] = {IdisRule::conj_left,  IdisRule::conj_right,
                                          IdisRule::disj_left,  IdisRule::disj_right,
                                          IdisRule::dia,        IdisRule::box};

const char* idis_rule_name(IdisRule r);

// Applies `rule` at the root of `f`, or returns nullopt if it does not match.
std::optional<Formula> apply_idis_rule(IdisRule rule, const Formula& f);

// ML disjuncts [p1..pn] with p1 \/ ... \/ pn team-equivalent to `f`,
// structurally deduplicated. Throws FragmentError outside ML_IDIS.
std::vector<Formula> to_idis_normal_form(const Formula& f);

// Closed clause valid (Kripke) exactly where `f` is valid (team).
ClosedClauseSet idis_to_clause(const Formula& f);

// p1 \/ ... \/ pn for the clause [p1..pn]. Throws InputError when empty.
Formula clause_to_idis(const ClosedClause& clause);

// Deterministic supply of reserved symbols _f0, _f1, ...
class FreshSupply {
 public:
  std::string next() { return std::string(kFreshPrefix) + std::to_string(counter_++); }
  std::size_t issued() const { return counter_; }

 private:
  std::size_t counter_ = 0;
};

// Replaces each dependence atom with compound operands by
//   (/\_{0<=i<=k} []^i /\_j (q_j <-> t_j)) -> dep(q_1..q_n; q_0)
// where t_j are the operands, q_j fresh symbols and k the atom's modal depth.
// Frame validity is preserved. Throws FragmentError on \/ or universal
// modalities, InputError if `f` already uses a reserved symbol.
Formula emdl_to_mdl(const Formula& f, FreshSupply& fresh);
Formula emdl_to_mdl(const Formula& f);

// Replaces each dependence atom by a split over the argument truth patterns:
//   |_{patterns} (pattern & (t \/ ~t))
// The result is team-equivalent to `f`. Throws FragmentError on universal
// modalities or \/ (the input must be MDL or EMDL).
Formula dep_to_idis(const Formula& f);

}  // namespace modaldef

#endif  // MODALDEF_TRANSFORM_HPP_
