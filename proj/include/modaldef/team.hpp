#ifndef MODALDEF_TEAM_HPP_
#define MODALDEF_TEAM_HPP_

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "modaldef/formula.hpp"
#include "modaldef/kripke.hpp"

namespace modaldef {

enum class Direction { forward, backward };

// R[T] for `forward`, R^-1[T] for `backward`.
Team successor_image(const Model& m, Team t, Direction dir = Direction::forward);

// T[R]S: every member of t has a successor in s and every member of s has a
// predecessor in t.
bool team_rel_holds(const Frame& frame, Team t, Team s);
bool team_rel_holds(const Model& m, Team t, Team s);

// How the existential clauses are searched.
//
// reduced: diamond witnesses range over choice teams {f(w) : w in T}, and
// disjunction splits range over disjoint partitions T1, T \ T1. Both are
// complete for downward-closed formulas.
// exhaustive: every T' with T[R]T', and every cover T1 u T2 = T.
enum class Search { reduced, exhaustive };

struct TeamOptions {
  Search search = Search::reduced;
  // Decide ML subformulas as T subset-of ext(phi) instead of recursing through
  // the team clauses.
  bool flat_shortcut = true;
};

// Memoizing evaluator for one program on one frame. Rebinding the valuation
// clears the memo and keeps the allocations.
class TeamEvaluator {
 public:
  TeamEvaluator(const Program& program, const Frame& frame, TeamOptions options = {});

  void bind(std::span<const PointSet> slots);
  bool satisfies(Team t) { return sat(program_.root(), t); }
  bool satisfies_node(std::uint32_t node, Team t) { return sat(node, t); }

 private:
  bool sat(std::uint32_t node, Team t);
  bool compute(std::uint32_t node, Team t);
  bool sat_dia(std::uint32_t body, Team t);
  bool sat_disj(std::uint32_t left, std::uint32_t right, Team t);
  bool sat_dep(const Program::Instr& ins, Team t);

  const Program& program_;
  const Frame& frame_;
  TeamOptions options_;
  std::vector<PointSet> slots_;
  std::vector<PointSet> ext_;
  bool dense_;
  std::vector<std::int8_t> memo_;  // node * 2^n + team, dense frames only
  std::vector<std::unordered_map<Team, bool>> sparse_memo_;
};

// Throws FragmentError if `f` contains a universal modality.
void require_team(const Formula& f);

bool eval_team(const Model& m, Team t, const Formula& f, TeamOptions options = {});

// Validity under team semantics: every team of `m` satisfies `f`.
// `assume_downward_closed` checks only the full team, which is equivalent for
// every formula built from the team constructors.
bool model_valid_team(const Model& m, const Formula& f, bool assume_downward_closed = true,
                      TeamOptions options = {});

// All satisfying teams in ascending bit order. Frames up to 20 points.
std::vector<Team> satisfying_teams(const Model& m, const Formula& f, TeamOptions options = {});

// Whether team satisfaction of the ML formula `f` on `t` equals satisfaction
// at every member of `t`. The team side runs the unshortened clauses.
// Throws FragmentError outside ML.
bool check_flatness(const Model& m, Team t, const Formula& f);

}  // namespace modaldef

#endif  // MODALDEF_TEAM_HPP_
