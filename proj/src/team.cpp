#include "modaldef/team.hpp"

#include <algorithm>

#include "modaldef/error.hpp"

namespace modaldef {

namespace {

constexpr std::size_t kDenseMemoPoints = 12;
constexpr std::size_t kTeamEnumerationPoints = 20;

inline std::size_t lowest(PointSet s) { return static_cast<std::size_t>(std::countr_zero(s)); }

}  // namespace

Team successor_image(const Model& m, Team t, Direction dir) {
  return dir == Direction::forward ? image(m.frame(), t) : preimage(m.frame(), t);
}

bool team_rel_holds(const Frame& frame, Team t, Team s) {
  return (s & ~image(frame, t)) == 0 && (t & ~preimage(frame, s)) == 0;
}

bool team_rel_holds(const Model& m, Team t, Team s) { return team_rel_holds(m.frame(), t, s); }

void require_team(const Formula& f) {
  if (contains(f, Kind::ubox) || contains(f, Kind::udia)) {
    throw FragmentError("team semantics is undefined for the universal modality (ubox/udia)");
  }
}

TeamEvaluator::TeamEvaluator(const Program& program, const Frame& frame, TeamOptions options)
    : program_(program),
      frame_(frame),
      options_(options),
      dense_(frame.size() <= kDenseMemoPoints) {
  if (program.has(Kind::ubox) || program.has(Kind::udia)) {
    throw FragmentError("team semantics is undefined for the universal modality (ubox/udia)");
  }
  if (dense_) {
    memo_.assign(program.code().size() << frame.size(), -1);
  }
}

void TeamEvaluator::bind(std::span<const PointSet> slots) {
  slots_.assign(slots.begin(), slots.end());
  extensions(program_, frame_, slots_, ext_, /*skip_team_nodes=*/true);
  if (dense_) {
    std::fill(memo_.begin(), memo_.end(), std::int8_t{-1});
  } else {
    sparse_memo_.assign(program_.code().size(), {});
  }
}

bool TeamEvaluator::sat(std::uint32_t node, Team t) {
  if (dense_) {
    auto& slot = memo_[(std::size_t{node} << frame_.size()) | t];
    if (slot < 0) slot = compute(node, t) ? 1 : 0;
    return slot == 1;
  }
  auto& memo = sparse_memo_[node];
  if (auto it = memo.find(t); it != memo.end()) return it->second;
  const bool v = compute(node, t);
  sparse_memo_[node].emplace(t, v);
  return v;
}

bool TeamEvaluator::compute(std::uint32_t node, Team t) {
  const auto& ins = program_.code()[node];
  if (ins.flat && options_.flat_shortcut) return (t & ~ext_[node]) == 0;
  switch (ins.kind) {
    case Kind::atom: return (t & ~slots_[ins.a]) == 0;
    case Kind::neg_atom: return (t & slots_[ins.a]) == 0;
    case Kind::conj: return sat(ins.a, t) && sat(ins.b, t);
    case Kind::idisj: return sat(ins.a, t) || sat(ins.b, t);
    case Kind::disj: return sat_disj(ins.a, ins.b, t);
    case Kind::box: return sat(ins.a, image(frame_, t));
    case Kind::dia: return sat_dia(ins.a, t);
    case Kind::dep: return sat_dep(ins, t);
    case Kind::ubox:
    case Kind::udia: break;
  }
  throw FragmentError("team semantics is undefined for the universal modality (ubox/udia)");
}

bool TeamEvaluator::sat_disj(std::uint32_t left, std::uint32_t right, Team t) {
  // Submasks of t, descending, ending with the empty set.
  for (Team t1 = t;; t1 = (t1 - 1) & t) {
    if (options_.search == Search::reduced) {
      if (sat(left, t1) && sat(right, t & ~t1)) return true;
    } else if (sat(left, t1)) {
      const Team rest = t & ~t1;
      for (Team extra = t1;; extra = (extra - 1) & t1) {
        if (sat(right, rest | extra)) return true;
        if (extra == 0) break;
      }
    }
    if (t1 == 0) break;
  }
  return false;
}

bool TeamEvaluator::sat_dia(std::uint32_t body, Team t) {
  if (options_.search == Search::exhaustive) {
    const Team reach = image(frame_, t);
    for (Team s = reach;; s = (s - 1) & reach) {
      if (team_rel_holds(frame_, t, s) && sat(body, s)) return true;
      if (s == 0) break;
    }
    return false;
  }
  // Choice teams: one successor per member, enumerated as an odometer.
  std::vector<std::uint32_t> members;
  for (Team r = t; r; r &= r - 1) {
    const auto w = static_cast<std::uint32_t>(lowest(r));
    if (frame_.successors(w) == 0) return false;
    members.push_back(w);
  }
  std::vector<PointSet> choice(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    choice[i] = frame_.successors(members[i]) & (0 - frame_.successors(members[i]));
  }
  for (;;) {
    Team s = 0;
    for (PointSet c : choice) s |= c;
    if (sat(body, s)) return true;
    std::size_t i = 0;
    for (; i < members.size(); ++i) {
      // Advance to the next successor of members[i], wrapping to the first.
      const PointSet succ = frame_.successors(members[i]);
      const PointSet higher = succ & ~((choice[i] << 1) - 1);
      if (higher) {
        choice[i] = higher & (0 - higher);
        break;
      }
      choice[i] = succ & (0 - succ);
    }
    if (i == members.size()) return false;
  }
}

bool TeamEvaluator::sat_dep(const Program::Instr& ins, Team t) {
  const auto& ops = ins.operands;
  auto value = [&](std::uint32_t op, std::size_t w) {
    if (options_.flat_shortcut) return member(ext_[op], w);
    return sat(op, singleton(w));
  };
  std::vector<std::uint32_t> members;
  for (Team r = t; r; r &= r - 1) members.push_back(static_cast<std::uint32_t>(lowest(r)));
  // Row per member: argument values followed by the target value.
  const std::size_t width = ops.size();
  std::vector<char> rows(members.size() * width);
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t k = 0; k < width; ++k) rows[i * width + k] = value(ops[k], members[i]);
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const char* a = &rows[i * width];
      const char* b = &rows[j * width];
      if (std::equal(a, a + width - 1, b) && a[width - 1] != b[width - 1]) return false;
    }
  }
  return true;
}

bool eval_team(const Model& m, Team t, const Formula& f, TeamOptions options) {
  require_team(f);
  if (t & ~m.frame().all()) throw InputError("team is not a subset of the model's points");
  Program p(f);
  TeamEvaluator ev(p, m.frame(), options);
  ev.bind(p.slots(m));
  return ev.satisfies(t);
}

bool model_valid_team(const Model& m, const Formula& f, bool assume_downward_closed,
                      TeamOptions options) {
  require_team(f);
  Program p(f);
  TeamEvaluator ev(p, m.frame(), options);
  ev.bind(p.slots(m));
  if (assume_downward_closed) return ev.satisfies(m.frame().all());
  if (m.frame().size() > kTeamEnumerationPoints) {
    throw InputError("exhaustive team enumeration is limited to 20 points");
  }
  const Team all = m.frame().all();
  for (Team t = all;; t = (t - 1) & all) {
    if (!ev.satisfies(t)) return false;
    if (t == 0) break;
  }
  return true;
}

std::vector<Team> satisfying_teams(const Model& m, const Formula& f, TeamOptions options) {
  require_team(f);
  if (m.frame().size() > kTeamEnumerationPoints) {
    throw InputError("exhaustive team enumeration is limited to 20 points");
  }
  Program p(f);
  TeamEvaluator ev(p, m.frame(), options);
  ev.bind(p.slots(m));
  std::vector<Team> out;
  const Team end = Team{1} << m.frame().size();
  for (Team t = 0; t < end; ++t) {
    if (ev.satisfies(t)) out.push_back(t);
  }
  return out;
}

bool check_flatness(const Model& m, Team t, const Formula& f) {
  if (classify(f) != Fragment::ml) throw FragmentError("flatness is stated for ML formulas only");
  const bool team = eval_team(m, t, f, {Search::exhaustive, /*flat_shortcut=*/false});
  const bool pointwise = (t & ~extension(m, f)) == 0;
  return team == pointwise;
}

}  // namespace modaldef
