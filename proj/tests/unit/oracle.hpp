// Brute-force reference semantics for the unit tests. Everything here works
// on the formula tree directly and shares no evaluation code with the library.
#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "modaldef/formula.hpp"
#include "modaldef/kripke.hpp"

namespace oracle {

using modaldef::Formula;
using modaldef::Frame;
using modaldef::Kind;
using modaldef::Model;
using modaldef::PointSet;
using modaldef::Team;

inline bool in(PointSet s, std::size_t i) { return (s >> i) & 1U; }

inline std::vector<std::size_t> succ(const Frame& f, std::size_t w) {
  std::vector<std::size_t> out;
  for (auto [a, b] : f.edges()) {
    if (a == w) out.push_back(b);
  }
  return out;
}

inline bool holds(const Model& m, std::size_t w, const Formula& f) {
  const Frame& fr = m.frame();
  switch (f.kind()) {
    case Kind::atom: return in(m.value(f.name()), w);
    case Kind::neg_atom: return !in(m.value(f.name()), w);
    case Kind::conj: return holds(m, w, f.left()) && holds(m, w, f.right());
    case Kind::disj: return holds(m, w, f.left()) || holds(m, w, f.right());
    case Kind::dia:
      for (std::size_t v : succ(fr, w)) {
        if (holds(m, v, f.body())) return true;
      }
      return false;
    case Kind::box:
      for (std::size_t v : succ(fr, w)) {
        if (!holds(m, v, f.body())) return false;
      }
      return true;
    case Kind::ubox:
      for (std::size_t v = 0; v < fr.size(); ++v) {
        if (!holds(m, v, f.body())) return false;
      }
      return true;
    case Kind::udia:
      for (std::size_t v = 0; v < fr.size(); ++v) {
        if (holds(m, v, f.body())) return true;
      }
      return false;
    default: throw std::logic_error("oracle: no pointwise semantics");
  }
}

inline bool valid(const Model& m, const Formula& f) {
  for (std::size_t w = 0; w < m.frame().size(); ++w) {
    if (!holds(m, w, f)) return false;
  }
  return true;
}

inline std::vector<Team> subsets(Team t) {
  std::vector<Team> out;
  for (Team s = 0; s <= t; ++s) {
    if ((s & ~t) == 0) out.push_back(s);
  }
  return out;
}

inline Team image(const Frame& fr, Team t) {
  Team out = 0;
  for (auto [a, b] : fr.edges()) {
    if (in(t, a)) out |= Team{1} << b;
  }
  return out;
}

// T[R]T': every w in T has a successor in T', every v in T' a predecessor in T.
inline bool team_rel(const Frame& fr, Team t, Team s) {
  for (std::size_t w = 0; w < fr.size(); ++w) {
    if (!in(t, w)) continue;
    bool found = false;
    for (std::size_t v : succ(fr, w)) found = found || in(s, v);
    if (!found) return false;
  }
  for (std::size_t v = 0; v < fr.size(); ++v) {
    if (!in(s, v)) continue;
    bool found = false;
    for (auto [a, b] : fr.edges()) found = found || (b == v && in(t, a));
    if (!found) return false;
  }
  return true;
}

// Team clauses taken literally: any cover for |, any successor team for <>.
inline bool team_holds(const Model& m, Team t, const Formula& f) {
  const Frame& fr = m.frame();
  switch (f.kind()) {
    case Kind::atom: return (t & ~m.value(f.name())) == 0;
    case Kind::neg_atom: return (t & m.value(f.name())) == 0;
    case Kind::conj: return team_holds(m, t, f.left()) && team_holds(m, t, f.right());
    case Kind::idisj: return team_holds(m, t, f.left()) || team_holds(m, t, f.right());
    case Kind::disj:
      for (Team a : subsets(t)) {
        for (Team b : subsets(t)) {
          if ((a | b) == t && team_holds(m, a, f.left()) && team_holds(m, b, f.right())) return true;
        }
      }
      return false;
    case Kind::dia:
      for (Team s : subsets(fr.all())) {
        if (team_rel(fr, t, s) && team_holds(m, s, f.body())) return true;
      }
      return false;
    case Kind::box: return team_holds(m, oracle::image(fr, t), f.body());
    case Kind::dep: {
      const auto args = f.args();
      for (std::size_t w = 0; w < fr.size(); ++w) {
        for (std::size_t v = 0; v < fr.size(); ++v) {
          if (!in(t, w) || !in(t, v)) continue;
          bool agree = true;
          for (const auto& a : args) agree = agree && holds(m, w, a) == holds(m, v, a);
          if (agree && holds(m, w, f.target()) != holds(m, v, f.target())) return false;
        }
      }
      return true;
    }
    default: throw std::logic_error("oracle: no team semantics");
  }
}

inline bool team_valid(const Model& m, const Formula& f) {
  for (Team t : subsets(m.frame().all())) {
    if (!team_holds(m, t, f)) return false;
  }
  return true;
}

inline bool has_team_constructors(const Formula& f) {
  if (f.kind() == Kind::idisj || f.kind() == Kind::dep) return true;
  for (const auto& c : f.children()) {
    if (has_team_constructors(c)) return true;
  }
  return false;
}

// Every labeled frame with 1..max_points points.
inline std::vector<Frame> frames(std::size_t max_points) {
  std::vector<Frame> out;
  for (std::size_t n = 1; n <= max_points; ++n) {
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * n)); ++code) {
      std::vector<modaldef::Edge> edges;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if ((code >> (i * n + j)) & 1U) edges.emplace_back(i, j);
        }
      }
      out.push_back(Frame::numbered(n, edges));
    }
  }
  return out;
}

inline void for_each_model_on(const Frame& fr, const std::vector<std::string>& props,
                              const std::function<void(const Model&)>& fn) {
  const std::size_t n = fr.size();
  const std::uint64_t total = std::uint64_t{1} << (n * props.size());
  for (std::uint64_t v = 0; v < total; ++v) {
    modaldef::Valuation val;
    for (std::size_t p = 0; p < props.size(); ++p) val[props[p]] = (v >> (p * n)) & fr.all();
    fn(Model(fr, val));
  }
}

inline void for_each_model(std::size_t max_points, const std::vector<std::string>& props,
                           const std::function<void(const Model&)>& fn) {
  for (const auto& fr : frames(max_points)) for_each_model_on(fr, props, fn);
}

inline std::vector<std::string> props_of(std::initializer_list<Formula> fs) {
  std::set<std::string> all;
  for (const auto& f : fs) {
    for (auto& p : modaldef::propositions(f)) all.insert(p);
  }
  return {all.begin(), all.end()};
}

// Frame validity straight from the definition: every valuation of the
// formula's propositions, every point (Kripke) or every team.
inline bool frame_valid(const Frame& fr, const Formula& f) {
  bool ok = true;
  const bool team = has_team_constructors(f);
  for_each_model_on(fr, props_of({f}), [&](const Model& m) {
    if (ok) ok = team ? team_valid(m, f) : valid(m, f);
  });
  return ok;
}

// Points reachable from `seed` by following edges, as a fixpoint.
inline PointSet closure(const Frame& fr, PointSet seed) {
  PointSet cur = seed;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto [a, b] : fr.edges()) {
      if (in(cur, a) && !in(cur, b)) {
        cur |= PointSet{1} << b;
        changed = true;
      }
    }
  }
  return cur;
}

// Ultrafilters on an n-point set from the definition, as sets of subsets.
inline std::vector<std::set<PointSet>> ultrafilters(std::size_t n) {
  const PointSet all = (PointSet{1} << n) - 1;
  const std::size_t subsets_count = std::size_t{1} << n;
  std::vector<std::set<PointSet>> out;
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << subsets_count); ++fam) {
    std::set<PointSet> u;
    for (PointSet x = 0; x <= all; ++x) {
      if ((fam >> x) & 1U) u.insert(x);
    }
    bool ok = u.count(all) && !u.count(0);
    for (PointSet x : u) {
      for (PointSet y = 0; y <= all && ok; ++y) {
        if ((x & ~y) == 0 && !u.count(y)) ok = false;          // upward closed
        if (u.count(y) && !u.count(x & y)) ok = false;          // intersections
      }
    }
    for (PointSet x = 0; x <= all && ok; ++x) {
      if (!u.count(x) && !u.count(all & ~x)) ok = false;        // prime
    }
    if (ok) out.push_back(u);
  }
  return out;
}

}  // namespace oracle
