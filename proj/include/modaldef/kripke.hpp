#ifndef MODALDEF_KRIPKE_HPP_
#define MODALDEF_KRIPKE_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modaldef/formula.hpp"

namespace modaldef {

// Set of points of a frame, bit i standing for the point with index i.
using PointSet = std::uint64_t;
// A team is a set of points; the alias marks the team-semantic role.
using Team = PointSet;

inline constexpr std::size_t kMaxPoints = 64;

inline PointSet singleton(std::size_t i) { return PointSet{1} << i; }
inline bool member(PointSet s, std::size_t i) { return (s >> i) & 1U; }
inline std::size_t cardinality(PointSet s) { return static_cast<std::size_t>(std::popcount(s)); }
inline PointSet full_set(std::size_t n) { return n >= 64 ? ~PointSet{0} : (PointSet{1} << n) - 1; }

using Edge = std::pair<std::size_t, std::size_t>;

// Finite Kripke frame with named points. Point order fixes the internal
// indexing; at most kMaxPoints points.
class Frame {
 public:
  Frame(std::vector<std::string> names, std::span<const Edge> edges);

  // Points named "1".."n".
  static Frame numbered(std::size_t n, std::span<const Edge> edges);
  // Points "1".."n"; bit (i*n + j) of `code` stands for the edge i -> j.
  static Frame from_code(std::size_t n, std::uint64_t code);

  std::size_t size() const { return names_.size(); }
  PointSet all() const { return full_set(size()); }
  PointSet successors(std::size_t w) const { return succ_[w]; }
  PointSet predecessors(std::size_t w) const { return pred_[w]; }
  bool related(std::size_t a, std::size_t b) const { return member(succ_[a], b); }
  bool empty_relation() const;
  std::size_t edge_count() const;
  std::vector<Edge> edges() const;

  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  // Throws InputError for unknown names.
  std::size_t index_of(std::string_view name) const;
  PointSet set_of(std::span<const std::string> names) const;
  std::vector<std::string> names_of(PointSet s) const;

  // Relation code as in from_code; requires size() <= 8.
  std::uint64_t code() const;

  // Same point names in the same order and the same relation.
  friend bool operator==(const Frame& a, const Frame& b);

 private:
  std::vector<std::string> names_;
  std::vector<PointSet> succ_;
  std::vector<PointSet> pred_;
};

// Image R[T] of a point set under the accessibility relation.
PointSet image(const Frame& frame, PointSet s);
// Preimage R^-1[T].
PointSet preimage(const Frame& frame, PointSet s);

// Propositions missing from the map are false everywhere.
using Valuation = std::map<std::string, PointSet, std::less<>>;

class Model {
 public:
  Model(Frame frame, Valuation valuation);

  const Frame& frame() const { return frame_; }
  const Valuation& valuation() const { return valuation_; }
  PointSet value(std::string_view prop) const;

 private:
  Frame frame_;
  Valuation valuation_;
};

// Flat post-order form of a formula with shared subformulas merged and
// proposition symbols resolved to slots. Evaluation loops over many models
// run on this form.
class Program {
 public:
  struct Instr {
    Kind kind = Kind::atom;
    std::uint32_t a = 0;  // first child / proposition slot for literals
    std::uint32_t b = 0;  // second child
    std::vector<std::uint32_t> operands;  // dependence atoms: args..., target
    bool flat = false;    // ML subformula
  };

  explicit Program(const Formula& f);
  // Slots follow `symbols`, which must contain every proposition of `f`.
  Program(const Formula& f, std::span<const std::string> symbols);

  const std::vector<Instr>& code() const { return code_; }
  std::uint32_t root() const { return static_cast<std::uint32_t>(code_.size() - 1); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  const Formula& formula() const { return formula_; }
  bool has(Kind k) const;

  // Valuation slots of `model` in symbol order.
  std::vector<PointSet> slots(const Model& model) const;

 private:
  void build(const Formula& f);

  Formula formula_;
  std::vector<std::string> symbols_;
  std::vector<Instr> code_;
};

// Extension of every instruction, bottom-up. Team-only instructions (idisj,
// dep) throw FragmentError unless `skip_team_nodes` is set, in which case the
// entries of non-flat instructions are meaningless.
void extensions(const Program& program, const Frame& frame, std::span<const PointSet> slots,
                std::vector<PointSet>& out, bool skip_team_nodes = false);

// Points of `frame` satisfying the program's formula under Kripke semantics.
PointSet extension(const Program& program, const Frame& frame, std::span<const PointSet> slots);

// Throws FragmentError unless `f` is in ML, ML_UBOX_POS or ML_UBOX.
void require_pointed(const Formula& f);

PointSet extension(const Model& m, const Formula& f);
bool eval_pointed(const Model& m, std::size_t w, const Formula& f);
bool eval_pointed(const Model& m, std::string_view w, const Formula& f);
bool model_valid_kripke(const Model& m, const Formula& f);

}  // namespace modaldef

#endif  // MODALDEF_KRIPKE_HPP_
