#ifndef MODALDEF_DEFINABILITY_HPP_
#define MODALDEF_DEFINABILITY_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modaldef/formula.hpp"
#include "modaldef/kripke.hpp"
#include "modaldef/team.hpp"

namespace modaldef {

// All labeled frames on {1}, {1,2}, ..., {1..max_points}: 2^(k*k) frames of
// size k, each size in ascending relation-code order.
struct FrameUniverse {
  std::size_t max_points = 3;

  static std::uint64_t frames_of_size(std::size_t k);
  std::uint64_t count() const;
  void for_each(const std::function<void(const Frame&)>& fn) const;
  std::vector<Frame> frames() const;
};

enum class Semantics { kripke, team };

// Kripke for ML and the universal-modality fragments, team semantics for the
// team fragments. Throws FragmentError on MIXED.
Semantics semantics_for(const Formula& f);

// A model falsifying a formula: at `point` (Kripke) or on `team`.
struct Countermodel {
  Model model;
  std::optional<std::size_t> point;
  std::optional<Team> team;
};

// Calls fn(slots) for every valuation of `symbols` points-sets on an
// n-point frame; valuation index v gives slot p the bits v >> (p*n).
// Stops early when fn returns false. Returns whether it ran to completion.
bool for_each_valuation(std::size_t n, std::size_t symbols,
                        const std::function<bool(std::span<const PointSet>)>& fn);

// Frame validity of one formula, reusable across frames. Valuations range
// over the formula's propositions plus `extra_symbols`.
class ValidityChecker {
 public:
  explicit ValidityChecker(const Formula& f, std::vector<std::string> extra_symbols = {},
                           TeamOptions team_options = {});

  bool valid(const Frame& frame) const;
  std::optional<Countermodel> countermodel(const Frame& frame) const;

  const Formula& formula() const { return formula_; }
  Semantics semantics() const { return semantics_; }
  const std::vector<std::string>& symbols() const { return program_.symbols(); }

 private:
  // First falsifying valuation index, if any.
  std::optional<std::uint64_t> search(const Frame& frame) const;

  Formula formula_;
  Semantics semantics_;
  TeamOptions team_options_;
  Program program_;
};

// Validity in a model under the formula's own semantics.
bool model_valid(const Model& m, const Formula& f);

bool frame_valid(const Frame& frame, const Formula& f);
std::optional<Countermodel> find_countermodel(const Frame& frame, const Formula& f);

// Frames of `u` validating `f`, in enumeration order.
std::vector<Frame> frame_class(const Formula& f, const FrameUniverse& u);

enum class Property {
  gen_subframe_closed,
  disjoint_union_closed,
  bounded_morphic_image_closed,
  reflects_fin_gen_subframes,
  reflects_ultrafilter_ext,
};

const char* property_name(Property p);
// Accepts the names above and the CLI spellings (disjoint-union, gen-subframe,
// bounded-morphism, fin-gen, ultrafilter).
Property property_from_name(std::string_view name);

enum class Verdict { pass, bounded_pass, counterexample };
const char* verdict_name(Verdict v);

// Frames in the class (`sources`) related by the audited construction to a
// frame outside it (`target`), plus a model falsifying the formula on the
// target.
struct Witness {
  std::vector<Frame> sources;
  Frame target;
  std::optional<PointSet> seed;                    // gen_subframe_closed
  std::optional<std::vector<std::size_t>> morphism;  // bounded_morphic_image_closed
  std::size_t max_seed = 0;                        // reflects_fin_gen_subframes
  std::optional<Countermodel> countermodel;
  std::string note;
};

struct AuditOptions {
  // Seed bound for finitely generated subframes; 0 means the frame size.
  std::size_t max_seed = 0;
};

struct AuditReport {
  Property property;
  Formula formula;
  std::size_t max_points;
  Verdict verdict;
  std::optional<Witness> witness;
  std::size_t frames_checked = 0;
  std::string detail;
};

AuditReport audit(Property p, const Formula& f, const FrameUniverse& u, AuditOptions options = {});

// Re-derives a counterexample from scratch: the sources validate the
// formula, the construction relates them to the target, and the countermodel
// falsifies the formula. True iff the violation reproduces.
bool replay(Property p, const Formula& f, const Witness& w);
bool countermodel_falsifies(const Formula& f, const Countermodel& c);

enum class EquivMode { kripke_point, team, model_validity, frame_validity };
const char* equiv_mode_name(EquivMode m);
EquivMode equiv_mode_from_name(std::string_view name);

struct EquivCounterexample {
  Model model;
  std::optional<std::size_t> point;
  std::optional<Team> team;
  bool first_holds = false;
  bool second_holds = false;
};

struct EquivResult {
  bool equivalent = true;
  std::optional<EquivCounterexample> counterexample;
  std::uint64_t cases = 0;
};

// Exhaustive comparison over u x valuations (x points or teams). Throws
// FragmentError when a formula is outside the mode's semantics.
EquivResult oracle_equiv(const Formula& f, const Formula& g, const FrameUniverse& u, EquivMode mode);

// Replays an equivalence counterexample.
bool replay(const Formula& f, const Formula& g, EquivMode mode, const EquivCounterexample& c);

}  // namespace modaldef

#endif  // MODALDEF_DEFINABILITY_HPP_
