#ifndef MODALDEF_CORPUS_HPP_
#define MODALDEF_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "modaldef/formula.hpp"
#include "modaldef/transform.hpp"

namespace modaldef {

struct GenConfig {
  Fragment fragment = Fragment::ml;
  std::size_t max_depth = 2;
  std::size_t max_props = 2;  // propositions p1..p<max_props>
  std::uint64_t seed = 0;
  std::size_t count = 10;
  std::size_t max_dep_nodes = 2;
};

// Formula `index` of the batch; depends only on (cfg, index). The first
// formulas of a batch have the fragment's constructors at the root, in order,
// so a batch of at least 20 covers every constructor.
Formula generate_one(const GenConfig& cfg, std::size_t index);
// Throws FragmentError for MIXED, InputError when max_props is 0.
std::vector<Formula> generate(const GenConfig& cfg);

// Boolean combination of [u]- and <u>-formulas with ML bodies.
Formula generate_closed(std::uint64_t seed, std::size_t index, std::size_t max_depth, std::size_t max_props);

// [u] g1 | ... | [u] gk with 1 <= k <= max_width and ML parts.
ClosedClause generate_clause(std::uint64_t seed, std::size_t index, std::size_t max_depth,
                             std::size_t max_props, std::size_t max_width = 3);

struct NamedFormula {
  std::string name;
  Formula formula;
};

// Curated formulas under stable names.
const std::vector<NamedFormula>& paper_formulas();
const Formula& paper_formula(std::string_view name);

}  // namespace modaldef

#endif  // MODALDEF_CORPUS_HPP_
