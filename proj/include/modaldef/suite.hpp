#ifndef MODALDEF_SUITE_HPP_
#define MODALDEF_SUITE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace modaldef {

enum class Level { quick, full };
Level level_from_name(std::string_view name);

inline constexpr std::uint64_t kDefaultSuiteSeed = 20140901;
inline constexpr int kCriterionCount = 12;

struct SuiteOptions {
  Level level = Level::quick;
  std::uint64_t seed = kDefaultSuiteSeed;
  // Criterion ids to run; empty runs all.
  std::vector<int> only;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;  // check passed and the runtime fit the budget
  bool check_passed = false;
  std::string detail;
  double seconds = 0;
  std::optional<double> budget_seconds;
  std::uint64_t seed = 0;
};

CriterionResult run_criterion(int id, const SuiteOptions& options);
std::vector<CriterionResult> run_suite(const SuiteOptions& options,
                                       const std::function<void(const CriterionResult&)>& on_result = {});

// One line: "PASS  3  <title>  (1.20 s, budget 120 s, seed N)  detail".
std::string format_result(const CriterionResult& r);

}  // namespace modaldef

#endif  // MODALDEF_SUITE_HPP_
