// Runs every acceptance criterion and prints one line per criterion.
// Usage: acceptance [quick|full] [seed]
#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include "modaldef/suite.hpp"

int main(int argc, char** argv) {
  modaldef::SuiteOptions opts;
  try {
    if (argc > 1) opts.level = modaldef::level_from_name(argv[1]);
    if (argc > 2) opts.seed = std::stoull(argv[2]);
  } catch (const std::exception& e) {
    std::cerr << "usage: acceptance [quick|full] [seed]: " << e.what() << '\n';
    return 2;
  }
  std::size_t failed = 0;
  const auto results = modaldef::run_suite(opts, [&](const modaldef::CriterionResult& r) {
    if (!r.passed) ++failed;
    std::cout << modaldef::format_result(r) << std::endl;
  });
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
