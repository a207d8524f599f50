// Runs every acceptance criterion; one line each, nonzero exit on any failure.
// Optional arguments select criterion ids, e.g. `acceptance 1 2 10`.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "gradcode/validation.hpp"

int main(int argc, char** argv) {
  using namespace gradcode::validation;
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::stoi(argv[i]));
  if (ids.empty()) {
    for (int i = 1; i <= static_cast<int>(criteria().size()); ++i) ids.push_back(i);
  }
  ValidationOptions opt;
  int failed = 0;
  for (int id : ids) {
    const auto r = run_criterion(id, opt);
    std::cout << format_result(r) << std::endl;
    failed += r.passed ? 0 : 1;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
