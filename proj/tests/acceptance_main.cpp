#include <iostream>

#include "abduction/acceptance.hpp"

int main() {
  int failed = 0;
  for (const auto& r : abduction::acceptance::run_all()) {
    std::cout << abduction::acceptance::format_result(r) << std::endl;
    failed += r.passed ? 0 : 1;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
