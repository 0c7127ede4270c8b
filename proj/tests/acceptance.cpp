#include <iostream>

#include "carnapkit/acceptance.hpp"

int main() {
  bool all = true;
  for (const auto& r : carnap::run_acceptance("all")) {
    std::cout << carnap::format_criterion(r, false) << std::endl;
    all = all && r.passed;
  }
  std::cout << (all ? "all criteria passed" : "some criteria failed") << std::endl;
  return all ? 0 : 1;
}
