#include "liouville/acceptance.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  if (argc > 1) seed = std::stoull(argv[1]);
  const auto report = liouville::run_acceptance(seed);
  std::cout << liouville::acceptance_table(report);
  return report.pass() ? EXIT_SUCCESS : EXIT_FAILURE;
}
