#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance.hpp"

// Usage: vtorus_acceptance [id ...]
int main(int argc, char** argv) {
  vtorus::repro::ReproOptions opts;
  for (int i = 1; i < argc; ++i) opts.only.push_back(std::atoi(argv[i]));
  const auto results = vtorus::repro::run_acceptance(opts, [](const auto& r) {
    std::cout << vtorus::repro::format_line(r) << std::endl;
  });
  int failed = 0;
  for (const auto& r : results) failed += !r.pass;
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
