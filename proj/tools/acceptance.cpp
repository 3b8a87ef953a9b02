// Prints one PASS/FAIL line per acceptance criterion; exit 0 iff all pass.

#include <iostream>
#include <string>

#include "klrfold/acceptance.hpp"

#ifndef KLRFOLD_DATA_DIR
#define KLRFOLD_DATA_DIR "data"
#endif

int main(int argc, char** argv) {
  klrfold::AcceptanceOptions opt;
  opt.data_dir = KLRFOLD_DATA_DIR;
  std::vector<int> ids;
  for (int k = 1; k < argc; ++k) {
    std::string a = argv[k];
    if (a == "--data" && k + 1 < argc) {
      opt.data_dir = argv[++k];
    } else {
      try {
        ids.push_back(std::stoi(a));
      } catch (...) {
        std::cerr << "usage: acceptance [--data DIR] [criterion ...]\n";
        return 2;
      }
      if (ids.back() < 1 || ids.back() > klrfold::acceptance_count()) {
        std::cerr << "criterion out of range\n";
        return 2;
      }
    }
  }
  bool all = true;
  klrfold::run_acceptance(ids, opt, [&](const klrfold::CriterionResult& r) {
    all = all && r.pass;
    std::cout << klrfold::format_result(r) << std::endl;
  });
  return all ? 0 : 1;
}
