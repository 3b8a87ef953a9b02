#pragma once

// The acceptance suite: ten end-to-end checks, each reported as pass/fail
// with a one-line detail.

#include <functional>
#include <string>
#include <vector>

namespace klrfold {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  std::string data_dir;      // holds a2-trivial.json, a3.json, d4.json
  int dims_height = 6;       // Gram rank vs product formula
  int crystal_height = 4;    // crystal vertex counts
  int pairing_precision = 40;
  int duality_trunc = 6;
  int associativity_triples = 1000;
};

int acceptance_count();
std::string acceptance_name(int id);
CriterionResult run_criterion(int id, const AcceptanceOptions& opt);
/// Runs the listed criteria (all when empty), calling report after each.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& report = {});
std::string format_result(const CriterionResult& r);

}  // namespace klrfold
