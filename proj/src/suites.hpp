#pragma once

#include <vector>

#include "otm/cli_report.hpp"
#include "otm/group.hpp"
#include "otm/units.hpp"

namespace otm::report {

struct Context {
  const Config& config;
  const NumberField& field;
  std::vector<FoundUnit> found;
  std::vector<Unit> generators;
  std::vector<Letter> alphabet;
};

struct SuiteResult {
  const SuiteInfo* info = nullptr;
  int trials = 0;
  int failures = 0;
  double max_residual = 0;
  double bound = 0;
  bool precision_exhausted = false;
  Json failure_records = Json::array();
  bool passed() const { return failures == 0; }
};

// Upper bound on the failure records kept per suite; the count is always exact.
inline constexpr int kMaxFailureRecords = 20;

std::vector<SuiteResult> run_suites(const Context& ctx, const SuiteSelection& selection);

Json coeffs_json(const IntCoeffs& c);
Json cvector_json(const CVector& v);

}  // namespace otm::report
