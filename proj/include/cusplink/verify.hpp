#pragma once

// Deterministic counter-based sampling and the named-check Report type
// shared by the verification suites and the CLI.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cusplink/forms.hpp"

namespace cusplink {

uint64_t splitmix64(uint64_t x);
// Uniform in [0,1), derived from (seed, counter, channel); order-independent.
double sample_u01(uint64_t seed, uint64_t i, uint32_t channel);

struct Box {
  int dim = 0;
  std::array<double, kMaxDim> lo{}, hi{};
  static Box cube(int dim, double l, double h);
};

struct SamplePlan {
  uint64_t seed = 42;
  long n_samples = 1000;
  Box box = Box::cube(3, 0.0, 1.0);
  double h = 1e-5;
  // When set (e.g. from the CLI --tol flag) it replaces every check's
  // default threshold.
  std::optional<double> tol_override;

  double tol_or(double def) const { return tol_override.value_or(def); }
};

Point sample_point(const SamplePlan& plan, long i);
// Tangent vectors come from a disjoint hash channel so they do not correlate
// with the point stream.
Vec sample_vector(const SamplePlan& plan, long i, int dim, double lo, double hi);

struct Report {
  std::string check;
  std::vector<std::pair<std::string, std::string>> params;
  long samples = 0;
  double max_abs_error = 0.0;
  double threshold = 0.0;
  bool pass = false;
  long errored = 0;
  std::vector<std::pair<std::string, std::string>> details;
};

class ReportBuilder {
 public:
  ReportBuilder(std::string check, double threshold);
  ReportBuilder& param(const std::string& key, const std::string& value);
  ReportBuilder& param(const std::string& key, double value);
  ReportBuilder& param(const std::string& key, long value);
  ReportBuilder& detail(const std::string& key, const std::string& value);
  ReportBuilder& detail(const std::string& key, double value);
  void observe(long sample_index, double abs_error);
  void observe_failure(long sample_index, const std::string& what);
  // Fold an aggregate error (e.g. a spread over all samples) into the max
  // without advancing the sample count.
  void aggregate(double abs_error);
  Report finish();

 private:
  Report r_;
  long worst_index_ = -1;
};

// 17 significant digits, deterministic across runs.
std::string format_double(double v);

}  // namespace cusplink
