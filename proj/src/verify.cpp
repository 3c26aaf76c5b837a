#include "cusplink/verify.hpp"

#include <cmath>
#include <cstdio>

namespace cusplink {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double sample_u01(uint64_t seed, uint64_t i, uint32_t channel) {
  uint64_t mixed = splitmix64(seed ^ splitmix64(i * 0x632be59bd9b4e019ULL + channel));
  return static_cast<double>(mixed >> 11) * 0x1.0p-53;
}

Box Box::cube(int dim, double l, double h) {
  Box b;
  b.dim = dim;
  for (int i = 0; i < dim; ++i) {
    b.lo[static_cast<size_t>(i)] = l;
    b.hi[static_cast<size_t>(i)] = h;
  }
  return b;
}

Point sample_point(const SamplePlan& plan, long i) {
  Point p;
  p.dim = plan.box.dim;
  for (int j = 0; j < p.dim; ++j) {
    size_t sj = static_cast<size_t>(j);
    double u = sample_u01(plan.seed, static_cast<uint64_t>(i), static_cast<uint32_t>(j));
    p.x[sj] = plan.box.lo[sj] + (plan.box.hi[sj] - plan.box.lo[sj]) * u;
  }
  return p;
}

Vec sample_vector(const SamplePlan& plan, long i, int dim, double lo, double hi) {
  Vec v;
  v.dim = dim;
  for (int j = 0; j < dim; ++j) {
    double u = sample_u01(plan.seed, static_cast<uint64_t>(i), 16u + static_cast<uint32_t>(j));
    v.x[static_cast<size_t>(j)] = lo + (hi - lo) * u;
  }
  return v;
}

ReportBuilder::ReportBuilder(std::string check, double threshold) {
  r_.check = std::move(check);
  r_.threshold = threshold;
}

ReportBuilder& ReportBuilder::param(const std::string& key, const std::string& value) {
  r_.params.emplace_back(key, value);
  return *this;
}
ReportBuilder& ReportBuilder::param(const std::string& key, double value) {
  return param(key, format_double(value));
}
ReportBuilder& ReportBuilder::param(const std::string& key, long value) {
  return param(key, std::to_string(value));
}
ReportBuilder& ReportBuilder::detail(const std::string& key, const std::string& value) {
  r_.details.emplace_back(key, value);
  return *this;
}
ReportBuilder& ReportBuilder::detail(const std::string& key, double value) {
  return detail(key, format_double(value));
}

void ReportBuilder::observe(long sample_index, double abs_error) {
  if (!std::isfinite(abs_error)) {
    observe_failure(sample_index, "non-finite error value");
    return;
  }
  ++r_.samples;
  if (abs_error > r_.max_abs_error) {
    r_.max_abs_error = abs_error;
    worst_index_ = sample_index;
  }
}

void ReportBuilder::aggregate(double abs_error) {
  if (!std::isfinite(abs_error)) {
    ++r_.errored;
    return;
  }
  if (abs_error > r_.max_abs_error) r_.max_abs_error = abs_error;
}

void ReportBuilder::observe_failure(long sample_index, const std::string& what) {
  ++r_.samples;
  ++r_.errored;
  if (r_.errored == 1) detail("first_failed_sample", std::to_string(sample_index) + ": " + what);
}

Report ReportBuilder::finish() {
  if (worst_index_ >= 0) detail("worst_sample", std::to_string(worst_index_));
  r_.pass = r_.errored == 0 && r_.max_abs_error <= r_.threshold;
  return r_;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace cusplink
