#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <cstdint>

namespace crwb {

struct CheckResult {
  std::string id;       // check name
  std::string subject;  // catalog entry or item under test
  enum class Status { pass, fail, inconclusive } status = Status::fail;
  double metric = 0.0;  // residual or count, check-specific
  uint64_t seed = 0;
  std::string detail;   // diagnostics, empty when uninteresting

  std::string line() const;  // one structured record, no timestamps
};

/// Ordered collection of check results. The body is deterministic for a fixed
/// seed: no timestamps, no elapsed times, fixed float formatting.
class Report {
public:
  void add(CheckResult r);
  CheckResult& pass(const std::string& id, const std::string& subject, double metric,
                    uint64_t seed);
  CheckResult& fail(const std::string& id, const std::string& subject, double metric,
                    uint64_t seed, const std::string& detail);
  CheckResult& inconclusive(const std::string& id, const std::string& subject,
                            uint64_t seed, const std::string& detail);

  const std::vector<CheckResult>& results() const { return results_; }
  bool all_pass() const;  // no fail entries (inconclusive allowed)
  int fail_count() const;

  std::string body() const;  // records followed by a summary table
  void write(std::ostream& os) const;
  void write_file(const std::string& path) const;

private:
  std::vector<CheckResult> results_;
};

/// Fixed-format float used in all report bodies.
std::string format_metric(double v);

}  // namespace crwb
