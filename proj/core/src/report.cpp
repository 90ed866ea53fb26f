#include "crwb/report.hpp"

#include <array>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace crwb {

std::string format_metric(double v) {
  std::ostringstream os;
  os.setf(std::ios::scientific);
  os.precision(6);
  os << v;
  return os.str();
}

namespace {
const char* status_name(CheckResult::Status s) {
  switch (s) {
    case CheckResult::Status::pass: return "pass";
    case CheckResult::Status::fail: return "fail";
    case CheckResult::Status::inconclusive: return "inconclusive";
  }
  return "?";
}
}  // namespace

std::string CheckResult::line() const {
  std::ostringstream os;
  os << "check=" << id << " subject=" << subject << " status=" << status_name(status)
     << " metric=" << format_metric(metric) << " seed=" << seed;
  if (!detail.empty()) os << " detail=\"" << detail << "\"";
  return os.str();
}

void Report::add(CheckResult r) { results_.push_back(std::move(r)); }

CheckResult& Report::pass(const std::string& id, const std::string& subject, double metric,
                          uint64_t seed) {
  results_.push_back({id, subject, CheckResult::Status::pass, metric, seed, ""});
  return results_.back();
}

CheckResult& Report::fail(const std::string& id, const std::string& subject, double metric,
                          uint64_t seed, const std::string& detail) {
  results_.push_back({id, subject, CheckResult::Status::fail, metric, seed, detail});
  return results_.back();
}

CheckResult& Report::inconclusive(const std::string& id, const std::string& subject,
                                  uint64_t seed, const std::string& detail) {
  results_.push_back({id, subject, CheckResult::Status::inconclusive, 0.0, seed, detail});
  return results_.back();
}

bool Report::all_pass() const { return fail_count() == 0; }

int Report::fail_count() const {
  int n = 0;
  for (const auto& r : results_)
    if (r.status == CheckResult::Status::fail) ++n;
  return n;
}

std::string Report::body() const {
  std::ostringstream os;
  // failing records first inside each check id would reorder; keep insertion order,
  // callers emit in deterministic catalog order
  for (const auto& r : results_) os << r.line() << "\n";
  std::map<std::string, std::array<int, 3>> per_check;
  for (const auto& r : results_) {
    auto& row = per_check[r.id];
    row[static_cast<size_t>(r.status)]++;
  }
  os << "---\n";
  os << "summary: " << results_.size() << " checks, " << fail_count() << " failed\n";
  for (const auto& [id, row] : per_check)
    os << "  " << id << ": pass=" << row[0] << " fail=" << row[1]
       << " inconclusive=" << row[2] << "\n";
  return os.str();
}

void Report::write(std::ostream& os) const { os << body(); }

void Report::write_file(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write report file: " + path);
  f << body();
}

}  // namespace crwb
