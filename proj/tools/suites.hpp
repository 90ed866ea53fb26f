#pragma once

#include <crwb/catalog.hpp>
#include <crwb/report.hpp>

namespace crwb {

struct RunOptions {
  uint64_t seed = 42;
  double tol = 1e-8;
  int points = 50;
};

/// Parses a k=v override list; values accept integers, p/q fractions, decimals.
std::map<std::string, Rational> parse_overrides(const std::vector<std::string>& kvs);

/// Merges overrides into the bundled sample; unknown keys throw std::invalid_argument.
std::map<std::string, Rational> merge_sample(const std::set<std::string>& params,
                                             const std::map<std::string, Rational>& sample,
                                             const std::map<std::string, Rational>& overrides);

std::string binding_str(const std::map<std::string, Rational>& b);

/// Exact Jacobi identity over Q for instantiated structure constants.
bool rational_jacobi(const RationalAlgebra& g);
/// Structural antisymmetry of the symbolic table.
bool structurally_antisymmetric(const LieAlgebra& g);

void run_jacobi(const LieAlgebra& g, const std::map<std::string, Rational>& overrides,
                int samples, const RunOptions& opt, Report& rep);
void run_ideals(const LieAlgebra& g, const std::map<std::string, Rational>& overrides,
                int samples, const RunOptions& opt, Report& rep);
void run_levi(const HypersurfaceEntry& e, const std::string& name,
              const std::map<std::string, Rational>& overrides, const RunOptions& opt,
              Report& rep);
void run_tangency(const Realization& r, const HypersurfaceEntry& e, const std::string& sname,
                  const std::map<std::string, Rational>& overrides, const RunOptions& opt,
                  Report& rep);
void run_fingerprint(const LieAlgebra& g, const RunOptions& opt, Report& rep);
void run_catalog_validate(const Catalog& c, const RunOptions& opt, Report& rep);
void run_theorem2(const Catalog& c, int item, const RunOptions& opt, Report& rep);

}  // namespace crwb
