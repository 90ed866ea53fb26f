#pragma once

#include "crwb/algebra.hpp"
#include "crwb/surface.hpp"

namespace crwb {

/// Optional symmetry field bundled with a realization, with its bracket claims.
struct ExtraField {
  std::string name;
  VectorField field;
  // explicit claims: [Y, X_j] = sum_k coeff_k X_k, with 0-based j and k
  std::vector<std::pair<int, std::vector<std::pair<int, Expr>>>> claims;
  bool span_claim = false;  // additionally require [Y, X_j] in span(frame) for all j
};

/// Concrete vector-field frame with its expected commutation table.
struct Realization {
  std::string name;
  std::set<std::string> params;
  std::map<std::string, Rational> sample;
  std::vector<Constraint> constraints;
  FieldFrame frame;
  LieAlgebra table;  // expected structure constants in the frame basis
  std::vector<ExtraField> extras;
  std::vector<std::string> surface_refs;  // catalog hypersurfaces the frame is tangent to
};

struct RealizationReport {
  bool ok = true;
  double max_residual = 0.0;
  int fail_i = -1, fail_j = -1;            // offending pair (0-based), -1 when ok
  std::string fail_point;                  // offending point, empty when ok
  double extras_residual = 0.0;
  std::string extras_detail;
};

/// Evaluates every bracket against the table at generic sampled points, then the
/// extra-symmetry claims. Residuals are scaled by the frame magnitude.
RealizationReport verify_realization(const Realization& r, int points = 50,
                                     uint64_t seed = 42, double tol = 1e-8);

/// Tube recipe: base surface in R^3 with two affine symmetry fields (stored as
/// their holomorphic extensions).
struct TubeBase {
  std::string name;
  Expr base;  // g(x1,x2,x3), written in re(z_j)
  VectorField affine1, affine2;
  std::set<std::string> params;
  std::map<std::string, Rational> sample;
  std::vector<std::map<std::string, Rational>> grid;
  std::vector<Constraint> constraints;
  std::array<std::pair<double, double>, 6> bounds;
  int solve_coord = 4;
  std::array<double, 6> seed_point{};
};

struct Tube {
  Hypersurface surface;
  FieldFrame frame;  // i d/dz1, i d/dz2, i d/dz3, L1, L2
};

/// Builds the tube over the base: surface { g(Re z) = 0 } with the shift and
/// affine fields. Throws when a frame field fails tangency at sampled points.
Tube make_tube(const TubeBase& base, const Binding& params, uint64_t seed = 42,
               int points = 20, double tol = 1e-8);

/// Recovers exact structure constants of the frame from certified bracket fits.
/// Throws when a bracket does not certify.
LieAlgebra frame_algebra(const FieldFrame& frame, const Binding& params, uint64_t seed = 42,
                         int points = 20, double tol = 1e-8);

struct HypersurfaceEntry {
  Hypersurface surface;
  std::vector<std::map<std::string, Rational>> grid;  // bundled parameter bindings
  std::string expected;  // expected classification name, default StrictlyPseudoconvex
};

class Catalog {
public:
  std::vector<std::pair<std::string, LieAlgebra>> algebras;
  std::vector<std::pair<std::string, HypersurfaceEntry>> hypersurfaces;
  std::vector<std::pair<std::string, Realization>> realizations;
  std::vector<std::pair<std::string, TubeBase>> tubes;

  static Catalog load(const std::string& dir);

  const LieAlgebra* algebra(const std::string& name) const;
  const HypersurfaceEntry* hypersurface(const std::string& name) const;
  const Realization* realization(const std::string& name) const;
  const TubeBase* tube(const std::string& name) const;

  std::vector<std::string> list(const std::string& kind) const;
};

/// Parsed form of the algebra's bundled constraint text.
std::vector<Constraint> algebra_constraints(const LieAlgebra& g);

/// Constraint-satisfying parameter bindings: the bundled samples first, then
/// seeded random rational draws. Parameters pinned by an equality constraint
/// keep their bundled values.
std::vector<std::map<std::string, Rational>> parameter_samples(const LieAlgebra& g, int count,
                                                               uint64_t seed);

/// Compiled-in data directory, overridable by the CRWB_CATALOG_DIR environment variable.
std::string default_catalog_dir();

}  // namespace crwb
