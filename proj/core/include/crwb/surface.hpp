#pragma once

#include <array>

#include "crwb/field.hpp"

namespace crwb {

/// Comparison over parameter values, used to gate sampling grids.
struct Constraint {
  Expr lhs;
  std::string op;  // one of > < >= <= != ==
  Expr rhs;
  bool holds(const Binding& b) const;
  std::string str() const;
};

/// Parses "expr OP expr" comparison text.
Constraint parse_constraint(const std::string& text);

enum class LeviClass { StrictlyPseudoconvex, Indefinite, Degenerate };
const char* levi_class_name(LeviClass c);

struct LeviReport {
  std::array<std::complex<double>, 3> point;
  Eigen::Vector3cd unit_gradient;
  Eigen::Matrix2cd levi;
  double lambda1 = 0.0, lambda2 = 0.0;  // lambda1 >= lambda2
  LeviClass cls = LeviClass::Degenerate;
  double tol = 0.0;
};

class SampleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Real hypersurface { rho = 0 } with a sampling chart. Real coordinates are
/// indexed 0..5 as x1,y1,x2,y2,x3,y3.
class Hypersurface {
public:
  std::string name;
  Expr rho;  // structurally real defining function
  std::set<std::string> params;
  std::vector<Constraint> constraints;
  std::array<std::pair<double, double>, 6> bounds;  // chart box per real coordinate
  int solve_coord = 4;                              // coordinate adjusted to reach rho = 0
  std::array<double, 6> seed_point{};               // Newton start and validation point

  Hypersurface();
  Hypersurface(std::string nm, Expr defining);

  void validate_params(const Binding& b) const;  // throws on constraint violation
  double value(const Binding& b) const;          // rho at the bound point
  Eigen::Vector3cd gradient(const Binding& b) const;  // (d rho / d z_j)

  static Binding bind_real_point(const std::array<double, 6>& coords, const Binding& params);

private:
  mutable std::array<Expr, 3> grad_;      // cached Wirtinger derivatives
  mutable std::array<Expr, 9> hess_;      // cached d^2 rho / d z_j d cz_k, row-major
  mutable bool grad_ready_ = false;
  mutable bool hess_ready_ = false;
  void ensure_grad() const;
  void ensure_hess() const;
  friend LeviReport levi_form(const Hypersurface&, const Binding&, double);
};

/// Draws chart coordinates and solves rho = 0 along solve_coord by Newton from
/// the seed value. Throws SampleError after repeated non-convergence.
Binding sample_point(const Hypersurface& m, const Binding& params, uint64_t seed);
std::vector<Binding> sample_surface_points(const Hypersurface& m, const Binding& params,
                                           int count, uint64_t seed);

/// Two orthonormal complex directions annihilating sum w_j d rho/d z_j at the point.
Eigen::Matrix<std::complex<double>, 3, 2> complex_tangent_basis(const Hypersurface& m,
                                                                const Binding& b);

LeviReport levi_form(const Hypersurface& m, const Binding& b, double degeneracy_tol = 1e-6);

/// |2 Re(sum f_j d rho/d z_j)| / (|grad| * max(1, |X|)). Requires |rho| < 1e-10 at b.
double tangency_residual(const VectorField& x, const Hypersurface& m, const Binding& b);

struct FamilyCensus {
  std::map<std::string, Rational> binding;
  std::map<LeviClass, int> counts;
  int sample_failures = 0;
};

/// Levi classification census over a parameter grid. Bindings violating the
/// constraints are rejected up front.
std::vector<FamilyCensus> classify_family(const Hypersurface& m,
                                          const std::vector<std::map<std::string, Rational>>& grid,
                                          int points, uint64_t seed,
                                          double degeneracy_tol = 1e-6);

}  // namespace crwb
