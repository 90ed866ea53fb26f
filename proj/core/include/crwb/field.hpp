#pragma once

#include <Eigen/Dense>
#include <array>
#include <random>

#include "crwb/expr.hpp"

namespace crwb {

/// Holomorphic vector field f1 d/dz1 + f2 d/dz2 + f3 d/dz3.
/// Components are simplified on construction and must be structurally holomorphic.
class VectorField {
public:
  VectorField();
  VectorField(Expr f1, Expr f2, Expr f3);

  const Expr& component(int j) const { return f_[size_t(j)]; }
  bool is_zero() const;

  VectorField operator+(const VectorField& o) const;
  VectorField operator-(const VectorField& o) const;
  VectorField scaled(const Expr& c) const;
  VectorField scaled(const Scalar& c) const;

  Eigen::Vector3cd evaluate(const Binding& b) const;
  std::string str() const;

private:
  std::array<Expr, 3> f_;
};

/// Lie bracket of holomorphic fields, [X,Y]_j = sum_k (X_k dY_j/dz_k - Y_k dX_j/dz_k).
VectorField bracket(const VectorField& x, const VectorField& y);

using FieldFrame = std::vector<VectorField>;

/// Columns are the field values at the bound point.
Eigen::MatrixXcd evaluate_frame(const FieldFrame& frame, const Binding& b);

/// Rank of the real span of the columns inside C^3 = R^6 (SVD, relative tolerance).
int real_rank_at(const FieldFrame& frame, const Binding& b, double tol = 1e-8);
/// Rank of the complex span of the columns (SVD, relative tolerance).
int complex_rank_at(const FieldFrame& frame, const Binding& b, double tol = 1e-8);

/// Seeded sample points with coordinates in a fixed complex box, away from 0.
std::vector<Binding> sample_points(const Binding& params, int count, uint64_t seed);

struct BracketFit {
  int i = 0, j = 0;                 // bracket pair
  bool in_span = false;             // numeric least squares residual below tol
  bool certified = false;           // rationalized coefficients verified structurally
  double residual = 0.0;
  std::vector<Rational> coeffs;     // only meaningful when certified
};

struct SpanCheck {
  bool closed = true;               // every bracket numerically in the span
  bool certified = true;            // and every fit carries an exact certificate
  std::vector<BracketFit> fits;
};

/// Checks closure of the frame under brackets. Two routes per pair: a numeric
/// least squares fit at sampled points, then exact verification of the
/// rationalized coefficients. A pair can pass numerically yet stay uncertified.
SpanCheck check_span_closure(const FieldFrame& frame, const Binding& params, int points,
                             uint64_t seed, double tol);

/// Expresses the target field in the frame. Same two routes as closure checking.
BracketFit fit_in_span(const VectorField& target, const FieldFrame& frame,
                       const Binding& params, int points, uint64_t seed, double tol);

}  // namespace crwb
