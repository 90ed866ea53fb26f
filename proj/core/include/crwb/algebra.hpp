#pragma once

#include <map>
#include <optional>

#include "crwb/expr.hpp"
#include "crwb/ratmat.hpp"

namespace crwb {

using RatVec = std::vector<Rational>;

/// Lie algebra with exact rational structure constants at fixed parameter values.
struct RationalAlgebra {
  int dim = 0;
  std::vector<Rational> c;  // c[(i*dim+j)*dim+k]: [e_i, e_j] = sum_k c_ijk e_k

  explicit RationalAlgebra(int n) : dim(n), c(size_t(n) * n * n, Rational(0)) {}
  const Rational& at(int i, int j, int k) const {
    return c[(size_t(i) * dim + j) * dim + k];
  }
  Rational& at(int i, int j, int k) { return c[(size_t(i) * dim + j) * dim + k]; }

  RatVec bracket(const RatVec& x, const RatVec& y) const;
  /// Matrix of ad(x) acting on column vectors.
  RatMat ad(const RatVec& x) const;
  /// Columns span the image of the bracket restricted to the two spans.
  RatMat bracket_span(const std::vector<RatVec>& a, const std::vector<RatVec>& b) const;
};

/// Lie algebra with symbolic structure constants (expressions in real parameters).
class LieAlgebra {
public:
  std::string name;
  int dim = 0;
  std::set<std::string> params;
  std::map<std::string, Rational> sample;                    // generic parameter values
  std::vector<std::map<std::string, Rational>> extra_samples;
  std::vector<std::vector<int>> claimed_ideals;              // 1-based coordinate triples
  std::string constraints;                                   // parameter range text

  LieAlgebra() = default;
  LieAlgebra(std::string nm, int n);

  const Expr& c_at(int i, int j, int k) const { return c_[idx(i, j, k)]; }
  /// Records [e_i, e_j] (0-based, i < j) and its antisymmetric mirror.
  void set_bracket(int i, int j, const std::vector<std::pair<int, Expr>>& terms);

  /// Jacobi expression J(i,j,k)_l = [[ei,ej],ek]_l + [[ej,ek],ei]_l + [[ek,ei],ej]_l.
  Expr jacobi_expr(int i, int j, int k, int l) const;

  struct JacobiReport {
    bool ok = true;
    int i = -1, j = -1, k = -1, l = -1;  // first structural failure
    Expr residual;
  };
  /// Exact route: every Jacobi expression simplifies to zero.
  JacobiReport check_jacobi() const;
  /// Numeric route: largest |J(i,j,k)_l| at the given parameter values.
  double jacobi_residual(const Binding& b) const;

  RationalAlgebra instantiate(const std::map<std::string, Rational>& values) const;
  RationalAlgebra instantiate() const { return instantiate(sample); }

private:
  size_t idx(int i, int j, int k) const { return (size_t(i) * dim + j) * dim + k; }
  std::vector<Expr> c_;
};

struct IdealCheck {
  bool ok = false;
  std::string reason;       // empty when ok
  RatMat closure_coeffs;    // [e_i, s_j] coordinates in the ideal basis, row-major blocks
};

/// Exact check that span(basis) is an abelian ideal: pairwise brackets vanish and
/// every [e_i, s] lies back in the span. The returned coefficients certify closure.
IdealCheck verify_abelian_ideal(const RationalAlgebra& g, const std::vector<RatVec>& basis);

/// Exact membership of v in span(basis).
bool in_span(const std::vector<RatVec>& basis, const RatVec& v);

int span_rank(const std::vector<RatVec>& vecs);

}  // namespace crwb
