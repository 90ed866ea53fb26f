#pragma once

#include <optional>
#include <vector>

#include "crwb/scalar.hpp"

namespace crwb {

/// Dense matrix over the rationals. All operations are exact.
class RatMat {
public:
  RatMat() = default;
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Rational(0)) {}
  static RatMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Rational& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  RatMat operator+(const RatMat& o) const;
  RatMat operator-(const RatMat& o) const;
  RatMat operator*(const RatMat& o) const;
  RatMat operator*(const Rational& c) const;
  RatMat transpose() const;
  bool is_zero() const;
  Rational trace() const;

  int rank() const;
  /// Basis of the right nullspace, one column vector per entry.
  std::vector<std::vector<Rational>> nullspace() const;
  /// One solution of A x = b, or nullopt when inconsistent.
  std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const;

private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

/// Sylvester signature of a symmetric matrix, by exact congruence reduction.
Signature symmetric_signature(RatMat a);

/// Characteristic polynomial coefficients c[0..n], c[n] = 1, via Faddeev-LeVerrier:
/// p(t) = sum c[k] t^k.
std::vector<Rational> char_poly(const RatMat& a);

std::vector<Rational> poly_derivative(const std::vector<Rational>& p);
std::vector<Rational> poly_gcd(std::vector<Rational> a, std::vector<Rational> b);
std::vector<Rational> poly_divide_exact(const std::vector<Rational>& a,
                                        const std::vector<Rational>& b);
RatMat poly_eval_matrix(const std::vector<Rational>& p, const RatMat& a);

}  // namespace crwb
