#include "crwb/ratmat.hpp"

#include <stdexcept>

namespace crwb {

RatMat RatMat::identity(int n) {
  RatMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMat RatMat::operator+(const RatMat& o) const {
  RatMat r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

RatMat RatMat::operator-(const RatMat& o) const {
  RatMat r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

RatMat RatMat::operator*(const RatMat& o) const {
  RatMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

RatMat RatMat::operator*(const Rational& c) const {
  RatMat r(rows_, cols_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * c;
  return r;
}

RatMat RatMat::transpose() const {
  RatMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool RatMat::is_zero() const {
  for (const auto& v : a_)
    if (v != 0) return false;
  return true;
}

Rational RatMat::trace() const {
  Rational t(0);
  for (int i = 0; i < rows_ && i < cols_; ++i) t += at(i, i);
  return t;
}

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<int> echelon(RatMat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    Rational inv = Rational(1) / m.at(r, c);
    for (int j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rational f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int RatMat::rank() const {
  RatMat m = *this;
  return static_cast<int>(echelon(m).size());
}

std::vector<std::vector<Rational>> RatMat::nullspace() const {
  RatMat m = *this;
  std::vector<int> pivots = echelon(m);
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (int c = 0; c < cols_; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rational> v(cols_, Rational(0));
    v[c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(int(r), c);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rational>> RatMat::solve(const std::vector<Rational>& b) const {
  RatMat aug(rows_, cols_ + 1);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_) = b[size_t(i)];
  }
  std::vector<int> pivots = echelon(aug);
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
  std::vector<Rational> x(cols_, Rational(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(int(r), cols_);
  return x;
}

Signature symmetric_signature(RatMat a) {
  int n = a.rows();
  Signature s;
  std::vector<bool> done(n, false);
  for (int step = 0; step < n; ++step) {
    int p = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && a.at(i, i) != 0) {
        p = i;
        break;
      }
    if (p < 0) {
      // no diagonal pivot; create one from an off-diagonal entry
      int bi = -1, bj = -1;
      for (int i = 0; i < n && bi < 0; ++i) {
        if (done[i]) continue;
        for (int j = i + 1; j < n; ++j)
          if (!done[j] && a.at(i, j) != 0) {
            bi = i;
            bj = j;
            break;
          }
      }
      if (bi < 0) break;  // remaining block is zero
      // row/col update: e_bi += e_bj, keeps symmetry
      for (int j = 0; j < n; ++j) a.at(bi, j) += a.at(bj, j);
      for (int i = 0; i < n; ++i) a.at(i, bi) += a.at(i, bj);
      p = bi;
    }
    Rational d = a.at(p, p);
    if (d > 0)
      ++s.positive;
    else
      ++s.negative;
    // clear row/column p by congruence
    for (int i = 0; i < n; ++i) {
      if (i == p || done[i] || a.at(i, p) == 0) continue;
      Rational f = a.at(i, p) / d;
      for (int j = 0; j < n; ++j) a.at(i, j) -= f * a.at(p, j);
      for (int j = 0; j < n; ++j) a.at(j, i) -= f * a.at(j, p);
    }
    done[p] = true;
  }
  s.zero = n - s.positive - s.negative;
  return s;
}

std::vector<Rational> char_poly(const RatMat& a) {
  int n = a.rows();
  std::vector<Rational> c(size_t(n) + 1, Rational(0));
  c[size_t(n)] = 1;
  RatMat mk = RatMat::identity(n);
  for (int k = 1; k <= n; ++k) {
    mk = a * mk;
    Rational ck = -mk.trace() / k;
    c[size_t(n - k)] = ck;
    for (int i = 0; i < n; ++i) mk.at(i, i) += ck;
  }
  return c;
}

std::vector<Rational> poly_derivative(const std::vector<Rational>& p) {
  if (p.size() <= 1) return {Rational(0)};
  std::vector<Rational> d(p.size() - 1);
  for (size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * Rational(long(k));
  return d;
}

namespace {

void poly_trim(std::vector<Rational>& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// remainder of a mod b, both non-empty with b nonzero
std::vector<Rational> poly_mod(std::vector<Rational> a, const std::vector<Rational>& b) {
  poly_trim(a);
  while (a.size() >= b.size() && !(a.size() == 1 && a[0] == 0)) {
    Rational f = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t k = 0; k < b.size(); ++k) a[off + k] -= f * b[k];
    poly_trim(a);
    if (a.size() < b.size()) break;
  }
  return a;
}

}  // namespace

std::vector<Rational> poly_gcd(std::vector<Rational> a, std::vector<Rational> b) {
  poly_trim(a);
  poly_trim(b);
  while (!(b.size() == 1 && b[0] == 0)) {
    std::vector<Rational> r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  // monic normalization
  if (!(a.size() == 1 && a[0] == 0)) {
    Rational lead = a.back();
    for (auto& v : a) v /= lead;
  }
  return a;
}

std::vector<Rational> poly_divide_exact(const std::vector<Rational>& a,
                                        const std::vector<Rational>& b) {
  std::vector<Rational> r = a, q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, Rational(0));
  poly_trim(r);
  while (r.size() >= b.size() && !(r.size() == 1 && r[0] == 0)) {
    Rational f = r.back() / b.back();
    size_t off = r.size() - b.size();
    q[off] = f;
    for (size_t k = 0; k < b.size(); ++k) r[off + k] -= f * b[k];
    poly_trim(r);
    if (r.size() < b.size()) break;
  }
  if (!(r.size() == 1 && r[0] == 0)) throw std::invalid_argument("poly_divide_exact: remainder");
  poly_trim(q);
  return q;
}

RatMat poly_eval_matrix(const std::vector<Rational>& p, const RatMat& a) {
  int n = a.rows();
  RatMat r(n, n);
  // Horner
  for (size_t k = p.size(); k-- > 0;) {
    r = r * a;
    for (int i = 0; i < n; ++i) r.at(i, i) += p[k];
  }
  return r;
}

}  // namespace crwb
