#include "crwb/fingerprint.hpp"

#include <random>
#include <sstream>

namespace crwb {

std::vector<RatVec> reduce_basis(const std::vector<RatVec>& vecs) {
  std::vector<RatVec> out;
  for (const auto& v : vecs) {
    if (in_span(out, v)) continue;
    out.push_back(v);
  }
  return out;
}

std::vector<RatVec> derived_subalgebra(const RationalAlgebra& g,
                                       const std::vector<RatVec>& s) {
  std::vector<RatVec> brs;
  for (size_t a = 0; a < s.size(); ++a)
    for (size_t b = a + 1; b < s.size(); ++b) brs.push_back(g.bracket(s[a], s[b]));
  return reduce_basis(brs);
}

namespace {

std::vector<RatVec> full_basis(int n) {
  std::vector<RatVec> b;
  for (int i = 0; i < n; ++i) {
    RatVec e(size_t(n), Rational(0));
    e[size_t(i)] = 1;
    b.push_back(std::move(e));
  }
  return b;
}

std::vector<RatVec> bracket_space(const RationalAlgebra& g, const std::vector<RatVec>& a,
                                  const std::vector<RatVec>& b) {
  std::vector<RatVec> brs;
  for (const auto& x : a)
    for (const auto& y : b) brs.push_back(g.bracket(x, y));
  return reduce_basis(brs);
}

}  // namespace

std::vector<RatVec> center_basis(const RationalAlgebra& g) {
  int n = g.dim;
  RatMat m(n * n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) m.at(j * n + k, i) = g.at(i, j, k);
  auto ns = m.nullspace();
  return {ns.begin(), ns.end()};
}

RatMat killing_matrix(const RationalAlgebra& g) {
  int n = g.dim;
  std::vector<RatMat> ads;
  for (int i = 0; i < n; ++i) {
    RatVec ei(size_t(n), Rational(0));
    ei[size_t(i)] = 1;
    ads.push_back(g.ad(ei));
  }
  RatMat k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Rational t = (ads[size_t(i)] * ads[size_t(j)]).trace();
      k.at(i, j) = t;
      k.at(j, i) = t;
    }
  return k;
}

int derivation_dim(const RationalAlgebra& g) {
  int n = g.dim;
  // unknowns D_{a b} (row a, column b), flattened a*n+b
  std::vector<RatVec> rows;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        RatVec row(size_t(n) * n, Rational(0));
        // D([e_i,e_j])_k = sum_m c_ij^m D_{k m}
        for (int m = 0; m < n; ++m) row[size_t(k) * n + m] += g.at(i, j, m);
        // -[D e_i, e_j]_k = -sum_m D_{m i} c_mj^k
        for (int m = 0; m < n; ++m) row[size_t(m) * n + i] -= g.at(m, j, k);
        // -[e_i, D e_j]_k = -sum_m D_{m j} c_im^k
        for (int m = 0; m < n; ++m) row[size_t(m) * n + j] -= g.at(i, m, k);
        rows.push_back(std::move(row));
      }
  RatMat m(int(rows.size()), n * n);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int cidx = 0; cidx < n * n; ++cidx) m.at(int(r), cidx) = rows[r][size_t(cidx)];
  return n * n - m.rank();
}

bool ad_generic_semisimple(const RationalAlgebra& g, uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-4, 4);
  // "generic" means on a dense open set: special elements can be semisimple
  // inside a non-semisimple family and vice versa, so the verdict is taken
  // only from trial elements whose ad has the most distinct eigenvalues
  // (regular elements), and all of those must agree semisimple.
  size_t best_distinct = 0;
  bool verdict = false;
  for (int t = 0; t < trials; ++t) {
    RatVec x(size_t(g.dim), Rational(0));
    bool nonzero = false;
    for (auto& v : x) {
      int cv = coef(rng);
      v = cv;
      nonzero = nonzero || cv != 0;
    }
    if (!nonzero) continue;
    RatMat a = g.ad(x);
    std::vector<Rational> p = char_poly(a);
    std::vector<Rational> gq = poly_gcd(p, poly_derivative(p));
    std::vector<Rational> m = poly_divide_exact(p, gq);
    size_t distinct = m.size() - 1;  // deg of the squarefree part
    bool ss = poly_eval_matrix(m, a).is_zero();
    if (distinct > best_distinct) {
      best_distinct = distinct;
      verdict = ss;
    } else if (distinct == best_distinct) {
      verdict = verdict && ss;
    }
  }
  return verdict;
}

Fingerprint fingerprint(const RationalAlgebra& g, uint64_t seed) {
  Fingerprint fp;
  std::vector<RatVec> s = full_basis(g.dim);
  fp.derived.push_back(int(s.size()));
  while (true) {
    std::vector<RatVec> next = derived_subalgebra(g, s);
    if (next.size() == s.size()) break;
    fp.derived.push_back(int(next.size()));
    s = std::move(next);
    if (s.empty()) break;
  }
  std::vector<RatVec> l = full_basis(g.dim);
  fp.lower_central.push_back(int(l.size()));
  std::vector<RatVec> full = full_basis(g.dim);
  while (true) {
    std::vector<RatVec> next = bracket_space(g, full, l);
    if (next.size() == l.size()) break;
    fp.lower_central.push_back(int(next.size()));
    l = std::move(next);
    if (l.empty()) break;
  }
  fp.center_dim = int(center_basis(g).size());
  fp.killing = symmetric_signature(killing_matrix(g));
  fp.solvable = fp.derived.back() == 0;
  fp.nilpotent = fp.lower_central.back() == 0;
  fp.derivation_dim = derivation_dim(g);
  fp.ad_semisimple = ad_generic_semisimple(g, seed);
  return fp;
}

bool Fingerprint::operator==(const Fingerprint& o) const {
  return derived == o.derived && lower_central == o.lower_central &&
         center_dim == o.center_dim && killing.positive == o.killing.positive &&
         killing.negative == o.killing.negative && killing.zero == o.killing.zero &&
         solvable == o.solvable && nilpotent == o.nilpotent &&
         derivation_dim == o.derivation_dim && ad_semisimple == o.ad_semisimple;
}

std::string Fingerprint::str() const {
  std::ostringstream os;
  os << "derived=(";
  for (size_t k = 0; k < derived.size(); ++k) os << (k ? "," : "") << derived[k];
  os << ") lower_central=(";
  for (size_t k = 0; k < lower_central.size(); ++k) os << (k ? "," : "") << lower_central[k];
  os << ") center=" << center_dim << " killing=(" << killing.positive << ","
     << killing.negative << "," << killing.zero << ")"
     << " solvable=" << (solvable ? 1 : 0) << " nilpotent=" << (nilpotent ? 1 : 0)
     << " der_dim=" << derivation_dim << " ad_semisimple=" << (ad_semisimple ? 1 : 0);
  return os.str();
}

}  // namespace crwb
