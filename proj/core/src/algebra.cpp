#include "crwb/algebra.hpp"

namespace crwb {

RatVec RationalAlgebra::bracket(const RatVec& x, const RatVec& y) const {
  RatVec out(size_t(dim), Rational(0));
  for (int i = 0; i < dim; ++i) {
    if (x[size_t(i)] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      if (y[size_t(j)] == 0) continue;
      Rational f = x[size_t(i)] * y[size_t(j)];
      for (int k = 0; k < dim; ++k) out[size_t(k)] += f * at(i, j, k);
    }
  }
  return out;
}

RatMat RationalAlgebra::ad(const RatVec& x) const {
  RatMat m(dim, dim);
  for (int j = 0; j < dim; ++j) {
    RatVec ej(size_t(dim), Rational(0));
    ej[size_t(j)] = 1;
    RatVec col = bracket(x, ej);
    for (int k = 0; k < dim; ++k) m.at(k, j) = col[size_t(k)];
  }
  return m;
}

RatMat RationalAlgebra::bracket_span(const std::vector<RatVec>& a,
                                     const std::vector<RatVec>& b) const {
  std::vector<RatVec> cols;
  for (const auto& x : a)
    for (const auto& y : b) cols.push_back(bracket(x, y));
  RatMat m(dim, int(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int k = 0; k < dim; ++k) m.at(k, int(j)) = cols[j][size_t(k)];
  return m;
}

LieAlgebra::LieAlgebra(std::string nm, int n) : name(std::move(nm)), dim(n) {
  c_.assign(size_t(n) * n * n, make_const(0L));
}

void LieAlgebra::set_bracket(int i, int j, const std::vector<std::pair<int, Expr>>& terms) {
  for (const auto& [k, e] : terms) {
    Expr s = simplify(e);
    c_[idx(i, j, k)] = s;
    c_[idx(j, i, k)] = simplify(make_neg(s));
    collect_params(s, params);
  }
}

Expr LieAlgebra::jacobi_expr(int i, int j, int k, int l) const {
  std::vector<Expr> terms;
  auto add_cycle = [&](int a, int b, int cc) {
    // [[e_a, e_b], e_c]_l = sum_m c_ab^m c_mc^l
    for (int m = 0; m < dim; ++m)
      terms.push_back(c_at(a, b, m) * c_at(m, cc, l));
  };
  add_cycle(i, j, k);
  add_cycle(j, k, i);
  add_cycle(k, i, j);
  return make_add(std::move(terms));
}

LieAlgebra::JacobiReport LieAlgebra::check_jacobi() const {
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
          Expr r = simplify(jacobi_expr(i, j, k, l));
          if (!(r->kind == Kind::Const && r->value.is_zero()))
            return {false, i, j, k, l, r};
        }
  return {};
}

double LieAlgebra::jacobi_residual(const Binding& b) const {
  double worst = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k)
        for (int l = 0; l < dim; ++l)
          worst = std::max(worst, std::abs(eval(jacobi_expr(i, j, k, l), b)));
  return worst;
}

RationalAlgebra LieAlgebra::instantiate(const std::map<std::string, Rational>& values) const {
  RationalAlgebra g(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        Scalar v = eval_exact(c_at(i, j, k), values);
        if (!v.is_real())
          throw std::domain_error(name + ": non-real structure constant");
        g.at(i, j, k) = v.re();
      }
  return g;
}

int span_rank(const std::vector<RatVec>& vecs) {
  if (vecs.empty()) return 0;
  RatMat m(int(vecs[0].size()), int(vecs.size()));
  for (size_t j = 0; j < vecs.size(); ++j)
    for (size_t i = 0; i < vecs[0].size(); ++i) m.at(int(i), int(j)) = vecs[j][i];
  return m.rank();
}

bool in_span(const std::vector<RatVec>& basis, const RatVec& v) {
  if (basis.empty()) {
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  }
  RatMat m(int(v.size()), int(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j)
    for (size_t i = 0; i < v.size(); ++i) m.at(int(i), int(j)) = basis[j][i];
  return m.solve(v).has_value();
}

IdealCheck verify_abelian_ideal(const RationalAlgebra& g, const std::vector<RatVec>& basis) {
  IdealCheck out;
  for (size_t a = 0; a < basis.size(); ++a)
    for (size_t b = a + 1; b < basis.size(); ++b) {
      RatVec br = g.bracket(basis[a], basis[b]);
      for (const auto& x : br)
        if (x != 0) {
          out.reason = "bracket of basis vectors " + std::to_string(a + 1) + " and " +
                       std::to_string(b + 1) + " is nonzero";
          return out;
        }
    }
  RatMat m(g.dim, int(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j)
    for (int i = 0; i < g.dim; ++i) m.at(i, int(j)) = basis[j][size_t(i)];
  out.closure_coeffs = RatMat(g.dim * int(basis.size()), int(basis.size()));
  for (int i = 0; i < g.dim; ++i) {
    RatVec ei(size_t(g.dim), Rational(0));
    ei[size_t(i)] = 1;
    for (size_t j = 0; j < basis.size(); ++j) {
      RatVec br = g.bracket(ei, basis[j]);
      auto sol = m.solve(br);
      if (!sol) {
        out.reason = "bracket with e" + std::to_string(i + 1) +
                     " leaves the span at basis vector " + std::to_string(j + 1);
        return out;
      }
      for (size_t k = 0; k < basis.size(); ++k)
        out.closure_coeffs.at(i * int(basis.size()) + int(j), int(k)) = (*sol)[k];
    }
  }
  out.ok = true;
  return out;
}

}  // namespace crwb
