#include "crwb/expr.hpp"

namespace crwb {

namespace {

Expr half() { return make_const(Scalar(Rational(1, 2))); }

Expr d(const Expr& e, int v) {
  switch (e->kind) {
    case Kind::Const:
    case Kind::Param:
      return make_const(0);
    case Kind::Var:
      return make_const(e->var == v ? 1L : 0L);
    case Kind::Add: {
      std::vector<Expr> kids;
      kids.reserve(e->kids.size());
      for (const auto& k : e->kids) kids.push_back(d(k, v));
      return make_add(std::move(kids));
    }
    case Kind::Mul: {
      std::vector<Expr> terms;
      for (size_t i = 0; i < e->kids.size(); ++i) {
        std::vector<Expr> kids = e->kids;
        kids[i] = d(e->kids[i], v);
        terms.push_back(make_mul(std::move(kids)));
      }
      return make_add(std::move(terms));
    }
    case Kind::Neg:
      return make_neg(d(e->kids[0], v));
    case Kind::Recip: {
      const Expr& u = e->kids[0];
      return make_neg(d(u, v) * make_pow(u, Rational(-2)));
    }
    case Kind::Pow: {
      const Expr& u = e->kids[0];
      const Expr& p = e->kids[1];
      if (p->kind == Kind::Param) {
        if (!structurally_real(u))
          throw DomainError("pow with parameter exponent over a non-real base", e);
        // d(u^a) = a u^a u' / u, valid on the positive chart
        return p * e * d(u, v) * make_recip(u);
      }
      Rational r = p->value.re();
      return p * make_pow(u, r - 1) * d(u, v);
    }
    case Kind::Exp:
      return e * d(e->kids[0], v);
    case Kind::Log:
      return d(e->kids[0], v) * make_recip(e->kids[0]);
    case Kind::Atan: {
      const Expr& u = e->kids[0];
      if (!structurally_real(u)) throw DomainError("atan of a non-real argument", e);
      return d(u, v) * make_recip(make_const(1L) + u * u);
    }
    case Kind::Re:
      return half() * (d(e->kids[0], v) + d(conjugate(e->kids[0]), v));
    case Kind::Im:
      return make_const(Scalar(Rational(0), Rational(-1, 2))) *
             (d(e->kids[0], v) - d(conjugate(e->kids[0]), v));
  }
  return make_const(0);
}

}  // namespace

Expr wirtinger(const Expr& e, int v) { return simplify(d(e, v)); }

}  // namespace crwb
