#include <algorithm>
#include <map>

#include "crwb/expr.hpp"

namespace crwb {

namespace {

bool is_const(const Expr& e) { return e->kind == Kind::Const; }
bool is_const_val(const Expr& e, long v) {
  return is_const(e) && e->value == Scalar(v);
}

bool rational_exponent(const Expr& e, Rational& out) {
  if (e->kind == Kind::Const && e->value.is_real()) {
    out = e->value.re();
    return true;
  }
  return false;
}

bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

long to_long(const Rational& r) {
  return boost::multiprecision::numerator(r).convert_to<long>();
}

Expr simp(const Expr& e, const Assumptions* as);

// (coeff, factors) with factors canonical and sorted, no Const among them
struct Term {
  Scalar coeff{1};
  std::vector<Expr> factors;
};

Expr rebuild_term(Term t) {
  if (t.coeff.is_zero()) return make_const(0);
  if (t.factors.empty()) return make_const(t.coeff);
  if (t.coeff.is_one() && t.factors.size() == 1) return t.factors[0];
  std::vector<Expr> kids;
  if (!t.coeff.is_one()) kids.push_back(make_const(t.coeff));
  for (auto& f : t.factors) kids.push_back(std::move(f));
  if (kids.size() == 1) return kids[0];
  return make_mul(std::move(kids));
}

Term split_term(const Expr& e) {
  Term t;
  if (e->kind == Kind::Const) {
    t.coeff = e->value;
  } else if (e->kind == Kind::Mul) {
    for (const auto& k : e->kids) {
      if (k->kind == Kind::Const)
        t.coeff = t.coeff * k->value;
      else
        t.factors.push_back(k);
    }
  } else {
    t.factors.push_back(e);
  }
  return t;
}

std::string factors_key(const std::vector<Expr>& fs) {
  std::string s;
  for (const auto& f : fs) {
    s += structure_key(f);
    s += '|';
  }
  return s;
}

Expr simp_add(std::vector<Expr> kids, const Assumptions* as) {
  // flatten
  std::vector<Expr> flat;
  for (auto& k : kids) {
    if (k->kind == Kind::Add)
      for (const auto& g : k->kids) flat.push_back(g);
    else
      flat.push_back(std::move(k));
  }
  // collect like terms
  std::map<std::string, Term> acc;
  for (const auto& k : flat) {
    Term t = split_term(k);
    if (t.coeff.is_zero()) continue;
    std::string key = factors_key(t.factors);
    auto it = acc.find(key);
    if (it == acc.end())
      acc.emplace(key, std::move(t));
    else
      it->second.coeff = it->second.coeff + t.coeff;
  }
  std::vector<Expr> terms;
  Scalar cterm(0);
  for (auto& [key, t] : acc) {
    if (t.coeff.is_zero()) continue;
    if (t.factors.empty())
      cterm = cterm + t.coeff;
    else
      terms.push_back(rebuild_term(std::move(t)));
  }
  std::sort(terms.begin(), terms.end(),
            [](const Expr& a, const Expr& b) { return structure_key(a) < structure_key(b); });
  if (!cterm.is_zero()) terms.insert(terms.begin(), make_const(cterm));
  if (terms.empty()) return make_const(0);
  if (terms.size() == 1) return terms[0];
  return make_add(std::move(terms));
}

Expr simp_mul(std::vector<Expr> kids, const Assumptions* as) {
  std::vector<Expr> flat;
  for (auto& k : kids) {
    if (k->kind == Kind::Mul)
      for (const auto& g : k->kids) flat.push_back(g);
    else
      flat.push_back(std::move(k));
  }
  // distribute over sums
  bool has_add = std::any_of(flat.begin(), flat.end(),
                             [](const Expr& f) { return f->kind == Kind::Add; });
  if (has_add) {
    std::vector<std::vector<Expr>> terms{{}};
    for (const auto& f : flat) {
      if (f->kind == Kind::Add) {
        std::vector<std::vector<Expr>> next;
        next.reserve(terms.size() * f->kids.size());
        for (const auto& t : terms)
          for (const auto& s : f->kids) {
            auto u = t;
            u.push_back(s);
            next.push_back(std::move(u));
          }
        terms = std::move(next);
      } else {
        for (auto& t : terms) t.push_back(f);
      }
    }
    std::vector<Expr> sum;
    sum.reserve(terms.size());
    for (auto& t : terms) sum.push_back(simp_mul(std::move(t), as));
    return simp_add(std::move(sum), as);
  }
  // collect factors by base, summing rational exponents
  Scalar coeff(1);
  struct Fac {
    Expr base;
    Rational expo;
    bool combinable;  // rational exponent
    Expr raw;         // used when not combinable
  };
  std::map<std::string, Fac> facs;
  std::vector<std::string> order;
  for (const auto& f : flat) {
    if (f->kind == Kind::Const) {
      coeff = coeff * f->value;
      continue;
    }
    Expr base = f;
    Rational expo = 1;
    bool combinable = true;
    if (f->kind == Kind::Pow) {
      Rational r;
      if (rational_exponent(f->kids[1], r)) {
        base = f->kids[0];
        expo = r;
      } else {
        combinable = false;
      }
    }
    std::string key = combinable ? structure_key(base) : structure_key(f) + "#u";
    auto it = facs.find(key);
    if (it == facs.end()) {
      facs.emplace(key, Fac{base, expo, combinable, f});
      order.push_back(key);
    } else if (combinable) {
      it->second.expo += expo;
    } else {
      // identical non-combinable factors: square via an explicit product
      facs.emplace(key + "#" + std::to_string(order.size()), Fac{base, expo, false, f});
      order.push_back(key + "#" + std::to_string(order.size()));
    }
  }
  if (coeff.is_zero()) return make_const(0);
  std::vector<Expr> out;
  for (const auto& key : order) {
    auto& fac = facs.at(key);
    if (!fac.combinable) {
      out.push_back(fac.raw);
      continue;
    }
    if (fac.expo == 0) continue;
    if (fac.expo == 1)
      out.push_back(fac.base);
    else
      out.push_back(simp(make_pow(fac.base, fac.expo), as));
  }
  // powers may have folded to constants
  std::vector<Expr> out2;
  for (auto& f : out) {
    if (f->kind == Kind::Const)
      coeff = coeff * f->value;
    else
      out2.push_back(std::move(f));
  }
  std::sort(out2.begin(), out2.end(),
            [](const Expr& a, const Expr& b) { return structure_key(a) < structure_key(b); });
  Term t;
  t.coeff = coeff;
  t.factors = std::move(out2);
  return rebuild_term(std::move(t));
}

bool structurally_positive(const Expr& e, const Assumptions* as) {
  if (e->kind == Kind::Const) return e->value.is_real() && e->value.re() > 0;
  if (e->kind == Kind::Param) return as && as->is_positive(e->param);
  if (e->kind == Kind::Exp) return structurally_real(e->kids[0]);
  return false;
}

Expr simp_pow(const Expr& base, const Expr& expo, const Assumptions* as) {
  Rational r;
  if (!rational_exponent(expo, r)) return make_pow(base, expo);  // parameter exponent
  if (r == 0) return make_const(1);
  if (r == 1) return base;
  if (base->kind == Kind::Const) {
    if (is_integer(r)) return make_const(base->value.pow(to_long(r)));
    if (base->value.is_one()) return make_const(1);
    if (base->value.is_zero() && r > 0) return make_const(0);
    return make_pow(base, expo);
  }
  if (is_integer(r)) {
    long n = to_long(r);
    if (base->kind == Kind::Pow) {
      Rational inner;
      if (rational_exponent(base->kids[1], inner))
        return simp(make_pow(base->kids[0], inner * r), as);
    }
    if (base->kind == Kind::Mul) {
      std::vector<Expr> kids;
      for (const auto& f : base->kids) kids.push_back(simp(make_pow(f, r), as));
      return simp_mul(std::move(kids), as);
    }
    if (base->kind == Kind::Add && n >= 2 && n <= 4) {
      std::vector<Expr> prod(static_cast<size_t>(n), base);
      return simp_mul(std::move(prod), as);
    }
  }
  return make_pow(base, expo);
}

// canonical representative for the argument of Re/Im: the conjugate pair member
// with the smaller structure key
std::pair<Expr, bool> conj_rep(const Expr& e, const Assumptions* as) {
  Expr c = simp(conjugate(e), as);
  bool ec = contains_conjugate_var(e), cc = contains_conjugate_var(c);
  if (ec != cc) return cc ? std::pair<Expr, bool>{e, false} : std::pair<Expr, bool>{c, true};
  if (structure_key(c) < structure_key(e)) return {c, true};
  return {e, false};
}

Expr simp(const Expr& e, const Assumptions* as) {
  switch (e->kind) {
    case Kind::Const:
    case Kind::Var:
    case Kind::Param:
      return e;
    case Kind::Neg:
      return simp_mul({make_const(-1L), simp(e->kids[0], as)}, as);
    case Kind::Recip:
      return simp(make_pow(simp(e->kids[0], as), Rational(-1)), as);
    case Kind::Add: {
      std::vector<Expr> kids;
      kids.reserve(e->kids.size());
      for (const auto& k : e->kids) kids.push_back(simp(k, as));
      return simp_add(std::move(kids), as);
    }
    case Kind::Mul: {
      std::vector<Expr> kids;
      kids.reserve(e->kids.size());
      for (const auto& k : e->kids) kids.push_back(simp(k, as));
      return simp_mul(std::move(kids), as);
    }
    case Kind::Pow:
      return simp_pow(simp(e->kids[0], as), simp(e->kids[1], as), as);
    case Kind::Exp: {
      Expr k = simp(e->kids[0], as);
      if (is_const_val(k, 0)) return make_const(1);
      if (k->kind == Kind::Log && structurally_positive(k->kids[0], as)) return k->kids[0];
      return make_exp(k);
    }
    case Kind::Log: {
      Expr k = simp(e->kids[0], as);
      if (is_const_val(k, 1)) return make_const(0);
      if (k->kind == Kind::Exp && structurally_real(k->kids[0])) return k->kids[0];
      return make_log(k);
    }
    case Kind::Atan: {
      Expr k = simp(e->kids[0], as);
      if (is_const_val(k, 0)) return make_const(0);
      return make_atan(k);
    }
    case Kind::Re: {
      Expr k = simp(e->kids[0], as);
      if (k->kind == Kind::Const) return make_const(Scalar(k->value.re()));
      if (structurally_real(k)) return k;
      if (k->kind == Kind::Add) {
        std::vector<Expr> kids;
        for (const auto& t : k->kids) kids.push_back(simp(make_re(t), as));
        return simp_add(std::move(kids), as);
      }
      Term t = split_term(k);
      if (!t.coeff.is_one()) {
        // re((a+bi) x) = a re(x) - b im(x)
        Expr rest = rebuild_term(Term{Scalar(1), t.factors});
        Expr a = make_const(Scalar(t.coeff.re()));
        Expr b = make_const(Scalar(t.coeff.im()));
        return simp_add({simp_mul({a, simp(make_re(rest), as)}, as),
                         simp_mul({make_const(-1L), b, simp(make_im(rest), as)}, as)},
                        as);
      }
      auto [rep, flipped] = conj_rep(k, as);
      return make_re(rep);
    }
    case Kind::Im: {
      Expr k = simp(e->kids[0], as);
      if (k->kind == Kind::Const) return make_const(Scalar(k->value.im()));
      if (structurally_real(k)) return make_const(0);
      if (k->kind == Kind::Add) {
        std::vector<Expr> kids;
        for (const auto& t : k->kids) kids.push_back(simp(make_im(t), as));
        return simp_add(std::move(kids), as);
      }
      Term t = split_term(k);
      if (!t.coeff.is_one()) {
        // im((a+bi) x) = a im(x) + b re(x)
        Expr rest = rebuild_term(Term{Scalar(1), t.factors});
        Expr a = make_const(Scalar(t.coeff.re()));
        Expr b = make_const(Scalar(t.coeff.im()));
        return simp_add({simp_mul({a, simp(make_im(rest), as)}, as),
                         simp_mul({b, simp(make_re(rest), as)}, as)},
                        as);
      }
      auto [rep, flipped] = conj_rep(k, as);
      if (flipped) return simp_mul({make_const(-1L), make_im(rep)}, as);
      return make_im(rep);
    }
  }
  return e;
}

}  // namespace

Expr simplify(const Expr& e, const Assumptions* a) { return simp(e, a); }

bool is_zero(const Expr& e) {
  Expr s = simplify(e);
  return s->kind == Kind::Const && s->value.is_zero();
}

bool structurally_real(const Expr& e) {
  Expr s = simplify(e);
  Expr c = simplify(conjugate(s));
  return structurally_equal(s, c);
}

}  // namespace crwb
