#include <cmath>

#include "crwb/expr.hpp"

namespace crwb {

namespace {

using cd = std::complex<double>;

constexpr double kRealAxisTol = 1e-9;

bool near_real(cd v) { return std::abs(v.imag()) <= kRealAxisTol * std::max(1.0, std::abs(v)); }

cd ev(const Expr& e, const Binding& b) {
  switch (e->kind) {
    case Kind::Const:
      return e->value.to_complex();
    case Kind::Var:
      return b.var(e->var);
    case Kind::Param:
      return {b.param(e->param), 0.0};
    case Kind::Add: {
      cd s = 0;
      for (const auto& k : e->kids) s += ev(k, b);
      return s;
    }
    case Kind::Mul: {
      cd p = 1;
      for (const auto& k : e->kids) p *= ev(k, b);
      return p;
    }
    case Kind::Neg:
      return -ev(e->kids[0], b);
    case Kind::Recip: {
      cd v = ev(e->kids[0], b);
      if (v == cd(0, 0)) throw DomainError("division by zero", e);
      return 1.0 / v;
    }
    case Kind::Pow: {
      cd base = ev(e->kids[0], b);
      if (e->kids[1]->kind == Kind::Param) {
        double a = b.param(e->kids[1]->param);
        if (!near_real(base) || base.real() <= 0)
          throw DomainError("pow with parameter exponent needs a positive real base", e);
        return {std::pow(base.real(), a), 0.0};
      }
      Rational r = e->kids[1]->value.re();
      if (boost::multiprecision::denominator(r) == 1) {
        long n = boost::multiprecision::numerator(r).convert_to<long>();
        if (base == cd(0, 0) && n < 0) throw DomainError("division by zero", e);
        return std::pow(base, cd(static_cast<double>(n), 0));
      }
      double x = r.convert_to<double>();
      if (near_real(base)) {
        if (base.real() <= 0)
          throw DomainError("fractional power of a non-positive real", e);
        return {std::pow(base.real(), x), 0.0};
      }
      return std::pow(base, cd(x, 0));
    }
    case Kind::Exp:
      return std::exp(ev(e->kids[0], b));
    case Kind::Log: {
      cd v = ev(e->kids[0], b);
      if (near_real(v)) {
        if (v.real() <= 0) throw DomainError("log of a non-positive real", e);
        return {std::log(v.real()), 0.0};
      }
      return std::log(v);
    }
    case Kind::Atan: {
      cd v = ev(e->kids[0], b);
      if (!near_real(v)) throw DomainError("atan of a non-real value", e);
      return {std::atan(v.real()), 0.0};
    }
    case Kind::Re:
      return {ev(e->kids[0], b).real(), 0.0};
    case Kind::Im:
      return {ev(e->kids[0], b).imag(), 0.0};
  }
  return 0;
}

}  // namespace

std::complex<double> eval(const Expr& e, const Binding& b) { return ev(e, b); }

bool exactly_evaluable(const Expr& e) {
  switch (e->kind) {
    case Kind::Const:
    case Kind::Var:
    case Kind::Param:
      return true;
    case Kind::Add:
    case Kind::Mul:
    case Kind::Neg:
    case Kind::Recip:
      break;
    case Kind::Pow: {
      if (!(e->kids[1]->kind == Kind::Const && e->kids[1]->value.is_integer())) return false;
      return exactly_evaluable(e->kids[0]);
    }
    default:
      return false;
  }
  for (const auto& k : e->kids)
    if (!exactly_evaluable(k)) return false;
  return true;
}

Scalar eval_exact(const Expr& e, const std::map<std::string, Rational>& params,
                  const std::map<int, Scalar>* vars) {
  switch (e->kind) {
    case Kind::Const:
      return e->value;
    case Kind::Var: {
      if (vars) {
        auto it = vars->find(e->var);
        if (it != vars->end()) return it->second;
      }
      throw std::domain_error(std::string("eval_exact: unbound variable ") + var_name(e->var));
    }
    case Kind::Param: {
      auto it = params.find(e->param);
      if (it == params.end()) throw std::domain_error("eval_exact: unbound parameter " + e->param);
      return Scalar(it->second);
    }
    case Kind::Add: {
      Scalar s(0);
      for (const auto& k : e->kids) s = s + eval_exact(k, params, vars);
      return s;
    }
    case Kind::Mul: {
      Scalar p(1);
      for (const auto& k : e->kids) p = p * eval_exact(k, params, vars);
      return p;
    }
    case Kind::Neg:
      return -eval_exact(e->kids[0], params, vars);
    case Kind::Recip:
      return eval_exact(e->kids[0], params, vars).recip();
    case Kind::Pow: {
      if (e->kids[1]->kind == Kind::Const && e->kids[1]->value.is_integer()) {
        long n = boost::multiprecision::numerator(e->kids[1]->value.re()).convert_to<long>();
        return eval_exact(e->kids[0], params, vars).pow(n);
      }
      throw std::domain_error("eval_exact: non-integer exponent");
    }
    default:
      throw std::domain_error("eval_exact: transcendental node");
  }
}

}  // namespace crwb
