#include "crwb/expr.hpp"

#include <algorithm>
#include <sstream>

namespace crwb {

namespace {
const char* kVarNames[kNumVars] = {"z1", "z2", "z3", "cz1", "cz2", "cz3"};
}

const char* var_name(int v) { return kVarNames[v]; }

int var_index(const std::string& name) {
  for (int v = 0; v < kNumVars; ++v)
    if (name == kVarNames[v]) return v;
  return -1;
}

Expr make_const(Scalar s) {
  auto n = std::make_shared<ExprNode>(Kind::Const);
  n->value = std::move(s);
  return n;
}
Expr make_const(long v) { return make_const(Scalar(v)); }
Expr make_rational(Rational r) { return make_const(Scalar(std::move(r))); }

Expr make_var(int v) {
  auto n = std::make_shared<ExprNode>(Kind::Var);
  n->var = v;
  return n;
}

Expr make_param(std::string name) {
  auto n = std::make_shared<ExprNode>(Kind::Param);
  n->param = std::move(name);
  return n;
}

static Expr make_nary(Kind k, std::vector<Expr> kids) {
  auto n = std::make_shared<ExprNode>(k);
  n->kids = std::move(kids);
  return n;
}

Expr make_add(std::vector<Expr> kids) { return make_nary(Kind::Add, std::move(kids)); }
Expr make_mul(std::vector<Expr> kids) { return make_nary(Kind::Mul, std::move(kids)); }
Expr make_neg(Expr e) { return make_nary(Kind::Neg, {std::move(e)}); }
Expr make_recip(Expr e) { return make_nary(Kind::Recip, {std::move(e)}); }

Expr make_pow(Expr base, Expr exponent) {
  bool ok = exponent->kind == Kind::Param ||
            (exponent->kind == Kind::Const && exponent->value.is_real());
  if (!ok) throw std::invalid_argument("pow exponent must be a real rational or a parameter");
  return make_nary(Kind::Pow, {std::move(base), std::move(exponent)});
}
Expr make_pow(Expr base, Rational exponent) {
  return make_pow(std::move(base), make_rational(std::move(exponent)));
}

Expr make_exp(Expr e) { return make_nary(Kind::Exp, {std::move(e)}); }
Expr make_log(Expr e) { return make_nary(Kind::Log, {std::move(e)}); }
Expr make_atan(Expr e) { return make_nary(Kind::Atan, {std::move(e)}); }
Expr make_re(Expr e) { return make_nary(Kind::Re, {std::move(e)}); }
Expr make_im(Expr e) { return make_nary(Kind::Im, {std::move(e)}); }

const std::string& structure_key(const Expr& e) {
  if (!e->key.empty()) return e->key;
  std::ostringstream os;
  switch (e->kind) {
    case Kind::Const: os << "c" << e->value.str(); break;
    case Kind::Var: os << "v" << kVarNames[e->var]; break;
    case Kind::Param: os << "p" << e->param; break;
    case Kind::Add: os << "(+"; break;
    case Kind::Mul: os << "(*"; break;
    case Kind::Neg: os << "(neg"; break;
    case Kind::Recip: os << "(recip"; break;
    case Kind::Pow: os << "(pow"; break;
    case Kind::Exp: os << "(exp"; break;
    case Kind::Log: os << "(log"; break;
    case Kind::Atan: os << "(atan"; break;
    case Kind::Re: os << "(re"; break;
    case Kind::Im: os << "(im"; break;
  }
  if (!e->kids.empty() || (e->kind != Kind::Const && e->kind != Kind::Var && e->kind != Kind::Param)) {
    for (const auto& k : e->kids) os << " " << structure_key(k);
    os << ")";
  }
  e->key = os.str();
  return e->key;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  return structure_key(a) == structure_key(b);
}

Expr conjugate(const Expr& e) {
  switch (e->kind) {
    case Kind::Const: return make_const(e->value.conj());
    case Kind::Var: return make_var(conj_var(e->var));
    case Kind::Param: return e;  // parameters are real
    case Kind::Re:
    case Kind::Im:
    case Kind::Atan: {
      // real-valued nodes under the chart conventions
      if (e->kind == Kind::Atan) {
        std::vector<Expr> kids{conjugate(e->kids[0])};
        return make_nary(Kind::Atan, std::move(kids));
      }
      return e;
    }
    case Kind::Pow: {
      // exponent is real (rational or real parameter)
      return make_pow(conjugate(e->kids[0]), e->kids[1]);
    }
    default: {
      std::vector<Expr> kids;
      kids.reserve(e->kids.size());
      for (const auto& k : e->kids) kids.push_back(conjugate(k));
      return make_nary(e->kind, std::move(kids));
    }
  }
}

Expr subst_param(const Expr& e, const std::string& name, const Expr& repl) {
  if (e->kind == Kind::Param) return e->param == name ? repl : e;
  if (e->kids.empty()) return e;
  std::vector<Expr> kids;
  kids.reserve(e->kids.size());
  bool changed = false;
  for (const auto& k : e->kids) {
    kids.push_back(subst_param(k, name, repl));
    changed = changed || kids.back() != k;
  }
  if (!changed) return e;
  if (e->kind == Kind::Pow) return make_pow(kids[0], kids[1]);
  return make_nary(e->kind, std::move(kids));
}

bool contains_conjugate_var(const Expr& e) {
  if (e->kind == Kind::Var) return e->var >= 3;
  for (const auto& k : e->kids)
    if (contains_conjugate_var(k)) return true;
  return false;
}

bool contains_kind(const Expr& e, Kind k) {
  if (e->kind == k) return true;
  for (const auto& c : e->kids)
    if (contains_kind(c, k)) return true;
  return false;
}

bool is_holomorphic(const Expr& e) {
  return !contains_conjugate_var(e) && !contains_kind(e, Kind::Re) &&
         !contains_kind(e, Kind::Im) && !contains_kind(e, Kind::Atan);
}

void collect_params(const Expr& e, std::set<std::string>& out) {
  if (e->kind == Kind::Param) out.insert(e->param);
  for (const auto& k : e->kids) collect_params(k, out);
}

void Binding::set_var(int v, std::complex<double> value) {
  int cv = conj_var(v);
  auto old = vars_.find(v);
  auto cit = vars_.find(cv);
  // the conjugate follows unless it was bound away from conj(old value)
  bool follow = cit == vars_.end() ||
                (old != vars_.end() && cit->second == std::conj(old->second));
  vars_[v] = value;
  if (follow) vars_[cv] = std::conj(value);
}

void Binding::set_var_raw(int v, std::complex<double> value) { vars_[v] = value; }

double Binding::param(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw std::out_of_range("unbound parameter: " + name);
  return it->second;
}

std::complex<double> Binding::var(int v) const {
  auto it = vars_.find(v);
  if (it == vars_.end())
    throw std::out_of_range(std::string("unbound variable: ") + kVarNames[v]);
  return it->second;
}

}  // namespace crwb
