#pragma once

#include <complex>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "crwb/scalar.hpp"

namespace crwb {

enum class Kind { Const, Var, Param, Add, Mul, Neg, Recip, Pow, Exp, Log, Atan, Re, Im };

class ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

/// Immutable expression node. Variables are indexed 0..5 for z1,z2,z3,cz1,cz2,cz3.
/// Pow stores its exponent as child 1, restricted to a real rational Const or a Param.
class ExprNode {
public:
  Kind kind;
  Scalar value;             // Const
  int var = -1;             // Var
  std::string param;        // Param
  std::vector<Expr> kids;

  mutable std::string key;  // canonical structure key, filled lazily

  explicit ExprNode(Kind k) : kind(k) {}
};

inline constexpr int kNumVars = 6;
const char* var_name(int v);
int var_index(const std::string& name);   // -1 when not a variable
inline int conj_var(int v) { return v < 3 ? v + 3 : v - 3; }

// node builders
Expr make_const(Scalar s);
Expr make_const(long n);
Expr make_rational(Rational r);
Expr make_var(int v);
Expr make_param(std::string name);
Expr make_add(std::vector<Expr> kids);
Expr make_mul(std::vector<Expr> kids);
Expr make_neg(Expr e);
Expr make_recip(Expr e);
Expr make_pow(Expr base, Expr exponent);
Expr make_pow(Expr base, Rational exponent);
Expr make_exp(Expr e);
Expr make_log(Expr e);
Expr make_atan(Expr e);
Expr make_re(Expr e);
Expr make_im(Expr e);

inline Expr operator+(Expr a, Expr b) { return make_add({std::move(a), std::move(b)}); }
inline Expr operator-(Expr a, Expr b) { return make_add({std::move(a), make_neg(std::move(b))}); }
inline Expr operator*(Expr a, Expr b) { return make_mul({std::move(a), std::move(b)}); }
inline Expr operator-(Expr a) { return make_neg(std::move(a)); }

/// Canonical structure key; equal keys <=> structurally equal trees.
const std::string& structure_key(const Expr& e);
bool structurally_equal(const Expr& a, const Expr& b);

/// Swaps z_j <-> conj z_j and conjugates constants. Re/Im/Atan/Log arguments follow
/// the chart conventions (real or off the negative axis), where the rule is exact.
Expr conjugate(const Expr& e);

/// Replaces every occurrence of the named parameter. The replacement must be
/// valid wherever the parameter appears (real-valued in Pow exponents).
Expr subst_param(const Expr& e, const std::string& name, const Expr& repl);

bool contains_conjugate_var(const Expr& e);
bool contains_kind(const Expr& e, Kind k);
/// Structural holomorphy: no conjugate variables, no Re/Im/Atan nodes.
bool is_holomorphic(const Expr& e);
void collect_params(const Expr& e, std::set<std::string>& out);

/// Parameter assumptions usable by simplify (positivity unlocks exp(log(a)) -> a).
struct Assumptions {
  std::set<std::string> positive;
  bool is_positive(const std::string& p) const { return positive.count(p) > 0; }
};

Expr simplify(const Expr& e, const Assumptions* a = nullptr);
bool is_zero(const Expr& e);
/// e is structurally real: simplify(conjugate(e)) == simplify(e).
bool structurally_real(const Expr& e);

/// Wirtinger partial with respect to variable v (0..5). z and conj z are independent.
/// Throws std::domain_error for Pow with a Param exponent over a base that is not
/// structurally real.
Expr wirtinger(const Expr& e, int v);

/// Point + parameter binding. Binding a z-variable also binds its conjugate
/// unless the conjugate is bound explicitly (test hook).
class Binding {
public:
  void set_param(const std::string& name, double value) { params_[name] = value; }
  void set_var(int v, std::complex<double> value);             // auto-conjugates
  void set_var_raw(int v, std::complex<double> value);         // no conjugate fill
  double param(const std::string& name) const;
  std::complex<double> var(int v) const;
  bool has_param(const std::string& name) const { return params_.count(name) > 0; }
  const std::map<std::string, double>& params() const { return params_; }

private:
  std::map<std::string, double> params_;
  std::map<int, std::complex<double>> vars_;
};

/// Thrown when evaluation leaves the chart domain; carries the offending subexpression.
class DomainError : public std::domain_error {
public:
  DomainError(const std::string& what, Expr offender)
      : std::domain_error(what), offender(std::move(offender)) {}
  Expr offender;
};

std::complex<double> eval(const Expr& e, const Binding& b);

/// Exact evaluation over Q(i) for rational-arithmetic expressions
/// (Const/Var/Param/Add/Mul/Neg/Recip/integer Pow). Throws std::domain_error otherwise.
Scalar eval_exact(const Expr& e, const std::map<std::string, Rational>& params,
                  const std::map<int, Scalar>* vars = nullptr);
bool exactly_evaluable(const Expr& e);

/// Infix text form; parse(to_string(e)) is structurally equal to simplify(e).
std::string to_string(const Expr& e);
/// Parses the catalog/CLI expression grammar. x1..x3 and y1..y3 abbreviate
/// re(z_j) and im(z_j). Throws std::invalid_argument on syntax errors.
Expr parse_expr(const std::string& text);

}  // namespace crwb
