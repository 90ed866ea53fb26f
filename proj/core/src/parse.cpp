#include <cctype>
#include <sstream>

#include "crwb/expr.hpp"

namespace crwb {

namespace {

struct Lexer {
  std::string src;
  size_t pos = 0;

  void skip() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }
  bool eof() {
    skip();
    return pos >= src.size();
  }
  char peek() {
    skip();
    return pos < src.size() ? src[pos] : '\0';
  }
  bool accept(char c) {
    skip();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      throw std::invalid_argument("expected '" + std::string(1, c) + "' at offset " +
                                  std::to_string(pos) + " in: " + src);
  }
  std::string identifier() {
    skip();
    size_t start = pos;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
      ++pos;
    return src.substr(start, pos - start);
  }
  std::string number() {
    skip();
    size_t start = pos;
    while (pos < src.size() && (std::isdigit(static_cast<unsigned char>(src[pos])) ||
                                src[pos] == '.'))
      ++pos;
    // exponent suffix
    if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
      size_t p = pos + 1;
      if (p < src.size() && (src[p] == '+' || src[p] == '-')) ++p;
      if (p < src.size() && std::isdigit(static_cast<unsigned char>(src[p]))) {
        ++p;
        while (p < src.size() && std::isdigit(static_cast<unsigned char>(src[p]))) ++p;
        pos = p;
      }
    }
    return src.substr(start, pos - start);
  }
};

class Parser {
public:
  explicit Parser(std::string text) { lex_.src = std::move(text); }

  Expr parse() {
    Expr e = expression();
    if (!lex_.eof())
      throw std::invalid_argument("trailing input at offset " + std::to_string(lex_.pos) +
                                  " in: " + lex_.src);
    return e;
  }

private:
  Lexer lex_;

  Expr expression() {
    Expr e = term();
    while (true) {
      if (lex_.accept('+'))
        e = e + term();
      else if (lex_.accept('-'))
        e = e - term();
      else
        return e;
    }
  }

  Expr term() {
    Expr e = unary();
    while (true) {
      if (lex_.accept('*'))
        e = e * unary();
      else if (lex_.accept('/'))
        e = e * make_recip(unary());
      else
        return e;
    }
  }

  Expr unary() {
    if (lex_.accept('-')) return make_neg(unary());
    if (lex_.accept('+')) return unary();
    return primary();
  }

  Expr primary() {
    char c = lex_.peek();
    if (c == '(') {
      lex_.expect('(');
      Expr e = expression();
      lex_.expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return make_rational(parse_rational(lex_.number()));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id = lex_.identifier();
      if (id.empty()) throw std::invalid_argument("bad token in: " + lex_.src);
      if (lex_.peek() == '(') return call(id);
      return atom(id);
    }
    throw std::invalid_argument("unexpected character '" + std::string(1, c) +
                                "' at offset " + std::to_string(lex_.pos) + " in: " + lex_.src);
  }

  Expr atom(const std::string& id) {
    if (id == "i") return make_const(Scalar::i());
    int v = var_index(id);
    if (v >= 0) return make_var(v);
    // x_j / y_j sugar for re(z_j) / im(z_j)
    if (id.size() == 2 && (id[0] == 'x' || id[0] == 'y') && id[1] >= '1' && id[1] <= '3') {
      Expr z = make_var(id[1] - '1');
      return id[0] == 'x' ? make_re(z) : make_im(z);
    }
    return make_param(id);
  }

  Expr call(const std::string& fn) {
    lex_.expect('(');
    std::vector<Expr> args;
    args.push_back(expression());
    while (lex_.accept(',')) args.push_back(expression());
    lex_.expect(')');
    auto arity = [&](size_t n) {
      if (args.size() != n)
        throw std::invalid_argument(fn + " expects " + std::to_string(n) + " argument(s)");
    };
    if (fn == "re") { arity(1); return make_re(args[0]); }
    if (fn == "im") { arity(1); return make_im(args[0]); }
    if (fn == "exp") { arity(1); return make_exp(args[0]); }
    if (fn == "log") { arity(1); return make_log(args[0]); }
    if (fn == "atan") { arity(1); return make_atan(args[0]); }
    if (fn == "pow") {
      arity(2);
      Expr expo = simplify(args[1]);
      return make_pow(args[0], expo);
    }
    throw std::invalid_argument("unknown function: " + fn);
  }
};

void print(const Expr& e, std::ostream& os);

void print_wrapped(const Expr& e, std::ostream& os) {
  bool wrap = e->kind == Kind::Add || e->kind == Kind::Neg ||
              (e->kind == Kind::Const && (!e->value.is_real() || e->value.re() < 0));
  if (wrap) os << "(";
  print(e, os);
  if (wrap) os << ")";
}

void print(const Expr& e, std::ostream& os) {
  switch (e->kind) {
    case Kind::Const: os << e->value.str(); break;
    case Kind::Var: os << var_name(e->var); break;
    case Kind::Param: os << e->param; break;
    case Kind::Add:
      for (size_t i = 0; i < e->kids.size(); ++i) {
        if (i) os << " + ";
        print_wrapped(e->kids[i], os);
      }
      break;
    case Kind::Mul:
      for (size_t i = 0; i < e->kids.size(); ++i) {
        if (i) os << "*";
        print_wrapped(e->kids[i], os);
      }
      break;
    case Kind::Neg:
      os << "-";
      print_wrapped(e->kids[0], os);
      break;
    case Kind::Recip:
      os << "1/";
      print_wrapped(e->kids[0], os);
      break;
    case Kind::Pow:
      os << "pow(";
      print(e->kids[0], os);
      os << ", ";
      print(e->kids[1], os);
      os << ")";
      break;
    case Kind::Exp: os << "exp("; print(e->kids[0], os); os << ")"; break;
    case Kind::Log: os << "log("; print(e->kids[0], os); os << ")"; break;
    case Kind::Atan: os << "atan("; print(e->kids[0], os); os << ")"; break;
    case Kind::Re: os << "re("; print(e->kids[0], os); os << ")"; break;
    case Kind::Im: os << "im("; print(e->kids[0], os); os << ")"; break;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(e, os);
  return os.str();
}

Expr parse_expr(const std::string& text) {
  Parser p(text);
  return simplify(p.parse());
}

}  // namespace crwb
