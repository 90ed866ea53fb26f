#include "crwb/catalog.hpp"

#include "crwb/report.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#ifndef CRWB_DEFAULT_CATALOG_DIR
#define CRWB_DEFAULT_CATALOG_DIR "data"
#endif

namespace crwb {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::map<std::string, Rational> parse_assignments(const std::vector<std::string>& toks,
                                                  size_t from) {
  std::map<std::string, Rational> out;
  for (size_t k = from; k < toks.size(); ++k) {
    size_t eq = toks[k].find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("expected name=value, got: " + toks[k]);
    out[toks[k].substr(0, eq)] = parse_rational(toks[k].substr(eq + 1));
  }
  return out;
}

int real_coord_index(const std::string& name) {
  static const char* names[6] = {"x1", "y1", "x2", "y2", "x3", "y3"};
  for (int k = 0; k < 6; ++k)
    if (name == names[k]) return k;
  throw std::invalid_argument("unknown real coordinate: " + name);
}

// "[i,j] = rhs" with the rhs linear in basis tokens prefix1..prefix<dim>
std::vector<std::pair<int, Expr>> parse_bracket_rhs(const std::string& rhs, char prefix,
                                                    int dim) {
  Expr full = parse_expr(rhs);
  std::vector<std::pair<int, Expr>> terms;
  auto basis_zeroed = [&](const Expr& e, int keep) {
    Expr r = e;
    for (int k = 0; k < dim; ++k) {
      std::string nm = std::string(1, prefix) + std::to_string(k + 1);
      r = subst_param(r, nm, make_const(k == keep ? 1L : 0L));
    }
    return simplify(r);
  };
  std::vector<Expr> coeffs;
  for (int k = 0; k < dim; ++k) coeffs.push_back(basis_zeroed(full, k));
  // linearity guard: rhs minus the extracted combination must vanish structurally
  Expr rebuilt = make_const(0L);
  for (int k = 0; k < dim; ++k) {
    std::string nm = std::string(1, prefix) + std::to_string(k + 1);
    rebuilt = rebuilt + coeffs[size_t(k)] * make_param(nm);
  }
  if (!is_zero(full - rebuilt))
    throw std::invalid_argument("bracket right side is not linear in the basis: " + rhs);
  for (int k = 0; k < dim; ++k) {
    const Expr& c = coeffs[size_t(k)];
    if (c->kind == Kind::Const && c->value.is_zero()) continue;
    terms.emplace_back(k, c);
  }
  return terms;
}

std::pair<int, int> parse_bracket_key(const std::string& key) {
  // "[i,j]"
  size_t comma = key.find(',');
  if (key.empty() || key.front() != '[' || key.back() != ']' || comma == std::string::npos)
    throw std::invalid_argument("malformed bracket key: " + key);
  int i = std::stoi(key.substr(1, comma - 1));
  int j = std::stoi(key.substr(comma + 1, key.size() - comma - 2));
  return {i - 1, j - 1};
}

struct Record {
  std::string kind, name;
  std::vector<std::string> lines;
};

std::vector<Record> read_records(const std::string& path, const std::string& kind) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open catalog file: " + path);
  std::vector<Record> records;
  Record cur;
  bool open = false;
  std::string raw;
  int lineno = 0;
  while (std::getline(f, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto toks = split_ws(line);
    if (toks[0] == kind) {
      if (open) throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": record opened before previous 'end'");
      if (toks.size() != 2) throw std::runtime_error(path + ": record header needs a name");
      cur = Record{kind, toks[1], {}};
      open = true;
    } else if (toks[0] == "end") {
      if (!open) throw std::runtime_error(path + ": stray 'end'");
      records.push_back(std::move(cur));
      open = false;
    } else {
      if (!open) throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                          ": content outside a record");
      cur.lines.push_back(line);
    }
  }
  if (open) throw std::runtime_error(path + ": missing final 'end'");
  return records;
}

std::string value_after(const std::string& line) {
  size_t eq = line.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("expected '=' in: " + line);
  return trim(line.substr(eq + 1));
}

VectorField parse_field_rhs(const std::string& rhs) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : rhs) {
    if (c == '|') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3)
    throw std::invalid_argument("field needs three |-separated components: " + rhs);
  return VectorField(parse_expr(parts[0]), parse_expr(parts[1]), parse_expr(parts[2]));
}

LieAlgebra parse_algebra(const Record& rec) {
  LieAlgebra g(rec.name, 5);
  bool have_sample = false;
  for (const auto& line : rec.lines) {
    auto toks = split_ws(line);
    if (toks[0] == "param") {
      for (size_t k = 1; k < toks.size(); ++k) g.params.insert(toks[k]);
    } else if (toks[0] == "constraint") {
      g.constraints += (g.constraints.empty() ? "" : "; ") + trim(line.substr(10));
    } else if (toks[0] == "sample") {
      auto vals = parse_assignments(toks, 1);
      if (!have_sample) {
        g.sample = std::move(vals);
        have_sample = true;
      } else {
        g.extra_samples.push_back(std::move(vals));
      }
    } else if (toks[0] == "claimed_ideal") {
      std::vector<int> triple;
      for (size_t k = 1; k < toks.size(); ++k) triple.push_back(std::stoi(toks[k]));
      g.claimed_ideals.push_back(std::move(triple));
    } else if (toks[0][0] == '[') {
      auto [i, j] = parse_bracket_key(toks[0]);
      g.set_bracket(i, j, parse_bracket_rhs(value_after(line), 'e', 5));
    } else {
      throw std::invalid_argument(rec.name + ": unknown directive: " + toks[0]);
    }
  }
  return g;
}

void parse_chart_line(const std::vector<std::string>& toks, const std::string& line,
                      std::array<std::pair<double, double>, 6>& bounds, int& solve_coord,
                      std::array<double, 6>& seed_point, bool& matched) {
  matched = true;
  if (toks[0] == "bounds") {
    int c = real_coord_index(toks.at(1));
    bounds[size_t(c)] = {std::stod(toks.at(2)), std::stod(toks.at(3))};
  } else if (toks[0] == "solve") {
    solve_coord = real_coord_index(toks.at(1));
  } else if (toks[0] == "seed") {
    if (toks.size() != 7) throw std::invalid_argument("seed needs six coordinates: " + line);
    for (int k = 0; k < 6; ++k) seed_point[size_t(k)] = std::stod(toks[size_t(k + 1)]);
  } else {
    matched = false;
  }
}

HypersurfaceEntry parse_surface(const Record& rec) {
  HypersurfaceEntry entry;
  Expr rho;
  std::vector<Constraint> constraints;
  std::set<std::string> declared;
  std::array<std::pair<double, double>, 6> bounds;
  for (auto& b : bounds) b = {-1.0, 1.0};
  int solve_coord = 4;
  std::array<double, 6> seed_point{};
  for (const auto& line : rec.lines) {
    auto toks = split_ws(line);
    bool chart = false;
    parse_chart_line(toks, line, bounds, solve_coord, seed_point, chart);
    if (chart) continue;
    if (toks[0] == "rho") {
      rho = parse_expr(value_after(line));
    } else if (toks[0] == "param") {
      for (size_t k = 1; k < toks.size(); ++k) declared.insert(toks[k]);
    } else if (toks[0] == "constraint") {
      constraints.push_back(parse_constraint(trim(line.substr(10))));
    } else if (toks[0] == "grid") {
      entry.grid.push_back(parse_assignments(toks, 1));
    } else if (toks[0] == "expected") {
      entry.expected = toks.at(1);
    } else {
      throw std::invalid_argument(rec.name + ": unknown directive: " + toks[0]);
    }
  }
  if (!rho) throw std::invalid_argument(rec.name + ": missing rho");
  entry.surface = Hypersurface(rec.name, rho);
  entry.surface.constraints = std::move(constraints);
  entry.surface.bounds = bounds;
  entry.surface.solve_coord = solve_coord;
  entry.surface.seed_point = seed_point;
  for (const auto& p : declared) entry.surface.params.insert(p);
  if (entry.expected.empty()) entry.expected = "StrictlyPseudoconvex";
  if (entry.grid.empty()) entry.grid.push_back({});
  return entry;
}

Realization parse_realization(const Record& rec) {
  Realization r;
  r.name = rec.name;
  std::vector<std::pair<std::string, VectorField>> fields;
  std::vector<std::tuple<int, int, std::string>> brackets;  // deferred until dim known
  std::map<std::string, size_t> extra_index;
  std::vector<std::pair<std::string, std::string>> claims;  // (key-with-extra, rhs)
  for (const auto& line : rec.lines) {
    auto toks = split_ws(line);
    if (toks[0] == "param") {
      for (size_t k = 1; k < toks.size(); ++k) r.params.insert(toks[k]);
    } else if (toks[0] == "sample") {
      r.sample = parse_assignments(toks, 1);
    } else if (toks[0] == "constraint") {
      r.constraints.push_back(parse_constraint(trim(line.substr(10))));
    } else if (toks[0] == "field") {
      fields.emplace_back(toks.at(1), parse_field_rhs(value_after(line)));
    } else if (toks[0] == "extra") {
      ExtraField ex;
      ex.name = toks.at(1);
      ex.field = parse_field_rhs(value_after(line));
      extra_index[ex.name] = r.extras.size();
      r.extras.push_back(std::move(ex));
    } else if (toks[0] == "claim") {
      claims.emplace_back(toks.at(1), value_after(line));
    } else if (toks[0] == "spanclaim") {
      r.extras.at(extra_index.at(toks.at(1))).span_claim = true;
    } else if (toks[0] == "surfaceref") {
      r.surface_refs.push_back(toks.at(1));
    } else if (toks[0][0] == '[') {
      auto [i, j] = parse_bracket_key(toks[0]);
      brackets.emplace_back(i, j, value_after(line));
    } else {
      throw std::invalid_argument(rec.name + ": unknown directive: " + toks[0]);
    }
  }
  int dim = int(fields.size());
  r.table = LieAlgebra(rec.name, dim);
  for (auto& [nm, f] : fields) r.frame.push_back(std::move(f));
  for (auto& [i, j, rhs] : brackets)
    r.table.set_bracket(i, j, parse_bracket_rhs(rhs, 'X', dim));
  for (auto& [key, rhs] : claims) {
    // "[Y,j]" with Y an extra field name
    size_t comma = key.find(',');
    if (key.front() != '[' || key.back() != ']' || comma == std::string::npos)
      throw std::invalid_argument(rec.name + ": malformed claim key: " + key);
    std::string yname = key.substr(1, comma - 1);
    int j = std::stoi(key.substr(comma + 1, key.size() - comma - 2)) - 1;
    r.extras.at(extra_index.at(yname))
        .claims.emplace_back(j, parse_bracket_rhs(rhs, 'X', dim));
  }
  return r;
}

TubeBase parse_tube(const Record& rec) {
  TubeBase t;
  t.name = rec.name;
  for (auto& b : t.bounds) b = {-1.0, 1.0};
  bool have_sample = false;
  for (const auto& line : rec.lines) {
    auto toks = split_ws(line);
    bool chart = false;
    parse_chart_line(toks, line, t.bounds, t.solve_coord, t.seed_point, chart);
    if (chart) continue;
    if (toks[0] == "base") {
      t.base = parse_expr(value_after(line));
    } else if (toks[0] == "L1") {
      t.affine1 = parse_field_rhs(value_after(line));
    } else if (toks[0] == "L2") {
      t.affine2 = parse_field_rhs(value_after(line));
    } else if (toks[0] == "param") {
      for (size_t k = 1; k < toks.size(); ++k) t.params.insert(toks[k]);
    } else if (toks[0] == "constraint") {
      t.constraints.push_back(parse_constraint(trim(line.substr(10))));
    } else if (toks[0] == "sample") {
      auto vals = parse_assignments(toks, 1);
      if (!have_sample) {
        t.sample = vals;
        have_sample = true;
      }
      t.grid.push_back(std::move(vals));
    } else {
      throw std::invalid_argument(rec.name + ": unknown directive: " + toks[0]);
    }
  }
  if (!t.base) throw std::invalid_argument(rec.name + ": missing base");
  if (t.grid.empty()) t.grid.push_back({});
  return t;
}

std::string point_str(const Binding& b) {
  std::ostringstream os;
  os.precision(6);
  for (int j = 0; j < 3; ++j) {
    auto v = b.var(j);
    os << (j ? " " : "") << "z" << j + 1 << "=(" << v.real() << "," << v.imag() << ")";
  }
  return os.str();
}

}  // namespace

RealizationReport verify_realization(const Realization& r, int points, uint64_t seed,
                                     double tol) {
  RealizationReport rep;
  Binding params;
  for (const auto& [k, v] : r.sample) params.set_param(k, v.convert_to<double>());
  for (const auto& c : r.constraints)
    if (!c.holds(params))
      throw std::invalid_argument(r.name + ": sample violates constraint: " + c.str());
  auto pts = sample_points(params, points, seed);
  int n = int(r.frame.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      VectorField br = bracket(r.frame[size_t(i)], r.frame[size_t(j)]);
      for (const auto& p : pts) {
        Eigen::Vector3cd got = br.evaluate(p);
        Eigen::Vector3cd want = Eigen::Vector3cd::Zero();
        double scale = 1.0;
        for (int k = 0; k < n; ++k) {
          Eigen::Vector3cd xk = r.frame[size_t(k)].evaluate(p);
          scale = std::max(scale, xk.norm());
          Expr ck = r.table.c_at(i, j, k);
          if (ck->kind == Kind::Const && ck->value.is_zero()) continue;
          want += eval(ck, p) * xk;
        }
        double res = (got - want).norm() / scale;
        if (res > rep.max_residual) {
          rep.max_residual = res;
          if (res >= tol) {
            rep.ok = false;
            rep.fail_i = i;
            rep.fail_j = j;
            rep.fail_point = point_str(p);
          }
        }
      }
    }
  // extra-symmetry claims
  std::ostringstream detail;
  for (const auto& ex : r.extras) {
    for (const auto& [j, combo] : ex.claims) {
      VectorField br = bracket(ex.field, r.frame[size_t(j)]);
      for (const auto& p : pts) {
        Eigen::Vector3cd got = br.evaluate(p);
        Eigen::Vector3cd want = Eigen::Vector3cd::Zero();
        double scale = 1.0;
        for (const auto& [k, ck] : combo) {
          Eigen::Vector3cd xk = r.frame[size_t(k)].evaluate(p);
          scale = std::max(scale, xk.norm());
          want += eval(ck, p) * xk;
        }
        double res = (got - want).norm() / scale;
        rep.extras_residual = std::max(rep.extras_residual, res);
        if (res >= tol) {
          rep.ok = false;
          if (rep.extras_detail.empty())
            rep.extras_detail = ex.name + ": claim [" + ex.name + ",X" +
                                std::to_string(j + 1) + "] failed at " + point_str(p);
        }
      }
    }
    if (ex.span_claim) {
      for (size_t j = 0; j < r.frame.size(); ++j) {
        BracketFit fit =
            fit_in_span(bracket(ex.field, r.frame[j]), r.frame, params, points, seed, tol);
        rep.extras_residual = std::max(rep.extras_residual, fit.residual);
        if (!fit.in_span) {
          rep.ok = false;
          if (rep.extras_detail.empty())
            rep.extras_detail =
                ex.name + ": [" + ex.name + ",X" + std::to_string(j + 1) + "] leaves the span";
        }
      }
    }
  }
  return rep;
}

Tube make_tube(const TubeBase& base, const Binding& params, uint64_t seed, int points,
               double tol) {
  Tube t;
  t.surface = Hypersurface(base.name, base.base);
  t.surface.constraints = base.constraints;
  t.surface.bounds = base.bounds;
  t.surface.solve_coord = base.solve_coord;
  t.surface.seed_point = base.seed_point;
  for (const auto& p : base.params) t.surface.params.insert(p);

  Expr zero = make_const(0L), ic = make_const(Scalar::i());
  t.frame.push_back(VectorField(ic, zero, zero));
  t.frame.push_back(VectorField(zero, ic, zero));
  t.frame.push_back(VectorField(zero, zero, ic));
  t.frame.push_back(base.affine1);
  t.frame.push_back(base.affine2);

  auto pts = sample_surface_points(t.surface, params, points, seed);
  for (size_t k = 0; k < t.frame.size(); ++k) {
    double limit = k < 3 ? 1e-12 : tol;
    for (const auto& p : pts) {
      double res = tangency_residual(t.frame[k], t.surface, p);
      if (res > limit)
        throw std::runtime_error(base.name + ": frame field " + std::to_string(k + 1) +
                                 " is not tangent, residual " + format_metric(res));
    }
  }
  return t;
}

LieAlgebra frame_algebra(const FieldFrame& frame, const Binding& params, uint64_t seed,
                         int points, double tol) {
  // brackets of parametric fields carry the parameters symbolically; the exact
  // certificate needs them specialized to their (rational) bound values
  FieldFrame fixed;
  for (const auto& f : frame) {
    std::array<Expr, 3> comps{f.component(0), f.component(1), f.component(2)};
    for (auto& comp : comps) {
      std::set<std::string> ps;
      collect_params(comp, ps);
      for (const auto& p : ps)
        comp = subst_param(comp, p, make_rational(rationalize(params.param(p), 1000)));
    }
    fixed.push_back(VectorField(comps[0], comps[1], comps[2]));
  }
  SpanCheck sc = check_span_closure(fixed, params, points, seed, tol);
  if (!sc.closed) throw std::runtime_error("frame is not closed under brackets");
  LieAlgebra g("frame", int(frame.size()));
  for (const auto& fit : sc.fits) {
    if (!fit.certified)
      throw std::runtime_error("bracket [" + std::to_string(fit.i + 1) + "," +
                               std::to_string(fit.j + 1) + "] did not certify");
    std::vector<std::pair<int, Expr>> terms;
    for (size_t k = 0; k < fit.coeffs.size(); ++k)
      if (fit.coeffs[k] != 0) terms.emplace_back(int(k), make_rational(fit.coeffs[k]));
    g.set_bracket(fit.i, fit.j, terms);
  }
  return g;
}

std::vector<Constraint> algebra_constraints(const LieAlgebra& g) {
  std::vector<Constraint> out;
  std::string cur;
  for (char ch : g.constraints + ";") {
    if (ch == ';') {
      std::string t = trim(cur);
      if (!t.empty()) out.push_back(parse_constraint(t));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  return out;
}

std::vector<std::map<std::string, Rational>> parameter_samples(const LieAlgebra& g, int count,
                                                               uint64_t seed) {
  std::vector<std::map<std::string, Rational>> out;
  if (g.params.empty()) {
    out.assign(size_t(count), {});
    return out;
  }
  auto cons = algebra_constraints(g);
  std::set<std::string> pinned;  // parameters tied down by equality constraints
  for (const auto& c : cons)
    if (c.op == "==") {
      collect_params(c.lhs, pinned);
      collect_params(c.rhs, pinned);
    }
  std::vector<std::map<std::string, Rational>> base{g.sample};
  base.insert(base.end(), g.extra_samples.begin(), g.extra_samples.end());
  auto holds = [&](const std::map<std::string, Rational>& vals) {
    Binding b;
    for (const auto& [k, v] : vals) b.set_param(k, v.convert_to<double>());
    for (const auto& c : cons)
      if (!c.holds(b)) return false;
    return true;
  };
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-8, 8);
  std::uniform_int_distribution<int> den(1, 4);
  for (int k = 0; k < count; ++k) {
    std::map<std::string, Rational> vals = base[size_t(k) % base.size()];
    if (size_t(k) >= base.size()) {
      for (int attempt = 0; attempt < 100; ++attempt) {
        std::map<std::string, Rational> draw = vals;
        for (const auto& p : g.params)
          if (pinned.count(p) == 0) draw[p] = Rational(num(rng), den(rng));
        if (holds(draw)) {
          vals = std::move(draw);
          break;
        }
      }
    }
    out.push_back(std::move(vals));
  }
  return out;
}

Catalog Catalog::load(const std::string& dir) {
  Catalog c;
  for (const auto& rec : read_records(dir + "/algebras.cat", "algebra")) {
    LieAlgebra g = parse_algebra(rec);
    auto jr = g.check_jacobi();
    if (!jr.ok)
      throw std::runtime_error("catalog entry " + g.name + " violates the Jacobi identity at (" +
                               std::to_string(jr.i + 1) + "," + std::to_string(jr.j + 1) + "," +
                               std::to_string(jr.k + 1) + ") component " +
                               std::to_string(jr.l + 1) + ": " + to_string(jr.residual));
    c.algebras.emplace_back(g.name, std::move(g));
  }
  for (const auto& rec : read_records(dir + "/hypersurfaces.cat", "surface"))
    c.hypersurfaces.emplace_back(rec.name, parse_surface(rec));
  for (const auto& rec : read_records(dir + "/realizations.cat", "realization"))
    c.realizations.emplace_back(rec.name, parse_realization(rec));
  for (const auto& rec : read_records(dir + "/tubes.cat", "tube"))
    c.tubes.emplace_back(rec.name, parse_tube(rec));
  return c;
}

const LieAlgebra* Catalog::algebra(const std::string& name) const {
  for (const auto& [n, v] : algebras)
    if (n == name) return &v;
  return nullptr;
}
const HypersurfaceEntry* Catalog::hypersurface(const std::string& name) const {
  for (const auto& [n, v] : hypersurfaces)
    if (n == name) return &v;
  return nullptr;
}
const Realization* Catalog::realization(const std::string& name) const {
  for (const auto& [n, v] : realizations)
    if (n == name) return &v;
  return nullptr;
}
const TubeBase* Catalog::tube(const std::string& name) const {
  for (const auto& [n, v] : tubes)
    if (n == name) return &v;
  return nullptr;
}

std::vector<std::string> Catalog::list(const std::string& kind) const {
  std::vector<std::string> out;
  if (kind == "algebras")
    for (const auto& [n, v] : algebras) out.push_back(n);
  else if (kind == "hypersurfaces")
    for (const auto& [n, v] : hypersurfaces) out.push_back(n);
  else if (kind == "realizations")
    for (const auto& [n, v] : realizations) out.push_back(n);
  else if (kind == "tubes")
    for (const auto& [n, v] : tubes) out.push_back(n);
  else
    throw std::invalid_argument("unknown catalog kind: " + kind);
  return out;
}

std::string default_catalog_dir() {
  if (const char* env = std::getenv("CRWB_CATALOG_DIR")) return env;
  return CRWB_DEFAULT_CATALOG_DIR;
}

}  // namespace crwb
