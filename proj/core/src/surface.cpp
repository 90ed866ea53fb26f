#include "crwb/surface.hpp"

#include <sstream>

namespace crwb {

namespace {
constexpr double kOnSurfaceTol = 1e-10;
}

bool Constraint::holds(const Binding& b) const {
  double l = eval(lhs, b).real();
  double r = eval(rhs, b).real();
  if (op == ">") return l > r;
  if (op == "<") return l < r;
  if (op == ">=") return l >= r;
  if (op == "<=") return l <= r;
  if (op == "!=") return std::abs(l - r) >= 1e-12;
  if (op == "==") return std::abs(l - r) < 1e-12;
  throw std::invalid_argument("unknown comparison: " + op);
}

std::string Constraint::str() const {
  return to_string(lhs) + " " + op + " " + to_string(rhs);
}

Constraint parse_constraint(const std::string& text) {
  for (const char* op : {">=", "<=", "!=", "==", ">", "<"}) {
    size_t pos = text.find(op);
    if (pos == std::string::npos) continue;
    Constraint c;
    c.lhs = parse_expr(text.substr(0, pos));
    c.op = op;
    c.rhs = parse_expr(text.substr(pos + std::string(op).size()));
    return c;
  }
  throw std::invalid_argument("constraint without comparison: " + text);
}

const char* levi_class_name(LeviClass c) {
  switch (c) {
    case LeviClass::StrictlyPseudoconvex: return "StrictlyPseudoconvex";
    case LeviClass::Indefinite: return "Indefinite";
    case LeviClass::Degenerate: return "Degenerate";
  }
  return "?";
}

Hypersurface::Hypersurface() : rho(make_const(0L)) {
  for (auto& b : bounds) b = {-1.0, 1.0};
}

Hypersurface::Hypersurface(std::string nm, Expr defining)
    : name(std::move(nm)), rho(simplify(std::move(defining))) {
  if (!structurally_real(rho))
    throw std::invalid_argument(name + ": defining function is not structurally real");
  collect_params(rho, params);
  for (auto& b : bounds) b = {-1.0, 1.0};
}

void Hypersurface::validate_params(const Binding& b) const {
  for (const auto& p : params) b.param(p);  // throws when unbound
  for (const auto& c : constraints)
    if (!c.holds(b))
      throw std::invalid_argument(name + ": parameter constraint violated: " + c.str());
}

void Hypersurface::ensure_grad() const {
  if (grad_ready_) return;
  for (int j = 0; j < 3; ++j) grad_[size_t(j)] = wirtinger(rho, j);
  grad_ready_ = true;
}

void Hypersurface::ensure_hess() const {
  if (hess_ready_) return;
  ensure_grad();
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      hess_[size_t(3 * j + k)] = wirtinger(grad_[size_t(j)], k + 3);
  hess_ready_ = true;
}

double Hypersurface::value(const Binding& b) const { return eval(rho, b).real(); }

Eigen::Vector3cd Hypersurface::gradient(const Binding& b) const {
  ensure_grad();
  Eigen::Vector3cd g;
  for (int j = 0; j < 3; ++j) g(j) = eval(grad_[size_t(j)], b);
  return g;
}

Binding Hypersurface::bind_real_point(const std::array<double, 6>& coords,
                                      const Binding& params) {
  Binding b = params;
  for (int j = 0; j < 3; ++j) b.set_var(j, {coords[size_t(2 * j)], coords[size_t(2 * j + 1)]});
  return b;
}

Binding sample_point(const Hypersurface& m, const Binding& params, uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int redraws = 25, newton_iters = 50;
  std::string last_error = "no attempt";
  for (int attempt = 0; attempt < redraws; ++attempt) {
    std::array<double, 6> coords{};
    for (int c = 0; c < 6; ++c) {
      std::uniform_real_distribution<double> u(m.bounds[size_t(c)].first,
                                               m.bounds[size_t(c)].second);
      coords[size_t(c)] = u(rng);
    }
    int sc = m.solve_coord;
    coords[size_t(sc)] = m.seed_point[size_t(sc)];
    bool is_x = sc % 2 == 0;
    int zj = sc / 2;
    try {
      for (int it = 0; it < newton_iters; ++it) {
        Binding b = Hypersurface::bind_real_point(coords, params);
        double f = m.value(b);
        if (std::abs(f) < kOnSurfaceTol) return b;
        Eigen::Vector3cd g = m.gradient(b);
        double df = is_x ? 2.0 * g(zj).real() : -2.0 * g(zj).imag();
        if (std::abs(df) < 1e-14) break;
        double step = f / df;
        // damped update, keeps the iterate inside the evaluable domain
        for (int halve = 0; halve < 20; ++halve) {
          double trial = coords[size_t(sc)] - step;
          try {
            std::array<double, 6> tc = coords;
            tc[size_t(sc)] = trial;
            Binding tb = Hypersurface::bind_real_point(tc, params);
            double tf = m.value(tb);
            if (std::abs(tf) < std::abs(f) || std::abs(tf) < kOnSurfaceTol) {
              coords[size_t(sc)] = trial;
              break;
            }
          } catch (const DomainError&) {
          }
          step *= 0.5;
          if (halve == 19) coords[size_t(sc)] = trial;
        }
      }
      Binding b = Hypersurface::bind_real_point(coords, params);
      double f = m.value(b);
      if (std::abs(f) < kOnSurfaceTol) return b;
      std::ostringstream os;
      os << "Newton stalled at residual " << f;
      last_error = os.str();
    } catch (const DomainError& e) {
      last_error = std::string("domain error: ") + e.what();
    }
  }
  throw SampleError(m.name + ": sampling failed after " + std::to_string(redraws) +
                    " attempts (" + last_error + ")");
}

std::vector<Binding> sample_surface_points(const Hypersurface& m, const Binding& params,
                                           int count, uint64_t seed) {
  std::vector<Binding> out;
  out.reserve(size_t(count));
  // independent per-point streams so point k is stable under reordering
  for (int k = 0; k < count; ++k)
    out.push_back(sample_point(m, params, seed * 1000003ULL + uint64_t(k)));
  return out;
}

Eigen::Matrix<std::complex<double>, 3, 2> complex_tangent_basis(const Hypersurface& m,
                                                                const Binding& b) {
  Eigen::Vector3cd g = m.gradient(b);
  if (g.norm() < 1e-12)
    throw std::domain_error(m.name + ": vanishing gradient at the sampled point");
  Eigen::Vector3cd v = g.conjugate();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(v);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::Matrix<std::complex<double>, 3, 2> w;
  w.col(0) = q.col(1);
  w.col(1) = q.col(2);
  return w;
}

LeviReport levi_form(const Hypersurface& m, const Binding& b, double degeneracy_tol) {
  LeviReport rep;
  for (int j = 0; j < 3; ++j) rep.point[size_t(j)] = b.var(j);
  Eigen::Vector3cd g = m.gradient(b);
  if (g.norm() < 1e-12)
    throw std::domain_error(m.name + ": vanishing gradient at the sampled point");
  rep.unit_gradient = g / g.norm();
  m.ensure_hess();
  Eigen::Matrix3cd h;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) h(j, k) = eval(m.hess_[size_t(3 * j + k)], b);
  Eigen::Matrix<std::complex<double>, 3, 2> w = complex_tangent_basis(m, b);
  Eigen::Matrix2cd levi;
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) {
      std::complex<double> s = 0;
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) s += h(j, k) * w(j, a) * std::conj(w(k, c));
      levi(a, c) = s;
    }
  rep.levi = levi;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es((levi + levi.adjoint()) / 2.0);
  rep.lambda2 = es.eigenvalues()(0);
  rep.lambda1 = es.eigenvalues()(1);
  rep.tol = degeneracy_tol;
  double scale = std::max({1.0, std::abs(rep.lambda1), std::abs(rep.lambda2)});
  if (std::min(std::abs(rep.lambda1), std::abs(rep.lambda2)) < degeneracy_tol * scale)
    rep.cls = LeviClass::Degenerate;
  else if (rep.lambda1 * rep.lambda2 > 0)
    rep.cls = LeviClass::StrictlyPseudoconvex;
  else
    rep.cls = LeviClass::Indefinite;
  return rep;
}

double tangency_residual(const VectorField& x, const Hypersurface& m, const Binding& b) {
  double f = m.value(b);
  if (std::abs(f) >= kOnSurfaceTol)
    throw std::invalid_argument(m.name + ": point is off the surface, rho = " +
                                std::to_string(f));
  Eigen::Vector3cd g = m.gradient(b);
  Eigen::Vector3cd xv = x.evaluate(b);
  std::complex<double> pairing = 0;
  for (int j = 0; j < 3; ++j) pairing += xv(j) * g(j);
  double num = std::abs(2.0 * pairing.real());
  return num / (g.norm() * std::max(1.0, xv.norm()));
}

std::vector<FamilyCensus> classify_family(
    const Hypersurface& m, const std::vector<std::map<std::string, Rational>>& grid,
    int points, uint64_t seed, double degeneracy_tol) {
  std::vector<FamilyCensus> out;
  uint64_t binding_idx = 0;
  for (const auto& values : grid) {
    Binding params;
    for (const auto& [k, v] : values) params.set_param(k, v.convert_to<double>());
    m.validate_params(params);
    FamilyCensus census;
    census.binding = values;
    for (int k = 0; k < points; ++k) {
      try {
        Binding b = sample_point(m, params, (seed + binding_idx) * 1000003ULL + uint64_t(k));
        census.counts[levi_form(m, b, degeneracy_tol).cls]++;
      } catch (const SampleError&) {
        census.sample_failures++;
      }
    }
    out.push_back(std::move(census));
    ++binding_idx;
  }
  return out;
}

}  // namespace crwb
