#include "crwb/field.hpp"

#include <sstream>

namespace crwb {

VectorField::VectorField() : f_{make_const(0L), make_const(0L), make_const(0L)} {}

VectorField::VectorField(Expr f1, Expr f2, Expr f3) {
  f_ = {simplify(std::move(f1)), simplify(std::move(f2)), simplify(std::move(f3))};
  for (const auto& c : f_)
    if (!is_holomorphic(c))
      throw std::invalid_argument("vector field component is not holomorphic: " + to_string(c));
}

bool VectorField::is_zero() const {
  for (const auto& c : f_)
    if (!(c->kind == Kind::Const && c->value.is_zero())) return false;
  return true;
}

VectorField VectorField::operator+(const VectorField& o) const {
  return {f_[0] + o.f_[0], f_[1] + o.f_[1], f_[2] + o.f_[2]};
}

VectorField VectorField::operator-(const VectorField& o) const {
  return {f_[0] - o.f_[0], f_[1] - o.f_[1], f_[2] - o.f_[2]};
}

VectorField VectorField::scaled(const Expr& c) const {
  return {c * f_[0], c * f_[1], c * f_[2]};
}

VectorField VectorField::scaled(const Scalar& c) const { return scaled(make_const(c)); }

Eigen::Vector3cd VectorField::evaluate(const Binding& b) const {
  Eigen::Vector3cd v;
  for (int j = 0; j < 3; ++j) v(j) = eval(f_[size_t(j)], b);
  return v;
}

std::string VectorField::str() const {
  std::ostringstream os;
  os << "(" << to_string(f_[0]) << ", " << to_string(f_[1]) << ", " << to_string(f_[2]) << ")";
  return os.str();
}

VectorField bracket(const VectorField& x, const VectorField& y) {
  std::array<Expr, 3> out;
  for (int j = 0; j < 3; ++j) {
    std::vector<Expr> terms;
    for (int k = 0; k < 3; ++k) {
      terms.push_back(x.component(k) * wirtinger(y.component(j), k));
      terms.push_back(make_neg(y.component(k) * wirtinger(x.component(j), k)));
    }
    out[size_t(j)] = make_add(std::move(terms));
  }
  return {out[0], out[1], out[2]};
}

Eigen::MatrixXcd evaluate_frame(const FieldFrame& frame, const Binding& b) {
  Eigen::MatrixXcd m(3, frame.size());
  for (size_t k = 0; k < frame.size(); ++k) m.col(Eigen::Index(k)) = frame[k].evaluate(b);
  return m;
}

namespace {

Eigen::MatrixXd realify(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXd r(2 * m.rows(), m.cols());
  r.topRows(m.rows()) = m.real();
  r.bottomRows(m.rows()) = m.imag();
  return r;
}

int svd_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  double top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  if (top == 0.0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) > tol * top) ++r;
  return r;
}

}  // namespace

int real_rank_at(const FieldFrame& frame, const Binding& b, double tol) {
  return svd_rank(realify(evaluate_frame(frame, b)), tol);
}

int complex_rank_at(const FieldFrame& frame, const Binding& b, double tol) {
  Eigen::MatrixXcd m = evaluate_frame(frame, b);
  Eigen::MatrixXd r(2 * m.rows(), 2 * m.cols());
  r.topLeftCorner(m.rows(), m.cols()) = m.real();
  r.topRightCorner(m.rows(), m.cols()) = -m.imag();
  r.bottomLeftCorner(m.rows(), m.cols()) = m.imag();
  r.bottomRightCorner(m.rows(), m.cols()) = m.real();
  return svd_rank(r, tol) / 2;
}

std::vector<Binding> sample_points(const Binding& params, int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.15, 0.9);
  std::uniform_real_distribution<double> sgn(0.0, 1.0);
  std::vector<Binding> out;
  out.reserve(size_t(count));
  for (int k = 0; k < count; ++k) {
    Binding b = params;
    for (int v = 0; v < 3; ++v) {
      double re = u(rng) * (sgn(rng) < 0.5 ? -1.0 : 1.0);
      double im = u(rng) * (sgn(rng) < 0.5 ? -1.0 : 1.0);
      b.set_var(v, {re, im});
    }
    out.push_back(std::move(b));
  }
  return out;
}

namespace {

// Least squares fit of real coefficients c with target = sum c_k frame_k at the
// given points, then exact verification of the rationalized coefficients.
BracketFit fit_at_points(const VectorField& target, const FieldFrame& frame,
                         const std::vector<Binding>& pts, double tol) {
  BracketFit fit;
  const Eigen::Index n = Eigen::Index(frame.size());
  Eigen::MatrixXd a(6 * Eigen::Index(pts.size()), n);
  Eigen::VectorXd rhs(6 * Eigen::Index(pts.size()));
  double scale = 0.0;
  for (size_t p = 0; p < pts.size(); ++p) {
    Eigen::MatrixXcd cols = evaluate_frame(frame, pts[p]);
    Eigen::Vector3cd t = target.evaluate(pts[p]);
    Eigen::Index r0 = 6 * Eigen::Index(p);
    a.block(r0, 0, 3, n) = cols.real();
    a.block(r0 + 3, 0, 3, n) = cols.imag();
    rhs.segment(r0, 3) = t.real();
    rhs.segment(r0 + 3, 3) = t.imag();
    scale = std::max({scale, cols.cwiseAbs().maxCoeff(), t.cwiseAbs().maxCoeff()});
  }
  Eigen::VectorXd c = a.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  fit.residual = (a * c - rhs).cwiseAbs().maxCoeff() / std::max(1.0, scale);
  fit.in_span = fit.residual < tol;

  VectorField combo;
  std::vector<Rational> coeffs(frame.size());
  for (size_t k = 0; k < frame.size(); ++k) {
    coeffs[k] = rationalize(c(Eigen::Index(k)), 1000);
    combo = combo + frame[k].scaled(Scalar(coeffs[k]));
  }
  VectorField diff = target - combo;
  fit.certified = diff.is_zero();
  if (fit.certified) fit.coeffs = std::move(coeffs);
  return fit;
}

}  // namespace

BracketFit fit_in_span(const VectorField& target, const FieldFrame& frame,
                       const Binding& params, int points, uint64_t seed, double tol) {
  return fit_at_points(target, frame, sample_points(params, points, seed), tol);
}

SpanCheck check_span_closure(const FieldFrame& frame, const Binding& params, int points,
                             uint64_t seed, double tol) {
  SpanCheck out;
  std::vector<Binding> pts = sample_points(params, points, seed);
  for (size_t i = 0; i < frame.size(); ++i)
    for (size_t j = i + 1; j < frame.size(); ++j) {
      BracketFit fit = fit_at_points(bracket(frame[i], frame[j]), frame, pts, tol);
      fit.i = int(i);
      fit.j = int(j);
      out.closed = out.closed && fit.in_span;
      out.certified = out.certified && fit.certified;
      out.fits.push_back(std::move(fit));
    }
  return out;
}

}  // namespace crwb
