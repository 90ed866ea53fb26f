#include <doctest.h>

#include <crwb/catalog.hpp>

#include "fd_oracles.hpp"

using namespace crwb;
using namespace crwb::testing;

namespace {

const Catalog& catalog() {
  static Catalog c = Catalog::load(default_catalog_dir());
  return c;
}

Binding first_binding(const HypersurfaceEntry& e) {
  Binding params;
  if (!e.grid.empty())
    for (const auto& [k, v] : e.grid.front()) params.set_param(k, v.convert_to<double>());
  return params;
}

LeviClass inertia_class(const Eigen::Matrix2cd& levi, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(levi);
  double l1 = es.eigenvalues()(1), l2 = es.eigenvalues()(0);
  double scale = std::max({1.0, std::abs(l1), std::abs(l2)});
  if (std::min(std::abs(l1), std::abs(l2)) < tol * scale) return LeviClass::Degenerate;
  return l1 * l2 > 0 ? LeviClass::StrictlyPseudoconvex : LeviClass::Indefinite;
}

}  // namespace

TEST_CASE("defining functions vanish at hand-checked points") {
  const HypersurfaceEntry* item1 = catalog().hypersurface("item1");
  REQUIRE(item1);
  Binding b;
  b.set_var(0, 1.0);
  b.set_var(1, {0.0, 1.0});
  b.set_var(2, {2.0, 0.7});
  CHECK(std::abs(item1->surface.value(b)) < 1e-15);

  const HypersurfaceEntry* e39 = catalog().hypersurface("eq3.9");
  REQUIRE(e39);
  Binding p;
  p.set_param("alpha", 1.0);
  p.set_var(0, {0.0, 1.0});   // y1 = 1
  p.set_var(1, 0.0);          // y2 = 0
  p.set_var(2, {0.0, 1.0});   // y3 = 1
  CHECK(std::abs(e39->surface.value(p)) < 1e-15);
}

TEST_CASE("sampled points land on the surface") {
  for (const auto& [name, e] : catalog().hypersurfaces) {
    Binding params = first_binding(e);
    auto pts = sample_surface_points(e.surface, params, 10, 42);
    for (const auto& p : pts) CHECK(std::abs(e.surface.value(p)) < 1e-10);
  }
}

TEST_CASE("sphere sampling respects the implicit seed branch") {
  const HypersurfaceEntry* sphere = catalog().hypersurface("item9.pp");
  REQUIRE(sphere);
  Binding none;
  for (const auto& p : sample_surface_points(sphere->surface, none, 10, 7)) {
    double x1 = p.var(0).real(), x2 = p.var(1).real(), x3 = p.var(2).real();
    CHECK(x1 * x1 + x2 * x2 + x3 * x3 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(x3 > 0.0);  // Newton stays on the seeded hemisphere
  }
}

TEST_CASE("complex tangent basis annihilates the gradient") {
  for (const auto& name : {"item1", "item9.pp", "item12", "eq3.9"}) {
    const HypersurfaceEntry* e = catalog().hypersurface(name);
    REQUIRE(e);
    Binding params = first_binding(*e);
    for (const auto& p : sample_surface_points(e->surface, params, 10, 42)) {
      Eigen::Vector3cd g = e->surface.gradient(p);
      auto w = complex_tangent_basis(e->surface, p);
      CHECK(std::abs((w.col(0).transpose() * g)(0)) < 1e-10);
      CHECK(std::abs((w.col(1).transpose() * g)(0)) < 1e-10);
      CHECK(std::abs(w.col(0).dot(w.col(1))) < 1e-12);
      CHECK(w.col(0).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("levi form at the origin of the hyperquadric chart") {
  const HypersurfaceEntry* item1 = catalog().hypersurface("item1");
  Binding b;
  for (int j = 0; j < 3; ++j) b.set_var(j, 0.0);
  LeviReport lr = levi_form(item1->surface, b);
  CHECK(lr.cls == LeviClass::StrictlyPseudoconvex);
  CHECK(lr.lambda1 < 0.0);  // rho = x3 - |z1|^2 - |z2|^2 gives a negative-definite form
  CHECK(lr.lambda2 < 0.0);
  CHECK((lr.levi - lr.levi.adjoint()).norm() < 1e-12);
}

TEST_CASE("levi classes at hand-checked points") {
  const HypersurfaceEntry* e39 = catalog().hypersurface("eq3.9");
  Binding p;
  p.set_param("alpha", 1.0);
  p.set_var(0, {0.0, 1.0});
  p.set_var(1, {0.2, 0.0});
  p.set_var(2, {0.2 , 1.0});  // y3 - x2*y1 = 0.8, adjust y1: use exact on-surface draw instead
  auto pts = sample_surface_points(e39->surface, p, 5, 11);
  for (const auto& q : pts) CHECK(levi_form(e39->surface, q).cls == LeviClass::Indefinite);

  const HypersurfaceEntry* item5 = catalog().hypersurface("item5");
  REQUIRE(item5);
  Binding s;
  s.set_param("s", 1.0);
  for (int j = 0; j < 3; ++j) s.set_var(j, 0.0);
  CHECK(levi_form(item5->surface, s).cls == LeviClass::StrictlyPseudoconvex);
}

TEST_CASE("tangency residual separates tangent and transverse shifts") {
  const HypersurfaceEntry* item1 = catalog().hypersurface("item1");
  // rho = x3 - |z1|^2 - |z2|^2: i d/dz3 shifts y3 (tangent), d/dz3 shifts x3
  VectorField shift3(make_const(0L), make_const(0L), make_const(Scalar::i()));
  VectorField trans(make_const(0L), make_const(0L), make_const(1L));
  Binding none;
  for (const auto& p : sample_surface_points(item1->surface, none, 10, 3)) {
    CHECK(tangency_residual(shift3, item1->surface, p) < 1e-14);
    CHECK(tangency_residual(trans, item1->surface, p) > 0.1);
  }
}

TEST_CASE("tangency residual requires an on-surface point") {
  const HypersurfaceEntry* item1 = catalog().hypersurface("item1");
  VectorField shift3(make_const(0L), make_const(0L), make_const(Scalar::i()));
  Binding off;
  off.set_var(0, 0.0);
  off.set_var(1, 0.0);
  off.set_var(2, 1.0);  // rho = 1
  CHECK_THROWS(tangency_residual(shift3, item1->surface, off));
}

TEST_CASE("classify_family censuses and rejects forbidden bindings") {
  const HypersurfaceEntry* item2 = catalog().hypersurface("item2");
  REQUIRE(item2);
  auto census = classify_family(item2->surface, item2->grid, 20, 42);
  CHECK(census.size() == 3);
  for (const auto& fc : census) {
    CHECK(fc.sample_failures == 0);
    CHECK(fc.counts.at(LeviClass::StrictlyPseudoconvex) == 20);
  }

  const HypersurfaceEntry* item3 = catalog().hypersurface("item3");
  REQUIRE(item3);
  std::vector<std::map<std::string, Rational>> forbidden{{{"b", Rational(1)}}};
  CHECK_THROWS_AS(classify_family(item3->surface, forbidden, 5, 42), std::invalid_argument);
}

TEST_CASE("levi matrix matches the finite-difference complex Hessian oracle") {
  for (const auto& [name, e] : catalog().hypersurfaces) {
    Binding params = first_binding(e);
    for (const auto& p : sample_surface_points(e.surface, params, 5, 42)) {
      LeviReport lr = levi_form(e.surface, p);
      Eigen::Matrix3cd h = fd_complex_hessian(e.surface.rho, p, 1e-4);
      auto w = complex_tangent_basis(e.surface, p);
      // L_ac = sum_jk rho_{z_j cz_k} w_j^a conj(w_k^c)
      Eigen::Matrix2cd fd = w.transpose() * h * w.conjugate();
      double scale = std::max(1.0, lr.levi.cwiseAbs().maxCoeff());
      CHECK((fd - lr.levi).cwiseAbs().maxCoeff() <= 1e-5 * scale);
    }
  }
}

TEST_CASE("classification is invariant under scaling and positive factors") {
  for (const auto& name : {"item1", "item6", "item13", "eq3.9"}) {
    const HypersurfaceEntry* e = catalog().hypersurface(name);
    REQUIRE(e);
    Binding params = first_binding(*e);
    Expr z1 = make_var(0), cz1 = make_var(3);
    std::vector<Expr> variants = {
        make_rational(Rational(2)) * e->surface.rho,
        make_rational(Rational(-1)) * e->surface.rho,
        make_rational(Rational(1, 3)) * e->surface.rho,
        (make_const(1L) + z1 * cz1) * e->surface.rho,
    };
    for (const auto& p : sample_surface_points(e->surface, params, 10, 42)) {
      LeviClass base = levi_form(e->surface, p).cls;
      for (const auto& v : variants) {
        Hypersurface scaled(e->surface.name + "-scaled", v);
        scaled.params = e->surface.params;
        CHECK(levi_form(scaled, p).cls == base);
      }
    }
  }
}

TEST_CASE("classification is invariant under unitary tangent-basis rotation") {
  const HypersurfaceEntry* e = catalog().hypersurface("item12");
  REQUIRE(e);
  Binding params = first_binding(*e);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(0.0, 6.28);
  for (const auto& p : sample_surface_points(e->surface, params, 10, 42)) {
    LeviReport lr = levi_form(e->surface, p);
    double t = ang(rng), ph = ang(rng);
    Eigen::Matrix2cd u;
    std::complex<double> i(0, 1);
    u << std::cos(t), -std::sin(t) * std::exp(i * ph),
         std::sin(t) * std::exp(-i * ph), std::cos(t);
    Eigen::Matrix2cd rotated = u.adjoint() * lr.levi * u;
    CHECK(inertia_class(rotated, 1e-6) == lr.cls);
  }
}
