#include <doctest.h>

#include <crwb/catalog.hpp>

using namespace crwb;

namespace {

const Catalog& catalog() {
  static Catalog c = Catalog::load(default_catalog_dir());
  return c;
}

Binding sample_binding(const std::map<std::string, Rational>& sample) {
  Binding b;
  for (const auto& [k, v] : sample) b.set_param(k, v.convert_to<double>());
  return b;
}

}  // namespace

TEST_CASE("catalog loads the full bundled corpus") {
  CHECK(catalog().algebras.size() == 67);
  CHECK(catalog().hypersurfaces.size() == 22);
  CHECK(catalog().realizations.size() == 8);
  CHECK(catalog().tubes.size() == 6);
  CHECK(catalog().list("algebras").size() == 67);
  CHECK(catalog().algebra("nope") == nullptr);
}

TEST_CASE("frames reproduce their commutation tables at sampled points") {
  const Realization* g25 = catalog().realization("g25");
  REQUIRE(g25);
  RealizationReport rep = verify_realization(*g25, 50, 42, 1e-8);
  CHECK(rep.ok);
  CHECK(rep.max_residual < 1e-8);

  const Realization* g26 = catalog().realization("g26");
  REQUIRE(g26);
  CHECK(verify_realization(*g26, 50, 42, 1e-8).ok);
}

TEST_CASE("a corrupted frame field is caught and the offending pair is named") {
  Realization bad = *catalog().realization("m16");
  VectorField x5 = bad.frame[4];
  Expr two = make_const(2L);
  bad.frame[4] = VectorField(two * x5.component(0), two * x5.component(1),
                             two * x5.component(2));
  RealizationReport rep = verify_realization(bad, 20, 42, 1e-8);
  CHECK_FALSE(rep.ok);
  // [X1,X5], [X2,X5], [X3,X5] vanish identically, so the doubled table entry
  // [X4,X5] = X4 is the first pair to break
  CHECK(rep.fail_i == 3);
  CHECK(rep.fail_j == 4);
  CHECK_FALSE(rep.fail_point.empty());
}

TEST_CASE("the rotation symmetry claim of the doubled field frame") {
  const Realization* m16 = catalog().realization("m16-alt");
  REQUIRE(m16);
  Binding params = sample_binding(m16->sample);
  REQUIRE(m16->extras.size() == 1);
  const VectorField& w = m16->extras[0].field;
  // [W, X5] = -W closes only over the extended frame {X1..X5, W}
  FieldFrame extended = m16->frame;
  extended.push_back(w);
  BracketFit fit = fit_in_span(bracket(w, m16->frame[4]), extended, params, 20, 42, 1e-8);
  CHECK(fit.certified);
  REQUIRE(fit.coeffs.size() == 6);
  for (int k = 0; k < 5; ++k) CHECK(fit.coeffs[size_t(k)] == 0);
  CHECK(fit.coeffs[5] == -1);
}

TEST_CASE("tube construction yields a tangent frame of full real rank") {
  const TubeBase* base = catalog().tube("item12");
  REQUIRE(base);
  Binding params = sample_binding(base->sample);
  Tube tube = make_tube(*base, params, 42, 20, 1e-8);
  REQUIRE(tube.frame.size() == 5);
  for (const auto& p : sample_surface_points(tube.surface, params, 5, 42)) {
    CHECK(std::abs(tube.surface.value(p)) < 1e-10);
    CHECK(real_rank_at(tube.frame, p) == 5);
    for (const auto& x : tube.frame) CHECK(tangency_residual(x, tube.surface, p) < 1e-8);
  }
}

TEST_CASE("tube frames close under brackets with exact structure constants") {
  for (const auto& name : {"item12", "item17"}) {
    const TubeBase* base = catalog().tube(name);
    REQUIRE(base);
    Binding params = sample_binding(base->sample);
    Tube tube = make_tube(*base, params, 42, 20, 1e-8);
    LieAlgebra table = frame_algebra(tube.frame, params, 42, 20, 1e-8);
    CHECK(table.check_jacobi().ok);
    RationalAlgebra ra = table.instantiate({});
    // the three imaginary shifts commute with each other
    RatVec zero(5, Rational(0));
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        RatVec ei(5, Rational(0)), ej(5, Rational(0));
        ei[size_t(i)] = 1;
        ej[size_t(j)] = 1;
        CHECK(ra.bracket(ei, ej) == zero);
      }
  }
}

TEST_CASE("tube sampling rejects bindings that violate the bundled constraints") {
  const TubeBase* base = catalog().tube("item13");
  REQUIRE(base);
  CHECK_FALSE(base->grid.empty());
  for (const auto& row : base->grid) {
    Binding b = sample_binding(row);
    for (const auto& c : base->constraints) CHECK(c.holds(b));
  }
}

TEST_CASE("realizations point at on-catalog surfaces and stay tangent") {
  const Realization* g5 = catalog().realization("g5-normal-form");
  REQUIRE(g5);
  REQUIRE_FALSE(g5->surface_refs.empty());
  for (const auto& ref : g5->surface_refs) {
    const HypersurfaceEntry* e = catalog().hypersurface(ref);
    REQUIRE(e);
    REQUIRE_FALSE(e->grid.empty());
    Binding params;
    for (const auto& [k, v] : e->grid.front()) params.set_param(k, v.convert_to<double>());
    for (const auto& p : sample_surface_points(e->surface, params, 10, 42))
      for (const auto& x : g5->frame) CHECK(tangency_residual(x, e->surface, p) < 1e-8);
  }
}
