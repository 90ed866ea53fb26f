#include <doctest.h>

#include <crwb/catalog.hpp>
#include <crwb/fingerprint.hpp>
#include <crwb/ideals.hpp>

#include <random>

using namespace crwb;

namespace {

const Catalog& catalog() {
  static Catalog c = Catalog::load(default_catalog_dir());
  return c;
}

RatVec unit(int k) {
  RatVec e(5, Rational(0));
  e[size_t(k)] = 1;
  return e;
}

std::vector<RatVec> triple(int a, int b, int c) { return {unit(a - 1), unit(b - 1), unit(c - 1)}; }

}  // namespace

TEST_CASE("catalog counts and marquee tables") {
  CHECK(catalog().algebras.size() == 67);

  const LieAlgebra* m9 = catalog().algebra("m9");
  REQUIRE(m9);
  auto ra = m9->instantiate();
  CHECK(ra.bracket(unit(0), unit(1)) == unit(0));             // [e1,e2] = e1
  CHECK(ra.bracket(unit(0), unit(2)) == RatVec{0, 2, 0, 0, 0});  // [e1,e3] = 2 e2
  CHECK(ra.bracket(unit(1), unit(2)) == unit(2));             // [e2,e3] = e3

  const LieAlgebra* g5 = catalog().algebra("g5");
  REQUIRE(g5);
  auto rg = g5->instantiate();
  CHECK(rg.bracket(unit(0), unit(1)) == RatVec{2, 0, 0, 0, 0});  // [e1,e2] = 2 e1
  CHECK(rg.bracket(unit(0), unit(3)) == unit(4));                // [e1,e4] = e5

  const LieAlgebra* m1 = catalog().algebra("m1");
  REQUIRE(m1);
  auto rm = m1->instantiate();
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(rm.bracket(unit(i), unit(j)) == RatVec(5, Rational(0)));
}

TEST_CASE("jacobi residual vanishes at bound parameters") {
  auto residual = [](const char* name, std::map<std::string, double> params) {
    const LieAlgebra* g = catalog().algebra(name);
    REQUIRE(g);
    Binding b;
    for (const auto& [k, v] : params) b.set_param(k, v);
    return g->jacobi_residual(b);
  };
  CHECK(residual("m1", {}) == 0.0);
  CHECK(residual("g5.13", {{"p", 2}, {"s", 1}, {"gamma", 3}}) == 0.0);
  CHECK(residual("m26", {{"q", 1}}) == 0.0);
}

TEST_CASE("exact jacobi check reports the violated slot") {
  LieAlgebra bad("bad", 5);
  bad.set_bracket(0, 1, {{2, make_const(1L)}});  // [e1,e2] = e3
  bad.set_bracket(0, 2, {{0, make_const(1L)}});  // [e1,e3] = e1, breaks Jacobi
  auto jr = bad.check_jacobi();
  CHECK_FALSE(jr.ok);
  CHECK(jr.i >= 0);
}

TEST_CASE("verify_abelian_ideal accepts the listed triples and rejects the exception") {
  auto g51 = catalog().algebra("g5.1")->instantiate();
  CHECK(verify_abelian_ideal(g51, triple(1, 2, 3)).ok);
  auto g519 = catalog().algebra("g5.19")->instantiate();
  CHECK(verify_abelian_ideal(g519, triple(1, 3, 4)).ok);
  auto m26 = catalog().algebra("m26")->instantiate();
  auto ic = verify_abelian_ideal(m26, triple(1, 2, 3));
  CHECK_FALSE(ic.ok);
  CHECK_FALSE(ic.reason.empty());
}

TEST_CASE("ideal search finds coordinate triples and honors the exception") {
  auto g54 = catalog().algebra("g5.4")->instantiate();
  IdealSearch s = find_abelian_ideals_3d(g54);
  CHECK(s.contains_span(triple(1, 2, 3)));

  auto m26 = catalog().algebra("m26")->instantiate({{"q", Rational(1)}});
  IdealSearch none = find_abelian_ideals_3d(m26);
  CHECK(none.ideals.empty());

  auto m1 = catalog().algebra("m1")->instantiate();
  IdealSearch cont = find_abelian_ideals_3d(m1);
  CHECK(cont.status == IdealSearch::Status::inconclusive);
  CHECK(cont.contains_span(triple(1, 2, 3)));
  CHECK_FALSE(cont.notes.empty());
}

TEST_CASE("verified coordinate triples always reappear in the search results") {
  for (const auto& name : {"g5.1", "g5.4", "g5.19", "g5.30", "g5.38"}) {
    auto ra = catalog().algebra(name)->instantiate();
    IdealSearch found = find_abelian_ideals_3d(ra);
    for (int a = 1; a <= 3; ++a)
      for (int b = a + 1; b <= 4; ++b)
        for (int c = b + 1; c <= 5; ++c) {
          if (!verify_abelian_ideal(ra, triple(a, b, c)).ok) continue;
          CHECK(found.contains_span(triple(a, b, c)));
        }
  }
}

TEST_CASE("fingerprint marquee values") {
  Fingerprint m1 = fingerprint(catalog().algebra("m1")->instantiate());
  CHECK(m1.derived == std::vector<int>{5, 0});
  CHECK(m1.center_dim == 5);
  CHECK(m1.killing.positive == 0);
  CHECK(m1.killing.negative == 0);
  CHECK(m1.killing.zero == 5);
  CHECK(m1.solvable);
  CHECK(m1.nilpotent);

  Fingerprint m9 = fingerprint(catalog().algebra("m9")->instantiate());
  REQUIRE(m9.derived.size() >= 2);
  CHECK(m9.derived[1] == 3);  // dim [g,g]
  CHECK(m9.killing.positive == 2);
  CHECK(m9.killing.negative == 1);
  CHECK(m9.killing.zero == 2);
  CHECK_FALSE(m9.solvable);

  Fingerprint g5 = fingerprint(catalog().algebra("g5")->instantiate());
  CHECK_FALSE(g5.solvable);
}

TEST_CASE("fingerprint is invariant under basis permutation") {
  std::mt19937_64 rng(42);
  for (const auto& name : {"m9", "m26", "g5.4", "g5.19", "g5"}) {
    RationalAlgebra ra = catalog().algebra(name)->instantiate();
    Fingerprint base = fingerprint(ra);
    for (int t = 0; t < 10; ++t) {
      std::array<int, 5> perm{0, 1, 2, 3, 4};
      std::shuffle(perm.begin(), perm.end(), rng);
      RationalAlgebra pg(5);
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
          for (int k = 0; k < 5; ++k)
            pg.at(perm[size_t(i)], perm[size_t(j)], perm[size_t(k)]) = ra.at(i, j, k);
      CHECK(fingerprint(pg) == base);
    }
  }
}

TEST_CASE("parameter samples satisfy the bundled constraints") {
  for (const auto& name : {"m26", "g5.13", "g5.26"}) {
    const LieAlgebra* g = catalog().algebra(name);
    REQUIRE(g);
    auto cons = algebra_constraints(*g);
    auto samples = parameter_samples(*g, 20, 42);
    CHECK(samples.size() == 20);
    for (const auto& s : samples) {
      Binding b;
      for (const auto& [k, v] : s) b.set_param(k, v.convert_to<double>());
      for (const auto& c : cons) CHECK(c.holds(b));
    }
  }
}
