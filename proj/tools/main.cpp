#include "suites.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace crwb;

namespace {

int emit(const Report& rep, const std::string& out_path) {
  if (!rep.all_pass()) {
    for (const auto& r : rep.results())
      if (r.status == CheckResult::Status::fail) {
        std::cout << "first-failure: " << r.line() << "\n";
        break;
      }
  }
  std::cout << rep.body();
  if (!out_path.empty()) rep.write_file(out_path);
  return rep.all_pass() ? 0 : 1;
}

const LieAlgebra& need_algebra(const Catalog& c, const std::string& name) {
  const LieAlgebra* g = c.algebra(name);
  if (!g) throw std::invalid_argument("unknown algebra: " + name);
  return *g;
}

const HypersurfaceEntry& need_surface(const Catalog& c, const std::string& name) {
  const HypersurfaceEntry* e = c.hypersurface(name);
  if (!e) throw std::invalid_argument("unknown hypersurface: " + name);
  return *e;
}

const Realization& need_realization(const Catalog& c, const std::string& name) {
  const Realization* r = c.realization(name);
  if (!r) throw std::invalid_argument("unknown realization: " + name);
  return *r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic-numeric verification workbench for homogeneous CR hypersurfaces"};
  app.require_subcommand(1);

  RunOptions opt;
  std::string out_path, catalog_dir;
  app.add_option("--seed", opt.seed, "RNG seed for all sampling")
      ->envname("CRWB_SEED")
      ->capture_default_str();
  app.add_option("--tol", opt.tol, "pass tolerance for residual checks")
      ->envname("CRWB_TOL")
      ->capture_default_str();
  app.add_option("--points", opt.points, "sample points per check")
      ->envname("CRWB_POINTS")
      ->capture_default_str();
  app.add_option("--out", out_path, "also write the report to a file");
  app.add_option("--catalog", catalog_dir, "catalog data directory");

  std::string algebra_name, surface_name, realization_name, list_kind;
  std::vector<std::string> param_kvs;
  int jacobi_samples = 20, ideal_samples = 5, item = -1;

  auto* check = app.add_subcommand("check", "single-entry consistency checks");
  check->require_subcommand(1);
  auto* jacobi = check->add_subcommand("jacobi", "antisymmetry and the Jacobi identity");
  jacobi->add_option("--algebra", algebra_name)->required();
  jacobi->add_option("--param", param_kvs, "parameter override name=value");
  jacobi->add_option("--samples", jacobi_samples, "constraint-satisfying parameter samples")
      ->capture_default_str();
  auto* ideals = check->add_subcommand("ideals", "3-dimensional abelian ideal search");
  ideals->add_option("--algebra", algebra_name)->required();
  ideals->add_option("--param", param_kvs, "parameter override name=value");
  ideals->add_option("--samples", ideal_samples, "parameter samples when no override is given")
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "bundled verification suites");
  verify->require_subcommand(1);
  auto* theorem2 = verify->add_subcommand("theorem2", "full classification suite");
  theorem2->add_option("--item", item, "restrict to one item (1..17)")
      ->check(CLI::Range(1, 17));

  auto* levi = app.add_subcommand("levi", "Levi classification census");
  levi->add_option("--hypersurface", surface_name)->required();
  levi->add_option("--param", param_kvs, "parameter override name=value");

  auto* tangency = app.add_subcommand("tangency", "frame tangency residuals on a surface");
  tangency->add_option("--realization", realization_name)->required();
  tangency->add_option("--surface", surface_name)->required();
  tangency->add_option("--param", param_kvs, "surface parameter name=value");

  auto* fp = app.add_subcommand("fingerprint", "isomorphism-invariant summary");
  fp->add_option("--algebra", algebra_name)->required();

  auto* catalog = app.add_subcommand("catalog", "catalog inspection");
  catalog->require_subcommand(1);
  auto* clist = catalog->add_subcommand("list", "entry names by kind");
  clist->add_option("kind", list_kind, "algebras|hypersurfaces|realizations|tubes");
  auto* cvalidate = catalog->add_subcommand("validate", "re-run the load-time invariants");

  // global flags stay valid after the subcommand name
  for (auto* sub : {check, jacobi, ideals, verify, theorem2, levi, tangency, fp, catalog,
                    clist, cvalidate})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    Catalog cat = Catalog::load(catalog_dir.empty() ? default_catalog_dir() : catalog_dir);
    auto overrides = parse_overrides(param_kvs);
    Report rep;
    if (jacobi->parsed()) {
      run_jacobi(need_algebra(cat, algebra_name), overrides, jacobi_samples, opt, rep);
    } else if (ideals->parsed()) {
      run_ideals(need_algebra(cat, algebra_name), overrides, ideal_samples, opt, rep);
    } else if (theorem2->parsed()) {
      run_theorem2(cat, item, opt, rep);
    } else if (levi->parsed()) {
      run_levi(need_surface(cat, surface_name), surface_name, overrides, opt, rep);
    } else if (tangency->parsed()) {
      run_tangency(need_realization(cat, realization_name), need_surface(cat, surface_name),
                   surface_name, overrides, opt, rep);
    } else if (fp->parsed()) {
      run_fingerprint(need_algebra(cat, algebra_name), opt, rep);
    } else if (cvalidate->parsed()) {
      run_catalog_validate(cat, opt, rep);
    } else if (clist->parsed()) {
      std::vector<std::string> kinds{"algebras", "hypersurfaces", "realizations", "tubes"};
      if (!list_kind.empty()) kinds = {list_kind};
      for (const auto& kind : kinds) {
        auto names = cat.list(kind);
        std::cout << "# " << kind << " (" << names.size() << ")\n";
        for (const auto& n : names) std::cout << n << "\n";
      }
      return 0;
    }
    return emit(rep, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cvalidate->parsed() ? 1 : 2;
  }
}
