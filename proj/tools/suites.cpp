#include "suites.hpp"

#include <crwb/fingerprint.hpp>
#include <crwb/ideals.hpp>

#include <algorithm>
#include <random>
#include <sstream>

namespace crwb {

namespace {

std::string rat_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

LeviClass expected_class(const std::string& name) {
  if (name == "Indefinite") return LeviClass::Indefinite;
  if (name == "Degenerate") return LeviClass::Degenerate;
  return LeviClass::StrictlyPseudoconvex;
}

Binding bind_params(const std::map<std::string, Rational>& vals) {
  Binding b;
  for (const auto& [k, v] : vals) b.set_param(k, v.convert_to<double>());
  return b;
}

std::vector<std::map<std::string, Rational>> effective_grid(
    const std::vector<std::map<std::string, Rational>>& grid,
    const std::set<std::string>& params, const std::map<std::string, Rational>& overrides) {
  if (!overrides.empty()) return {merge_sample(params, {}, overrides)};
  if (grid.empty()) return {{}};
  return grid;
}

std::string ideal_str(const std::vector<RatVec>& basis) {
  // coordinate spans get the compact form
  bool coords = true;
  std::vector<int> axes;
  for (const auto& v : basis) {
    int hit = -1;
    for (size_t k = 0; k < v.size(); ++k) {
      if (v[k] == 0) continue;
      if (hit >= 0 || v[k] != 1) {
        hit = -2;
        break;
      }
      hit = int(k);
    }
    if (hit < 0) {
      coords = false;
      break;
    }
    axes.push_back(hit + 1);
  }
  std::ostringstream os;
  if (coords) {
    os << "span{";
    for (size_t k = 0; k < axes.size(); ++k) os << (k ? "," : "") << "e" << axes[k];
    os << "}";
    return os.str();
  }
  os << "span{";
  for (size_t r = 0; r < basis.size(); ++r) {
    os << (r ? "," : "") << "(";
    for (size_t k = 0; k < basis[r].size(); ++k) os << (k ? "," : "") << rat_str(basis[r][k]);
    os << ")";
  }
  os << "}";
  return os.str();
}

}  // namespace

std::map<std::string, Rational> parse_overrides(const std::vector<std::string>& kvs) {
  std::map<std::string, Rational> out;
  for (const auto& kv : kvs) {
    size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("expected name=value, got: " + kv);
    out[kv.substr(0, eq)] = parse_rational(kv.substr(eq + 1));
  }
  return out;
}

std::map<std::string, Rational> merge_sample(const std::set<std::string>& params,
                                             const std::map<std::string, Rational>& sample,
                                             const std::map<std::string, Rational>& overrides) {
  std::map<std::string, Rational> out = sample;
  for (const auto& [k, v] : overrides) {
    if (params.count(k) == 0) throw std::invalid_argument("unknown parameter: " + k);
    out[k] = v;
  }
  for (const auto& p : params)
    if (out.count(p) == 0) throw std::invalid_argument("parameter " + p + " has no value");
  return out;
}

std::string binding_str(const std::map<std::string, Rational>& b) {
  if (b.empty()) return "";
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& [k, v] : b) {
    os << (first ? "" : ",") << k << "=" << rat_str(v);
    first = false;
  }
  os << "]";
  return os.str();
}

bool rational_jacobi(const RationalAlgebra& g) {
  int n = g.dim;
  std::vector<RatVec> e;
  for (int i = 0; i < n; ++i) {
    RatVec v(size_t(n), Rational(0));
    v[size_t(i)] = 1;
    e.push_back(std::move(v));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        RatVec a = g.bracket(g.bracket(e[size_t(i)], e[size_t(j)]), e[size_t(k)]);
        RatVec b = g.bracket(g.bracket(e[size_t(j)], e[size_t(k)]), e[size_t(i)]);
        RatVec c = g.bracket(g.bracket(e[size_t(k)], e[size_t(i)]), e[size_t(j)]);
        for (int l = 0; l < n; ++l)
          if (a[size_t(l)] + b[size_t(l)] + c[size_t(l)] != 0) return false;
      }
  return true;
}

bool structurally_antisymmetric(const LieAlgebra& g) {
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k < g.dim; ++k)
        if (!is_zero(make_add({g.c_at(i, j, k), g.c_at(j, i, k)}))) return false;
  return true;
}

void run_jacobi(const LieAlgebra& g, const std::map<std::string, Rational>& overrides,
                int samples, const RunOptions& opt, Report& rep) {
  std::vector<std::map<std::string, Rational>> vals;
  if (overrides.empty()) {
    vals = parameter_samples(g, samples, opt.seed);
  } else {
    auto merged = merge_sample(g.params, g.sample, overrides);
    Binding b = bind_params(merged);
    for (const auto& c : algebra_constraints(g))
      if (!c.holds(b))
        throw std::invalid_argument(g.name + ": overrides violate constraint " + c.str());
    vals.push_back(std::move(merged));
  }
  if (structurally_antisymmetric(g))
    rep.pass("antisymmetry", g.name, 0.0, opt.seed);
  else
    rep.fail("antisymmetry", g.name, 1.0, opt.seed, "table is not antisymmetric");
  double worst = 0.0;
  int bad = 0;
  for (const auto& v : vals) {
    if (!rational_jacobi(g.instantiate(v))) ++bad;
    worst = std::max(worst, g.jacobi_residual(bind_params(v)));
  }
  std::string detail = "exact over Q at " + std::to_string(vals.size()) + " samples";
  if (bad == 0)
    rep.pass("jacobi", g.name, worst, opt.seed).detail = detail;
  else
    rep.fail("jacobi", g.name, double(bad), opt.seed,
             std::to_string(bad) + " of " + std::to_string(vals.size()) + " samples fail");
}

void run_ideals(const LieAlgebra& g, const std::map<std::string, Rational>& overrides,
                int samples, const RunOptions& opt, Report& rep) {
  std::vector<std::map<std::string, Rational>> vals;
  if (overrides.empty()) {
    vals = parameter_samples(g, g.params.empty() ? 1 : samples, opt.seed);
  } else {
    auto merged = merge_sample(g.params, g.sample, overrides);
    Binding b = bind_params(merged);
    for (const auto& c : algebra_constraints(g))
      if (!c.holds(b))
        throw std::invalid_argument(g.name + ": overrides violate constraint " + c.str());
    vals.push_back(std::move(merged));
  }
  for (const auto& v : vals) {
    IdealSearch s = find_abelian_ideals_3d(g.instantiate(v), opt.seed);
    std::ostringstream detail;
    if (s.ideals.empty())
      detail << "none found";
    else
      for (size_t k = 0; k < s.ideals.size(); ++k)
        detail << (k ? "; " : "found ") << ideal_str(s.ideals[k]);
    for (const auto& note : s.notes) detail << "; " << note;
    std::string subject = g.name + binding_str(v);
    if (s.status == IdealSearch::Status::complete)
      rep.pass("ideals", subject, double(s.ideals.size()), opt.seed).detail = detail.str();
    else
      rep.inconclusive("ideals", subject, opt.seed, detail.str()).metric =
          double(s.ideals.size());
  }
}

void run_levi(const HypersurfaceEntry& e, const std::string& name,
              const std::map<std::string, Rational>& overrides, const RunOptions& opt,
              Report& rep) {
  auto grid = effective_grid(e.grid, e.surface.params, overrides);
  LeviClass want = expected_class(e.expected);
  auto census = classify_family(e.surface, grid, opt.points, opt.seed);
  for (const auto& fc : census) {
    int off = fc.sample_failures;
    int total = fc.sample_failures;
    for (const auto& [cls, cnt] : fc.counts) {
      total += cnt;
      if (cls != want) off += cnt;
    }
    std::ostringstream detail;
    detail << "expected " << levi_class_name(want);
    for (const auto& [cls, cnt] : fc.counts) detail << " " << levi_class_name(cls) << "=" << cnt;
    if (fc.sample_failures) detail << " sample_failures=" << fc.sample_failures;
    std::string subject = name + binding_str(fc.binding);
    if (off == 0 && total > 0)
      rep.pass("levi-census", subject, double(total), opt.seed).detail = detail.str();
    else
      rep.fail("levi-census", subject, double(off), opt.seed, detail.str());
  }
}

void run_tangency(const Realization& r, const HypersurfaceEntry& e, const std::string& sname,
                  const std::map<std::string, Rational>& overrides, const RunOptions& opt,
                  Report& rep) {
  auto grid = effective_grid(e.grid, e.surface.params, overrides);
  for (const auto& gb : grid) {
    std::map<std::string, Rational> vals = r.sample;
    for (const auto& [k, v] : gb) vals[k] = v;
    Binding params = bind_params(vals);
    e.surface.validate_params(params);
    std::string subject = r.name + "/" + sname + binding_str(gb);
    try {
      auto pts = sample_surface_points(e.surface, params, opt.points, opt.seed);
      double worst = 0.0;
      for (const auto& f : r.frame)
        for (const auto& p : pts) worst = std::max(worst, tangency_residual(f, e.surface, p));
      if (worst < opt.tol)
        rep.pass("tangency", subject, worst, opt.seed);
      else
        rep.fail("tangency", subject, worst, opt.seed, "a frame field leaves the surface");
    } catch (const SampleError& ex) {
      rep.fail("tangency", subject, 0.0, opt.seed, ex.what());
    }
  }
}

void run_fingerprint(const LieAlgebra& g, const RunOptions& opt, Report& rep) {
  Fingerprint fp = fingerprint(g.instantiate(), opt.seed);
  rep.pass("fingerprint", g.name + binding_str(g.sample), 0.0, opt.seed).detail = fp.str();
}

namespace {

void run_realization_check(const Realization& r, const RunOptions& opt, Report& rep) {
  RealizationReport rr = verify_realization(r, opt.points, opt.seed, opt.tol);
  double metric = std::max(rr.max_residual, rr.extras_residual);
  std::string subject = r.name + binding_str(r.sample);
  if (rr.ok) {
    rep.pass("realization", subject, metric, opt.seed);
  } else {
    std::ostringstream detail;
    if (rr.fail_i >= 0)
      detail << "pair (" << rr.fail_i + 1 << "," << rr.fail_j + 1 << ") at " << rr.fail_point;
    if (!rr.extras_detail.empty()) detail << (rr.fail_i >= 0 ? "; " : "") << rr.extras_detail;
    rep.fail("realization", subject, metric, opt.seed, detail.str());
  }
}

void run_line_degeneracy(const Realization& r, const RunOptions& opt, Report& rep) {
  // on the line z1 = z2 = 0 the commuting pair X2, X5 drops to complex rank 1
  FieldFrame pair{r.frame[1], r.frame[4]};
  VectorField comm = bracket(pair[0], pair[1]);
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> coord(0.3, 1.0);
  int bad = comm.is_zero() ? 0 : 1;
  std::string detail = comm.is_zero() ? "" : "[X2,X5] is not zero; ";
  for (int k = 0; k < 10; ++k) {
    Binding b = bind_params(r.sample);
    b.set_var(0, 0.0);
    b.set_var(1, 0.0);
    b.set_var(2, {coord(rng), coord(rng)});
    if (complex_rank_at(pair, b, opt.tol) != 1) ++bad;
  }
  if (bad == 0)
    rep.pass("line-degeneracy", r.name, 0.0, opt.seed).detail =
        "commuting pair X2,X5 has complex rank 1 on z1=z2=0";
  else
    rep.fail("line-degeneracy", r.name, double(bad), opt.seed,
             detail + std::to_string(bad) + " points off rank 1");
}

void run_tube_item(const Catalog& c, const std::string& name, const RunOptions& opt, Report& rep,
                   std::vector<std::pair<std::string, Fingerprint>>* fps) {
  const TubeBase* tb = c.tube(name);
  if (!tb) {
    rep.fail("tube-frame", name, 0.0, opt.seed, "no tube recipe in the catalog");
    return;
  }
  for (size_t gi = 0; gi < tb->grid.size(); ++gi) {
    const auto& gb = tb->grid[gi];
    Binding params = bind_params(gb);
    std::string subject = name + binding_str(gb);
    LieAlgebra frame_table;
    try {
      Tube t = make_tube(*tb, params, opt.seed, opt.points, opt.tol);
      frame_table = frame_algebra(t.frame, params, opt.seed, opt.points, opt.tol);
      rep.pass("tube-frame", subject, 0.0, opt.seed).detail =
          "tangent rank-5 frame, brackets certified exactly";
      auto pts = sample_points(params, 5, opt.seed);
      int minrank = 6, mincrank = 4;
      FieldFrame shifts{t.frame[0], t.frame[1], t.frame[2]};
      for (const auto& p : pts) {
        minrank = std::min(minrank, real_rank_at(t.frame, p, opt.tol));
        mincrank = std::min(mincrank, complex_rank_at(shifts, p, opt.tol));
      }
      if (minrank == 5)
        rep.pass("tube-rank", subject, 5.0, opt.seed);
      else
        rep.fail("tube-rank", subject, double(minrank), opt.seed, "frame drops real rank");
      RationalAlgebra ra = frame_table.instantiate();
      std::vector<RatVec> triple;
      for (int k = 0; k < 3; ++k) {
        RatVec e(5, Rational(0));
        e[size_t(k)] = 1;
        triple.push_back(std::move(e));
      }
      IdealCheck ic = verify_abelian_ideal(ra, triple);
      if (ic.ok && mincrank == 3)
        rep.pass("tube-ideal", subject, 3.0, opt.seed).detail =
            "shift triple is an abelian ideal of complex rank 3; existence only, "
            "uniqueness not certified";
      else
        rep.fail("tube-ideal", subject, double(mincrank), opt.seed,
                 ic.ok ? "shift triple drops complex rank" : ic.reason);
      if (gi == 0) {
        Fingerprint fp = fingerprint(ra, opt.seed);
        if (fps) fps->emplace_back(name, fp);
        rep.pass("tube-fingerprint", subject, 0.0, opt.seed).detail = fp.str();
      }
    } catch (const std::exception& ex) {
      rep.fail("tube-frame", subject, 0.0, opt.seed, ex.what());
    }
  }
}

}  // namespace

void run_theorem2(const Catalog& c, int item, const RunOptions& opt, Report& rep) {
  std::vector<std::pair<std::string, Fingerprint>> fps;
  for (int n = 1; n <= 17; ++n) {
    if (item > 0 && n != item) continue;
    std::string base = "item" + std::to_string(n);
    bool found = false;
    for (const auto& [name, entry] : c.hypersurfaces) {
      if (name != base && name.rfind(base + ".", 0) != 0) continue;
      found = true;
      run_levi(entry, name, {}, opt, rep);
    }
    if (!found) rep.fail("levi-census", base, 0.0, opt.seed, "no catalog entry");
    if (n >= 12) run_tube_item(c, base, opt, rep, &fps);
  }
  if (item < 0 && fps.size() > 1) {
    std::ostringstream collisions;
    int distinct = 0;
    for (size_t a = 0; a < fps.size(); ++a) {
      bool dup = false;
      for (size_t b = 0; b < a; ++b)
        if (fps[a].second == fps[b].second) {
          dup = true;
          collisions << (collisions.str().empty() ? "" : "; ") << fps[b].first << " == "
                     << fps[a].first;
        }
      if (!dup) ++distinct;
    }
    std::string subject = fps.front().first + ".." + fps.back().first;
    if (distinct == int(fps.size()))
      rep.pass("fingerprint-distinct", subject, double(distinct), opt.seed).detail =
          "recovered algebras pairwise non-isomorphic by invariant tuple";
    else
      rep.fail("fingerprint-distinct", subject, double(distinct), opt.seed, collisions.str());
  }
  if (item > 0) return;
  const char* sections[] = {"g25", "g26", "g37", "m16", "m17", "g5-normal-form"};
  for (const char* rname : sections) {
    const Realization* r = c.realization(rname);
    if (!r) {
      rep.fail("realization", rname, 0.0, opt.seed, "no catalog entry");
      continue;
    }
    run_realization_check(*r, opt, rep);
    for (const auto& sref : r->surface_refs) {
      const HypersurfaceEntry* e = c.hypersurface(sref);
      if (!e) {
        rep.fail("tangency", r->name + "/" + sref, 0.0, opt.seed, "no catalog entry");
        continue;
      }
      run_tangency(*r, *e, sref, {}, opt, rep);
      if (expected_class(e->expected) != LeviClass::StrictlyPseudoconvex)
        run_levi(*e, sref, {}, opt, rep);
    }
    if (std::string(rname) == "m17") run_line_degeneracy(*r, opt, rep);
  }
}

void run_catalog_validate(const Catalog& c, const RunOptions& opt, Report& rep) {
  rep.pass("catalog-load", "algebras", double(c.algebras.size()), opt.seed).detail =
      "structural Jacobi verified at load";
  for (const auto& [name, entry] : c.hypersurfaces) {
    std::string why;
    if (!structurally_real(entry.surface.rho)) why = "defining function is not real";
    auto grid = effective_grid(entry.grid, entry.surface.params, {});
    for (const auto& gb : grid) {
      Binding b = bind_params(gb);
      for (const auto& cons : entry.surface.constraints)
        if (why.empty() && !cons.holds(b))
          why = binding_str(gb) + " violates " + cons.str();
    }
    if (why.empty())
      rep.pass("surface-data", name, double(grid.size()), opt.seed);
    else
      rep.fail("surface-data", name, 0.0, opt.seed, why);
  }
  for (const auto& [name, r] : c.realizations) run_realization_check(r, opt, rep);
  for (const auto& [name, tb] : c.tubes) run_tube_item(c, name, opt, rep, nullptr);
}

}  // namespace crwb
