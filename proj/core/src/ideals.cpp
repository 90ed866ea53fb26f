#include "crwb/ideals.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace crwb {

namespace {

using Poly = std::vector<Rational>;

void ptrim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

bool pzero(const Poly& p) {
  for (const auto& c : p)
    if (c != 0) return false;
  return true;
}

int pdeg(const Poly& p) {
  for (size_t k = p.size(); k-- > 0;)
    if (p[k] != 0) return int(k);
  return -1;
}

Poly pmul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly padd(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Poly pneg(const Poly& a) {
  Poly r = a;
  for (auto& c : r) c = -c;
  return r;
}

Rational peval(const Poly& p, const Rational& x) {
  Rational r(0);
  for (size_t k = p.size(); k-- > 0;) r = r * x + p[k];
  return r;
}

// exact divisibility test, returns quotient when the remainder vanishes
std::optional<Poly> pdivides(const Poly& num, const Poly& den) {
  Poly r = num, q(num.size(), Rational(0));
  ptrim(r);
  Poly d = den;
  ptrim(d);
  while (pdeg(r) >= pdeg(d) && pdeg(r) >= 0) {
    Rational f = r.back() / d.back();
    size_t off = r.size() - d.size();
    q[off] = f;
    for (size_t k = 0; k < d.size(); ++k) r[off + k] -= f * d[k];
    ptrim(r);
    if (pdeg(r) < 0) break;
  }
  if (!pzero(r)) return std::nullopt;
  ptrim(q);
  return q;
}

std::vector<std::complex<double>> numeric_roots(const Poly& p) {
  int n = pdeg(p);
  if (n <= 0) return {};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  double lead = p[size_t(n)].convert_to<double>();
  for (int k = 0; k < n; ++k) comp(k, n - 1) = -p[size_t(k)].convert_to<double>() / lead;
  for (int k = 1; k < n; ++k) comp(k, k - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
  std::vector<std::complex<double>> out;
  for (int k = 0; k < n; ++k) out.push_back(es.eigenvalues()(k));
  return out;
}

// rational roots verified exactly; returns the root-free remainder
std::pair<std::vector<Rational>, Poly> extract_rational_roots(Poly p) {
  std::vector<Rational> roots;
  ptrim(p);
  bool again = true;
  while (again && pdeg(p) >= 1) {
    again = false;
    for (const auto& z : numeric_roots(p)) {
      if (std::abs(z.imag()) > 1e-7 * (1.0 + std::abs(z))) continue;
      Rational cand = rationalize(z.real(), 1000000);
      if (peval(p, cand) != 0) continue;
      Poly lin{-cand, Rational(1)};
      while (auto q = pdivides(p, lin)) {
        roots.push_back(cand);
        p = *q;
      }
      again = pdeg(p) >= 1;
      break;
    }
  }
  return {roots, p};
}

bool has_real_root(const Poly& p) {
  int n = pdeg(p);
  if (n <= 0) return false;
  if (n % 2 == 1) return true;
  for (const auto& z : numeric_roots(p))
    if (std::abs(z.imag()) <= 1e-6 * (1.0 + std::abs(z))) return true;
  return false;
}

// determinant of a small matrix with polynomial entries, Laplace along the first column
Poly pdet(const std::vector<std::vector<Poly>>& m) {
  size_t n = m.size();
  if (n == 1) return m[0][0];
  Poly acc{Rational(0)};
  for (size_t i = 0; i < n; ++i) {
    if (pzero(m[i][0])) continue;
    std::vector<std::vector<Poly>> sub;
    for (size_t r = 0; r < n; ++r) {
      if (r == i) continue;
      std::vector<Poly> row(m[r].begin() + 1, m[r].end());
      sub.push_back(std::move(row));
    }
    Poly term = pmul(m[i][0], pdet(sub));
    acc = padd(acc, (i % 2 == 0) ? term : pneg(term));
  }
  return acc;
}

RatMat mat_pow(const RatMat& m, int e) {
  RatMat r = RatMat::identity(m.rows());
  for (int k = 0; k < e; ++k) r = r * m;
  return r;
}

std::vector<RatVec> rref(std::vector<RatVec> rows) {
  size_t rr = 0;
  size_t cols = rows.empty() ? 0 : rows[0].size();
  for (size_t c = 0; c < cols && rr < rows.size(); ++c) {
    size_t p = rr;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rr]);
    Rational inv = Rational(1) / rows[rr][c];
    for (auto& v : rows[rr]) v *= inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rr || rows[r][c] == 0) continue;
      Rational f = rows[r][c];
      for (size_t k = 0; k < cols; ++k) rows[r][k] -= f * rows[rr][k];
    }
    ++rr;
  }
  rows.resize(rr);
  return rows;
}

std::string span_key(const std::vector<RatVec>& canon) {
  std::ostringstream os;
  for (const auto& row : canon) {
    for (const auto& v : row) os << v << ",";
    os << ";";
  }
  return os.str();
}

struct Atom {
  enum class Type {
    chain,        // (A - lambda) restricted is a single nilpotent Jordan chain
    scalar,       // (A - lambda) restricted is zero
    mixed,        // nilpotent with several blocks
    pair_neg,     // irreducible quadratic, negative discriminant, k = 2
    pair_pos,     // quadratic with positive discriminant and irrational roots, k = 2
    pair_double,  // quadratic factor of multiplicity 2, k = 4
    opaque        // unfactored leftover
  };
  Type type = Type::opaque;
  std::vector<RatVec> basis;  // ambient rational basis
  int k = 0;
  RatMat nil;                 // chain: nilpotent restriction in atom coordinates
  std::vector<RatVec> inner;  // pair_double: the unique 2-dim invariant subspace (may be empty)
};

struct OptionSet {
  enum class Kind { none, fixed, pencil, infinite };
  Kind kind = Kind::none;
  std::vector<std::vector<RatVec>> choices;  // fixed: each entry is a set of basis vectors
};

OptionSet atom_options(const Atom& a, int d) {
  OptionSet o;
  if (d == 0) {
    o.kind = OptionSet::Kind::fixed;
    o.choices.push_back({});
    return o;
  }
  if (d == a.k) {
    o.kind = OptionSet::Kind::fixed;
    o.choices.push_back(a.basis);
    return o;
  }
  if (d > a.k) return o;  // none
  switch (a.type) {
    case Atom::Type::chain: {
      // unique invariant subspace per dimension: ker(N^d)
      auto ns = mat_pow(a.nil, d).nullspace();
      std::vector<RatVec> amb;
      for (const auto& coords : ns) {
        RatVec v(a.basis[0].size(), Rational(0));
        for (size_t j = 0; j < coords.size(); ++j)
          for (size_t t = 0; t < v.size(); ++t) v[t] += coords[j] * a.basis[j][t];
        amb.push_back(std::move(v));
      }
      if (int(amb.size()) != d) {
        o.kind = OptionSet::Kind::infinite;
        return o;
      }
      o.kind = OptionSet::Kind::fixed;
      o.choices.push_back(std::move(amb));
      return o;
    }
    case Atom::Type::scalar:
      if (a.k == 2 && d == 1) {
        o.kind = OptionSet::Kind::pencil;
        return o;
      }
      o.kind = OptionSet::Kind::infinite;
      return o;
    case Atom::Type::mixed:
      o.kind = OptionSet::Kind::infinite;
      return o;
    case Atom::Type::pair_neg:
      return o;  // no real invariant line inside a complex-pair plane
    case Atom::Type::pair_pos:
      if (d == 1) {
        o.kind = OptionSet::Kind::pencil;
        return o;
      }
      return o;
    case Atom::Type::pair_double:
      if (d == 2 && !a.inner.empty()) {
        o.kind = OptionSet::Kind::fixed;
        o.choices.push_back(a.inner);
        return o;
      }
      if (d == 1 || d == 3) return o;  // odd dims impossible under a complex structure
      o.kind = OptionSet::Kind::infinite;
      return o;
    case Atom::Type::opaque:
      if (a.k == 2 && d == 1) {
        o.kind = OptionSet::Kind::pencil;
        return o;
      }
      o.kind = OptionSet::Kind::infinite;
      return o;
  }
  return o;
}

struct PencilOutcome {
  std::vector<std::vector<RatVec>> candidates;
  bool continuum = false;
  bool possible_irrational = false;
};

// Resolves I(t) = span(W, u1 + t u2) being a 3-dim abelian ideal: all conditions
// are polynomials in t; their gcd carries the solution set.
PencilOutcome resolve_pencil(const RationalAlgebra& g, const std::vector<RatVec>& w,
                             const RatVec& u1, const RatVec& u2) {
  PencilOutcome out;
  int n = g.dim;
  // t = infinity member handled by the caller via a direct candidate
  for (size_t a = 0; a < w.size(); ++a)
    for (size_t b = a + 1; b < w.size(); ++b) {
      RatVec br = g.bracket(w[a], w[b]);
      for (const auto& v : br)
        if (v != 0) return out;  // fixed part is not abelian, family is empty
    }
  std::vector<Poly> conds;
  // abelian: [w_a, u1 + t u2] = 0 componentwise
  for (const auto& wa : w) {
    RatVec b1 = g.bracket(wa, u1), b2 = g.bracket(wa, u2);
    for (int k = 0; k < n; ++k)
      if (!(b1[size_t(k)] == 0 && b2[size_t(k)] == 0))
        conds.push_back(Poly{b1[size_t(k)], b2[size_t(k)]});
  }
  // ideal: [e_i, y] in span(W, v(t)) for y in {w_a, v(t)}
  auto column = [&](const RatVec& c0, const RatVec& c1) {
    std::vector<Poly> col;
    col.resize(size_t(n));
    for (int k = 0; k < n; ++k) col[size_t(k)] = Poly{c0[size_t(k)], c1[size_t(k)]};
    return col;
  };
  RatVec zero(size_t(n), Rational(0));
  std::vector<std::vector<Poly>> cols;  // 5-row polynomial columns: w..., v(t), target
  for (const auto& wa : w) cols.push_back(column(wa, zero));
  cols.push_back(column(u1, u2));
  for (int i = 0; i < n; ++i) {
    RatVec ei(size_t(n), Rational(0));
    ei[size_t(i)] = 1;
    std::vector<std::pair<RatVec, RatVec>> targets;
    for (const auto& wa : w) targets.emplace_back(g.bracket(ei, wa), zero);
    targets.emplace_back(g.bracket(ei, u1), g.bracket(ei, u2));
    for (const auto& [c0, c1] : targets) {
      std::vector<std::vector<Poly>> m = cols;
      m.push_back(column(c0, c1));
      // all 4x4 minors of the 5x4 matrix [w1 w2 v(t) target] must vanish
      for (int skip = 0; skip < n; ++skip) {
        std::vector<std::vector<Poly>> minor;
        for (int r = 0; r < n; ++r) {
          if (r == skip) continue;
          std::vector<Poly> row;
          for (const auto& c : m) row.push_back(c[size_t(r)]);
          minor.push_back(std::move(row));
        }
        Poly dm = pdet(minor);
        ptrim(dm);
        if (!pzero(dm)) conds.push_back(std::move(dm));
      }
    }
  }
  if (conds.empty()) {
    out.continuum = true;
    // representatives only; the verified family is one-dimensional
    std::vector<RatVec> c0 = w;
    c0.push_back(u1);
    out.candidates.push_back(std::move(c0));
    RatVec u12(u1);
    for (size_t k = 0; k < u12.size(); ++k) u12[k] += u2[k];
    std::vector<RatVec> c1 = w;
    c1.push_back(std::move(u12));
    out.candidates.push_back(std::move(c1));
    return out;
  }
  Poly gcd = conds[0];
  for (size_t k = 1; k < conds.size(); ++k) gcd = poly_gcd(gcd, conds[k]);
  if (pdeg(gcd) <= 0) return out;  // no finite-t solution
  auto [roots, rest] = extract_rational_roots(gcd);
  for (const auto& t0 : roots) {
    RatVec v = u1;
    for (size_t k = 0; k < v.size(); ++k) v[k] += t0 * u2[k];
    std::vector<RatVec> cand = w;
    cand.push_back(std::move(v));
    out.candidates.push_back(std::move(cand));
  }
  if (has_real_root(rest)) out.possible_irrational = true;
  return out;
}

}  // namespace

std::vector<RatVec> canonical_span(const std::vector<RatVec>& basis) { return rref(basis); }

bool IdealSearch::contains_span(const std::vector<RatVec>& basis) const {
  std::string key = span_key(canonical_span(basis));
  for (const auto& id : ideals)
    if (span_key(id) == key) return true;
  return false;
}

IdealSearch find_abelian_ideals_3d(const RationalAlgebra& g, uint64_t seed, int trials) {
  IdealSearch out;
  int n = g.dim;
  std::set<std::string> seen;
  std::set<std::string> note_set;
  auto add_candidate = [&](const std::vector<RatVec>& basis) {
    if (span_rank(basis) != 3) return;
    std::vector<RatVec> canon = canonical_span(basis);
    std::string key = span_key(canon);
    if (seen.count(key)) return;
    if (!verify_abelian_ideal(g, canon).ok) return;
    seen.insert(key);
    out.ideals.push_back(std::move(canon));
  };

  // Tier 1: coordinate triples
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        std::vector<RatVec> basis;
        for (int v : {i, j, k}) {
          RatVec e(size_t(n), Rational(0));
          e[size_t(v)] = 1;
          basis.push_back(std::move(e));
        }
        add_candidate(basis);
      }

  // Tier 2: invariant-subspace enumeration for random elements
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int trial = 0; trial < trials; ++trial) {
    RatVec x(size_t(n), Rational(0));
    bool nonzero = false;
    for (auto& v : x) {
      int cv = coef(rng);
      v = cv;
      nonzero = nonzero || cv != 0;
    }
    if (!nonzero) continue;
    RatMat a = g.ad(x);
    Poly p = char_poly(a);

    // verified factorization of the characteristic polynomial
    struct Factor {
      Poly f;
      int mult = 0;
    };
    std::vector<Factor> factors;
    Poly rem = p;
    auto try_factor = [&](Poly f) {
      for (const auto& prev : factors)
        if (prev.f == f) return;
      int m = 0;
      while (auto q = pdivides(rem, f)) {
        rem = *q;
        ++m;
      }
      if (m > 0) factors.push_back({std::move(f), m});
    };
    for (const auto& z : numeric_roots(p)) {
      if (std::abs(z.imag()) <= 1e-7 * (1.0 + std::abs(z))) {
        Rational lam = rationalize(z.real(), 1000000);
        if (peval(p, lam) == 0) try_factor(Poly{-lam, Rational(1)});
      } else if (z.imag() > 0) {
        Rational s = rationalize(2.0 * z.real(), 1000000);
        Rational q0 = rationalize(std::norm(z), 1000000);
        Poly quad{q0, -s, Rational(1)};
        if (pdivides(p, quad)) try_factor(std::move(quad));
      }
    }
    ptrim(rem);

    bool trial_incomplete = false;
    std::vector<Atom> atoms;
    int covered = 0;
    for (const auto& fac : factors) {
      RatMat m = poly_eval_matrix(fac.f, a);
      auto basis = mat_pow(m, fac.mult).nullspace();
      Atom at;
      at.basis = {basis.begin(), basis.end()};
      at.k = int(at.basis.size());
      covered += at.k;
      if (pdeg(fac.f) == 1) {
        // restriction in atom coordinates
        RatMat bm(n, at.k);
        for (int j = 0; j < at.k; ++j)
          for (int r = 0; r < n; ++r) bm.at(r, j) = at.basis[size_t(j)][size_t(r)];
        RatMat nil(at.k, at.k);
        Rational lam = -fac.f[0];
        bool ok = true;
        for (int j = 0; j < at.k && ok; ++j) {
          RatVec img(size_t(n), Rational(0));
          for (int r = 0; r < n; ++r)
            for (int cidx = 0; cidx < n; ++cidx)
              img[size_t(r)] += a.at(r, cidx) * at.basis[size_t(j)][size_t(cidx)];
          for (int r = 0; r < n; ++r) img[size_t(r)] -= lam * at.basis[size_t(j)][size_t(r)];
          auto sol = bm.solve(img);
          if (!sol) {
            ok = false;
            break;
          }
          for (int r = 0; r < at.k; ++r) nil.at(r, j) = (*sol)[size_t(r)];
        }
        if (!ok) {
          at.type = Atom::Type::opaque;
        } else if (nil.is_zero()) {
          at.type = at.k == 1 ? Atom::Type::chain : Atom::Type::scalar;
          at.nil = nil;
        } else if (nil.rank() == at.k - 1) {
          at.type = Atom::Type::chain;
          at.nil = nil;
        } else {
          at.type = Atom::Type::mixed;
        }
      } else {
        // quadratic factor t^2 - s t + q0
        Rational disc = fac.f[1] * fac.f[1] - Rational(4) * fac.f[0];
        if (fac.mult == 1) {
          at.type = disc < 0 ? Atom::Type::pair_neg : Atom::Type::pair_pos;
        } else if (fac.mult == 2) {
          at.type = Atom::Type::pair_double;
          auto inner = m.nullspace();
          if (inner.size() == 2) at.inner = {inner.begin(), inner.end()};
        } else {
          at.type = Atom::Type::opaque;
        }
      }
      atoms.push_back(std::move(at));
    }
    if (pdeg(rem) >= 1) {
      Atom at;
      RatMat m = poly_eval_matrix(rem, a);
      auto basis = mat_pow(m, n).nullspace();
      at.basis = {basis.begin(), basis.end()};
      at.k = int(at.basis.size());
      at.type = Atom::Type::opaque;
      covered += at.k;
      atoms.push_back(std::move(at));
    }
    if (covered != n) {
      trial_incomplete = true;
      continue;
    }

    // enumerate dimension assignments summing to 3
    std::vector<int> dims(atoms.size(), 0);
    std::vector<std::vector<int>> assigns;
    std::function<void(size_t, int)> walk = [&](size_t idx, int left) {
      if (idx == atoms.size()) {
        if (left == 0) assigns.push_back(dims);
        return;
      }
      for (int d = 0; d <= std::min(left, atoms[idx].k); ++d) {
        dims[idx] = d;
        walk(idx + 1, left - d);
      }
      dims[idx] = 0;
    };
    walk(0, 3);

    for (const auto& asg : assigns) {
      std::vector<OptionSet> opts;
      bool impossible = false, infinite = false;
      int pencils = 0;
      for (size_t idx = 0; idx < atoms.size(); ++idx) {
        OptionSet o = atom_options(atoms[idx], asg[idx]);
        if (o.kind == OptionSet::Kind::none) impossible = true;
        if (o.kind == OptionSet::Kind::infinite) infinite = true;
        if (o.kind == OptionSet::Kind::pencil) ++pencils;
        opts.push_back(std::move(o));
      }
      if (impossible) continue;
      if (infinite || pencils > 1) {
        trial_incomplete = true;
        continue;
      }
      // cartesian product over fixed choices
      std::vector<std::vector<RatVec>> partials{{}};
      int pencil_idx = -1;
      for (size_t idx = 0; idx < atoms.size(); ++idx) {
        if (opts[idx].kind == OptionSet::Kind::pencil) {
          pencil_idx = int(idx);
          continue;
        }
        std::vector<std::vector<RatVec>> next;
        for (const auto& part : partials)
          for (const auto& choice : opts[idx].choices) {
            std::vector<RatVec> ext = part;
            ext.insert(ext.end(), choice.begin(), choice.end());
            next.push_back(std::move(ext));
          }
        partials = std::move(next);
      }
      if (pencil_idx < 0) {
        for (const auto& cand : partials) add_candidate(cand);
        continue;
      }
      const Atom& pa = atoms[size_t(pencil_idx)];
      for (const auto& w : partials) {
        // the t = infinity member of the pencil
        std::vector<RatVec> inf_cand = w;
        inf_cand.push_back(pa.basis[1]);
        add_candidate(inf_cand);
        PencilOutcome po = resolve_pencil(g, w, pa.basis[0], pa.basis[1]);
        for (const auto& cand : po.candidates) add_candidate(cand);
        if (po.continuum) {
          trial_incomplete = true;
          note_set.insert("one-parameter family of 3-dim abelian ideals found");
        }
        if (po.possible_irrational) {
          trial_incomplete = true;
          note_set.insert("pencil condition has an irrational real root, not enumerated");
        }
      }
    }
    if (!trial_incomplete) {
      out.status = IdealSearch::Status::complete;
      break;
    }
  }
  if (out.status != IdealSearch::Status::complete)
    note_set.insert("no trial produced a finite certified candidate set");
  out.notes.assign(note_set.begin(), note_set.end());
  return out;
}

}  // namespace crwb
