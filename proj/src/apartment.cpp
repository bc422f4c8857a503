#include "stratakit/apartment.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

namespace stratakit {

namespace {

using Vec = std::vector<Rational>;

// Unique solution of the square-or-overdetermined rational system rows.x = rhs.
// Disengaged when the system is inconsistent or underdetermined.
std::optional<Vec> solve_unique(std::vector<Vec> rows, Vec rhs, int dim) {
  const int m = static_cast<int>(rows.size());
  int r = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < dim && r < m; ++col) {
    int p = -1;
    for (int i = r; i < m; ++i)
      if (!rows[i][col].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(rows[p], rows[r]);
    std::swap(rhs[p], rhs[r]);
    for (int i = 0; i < m; ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      Rational f = rows[i][col] / rows[r][col];
      for (int j = col; j < dim; ++j) rows[i][j] -= f * rows[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(col);
    ++r;
  }
  if (r < dim) return std::nullopt;  // underdetermined
  for (int i = r; i < m; ++i)
    if (!rhs[i].is_zero()) return std::nullopt;  // inconsistent
  Vec x(dim);
  for (int k = 0; k < r; ++k) x[pivot_col[k]] = rhs[k] / rows[k][pivot_col[k]];
  return x;
}

// Equality constraints pinning the central direction for GL/SL.
std::vector<AffineFunctional> center_equalities(const GroupData& g) {
  std::vector<AffineFunctional> eqs;
  if (g.kind == GroupKind::GL || g.kind == GroupKind::SL) {
    AffineFunctional sum;
    sum.lin.assign(g.rank, Rational(1));
    sum.cst = Rational(0);
    eqs.push_back(std::move(sum));
  }
  return eqs;
}

void sort_dedup(std::vector<ApartmentPoint>& pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

}  // namespace

Rational AffineFunctional::eval(const ApartmentPoint& x) const {
  Rational v = cst;
  for (size_t i = 0; i < lin.size(); ++i) v += lin[i] * x.coords[i];
  return v;
}

void validate_point(const GroupData& g, const ApartmentPoint& x) {
  if (static_cast<int>(x.coords.size()) != g.rank)
    fail(kDimensionError, "apartment point needs " + std::to_string(g.rank) +
                              " coordinates, got " + std::to_string(x.coords.size()));
  if (g.kind == GroupKind::SL) {
    Rational s;
    for (const auto& c : x.coords) s += c;
    if (!s.is_zero())
      fail(kMembershipError, "SL apartment point coordinates must sum to zero");
  }
}

ApartmentPoint origin_point(const GroupData& g) {
  return ApartmentPoint{std::vector<Rational>(g.rank)};
}

bool is_origin(const ApartmentPoint& x) {
  return std::all_of(x.coords.begin(), x.coords.end(),
                     [](const Rational& c) { return c.is_zero(); });
}

std::string point_str(const ApartmentPoint& x) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < x.coords.size(); ++i) {
    if (i) os << ", ";
    os << x.coords[i].str();
  }
  os << ")";
  return os.str();
}

LaurentMatrix embed_point(const GroupData& g, const ApartmentPoint& x) {
  validate_point(g, x);
  std::vector<LaurentScalar> t;
  t.reserve(g.rank);
  for (const auto& c : x.coords) t.push_back(LaurentScalar(c));
  return g.embed_torus(t);
}

Rational eval_root(const GroupData& g, int idx, const ApartmentPoint& x) {
  Rational v;
  for (int i = 0; i < g.rank; ++i) v += Rational(g.roots[idx].coeffs[i]) * x.coords[i];
  return v;
}

std::vector<AffineFunctional> affine_minimal_roots(const GroupData& g) {
  std::vector<AffineFunctional> out;
  if (g.root_count() == 0) return out;
  for (int s : g.simple) {
    AffineFunctional f;
    f.cst = Rational(0);
    for (int c : g.roots[s].coeffs) f.lin.push_back(Rational(c));
    out.push_back(std::move(f));
  }
  AffineFunctional top;
  top.cst = Rational(1);
  for (int c : g.roots[g.highest].coeffs) top.lin.push_back(Rational(-c));
  out.push_back(std::move(top));
  return out;
}

bool in_closed_alcove(const GroupData& g, const ApartmentPoint& x) {
  validate_point(g, x);
  for (const auto& f : affine_minimal_roots(g))
    if (f.eval(x).sign() < 0) return false;
  return true;
}

namespace {

// All subsets of {0..n-1} of the given size, as index lists.
void for_each_subset(int n, int size, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(idx.size()) == size) {
      fn(idx);
      return;
    }
    for (int i = start; i <= n - (size - static_cast<int>(idx.size())); ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(0);
}

}  // namespace

std::vector<ApartmentPoint> alcove_vertices(const GroupData& g) {
  const auto walls = affine_minimal_roots(g);
  const auto eqs = center_equalities(g);
  const int dim = g.rank;
  const int need = dim - static_cast<int>(eqs.size());
  std::vector<ApartmentPoint> out;
  if (need <= 0) {
    out.push_back(origin_point(g));
    return out;
  }
  for_each_subset(static_cast<int>(walls.size()), need, [&](const std::vector<int>& sel) {
    std::vector<Vec> rows;
    Vec rhs;
    for (int i : sel) {
      rows.push_back(walls[i].lin);
      rhs.push_back(-walls[i].cst);
    }
    for (const auto& e : eqs) {
      rows.push_back(e.lin);
      rhs.push_back(-e.cst);
    }
    auto x = solve_unique(rows, rhs, dim);
    if (!x) return;
    ApartmentPoint p{*x};
    if (in_closed_alcove(g, p)) out.push_back(std::move(p));
  });
  sort_dedup(out);
  return out;
}

std::vector<ApartmentPoint> optimal_points(const GroupData& g) {
  const auto walls = affine_minimal_roots(g);
  if (walls.empty()) return {origin_point(g)};
  const auto eqs = center_equalities(g);
  const int dim = g.rank;
  const int nwalls = static_cast<int>(walls.size());
  std::vector<ApartmentPoint> out = alcove_vertices(g);

  for (int mask = 1; mask < (1 << nwalls); ++mask) {
    // Inequality system in lifted coordinates (x, t): every wall stays
    // nonnegative; walls in the subset also dominate t.
    struct Ineq {
      Vec lin;
      Rational cst;
      Rational tcoef;
    };
    std::vector<Ineq> ineqs;
    for (int i = 0; i < nwalls; ++i)
      ineqs.push_back({walls[i].lin, walls[i].cst, Rational(0)});
    for (int i = 0; i < nwalls; ++i)
      if (mask & (1 << i)) ineqs.push_back({walls[i].lin, walls[i].cst, Rational(-1)});
    const int ni = static_cast<int>(ineqs.size());

    auto feasible_at = [&](const Vec& x, const Rational& t) {
      for (const auto& q : ineqs) {
        Rational v = q.cst + q.tcoef * t;
        for (int i = 0; i < dim; ++i) v += q.lin[i] * x[i];
        if (v.sign() < 0) return false;
      }
      return true;
    };

    // Stage 1: best threshold t*, from basic feasible points of the lifted
    // system (dim+1 variables, equalities included).
    std::optional<Rational> tstar;
    const int need1 = dim + 1 - static_cast<int>(eqs.size());
    for_each_subset(ni, need1, [&](const std::vector<int>& sel) {
      std::vector<Vec> rows;
      Vec rhs;
      for (int i : sel) {
        Vec r = ineqs[i].lin;
        r.push_back(ineqs[i].tcoef);
        rows.push_back(std::move(r));
        rhs.push_back(-ineqs[i].cst);
      }
      for (const auto& e : eqs) {
        Vec r = e.lin;
        r.push_back(Rational(0));
        rows.push_back(std::move(r));
        rhs.push_back(-e.cst);
      }
      auto sol = solve_unique(rows, rhs, dim + 1);
      if (!sol) return;
      Vec x(sol->begin(), sol->end() - 1);
      Rational t = sol->back();
      if (!feasible_at(x, t)) return;
      if (!tstar || t > *tstar) tstar = t;
    });
    if (!tstar) continue;

    // Stage 2: lexicographically smallest vertex of the argmax face at t*.
    std::optional<ApartmentPoint> best;
    const int need2 = dim - static_cast<int>(eqs.size());
    for_each_subset(ni, need2, [&](const std::vector<int>& sel) {
      std::vector<Vec> rows;
      Vec rhs;
      for (int i : sel) {
        rows.push_back(ineqs[i].lin);
        rhs.push_back(-ineqs[i].cst - ineqs[i].tcoef * *tstar);
      }
      for (const auto& e : eqs) {
        rows.push_back(e.lin);
        rhs.push_back(-e.cst);
      }
      auto sol = solve_unique(rows, rhs, dim);
      if (!sol) return;
      if (!feasible_at(*sol, *tstar)) return;
      ApartmentPoint p{*sol};
      if (!best || p < *best) best = p;
    });
    if (best) out.push_back(std::move(*best));
  }

  sort_dedup(out);
  return out;
}

std::vector<ApartmentPoint> alcove_grid(const GroupData& g, int denom) {
  if (denom < 1) fail(kParseError, "grid denominator must be at least 1");
  std::vector<ApartmentPoint> out;
  const Rational step(1, denom);
  if (g.kind == GroupKind::Sp) {
    // 1/2 >= x_1 >= ... >= x_n >= 0: numerators nonincreasing in [0, denom/2].
    std::vector<int> a(g.rank);
    std::function<void(int, int)> rec = [&](int pos, int hi) {
      if (pos == g.rank) {
        std::vector<Rational> c;
        for (int v : a) c.push_back(Rational(v, denom));
        out.push_back(ApartmentPoint{std::move(c)});
        return;
      }
      for (int v = hi; v >= 0; --v) {
        a[pos] = v;
        rec(pos + 1, v);
      }
    };
    rec(0, denom / 2);
  } else {
    // x_1 >= ... >= x_n, x_1 - x_n <= 1, sum zero: numerators nonincreasing
    // with spread at most denom, total zero.
    const int n = g.rank;
    if (n == 1) {
      out.push_back(origin_point(g));
    } else {
      std::vector<int> a(n);
      std::function<void(int, int, long)> rec = [&](int pos, int hi, long sum) {
        if (pos == n) {
          if (sum == 0) {
            std::vector<Rational> c;
            for (int v : a) c.push_back(Rational(v, denom));
            out.push_back(ApartmentPoint{std::move(c)});
          }
          return;
        }
        const int lo = a[0] - denom;
        for (int v = hi; v >= lo; --v) {
          // Remaining entries are in [lo, v]; prune by achievable sums.
          long rem = n - pos - 1;
          long s = sum + v;
          if (s + rem * static_cast<long>(lo) > 0) continue;
          if (s + rem * static_cast<long>(v) < 0) break;
          a[pos] = v;
          rec(pos + 1, v, s);
        }
      };
      for (int first = denom; first >= 0; --first) {
        a[0] = first;
        long rem = n - 1;
        long s = first;
        const int lo = first - denom;
        if (s + rem * static_cast<long>(lo) > 0) continue;
        if (s + rem * static_cast<long>(first) < 0) break;
        rec(1, first, s);
      }
    }
  }
  for (const auto& p : out) validate_point(g, p);
  sort_dedup(out);
  return out;
}

}  // namespace stratakit
