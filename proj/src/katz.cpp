#include "stratakit/katz.hpp"

#include <algorithm>
#include <random>

#include "stratakit/error.hpp"

namespace stratakit {

namespace {

using Vector = std::vector<LaurentScalar>;

// One application of D = tau + A.
Vector apply_d(const LaurentMatrix& a, const Vector& v) {
  Vector r = a.apply(v);
  for (size_t i = 0; i < v.size(); ++i) r[i] += v[i].tau();
  return r;
}

bool is_zero_vec(const Vector& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const LaurentScalar& s) { return s.is_zero(); });
}

// Dense integer Laurent polynomial z^val * (c[0] + c[1] z + ...): the
// elimination kernel works over these instead of rational-coefficient
// scalars, since Bareiss entries are minors of integer inputs and integer
// arithmetic avoids a gcd normalization per operation.
struct ZPoly {
  int val = 0;
  std::vector<mpz_class> c;  // trimmed: c.front() != 0 and c.back() != 0

  bool is_zero() const { return c.empty(); }
  int terms() const {
    int t = 0;
    for (const auto& x : c)
      if (x != 0) ++t;
    return t;
  }
};

void zp_trim(ZPoly& a) {
  size_t lo = 0, hi = a.c.size();
  while (lo < hi && a.c[lo] == 0) ++lo;
  while (hi > lo && a.c[hi - 1] == 0) --hi;
  if (lo == hi) {
    a.c.clear();
    a.val = 0;
    return;
  }
  if (lo > 0) a.c.erase(a.c.begin(), a.c.begin() + static_cast<long>(lo));
  a.c.resize(hi - lo);
  a.val += static_cast<int>(lo);
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  ZPoly r;
  r.val = a.val + b.val;
  r.c.assign(a.c.size() + b.c.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      if (b.c[j] != 0)
        mpz_addmul(r.c[i + j].get_mpz_t(), a.c[i].get_mpz_t(), b.c[j].get_mpz_t());
  }
  zp_trim(r);
  return r;
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero()) {
    ZPoly r = b;
    for (auto& x : r.c) x = -x;
    return r;
  }
  if (b.is_zero()) return a;
  const int lo = std::min(a.val, b.val);
  const int hi = std::max(a.val + static_cast<int>(a.c.size()),
                          b.val + static_cast<int>(b.c.size()));
  ZPoly r;
  r.val = lo;
  r.c.assign(static_cast<size_t>(hi - lo), mpz_class(0));
  for (size_t i = 0; i < a.c.size(); ++i) r.c[static_cast<size_t>(a.val - lo) + i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[static_cast<size_t>(b.val - lo) + i] -= b.c[i];
  zp_trim(r);
  return r;
}

// Exact quotient; the callers only divide when the quotient is an integer
// polynomial (Bareiss invariant), so a failed division is an internal error.
ZPoly zp_divexact(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero()) return {};
  if (b.is_zero()) fail(kInternalError, "division by zero in elimination kernel");
  if (a.c.size() < b.c.size())
    fail(kInternalError, "inexact division in elimination kernel");
  ZPoly q;
  q.val = a.val - b.val;
  q.c.assign(a.c.size() - b.c.size() + 1, mpz_class(0));
  std::vector<mpz_class> rem = a.c;
  const mpz_class& lead = b.c.back();
  mpz_class t, r;
  for (size_t qi = q.c.size(); qi-- > 0;) {
    mpz_class& top = rem[qi + b.c.size() - 1];
    if (top == 0) continue;
    mpz_tdiv_qr(t.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
    if (r != 0) fail(kInternalError, "inexact division in elimination kernel");
    q.c[qi] = t;
    for (size_t j = 0; j + 1 < b.c.size(); ++j)
      mpz_submul(rem[qi + j].get_mpz_t(), t.get_mpz_t(), b.c[j].get_mpz_t());
    top = 0;
  }
  for (const auto& x : rem)
    if (x != 0) fail(kInternalError, "inexact division in elimination kernel");
  zp_trim(q);
  return q;
}

// Integer column matrix of the iterates: denominators cleared per column and
// integer content stripped per column and per row. Both moves rescale by
// nonzero rational constants, which changes neither the first dependent
// column nor any z-valuation of the relation coefficients.
std::vector<std::vector<ZPoly>> integer_columns(const std::vector<Vector>& iterates) {
  const size_t ncols = iterates.size();
  const size_t n = iterates[0].size();
  std::vector<std::vector<ZPoly>> work(n, std::vector<ZPoly>(ncols));
  mpz_class m, g;
  for (size_t j = 0; j < ncols; ++j) {
    m = 1;
    for (const auto& e : iterates[j])
      for (const auto& [p, q] : e.terms()) mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), q.den().get_mpz_t());
    g = 0;
    for (size_t i = 0; i < n; ++i) {
      const auto& e = iterates[j][i];
      ZPoly& z = work[i][j];
      if (e.is_zero()) continue;
      z.val = e.terms().front().first;
      z.c.assign(static_cast<size_t>(e.terms().back().first - z.val + 1), mpz_class(0));
      for (const auto& [p, q] : e.terms()) {
        mpz_class& slot = z.c[static_cast<size_t>(p - z.val)];
        slot = q.num() * (m / q.den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), slot.get_mpz_t());
      }
    }
    if (g > 1)
      for (size_t i = 0; i < n; ++i)
        for (auto& x : work[i][j].c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
  for (size_t i = 0; i < n; ++i) {
    g = 0;
    for (size_t j = 0; j < ncols; ++j)
      for (const auto& x : work[i][j].c) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
      }
    if (g > 1)
      for (size_t j = 0; j < ncols; ++j)
        for (auto& x : work[i][j].c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
  return work;
}

// Newton-polygon slope of the relation D^k w = sum_{i<k} c_i D^i w, from the
// valuations of the c_i alone: max over nonzero c_i of (-v(c_i)) / (k - i),
// floored at zero (zero slope = regular part only).
Rational relation_slope(const std::vector<std::optional<int>>& vnum, int vden, int k) {
  Rational best(0);
  for (int i = 0; i < k; ++i) {
    if (!vnum[i]) continue;
    Rational s(static_cast<long>(vden) - *vnum[i], static_cast<long>(k - i));
    if (s > best) best = s;
  }
  return best;
}

struct Dependency {
  int k;  // first iterate lying in the span of the previous ones
  std::vector<std::optional<int>> vnum;  // valuations of the relation coefficients
  int vden = 0;
};

// Single forward fraction-free elimination over the iterate columns, stopping
// at the first column without a pivot; that column index is the first
// dependency. The relation coefficients come from integer-preserving back
// substitution on the already-eliminated pivot rows: with pivots u_ii and
// transformed right side b_i, num_{k-1} = b_{k-1}, den = u_{k-1,k-1}, and
// num_i = (b_i den - sum_{j>i} u_ij num_j) / u_ii with every division exact
// (the num_i are the Cramer determinants of the pivot subsystem).
std::optional<Dependency> first_dependency(const std::vector<Vector>& iterates) {
  const int ncols = static_cast<int>(iterates.size());
  const int n = static_cast<int>(iterates[0].size());
  std::vector<std::vector<ZPoly>> work = integer_columns(iterates);

  ZPoly prev;
  prev.c.assign(1, mpz_class(1));
  int r = 0;
  for (int col = 0; col < ncols; ++col) {
    int p = -1;
    int best = -1;
    for (int i = r; i < n; ++i) {
      if (work[i][col].is_zero()) continue;
      const int tc = work[i][col].terms();
      if (p < 0 || tc < best) {
        p = i;
        best = tc;
      }
    }
    if (p < 0) {
      const int k = col;
      if (k == 0)
        fail(kInternalError, "zero candidate vector in cyclic search");
      Dependency dep;
      dep.k = k;
      dep.vnum.assign(static_cast<size_t>(k), std::nullopt);
      std::vector<ZPoly> num(static_cast<size_t>(k));
      const ZPoly& den = work[k - 1][k - 1];
      num[static_cast<size_t>(k - 1)] = work[k - 1][k];
      for (int i = k - 2; i >= 0; --i) {
        ZPoly acc = zp_mul(work[i][k], den);
        for (int j = i + 1; j < k; ++j)
          acc = zp_sub(acc, zp_mul(work[i][j], num[static_cast<size_t>(j)]));
        num[static_cast<size_t>(i)] = zp_divexact(acc, work[i][i]);
      }
      for (int i = 0; i < k; ++i)
        if (!num[static_cast<size_t>(i)].is_zero())
          dep.vnum[static_cast<size_t>(i)] = num[static_cast<size_t>(i)].val;
      dep.vden = den.val;
      return dep;
    }
    if (p != r) std::swap(work[p], work[r]);
    const ZPoly piv = work[r][col];
    for (int i = r + 1; i < n; ++i) {
      const ZPoly f = work[i][col];
      if (f.is_zero()) {
        for (int j = col + 1; j < ncols; ++j)
          work[i][j] = zp_divexact(zp_mul(piv, work[i][j]), prev);
        continue;
      }
      for (int j = col + 1; j < ncols; ++j)
        work[i][j] =
            zp_divexact(zp_sub(zp_mul(piv, work[i][j]), zp_mul(f, work[r][j])), prev);
      work[i][col] = ZPoly();
    }
    prev = piv;
    ++r;
  }
  return std::nullopt;  // all columns independent
}

// Candidate cyclic vectors inside the span of the basis. Schedule: a z-power
// ladder, the basis vectors themselves, then seeded random small-integer
// combinations with z-power twists of growing width. Constant-coefficient
// combinations alone can miss (the trivial module has no constant cyclic
// vector), hence the twists.
Vector make_candidate(const std::vector<Vector>& basis, int t, std::mt19937_64& eng) {
  const int m = static_cast<int>(basis.size());
  const int n = static_cast<int>(basis[0].size());
  Vector w(n);
  auto axpy = [&](const LaurentScalar& c, const Vector& b) {
    for (int i = 0; i < n; ++i)
      if (!b[i].is_zero()) w[i] += c * b[i];
  };
  if (t == 0) {
    for (int j = 0; j < m; ++j) axpy(LaurentScalar::monomial(j, 1), basis[j]);
    return w;
  }
  if (t <= m) {
    return basis[t - 1];
  }
  const int width = 2 + (t - m) / 16;
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> pw(-width, width);
  bool nonzero = false;
  for (int j = 0; j < m; ++j) {
    const int c = coef(eng);
    const int d = (t % 2 == 0) ? pw(eng) : 0;
    if (c == 0) continue;
    nonzero = true;
    axpy(LaurentScalar::monomial(d, Rational(c)), basis[j]);
  }
  if (!nonzero) return basis[(t * 31 % m + m) % m];
  return w;
}

struct CandidateOutcome {
  int k;
  Rational slope;
  std::vector<Vector> iterates;
};

// Iterate D on w and locate the first dependency; the span of the basis must
// be D-invariant, so a dependency exists at k <= m.
CandidateOutcome try_candidate(const LaurentMatrix& a, const Vector& w, int m) {
  std::vector<Vector> its{w};
  its.reserve(m + 1);
  for (int i = 0; i < m; ++i) its.push_back(apply_d(a, its.back()));
  auto dep = first_dependency(its);
  if (!dep)
    fail(kInternalError, "iterates escaped an invariant subspace in cyclic search");
  return {dep->k, relation_slope(dep->vnum, dep->vden, dep->k), std::move(its)};
}

constexpr int kAmbientRandomRounds = 60;
constexpr int kSubspaceRandomRounds = 400;

// Largest slope of the D-submodule spanned by the basis. Never splits:
// cyclic vectors are generic, so the candidate schedule is expected to hit;
// exhaustion raises an internal error rather than risking an unsound value.
Rational subspace_slope(const LaurentMatrix& a, const std::vector<Vector>& basis,
                        std::mt19937_64& eng) {
  const int m = static_cast<int>(basis.size());
  if (m == 0) return Rational(0);
  for (int t = 0; t <= m + kSubspaceRandomRounds; ++t) {
    Vector w = make_candidate(basis, t, eng);
    if (is_zero_vec(w)) continue;
    CandidateOutcome out = try_candidate(a, w, m);
    if (out.k == m) return out.slope;
  }
  fail(kInternalError, "cyclic vector search exhausted in an invariant subspace");
}

// Largest slope of the full system z d/dz + A on a strongly connected block.
// If no candidate is cyclic, split along the best candidate's cyclic
// submodule W' and recurse on its annihilator under the dual operator: the
// annihilator is (ambient/W')^dual, and slopes are duality-invariant, so
// max(slope(W'), slope(annihilator)) is the ambient maximum.
Rational block_slope(const LaurentMatrix& a, std::mt19937_64& eng) {
  const int n = a.rows();
  if (n == 0) return Rational(0);
  std::vector<Vector> basis(n, Vector(n));
  for (int j = 0; j < n; ++j) basis[j][j] = LaurentScalar(1);

  std::optional<CandidateOutcome> bestout;
  for (int t = 0; t <= n + kAmbientRandomRounds; ++t) {
    Vector w = make_candidate(basis, t, eng);
    if (is_zero_vec(w)) continue;
    CandidateOutcome out = try_candidate(a, w, n);
    if (out.k == n) return out.slope;
    if (!bestout || out.k > bestout->k) bestout = std::move(out);
  }

  const int k = bestout->k;
  LaurentMatrix m(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) m.at(i, j) = bestout->iterates[j][i];
  auto ann = nullspace(m.transpose());
  if (static_cast<int>(ann.size()) != n - k)
    fail(kInternalError, "annihilator dimension mismatch in slope split");
  const Rational s1 = bestout->slope;
  const Rational s2 = subspace_slope(-a.transpose(), ann, eng);
  return max(s1, s2);
}

// Strongly connected components of the coefficient graph (edge j -> i when
// A[i][j] != 0), by Kosaraju's method with iterative traversals.
std::vector<std::vector<int>> scc_blocks(const LaurentMatrix& a) {
  const int n = a.rows();
  std::vector<std::vector<int>> adj(n), radj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !a.at(i, j).is_zero()) {
        adj[j].push_back(i);
        radj[i].push_back(j);
      }
  std::vector<int> order;
  std::vector<char> seen(n, 0);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<int, size_t>> stack{{s, 0}};
    seen[s] = 1;
    while (!stack.empty()) {
      auto& [u, it] = stack.back();
      if (it < adj[u].size()) {
        int v = adj[u][it++];
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back({v, 0});
        }
      } else {
        order.push_back(u);
        stack.pop_back();
      }
    }
  }
  std::vector<std::vector<int>> blocks;
  std::fill(seen.begin(), seen.end(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (seen[*it]) continue;
    std::vector<int> comp;
    std::vector<int> stack{*it};
    seen[*it] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (int v : radj[u])
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
    }
    std::sort(comp.begin(), comp.end());
    blocks.push_back(std::move(comp));
  }
  return blocks;
}

}  // namespace

Rational katz_newton_slope(const LaurentMatrix& a, std::uint64_t seed) {
  if (!a.is_square()) fail(kDimensionError, "slope oracle needs a square matrix");
  const int n = a.rows();
  if (n == 0) return Rational(0);
  Rational best(0);
  const auto blocks = scc_blocks(a);
  for (size_t b = 0; b < blocks.size(); ++b) {
    const auto& comp = blocks[b];
    LaurentMatrix sub(static_cast<int>(comp.size()), static_cast<int>(comp.size()));
    for (size_t i = 0; i < comp.size(); ++i)
      for (size_t j = 0; j < comp.size(); ++j)
        sub.at(static_cast<int>(i), static_cast<int>(j)) = a.at(comp[i], comp[j]);
    std::mt19937_64 eng(seed + 0x9e3779b97f4a7c15ULL * (b + 1));
    best = stratakit::max(best, block_slope(sub, eng));
  }
  return best;
}

long default_trace_horizon(const LaurentMatrix& a) {
  const int pole = std::max(0, -a.valuation().value_or(0));
  return std::max<long>(4, 4L * a.rows() * (1 + pole));
}

KatzTrace katz_boundedness_trace(const LaurentMatrix& a, const Rational& r,
                                 long horizon) {
  if (!a.is_square()) fail(kDimensionError, "trace diagnostic needs a square matrix");
  if (horizon < 1) fail(kParseError, "trace horizon must be at least 1");
  const int n = a.rows();
  KatzTrace tr;
  tr.r = r;
  tr.horizon = horizon;
  std::vector<Vector> vs(n, Vector(n));
  for (int j = 0; j < n; ++j) vs[j][j] = LaurentScalar(1);
  bool alive = n > 0;
  for (long i = 1; i <= horizon; ++i) {
    std::optional<long> s;
    if (alive) {
      alive = false;
      std::optional<int> minv;
      for (int j = 0; j < n; ++j) {
        vs[j] = apply_d(a, vs[j]);
        for (const auto& e : vs[j]) {
          auto ve = e.valuation();
          if (ve && (!minv || *ve < *minv)) minv = ve;
        }
        if (!is_zero_vec(vs[j])) alive = true;
      }
      if (minv) s = -static_cast<long>(*minv);
    }
    tr.s.push_back(s);
  }
  const long split = std::max<long>(1, horizon / 2);
  std::optional<Rational> early, late;
  for (long i = 1; i <= horizon; ++i) {
    const auto& s = tr.s[static_cast<size_t>(i - 1)];
    if (!s) continue;
    Rational t = Rational(*s) - r * Rational(i);
    auto& side = (i <= split) ? early : late;
    if (!side || t > *side) side = t;
  }
  tr.bounded = !late || (early && *late <= *early);
  return tr;
}

}  // namespace stratakit
