#include "stratakit/slope_engine.hpp"

#include <algorithm>
#include <sstream>

namespace stratakit {

namespace {

// Coordinates of a Lie algebra element in the adjoint basis (torus basis
// first, then root vectors in group order).
std::vector<LaurentScalar> adjoint_coordinates(const GroupData& g,
                                               const LaurentMatrix& y) {
  RootDecomposition d = root_decompose(g, y);
  std::vector<LaurentScalar> out;
  out.reserve(g.torus_basis_dim() + g.root_count());
  switch (g.kind) {
    case GroupKind::GL:
    case GroupKind::Sp:
      for (int i = 0; i < g.torus_basis_dim(); ++i) out.push_back(d.torus[i]);
      break;
    case GroupKind::SL: {
      LaurentScalar acc;
      for (int i = 0; i < g.rank - 1; ++i) {
        acc += d.torus[i];
        out.push_back(acc);
      }
      break;
    }
  }
  for (int k = 0; k < g.root_count(); ++k) out.push_back(d.root_coeff[k]);
  return out;
}

}  // namespace

LaurentMatrix adjoint_matrix(const ConnectionMatrix& a) {
  const GroupData& g = a.group();
  const int dim = g.torus_basis_dim() + g.root_count();
  LaurentMatrix ad(dim, dim);
  int col = 0;
  auto put_col = [&](const LaurentMatrix& basis_elem) {
    auto coords = adjoint_coordinates(g, bracket(a.mat(), basis_elem));
    for (int i = 0; i < dim; ++i) ad.at(i, col) = coords[i];
    ++col;
  };
  for (int i = 0; i < g.torus_basis_dim(); ++i) put_col(g.torus_basis(i));
  for (int k = 0; k < g.root_count(); ++k) put_col(g.root_vector(k));
  return ad;
}

std::vector<Rational> character_slopes(const ConnectionMatrix& a) {
  if (a.group().kind != GroupKind::GL) return {};
  LaurentScalar tr = a.mat().trace();
  auto v = tr.valuation();
  Rational s(0);
  if (v && *v < 0) s = Rational(-static_cast<long>(*v));
  return {s};
}

namespace {

Rational certified_slope_value(const ConnectionMatrix& a, std::uint64_t seed,
                               std::vector<MethodValue>* methods) {
  const Rational s_adj = katz_newton_slope(adjoint_matrix(a), seed);
  Rational s = s_adj;
  std::string char_str = "-";
  for (const Rational& c : character_slopes(a)) {
    char_str = c.str();
    if (c > s) s = c;
  }
  if (methods) {
    methods->push_back({"adjoint_newton", s_adj.str()});
    methods->push_back({"character", char_str});
  }
  if (a.group().kind == GroupKind::GL) {
    const Rational s_def = katz_newton_slope(a.mat(), seed);
    if (methods) methods->push_back({"defining_newton", s_def.str()});
    if (s_def != s)
      fail(kInternalError,
           "slope routes disagree: defining representation gives " + s_def.str() +
               ", adjoint/character gives " + s.str());
  }
  return s;
}

// Constant gauge putting a nilpotent constant matrix in strictly upper
// triangular position, built from the generalized kernel flag. SL elements
// are determinant-normalized; for Sp the basis is kept only when it happens
// to preserve the form.
std::optional<GaugeElement> triangularize_nilpotent(GroupPtr group,
                                                    const LaurentMatrix& c) {
  const GroupData& g = *group;
  const int n = g.size;
  if (!c.pow(n).is_zero()) return std::nullopt;
  if (c.is_zero()) return GaugeElement::identity(group);

  std::vector<std::vector<LaurentScalar>> flag;
  LaurentMatrix cp = LaurentMatrix::identity(n);
  for (int i = 1; i <= n && static_cast<int>(flag.size()) < n; ++i) {
    cp = cp * c;
    for (auto& v : nullspace(cp)) {
      // Keep v only if independent from the current flag.
      LaurentMatrix test(n, static_cast<int>(flag.size()) + 1);
      for (size_t j = 0; j < flag.size(); ++j)
        for (int t = 0; t < n; ++t) test.at(t, static_cast<int>(j)) = flag[j][t];
      for (int t = 0; t < n; ++t) test.at(t, static_cast<int>(flag.size())) = v[t];
      if (rank(test) == static_cast<int>(flag.size()) + 1) flag.push_back(v);
      if (static_cast<int>(flag.size()) == n) break;
    }
  }
  if (static_cast<int>(flag.size()) != n) return std::nullopt;

  LaurentMatrix p(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) p.at(i, j) = flag[j][i];
  if (g.kind == GroupKind::SL) {
    LaurentScalar d = det(p);
    if (d.is_zero()) return std::nullopt;
    if (!d.is_constant()) return std::nullopt;
    const Rational dval = d.coefficient(0);
    for (int i = 0; i < n; ++i) {
      LaurentScalar scaled = p.at(i, 0);
      p.at(i, 0) = LaurentScalar(Rational(1) / dval) * scaled;
    }
  }
  auto pinv = invert_exact(p);
  if (!pinv) return std::nullopt;
  try {
    return GaugeElement::make(group, *pinv);
  } catch (const Error&) {
    return std::nullopt;
  }
}

bool coords_integral(const ApartmentPoint& x) {
  return std::all_of(x.coords.begin(), x.coords.end(),
                     [](const Rational& c) { return c.is_integer(); });
}

// Diagonal monomial element translating an integral point to the origin.
GaugeElement translation_gauge(GroupPtr group, const ApartmentPoint& x) {
  const GroupData& g = *group;
  LaurentMatrix t(g.size, g.size);
  for (int i = 0; i < g.rank; ++i) {
    const long a = x.coords[i].to_long();
    t.at(i, i) = LaurentScalar::monomial(static_cast<int>(a), 1);
    if (g.kind == GroupKind::Sp)
      t.at(g.rank + i, g.rank + i) = LaurentScalar::monomial(static_cast<int>(-a), 1);
  }
  return GaugeElement::make(group, t);
}

}  // namespace

SearchResult stratum_search(const ConnectionMatrix& a, const Rational& target,
                            std::uint64_t seed) {
  (void)seed;
  SearchResult res;
  const GroupData& g = a.group();
  const auto pts = optimal_points(g);
  ConnectionMatrix cur = a;
  GaugeElement g_total = GaugeElement::identity(a.group_ptr());
  std::optional<Rational> prev_min;

  for (int iter = 0; iter < 64; ++iter) {
    res.iterations = iter + 1;
    std::vector<Rational> depths;
    depths.reserve(pts.size());
    for (const auto& x : pts) depths.push_back(depth_at(cur, x));
    if (iter == 0) {
      for (size_t i = 0; i < pts.size(); ++i) res.depth_map.push_back({pts[i], depths[i]});
    }
    size_t imin = 0;
    for (size_t i = 1; i < pts.size(); ++i)
      if (depths[i] < depths[imin]) imin = i;
    const Rational dmin = depths[imin];
    ApartmentPoint xmin = pts[imin];

    if (dmin < target)
      fail(kInternalError, "depth " + dmin.str() + " at " + point_str(xmin) +
                               " undercuts the certified slope " + target.str());

    if (dmin == target) {
      Stratum s = leading_representative(cur, xmin);
      const bool fund_ok = target.sign() == 0 || is_fundamental(s);
      const bool cont_ok = contains(cur, s);
      if (!fund_ok || !cont_ok) {
        res.diagnostics.push_back(
            "candidate stratum at " + point_str(xmin) +
            " failed certification (fundamental=" + (fund_ok ? "yes" : "no") +
            ", contains=" + (cont_ok ? "yes" : "no") + ")");
        return res;
      }
      res.stratum = std::move(s);
      if (!g_total.is_identity()) res.gauge = g_total;
      return res;
    }

    if (prev_min && !(dmin < *prev_min)) {
      res.diagnostics.push_back("reduction stalled at depth " + dmin.str() +
                                " (target " + target.str() + ")");
      return res;
    }
    prev_min = dmin;

    Stratum s0 = leading_representative(cur, xmin);
    if (is_fundamental(s0))
      fail(kInternalError, "fundamental stratum of depth " + dmin.str() +
                               " above the certified slope " + target.str());

    if (!is_origin(xmin)) {
      if (!coords_integral(xmin)) {
        res.diagnostics.push_back(
            "nonfundamental minimizer at non-integral point " + point_str(xmin) +
            "; no reduction move available");
        return res;
      }
      GaugeElement tr = translation_gauge(a.group_ptr(), xmin);
      cur = gauge_transform(cur, tr);
      g_total = compose(tr, g_total);
      xmin = origin_point(g);
      s0 = leading_representative(cur, xmin);
      if (s0.depth() != dmin)
        fail(kInternalError, "translation changed the minimal depth");
    }

    // At the origin the depth is an integer and the representative is
    // z^{-r} C for a constant nilpotent C.
    if (!s0.depth().is_integer())
      fail(kInternalError, "non-integer depth at the origin");
    const int r0 = static_cast<int>(s0.depth().to_long());
    LaurentMatrix c0 = s0.rep().coefficient_matrix(-r0);
    if (!(LaurentScalar::monomial(-r0, 1) * c0 == s0.rep()))
      fail(kInternalError, "origin representative is not concentrated in one power");
    auto tri = triangularize_nilpotent(a.group_ptr(), c0);
    if (!tri) {
      res.diagnostics.push_back(
          "no group-compatible triangularization for the leading coefficient at depth " +
          dmin.str());
      return res;
    }
    cur = gauge_transform(cur, *tri);
    g_total = compose(*tri, g_total);
  }
  res.diagnostics.push_back("reduction move limit reached");
  return res;
}

Rational certified_slope(const ConnectionMatrix& a, std::uint64_t seed) {
  return certified_slope_value(a, seed, nullptr);
}

SlopeReport slope(const ConnectionMatrix& a, std::uint64_t seed) {
  SlopeReport rep;
  rep.slope = certified_slope_value(a, seed, &rep.methods);
  rep.regular_singular = rep.slope.sign() == 0;
  SearchResult sr = stratum_search(a, rep.slope, seed);
  rep.stratum = std::move(sr.stratum);
  rep.gauge = std::move(sr.gauge);
  rep.depth_map = std::move(sr.depth_map);
  rep.diagnostics = std::move(sr.diagnostics);
  rep.methods.push_back(
      {"stratum_search", rep.stratum ? rep.stratum->depth().str() : "absent"});
  return rep;
}

bool is_regular_singular(const ConnectionMatrix& a, std::uint64_t seed) {
  return certified_slope_value(a, seed, nullptr).sign() == 0;
}

FundamentalizeResult fundamentalize_depth_zero(const ConnectionMatrix& a,
                                               const Stratum& s) {
  FundamentalizeResult out;
  if (s.depth().sign() != 0)
    fail(kCapabilityError, "fundamentalization applies to depth-zero strata only");
  if (!contains(a, s))
    fail(kVerificationError, "connection does not contain the given stratum");
  if (is_fundamental(s)) {
    out.stratum = s;
    out.diagnostics.push_back("stratum already fundamental");
    return out;
  }
  const GroupData& g = s.group();
  const ApartmentPoint& x = s.point();

  // Integral-root subsystem at the point: must have full semisimple rank
  // (minimal facet condition).
  std::vector<int> integral;
  for (int k = 0; k < g.root_count(); ++k)
    if (eval_root(g, k, x).is_integer()) integral.push_back(k);
  const int ss_rank = (g.kind == GroupKind::Sp) ? g.rank : g.rank - 1;
  {
    LaurentMatrix coeffs(static_cast<int>(integral.size()), g.rank);
    for (size_t i = 0; i < integral.size(); ++i)
      for (int j = 0; j < g.rank; ++j)
        coeffs.at(static_cast<int>(i), j) =
            LaurentScalar(Rational(g.roots[integral[i]].coeffs[j]));
    if (rank(coeffs) < ss_rank)
      fail(kVerificationError,
           "point is not on a minimal facet: integral roots span rank " +
               std::to_string(rank(coeffs)) + " < " + std::to_string(ss_rank));
  }

  // Constant strip of the representative: torus part is constant, each root
  // part is a monomial at power -alpha(x).
  RootDecomposition d = root_decompose(g, s.rep());
  std::vector<LaurentScalar> torus_const(g.rank);
  for (int i = 0; i < g.rank; ++i) {
    if (!d.torus[i].is_constant())
      fail(kInternalError, "depth-zero torus part is not constant");
    torus_const[i] = d.torus[i];
  }
  LaurentMatrix c = g.embed_torus(torus_const);
  for (int k = 0; k < g.root_count(); ++k) {
    if (d.root_coeff[k].is_zero()) continue;
    const Rational av = eval_root(g, k, x);
    const int m = static_cast<int>((-av).to_long());
    c += LaurentScalar(d.root_coeff[k].coefficient(m)) * g.root_vector(k);
  }
  if (!c.pow(g.size).is_zero())
    fail(kInternalError, "nonfundamental depth-zero stratum with nonnilpotent strip");

  auto tri0 = triangularize_nilpotent(s.group_ptr(), c);
  if (!tri0) {
    out.diagnostics.push_back(
        "no group-compatible triangularization of the constant strip");
    return out;
  }
  // Conjugate the constant triangularization through the z^x twist so the
  // move respects the filtration at x: entry (i,j) picks up z^{w_j - w_i}
  // with w the diagonal weight pattern of the point. On a minimal facet the
  // needed exponents are root values, hence integral; nonintegral exponents
  // under a nonzero entry mean no move is available.
  GaugeElement move = *tri0;
  if (!is_origin(x)) {
    std::vector<Rational> w(g.size);
    for (int i = 0; i < g.rank; ++i) {
      w[i] = x.coords[i];
      if (g.kind == GroupKind::Sp) w[g.rank + i] = -x.coords[i];
    }
    LaurentMatrix twisted(g.size, g.size);
    for (int i = 0; i < g.size; ++i)
      for (int j = 0; j < g.size; ++j) {
        const LaurentScalar& e = tri0->mat().at(i, j);
        if (e.is_zero()) continue;
        const Rational shift = w[j] - w[i];
        if (!shift.is_integer()) {
          out.diagnostics.push_back(
              "twist exponent " + shift.str() + " at entry (" + std::to_string(i) +
              "," + std::to_string(j) + ") is not integral; no move available");
          return out;
        }
        twisted.at(i, j) =
            LaurentScalar::monomial(static_cast<int>(shift.to_long()), 1) * e;
      }
    try {
      move = GaugeElement::make(s.group_ptr(), twisted);
    } catch (const Error&) {
      out.diagnostics.push_back("twisted triangularization left the group");
      return out;
    }
  }

  ConnectionMatrix a1 = gauge_transform(a, move);

  // Perturbation direction: half-sum of the positive integral coroots.
  std::vector<Rational> delta(g.rank);
  for (int k : integral) {
    if (g.is_negative_index(k)) continue;
    auto cr = g.coroot(k);
    for (int i = 0; i < g.rank; ++i) delta[i] += Rational(cr[i], 2);
  }

  const long h = g.coxeter_number;
  for (long denom : {2 * h, 4 * h}) {
    std::vector<Rational> coords(g.rank);
    for (int i = 0; i < g.rank; ++i)
      coords[i] = x.coords[i] + delta[i] / Rational(denom);
    ApartmentPoint xe{coords};
    Stratum cand = leading_representative(a1, xe);
    if (cand.depth().sign() == 0 && is_fundamental(cand) && contains(a1, cand)) {
      out.stratum = std::move(cand);
      if (!move.is_identity()) out.gauge = move;
      return out;
    }
    out.diagnostics.push_back("candidate at " + point_str(xe) + " has depth " +
                              cand.depth().str() + ", fundamental=" +
                              (is_fundamental(cand) ? "yes" : "no"));
  }
  out.diagnostics.push_back("no fundamental depth-zero stratum found near " +
                            point_str(x));
  return out;
}

ConnectionMatrix pullback_connection(const ConnectionMatrix& a, int e) {
  if (e < 1) fail(kParseError, "pullback degree must be at least 1");
  LaurentMatrix m = LaurentScalar(Rational(e)) * a.mat().scale_powers(e);
  return ConnectionMatrix(a.group_ptr(), std::move(m));
}

std::optional<Rational> frenkel_gross_check(const ConnectionMatrix& a_cover, int e) {
  if (e < 1) fail(kParseError, "cover degree must be at least 1");
  auto v = a_cover.mat().valuation();
  if (!v || *v >= 0) return std::nullopt;
  LaurentMatrix lead = a_cover.mat().coefficient_matrix(*v);
  if (lead.pow(a_cover.group().size).is_zero()) return std::nullopt;
  return Rational(-static_cast<long>(*v), static_cast<long>(e));
}

}  // namespace stratakit
