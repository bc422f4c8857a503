#include "stratakit/filtration.hpp"

#include <algorithm>
#include <map>

namespace stratakit {

ConnectionMatrix::ConnectionMatrix(GroupPtr group, LaurentMatrix a)
    : group_(std::move(group)), mat_(std::move(a)) {
  if (!group_) fail(kInternalError, "connection without a group");
  group_->check_lie_membership(mat_);
}

std::vector<GradedComponent> graded_decompose(const GroupData& g,
                                              const LaurentMatrix& a,
                                              const ApartmentPoint& x) {
  validate_point(g, x);
  RootDecomposition d = root_decompose(g, a);
  std::map<Rational, LaurentMatrix> buckets;
  auto bucket = [&](const Rational& deg) -> LaurentMatrix& {
    auto it = buckets.find(deg);
    if (it == buckets.end())
      it = buckets.emplace(deg, LaurentMatrix(g.size, g.size)).first;
    return it->second;
  };

  for (int i = 0; i < g.rank; ++i) {
    for (const auto& [m, c] : d.torus[i].terms()) {
      std::vector<LaurentScalar> t(g.rank);
      t[i] = LaurentScalar::monomial(m, c);
      bucket(Rational(m)) += g.embed_torus(t);
    }
  }
  for (int k = 0; k < g.root_count(); ++k) {
    if (d.root_coeff[k].is_zero()) continue;
    const Rational alpha_x = eval_root(g, k, x);
    const LaurentMatrix xa = g.root_vector(k);
    for (const auto& [m, c] : d.root_coeff[k].terms())
      bucket(alpha_x + Rational(m)) += LaurentScalar::monomial(m, c) * xa;
  }

  std::vector<GradedComponent> out;
  out.reserve(buckets.size());
  for (auto& [deg, part] : buckets)
    if (!part.is_zero()) out.push_back({deg, std::move(part)});
  return out;
}

CriticalSet critical_numbers(const GroupData& g, const ApartmentPoint& x,
                             const Rational& bound) {
  validate_point(g, x);
  if (bound.sign() < 0) fail(kParseError, "critical number bound must be nonnegative");
  std::vector<Rational> residues{Rational(0)};
  for (int k = 0; k < g.root_count(); ++k) residues.push_back(eval_root(g, k, x).frac());
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());

  CriticalSet cs;
  cs.bound = bound;
  for (const auto& r : residues) {
    // r + k within [-bound, bound]
    Rational k = (-bound - r).ceil();
    for (; r + k <= bound; k += Rational(1)) cs.values.push_back(r + k);
  }
  std::sort(cs.values.begin(), cs.values.end());
  cs.values.erase(std::unique(cs.values.begin(), cs.values.end()), cs.values.end());
  return cs;
}

Rational depth_at(const ConnectionMatrix& a, const ApartmentPoint& x) {
  const GroupData& g = a.group();
  LaurentMatrix b = a.mat() - embed_point(g, x);
  auto comps = graded_decompose(g, b, x);
  if (comps.empty()) return Rational(0);
  return max(Rational(0), -comps.front().degree);
}

}  // namespace stratakit
