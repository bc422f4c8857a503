#include "stratakit/group.hpp"

#include <algorithm>

namespace stratakit {

std::string kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::GL: return "GL";
    case GroupKind::SL: return "SL";
    case GroupKind::Sp: return "Sp";
  }
  fail(kInternalError, "unknown group kind");
}

GroupKind kind_from_name(const std::string& s) {
  if (s == "GL") return GroupKind::GL;
  if (s == "SL") return GroupKind::SL;
  if (s == "Sp") return GroupKind::Sp;
  fail(kParseError, "unknown group kind '" + s + "' (expected GL, SL, or Sp)");
}

std::shared_ptr<const GroupData> GroupData::build(GroupKind kind, int size) {
  if (size < 1) fail(kDimensionError, "group size must be positive");
  if (kind == GroupKind::Sp && size % 2 != 0)
    fail(kDimensionError, "Sp needs an even matrix size");
  if (kind == GroupKind::SL && size < 2)
    fail(kDimensionError, "SL needs size at least 2");

  auto g = std::shared_ptr<GroupData>(new GroupData());
  g->kind = kind;
  g->size = size;

  // Coordinate vector of e_i - e_j.
  auto functional = [](int rank, int i, int j) {
    std::vector<int> c(rank, 0);
    c[i] += 1;
    c[j] -= 1;
    return c;
  };

  if (kind == GroupKind::GL || kind == GroupKind::SL) {
    const int n = size;
    g->rank = n;
    g->coxeter_number = (kind == GroupKind::GL && n == 1) ? 1 : n;
    // Positive roots e_i - e_j for i < j, ordered lexicographically.
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        RootFunctional r;
        r.coeffs = functional(n, i, j);
        r.entries = {{i, j, 1}};
        g->roots.push_back(std::move(r));
      }
    g->num_positive = static_cast<int>(g->roots.size());
    for (int k = 0; k < g->num_positive; ++k) {
      RootFunctional r;
      r.coeffs.resize(n);
      for (int t = 0; t < n; ++t) r.coeffs[t] = -g->roots[k].coeffs[t];
      auto [i, j, s] = g->roots[k].entries[0];
      r.entries = {{j, i, s}};
      g->roots.push_back(std::move(r));
    }
  } else {
    const int n = size / 2;
    g->rank = n;
    g->coxeter_number = 2 * n;
    // Positive roots: e_i - e_j (i < j), e_i + e_j (i < j), 2 e_i.
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        RootFunctional r;
        r.coeffs = functional(n, i, j);
        r.entries = {{i, j, 1}, {n + j, n + i, -1}};
        g->roots.push_back(std::move(r));
      }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        RootFunctional r;
        r.coeffs.assign(n, 0);
        r.coeffs[i] += 1;
        r.coeffs[j] += 1;
        r.entries = {{i, n + j, 1}, {j, n + i, 1}};
        g->roots.push_back(std::move(r));
      }
    for (int i = 0; i < n; ++i) {
      RootFunctional r;
      r.coeffs.assign(n, 0);
      r.coeffs[i] = 2;
      r.entries = {{i, n + i, 1}};
      g->roots.push_back(std::move(r));
    }
    g->num_positive = static_cast<int>(g->roots.size());
    for (int k = 0; k < g->num_positive; ++k) {
      RootFunctional r;
      r.coeffs.resize(n);
      for (int t = 0; t < n; ++t) r.coeffs[t] = -g->roots[k].coeffs[t];
      for (auto [i, j, s] : g->roots[k].entries) r.entries.push_back({j, i, s});
      g->roots.push_back(std::move(r));
    }
  }

  auto find_root = [&](const std::vector<int>& c) {
    for (int k = 0; k < g->root_count(); ++k)
      if (g->roots[k].coeffs == c) return k;
    fail(kInternalError, "root table misses an expected functional");
  };

  if (kind == GroupKind::GL || kind == GroupKind::SL) {
    const int n = size;
    if (n >= 2) {
      for (int i = 0; i + 1 < n; ++i) g->simple.push_back(find_root(functional(n, i, i + 1)));
      g->highest = find_root(functional(n, 0, n - 1));
    } else {
      g->highest = -1;
    }
  } else {
    const int n = size / 2;
    for (int i = 0; i + 1 < n; ++i) g->simple.push_back(find_root(functional(n, i, i + 1)));
    std::vector<int> last(n, 0);
    last[n - 1] = 2;
    g->simple.push_back(find_root(last));
    std::vector<int> high(n, 0);
    high[0] = 2;
    g->highest = find_root(high);
  }

  return g;
}

LaurentMatrix GroupData::root_vector(int idx) const {
  if (idx < 0 || idx >= root_count()) fail(kInternalError, "root index out of range");
  LaurentMatrix m(size, size);
  for (auto [i, j, s] : roots[idx].entries) m.at(i, j) = LaurentScalar(Rational(s));
  return m;
}

int GroupData::torus_basis_dim() const {
  switch (kind) {
    case GroupKind::GL: return rank;
    case GroupKind::SL: return rank - 1;
    case GroupKind::Sp: return rank;
  }
  fail(kInternalError, "unknown group kind");
}

LaurentMatrix GroupData::torus_basis(int i) const {
  if (i < 0 || i >= torus_basis_dim()) fail(kInternalError, "torus basis index out of range");
  LaurentMatrix m(size, size);
  switch (kind) {
    case GroupKind::GL:
      m.at(i, i) = LaurentScalar(1);
      break;
    case GroupKind::SL:
      m.at(i, i) = LaurentScalar(1);
      m.at(i + 1, i + 1) = LaurentScalar(-1);
      break;
    case GroupKind::Sp:
      m.at(i, i) = LaurentScalar(1);
      m.at(rank + i, rank + i) = LaurentScalar(-1);
      break;
  }
  return m;
}

std::vector<int> GroupData::coroot(int idx) const {
  const auto& c = roots[idx].coeffs;
  std::vector<int> cr(rank, 0);
  if (kind == GroupKind::GL || kind == GroupKind::SL) {
    // (e_i - e_j)^vee has the same coordinates.
    cr = c;
  } else {
    // C_n: (e_i - e_j)^vee = e_i - e_j, (e_i + e_j)^vee = e_i + e_j (i != j),
    // (2 e_i)^vee = e_i.
    int twos = 0;
    for (int t = 0; t < rank; ++t) twos += (c[t] == 2 || c[t] == -2) ? 1 : 0;
    if (twos == 1) {
      for (int t = 0; t < rank; ++t) cr[t] = c[t] / 2;
    } else {
      cr = c;
    }
  }
  return cr;
}

LaurentMatrix GroupData::embed_torus(const std::vector<LaurentScalar>& t) const {
  if (static_cast<int>(t.size()) != rank)
    fail(kDimensionError, "torus coordinate count mismatch");
  LaurentMatrix m(size, size);
  for (int i = 0; i < rank; ++i) {
    m.at(i, i) = t[i];
    if (kind == GroupKind::Sp) m.at(rank + i, rank + i) = -t[i];
  }
  return m;
}

LaurentMatrix GroupData::symplectic_form() const {
  if (kind != GroupKind::Sp) fail(kCapabilityError, "symplectic form requested for a non-Sp group");
  const int n = rank;
  LaurentMatrix j(size, size);
  for (int i = 0; i < n; ++i) {
    j.at(i, n + i) = LaurentScalar(1);
    j.at(n + i, i) = LaurentScalar(-1);
  }
  return j;
}

void GroupData::check_lie_membership(const LaurentMatrix& a) const {
  if (a.rows() != size || a.cols() != size)
    fail(kDimensionError, "matrix size " + std::to_string(a.rows()) + "x" +
                              std::to_string(a.cols()) + " does not match " +
                              kind_name(kind) + " of size " + std::to_string(size));
  switch (kind) {
    case GroupKind::GL:
      return;
    case GroupKind::SL:
      if (!a.trace().is_zero())
        fail(kMembershipError, "matrix has nonzero trace, not in the SL Lie algebra");
      return;
    case GroupKind::Sp: {
      LaurentMatrix j = symplectic_form();
      if (!(a.transpose() * j + j * a).is_zero())
        fail(kMembershipError, "matrix violates the symplectic Lie algebra condition");
      return;
    }
  }
}

void GroupData::check_group_membership(const LaurentMatrix& g) const {
  if (g.rows() != size || g.cols() != size)
    fail(kDimensionError, "gauge matrix size does not match the group");
  switch (kind) {
    case GroupKind::GL: {
      LaurentScalar d = det(g);
      if (d.is_zero() || !d.is_monomial())
        fail(kMembershipError,
             "GL gauge needs a nonzero monomial determinant, got " + d.str());
      return;
    }
    case GroupKind::SL: {
      LaurentScalar d = det(g);
      if (!(d == LaurentScalar(1)))
        fail(kMembershipError, "SL gauge needs determinant 1, got " + d.str());
      return;
    }
    case GroupKind::Sp: {
      LaurentMatrix j = symplectic_form();
      if (!(g.transpose() * j * g == j))
        fail(kMembershipError, "gauge matrix does not preserve the symplectic form");
      return;
    }
  }
}

LaurentScalar GroupData::pairing(const LaurentMatrix& a, const LaurentMatrix& b) const {
  return (a * b).trace();
}

RootDecomposition root_decompose(const GroupData& g, const LaurentMatrix& a) {
  g.check_lie_membership(a);
  RootDecomposition d;
  d.torus.resize(g.rank);
  for (int i = 0; i < g.rank; ++i) d.torus[i] = a.at(i, i);
  d.root_coeff.resize(g.root_count());
  for (int k = 0; k < g.root_count(); ++k) {
    // The first listed entry determines the coefficient; membership makes the
    // partner entries consistent automatically.
    auto [i, j, s] = g.roots[k].entries[0];
    d.root_coeff[k] = (s == 1) ? a.at(i, j) : -a.at(i, j);
  }
  return d;
}

LaurentMatrix reassemble(const GroupData& g, const RootDecomposition& d) {
  if (static_cast<int>(d.torus.size()) != g.rank ||
      static_cast<int>(d.root_coeff.size()) != g.root_count())
    fail(kDimensionError, "decomposition component counts do not match the group");
  LaurentMatrix m = g.embed_torus(d.torus);
  for (int k = 0; k < g.root_count(); ++k) {
    if (d.root_coeff[k].is_zero()) continue;
    m += d.root_coeff[k] * g.root_vector(k);
  }
  return m;
}

}  // namespace stratakit
