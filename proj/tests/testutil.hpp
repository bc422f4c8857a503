#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "stratakit/slope_engine.hpp"

namespace testutil {

using namespace stratakit;

inline long random_int(std::mt19937_64& g, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(g);
}

inline Rational random_rational(std::mt19937_64& g, long bound = 5,
                                long maxden = 4) {
  return Rational(random_int(g, -bound, bound), random_int(g, 1, maxden));
}

inline LaurentScalar random_scalar(std::mt19937_64& g, int pmin = -3,
                                   int pmax = 3, int max_terms = 3,
                                   long bound = 5) {
  LaurentBuilder b;
  long k = random_int(g, 0, max_terms);
  for (long i = 0; i < k; ++i)
    b.add(static_cast<int>(random_int(g, pmin, pmax)),
          Rational(random_int(g, -bound, bound)));
  return b.build();
}

inline LaurentMatrix random_matrix(std::mt19937_64& g, int rows, int cols,
                                   int pmin = -3, int pmax = 3,
                                   int max_terms = 2, long bound = 5) {
  LaurentMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m.at(i, j) = random_scalar(g, pmin, pmax, max_terms, bound);
  return m;
}

// Random element of the Lie algebra, assembled from the torus and root basis
// so membership holds for every group kind.
inline LaurentMatrix random_lie(std::mt19937_64& g, const GroupData& gd,
                                int pmin = -2, int pmax = 1,
                                int max_terms = 2, long bound = 5) {
  LaurentMatrix m(gd.size, gd.size);
  for (int i = 0; i < gd.torus_basis_dim(); ++i)
    m += random_scalar(g, pmin, pmax, max_terms, bound) * gd.torus_basis(i);
  for (int i = 0; i < gd.root_count(); ++i)
    m += random_scalar(g, pmin, pmax, max_terms, bound) * gd.root_vector(i);
  return m;
}

// Unipotent gauge: a product of I + c z^k X_root factors; exact inverses
// exist for every kind.
inline GaugeElement random_unipotent_gauge(std::mt19937_64& g, GroupPtr gd,
                                           int factors = 3, int pmin = -1,
                                           int pmax = 1, long bound = 3) {
  LaurentMatrix m = LaurentMatrix::identity(gd->size);
  for (int f = 0; f < factors; ++f) {
    int idx = static_cast<int>(random_int(g, 0, gd->root_count() - 1));
    long c = random_int(g, -bound, bound);
    int k = static_cast<int>(random_int(g, pmin, pmax));
    LaurentMatrix factor = LaurentMatrix::identity(gd->size);
    factor += LaurentScalar::monomial(k, Rational(c)) * gd->root_vector(idx);
    m = m * factor;
  }
  return GaugeElement::make(gd, m);
}

// Monomial torus gauge diag(c_i z^{k_i}) respecting the group constraints.
inline GaugeElement random_torus_gauge(std::mt19937_64& g, GroupPtr gd,
                                       int kbound = 1, long cbound = 3) {
  const int n = gd->size;
  LaurentMatrix m(n, n);
  if (gd->kind == GroupKind::Sp) {
    for (int i = 0; i < gd->rank; ++i) {
      long c = random_int(g, 1, cbound) * (random_int(g, 0, 1) ? 1 : -1);
      int k = static_cast<int>(random_int(g, -kbound, kbound));
      m.at(i, i) = LaurentScalar::monomial(k, Rational(c));
      m.at(gd->rank + i, gd->rank + i) =
          LaurentScalar::monomial(-k, Rational(1, c));
    }
  } else {
    std::vector<long> ks(static_cast<size_t>(n), 0);
    Rational det(1);
    long ksum = 0;
    for (int i = 0; i + 1 < n; ++i) {
      long c = random_int(g, 1, cbound) * (random_int(g, 0, 1) ? 1 : -1);
      int k = static_cast<int>(random_int(g, -kbound, kbound));
      m.at(i, i) = LaurentScalar::monomial(k, Rational(c));
      det *= Rational(c);
      ksum += k;
      ks[static_cast<size_t>(i)] = k;
    }
    if (gd->kind == GroupKind::SL) {
      m.at(n - 1, n - 1) = LaurentScalar::monomial(static_cast<int>(-ksum),
                                                   Rational(1) / det);
    } else {
      long c = random_int(g, 1, cbound) * (random_int(g, 0, 1) ? 1 : -1);
      int k = static_cast<int>(random_int(g, -kbound, kbound));
      m.at(n - 1, n - 1) = LaurentScalar::monomial(k, Rational(c));
    }
  }
  return GaugeElement::make(gd, m);
}

// Example connection families used across the test suites.

// GL2: z^{-r} E12 + z^{-r+1} E21.
inline LaurentMatrix airy_matrix(int r) {
  LaurentMatrix a(2, 2);
  a.at(0, 1) = LaurentScalar::monomial(-r, 1);
  a.at(1, 0) = LaurentScalar::monomial(-r + 1, 1);
  return a;
}

// SL3: (z^{-1} E12 + E21) z^{-m}.
inline LaurentMatrix sl3_line_example(int m) {
  LaurentMatrix a(3, 3);
  a.at(0, 1) = LaurentScalar::monomial(-1 - m, 1);
  a.at(1, 0) = LaurentScalar::monomial(-m, 1);
  return a;
}

// SL_n: z^{-m} (z^{-1} E_{1,n-1} + sum_{i=1}^{n-2} E_{i+1,i}).
inline LaurentMatrix sln_line_example(int n, int m) {
  LaurentMatrix a(n, n);
  a.at(0, n - 2) = LaurentScalar::monomial(-1 - m, 1);
  for (int i = 0; i + 2 < n; ++i)
    a.at(i + 1, i) = LaurentScalar::monomial(-m, 1);
  return a;
}

// z^{-m} (z^{-1} X_{highest} + sum_i X_{-alpha_i}), any group kind.
inline LaurentMatrix coxeter_primary(const GroupData& g, int m) {
  LaurentMatrix a = LaurentScalar::monomial(-1 - m, 1) * g.root_vector(g.highest);
  for (int s : g.simple)
    a += LaurentScalar::monomial(-m, 1) * g.root_vector(g.negative_of(s));
  return a;
}

// z^{-m} (X_{-highest} + z^{-1} sum_i X_{alpha_i}), homogeneous of degree
// -(h-1)/h at the alcove barycenter.
inline LaurentMatrix coxeter_variant(const GroupData& g, int m) {
  LaurentMatrix a =
      LaurentScalar::monomial(-m, 1) * g.root_vector(g.negative_of(g.highest));
  for (int s : g.simple)
    a += LaurentScalar::monomial(-1 - m, 1) * g.root_vector(s);
  return a;
}

// Sp4: z^{-m} (z^{-1}(E13 - E24) + E31 + E42).
inline LaurentMatrix sp4_example(int m) {
  LaurentMatrix a(4, 4);
  a.at(0, 2) = LaurentScalar::monomial(-1 - m, 1);
  a.at(1, 3) = LaurentScalar::monomial(-1 - m, -1);
  a.at(2, 0) = LaurentScalar::monomial(-m, 1);
  a.at(3, 1) = LaurentScalar::monomial(-m, 1);
  return a;
}

// Alcove barycenter of SL_n / GL_n in sum-zero coordinates.
inline ApartmentPoint sl_barycenter(int n) {
  ApartmentPoint x;
  for (int i = 1; i <= n; ++i)
    x.coords.push_back(Rational(n + 1 - 2 * i, 2 * static_cast<long>(n)));
  return x;
}

inline GaugeElement random_gauge(std::mt19937_64& g, GroupPtr gd) {
  switch (random_int(g, 0, 2)) {
    case 0:
      return random_unipotent_gauge(g, gd);
    case 1:
      return random_torus_gauge(g, gd);
    default:
      return compose(random_unipotent_gauge(g, gd, 2),
                     random_torus_gauge(g, gd));
  }
}

}  // namespace testutil
