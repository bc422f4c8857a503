#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stratakit/laurent.hpp"

namespace stratakit {

// Dense matrix over the Laurent polynomial ring. Square in most library
// contexts; rectangular shapes are used by the internal linear algebra.
class LaurentMatrix {
public:
  LaurentMatrix() : rows_(0), cols_(0) {}
  LaurentMatrix(int rows, int cols);
  static LaurentMatrix identity(int n);
  // Single-entry constant matrix c * E_{i,j} of shape n x n.
  static LaurentMatrix unit(int n, int i, int j, const Rational& c = Rational(1));

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  LaurentScalar& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const LaurentScalar& at(int i, int j) const {
    return e_[static_cast<size_t>(i) * cols_ + j];
  }

  bool is_zero() const;
  // Min valuation over entries; disengaged for the zero matrix.
  std::optional<int> valuation() const;
  // Constant coefficient matrix of z^power.
  LaurentMatrix coefficient_matrix(int power) const;
  bool is_constant() const;

  LaurentMatrix transpose() const;
  LaurentScalar trace() const;
  LaurentMatrix tau() const;  // entrywise z d/dz
  LaurentMatrix scale_powers(int e) const;
  LaurentMatrix pow(int k) const;

  LaurentMatrix operator-() const;
  LaurentMatrix& operator+=(const LaurentMatrix& o);
  LaurentMatrix& operator-=(const LaurentMatrix& o);
  friend LaurentMatrix operator+(LaurentMatrix a, const LaurentMatrix& b) { return a += b; }
  friend LaurentMatrix operator-(LaurentMatrix a, const LaurentMatrix& b) { return a -= b; }
  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
  friend LaurentMatrix operator*(const LaurentScalar& c, const LaurentMatrix& a);
  friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b);
  friend bool operator!=(const LaurentMatrix& a, const LaurentMatrix& b) { return !(a == b); }

  std::vector<LaurentScalar> apply(const std::vector<LaurentScalar>& v) const;

  std::string str() const;

private:
  int rows_, cols_;
  std::vector<LaurentScalar> e_;
};

LaurentMatrix bracket(const LaurentMatrix& a, const LaurentMatrix& b);

// Determinant by fraction-free elimination; requires a square matrix.
LaurentScalar det(const LaurentMatrix& a);

int rank(const LaurentMatrix& a);

// Solution of A x = b for square nonsingular A, as numerators over a common
// denominator (x_i = num[i] / den with exact divisibility not guaranteed).
struct LinearSolution {
  std::vector<LaurentScalar> num;
  LaurentScalar den;
};
std::optional<LinearSolution> solve_square(const LaurentMatrix& a,
                                           const std::vector<LaurentScalar>& b);

// Basis of the right kernel, as Laurent polynomial vectors.
std::vector<std::vector<LaurentScalar>> nullspace(const LaurentMatrix& a);

// Exact inverse in the Laurent polynomial ring, when it exists there.
std::optional<LaurentMatrix> invert_exact(const LaurentMatrix& g);

// Inverse of an invertible matrix. Exact whenever the inverse has Laurent
// polynomial entries (always when det is a monomial); otherwise a series
// inverse truncated to powers <= window (default window: pole order + size
// + 4). Raises an invertibility error when det = 0.
struct InverseResult {
  LaurentMatrix inv;
  bool exact;
  int window;  // meaningful only when !exact
};
InverseResult invert_unit(const LaurentMatrix& g,
                          std::optional<int> window = std::nullopt);

}  // namespace stratakit
