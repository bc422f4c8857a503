#include "stratakit/laurent_matrix.hpp"

#include <algorithm>
#include <sstream>

namespace stratakit {

LaurentMatrix::LaurentMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) fail(kDimensionError, "negative matrix shape");
  e_.resize(static_cast<size_t>(rows) * cols);
}

LaurentMatrix LaurentMatrix::identity(int n) {
  LaurentMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = LaurentScalar(1);
  return m;
}

LaurentMatrix LaurentMatrix::unit(int n, int i, int j, const Rational& c) {
  LaurentMatrix m(n, n);
  m.at(i, j) = LaurentScalar(c);
  return m;
}

bool LaurentMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(),
                     [](const LaurentScalar& s) { return s.is_zero(); });
}

std::optional<int> LaurentMatrix::valuation() const {
  std::optional<int> v;
  for (const auto& s : e_) {
    auto vs = s.valuation();
    if (vs && (!v || *vs < *v)) v = vs;
  }
  return v;
}

LaurentMatrix LaurentMatrix::coefficient_matrix(int power) const {
  LaurentMatrix m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      m.at(i, j) = LaurentScalar(at(i, j).coefficient(power));
  return m;
}

bool LaurentMatrix::is_constant() const {
  return std::all_of(e_.begin(), e_.end(),
                     [](const LaurentScalar& s) { return s.is_constant(); });
}

LaurentMatrix LaurentMatrix::transpose() const {
  LaurentMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

LaurentScalar LaurentMatrix::trace() const {
  if (!is_square()) fail(kDimensionError, "trace of a non-square matrix");
  LaurentScalar t;
  for (int i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

LaurentMatrix LaurentMatrix::tau() const {
  LaurentMatrix m(rows_, cols_);
  for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k].tau();
  return m;
}

LaurentMatrix LaurentMatrix::scale_powers(int e) const {
  LaurentMatrix m(rows_, cols_);
  for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k].scale_powers(e);
  return m;
}

LaurentMatrix LaurentMatrix::pow(int k) const {
  if (!is_square()) fail(kDimensionError, "power of a non-square matrix");
  if (k < 0) fail(kCapabilityError, "negative matrix power");
  LaurentMatrix r = identity(rows_);
  LaurentMatrix base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return r;
}

LaurentMatrix LaurentMatrix::operator-() const {
  LaurentMatrix m(rows_, cols_);
  for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = -e_[k];
  return m;
}

LaurentMatrix& LaurentMatrix::operator+=(const LaurentMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    fail(kDimensionError, "matrix addition shape mismatch");
  for (size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
  return *this;
}

LaurentMatrix& LaurentMatrix::operator-=(const LaurentMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    fail(kDimensionError, "matrix subtraction shape mismatch");
  for (size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
  return *this;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.cols_ != b.rows_) fail(kDimensionError, "matrix product shape mismatch");
  LaurentMatrix m(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const LaurentScalar& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const LaurentScalar& bkj = b.at(k, j);
        if (!bkj.is_zero()) m.at(i, j) += aik * bkj;
      }
    }
  return m;
}

LaurentMatrix operator*(const LaurentScalar& c, const LaurentMatrix& a) {
  LaurentMatrix m(a.rows_, a.cols_);
  for (size_t k = 0; k < a.e_.size(); ++k) m.e_[k] = c * a.e_[k];
  return m;
}

bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

std::vector<LaurentScalar> LaurentMatrix::apply(const std::vector<LaurentScalar>& v) const {
  if (static_cast<int>(v.size()) != cols_)
    fail(kDimensionError, "matrix-vector shape mismatch");
  std::vector<LaurentScalar> r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
  return r;
}

std::string LaurentMatrix::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << "[ ";
    for (int j = 0; j < cols_; ++j) {
      if (j) os << ", ";
      os << at(i, j).str();
    }
    os << " ]\n";
  }
  return os.str();
}

LaurentMatrix bracket(const LaurentMatrix& a, const LaurentMatrix& b) {
  return a * b - b * a;
}

namespace {

// Fraction-free Gauss-Jordan elimination (single-step division by the
// previous pivot). Pivoting scans the first `elim_cols` columns; trailing
// columns ride along as an augmented block. After the run every pivot entry
// equals the final pivot value, so solutions read off as aug / final_pivot.
struct Elimination {
  std::vector<std::vector<LaurentScalar>> m;
  int nrows, ncols, elim_cols;
  std::vector<int> pivot_cols;  // pivot k sits at (k, pivot_cols[k])
  int sign = 1;
  LaurentScalar last_pivot = LaurentScalar(1);

  Elimination(const LaurentMatrix& a, const std::vector<const LaurentMatrix*>& aug)
      : nrows(a.rows()), elim_cols(a.cols()) {
    ncols = elim_cols;
    for (auto* g : aug) ncols += g->cols();
    m.assign(nrows, std::vector<LaurentScalar>(ncols));
    for (int i = 0; i < nrows; ++i) {
      for (int j = 0; j < elim_cols; ++j) m[i][j] = a.at(i, j);
      int off = elim_cols;
      for (auto* g : aug) {
        for (int j = 0; j < g->cols(); ++j) m[i][off + j] = g->at(i, j);
        off += g->cols();
      }
    }
  }

  void run() {
    LaurentScalar prev = LaurentScalar(1);
    int row = 0;
    for (int col = 0; col < elim_cols && row < nrows; ++col) {
      int p = -1;
      int best = -1;
      for (int i = row; i < nrows; ++i) {
        if (m[i][col].is_zero()) continue;
        int tc = m[i][col].term_count();
        if (p < 0 || tc < best) {
          p = i;
          best = tc;
        }
      }
      if (p < 0) continue;
      if (p != row) {
        std::swap(m[p], m[row]);
        sign = -sign;
      }
      const LaurentScalar piv = m[row][col];
      for (int i = 0; i < nrows; ++i) {
        if (i == row) continue;
        const LaurentScalar f = m[i][col];
        for (int j = 0; j < ncols; ++j) {
          if (j == col) continue;
          m[i][j] = LaurentScalar::divide_exact(piv * m[i][j] - f * m[row][j], prev);
        }
        m[i][col] = LaurentScalar();
      }
      prev = piv;
      pivot_cols.push_back(col);
      ++row;
    }
    last_pivot = prev;
  }

  int rank() const { return static_cast<int>(pivot_cols.size()); }
};

LaurentScalar truncated(const LaurentScalar& s, int maxpow) {
  LaurentBuilder b;
  for (const auto& [p, c] : s.terms())
    if (p <= maxpow) b.add(p, c);
  return b.build();
}

}  // namespace

LaurentScalar det(const LaurentMatrix& a) {
  if (!a.is_square()) fail(kDimensionError, "determinant of a non-square matrix");
  if (a.rows() == 0) return LaurentScalar(1);
  Elimination e(a, {});
  e.run();
  if (e.rank() < a.rows()) return LaurentScalar();
  LaurentScalar d = e.last_pivot;
  if (e.sign < 0) d = -d;
  return d;
}

int rank(const LaurentMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Elimination e(a, {});
  e.run();
  return e.rank();
}

std::optional<LinearSolution> solve_square(const LaurentMatrix& a,
                                           const std::vector<LaurentScalar>& b) {
  if (!a.is_square()) fail(kDimensionError, "linear solve needs a square matrix");
  if (static_cast<int>(b.size()) != a.rows())
    fail(kDimensionError, "linear solve right-hand-side length mismatch");
  const int n = a.rows();
  if (n == 0) return LinearSolution{{}, LaurentScalar(1)};
  LaurentMatrix bm(n, 1);
  for (int i = 0; i < n; ++i) bm.at(i, 0) = b[i];
  Elimination e(a, {&bm});
  e.run();
  if (e.rank() < n) return std::nullopt;
  LinearSolution sol;
  sol.den = e.last_pivot;
  sol.num.resize(n);
  // Full rank square: pivot k is at column k, in row k.
  for (int i = 0; i < n; ++i) sol.num[i] = e.m[i][n];
  return sol;
}

std::vector<std::vector<LaurentScalar>> nullspace(const LaurentMatrix& a) {
  const int n = a.rows();
  const int c = a.cols();
  std::vector<std::vector<LaurentScalar>> basis;
  if (c == 0) return basis;
  if (n == 0) {
    for (int j = 0; j < c; ++j) {
      std::vector<LaurentScalar> v(c);
      v[j] = LaurentScalar(1);
      basis.push_back(std::move(v));
    }
    return basis;
  }
  Elimination e(a, {});
  e.run();
  std::vector<int> pivot_of_col(c, -1);
  for (int k = 0; k < e.rank(); ++k) pivot_of_col[e.pivot_cols[k]] = k;
  const LaurentScalar d = e.last_pivot;
  for (int f = 0; f < c; ++f) {
    if (pivot_of_col[f] >= 0) continue;
    std::vector<LaurentScalar> v(c);
    v[f] = d;
    for (int k = 0; k < e.rank(); ++k) v[e.pivot_cols[k]] = -e.m[k][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<LaurentMatrix> invert_exact(const LaurentMatrix& g) {
  if (!g.is_square()) fail(kDimensionError, "inverse of a non-square matrix");
  const int n = g.rows();
  if (n == 0) return LaurentMatrix(0, 0);
  LaurentMatrix id = LaurentMatrix::identity(n);
  Elimination e(g, {&id});
  e.run();
  if (e.rank() < n) return std::nullopt;
  LaurentMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      try {
        inv.at(i, j) = LaurentScalar::divide_exact(e.m[i][n + j], e.last_pivot);
      } catch (const Error&) {
        return std::nullopt;
      }
    }
  return inv;
}

InverseResult invert_unit(const LaurentMatrix& g, std::optional<int> window) {
  if (!g.is_square()) fail(kDimensionError, "inverse of a non-square matrix");
  const int n = g.rows();
  if (n == 0) return {LaurentMatrix(0, 0), true, 0};
  LaurentMatrix id = LaurentMatrix::identity(n);
  Elimination e(g, {&id});
  e.run();
  if (e.rank() < n)
    fail(kInvertibilityError, "matrix is singular (determinant is zero)");
  const LaurentScalar d = e.last_pivot;

  bool exact = true;
  LaurentMatrix inv(n, n);
  for (int i = 0; i < n && exact; ++i)
    for (int j = 0; j < n && exact; ++j) {
      try {
        inv.at(i, j) = LaurentScalar::divide_exact(e.m[i][n + j], d);
      } catch (const Error&) {
        exact = false;
      }
    }
  if (exact) return {inv, true, 0};

  const int pole = std::max(0, -g.valuation().value_or(0));
  const int w = window.value_or(pole + n + 4);
  // Series inverse: with d = c z^k (1 + u), v(u) >= 1, we have
  // 1/d = z^-k c^-1 sum_i (-u)^i; multiply into the adjugate block and
  // truncate to powers <= w.
  const int k = *d.valuation();
  const Rational c = d.coefficient(k);
  LaurentScalar u = LaurentScalar::divide_exact(d, LaurentScalar::monomial(k, c));
  u -= LaurentScalar(1);
  LaurentMatrix res(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const LaurentScalar& numr = e.m[i][n + j];
      if (numr.is_zero()) continue;
      LaurentScalar acc;
      LaurentScalar term = numr;  // numr * (-u)^t, truncated
      while (!term.is_zero()) {
        acc += term;
        if (u.is_zero()) break;
        term = truncated(term * (-u), w + k);
      }
      LaurentScalar scaled = acc.shifted(-k);
      LaurentBuilder bld;
      for (const auto& [p, cc] : scaled.terms())
        if (p <= w) bld.add(p, cc / c);
      res.at(i, j) = bld.build();
    }
  return {res, false, w};
}

}  // namespace stratakit
