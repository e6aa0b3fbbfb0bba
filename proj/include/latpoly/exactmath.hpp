#pragma once

// Exact rational / integer linear algebra. Everything here works on
// arbitrary-precision GMP scalars; there is no floating point path.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace latpoly {

using Integer = mpz_class;
using Rational = mpq_class;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class T>
using Vector = std::vector<T>;
using RatVector = Vector<Rational>;
using IntVector = Vector<Integer>;

/// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
      if (r.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix from_rows(const std::vector<Vector<T>>& rows, std::size_t cols = 0) {
    Matrix m(rows.size(), rows.empty() ? cols : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw DimensionError("ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vector<T> row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }
  std::vector<Vector<T>> row_list() const {
    std::vector<Vector<T>> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row_vector(i));
    return out;
  }

  void append_row(std::span<const T> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw DimensionError("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }
  void append_row(const Vector<T>& r) { append_row(std::span<const T>(r)); }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Integer>;

using IndexSet = std::vector<int>;

/// Selects all rows (or columns) in `minor`.
struct AllIndices {};
inline constexpr AllIndices All{};

// ---------------------------------------------------------------------------
// small helpers

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& m) {
  Matrix<T> t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T>
Vector<T> operator*(const Matrix<T>& a, const Vector<T>& x) {
  if (a.cols() != x.size()) throw DimensionError("matrix-vector product: dimensions differ");
  Vector<T> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

template <class T, class U>
T dot(std::span<const T> a, std::span<const U> b) {
  if (a.size() != b.size()) throw DimensionError("dot product: lengths differ");
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational dot(const RatVector& a, const RatVector& b) {
  return dot<Rational, Rational>(std::span<const Rational>(a), std::span<const Rational>(b));
}

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

inline RatVector to_rational(const IntVector& v) { return {v.begin(), v.end()}; }

/// Throws unless every entry is an integer.
inline IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integral(m(i, j))) throw std::domain_error("matrix entry is not integral");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

inline IntVector to_integer(const RatVector& v) {
  IntVector r;
  r.reserve(v.size());
  for (const auto& q : v) {
    if (!is_integral(q)) throw std::domain_error("vector entry is not integral");
    r.push_back(q.get_num());
  }
  return r;
}

/// Smallest positive integer multiple of `v` (the zero vector maps to itself).
inline IntVector scale_to_integer(std::span<const Rational> v) {
  Integer den = 1;
  for (const auto& q : v) den = lcm(den, q.get_den());
  IntVector out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& q : v) {
    out.push_back(q.get_num() * (den / q.get_den()));
    g = gcd(g, out.back());
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

/// Divides by the gcd of the entries. Zero vector is rejected.
inline IntVector primitive(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) throw std::domain_error("primitive: zero vector");
  IntVector out(v);
  for (auto& x : out) x /= g;
  return out;
}

// ---------------------------------------------------------------------------
// determinants, rank, solving

/// Bareiss fraction-free elimination. Intermediate entries stay integral.
inline Integer det(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("det: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline Rational det(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("det: matrix is not square");
  IntMatrix scaled(m.rows(), m.cols());
  Rational factor = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer den = 1;
    for (const auto& q : m.row(i)) den = lcm(den, q.get_den());
    for (std::size_t j = 0; j < m.cols(); ++j) scaled(i, j) = m(i, j).get_num() * (den / m(i, j).get_den());
    factor /= den;
  }
  Rational d = det(scaled);
  return d * factor;
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    const Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Exact rank via fraction-free elimination on integer-scaled rows.
inline std::size_t rank(const IntMatrix& m) {
  IntMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      const Integer f = a(i, c), piv = a(r, c);
      Integer g = 0;
      for (std::size_t j = c; j < a.cols(); ++j) {
        a(i, j) = a(i, j) * piv - f * a(r, j);
        g = gcd(g, a(i, j));
      }
      if (g > 1)
        for (std::size_t j = c; j < a.cols(); ++j) mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), g.get_mpz_t());
    }
    ++r;
  }
  return r;
}

inline std::size_t rank(const RatMatrix& m) {
  IntMatrix scaled(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = scale_to_integer(m.row(i));
    std::copy(r.begin(), r.end(), scaled.row(i).begin());
  }
  return rank(scaled);
}

/// Unique solution of a·x = b, or nullopt when the system is inconsistent
/// or underdetermined.
inline std::optional<RatVector> lin_solve(const RatMatrix& a, const RatVector& b) {
  if (a.rows() != b.size()) throw DimensionError("lin_solve: row count differs from right-hand side length");
  const std::size_t n = a.cols();
  RatMatrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;  // inconsistent
  if (pivots.size() != n) return std::nullopt;                      // not unique
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
  return x;
}

/// Basis (as rows) of {x : a·x = 0}.
inline RatMatrix null_space(const RatMatrix& a) {
  RatMatrix r = a;
  auto pivots = rref(r);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  RatMatrix basis(0, a.cols());
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(a.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.append_row(v);
  }
  return basis;
}

// ---------------------------------------------------------------------------
// index helpers

inline void check_indices(const IndexSet& s, std::size_t bound, const char* what) {
  for (int i : s)
    if (i < 0 || static_cast<std::size_t>(i) >= bound)
      throw DimensionError(std::string("minor: ") + what + " index " + std::to_string(i) + " out of range");
}

/// Submatrix on the given rows and columns, in ascending index order.
template <class T>
Matrix<T> minor(const Matrix<T>& m, IndexSet rows, IndexSet cols) {
  check_indices(rows, m.rows(), "row");
  check_indices(cols, m.cols(), "column");
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  Matrix<T> out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

inline IndexSet sequence(int lo, int hi_inclusive) {
  IndexSet s;
  for (int i = lo; i <= hi_inclusive; ++i) s.push_back(i);
  return s;
}

template <class T>
Matrix<T> minor(const Matrix<T>& m, IndexSet rows, AllIndices) {
  return minor(m, std::move(rows), sequence(0, static_cast<int>(m.cols()) - 1));
}

template <class T>
Matrix<T> minor(const Matrix<T>& m, AllIndices, IndexSet cols) {
  return minor(m, sequence(0, static_cast<int>(m.rows()) - 1), std::move(cols));
}

/// All k-element subsets of `range` (taken in ascending order), lexicographically.
inline std::vector<IndexSet> all_subsets_of_k(std::size_t k, IndexSet range) {
  std::sort(range.begin(), range.end());
  range.erase(std::unique(range.begin(), range.end()), range.end());
  std::vector<IndexSet> out;
  const std::size_t n = range.size();
  if (k > n) return out;
  std::vector<std::size_t> pos(k);
  for (std::size_t i = 0; i < k; ++i) pos[i] = i;
  while (true) {
    IndexSet s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = range[pos[i]];
    out.push_back(std::move(s));
    std::size_t i = k;
    while (i > 0 && pos[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pos[i - 1];
    for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hermite normal form

struct HermiteResult {
  IntMatrix h;  // row echelon, positive pivots, entries above a pivot reduced into [0, pivot)
  IntMatrix u;  // unimodular, h = u * m
  std::vector<std::size_t> pivot_cols;
};

/// Row-style Hermite normal form by unimodular row operations.
inline HermiteResult hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  auto row_op = [&](std::size_t i, std::size_t j, const Integer& a, const Integer& b, const Integer& c,
                    const Integer& d) {
    // (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j), ad - bc = ±1
    for (IntMatrix* mat : {&h, &u}) {
      for (std::size_t col = 0; col < mat->cols(); ++col) {
        Integer ri = (*mat)(i, col), rj = (*mat)(j, col);
        (*mat)(i, col) = a * ri + b * rj;
        (*mat)(j, col) = c * ri + d * rj;
      }
    }
  };
  auto sub_multiple = [&](std::size_t target, std::size_t src, const Integer& q) {
    for (IntMatrix* mat : {&h, &u})
      for (std::size_t col = 0; col < mat->cols(); ++col) (*mat)(target, col) -= q * (*mat)(src, col);
  };
  auto negate = [&](std::size_t i) {
    for (IntMatrix* mat : {&h, &u})
      for (std::size_t col = 0; col < mat->cols(); ++col) (*mat)(i, col) = -(*mat)(i, col);
  };

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (h(i, c) == 0) continue;
      if (h(r, c) == 0) {
        h.swap_rows(r, i);
        u.swap_rows(r, i);
        continue;
      }
      // extended gcd: g = s*a + t*b
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(r, c).get_mpz_t(), h(i, c).get_mpz_t());
      Integer a_g = h(r, c) / g, b_g = h(i, c) / g;
      row_op(r, i, s, t, -b_g, a_g);
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) negate(r);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
      if (q != 0) sub_multiple(i, r, q);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(h), std::move(u), std::move(pivots)};
}

/// Basis (rows) of the integer kernel {x in Z^n : m x = 0}; saturated.
inline IntMatrix integer_kernel(const IntMatrix& m) {
  auto hr = hermite_normal_form(transpose(m));
  IntMatrix basis(0, m.cols());
  for (std::size_t i = hr.pivot_cols.size(); i < hr.h.rows(); ++i) basis.append_row(hr.u.row_vector(i));
  return basis;
}

// ---------------------------------------------------------------------------
// printing

template <class T>
std::ostream& operator<<(std::ostream& os, const Vector<T>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << v[i];
  }
  return os;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j);
    }
    os << '\n';
  }
  return os;
}

inline std::string format_set(const IndexSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ' ';
    os << s[i];
  }
  os << '}';
  return os.str();
}

}  // namespace latpoly
