#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lefdisc/multipoly.hpp"
#include "lefdisc/rational_matrix.hpp"

namespace lefdisc {

// Dense matrix of polynomials sharing one variable count.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t num_vars)
      : rows_(rows), cols_(cols), num_vars_(num_vars), data_(rows * cols, MultiPoly(num_vars)) {}

  static PolyMatrix from_rows(std::size_t num_vars, const std::vector<std::vector<MultiPoly>>& rows) {
    PolyMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size(), num_vars);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged polynomial matrix");
      for (std::size_t j = 0; j < m.cols_; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t num_vars() const { return num_vars_; }
  bool is_square() const { return rows_ == cols_; }

  const MultiPoly& operator()(std::size_t i, std::size_t j) const { return data_.at(i * cols_ + j); }

  void set(std::size_t i, std::size_t j, MultiPoly p) {
    if (p.num_vars() != num_vars_) throw std::invalid_argument("matrix entry has wrong number of variables");
    data_.at(i * cols_ + j) = std::move(p);
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  bool is_skew() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!(*this)(i, i).is_zero()) return false;
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == -(*this)(j, i))) return false;
    }
    return true;
  }

  RationalMatrix evaluate(std::span<const Rational> point) const {
    if (point.size() != num_vars_) throw std::invalid_argument("evaluation point has wrong length");
    RationalMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j).evaluate(point);
    return out;
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      out += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) out += ", ";
        out += (*this)(i, j).to_string();
      }
      out += "]";
    }
    return out + "]";
  }

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t num_vars_ = 0;
  std::vector<MultiPoly> data_;
};

// Fraction-free (Bareiss) determinant over Q[t]. Every intermediate division is exact.
inline MultiPoly det(const PolyMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("det: matrix is not square");
  const std::size_t n = m.rows();
  const std::size_t nv = m.num_vars();
  if (n == 0) return MultiPoly::one(nv);

  std::vector<std::vector<MultiPoly>> a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i].push_back(m(i, j));

  bool negate = false;
  MultiPoly prev = MultiPoly::one(nv);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    // Pivot: nonzero entry with the fewest terms.
    std::size_t best = n;
    for (std::size_t i = k; i < n; ++i) {
      if (a[i][k].is_zero()) continue;
      if (best == n || a[i][k].term_count() < a[best][k].term_count()) best = i;
    }
    if (best == n) return MultiPoly(nv);
    if (best != k) {
      std::swap(a[best], a[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly v = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        a[i][j] = v.divide_exact(prev);
      }
    }
    prev = a[k][k];
  }
  MultiPoly result = std::move(a[n - 1][n - 1]);
  return negate ? -result : result;
}

namespace detail {

inline MultiPoly cofactor_expand(const PolyMatrix& m, std::vector<std::size_t>& cols, std::size_t row) {
  if (cols.empty()) return MultiPoly::one(m.num_vars());
  MultiPoly sum(m.num_vars());
  for (std::size_t p = 0; p < cols.size(); ++p) {
    const MultiPoly& entry = m(row, cols[p]);
    if (entry.is_zero()) continue;
    std::size_t c = cols[p];
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(p));
    MultiPoly minor = cofactor_expand(m, cols, row + 1);
    cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(p), c);
    if (p % 2) sum -= entry * minor;
    else sum += entry * minor;
  }
  return sum;
}

}  // namespace detail

inline constexpr std::size_t kMaxCofactorDimension = 6;

// Determinant by Laplace expansion along the first row; small matrices only.
inline MultiPoly det_cofactor(const PolyMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("det_cofactor: matrix is not square");
  if (m.rows() > kMaxCofactorDimension)
    throw std::invalid_argument("det_cofactor: dimension " + std::to_string(m.rows()) + " exceeds " +
                                std::to_string(kMaxCofactorDimension));
  std::vector<std::size_t> cols(m.cols());
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
  return detail::cofactor_expand(m, cols, 0);
}

// Pfaffian by recursive first-row expansion, memoized on the set of remaining indices.
inline MultiPoly pfaffian(const PolyMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("pfaffian: matrix is not square");
  if (m.rows() % 2) throw std::invalid_argument("pfaffian: odd dimension");
  if (!m.is_skew()) throw std::invalid_argument("pfaffian: matrix is not skew-symmetric");
  if (m.rows() > 62) throw std::invalid_argument("pfaffian: dimension too large");
  const std::size_t nv = m.num_vars();

  std::unordered_map<std::uint64_t, MultiPoly> memo;
  auto rec = [&](auto&& self, std::uint64_t mask) -> MultiPoly {
    if (mask == 0) return MultiPoly::one(nv);
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    std::size_t first = static_cast<std::size_t>(__builtin_ctzll(mask));
    std::uint64_t rest = mask & ~(std::uint64_t{1} << first);
    MultiPoly sum(nv);
    std::size_t position = 0;
    for (std::uint64_t bits = rest; bits; bits &= bits - 1) {
      ++position;
      std::size_t j = static_cast<std::size_t>(__builtin_ctzll(bits));
      const MultiPoly& entry = m(first, j);
      if (entry.is_zero()) continue;
      MultiPoly sub = self(self, rest & ~(std::uint64_t{1} << j));
      if (position % 2) sum += entry * sub;
      else sum -= entry * sub;
    }
    memo.emplace(mask, sum);
    return sum;
  };
  std::uint64_t all = m.rows() == 0 ? 0 : (std::uint64_t{1} << m.rows()) - 1;
  return rec(rec, all);
}

// Rank of the rational matrix obtained by evaluating every entry at point.
inline std::size_t rank_at(const PolyMatrix& m, std::span<const Rational> point) {
  if (point.size() != m.num_vars()) throw std::invalid_argument("rank_at: point length does not match variable count");
  return rank(m.evaluate(point));
}

}  // namespace lefdisc
