#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "talex/diagnostics.hpp"
#include "talex/laurent.hpp"
#include "talex/parallel.hpp"

namespace talex {

// Dense rectangular matrix over K[t^{+-1}].  Instances in this problem stay
// small (a few dozen rows at most), so density beats sparse bookkeeping.
class LaurentMatrix {
 public:
  LaurentMatrix(int rows, int cols, int order)
      : rows_(rows), cols_(cols), order_(order) {
    if (rows < 0 || cols < 0) throw dimension_error("negative matrix size");
    e_.assign(static_cast<std::size_t>(rows) * cols, LaurentPoly(order));
  }

  static LaurentMatrix identity(int n, int order) {
    LaurentMatrix m(n, n, order);
    for (int i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::one(order);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int order() const { return order_; }

  LaurentPoly& at(int i, int j) {
    check(i, j);
    return e_[static_cast<std::size_t>(i) * cols_ + j];
  }
  const LaurentPoly& at(int i, int j) const {
    check(i, j);
    return e_[static_cast<std::size_t>(i) * cols_ + j];
  }

  bool is_zero() const {
    for (const auto& p : e_)
      if (!p.is_zero()) return false;
    return true;
  }

  friend LaurentMatrix operator*(const LaurentMatrix& a,
                                 const LaurentMatrix& b) {
    if (a.cols_ != b.rows_)
      throw dimension_error("matrix product shape mismatch");
    LaurentMatrix r(a.rows_, b.cols_, a.order_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j)
          r.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return r;
  }

  friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  void set_block(int i0, int j0, const LaurentMatrix& b) {
    for (int i = 0; i < b.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) at(i0 + i, j0 + j) = b.at(i, j);
  }

  // Copy with the column range [j0, j0+count) removed.
  LaurentMatrix erase_columns(int j0, int count) const {
    if (j0 < 0 || count < 0 || j0 + count > cols_)
      throw dimension_error("erase_columns out of range");
    LaurentMatrix r(rows_, cols_ - count, order_);
    for (int i = 0; i < rows_; ++i) {
      int jj = 0;
      for (int j = 0; j < cols_; ++j) {
        if (j >= j0 && j < j0 + count) continue;
        r.at(i, jj++) = at(i, j);
      }
    }
    return r;
  }

  LaurentMatrix submatrix(const std::vector<int>& row_idx,
                          const std::vector<int>& col_idx) const {
    LaurentMatrix r(static_cast<int>(row_idx.size()),
                    static_cast<int>(col_idx.size()), order_);
    for (std::size_t i = 0; i < row_idx.size(); ++i)
      for (std::size_t j = 0; j < col_idx.size(); ++j)
        r.at(static_cast<int>(i), static_cast<int>(j)) =
            at(row_idx[i], col_idx[j]);
    return r;
  }

  // Row vector (1 x cols) times this matrix.
  std::vector<LaurentPoly> row_times(const std::vector<LaurentPoly>& v) const {
    if (static_cast<int>(v.size()) != rows_)
      throw dimension_error("row vector length mismatch");
    std::vector<LaurentPoly> r(cols_, LaurentPoly(order_));
    for (int i = 0; i < rows_; ++i) {
      if (v[i].is_zero()) continue;
      for (int j = 0; j < cols_; ++j) r[j] += v[i] * at(i, j);
    }
    return r;
  }

  std::vector<LaurentPoly> row(int i) const {
    std::vector<LaurentPoly> r;
    r.reserve(cols_);
    for (int j = 0; j < cols_; ++j) r.push_back(at(i, j));
    return r;
  }

 private:
  void check(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
      throw dimension_error("matrix index out of bounds");
  }

  int rows_, cols_, order_;
  std::vector<LaurentPoly> e_;
};

namespace detail {

inline LaurentPoly det_small(const LaurentMatrix& m) {
  const int n = m.rows();
  if (n == 0) return LaurentPoly::one(m.order());
  if (n == 1) return m.at(0, 0);
  if (n == 2)
    return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
  // n == 3: Sarrus.
  return m.at(0, 0) * m.at(1, 1) * m.at(2, 2) +
         m.at(0, 1) * m.at(1, 2) * m.at(2, 0) +
         m.at(0, 2) * m.at(1, 0) * m.at(2, 1) -
         m.at(0, 2) * m.at(1, 1) * m.at(2, 0) -
         m.at(0, 0) * m.at(1, 2) * m.at(2, 1) -
         m.at(0, 1) * m.at(1, 0) * m.at(2, 2);
}

}  // namespace detail

// Exact determinant: direct expansion up to 3x3, fraction-free Bareiss
// elimination beyond.  The Bareiss divisions are exact in the Laurent ring
// (each quotient is itself a minor of the input).
inline LaurentPoly det(const LaurentMatrix& m) {
  if (m.rows() != m.cols())
    throw dimension_error("determinant of a non-square matrix");
  const int n = m.rows();
  if (n <= 3) return detail::det_small(m);

  LaurentMatrix w = m;
  LaurentPoly prev = LaurentPoly::one(m.order());
  bool negate = false;
  for (int k = 0; k + 1 < n; ++k) {
    if (w.at(k, k).is_zero()) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (!w.at(i, k).is_zero()) {
          pivot = i;
          break;
        }
      if (pivot < 0) return LaurentPoly::zero(m.order());
      for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(pivot, j));
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        w.at(i, j) = LaurentPoly::divide_exact(
            w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j), prev);
    prev = w.at(k, k);
  }
  LaurentPoly d = w.at(n - 1, n - 1);
  return negate ? -d : d;
}

namespace detail {

inline bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    const auto factor = static_cast<std::uint64_t>(n - k + i);
    if (r > (cap / factor) + 1) return cap + 1;  // avoid overflow
    r = r * factor / i;
    if (r > cap) return cap + 1;
  }
  return r;
}

}  // namespace detail

// Unit-normalized gcd of all k x k minors.  Subsets are enumerated in
// lexicographic order; the fold stops as soon as the running gcd becomes a
// unit, which is the principal optimization for the Wada numerator.
// Returns 0 when every minor vanishes.  `max_minors` guards the
// combinatorial count.
inline LaurentPoly minors_gcd(const LaurentMatrix& m, int k,
                              std::uint64_t max_minors = 1000000) {
  if (k < 1 || k > std::min(m.rows(), m.cols()))
    throw dimension_error("minor size out of range");
  const std::uint64_t n_rows = detail::binomial_capped(m.rows(), k, max_minors);
  const std::uint64_t n_cols = detail::binomial_capped(m.cols(), k, max_minors);
  if (n_rows > max_minors || n_cols > max_minors ||
      n_rows * n_cols > max_minors)
    throw engine_error("minor count exceeds guard (" +
                       std::to_string(max_minors) + ")");

  std::vector<std::vector<int>> row_sets;
  {
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    do {
      row_sets.push_back(c);
    } while (detail::next_combination(c, m.rows()));
  }

  std::atomic<bool> unit_found{false};
  auto fold_rows = [&](std::size_t begin, std::size_t end) -> LaurentPoly {
    LaurentPoly g(m.order());
    for (std::size_t ri = begin; ri < end; ++ri) {
      if (unit_found.load(std::memory_order_relaxed)) break;
      std::vector<int> cols(k);
      for (int i = 0; i < k; ++i) cols[i] = i;
      do {
        g = gcd_poly(g, det(m.submatrix(row_sets[ri], cols)));
        if (!g.is_zero() && g.is_unit()) {
          unit_found.store(true, std::memory_order_relaxed);
          return g;
        }
      } while (detail::next_combination(cols, m.cols()));
    }
    return g;
  };

  // gcd is canonical, so the chunked parallel fold is deterministic.
  std::vector<LaurentPoly> partial =
      parallel_map_chunks<LaurentPoly>(row_sets.size(), fold_rows, 16);
  LaurentPoly g(m.order());
  for (const auto& p : partial) {
    g = gcd_poly(g, p);
    if (!g.is_zero() && g.is_unit()) break;
  }
  return normalize_assoc(g);
}

// Smith normal form over the Euclidean domain K[t^{+-1}] (degree = span).
// Pivot choice: nonzero entry of minimal span, ties broken row-major.
// When row transforms are requested, maintains U and U^{-1} with
// U * A * V = D, which is what the homology computation needs to express
// image rows in a kernel basis.
struct SmithResult {
  std::vector<LaurentPoly> factors;  // nonzero invariant factors, d1 | d2 | ...
  int rank = 0;
  std::optional<LaurentMatrix> u;      // row transform
  std::optional<LaurentMatrix> u_inv;  // its inverse
};

inline SmithResult smith_normal_form(const LaurentMatrix& m,
                                     bool want_row_transforms = false) {
  const int rows = m.rows(), cols = m.cols(), order = m.order();
  LaurentMatrix w = m;
  SmithResult res;
  LaurentMatrix u = LaurentMatrix::identity(rows, order);
  LaurentMatrix uinv = LaurentMatrix::identity(rows, order);

  auto swap_rows = [&](int a, int b) {
    if (a == b) return;
    for (int j = 0; j < cols; ++j) std::swap(w.at(a, j), w.at(b, j));
    if (want_row_transforms) {
      for (int j = 0; j < rows; ++j) std::swap(u.at(a, j), u.at(b, j));
      for (int i = 0; i < rows; ++i) std::swap(uinv.at(i, a), uinv.at(i, b));
    }
  };
  // row_a -= q * row_b; U and U^{-1} pick up the matching elementary factors.
  auto row_axpy = [&](int a, int b, const LaurentPoly& q) {
    if (q.is_zero()) return;
    for (int j = 0; j < cols; ++j) w.at(a, j) -= q * w.at(b, j);
    if (want_row_transforms) {
      for (int j = 0; j < rows; ++j) u.at(a, j) -= q * u.at(b, j);
      for (int i = 0; i < rows; ++i) uinv.at(i, b) += q * uinv.at(i, a);
    }
  };
  auto scale_row = [&](int a, const LaurentPoly& unit) {
    for (int j = 0; j < cols; ++j) w.at(a, j) = w.at(a, j) * unit;
    if (want_row_transforms) {
      const LaurentPoly inv = LaurentPoly::divide_exact(
          LaurentPoly::one(order), unit);
      for (int j = 0; j < rows; ++j) u.at(a, j) = u.at(a, j) * unit;
      for (int i = 0; i < rows; ++i) uinv.at(i, a) = uinv.at(i, a) * inv;
    }
  };
  auto swap_cols = [&](int a, int b) {
    if (a == b) return;
    for (int i = 0; i < rows; ++i) std::swap(w.at(i, a), w.at(i, b));
  };
  auto col_axpy = [&](int a, int b, const LaurentPoly& q) {
    if (q.is_zero()) return;
    for (int i = 0; i < rows; ++i) w.at(i, a) -= q * w.at(i, b);
  };

  const int steps = std::min(rows, cols);
  int s = 0;
  for (; s < steps; ++s) {
    // Locate the minimal-span nonzero pivot in the trailing submatrix.
    auto find_pivot = [&]() -> std::pair<int, int> {
      int pi = -1, pj = -1, best = -1;
      for (int i = s; i < rows; ++i)
        for (int j = s; j < cols; ++j) {
          const LaurentPoly& p = w.at(i, j);
          if (p.is_zero()) continue;
          if (best < 0 || p.span() < best) {
            best = p.span();
            pi = i;
            pj = j;
          }
        }
      return {pi, pj};
    };

    auto [pi, pj] = find_pivot();
    if (pi < 0) break;  // trailing submatrix is zero
    swap_rows(s, pi);
    swap_cols(s, pj);

    for (;;) {
      bool clean = true;
      for (int i = s + 1; i < rows; ++i) {
        if (w.at(i, s).is_zero()) continue;
        auto [q, r] = LaurentPoly::divmod(w.at(i, s), w.at(s, s));
        row_axpy(i, s, q);
        if (!r.is_zero()) {
          swap_rows(s, i);  // strictly smaller span becomes the pivot
          clean = false;
        }
      }
      if (!clean) continue;
      for (int j = s + 1; j < cols; ++j) {
        if (w.at(s, j).is_zero()) continue;
        auto [q, r] = LaurentPoly::divmod(w.at(s, j), w.at(s, s));
        col_axpy(j, s, q);
        if (!r.is_zero()) {
          swap_cols(s, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // Divisibility chain fix-up: fold a recalcitrant row into the pivot
      // row and keep reducing until the pivot divides the whole submatrix.
      bool divides_all = true;
      for (int i = s + 1; i < rows && divides_all; ++i)
        for (int j = s + 1; j < cols && divides_all; ++j)
          if (!w.at(s, s).divides(w.at(i, j))) {
            row_axpy(s, i, -LaurentPoly::one(order));
            divides_all = false;
          }
      if (divides_all) break;
    }

    // Normalize the invariant factor (a unit row scaling).
    const LaurentPoly piv = w.at(s, s);
    const LaurentPoly unit =
        LaurentPoly::divide_exact(normalize_assoc(piv), piv);
    if (!unit.is_one()) scale_row(s, unit);
    res.factors.push_back(w.at(s, s));
  }
  res.rank = s;
  if (want_row_transforms) {
    res.u = std::move(u);
    res.u_inv = std::move(uinv);
  }
  return res;
}

}  // namespace talex
