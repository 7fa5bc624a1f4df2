#ifndef PRIMSET_BOOL_MATRIX_HPP
#define PRIMSET_BOOL_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "primset/index_set.hpp"

namespace primset {

/// The zero pattern of an n x n nonnegative matrix: entry (i,j) is 1 iff the
/// numeric entry is positive. Rows are bitsets, so a row doubles as the
/// out-neighbourhood of node i in the associated digraph.
class BoolMatrix {
 public:
  explicit BoolMatrix(std::size_t n) : n_(n), rows_(n, IndexSet(n)) {
    if (n == 0) {
      throw std::invalid_argument("BoolMatrix: dimension must be >= 1");
    }
  }

  static BoolMatrix identity(std::size_t n) {
    BoolMatrix m(n);
    for (std::size_t i = 1; i <= n; ++i) {
      m.set(i, i);
    }
    return m;
  }

  static BoolMatrix ones(std::size_t n) {
    BoolMatrix m(n);
    for (std::size_t i = 1; i <= n; ++i) {
      m.rows_[i - 1] = IndexSet::full(n);
    }
    return m;
  }

  /// Convenience constructor from 0/1 row literals, e.g. {{1,1},{1,0}}.
  static BoolMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    BoolMatrix m(rows.size());
    std::size_t i = 1;
    for (const auto& r : rows) {
      if (r.size() != rows.size()) {
        throw std::invalid_argument("BoolMatrix::from_rows: matrix must be square");
      }
      std::size_t j = 1;
      for (int v : r) {
        if (v != 0) {
          m.set(i, j);
        }
        ++j;
      }
      ++i;
    }
    return m;
  }

  std::size_t dim() const { return n_; }

  bool get(std::size_t i, std::size_t j) const { return row(i).contains(j); }

  void set(std::size_t i, std::size_t j) {
    check_row(i);
    rows_[i - 1].insert(j);
  }

  void clear(std::size_t i, std::size_t j) {
    check_row(i);
    rows_[i - 1].erase(j);
  }

  const IndexSet& row(std::size_t i) const {
    check_row(i);
    return rows_[i - 1];
  }

  void set_row(std::size_t i, IndexSet r) {
    check_row(i);
    if (r.universe() != n_) {
      throw std::invalid_argument("BoolMatrix::set_row: width mismatch");
    }
    rows_[i - 1] = std::move(r);
  }

  IndexSet column(std::size_t j) const {
    IndexSet c(n_);
    for (std::size_t i = 1; i <= n_; ++i) {
      if (rows_[i - 1].contains(j)) {
        c.insert(i);
      }
    }
    return c;
  }

  /// Union of all rows: the set of columns hit by at least one entry.
  IndexSet column_cover() const {
    IndexSet c(n_);
    for (const auto& r : rows_) {
      c |= r;
    }
    return c;
  }

  BoolMatrix transpose() const {
    BoolMatrix t(n_);
    for (std::size_t i = 1; i <= n_; ++i) {
      rows_[i - 1].for_each([&](std::size_t j) { t.set(j, i); });
    }
    return t;
  }

  bool is_permutation() const {
    for (const auto& r : rows_) {
      if (r.count() != 1) {
        return false;
      }
    }
    return column_cover().is_full();
  }

  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

  std::size_t hash() const {
    std::uint64_t h = 0x2545f4914f6cdd1dULL ^ n_;
    for (const auto& r : rows_) {
      h = h * 0x100000001b3ULL ^ r.hash();
    }
    return static_cast<std::size_t>(h);
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 1; i <= n_; ++i) {
      for (std::size_t j = 1; j <= n_; ++j) {
        out += get(i, j) ? '1' : '0';
      }
      out += '\n';
    }
    return out;
  }

 private:
  void check_row(std::size_t i) const {
    if (i < 1 || i > n_) {
      throw std::out_of_range("BoolMatrix: row index out of range");
    }
  }

  std::size_t n_;
  std::vector<IndexSet> rows_;
};

struct BoolMatrixHash {
  std::size_t operator()(const BoolMatrix& m) const { return m.hash(); }
};

/// An ordered list of m >= 1 patterns sharing one dimension. Matrix indices
/// are 1-based throughout, matching the index alphabet of words.
class MatrixSet {
 public:
  explicit MatrixSet(std::vector<BoolMatrix> mats) : mats_(std::move(mats)) {
    if (mats_.empty()) {
      throw std::invalid_argument("MatrixSet: need at least one matrix");
    }
    n_ = mats_.front().dim();
    for (const auto& m : mats_) {
      if (m.dim() != n_) {
        throw std::invalid_argument("MatrixSet: dimension mismatch between members");
      }
    }
  }

  std::size_t dim() const { return n_; }
  std::size_t size() const { return mats_.size(); }

  const BoolMatrix& mat(std::size_t g) const {
    if (g < 1 || g > mats_.size()) {
      throw std::out_of_range("MatrixSet: matrix index out of range");
    }
    return mats_[g - 1];
  }

  const std::vector<BoolMatrix>& mats() const { return mats_; }

  friend bool operator==(const MatrixSet&, const MatrixSet&) = default;

 private:
  std::size_t n_;
  std::vector<BoolMatrix> mats_;
};

/// A product A_{i1} A_{i2} ... A_{ik} encoded by its 1-based index sequence.
using Word = std::vector<std::size_t>;

/// A reach set R_a(k): the nodes reachable from a through the first k graphs.
using ReachSet = IndexSet;

inline void validate_word(const MatrixSet& s, const Word& w) {
  for (std::size_t g : w) {
    if (g < 1 || g > s.size()) {
      throw std::invalid_argument("word index " + std::to_string(g) + " out of range 1.." +
                                  std::to_string(s.size()));
    }
  }
}

inline BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("bool_product: dimension mismatch");
  }
  const std::size_t n = a.dim();
  BoolMatrix out(n);
  for (std::size_t i = 1; i <= n; ++i) {
    IndexSet acc(n);
    a.row(i).for_each([&](std::size_t k) { acc |= b.row(k); });
    out.set_row(i, std::move(acc));
  }
  return out;
}

inline BoolMatrix word_product(const MatrixSet& s, const Word& w) {
  if (w.empty()) {
    throw std::invalid_argument("word_product: empty word (products have length >= 1)");
  }
  validate_word(s, w);
  BoolMatrix acc = s.mat(w.front());
  for (std::size_t k = 1; k < w.size(); ++k) {
    acc = bool_product(acc, s.mat(w[k]));
  }
  return acc;
}

inline bool is_positive(const BoolMatrix& a) {
  for (std::size_t i = 1; i <= a.dim(); ++i) {
    if (!a.row(i).is_full()) {
      return false;
    }
  }
  return true;
}

/// R_a(0), R_a(1), ..., R_a(|w|): the row-a supports of the prefix products,
/// with R_a(0) = {a}.
inline std::vector<ReachSet> reach_sets(const MatrixSet& s, const Word& w, std::size_t a) {
  if (a < 1 || a > s.dim()) {
    throw std::invalid_argument("reach_sets: start node out of range");
  }
  validate_word(s, w);
  std::vector<ReachSet> out;
  out.reserve(w.size() + 1);
  out.push_back(IndexSet::singleton(s.dim(), a));
  for (std::size_t g : w) {
    const BoolMatrix& m = s.mat(g);
    IndexSet next(s.dim());
    out.back().for_each([&](std::size_t v) { next |= m.row(v); });
    out.push_back(std::move(next));
  }
  return out;
}

inline bool has_zero_row_or_col(const BoolMatrix& a) {
  for (std::size_t i = 1; i <= a.dim(); ++i) {
    if (a.row(i).empty()) {
      return true;
    }
  }
  return !a.column_cover().is_full();
}

/// Boolean power test at the classical exponent n^2 - 2n + 2 (clamped to 1).
inline bool single_matrix_primitive(const BoolMatrix& a) {
  const std::size_t n = a.dim();
  std::size_t e = n * n >= 2 * n - 2 ? n * n - 2 * n + 2 : 1;
  if (e == 0) {
    e = 1;
  }
  BoolMatrix acc = BoolMatrix::identity(n);
  BoolMatrix base = a;
  while (e > 0) {
    if (e & 1) {
      acc = bool_product(acc, base);
    }
    e >>= 1;
    if (e > 0) {
      base = bool_product(base, base);
    }
  }
  return is_positive(acc);
}

inline MatrixSet transpose_set(const MatrixSet& s) {
  std::vector<BoolMatrix> out;
  out.reserve(s.size());
  for (const auto& m : s.mats()) {
    out.push_back(m.transpose());
  }
  return MatrixSet(std::move(out));
}

/// Entrywise OR of all members: the adjacency pattern of the union digraph.
inline BoolMatrix union_matrix(const MatrixSet& s) {
  BoolMatrix u(s.dim());
  for (std::size_t i = 1; i <= s.dim(); ++i) {
    IndexSet acc(s.dim());
    for (const auto& m : s.mats()) {
      acc |= m.row(i);
    }
    u.set_row(i, std::move(acc));
  }
  return u;
}

/// Nodes reachable from `start` in the digraph of `adj`, including `start`.
inline IndexSet reachable_from(const BoolMatrix& adj, std::size_t start) {
  IndexSet seen = IndexSet::singleton(adj.dim(), start);
  IndexSet frontier = seen;
  while (!frontier.empty()) {
    IndexSet next(adj.dim());
    frontier.for_each([&](std::size_t v) { next |= adj.row(v); });
    frontier = next & seen.complement();
    seen |= next;
  }
  return seen;
}

}  // namespace primset

#endif
