#ifndef PRIMSET_PVSTRUCT_HPP
#define PRIMSET_PVSTRUCT_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "primset/bool_matrix.hpp"

namespace primset {

/// Disjoint nonempty blocks covering {1..n}. Nontrivial means more than one
/// block. Blocks are kept sorted by smallest element.
struct Partition {
  std::vector<IndexSet> blocks;
};

inline bool is_valid_partition(const Partition& p, std::size_t n) {
  if (p.blocks.empty()) {
    return false;
  }
  IndexSet cover(n);
  std::size_t total = 0;
  for (const auto& b : p.blocks) {
    if (b.universe() != n || b.empty()) {
      return false;
    }
    total += b.count();
    cover |= b;
  }
  return total == n && cover.is_full();
}

inline void validate_partition(const Partition& p, std::size_t n) {
  if (!is_valid_partition(p, n)) {
    throw std::invalid_argument("malformed partition of {1.." + std::to_string(n) + "}");
  }
}

/// node (1-based) -> block position (0-based).
inline std::vector<std::size_t> block_index_of(const Partition& p, std::size_t n) {
  std::vector<std::size_t> of(n + 1, 0);
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    p.blocks[b].for_each([&](std::size_t v) { of[v] = b; });
  }
  return of;
}

inline Partition canonical_partition(std::vector<IndexSet> blocks) {
  std::sort(blocks.begin(), blocks.end(),
            [](const IndexSet& a, const IndexSet& b) { return a.first() < b.first(); });
  return Partition{std::move(blocks)};
}

/// Every matrix has no zero row and no zero column (the NZ class).
inline bool check_assumption(const MatrixSet& s) {
  for (const auto& m : s.mats()) {
    if (has_zero_row_or_col(m)) {
      return false;
    }
  }
  return true;
}

struct UnionConnectivity {
  bool strongly_connected = false;
  /// When not strongly connected: a 2-block split {N1, N2} with no entry
  /// (i,j), i in N1, j in N2, in any matrix.
  std::optional<Partition> split;
};

inline UnionConnectivity union_strongly_connected(const MatrixSet& s) {
  const std::size_t n = s.dim();
  const BoolMatrix u = union_matrix(s);

  auto split_from = [&](std::size_t v) {
    IndexSet n1 = reachable_from(u, v);  // closed under out-edges, so no N1->N2 edge
    return Partition{{n1, n1.complement()}};
  };

  IndexSet fwd = reachable_from(u, 1);
  if (!fwd.is_full()) {
    return {false, split_from(1)};
  }
  IndexSet coreach = reachable_from(u.transpose(), 1);
  if (!coreach.is_full()) {
    // Some v cannot reach node 1, so node 1 is outside reachable_from(u, v).
    const std::size_t v = coreach.complement().first();
    return {false, split_from(v)};
  }
  return {true, std::nullopt};
}

/// Per-matrix block maps: sigma[g-1][b] is the block every row in block b of
/// matrix g maps into (0-based block positions).
using BlockMaps = std::vector<std::vector<std::size_t>>;

namespace detail {

/// Row side of the block-permutation check: each block's rows must hit
/// exactly one block. Fills sigma, returns false when violated.
inline bool block_map_of(const BoolMatrix& m, const Partition& p,
                         const std::vector<std::size_t>& of, std::vector<std::size_t>& sigma) {
  sigma.assign(p.blocks.size(), 0);
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    IndexSet hit(m.dim());
    p.blocks[b].for_each([&](std::size_t i) { hit |= m.row(i); });
    if (hit.empty()) {
      return false;
    }
    const std::size_t target = of[hit.first()];
    if (!hit.subset_of(p.blocks[target])) {
      return false;
    }
    sigma[b] = target;
  }
  return true;
}

}  // namespace detail

/// True iff every matrix acts as a block permutation with respect to p: each
/// block's rows hit exactly one block, each block's columns are hit from
/// exactly one block, and the induced block map is a permutation.
inline bool verify_partition(const MatrixSet& s, const Partition& p) {
  validate_partition(p, s.dim());
  const auto of = block_index_of(p, s.dim());
  const std::size_t k = p.blocks.size();
  std::vector<std::size_t> sigma;
  std::vector<std::size_t> tau;
  for (const auto& m : s.mats()) {
    if (!detail::block_map_of(m, p, of, sigma)) {
      return false;
    }
    if (!detail::block_map_of(m.transpose(), p, of, tau)) {
      return false;
    }
    for (std::size_t b = 0; b < k; ++b) {
      if (tau[sigma[b]] != b) {
        return false;
      }
    }
  }
  return true;
}

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n + 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool merge(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) {
      return false;
    }
    if (a > b) {
      std::swap(a, b);
    }
    parent_[b] = a;  // keep the smallest element as representative
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

inline Partition partition_from_union_find(UnionFind& uf, std::size_t n) {
  std::vector<IndexSet> blocks;
  std::vector<std::size_t> block_of_root(n + 1, SIZE_MAX);
  for (std::size_t v = 1; v <= n; ++v) {
    const std::size_t r = uf.find(v);
    if (block_of_root[r] == SIZE_MAX) {
      block_of_root[r] = blocks.size();
      blocks.emplace_back(n);
    }
    blocks[block_of_root[r]].insert(v);
  }
  return canonical_partition(std::move(blocks));
}

/// Closes the equivalence seeded with u~v under the implications of a valid
/// block-permutation partition: members of one class must send all their
/// out-neighbours (per matrix) into one class, and receive all their
/// in-neighbours from one class.
inline Partition pair_closure(const MatrixSet& s, std::size_t u, std::size_t v) {
  const std::size_t n = s.dim();
  UnionFind uf(n);
  uf.merge(u, v);

  std::vector<BoolMatrix> transposed;
  transposed.reserve(s.size());
  for (const auto& m : s.mats()) {
    transposed.push_back(m.transpose());
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t side = 0; side < 2; ++side) {
      const auto& mats = side == 0 ? s.mats() : transposed;
      for (const auto& m : mats) {
        // Per class, merge every neighbour of every member into one class.
        std::vector<std::size_t> hub(n + 1, 0);
        for (std::size_t i = 1; i <= n; ++i) {
          const std::size_t root = uf.find(i);
          m.row(i).for_each([&](std::size_t j) {
            if (hub[root] == 0) {
              hub[root] = j;
            } else if (uf.merge(hub[root], j)) {
              changed = true;
            }
          });
        }
      }
    }
  }
  return partition_from_union_find(uf, n);
}

}  // namespace detail

/// Finds a nontrivial partition under which every matrix acts as a block
/// permutation, with the per-matrix block maps, or nullopt when none exists.
///
/// Detection runs pair closures in lexicographic pair order and returns the
/// first closure that stabilizes with at least two classes and verifies. Any
/// valid partition with a non-singleton block coarsens the closure of a pair
/// inside that block, so the scan is complete once the all-singleton case
/// (every matrix a permutation) is handled up front.
inline std::optional<std::pair<Partition, BlockMaps>> find_block_permutation_partition(
    const MatrixSet& s) {
  if (!check_assumption(s)) {
    throw std::invalid_argument(
        "find_block_permutation_partition: set has a zero row or column");
  }
  {
    UnionConnectivity c = union_strongly_connected(s);
    if (!c.strongly_connected) {
      throw std::invalid_argument(
          "find_block_permutation_partition: union digraph not strongly connected");
    }
  }
  const std::size_t n = s.dim();
  if (n == 1) {
    return std::nullopt;  // no partition with k > 1 exists
  }

  auto block_maps_for = [&](const Partition& p) {
    const auto of = block_index_of(p, n);
    BlockMaps maps;
    maps.reserve(s.size());
    std::vector<std::size_t> sigma;
    for (const auto& m : s.mats()) {
      if (!detail::block_map_of(m, p, of, sigma)) {
        throw std::logic_error("block map extraction failed on a verified partition");
      }
      maps.push_back(sigma);
    }
    return maps;
  };

  const bool all_permutations = std::all_of(s.mats().begin(), s.mats().end(),
                                            [](const BoolMatrix& m) { return m.is_permutation(); });
  if (all_permutations) {
    std::vector<IndexSet> singletons;
    singletons.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
      singletons.push_back(IndexSet::singleton(n, i));
    }
    Partition p{std::move(singletons)};
    BlockMaps maps = block_maps_for(p);
    return std::make_pair(std::move(p), std::move(maps));
  }

  for (std::size_t u = 1; u < n; ++u) {
    for (std::size_t v = u + 1; v <= n; ++v) {
      Partition p = detail::pair_closure(s, u, v);
      if (p.blocks.size() >= 2 && verify_partition(s, p)) {
        BlockMaps maps = block_maps_for(p);
        return std::make_pair(std::move(p), std::move(maps));
      }
    }
  }
  return std::nullopt;
}

enum class NzOutcome { Primitive, Reducible, BlockPermutation };

struct NzVerdict {
  NzOutcome outcome = NzOutcome::Primitive;
  /// Reducible: the 2-block split. BlockPermutation: the found partition.
  std::optional<Partition> partition;
  /// BlockPermutation only: per-matrix permutations of block positions.
  BlockMaps block_maps;
};

/// Structural primitivity decision for sets with no zero rows or columns.
/// The set fails to be primitive iff the union digraph is not strongly
/// connected or some nontrivial partition turns every matrix into a block
/// permutation; both failures come with a checkable certificate.
inline NzVerdict decide_primitive_nz(const MatrixSet& s) {
  if (!check_assumption(s)) {
    throw std::invalid_argument(
        "decide_primitive_nz: a matrix has a zero row or column; "
        "use decide_primitive_exact instead");
  }
  UnionConnectivity c = union_strongly_connected(s);
  if (!c.strongly_connected) {
    return {NzOutcome::Reducible, std::move(c.split), {}};
  }
  if (auto found = find_block_permutation_partition(s)) {
    return {NzOutcome::BlockPermutation, std::move(found->first), std::move(found->second)};
  }
  return {NzOutcome::Primitive, std::nullopt, {}};
}

}  // namespace primset

#endif
