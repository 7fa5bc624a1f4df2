#ifndef PRIMSET_SEMIGROUP_HPP
#define PRIMSET_SEMIGROUP_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "primset/bool_matrix.hpp"
#include "primset/resource_limits.hpp"

namespace primset {

struct Verdict {
  bool primitive = false;
  /// Shortest positive word, lexicographically least among the shortest.
  std::optional<Word> witness;
  std::size_t explored_states = 0;
  std::size_t frontier_depth_reached = 0;
};

namespace detail {

struct Exploration {
  bool found_positive = false;
  Word witness;
  std::vector<BoolMatrix> states;  // discovery order; excludes a found all-ones target
  std::size_t depth_reached = 0;
};

/// Breadth-first closure of the product semigroup. States are whole product
/// patterns, deduplicated across layers; expansion appends one generator on
/// the right, generators in set order. FIFO order plus ascending generator
/// order makes the first word reaching any state its lexicographically least
/// shortest word, so the witness is canonical.
inline Exploration explore_products(const MatrixSet& s, const ResourceLimits& limits,
                                    bool stop_at_positive) {
  const std::size_t depth_cap =
      limits.max_depth != 0 ? limits.max_depth : default_product_depth_cap(s.dim());
  Deadline deadline(limits.timeout);

  Exploration out;
  std::unordered_map<BoolMatrix, std::uint32_t, BoolMatrixHash> seen;
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> via;

  auto witness_of = [&](std::uint32_t leaf_parent, std::size_t leaf_gen) {
    Word w{leaf_gen};
    std::uint32_t at = leaf_parent;
    while (at != UINT32_MAX) {
      w.push_back(via[at]);
      at = parent[at];
    }
    std::reverse(w.begin(), w.end());
    return w;
  };

  auto try_insert = [&](BoolMatrix&& pattern, std::uint32_t from,
                        std::size_t gen) -> std::optional<Word> {
    if (stop_at_positive && is_positive(pattern)) {
      return witness_of(from, gen);
    }
    if (seen.find(pattern) != seen.end()) {
      return std::nullopt;
    }
    if (out.states.size() >= limits.max_states) {
      throw limit_exceeded("state limit (" + std::to_string(limits.max_states) + ") reached");
    }
    const auto id = static_cast<std::uint32_t>(out.states.size());
    seen.emplace(pattern, id);
    out.states.push_back(std::move(pattern));
    parent.push_back(from);
    via.push_back(static_cast<std::uint32_t>(gen));
    return std::nullopt;
  };

  // Layer 1: the generators themselves (the empty word is not a product).
  std::size_t layer_begin = 0;
  for (std::size_t g = 1; g <= s.size(); ++g) {
    if (auto w = try_insert(BoolMatrix(s.mat(g)), UINT32_MAX, g)) {
      out.found_positive = true;
      out.witness = std::move(*w);
      out.depth_reached = 1;
      return out;
    }
  }
  out.depth_reached = 1;

  while (layer_begin < out.states.size()) {
    if (deadline.expired()) {
      throw limit_exceeded("time budget exhausted");
    }
    const std::size_t layer_end = out.states.size();
    for (std::size_t idx = layer_begin; idx < layer_end; ++idx) {
      for (std::size_t g = 1; g <= s.size(); ++g) {
        BoolMatrix next = bool_product(out.states[idx], s.mat(g));
        if (auto w = try_insert(std::move(next), static_cast<std::uint32_t>(idx), g)) {
          out.found_positive = true;
          out.witness = std::move(*w);
          out.depth_reached += 1;
          return out;
        }
      }
    }
    if (out.states.size() > layer_end) {
      out.depth_reached += 1;
      if (out.depth_reached > depth_cap) {
        throw limit_exceeded("depth limit (" + std::to_string(depth_cap) + ") reached");
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

}  // namespace detail

/// Complete decision by semigroup closure: reports primitive with the shortest
/// (then lexicographically least) witness, or not-primitive once the set of
/// reachable product patterns closes without an all-ones member.
inline Verdict decide_primitive_exact(const MatrixSet& s, const ResourceLimits& limits = {}) {
  detail::Exploration e = detail::explore_products(s, limits, true);
  Verdict v;
  v.primitive = e.found_positive;
  v.explored_states = e.states.size();
  v.frontier_depth_reached = e.depth_reached;
  if (e.found_positive) {
    if (!is_positive(word_product(s, e.witness))) {
      throw std::logic_error("decide_primitive_exact: witness failed positivity recheck");
    }
    v.witness = std::move(e.witness);
  }
  return v;
}

/// l(M): length of the shortest positive product, or nullopt when none exists.
inline std::optional<std::size_t> shortest_positive_length(const MatrixSet& s,
                                                           const ResourceLimits& limits = {}) {
  Verdict v = decide_primitive_exact(s, limits);
  if (!v.primitive) {
    return std::nullopt;
  }
  return v.witness->size();
}

/// The full set of reachable product patterns, as a machine-checkable
/// non-primitivity certificate: closed under right-multiplication by every
/// generator and free of the all-ones pattern.
inline std::vector<BoolMatrix> certify_not_primitive_closure(const MatrixSet& s,
                                                             const ResourceLimits& limits = {}) {
  detail::Exploration e = detail::explore_products(s, limits, true);
  if (e.found_positive) {
    throw std::invalid_argument("certify_not_primitive_closure: set is primitive");
  }
  return std::move(e.states);
}

}  // namespace primset

#endif
