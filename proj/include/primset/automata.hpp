#ifndef PRIMSET_AUTOMATA_HPP
#define PRIMSET_AUTOMATA_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "primset/bool_matrix.hpp"
#include "primset/pvstruct.hpp"
#include "primset/resource_limits.hpp"

namespace primset {

inline bool is_automaton(const MatrixSet& s) {
  for (const auto& m : s.mats()) {
    for (std::size_t i = 1; i <= m.dim(); ++i) {
      if (m.row(i).count() != 1) {
        return false;
      }
    }
  }
  return true;
}

/// A deterministic complete automaton: binary matrices with exactly one 1 per
/// row. Letters are the 1-based matrix indices.
class Automaton {
 public:
  explicit Automaton(MatrixSet base) : base_(std::move(base)) {
    if (!is_automaton(base_)) {
      throw std::invalid_argument("Automaton: some row does not have exactly one entry");
    }
  }

  const MatrixSet& base() const { return base_; }
  std::size_t num_states() const { return base_.dim(); }
  std::size_t num_letters() const { return base_.size(); }

  /// delta(state, letter), both 1-based.
  std::size_t next(std::size_t state, std::size_t letter) const {
    return base_.mat(letter).row(state).first();
  }

 private:
  MatrixSet base_;
};

struct SyncResult {
  bool synchronizing = false;
  /// Shortest reset word, lexicographically least among the shortest.
  std::optional<Word> word;
  std::optional<std::size_t> target_state;
};

/// Pair-merging criterion: the automaton is synchronizing iff every pair of
/// states maps to a single state under some word. Backward BFS over the pair
/// graph, O(m n^2).
inline bool is_synchronizing(const Automaton& a) {
  const std::size_t n = a.num_states();
  if (n == 1) {
    return true;
  }
  auto pair_id = [n](std::size_t p, std::size_t q) {
    if (p > q) {
      std::swap(p, q);
    }
    return (p - 1) * n + (q - 1);  // p < q, sparse but simple
  };

  std::vector<char> mergeable(n * n, 0);
  std::vector<std::vector<std::uint32_t>> rev(n * n);
  std::queue<std::uint32_t> queue;

  for (std::size_t p = 1; p <= n; ++p) {
    for (std::size_t q = p + 1; q <= n; ++q) {
      const auto id = static_cast<std::uint32_t>(pair_id(p, q));
      for (std::size_t c = 1; c <= a.num_letters(); ++c) {
        const std::size_t ip = a.next(p, c);
        const std::size_t iq = a.next(q, c);
        if (ip == iq) {
          if (!mergeable[id]) {
            mergeable[id] = 1;
            queue.push(id);
          }
        } else {
          rev[pair_id(ip, iq)].push_back(id);
        }
      }
    }
  }
  std::size_t reached = 0;
  while (!queue.empty()) {
    const auto id = queue.front();
    queue.pop();
    ++reached;
    for (auto src : rev[id]) {
      if (!mergeable[src]) {
        mergeable[src] = 1;
        queue.push(src);
      }
    }
  }
  return reached == n * (n - 1) / 2;
}

/// Exact shortest reset word by BFS over nonempty subsets of states, starting
/// from the full set; a letter maps a subset to its image. The first singleton
/// reached gives the shortest word, lexicographically least among shortest.
inline SyncResult shortest_sync_word(const Automaton& a, const ResourceLimits& limits = {}) {
  const std::size_t n = a.num_states();
  const MatrixSet& base = a.base();
  Deadline deadline(limits.timeout);

  std::vector<IndexSet> states;
  std::unordered_map<IndexSet, std::uint32_t, IndexSetHash> seen;
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> via;

  auto word_to = [&](std::uint32_t leaf_parent, std::size_t letter) {
    Word w{letter};
    std::uint32_t at = leaf_parent;
    while (at != UINT32_MAX) {
      if (via[at] != 0) {
        w.push_back(via[at]);
      }
      at = parent[at];
    }
    std::reverse(w.begin(), w.end());
    return w;
  };

  auto image = [&](const IndexSet& q, std::size_t letter) {
    IndexSet img(n);
    const BoolMatrix& m = base.mat(letter);
    q.for_each([&](std::size_t v) { img |= m.row(v); });
    return img;
  };

  states.push_back(IndexSet::full(n));
  seen.emplace(states.back(), 0);
  parent.push_back(UINT32_MAX);
  via.push_back(0);  // root marker: contributes no letter

  std::size_t depth = 0;
  std::size_t layer_begin = 0;
  while (layer_begin < states.size()) {
    if (deadline.expired()) {
      throw limit_exceeded("time budget exhausted");
    }
    if (limits.max_depth != 0 && depth >= limits.max_depth) {
      throw limit_exceeded("depth limit (" + std::to_string(limits.max_depth) + ") reached");
    }
    const std::size_t layer_end = states.size();
    for (std::size_t idx = layer_begin; idx < layer_end; ++idx) {
      for (std::size_t c = 1; c <= a.num_letters(); ++c) {
        IndexSet img = image(states[idx], c);
        if (img.count() == 1) {
          SyncResult r;
          r.synchronizing = true;
          r.target_state = img.first();
          r.word = word_to(static_cast<std::uint32_t>(idx), c);
          return r;
        }
        if (seen.find(img) != seen.end()) {
          continue;
        }
        if (states.size() >= limits.max_states) {
          throw limit_exceeded("state limit (" + std::to_string(limits.max_states) + ") reached");
        }
        seen.emplace(img, static_cast<std::uint32_t>(states.size()));
        states.push_back(std::move(img));
        parent.push_back(static_cast<std::uint32_t>(idx));
        via.push_back(static_cast<std::uint32_t>(c));
      }
    }
    layer_begin = layer_end;
    ++depth;
  }
  return {};  // subset space exhausted without a singleton: not synchronizing
}

/// The classical two-letter family on states {1..n}: letter a is the identity
/// except n -> 1, letter b is the cyclic shift i -> i+1 (n wraps to 1). Its
/// shortest reset words have length (n-1)^2.
inline Automaton cerny_automaton(std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("cerny_automaton: need n >= 2");
  }
  BoolMatrix a(n);
  BoolMatrix b(n);
  for (std::size_t i = 1; i <= n; ++i) {
    a.set(i, i < n ? i : 1);
    b.set(i, i < n ? i + 1 : 1);
  }
  return Automaton(MatrixSet({std::move(a), std::move(b)}));
}

/// Carves a synchronizing automaton out of a positive product: one letter per
/// word position, entrywise dominated by the corresponding factor, such that
/// the positional word 1..t resets the automaton to node 1.
///
/// Level sets of nodes still connected to node 1 through the remaining suffix
/// are computed in reverse word order; each connected node keeps its smallest
/// edge into the next level set, every other node keeps its smallest outgoing
/// edge (one exists since no matrix has a zero row).
inline std::pair<Automaton, Word> extract_automaton(const MatrixSet& s, const Word& w) {
  if (!check_assumption(s)) {
    throw std::invalid_argument("extract_automaton: set has a zero row or column");
  }
  if (!is_positive(word_product(s, w))) {
    throw std::invalid_argument("extract_automaton: word product is not positive");
  }
  const std::size_t n = s.dim();
  const std::size_t t = w.size();

  std::vector<IndexSet> connected(t + 1, IndexSet(n));
  connected[t] = IndexSet::singleton(n, 1);
  for (std::size_t l = t; l >= 1; --l) {
    const BoolMatrix& m = s.mat(w[l - 1]);
    for (std::size_t v = 1; v <= n; ++v) {
      if (m.row(v).intersects(connected[l])) {
        connected[l - 1].insert(v);
      }
    }
  }

  std::vector<BoolMatrix> letters;
  letters.reserve(t);
  for (std::size_t l = 1; l <= t; ++l) {
    const BoolMatrix& m = s.mat(w[l - 1]);
    BoolMatrix kept(n);
    for (std::size_t v = 1; v <= n; ++v) {
      const IndexSet choices =
          connected[l - 1].contains(v) ? m.row(v) & connected[l] : m.row(v);
      kept.set(v, choices.first());
    }
    letters.push_back(std::move(kept));
  }

  Word positional(t);
  for (std::size_t l = 1; l <= t; ++l) {
    positional[l - 1] = l;
  }
  return {Automaton(MatrixSet(std::move(letters))), std::move(positional)};
}

/// Cubic reset-word bound floor(n(7n^2+6n-16)/48), clamped at 0 where the
/// cubic goes nonpositive.
inline long long bound_f_default(long long n) {
  const long long num = n * (7 * n * n + 6 * n - 16);
  if (num <= 0) {
    return 0;
  }
  return num / 48;
}

/// 2 f(n) + n - 1: a positive product of at most this length exists for every
/// primitive set without zero rows/columns, for any reset-word bound f.
template <class F>
long long positive_product_bound(long long n, F&& f) {
  return 2 * f(n) + n - 1;
}

inline long long positive_product_bound(long long n) {
  return positive_product_bound(n, bound_f_default);
}

struct ColumnWitness {
  Word word;
  std::size_t column = 0;
};

/// Exact shortest word whose product has an all-positive column, found by BFS
/// over column supports. Prepending a letter maps a support C to the rows with
/// an edge into C, which is exact, so states are subsets rather than whole
/// product patterns. Seeds are the column supports of single letters.
inline ColumnWitness shortest_positive_column_word(const MatrixSet& s,
                                                   const ResourceLimits& limits = {}) {
  const std::size_t n = s.dim();
  Deadline deadline(limits.timeout);

  struct Node {
    IndexSet support;
    std::uint32_t parent;
    std::uint32_t letter;  // letter prepended to reach this node (seed: last letter)
    std::uint32_t column;  // tracked column, propagated from the seed
  };
  std::vector<Node> nodes;
  std::unordered_map<IndexSet, std::uint32_t, IndexSetHash> seen;

  auto finish = [&](std::uint32_t leaf) {
    ColumnWitness out;
    out.column = nodes[leaf].column;
    for (std::uint32_t at = leaf; at != UINT32_MAX; at = nodes[at].parent) {
      out.word.push_back(nodes[at].letter);
    }
    return out;  // letters were collected front-to-back already
  };

  auto push = [&](IndexSet&& support, std::uint32_t parent, std::size_t letter,
                  std::uint32_t column) -> std::optional<std::uint32_t> {
    if (seen.find(support) != seen.end()) {
      return std::nullopt;
    }
    if (nodes.size() >= limits.max_states) {
      throw limit_exceeded("state limit (" + std::to_string(limits.max_states) + ") reached");
    }
    const auto id = static_cast<std::uint32_t>(nodes.size());
    seen.emplace(support, id);
    nodes.push_back({std::move(support), parent, static_cast<std::uint32_t>(letter), column});
    return id;
  };

  for (std::size_t g = 1; g <= s.size(); ++g) {
    const BoolMatrix tr = s.mat(g).transpose();
    for (std::size_t j = 1; j <= n; ++j) {
      IndexSet support = tr.row(j);
      if (support.empty()) {
        continue;
      }
      if (auto id = push(std::move(support), UINT32_MAX, g, static_cast<std::uint32_t>(j))) {
        if (nodes[*id].support.is_full()) {
          return finish(*id);
        }
      }
    }
  }

  std::size_t layer_begin = 0;
  while (layer_begin < nodes.size()) {
    if (deadline.expired()) {
      throw limit_exceeded("time budget exhausted");
    }
    const std::size_t layer_end = nodes.size();
    for (std::size_t idx = layer_begin; idx < layer_end; ++idx) {
      for (std::size_t g = 1; g <= s.size(); ++g) {
        const BoolMatrix& m = s.mat(g);
        IndexSet pre(n);
        for (std::size_t v = 1; v <= n; ++v) {
          if (m.row(v).intersects(nodes[idx].support)) {
            pre.insert(v);
          }
        }
        if (auto id = push(std::move(pre), static_cast<std::uint32_t>(idx), g,
                           nodes[idx].column)) {
          if (nodes[*id].support.is_full()) {
            return finish(*id);
          }
        }
      }
    }
    layer_begin = layer_end;
  }
  throw limit_exceeded("no positive column reachable (set not primitive?)");
}

/// Builds a positive product for a primitive set without zero rows/columns as
/// w1 . c . w2: w1 has a positive column i, w2 (from the transposed set, word
/// reversed) has a positive row j, and c routes i to j along the union
/// digraph in fewer than n steps.
inline Word construct_positive_product(const MatrixSet& s, const ResourceLimits& limits = {}) {
  if (!check_assumption(s)) {
    throw std::invalid_argument("construct_positive_product: set has a zero row or column");
  }
  if (decide_primitive_nz(s).outcome != NzOutcome::Primitive) {
    throw std::invalid_argument("construct_positive_product: set is not primitive");
  }

  ColumnWitness left = shortest_positive_column_word(s, limits);
  if (is_positive(word_product(s, left.word))) {
    return left.word;
  }

  ColumnWitness right = shortest_positive_column_word(transpose_set(s), limits);
  Word w2(right.word.rbegin(), right.word.rend());
  const std::size_t i = left.column;
  const std::size_t j = right.column;

  // Shortest connector i -> j in the union digraph; each hop is realized by
  // the smallest matrix carrying that edge.
  Word connector;
  if (i != j) {
    const BoolMatrix u = union_matrix(s);
    std::vector<std::size_t> prev(s.dim() + 1, 0);
    std::vector<std::size_t> frontier{i};
    prev[i] = i;
    while (prev[j] == 0 && !frontier.empty()) {
      std::vector<std::size_t> next;
      for (std::size_t v : frontier) {
        u.row(v).for_each([&](std::size_t w) {
          if (prev[w] == 0) {
            prev[w] = v;
            next.push_back(w);
          }
        });
      }
      frontier = std::move(next);
    }
    if (prev[j] == 0) {
      throw std::logic_error("construct_positive_product: union digraph not strongly connected");
    }
    std::vector<std::size_t> path{j};
    while (path.back() != i) {
      path.push_back(prev[path.back()]);
    }
    std::reverse(path.begin(), path.end());
    for (std::size_t step = 0; step + 1 < path.size(); ++step) {
      std::size_t g = 0;
      for (std::size_t cand = 1; cand <= s.size() && g == 0; ++cand) {
        if (s.mat(cand).get(path[step], path[step + 1])) {
          g = cand;
        }
      }
      connector.push_back(g);
    }
  }

  Word w = left.word;
  w.insert(w.end(), connector.begin(), connector.end());
  w.insert(w.end(), w2.begin(), w2.end());
  if (!is_positive(word_product(s, w))) {
    throw std::logic_error("construct_positive_product: assembled word is not positive");
  }
  return w;
}

}  // namespace primset

#endif
