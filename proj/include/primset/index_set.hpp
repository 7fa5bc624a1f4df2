#ifndef PRIMSET_INDEX_SET_HPP
#define PRIMSET_INDEX_SET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace primset {

/// A subset of {1..n} stored as a packed bitset. All public indices are
/// 1-based; bit i-1 of the backing words corresponds to element i.
class IndexSet {
 public:
  IndexSet() = default;

  explicit IndexSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static IndexSet full(std::size_t n) {
    IndexSet s(n);
    for (auto& w : s.words_) {
      w = ~std::uint64_t{0};
    }
    s.mask_tail();
    return s;
  }

  static IndexSet singleton(std::size_t n, std::size_t i) {
    IndexSet s(n);
    s.insert(i);
    return s;
  }

  std::size_t universe() const { return n_; }

  bool contains(std::size_t i) const {
    check_index(i);
    return (words_[(i - 1) >> 6] >> ((i - 1) & 63)) & 1;
  }

  void insert(std::size_t i) {
    check_index(i);
    words_[(i - 1) >> 6] |= std::uint64_t{1} << ((i - 1) & 63);
  }

  void erase(std::size_t i) {
    check_index(i);
    words_[(i - 1) >> 6] &= ~(std::uint64_t{1} << ((i - 1) & 63));
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) {
      c += static_cast<std::size_t>(std::popcount(w));
    }
    return c;
  }

  bool empty() const {
    for (auto w : words_) {
      if (w != 0) {
        return false;
      }
    }
    return true;
  }

  bool is_full() const { return count() == n_; }

  /// Smallest element, or 0 when empty.
  std::size_t first() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) {
        return 64 * w + static_cast<std::size_t>(std::countr_zero(words_[w])) + 1;
      }
    }
    return 0;
  }

  IndexSet& operator|=(const IndexSet& o) {
    check_same_universe(o);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      words_[w] |= o.words_[w];
    }
    return *this;
  }

  IndexSet& operator&=(const IndexSet& o) {
    check_same_universe(o);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      words_[w] &= o.words_[w];
    }
    return *this;
  }

  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }

  IndexSet complement() const {
    IndexSet out(n_);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      out.words_[w] = ~words_[w];
    }
    out.mask_tail();
    return out;
  }

  bool intersects(const IndexSet& o) const {
    check_same_universe(o);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] & o.words_[w]) {
        return true;
      }
    }
    return false;
  }

  bool subset_of(const IndexSet& o) const {
    check_same_universe(o);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] & ~o.words_[w]) {
        return false;
      }
    }
    return true;
  }

  template <class F>
  void for_each(F f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        f(64 * w + static_cast<std::size_t>(std::countr_zero(bits)) + 1);
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ n_;
    for (auto w : words_) {
      h = mix(h ^ w);
    }
    return static_cast<std::size_t>(h);
  }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  void mask_tail() {
    if (n_ % 64 != 0 && !words_.empty()) {
      words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }
  }

  void check_index(std::size_t i) const {
    if (i < 1 || i > n_) {
      throw std::out_of_range("IndexSet: index out of range");
    }
  }

  void check_same_universe(const IndexSet& o) const {
    if (n_ != o.n_) {
      throw std::invalid_argument("IndexSet: universe size mismatch");
    }
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct IndexSetHash {
  std::size_t operator()(const IndexSet& s) const { return s.hash(); }
};

}  // namespace primset

#endif
