#ifndef PRIMSET_RESOURCE_LIMITS_HPP
#define PRIMSET_RESOURCE_LIMITS_HPP

#include <chrono>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace primset {

/// Raised when a search gives up instead of answering. It is never a verdict:
/// callers either retry with bigger limits or report "undecided".
class limit_exceeded : public std::runtime_error {
 public:
  explicit limit_exceeded(const std::string& what) : std::runtime_error("undecided: " + what) {}
};

struct ResourceLimits {
  std::size_t max_states = 10'000'000;
  /// 0 means the per-search default (for product BFS: min(2^(n*n), 10^6)).
  std::size_t max_depth = 0;
  /// 0 means no wall-clock budget.
  std::chrono::milliseconds timeout{0};
};

/// min(2^(n*n), cap) without overflowing.
inline std::size_t saturated_pow2(std::size_t exponent, std::size_t cap) {
  if (exponent >= 63) {
    return cap;
  }
  const std::size_t v = std::size_t{1} << exponent;
  return v < cap ? v : cap;
}

inline std::size_t default_product_depth_cap(std::size_t n) {
  return saturated_pow2(n * n, 1'000'000);
}

class Deadline {
 public:
  explicit Deadline(std::chrono::milliseconds budget) : enabled_(budget.count() > 0) {
    if (enabled_) {
      end_ = std::chrono::steady_clock::now() + budget;
    }
  }

  bool expired() const { return enabled_ && std::chrono::steady_clock::now() > end_; }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point end_;
};

}  // namespace primset

#endif
