#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace shellsat {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct SearchOptions {
  /// Maximum number of search-tree nodes before giving up.
  std::uint64_t budget = kDefaultBudget;
  /// Worker threads for branch-parallel searches; 1 means sequential.
  unsigned threads = 1;
};

/// The search ran out of nodes. Never a verdict about the instance.
struct BudgetExceeded {
  std::string stage;
  std::uint64_t nodes = 0;
};

/// Outcome of a certificate check. On failure `index` names the first
/// offending position (0-based) when there is one.
struct Verdict {
  bool ok = true;
  std::optional<std::size_t> index;
  std::string reason;

  explicit operator bool() const noexcept { return ok; }

  static Verdict pass() { return {}; }
  static Verdict fail(std::string reason,
                      std::optional<std::size_t> index = std::nullopt) {
    return {false, index, std::move(reason)};
  }
};

/// Node counter shared by the workers of one search.
class NodeBudget {
 public:
  explicit NodeBudget(std::uint64_t limit) : limit_(limit) {}

  /// Charges one node; false once the limit has been passed.
  bool charge() noexcept {
    return used_.fetch_add(1, std::memory_order_relaxed) < limit_;
  }
  bool exhausted() const noexcept {
    return used_.load(std::memory_order_relaxed) > limit_;
  }
  std::uint64_t used() const noexcept {
    return used_.load(std::memory_order_relaxed);
  }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
};

}  // namespace shellsat
