#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace shellsat::detail {

// Fixed-width bit set used as a memo key by the searches.
class BitsetKey {
 public:
  BitsetKey() = default;
  explicit BitsetKey(std::size_t bits) : words_((bits + 63) / 64, 0) {}

  void set(std::size_t i) noexcept { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) noexcept { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const noexcept { return words_[i / 64] >> (i % 64) & 1u; }

  void xor_with(const BitsetKey& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  std::vector<std::uint64_t>& words() noexcept { return words_; }

  friend bool operator==(const BitsetKey&, const BitsetKey&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

struct BitsetKeyHash {
  std::size_t operator()(const BitsetKey& k) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : k.words()) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace shellsat::detail
