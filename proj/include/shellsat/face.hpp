#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace shellsat {

using VertexId = std::uint32_t;

/// A face of a simplicial complex: a strictly increasing sequence of vertex
/// ids. Complexes are capped at dimension 3, so a face holds at most four
/// vertices and lives inline.
class Face {
 public:
  static constexpr std::size_t kCapacity = 4;

  Face() = default;
  Face(std::initializer_list<VertexId> ids);
  /// Sorts `ids`. Throws MalformedFace on a repeated vertex and
  /// UnsupportedDimension when more than four vertices are given.
  explicit Face(std::span<const VertexId> ids);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  /// dim = |face| - 1; the empty face has dimension -1.
  int dimension() const noexcept { return static_cast<int>(size_) - 1; }

  const VertexId* begin() const noexcept { return ids_.data(); }
  const VertexId* end() const noexcept { return ids_.data() + size_; }
  VertexId operator[](std::size_t i) const noexcept { return ids_[i]; }
  VertexId front() const noexcept { return ids_[0]; }
  VertexId back() const noexcept { return ids_[size_ - 1]; }
  std::span<const VertexId> ids() const noexcept { return {begin(), end()}; }

  bool contains(VertexId v) const noexcept;
  bool is_subset_of(const Face& other) const noexcept;
  bool is_proper_subset_of(const Face& other) const noexcept {
    return size_ < other.size_ && is_subset_of(other);
  }

  /// The face with the i-th vertex dropped.
  Face without_index(std::size_t i) const noexcept;
  Face without(VertexId v) const noexcept;
  Face with(VertexId v) const;
  Face intersection(const Face& other) const noexcept;

  /// Sub-face selected by the bits of `mask` (bit i keeps the i-th vertex).
  Face select(unsigned mask) const noexcept;

  /// All 2^|face| subsets, including the empty face and the face itself.
  std::vector<Face> subfaces() const;
  /// Codimension-one faces, in lexicographic order.
  std::vector<Face> boundary() const;

  friend bool operator==(const Face& a, const Face& b) noexcept;
  friend std::strong_ordering operator<=>(const Face& a, const Face& b) noexcept;

 private:
  std::array<VertexId, kCapacity> ids_{};
  std::uint8_t size_ = 0;
};

struct FaceHash {
  std::size_t operator()(const Face& f) const noexcept;
};

}  // namespace shellsat
