#include "shellsat/face.hpp"

#include <algorithm>
#include <string>

#include "shellsat/error.hpp"

namespace shellsat {

Face::Face(std::initializer_list<VertexId> ids)
    : Face(std::span<const VertexId>(ids.begin(), ids.size())) {}

Face::Face(std::span<const VertexId> ids) {
  if (ids.size() > kCapacity) {
    throw Error(ErrorKind::UnsupportedDimension,
                "face with " + std::to_string(ids.size()) +
                    " vertices exceeds the dimension cap of 3");
  }
  std::copy(ids.begin(), ids.end(), ids_.begin());
  size_ = static_cast<std::uint8_t>(ids.size());
  std::sort(ids_.begin(), ids_.begin() + size_);
  if (std::adjacent_find(begin(), end()) != end()) {
    throw Error(ErrorKind::MalformedFace, "face lists a vertex twice");
  }
}

bool Face::contains(VertexId v) const noexcept {
  return std::binary_search(begin(), end(), v);
}

bool Face::is_subset_of(const Face& other) const noexcept {
  return size_ <= other.size_ &&
         std::includes(other.begin(), other.end(), begin(), end());
}

Face Face::without_index(std::size_t i) const noexcept {
  Face out;
  for (std::size_t j = 0; j < size_; ++j) {
    if (j != i) out.ids_[out.size_++] = ids_[j];
  }
  return out;
}

Face Face::without(VertexId v) const noexcept {
  Face out;
  for (VertexId w : *this) {
    if (w != v) out.ids_[out.size_++] = w;
  }
  return out;
}

Face Face::with(VertexId v) const {
  if (contains(v)) return *this;
  std::array<VertexId, kCapacity + 1> buf{};
  std::copy(begin(), end(), buf.begin());
  buf[size_] = v;
  return Face(std::span<const VertexId>(buf.data(), size_ + 1u));
}

Face Face::intersection(const Face& other) const noexcept {
  Face out;
  auto it = std::set_intersection(begin(), end(), other.begin(), other.end(),
                                  out.ids_.begin());
  out.size_ = static_cast<std::uint8_t>(it - out.ids_.begin());
  return out;
}

Face Face::select(unsigned mask) const noexcept {
  Face out;
  for (std::size_t j = 0; j < size_; ++j) {
    if (mask & (1u << j)) out.ids_[out.size_++] = ids_[j];
  }
  return out;
}

std::vector<Face> Face::subfaces() const {
  std::vector<Face> out;
  const unsigned full = 1u << size_;
  out.reserve(full);
  for (unsigned mask = 0; mask < full; ++mask) out.push_back(select(mask));
  return out;
}

std::vector<Face> Face::boundary() const {
  std::vector<Face> out;
  if (size_ == 0) return out;
  out.reserve(size_);
  // Dropping the last vertex first yields lexicographic order.
  for (std::size_t i = size_; i-- > 0;) out.push_back(without_index(i));
  return out;
}

bool operator==(const Face& a, const Face& b) noexcept {
  return a.size_ == b.size_ && std::equal(a.begin(), a.end(), b.begin());
}

std::strong_ordering operator<=>(const Face& a, const Face& b) noexcept {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(),
                                                b.end());
}

std::size_t FaceHash::operator()(const Face& f) const noexcept {
  std::size_t h = f.size();
  for (VertexId v : f) h = h * 1000003u ^ std::hash<VertexId>{}(v);
  return h;
}

}  // namespace shellsat
