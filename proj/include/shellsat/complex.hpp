#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shellsat/face.hpp"

namespace shellsat {

/// Maps vertex ids to the labels they were read with. Ids are assigned in
/// natural label order (see `label_less`) so that parsing is canonical.
using LabelTable = std::vector<std::string>;

/// Natural order on labels: all-digit labels first, by numeric value, then
/// everything else by byte order.
bool label_less(std::string_view a, std::string_view b) noexcept;

/// Binary search in a table sorted by `label_less`.
std::optional<VertexId> find_label(const LabelTable& table, std::string_view label) noexcept;

/// Face counts by dimension. counts[0] is f_{-1} (the empty face).
struct FVector {
  std::vector<std::size_t> counts;

  std::size_t at_dimension(int dim) const noexcept {
    const auto i = static_cast<std::size_t>(dim + 1);
    return i < counts.size() ? counts[i] : 0;
  }
  std::size_t total() const noexcept;
  friend bool operator==(const FVector&, const FVector&) = default;
};

/// A finite simplicial complex stored as the downward closure of its facets.
/// Immutable once built; copies share the label table.
///
/// Subcomplexes (skeleta, collapses, triangle removals) keep the label table
/// of the complex they came from, so their vertex ids need not be dense.
class Complex {
 public:
  Complex();

  /// Builds the downward closure of the listed faces. Faces contained in
  /// other listed faces are absorbed; their input positions are appended to
  /// `absorbed` when it is given.
  static Complex from_facets(std::span<const std::vector<std::string>> facets,
                             std::vector<std::size_t>* absorbed = nullptr);

  /// Downward closure of `generators` over an existing label table.
  static Complex from_generators(std::shared_ptr<const LabelTable> labels,
                                 std::vector<Face> generators);

  /// Facets in lexicographic order of their id sequences.
  const std::vector<Face>& facets() const noexcept { return facets_; }
  /// Every face, the empty face included, in lexicographic order.
  const std::vector<Face>& faces() const noexcept { return faces_; }

  bool contains(const Face& f) const noexcept;
  std::optional<std::size_t> index_of(const Face& f) const noexcept;
  bool is_facet(const Face& f) const noexcept;

  /// Vertex ids present in the complex, increasing.
  std::vector<VertexId> vertices() const;
  std::size_t num_vertices() const noexcept;
  /// -1 for the complex holding only the empty face.
  int dimension() const noexcept;

  const LabelTable& labels() const noexcept { return *labels_; }
  std::shared_ptr<const LabelTable> label_table() const noexcept {
    return labels_;
  }
  const std::string& label(VertexId v) const { return labels_->at(v); }
  std::optional<VertexId> find_label(std::string_view label) const noexcept;

  /// Space-separated labels, e.g. "a b c".
  std::string format(const Face& f) const;
  /// Labels of every facet, in facet order.
  std::vector<std::vector<std::string>> facet_labels() const;

  /// Stable 64-bit FNV-1a digest of the serialized facet list, as 16 hex
  /// digits. Depends on labels only, never on id assignment.
  std::string fingerprint() const;

  /// Equal facets over equal labels.
  friend bool operator==(const Complex& a, const Complex& b);

 private:
  Complex(std::shared_ptr<const LabelTable> labels, std::vector<Face> faces);

  std::shared_ptr<const LabelTable> labels_;
  std::vector<Face> facets_;
  std::vector<Face> faces_;
};

FVector f_vector(const Complex& k);
/// Alternating sum of face counts starting at the empty face.
std::int64_t reduced_euler_characteristic(const Complex& k);
int dimension(const Complex& k);
bool is_pure(const Complex& k);
/// Connectivity of the 1-skeleton.
bool is_connected(const Complex& k);
/// True iff every 3-clique of the 1-skeleton is a triangle of the complex.
/// Throws UnsupportedDimension when dim > 2.
bool is_flag2(const Complex& k);

/// Faces of dimension at most `k`.
Complex skeleton(const Complex& complex, int k);
/// Subcomplex of faces contained in one of `faces`; each must belong to
/// `complex` (NotAFace otherwise).
Complex induced(const Complex& complex, std::span<const Face> faces);
/// Vertices are the nonempty faces, labelled "{a|b|c}"; facets are the
/// maximal chains.
Complex barycentric_subdivision(const Complex& k);
Complex barycentric_subdivision(const Complex& k, int depth);

}  // namespace shellsat
