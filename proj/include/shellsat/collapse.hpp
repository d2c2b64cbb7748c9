#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "shellsat/complex.hpp"
#include "shellsat/search.hpp"

namespace shellsat {

/// Removal of every face containing `free_face`, legal when `facet` is the
/// only facet containing it and differs from it.
struct CollapseStep {
  Face free_face;
  Face facet;
  friend bool operator==(const CollapseStep&, const CollapseStep&) = default;
};

/// Triangles to delete first, then the collapses that take what is left to
/// `target`.
struct CollapseCertificate {
  std::vector<Face> removed_triangles;
  std::vector<CollapseStep> steps;
  Complex target;
};

struct NotCollapsible {};
struct Impossible {};

using CollapseResult = std::variant<CollapseCertificate, NotCollapsible, BudgetExceeded>;
using RemovalResult = std::variant<CollapseCertificate, Impossible, BudgetExceeded>;

/// Throws NotAFace when either face is missing, MalformedCertificate when
/// free_face is not a proper subface of facet, and NotFree (naming the
/// second facet) when the free face lies in more than one facet.
Complex apply_collapse(const Complex& k, const CollapseStep& step);

/// Every legal step, ordered by free face then facet. The empty face is
/// never offered.
std::vector<CollapseStep> free_faces(const Complex& k);

/// Deletes the given triangles (only the triangles, not their boundaries).
/// Throws NotAFace for a triangle outside the complex.
Complex remove_triangles(const Complex& k, std::span<const Face> triangles);

/// Searches for a collapse to a single vertex. Steps with higher-dimensional
/// free faces are tried first; complexes already proven stuck are
/// remembered. In dimension <= 2 every legal step preserves collapsibility,
/// so only the first step is followed there.
CollapseResult is_collapsible(const Complex& k, const SearchOptions& options = {});

/// Tries every k-subset of triangles in lexicographic order. Returns
/// Impossible at once when k differs from the reduced Euler characteristic.
RemovalResult collapsible_after_removing(const Complex& k, std::size_t count,
                                         const SearchOptions& options = {});

/// Replays the certificate. Structural defects (a removed face that is not a
/// triangle, a step whose free face is not a proper subface of its facet)
/// throw MalformedCertificate carrying the step index; a step that is not
/// legal at its turn fails the verdict at that index.
Verdict verify_collapse(const Complex& k, const CollapseCertificate& cert);

}  // namespace shellsat
