#pragma once

#include <variant>
#include <vector>

#include "shellsat/complex.hpp"
#include "shellsat/search.hpp"

namespace shellsat {

/// An ordering of all facets of a pure complex in which every facet after
/// the first meets the union of its predecessors in a pure subcomplex of
/// codimension one.
struct ShellingCertificate {
  std::vector<Face> order;
  friend bool operator==(const ShellingCertificate&, const ShellingCertificate&) = default;
};

struct Unshellable {};

using ShellingResult = std::variant<ShellingCertificate, Unshellable, BudgetExceeded>;

/// Checks every prefix condition. Throws Purity for a non-pure complex and
/// MalformedCertificate when `cert` is not a permutation of the facets.
Verdict verify_shelling(const Complex& k, const ShellingCertificate& cert);

/// Depth-first search over facet orders with set memoization.
///
/// A facet that meets the current union in at least d ridges can always be
/// appended without losing extendability, so those are placed eagerly
/// (smallest first) and only the remaining addable facets are branched on,
/// in lexicographic order. The result is deterministic for a given input and
/// does not depend on `options.threads`.
///
/// Throws Purity for non-pure input.
ShellingResult find_shelling(const Complex& k, const SearchOptions& options = {});

}  // namespace shellsat
