#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shellsat/collapse.hpp"
#include "shellsat/complex.hpp"
#include "shellsat/search.hpp"
#include "shellsat/shelling.hpp"
#include "shellsat/wsat.hpp"

namespace shellsat {

/// Turns a shelling of a pure 2-complex into a weakly K3-saturated spanning
/// tree of its 1-skeleton.
///
/// The tree starts as the two least edges of the first triangle. A later
/// triangle that meets the union of its predecessors in one edge brings a
/// new vertex, which joins the tree through the least edge of the triangle
/// containing it. The saturating order lists, triangle by triangle, the
/// triangle's edge that is neither old nor a tree edge (if any), witnessed
/// by the triangle itself.
///
/// Throws MalformedCertificate when `cert` is not a valid shelling of `l`,
/// and Purity unless `l` is pure of dimension 2.
SaturationCertificate shelling_to_saturated_tree(const Complex& l, const ShellingCertificate& cert);

/// Turns a saturating spanning tree of the 1-skeleton of a flag 2-complex
/// into a collapse to a point: triangles not spanned by a witness are
/// removed, each added edge is then collapsed into its witness triangle in
/// reverse order, and the tree is pruned from its largest leaf down to its
/// least vertex.
///
/// Throws Flagness for a non-flag complex or a witness that is not a
/// triangle, and MalformedCertificate when `cert` does not verify against
/// the 1-skeleton or its start is not a spanning tree.
CollapseCertificate saturation_to_collapse(const Complex& l, const SaturationCertificate& cert);

/// True iff the certificate removes exactly reduced-Euler-characteristic
/// many triangles. Only meaningful for certificates ending at a point.
bool check_removal_count(const Complex& l, const CollapseCertificate& cert);

enum class StageStatus { Passed, Failed, Skipped, BudgetExceeded };

struct StageVerdict {
  std::string stage;
  StageStatus status = StageStatus::Skipped;
  std::string detail;
};

enum class ChainStatus { Complete, Unshellable, BudgetExceeded, Failed };

/// Everything `run_chain` produced for one subject.
struct ChainReport {
  std::string input_fingerprint;
  /// 0 when the input was already flag, 2 otherwise.
  int subdivision_depth = 0;
  Complex subject;
  std::int64_t chi = 0;
  ChainStatus status = ChainStatus::Failed;
  std::vector<StageVerdict> stages;
  std::optional<ShellingCertificate> shelling;
  std::optional<SaturationCertificate> saturation;
  std::optional<CollapseCertificate> collapse;
  std::optional<std::size_t> removed_count;
  /// For unshellable subjects: whether some spanning tree still saturates.
  std::optional<bool> wsat_tree;
};

/// Runs shelling search, then both conversions, verifying every stage and
/// comparing the removal count with the reduced Euler characteristic.
/// Subdivides twice first when the input is not flag. Throws Purity unless
/// the input is pure 2-dimensional, Connectivity when it is disconnected.
ChainReport run_chain(const Complex& k, const SearchOptions& options = {});

std::string_view to_string(StageStatus s) noexcept;
std::string_view to_string(ChainStatus s) noexcept;

}  // namespace shellsat
