#include "shellsat/collapse.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <unordered_set>

#include "bitset_key.hpp"
#include "shellsat/error.hpp"

namespace shellsat {

namespace {

struct OutOfBudget {};

Complex from_face_list(const Complex& like, std::vector<Face> faces) {
  return Complex::from_generators(like.label_table(), std::move(faces));
}

// Searches collapses of a fixed complex over an index view of its faces.
class CollapseSearch {
 public:
  CollapseSearch(const Complex& k, NodeBudget& budget)
      : faces_(k.faces()), budget_(budget), supers_(faces_.size()), present_(faces_.size(), 1),
        bits_(faces_.size()) {
    for (std::size_t i = 0; i < faces_.size(); ++i) {
      bits_.set(i);
      for (const Face& s : faces_[i].subfaces()) {
        if (s == faces_[i]) continue;
        supers_[*k.index_of(s)].push_back(static_cast<std::uint32_t>(i));
      }
      if (!faces_[i].empty()) ++alive_;
    }
    // Higher-dimensional free faces first, lexicographic within a dimension.
    for (std::size_t i = 0; i < faces_.size(); ++i) {
      if (!faces_[i].empty()) by_priority_.push_back(static_cast<std::uint32_t>(i));
    }
    std::stable_sort(by_priority_.begin(), by_priority_.end(), [&](auto a, auto b) {
      return faces_[a].size() > faces_[b].size();
    });
  }

  bool run() { return dfs(); }

  std::vector<CollapseStep> steps() const {
    std::vector<CollapseStep> out;
    for (auto [free, facet] : trail_) out.push_back({faces_[free], faces_[facet]});
    return out;
  }

  Face remaining_vertex() const {
    for (std::size_t i = 0; i < faces_.size(); ++i) {
      if (present_[i] && faces_[i].size() == 1) return faces_[i];
    }
    return Face{};
  }

 private:
  static constexpr std::size_t kMemoCap = 4'000'000;

  bool is_facet(std::uint32_t i) const {
    return std::none_of(supers_[i].begin(), supers_[i].end(),
                        [&](auto s) { return present_[s]; });
  }

  int current_dimension() const {
    int d = -1;
    for (std::size_t i = 0; i < faces_.size(); ++i) {
      if (present_[i]) d = std::max(d, faces_[i].dimension());
    }
    return d;
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> legal_steps(bool first_only) const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (auto i : by_priority_) {
      if (!present_[i] || is_facet(i)) continue;
      std::uint32_t only = 0;
      int facets = 0;
      for (auto s : supers_[i]) {
        if (present_[s] && is_facet(s)) {
          only = s;
          if (++facets > 1) break;
        }
      }
      if (facets == 1) {
        out.emplace_back(i, only);
        if (first_only) break;
      }
    }
    return out;
  }

  std::vector<std::uint32_t> apply(std::uint32_t free) {
    std::vector<std::uint32_t> removed{free};
    for (auto s : supers_[free]) {
      if (present_[s]) removed.push_back(s);
    }
    for (auto r : removed) {
      present_[r] = 0;
      bits_.reset(r);
    }
    alive_ -= removed.size();
    return removed;
  }

  void restore(const std::vector<std::uint32_t>& removed) {
    for (auto r : removed) {
      present_[r] = 1;
      bits_.set(r);
    }
    alive_ += removed.size();
  }

  bool dfs() {
    if (!budget_.charge()) throw OutOfBudget{};
    if (alive_ == 1) return true;
    if (memo_.contains(bits_)) return false;
    const bool greedy = current_dimension() <= 2;
    for (auto [free, facet] : legal_steps(greedy)) {
      auto removed = apply(free);
      trail_.emplace_back(free, facet);
      if (dfs()) return true;
      trail_.pop_back();
      restore(removed);
    }
    if (memo_.size() < kMemoCap) memo_.insert(bits_);
    return false;
  }

  const std::vector<Face>& faces_;
  NodeBudget& budget_;
  std::vector<std::vector<std::uint32_t>> supers_;
  std::vector<char> present_;
  detail::BitsetKey bits_;
  std::size_t alive_ = 0;
  std::vector<std::uint32_t> by_priority_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> trail_;
  std::unordered_set<detail::BitsetKey, detail::BitsetKeyHash> memo_;
};

// Collapses `k` to a point within the shared budget, or returns nullopt.
std::optional<CollapseCertificate> search_collapse(const Complex& k, NodeBudget& budget) {
  if (k.num_vertices() == 0) return std::nullopt;
  CollapseSearch search(k, budget);
  if (!search.run()) return std::nullopt;
  CollapseCertificate cert;
  cert.steps = search.steps();
  cert.target = Complex::from_generators(k.label_table(), {search.remaining_vertex()});
  return cert;
}

}  // namespace

Complex apply_collapse(const Complex& k, const CollapseStep& step) {
  for (const Face* f : {&step.free_face, &step.facet}) {
    if (!k.contains(*f)) {
      throw Error(ErrorKind::NotAFace, "{" + k.format(*f) + "} is not a face of the complex");
    }
  }
  if (step.free_face.empty() || !step.free_face.is_proper_subset_of(step.facet)) {
    throw Error(ErrorKind::MalformedCertificate,
                "{" + k.format(step.free_face) + "} is not a nonempty proper subface of {" +
                    k.format(step.facet) + "}");
  }
  if (!k.is_facet(step.facet)) {
    throw Error(ErrorKind::NotFree, "{" + k.format(step.facet) + "} is not a facet");
  }
  for (const Face& other : k.facets()) {
    if (other != step.facet && step.free_face.is_subset_of(other)) {
      throw Error(ErrorKind::NotFree, "{" + k.format(step.free_face) +
                                          "} also lies in facet {" + k.format(other) + "}");
    }
  }
  std::vector<Face> kept;
  for (const Face& f : k.faces()) {
    if (!step.free_face.is_subset_of(f)) kept.push_back(f);
  }
  return from_face_list(k, std::move(kept));
}

std::vector<CollapseStep> free_faces(const Complex& k) {
  std::vector<CollapseStep> out;
  for (const Face& tau : k.faces()) {
    if (tau.empty() || k.is_facet(tau)) continue;
    const Face* only = nullptr;
    int count = 0;
    for (const Face& sigma : k.facets()) {
      if (tau.is_subset_of(sigma)) {
        only = &sigma;
        if (++count > 1) break;
      }
    }
    if (count == 1) out.push_back({tau, *only});
  }
  return out;
}

Complex remove_triangles(const Complex& k, std::span<const Face> triangles) {
  std::set<Face> drop;
  for (const Face& t : triangles) {
    if (t.size() != 3) {
      throw Error(ErrorKind::Parameter, "{" + k.format(t) + "} is not a triangle");
    }
    if (!k.is_facet(t)) {
      throw Error(ErrorKind::NotAFace, "{" + k.format(t) + "} is not a triangle facet");
    }
    drop.insert(t);
  }
  std::vector<Face> kept;
  for (const Face& f : k.faces()) {
    if (!drop.contains(f)) kept.push_back(f);
  }
  return from_face_list(k, std::move(kept));
}

CollapseResult is_collapsible(const Complex& k, const SearchOptions& options) {
  NodeBudget budget(options.budget);
  try {
    if (auto cert = search_collapse(k, budget)) return std::move(*cert);
    return NotCollapsible{};
  } catch (const OutOfBudget&) {
    return BudgetExceeded{"collapse", budget.used()};
  }
}

RemovalResult collapsible_after_removing(const Complex& k, std::size_t count,
                                         const SearchOptions& options) {
  if (!is_pure(k) || k.dimension() != 2) {
    throw Error(ErrorKind::Purity, "removal search requires a pure 2-dimensional complex");
  }
  if (!is_connected(k)) throw Error(ErrorKind::Connectivity, "complex is not connected");
  // A collapse to a point leaves reduced Euler characteristic 0, and each
  // removed triangle lowers it by one.
  if (reduced_euler_characteristic(k) != static_cast<std::int64_t>(count)) return Impossible{};
  const auto& triangles = k.facets();
  if (count > triangles.size()) return Impossible{};

  NodeBudget budget(options.budget);
  std::vector<std::size_t> pick(count);
  for (std::size_t i = 0; i < count; ++i) pick[i] = i;
  try {
    while (true) {
      if (!budget.charge()) throw OutOfBudget{};
      std::vector<Face> removed;
      for (auto i : pick) removed.push_back(triangles[i]);
      const Complex rest = remove_triangles(k, removed);
      if (auto cert = search_collapse(rest, budget)) {
        cert->removed_triangles = std::move(removed);
        return std::move(*cert);
      }
      // Next k-subset in lexicographic order.
      std::size_t i = count;
      while (i > 0 && pick[i - 1] == triangles.size() - count + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < count; ++j) pick[j] = pick[j - 1] + 1;
    }
  } catch (const OutOfBudget&) {
    return BudgetExceeded{"collapse-after-removal", budget.used()};
  }
  return Impossible{};
}

Verdict verify_collapse(const Complex& k, const CollapseCertificate& cert) {
  std::set<Face> seen;
  for (std::size_t i = 0; i < cert.removed_triangles.size(); ++i) {
    const Face& t = cert.removed_triangles[i];
    if (t.size() != 3) {
      throw Error(ErrorKind::MalformedCertificate,
                  "removed entry {" + k.format(t) + "} is not a triangle", i);
    }
    if (!seen.insert(t).second) {
      throw Error(ErrorKind::MalformedCertificate,
                  "triangle {" + k.format(t) + "} removed twice", i);
    }
    if (!k.is_facet(t)) {
      return Verdict::fail("removed triangle {" + k.format(t) + "} is not a facet of the complex");
    }
  }
  Complex current = remove_triangles(k, cert.removed_triangles);
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const auto& step = cert.steps[i];
    if (step.free_face.empty() || !step.free_face.is_proper_subset_of(step.facet)) {
      throw Error(ErrorKind::MalformedCertificate,
                  "step " + std::to_string(i + 1) + ": free face is not a proper subface",
                  i);
    }
    try {
      current = apply_collapse(current, step);
    } catch (const Error& e) {
      return Verdict::fail("step " + std::to_string(i + 1) + ": " + e.what(), i);
    }
  }
  if (!(current == cert.target)) {
    return Verdict::fail("collapses end at a complex different from the target",
                         cert.steps.size());
  }
  return Verdict::pass();
}

}  // namespace shellsat
