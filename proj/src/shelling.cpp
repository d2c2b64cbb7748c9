#include "shellsat/shelling.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <unordered_set>

#include "bitset_key.hpp"
#include "shellsat/error.hpp"

namespace shellsat {

Verdict verify_shelling(const Complex& k, const ShellingCertificate& cert) {
  if (!is_pure(k)) throw Error(ErrorKind::Purity, "shelling requires a pure complex");
  const auto& facets = k.facets();
  if (cert.order.size() != facets.size()) {
    throw Error(ErrorKind::MalformedCertificate,
                "certificate lists " + std::to_string(cert.order.size()) +
                    " facets, complex has " + std::to_string(facets.size()));
  }
  std::set<Face> seen;
  for (std::size_t i = 0; i < cert.order.size(); ++i) {
    if (!k.is_facet(cert.order[i])) {
      throw Error(ErrorKind::MalformedCertificate,
                  "entry " + std::to_string(i + 1) + " {" + k.format(cert.order[i]) +
                      "} is not a facet",
                  i);
    }
    if (!seen.insert(cert.order[i]).second) {
      throw Error(ErrorKind::MalformedCertificate,
                  "facet {" + k.format(cert.order[i]) + "} listed twice", i);
    }
  }

  const std::size_t ridge_size = static_cast<std::size_t>(k.dimension());
  for (std::size_t i = 1; i < cert.order.size(); ++i) {
    const Face& current = cert.order[i];
    std::vector<Face> meets;
    for (std::size_t j = 0; j < i; ++j) meets.push_back(current.intersection(cert.order[j]));
    // The intersection complex is generated by the pairwise intersections;
    // it is pure of dimension d-1 iff each maximal generator is a ridge.
    for (const Face& m : meets) {
      const bool maximal = std::none_of(meets.begin(), meets.end(), [&](const Face& o) {
        return m.is_proper_subset_of(o);
      });
      if (maximal && m.size() != ridge_size) {
        return Verdict::fail("facet " + std::to_string(i + 1) + " {" + k.format(current) +
                                 "} meets its predecessors in {" + k.format(m) +
                                 "}, not a pure codimension-one subcomplex",
                             i);
      }
    }
  }
  return Verdict::pass();
}

namespace {

struct OutOfBudget {};

enum class Status { NotAddable, Branch, Forced };

// Facet-index view of a complex shared by all workers.
struct ShellingProblem {
  explicit ShellingProblem(const Complex& k)
      : facets(k.facets()), dim(k.dimension()), masks(1u << (dim + 1)) {
    const auto& faces = k.faces();
    subface.resize(facets.size());
    for (std::size_t j = 0; j < facets.size(); ++j) {
      for (unsigned m = 0; m < masks; ++m) {
        auto idx = k.index_of(facets[j].select(m));
        subface[j].push_back(static_cast<std::uint32_t>(*idx));
      }
    }
    num_faces = faces.size();
    std::map<VertexId, std::vector<std::uint32_t>> star;
    for (std::size_t j = 0; j < facets.size(); ++j) {
      for (VertexId v : facets[j]) star[v].push_back(static_cast<std::uint32_t>(j));
    }
    neighbors.resize(facets.size());
    for (std::size_t j = 0; j < facets.size(); ++j) {
      auto& out = neighbors[j];
      for (VertexId v : facets[j]) {
        for (auto o : star[v]) {
          if (o != j) out.push_back(o);
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
  }

  const std::vector<Face>& facets;
  int dim;
  unsigned masks;
  std::size_t num_faces = 0;
  std::vector<std::vector<std::uint32_t>> subface;
  std::vector<std::vector<std::uint32_t>> neighbors;
};

class ShellingSearch {
 public:
  ShellingSearch(const ShellingProblem& p, NodeBudget& budget)
      : p_(p),
        budget_(budget),
        count_(p.num_faces, 0),
        placed_(p.facets.size(), 0),
        bits_(p.facets.size()) {}

  // True when a full shelling starting with `start` exists; order() then
  // holds it. Throws OutOfBudget.
  bool run_from(std::uint32_t start) {
    place(start);
    auto forced = close_under_forced({start});
    if (dfs()) return true;
    undo(forced);
    unplace(start);
    return false;
  }

  const std::vector<std::uint32_t>& order() const { return order_; }

 private:
  static constexpr std::size_t kMemoCap = 4'000'000;

  Status classify(std::uint32_t j) const {
    const auto& sub = p_.subface[j];
    const unsigned full = p_.masks - 1;
    unsigned present_ridges = 0;
    int r = 0;
    for (int i = 0; i <= p_.dim; ++i) {
      const unsigned ridge = full & ~(1u << i);
      if (count_[sub[ridge]] > 0) {
        present_ridges |= 1u << i;
        ++r;
      }
    }
    if (r >= p_.dim) return Status::Forced;
    if (r == 0) return Status::NotAddable;
    for (unsigned m = 1; m < full; ++m) {
      if (count_[sub[m]] == 0) continue;
      bool covered = false;
      for (int i = 0; i <= p_.dim && !covered; ++i) {
        if ((present_ridges >> i & 1u) && !(m >> i & 1u)) covered = true;
      }
      if (!covered) return Status::NotAddable;
    }
    return Status::Branch;
  }

  void place(std::uint32_t j) {
    placed_[j] = 1;
    bits_.set(j);
    order_.push_back(j);
    for (auto f : p_.subface[j]) ++count_[f];
  }

  void unplace(std::uint32_t j) {
    placed_[j] = 0;
    bits_.reset(j);
    order_.pop_back();
    for (auto f : p_.subface[j]) --count_[f];
  }

  void undo(const std::vector<std::uint32_t>& placed) {
    for (auto it = placed.rbegin(); it != placed.rend(); ++it) unplace(*it);
  }

  // Places forced facets, smallest first, until none is left.
  std::vector<std::uint32_t> close_under_forced(std::initializer_list<std::uint32_t> seeds) {
    std::vector<std::uint32_t> placed;
    std::set<std::uint32_t> dirty;
    for (auto s : seeds) dirty.insert(p_.neighbors[s].begin(), p_.neighbors[s].end());
    while (!dirty.empty()) {
      const auto j = *dirty.begin();
      dirty.erase(dirty.begin());
      if (placed_[j] || classify(j) != Status::Forced) continue;
      place(j);
      placed.push_back(j);
      dirty.insert(p_.neighbors[j].begin(), p_.neighbors[j].end());
    }
    return placed;
  }

  bool dfs() {
    if (!budget_.charge()) throw OutOfBudget{};
    if (order_.size() == p_.facets.size()) return true;
    if (memo_.contains(bits_)) return false;
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t j = 0; j < p_.facets.size(); ++j) {
      if (!placed_[j] && classify(j) == Status::Branch) candidates.push_back(j);
    }
    for (auto c : candidates) {
      place(c);
      auto forced = close_under_forced({c});
      if (dfs()) return true;
      undo(forced);
      unplace(c);
    }
    if (memo_.size() < kMemoCap) memo_.insert(bits_);
    return false;
  }

  const ShellingProblem& p_;
  NodeBudget& budget_;
  std::vector<std::uint32_t> count_;
  std::vector<char> placed_;
  detail::BitsetKey bits_;
  std::vector<std::uint32_t> order_;
  std::unordered_set<detail::BitsetKey, detail::BitsetKeyHash> memo_;
};

enum class StartOutcome : std::uint8_t { Pending, Failed, Found, OutOfBudget };

// Links of shellable complexes are shellable, so the facets through any face
// of codimension at least 2 are connected through ridges.
bool links_strongly_connected(const Complex& k) {
  const auto& facets = k.facets();
  const auto d = static_cast<std::size_t>(k.dimension());
  for (const Face& sigma : k.faces()) {
    if (sigma.size() + 1 > d) continue;
    std::vector<std::size_t> star;
    for (std::size_t j = 0; j < facets.size(); ++j) {
      if (sigma.is_subset_of(facets[j])) star.push_back(j);
    }
    std::vector<char> seen(star.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const auto a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < star.size(); ++b) {
        if (seen[b] || facets[star[a]].intersection(facets[star[b]]).size() != d) continue;
        seen[b] = 1;
        ++reached;
        stack.push_back(b);
      }
    }
    if (reached != star.size()) return false;
  }
  return true;
}

// Rank over GF(2) of the boundary map from i-faces to (i-1)-faces.
std::size_t boundary_rank(const Complex& k, int i) {
  std::vector<const Face*> rows, cols;
  for (const Face& f : k.faces()) {
    if (f.dimension() == i) rows.push_back(&f);
    if (f.dimension() == i - 1) cols.push_back(&f);
  }
  std::map<Face, std::size_t> col_index;
  for (std::size_t c = 0; c < cols.size(); ++c) col_index[*cols[c]] = c;
  std::vector<detail::BitsetKey> matrix;
  for (const Face* r : rows) {
    detail::BitsetKey row(cols.size());
    for (const Face& b : r->boundary()) row.set(col_index.at(b));
    matrix.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols.size() && rank < matrix.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < matrix.size() && !matrix[pivot].test(c)) ++pivot;
    if (pivot == matrix.size()) continue;
    std::swap(matrix[rank], matrix[pivot]);
    for (std::size_t r = 0; r < matrix.size(); ++r) {
      if (r != rank && matrix[r].test(c)) matrix[r].xor_with(matrix[rank]);
    }
    ++rank;
  }
  return rank;
}

// A shellable d-complex is a wedge of d-spheres up to homotopy, so its
// reduced homology vanishes below dimension d.
bool homology_below_top_vanishes(const Complex& k) {
  const int d = k.dimension();
  const FVector f = f_vector(k);
  std::vector<std::size_t> rank(static_cast<std::size_t>(d) + 2, 0);
  for (int i = 0; i <= d; ++i) rank[static_cast<std::size_t>(i)] = boundary_rank(k, i);
  for (int i = 0; i < d; ++i) {
    // Reduced: the augmentation to the empty face is boundary_rank(k, 0).
    const std::size_t cycles = f.at_dimension(i) - rank[static_cast<std::size_t>(i)];
    if (cycles != rank[static_cast<std::size_t>(i) + 1]) return false;
  }
  return true;
}

}  // namespace

ShellingResult find_shelling(const Complex& k, const SearchOptions& options) {
  if (!is_pure(k)) throw Error(ErrorKind::Purity, "shelling search requires a pure complex");
  if (k.dimension() < 0) throw Error(ErrorKind::EmptyComplex, "complex has no vertices");
  const auto& facets = k.facets();
  if (k.dimension() == 0) {
    // Any order of points is a shelling.
    return ShellingCertificate{facets};
  }

  if (!links_strongly_connected(k) || !homology_below_top_vanishes(k)) return Unshellable{};

  const ShellingProblem problem(k);
  NodeBudget budget(options.budget);
  const auto m = static_cast<std::uint32_t>(facets.size());
  std::vector<StartOutcome> outcome(m, StartOutcome::Pending);
  std::vector<std::vector<std::uint32_t>> found(m);
  std::atomic<std::uint32_t> next{0};
  std::atomic<std::uint32_t> best{m};

  auto worker = [&] {
    ShellingSearch search(problem, budget);
    while (true) {
      const auto s = next.fetch_add(1);
      if (s >= m || s > best.load()) return;
      try {
        if (search.run_from(s)) {
          found[s] = search.order();
          outcome[s] = StartOutcome::Found;
          auto cur = best.load();
          while (s < cur && !best.compare_exchange_weak(cur, s)) {
          }
          return;
        }
        outcome[s] = StartOutcome::Failed;
      } catch (const OutOfBudget&) {
        outcome[s] = StartOutcome::OutOfBudget;
        return;
      }
    }
  };

  const unsigned threads = std::max(1u, std::min(options.threads, m));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  // The sequential contract: the first start that did not fail decides.
  for (std::uint32_t s = 0; s < m; ++s) {
    switch (outcome[s]) {
      case StartOutcome::Failed:
        continue;
      case StartOutcome::Found: {
        ShellingCertificate cert;
        for (auto j : found[s]) cert.order.push_back(facets[j]);
        return cert;
      }
      case StartOutcome::OutOfBudget:
      case StartOutcome::Pending:
        return BudgetExceeded{"shelling", budget.used()};
    }
  }
  return Unshellable{};
}

}  // namespace shellsat
