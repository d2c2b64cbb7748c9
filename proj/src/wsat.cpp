#include "shellsat/wsat.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "bitset_key.hpp"
#include "shellsat/error.hpp"

namespace shellsat {

Graph::Graph(std::shared_ptr<const LabelTable> labels, std::vector<VertexId> vertices,
             std::vector<Face> edges)
    : labels_(std::move(labels)), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const Face& e : edges_) {
    if (e.size() != 2) throw Error(ErrorKind::MalformedFace, "graph edge must have two vertices");
    if (!has_vertex(e[0]) || !has_vertex(e[1])) {
      throw Error(ErrorKind::Containment, "edge endpoint missing from the vertex set");
    }
  }
}

Graph Graph::from_complex(const Complex& k) {
  std::vector<Face> edges;
  for (const Face& f : k.faces()) {
    if (f.size() == 2) edges.push_back(f);
  }
  return Graph(k.label_table(), k.vertices(), std::move(edges));
}

bool Graph::has_vertex(VertexId v) const noexcept {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Graph::has_edge(const Face& e) const noexcept {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::string Graph::format(const Face& f) const {
  std::string out;
  for (VertexId v : f) {
    if (!out.empty()) out += ' ';
    out += labels_->at(v);
  }
  return out;
}

Complex Graph::to_complex() const {
  std::vector<Face> gens(edges_.begin(), edges_.end());
  for (VertexId v : vertices_) gens.push_back(Face{v});
  return Complex::from_generators(labels_, std::move(gens));
}

namespace {

struct OutOfBudget {};

// Dense re-indexing of a host graph: vertices 0..n-1, edges 0..m-1 in the
// host's lexicographic order.
struct HostIndex {
  explicit HostIndex(const Graph& host) : host(host), n(host.num_vertices()), m(host.num_edges()) {
    incident.resize(n);
    ends.reserve(m);
    for (std::uint32_t e = 0; e < m; ++e) {
      const auto u = local(host.edges()[e][0]);
      const auto v = local(host.edges()[e][1]);
      ends.emplace_back(u, v);
      incident[u].push_back({v, e});
      incident[v].push_back({u, e});
    }
  }

  std::uint32_t local(VertexId v) const {
    auto it = std::lower_bound(host.vertices().begin(), host.vertices().end(), v);
    return static_cast<std::uint32_t>(it - host.vertices().begin());
  }

  // Edge id of {u, v}, or m when the host lacks it.
  std::uint32_t edge_id(std::uint32_t u, std::uint32_t v) const {
    for (auto [w, e] : incident[u]) {
      if (w == v) return e;
    }
    return static_cast<std::uint32_t>(m);
  }

  struct Incidence {
    std::uint32_t other;
    std::uint32_t edge;
  };

  const Graph& host;
  std::size_t n;
  std::size_t m;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ends;
  std::vector<std::vector<Incidence>> incident;
};

// Rank over GF(2) of the boundary map from the host's triangles to its
// edges. Witness triangles of a saturation order are independent (each owns
// the edge it adds, which no earlier witness contains), so at least
// m - rank edges must be present from the start.
std::size_t triangle_boundary_rank(const HostIndex& h) {
  std::vector<detail::BitsetKey> rows;
  for (std::uint32_t e = 0; e < h.m; ++e) {
    const auto [u, v] = h.ends[e];
    for (const auto& [w, uw] : h.incident[u]) {
      if (w <= v) continue;
      const std::uint32_t vw = h.edge_id(v, w);
      if (vw == h.m) continue;
      detail::BitsetKey row(h.m);
      row.set(e);
      row.set(uw);
      row.set(vw);
      rows.push_back(std::move(row));
    }
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < h.m && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot].test(c)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r].test(c)) rows[r].xor_with(rows[rank]);
    }
    ++rank;
  }
  return rank;
}

// An edge set of the host together with its adjacency rows.
struct EdgeState {
  EdgeState(const HostIndex& h) : present(h.m, 0), adj(h.n, detail::BitsetKey(h.n)) {}

  bool has(std::uint32_t e) const { return present[e] != 0; }

  void add(const HostIndex& h, std::uint32_t e) {
    present[e] = 1;
    ++count;
    auto [u, v] = h.ends[e];
    adj[u].set(v);
    adj[v].set(u);
  }

  // Least common neighbour of u and v, or n.
  std::uint32_t common_neighbour(std::uint32_t u, std::uint32_t v) const {
    const auto& a = adj[u].words();
    const auto& b = adj[v].words();
    for (std::size_t w = 0; w < a.size(); ++w) {
      if (const auto both = a[w] & b[w]) {
        return static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(both)));
      }
    }
    return static_cast<std::uint32_t>(adj.size());
  }

  bool addable(const HostIndex& h, std::uint32_t e) const {
    auto [u, v] = h.ends[e];
    return !has(e) && common_neighbour(u, v) < h.n;
  }

  std::vector<char> present;
  std::vector<detail::BitsetKey> adj;
  std::size_t count = 0;
};

// Missing edges that the addition of `e` may have made addable.
template <class Push>
void touch_after_adding(const HostIndex& h, const EdgeState& s, std::uint32_t e, Push push) {
  auto [u, v] = h.ends[e];
  for (auto [x, ux] : h.incident[u]) {
    if (!s.has(ux) && s.adj[v].test(x)) push(ux);
  }
  for (auto [x, vx] : h.incident[v]) {
    if (!s.has(vx) && s.adj[u].test(x)) push(vx);
  }
}

// Closes `s` under K3 completion, in any order.
void close(const HostIndex& h, EdgeState& s) {
  std::vector<std::uint32_t> work;
  for (std::uint32_t e = 0; e < h.m; ++e) {
    if (s.addable(h, e)) work.push_back(e);
  }
  while (!work.empty()) {
    const auto e = work.back();
    work.pop_back();
    if (s.has(e)) continue;
    s.add(h, e);
    touch_after_adding(h, s, e, [&](std::uint32_t f) { work.push_back(f); });
  }
}

void check_subgraph(const Graph& host, const Graph& start) {
  for (VertexId v : start.vertices()) {
    if (!host.has_vertex(v)) {
      throw Error(ErrorKind::Containment, "vertex " + start.labels().at(v) + " is not in the host");
    }
  }
  for (const Face& e : start.edges()) {
    if (!host.has_edge(e)) {
      throw Error(ErrorKind::Containment, "edge {" + start.format(e) + "} is not in the host");
    }
  }
}

EdgeState load(const HostIndex& h, const Graph& start) {
  EdgeState s(h);
  for (const Face& e : start.edges()) {
    s.add(h, h.edge_id(h.local(e[0]), h.local(e[1])));
  }
  return s;
}

std::size_t count_components(const Graph& g) {
  std::vector<std::size_t> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto local = [&](VertexId v) {
    return static_cast<std::size_t>(
        std::lower_bound(g.vertices().begin(), g.vertices().end(), v) - g.vertices().begin());
  };
  std::size_t comps = g.num_vertices();
  for (const Face& e : g.edges()) {
    auto a = find(local(e[0]));
    auto b = find(local(e[1]));
    if (a != b) {
      parent[b] = a;
      --comps;
    }
  }
  return comps;
}

// Searches for at most `limit` host edges whose closure is the whole host.
// Edges are decided in lexicographic order, including before excluding.
class SubgraphSearch {
 public:
  SubgraphSearch(const HostIndex& h, std::size_t host_components, NodeBudget& budget)
      : h_(h), host_components_(host_components), budget_(budget) {}

  std::optional<std::vector<std::uint32_t>> run(std::size_t limit) {
    limit_ = limit;
    memo_.clear();
    chosen_.clear();
    EdgeState empty(h_);
    std::vector<std::uint32_t> parent(h_.n);
    std::iota(parent.begin(), parent.end(), 0u);
    if (dfs(0, empty, parent, h_.n)) return chosen_;
    return std::nullopt;
  }

 private:
  static constexpr std::size_t kMemoCap = 2'000'000;

  static std::uint32_t find(std::vector<std::uint32_t>& parent, std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  // Every host edge must end up in the closure of the final subgraph, which
  // is at most the closure of what is chosen plus everything undecided.
  bool can_still_saturate(std::size_t i, const EdgeState& s) const {
    EdgeState upper = s;
    for (auto e = static_cast<std::uint32_t>(i); e < h_.m; ++e) {
      if (!upper.has(e)) upper.add(h_, e);
    }
    close(h_, upper);
    return upper.count == h_.m;
  }

  detail::BitsetKey key(std::size_t i, const EdgeState& s) const {
    detail::BitsetKey k(h_.m + 32);
    for (std::uint32_t e = 0; e < h_.m; ++e) {
      if (s.has(e)) k.set(e);
    }
    for (std::size_t b = 0; b < 32; ++b) {
      if (i >> b & 1u) k.set(h_.m + b);
    }
    return k;
  }

  bool dfs(std::size_t i, const EdgeState& s, std::vector<std::uint32_t>& parent,
           std::size_t comps) {
    if (!budget_.charge()) throw OutOfBudget{};
    if (s.count == h_.m) return true;
    const std::size_t used = chosen_.size();
    // Closure never joins components, so each remaining merge costs an edge.
    if (used + comps - host_components_ > limit_) return false;
    if (i == h_.m || !can_still_saturate(i, s)) return false;

    auto k = key(i, s);
    const std::size_t slack = limit_ - used;
    if (auto it = memo_.find(k); it != memo_.end() && it->second >= slack) return false;

    const auto e = static_cast<std::uint32_t>(i);
    if (!s.has(e) && used < limit_) {
      EdgeState next = s;
      auto next_parent = parent;
      next.add(h_, e);
      touch_then_close(next, e);
      auto [u, v] = h_.ends[e];
      const auto ru = find(next_parent, u);
      const auto rv = find(next_parent, v);
      std::size_t next_comps = comps;
      if (ru != rv) {
        next_parent[rv] = ru;
        --next_comps;
      }
      chosen_.push_back(e);
      if (dfs(i + 1, next, next_parent, next_comps)) return true;
      chosen_.pop_back();
    }
    if (dfs(i + 1, s, parent, comps)) return true;

    if (memo_.size() < kMemoCap) {
      auto& best = memo_[std::move(k)];
      best = std::max(best, slack);
    }
    return false;
  }

  void touch_then_close(EdgeState& s, std::uint32_t e) const {
    std::vector<std::uint32_t> work;
    touch_after_adding(h_, s, e, [&](std::uint32_t f) { work.push_back(f); });
    while (!work.empty()) {
      const auto f = work.back();
      work.pop_back();
      if (s.has(f)) continue;
      s.add(h_, f);
      touch_after_adding(h_, s, f, [&](std::uint32_t g) { work.push_back(g); });
    }
  }

  const HostIndex& h_;
  std::size_t host_components_;
  NodeBudget& budget_;
  std::size_t limit_ = 0;
  std::vector<std::uint32_t> chosen_;
  std::unordered_map<detail::BitsetKey, std::size_t, detail::BitsetKeyHash> memo_;
};

Graph subgraph_from(const Graph& host, const std::vector<std::uint32_t>& ids) {
  std::vector<Face> edges;
  for (auto e : ids) edges.push_back(host.edges()[e]);
  return Graph(host.label_table(), host.vertices(), std::move(edges));
}

}  // namespace

Graph k3_closure(const Graph& host, const Graph& start) {
  check_subgraph(host, start);
  const HostIndex h(host);
  EdgeState s = load(h, start);
  close(h, s);
  std::vector<Face> edges;
  for (std::uint32_t e = 0; e < h.m; ++e) {
    if (s.has(e)) edges.push_back(host.edges()[e]);
  }
  return Graph(host.label_table(), host.vertices(), std::move(edges));
}

bool is_weakly_saturated(const Graph& host, const Graph& start) {
  return k3_closure(host, start).num_edges() == host.num_edges();
}

SaturationResult extract_saturation_order(const Graph& host, const Graph& start) {
  check_subgraph(host, start);
  const HostIndex h(host);
  EdgeState s = load(h, start);
  std::set<std::uint32_t> ready;
  for (std::uint32_t e = 0; e < h.m; ++e) {
    if (s.addable(h, e)) ready.insert(e);
  }
  SaturationCertificate cert;
  cert.start = Graph(host.label_table(), host.vertices(), start.edges());
  while (!ready.empty()) {
    const auto e = *ready.begin();
    ready.erase(ready.begin());
    auto [u, v] = h.ends[e];
    const auto w = s.common_neighbour(u, v);
    s.add(h, e);
    cert.order.push_back(host.edges()[e]);
    cert.witnesses.push_back(Face{host.vertices()[u], host.vertices()[v], host.vertices()[w]});
    touch_after_adding(h, s, e, [&](std::uint32_t f) { ready.insert(f); });
  }
  if (s.count != h.m) return NotSaturated{};
  return cert;
}

Verdict verify_saturation(const Graph& host, const SaturationCertificate& cert) {
  if (cert.pattern != "K3") {
    throw Error(ErrorKind::MalformedCertificate, "unsupported pattern graph " + cert.pattern);
  }
  if (cert.start.vertices() != host.vertices()) {
    throw Error(ErrorKind::MalformedCertificate, "start graph is not spanning");
  }
  for (const Face& e : cert.start.edges()) {
    if (!host.has_edge(e)) {
      throw Error(ErrorKind::MalformedCertificate,
                  "start edge {" + host.format(e) + "} is not a host edge");
    }
  }
  if (cert.witnesses.size() != cert.order.size()) {
    throw Error(ErrorKind::MalformedCertificate, "one witness is required per added edge");
  }
  std::set<Face> present(cert.start.edges().begin(), cert.start.edges().end());
  for (std::size_t i = 0; i < cert.order.size(); ++i) {
    const Face& e = cert.order[i];
    if (!host.has_edge(e) || present.contains(e)) {
      throw Error(ErrorKind::MalformedCertificate,
                  "entry " + std::to_string(i + 1) + " {" + host.format(e) +
                      "} is not a missing host edge",
                  i);
    }
    present.insert(e);
  }
  if (present.size() != host.num_edges()) {
    throw Error(ErrorKind::MalformedCertificate, "order omits " +
                                                     std::to_string(host.num_edges() - present.size()) +
                                                     " host edge(s)");
  }

  present.clear();
  present.insert(cert.start.edges().begin(), cert.start.edges().end());
  for (std::size_t i = 0; i < cert.order.size(); ++i) {
    const Face& e = cert.order[i];
    const Face& j = cert.witnesses[i];
    present.insert(e);
    if (j.size() != 3 || !e.is_subset_of(j)) {
      return Verdict::fail("witness {" + host.format(j) + "} does not contain {" +
                               host.format(e) + "}",
                           i);
    }
    for (const Face& side : j.boundary()) {
      if (!present.contains(side)) {
        return Verdict::fail("witness {" + host.format(j) + "} lacks edge {" +
                                 host.format(side) + "} when {" + host.format(e) + "} is added",
                             i);
      }
    }
  }
  return Verdict::pass();
}

TreeDecision decide_wsat_eq_treesize(const Graph& host, const SearchOptions& options) {
  if (host.num_vertices() == 0 || count_components(host) != 1) {
    throw Error(ErrorKind::Connectivity, "host graph is not connected");
  }
  const HostIndex h(host);
  if (h.m - triangle_boundary_rank(h) > h.n - 1) return No{};
  NodeBudget budget(options.budget);
  SubgraphSearch search(h, 1, budget);
  try {
    auto tree = search.run(host.num_vertices() - 1);
    if (!tree) return No{};
    auto cert = extract_saturation_order(host, subgraph_from(host, *tree));
    return std::get<SaturationCertificate>(std::move(cert));
  } catch (const OutOfBudget&) {
    return BudgetExceeded{"wsat-tree", budget.used()};
  }
}

WsatResult wsat_number(const Graph& host, const SearchOptions& options) {
  const HostIndex h(host);
  const std::size_t comps = count_components(host);
  NodeBudget budget(options.budget);
  SubgraphSearch search(h, comps, budget);
  try {
    // The rank bound is never below n - comps, the spanning forest size.
    for (std::size_t size = h.m - triangle_boundary_rank(h); size <= h.m; ++size) {
      if (auto found = search.run(size)) {
        return WsatNumber{found->size(), subgraph_from(host, *found)};
      }
    }
  } catch (const OutOfBudget&) {
    return BudgetExceeded{"wsat-number", budget.used()};
  }
  // The host itself is always saturated, so the loop returns.
  return BudgetExceeded{"wsat-number", budget.used()};
}

}  // namespace shellsat
