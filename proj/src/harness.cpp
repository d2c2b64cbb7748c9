#include "shellsat/harness.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <unordered_set>

#include "shellsat/error.hpp"
#include "shellsat/io.hpp"

namespace shellsat::harness {
namespace {

constexpr std::size_t kMaxRetries = 1'000'000;

std::shared_ptr<const LabelTable> numeric_labels(std::size_t n) {
  auto table = std::make_shared<LabelTable>();
  for (std::size_t i = 0; i < n; ++i) table->push_back(std::to_string(i));
  return table;
}

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<VertexId>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<VertexId>> out;
  std::vector<VertexId> cur;
  auto rec = [&](auto&& self, VertexId from) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (VertexId v = from; v < n; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Connectivity of the union of `blocks` (each a vertex subset) over n
// vertices, also requiring every vertex to be covered.
bool connected_cover(std::size_t n, const std::vector<const std::vector<VertexId>*>& blocks) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<bool> seen(n, false);
  std::size_t comps = n;
  for (const auto* b : blocks) {
    for (VertexId v : *b) seen[v] = true;
    for (std::size_t i = 1; i < b->size(); ++i) {
      auto x = find((*b)[0]), y = find((*b)[i]);
      if (x != y) {
        parent[x] = y;
        --comps;
      }
    }
  }
  return comps == 1 && std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
}

Complex complex_from(std::size_t n, const std::vector<const std::vector<VertexId>*>& triangles) {
  std::vector<Face> faces;
  for (const auto* t : triangles) faces.emplace_back(*t);
  // Fresh table so the subject has exactly its own vertices.
  auto table = numeric_labels(n);
  std::vector<std::vector<std::string>> labelled;
  for (const Face& f : faces) {
    std::vector<std::string> l;
    for (VertexId v : f) l.push_back((*table)[v]);
    labelled.push_back(std::move(l));
  }
  return Complex::from_facets(labelled);
}

std::vector<Instance> random_pure2(const GeneratorSpec& spec) {
  const std::size_t n = spec.n_vertices;
  const std::size_t t = spec.n_triangles;
  const auto all = subsets(n, 3);
  // Each triangle after the first brings at most two new vertices.
  if (n < 3 || t == 0 || t > all.size() || n > 2 * t + 1) {
    throw Error(ErrorKind::Parameter, "no pure connected 2-complex has " + std::to_string(n) +
                                          " vertices and " + std::to_string(t) + " triangles");
  }
  std::mt19937_64 rng(spec.seed);
  std::vector<std::size_t> index(all.size());
  std::iota(index.begin(), index.end(), 0);
  std::vector<Instance> out;
  for (std::size_t c = 0; c < spec.count; ++c) {
    for (std::size_t retries = 0;; ++retries) {
      if (retries == kMaxRetries) {
        throw Error(ErrorKind::Parameter, "rejection sampling did not find a connected instance");
      }
      std::vector<std::size_t> pick;
      std::sample(index.begin(), index.end(), std::back_inserter(pick), t, rng);
      std::vector<const std::vector<VertexId>*> tris;
      for (std::size_t i : pick) tris.push_back(&all[i]);
      if (!connected_cover(n, tris)) continue;
      out.push_back({complex_from(n, tris), retries});
      break;
    }
  }
  return out;
}

// Permutation tables over the k-subsets of {0..n-1}: image[p][i] is the
// index of the image of subset i under permutation p.
struct PermTable {
  std::vector<std::vector<std::size_t>> image;
};

PermTable perm_table(std::size_t n, const std::vector<std::vector<VertexId>>& sets) {
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto index_of = [&](std::vector<VertexId> s) {
    std::sort(s.begin(), s.end());
    return static_cast<std::size_t>(std::lower_bound(sets.begin(), sets.end(), s) - sets.begin());
  };
  PermTable table;
  do {
    std::vector<std::size_t> img;
    for (const auto& s : sets) {
      std::vector<VertexId> mapped;
      for (VertexId v : s) mapped.push_back(perm[v]);
      img.push_back(index_of(std::move(mapped)));
    }
    table.image.push_back(std::move(img));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return table;
}

// Subset i sits at bit (N-1-i), so among equal-size sets the greatest mask is
// the lexicographically least sorted list.
std::uint64_t reversed_mask(const std::vector<std::size_t>& members, std::size_t universe) {
  std::uint64_t m = 0;
  for (std::size_t i : members) m |= std::uint64_t{1} << (universe - 1 - i);
  return m;
}

bool is_canonical(std::uint64_t mask, std::size_t universe, const PermTable& perms) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < universe; ++i) {
    if (mask >> (universe - 1 - i) & 1) members.push_back(i);
  }
  std::vector<std::size_t> img(members.size());
  for (const auto& p : perms.image) {
    for (std::size_t j = 0; j < members.size(); ++j) img[j] = p[members[j]];
    if (reversed_mask(img, universe) > mask) return false;
  }
  return true;
}

// Visits every mask of `universe` bits with popcount in [1, cap], grouped by
// popcount, largest mask first.
template <typename Visit>
void masks_by_size(std::size_t universe, std::size_t cap, Visit visit) {
  for (std::size_t size = 1; size <= std::min(cap, universe); ++size) {
    std::vector<std::uint64_t> found;
    // Gosper's hack over all masks with `size` bits.
    std::uint64_t m = (std::uint64_t{1} << size) - 1;
    const std::uint64_t limit = std::uint64_t{1} << universe;
    while (m < limit) {
      found.push_back(m);
      const std::uint64_t c = m & -m;
      const std::uint64_t r = m + c;
      m = (((r ^ m) >> 2) / c) | r;
    }
    std::sort(found.rbegin(), found.rend());
    for (std::uint64_t mask : found) visit(mask);
  }
}

std::vector<Instance> enumerate_all(const GeneratorSpec& spec) {
  if (spec.n_vertices > 7) {
    throw Error(ErrorKind::Parameter, "enumerate-all supports at most 7 vertices");
  }
  std::vector<Instance> out;
  for (std::size_t n = 3; n <= spec.n_vertices; ++n) {
    const auto tris = subsets(n, 3);
    const std::size_t universe = tris.size();
    const std::size_t cap = spec.n_triangles == 0 ? universe : spec.n_triangles;
    const PermTable perms = perm_table(n, tris);
    masks_by_size(universe, cap, [&](std::uint64_t mask) {
      std::vector<const std::vector<VertexId>*> chosen;
      for (std::size_t i = 0; i < universe; ++i) {
        if (mask >> (universe - 1 - i) & 1) chosen.push_back(&tris[i]);
      }
      if (!connected_cover(n, chosen)) return;
      if (!is_canonical(mask, universe, perms)) return;
      out.push_back({complex_from(n, chosen), 0});
    });
  }
  return out;
}

Graph graph_from_mask(std::size_t n, std::uint64_t mask, const std::vector<std::vector<VertexId>>& pairs) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (mask >> (pairs.size() - 1 - i) & 1) edges.emplace_back(pairs[i][0], pairs[i][1]);
  }
  return make_graph(n, edges);
}

bool graph_connected(std::size_t n, std::uint64_t mask, const std::vector<std::vector<VertexId>>& pairs) {
  std::vector<const std::vector<VertexId>*> chosen;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (mask >> (pairs.size() - 1 - i) & 1) chosen.push_back(&pairs[i]);
  }
  if (n == 1) return true;
  return connected_cover(n, chosen);
}

}  // namespace

std::string_view to_string(GeneratorMode mode) noexcept {
  switch (mode) {
    case GeneratorMode::RandomPure2: return "random-pure-2";
    case GeneratorMode::EnumerateAll: return "enumerate-all";
    case GeneratorMode::SubdivideDepth: return "subdivide-depth-k";
  }
  return "?";
}

GeneratorMode parse_mode(std::string_view text) {
  if (text == "random-pure-2") return GeneratorMode::RandomPure2;
  if (text == "enumerate-all") return GeneratorMode::EnumerateAll;
  // The depth itself comes from GeneratorSpec::depth.
  if (text == "subdivide-depth-k" || text == "subdivide-depth") return GeneratorMode::SubdivideDepth;
  throw Error(ErrorKind::Parameter, "unknown generator mode '" + std::string(text) + "'");
}

std::vector<Instance> generate(const GeneratorSpec& spec) {
  switch (spec.mode) {
    case GeneratorMode::RandomPure2:
      return random_pure2(spec);
    case GeneratorMode::EnumerateAll:
      return enumerate_all(spec);
    case GeneratorMode::SubdivideDepth: {
      if (spec.depth < 0) throw Error(ErrorKind::Parameter, "negative subdivision depth");
      auto out = random_pure2(spec);
      for (auto& inst : out) inst.complex = barycentric_subdivision(inst.complex, spec.depth);
      return out;
    }
  }
  throw Error(ErrorKind::Parameter, "unknown generator mode");
}

Graph make_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<VertexId> vertices(n);
  std::iota(vertices.begin(), vertices.end(), 0);
  std::vector<Face> faces;
  for (auto [u, v] : edges) {
    faces.push_back(Face{static_cast<VertexId>(std::min(u, v)), static_cast<VertexId>(std::max(u, v))});
  }
  return Graph(numeric_labels(n), std::move(vertices), std::move(faces));
}

Graph complete_graph(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return make_graph(n, edges);
}

std::vector<Graph> connected_graphs(std::size_t n) {
  if (n == 0 || n > 6) throw Error(ErrorKind::Parameter, "exhaustive graphs need 1 <= n <= 6");
  if (n == 1) return {make_graph(1, {})};
  const auto pairs = subsets(n, 2);
  const PermTable perms = perm_table(n, pairs);
  std::vector<Graph> out;
  masks_by_size(pairs.size(), pairs.size(), [&](std::uint64_t mask) {
    if (std::popcount(mask) + 1 < static_cast<int>(n)) return;
    if (!graph_connected(n, mask, pairs)) return;
    if (!is_canonical(mask, pairs.size(), perms)) return;
    out.push_back(graph_from_mask(n, mask, pairs));
  });
  return out;
}

std::vector<Graph> sample_connected_graphs(std::size_t n, std::size_t count, std::uint64_t seed) {
  if (n == 0 || n > 11) throw Error(ErrorKind::Parameter, "sampled graphs need 1 <= n <= 11");
  const auto pairs = subsets(n, 2);
  std::mt19937_64 rng(seed);
  std::vector<Graph> out;
  while (out.size() < count) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) mask = mask << 1 | (rng() & 1);
    if (!graph_connected(n, mask, pairs)) continue;
    out.push_back(graph_from_mask(n, mask, pairs));
  }
  return out;
}

GraphPair random_graph_pair(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> size(3, 9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = size(rng);
  const double p_host = 0.3 + 0.6 * unit(rng);
  const double p_keep = 0.2 + 0.5 * unit(rng);
  std::vector<std::pair<std::size_t, std::size_t>> host, start;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (unit(rng) >= p_host) continue;
      host.emplace_back(u, v);
      if (unit(rng) < p_keep) start.emplace_back(u, v);
    }
  }
  return {make_graph(n, host), make_graph(n, start)};
}

Graph random_order_closure(const Graph& host, const Graph& start, std::mt19937_64& rng) {
  std::set<Face> have(start.edges().begin(), start.edges().end());
  auto adjacent = [&](VertexId a, VertexId b) {
    return have.contains(a < b ? Face{a, b} : Face{b, a});
  };
  while (true) {
    std::vector<Face> addable;
    for (const Face& e : host.edges()) {
      if (have.contains(e)) continue;
      for (VertexId w : host.vertices()) {
        if (w != e[0] && w != e[1] && adjacent(e[0], w) && adjacent(e[1], w)) {
          addable.push_back(e);
          break;
        }
      }
    }
    if (addable.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, addable.size() - 1);
    have.insert(addable[pick(rng)]);
  }
  return Graph(host.label_table(), host.vertices(), {have.begin(), have.end()});
}

bool oracle_shelling(const Complex& k) {
  std::vector<Face> facets = k.facets();
  if (facets.size() > kOracleShellingFacets) {
    throw Error(ErrorKind::OracleBound, "shelling oracle is limited to " +
                                            std::to_string(kOracleShellingFacets) + " facets");
  }
  if (!is_pure(k)) throw Error(ErrorKind::Purity, "shelling oracle needs a pure complex");
  // An order is a shelling iff, for every later facet F, the faces of F that
  // lie in an earlier facet form a pure complex of dimension dim F - 1.
  auto good_step = [](const std::vector<Face>& order, std::size_t i) {
    const Face& f = order[i];
    const auto subs = f.subfaces();
    std::vector<Face> shared;
    for (const Face& s : subs) {
      if (s.size() == f.size()) continue;
      for (std::size_t j = 0; j < i; ++j) {
        if (s.is_subset_of(order[j])) {
          shared.push_back(s);
          break;
        }
      }
    }
    // Empty-face-only intersection is not pure of dimension dim F - 1
    // unless F is a vertex.
    for (const Face& s : shared) {
      bool covered = false;
      for (const Face& r : shared) {
        if (r.size() + 1 == f.size() && s.is_subset_of(r)) covered = true;
      }
      if (!covered) return false;
    }
    return true;
  };
  std::sort(facets.begin(), facets.end());
  do {
    bool ok = true;
    for (std::size_t i = 1; i < facets.size() && ok; ++i) ok = good_step(facets, i);
    if (ok) return true;
  } while (std::next_permutation(facets.begin(), facets.end()));
  return false;
}

bool oracle_collapsible(const Complex& k) {
  std::vector<Face> faces;
  for (const Face& f : k.faces()) {
    if (!f.empty()) faces.push_back(f);
  }
  if (faces.size() > kOracleCollapseFaces) {
    throw Error(ErrorKind::OracleBound, "collapse oracle is limited to " +
                                            std::to_string(kOracleCollapseFaces) + " faces");
  }
  const std::size_t m = faces.size();
  // above[i]: faces strictly containing face i, as a bitmask.
  std::vector<std::uint32_t> above(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (faces[i].is_proper_subset_of(faces[j])) above[i] |= std::uint32_t{1} << j;
    }
  }
  std::unordered_set<std::uint32_t> dead;
  auto solve = [&](auto&& self, std::uint32_t state) -> bool {
    if (std::popcount(state) == 1 && faces[std::countr_zero(state)].size() == 1) return true;
    if (dead.contains(state)) return false;
    for (std::size_t t = 0; t < m; ++t) {
      if (!(state >> t & 1)) continue;
      const std::uint32_t up = above[t] & state;
      if (up == 0) continue;
      // The unique maximal face above t must contain all the others.
      std::size_t top = m;
      for (std::size_t s = 0; s < m; ++s) {
        if ((up >> s & 1) && (above[s] & state) == 0) {
          if (top != m) {
            top = m + 1;
            break;
          }
          top = s;
        }
      }
      if (top >= m) continue;
      const std::uint32_t removed = up | std::uint32_t{1} << t;
      if (self(self, state & ~removed)) return true;
    }
    dead.insert(state);
    return false;
  };
  const std::uint32_t all = m == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << m) - 1;
  return solve(solve, all);
}

std::size_t oracle_wsat(const Graph& host) {
  const auto& edges = host.edges();
  const std::size_t m = edges.size();
  if (m > kOracleWsatEdges) {
    throw Error(ErrorKind::OracleBound, "wsat oracle is limited to " +
                                            std::to_string(kOracleWsatEdges) + " edges");
  }
  auto closes = [&](std::uint32_t chosen) {
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t i = 0; i < m; ++i) {
        if (chosen >> i & 1) continue;
        const VertexId a = edges[i][0], b = edges[i][1];
        for (VertexId w : host.vertices()) {
          if (w == a || w == b) continue;
          bool ha = false, hb = false;
          for (std::size_t j = 0; j < m; ++j) {
            if (!(chosen >> j & 1)) continue;
            if (edges[j] == (a < w ? Face{a, w} : Face{w, a})) ha = true;
            if (edges[j] == (b < w ? Face{b, w} : Face{w, b})) hb = true;
          }
          if (ha && hb) {
            chosen |= std::uint32_t{1} << i;
            grew = true;
            break;
          }
        }
      }
    }
    return std::popcount(chosen) == static_cast<int>(m);
  };
  for (std::size_t s = 0; s <= m; ++s) {
    bool found = false;
    if (s == 0) {
      found = closes(0);
    } else {
      std::uint32_t c = (std::uint32_t{1} << s) - 1;
      const std::uint64_t limit = std::uint64_t{1} << m;
      while (c < limit) {
        if (closes(c)) {
          found = true;
          break;
        }
        const std::uint32_t lo = c & -c;
        const std::uint32_t r = c + lo;
        if (r == 0) break;
        c = (((r ^ c) >> 2) / lo) | r;
      }
    }
    if (found) return s;
  }
  return m;
}

std::vector<Instance> write_corpus(const std::filesystem::path& dir, const GeneratorSpec& spec) {
  std::filesystem::create_directories(dir);
  auto instances = generate(spec);
  std::ofstream manifest(dir / "manifest.txt", std::ios::binary);
  if (!manifest) throw Error(ErrorKind::Parse, (dir / "manifest.txt").string() + ": cannot write");
  manifest << "# mode=" << to_string(spec.mode) << " seed=" << spec.seed
           << " vertices=" << spec.n_vertices << " triangles=" << spec.n_triangles
           << " depth=" << spec.depth << " count=" << spec.count << '\n';
  for (std::size_t i = 0; i < instances.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "instance-%04zu.sc", i);
    std::ofstream out(dir / name, std::ios::binary);
    io::write_complex(out, instances[i].complex);
    manifest << name << ' ' << instances[i].complex.fingerprint()
             << " retries=" << instances[i].retries << '\n';
  }
  return instances;
}

}  // namespace shellsat::harness
