#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "shellsat/complex.hpp"
#include "shellsat/wsat.hpp"

namespace shellsat::harness {

enum class GeneratorMode { RandomPure2, EnumerateAll, SubdivideDepth };

std::string_view to_string(GeneratorMode mode) noexcept;
/// Accepts "random-pure-2", "enumerate-all" and "subdivide-depth-k".
GeneratorMode parse_mode(std::string_view text);

struct GeneratorSpec {
  std::uint64_t seed = 0;
  std::size_t n_vertices = 4;
  /// Exact triangle count for random modes; an upper bound for
  /// enumerate-all, where 0 means no bound.
  std::size_t n_triangles = 2;
  GeneratorMode mode = GeneratorMode::RandomPure2;
  /// Subdivision depth for SubdivideDepth.
  int depth = 1;
  /// Number of instances for the random modes.
  std::size_t count = 1;
};

struct Instance {
  Complex complex;
  /// Rejected samples before this one was accepted (random modes only).
  std::size_t retries = 0;
};

/// Pure connected 2-complexes with vertex labels "0".."n-1".
///
/// RandomPure2 samples `n_triangles` distinct triangles uniformly and
/// retries until the result is connected and uses every vertex.
/// EnumerateAll lists one representative per isomorphism class on 3..n
/// vertices, each the lexicographically least facet list of its class,
/// ordered by vertex count, then triangle count, then facet list.
/// SubdivideDepth subdivides RandomPure2 instances `depth` times.
///
/// Throws Parameter for infeasible counts.
std::vector<Instance> generate(const GeneratorSpec& spec);

/// Connected graphs on exactly n vertices (n <= 6), one per isomorphism class.
std::vector<Graph> connected_graphs(std::size_t n);
/// Seeded uniform connected labelled graphs on n vertices (edge density 1/2).
std::vector<Graph> sample_connected_graphs(std::size_t n, std::size_t count, std::uint64_t seed);
/// Complete graph on labels "0".."n-1".
Graph complete_graph(std::size_t n);
/// Graph on labels "0".."n-1" with the given edges (pairs of indices).
Graph make_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

/// Random host on 3..9 vertices and a random subgraph of it.
struct GraphPair {
  Graph host;
  Graph start;
};
GraphPair random_graph_pair(std::mt19937_64& rng);

/// K3 closure adding a uniformly random addable edge each step.
Graph random_order_closure(const Graph& host, const Graph& start, std::mt19937_64& rng);

// Brute-force oracles, independent of the search engines. Each throws
// OracleBound when the input exceeds its exhaustive bound.

inline constexpr std::size_t kOracleShellingFacets = 8;
inline constexpr std::size_t kOracleCollapseFaces = 28;
inline constexpr std::size_t kOracleWsatEdges = 21;

/// Tries every facet permutation. Requires a pure complex.
bool oracle_shelling(const Complex& k);
/// Explores every sequence of elementary collapses over explicit face sets.
bool oracle_collapsible(const Complex& k);
/// Smallest s such that some s-edge subgraph closes to the host.
std::size_t oracle_wsat(const Graph& host);

/// Writes one ".sc" per instance plus manifest.txt. Returns the instances.
std::vector<Instance> write_corpus(const std::filesystem::path& dir, const GeneratorSpec& spec);

}  // namespace shellsat::harness
