#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "shellsat/complex.hpp"
#include "shellsat/search.hpp"

namespace shellsat {

/// A graph as an at most 1-dimensional complex: a vertex set plus edges
/// stored as 2-vertex faces, both sorted.
class Graph {
 public:
  Graph() : labels_(std::make_shared<LabelTable>()) {}
  /// Throws MalformedFace for a non-edge and Containment when an edge
  /// endpoint is missing from `vertices`.
  Graph(std::shared_ptr<const LabelTable> labels, std::vector<VertexId> vertices,
        std::vector<Face> edges);

  /// The 1-skeleton of `k` as a graph.
  static Graph from_complex(const Complex& k);

  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
  const std::vector<Face>& edges() const noexcept { return edges_; }
  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  bool has_vertex(VertexId v) const noexcept;
  bool has_edge(const Face& e) const noexcept;

  const LabelTable& labels() const noexcept { return *labels_; }
  std::shared_ptr<const LabelTable> label_table() const noexcept { return labels_; }
  std::string format(const Face& f) const;

  Complex to_complex() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::shared_ptr<const LabelTable> labels_;
  std::vector<VertexId> vertices_;
  std::vector<Face> edges_;
};

/// A spanning subgraph, the missing host edges in the order they are added,
/// and for each added edge a 3-vertex set spanning a K3 that contains it.
struct SaturationCertificate {
  /// Only "K3" is supported; kept so the file format can name the pattern.
  std::string pattern = "K3";
  Graph start;
  std::vector<Face> order;
  std::vector<Face> witnesses;
};

struct NotSaturated {};
struct No {};

struct WsatNumber {
  std::size_t value = 0;
  /// A weakly saturated subgraph with `value` edges.
  Graph witness;
};

using SaturationResult = std::variant<SaturationCertificate, NotSaturated>;
using TreeDecision = std::variant<SaturationCertificate, No, BudgetExceeded>;
using WsatResult = std::variant<WsatNumber, BudgetExceeded>;

/// Adds host edges that complete a K3 until none is left. The fixed point
/// does not depend on the order of additions. Throws Containment when
/// `start` is not a subgraph of `host`.
Graph k3_closure(const Graph& host, const Graph& start);

bool is_weakly_saturated(const Graph& host, const Graph& start);

/// Greedy closure taking the lexicographically least addable edge each time
/// and witnessing it through the least common neighbour.
SaturationResult extract_saturation_order(const Graph& host, const Graph& start);

/// Replays a certificate. Throws MalformedCertificate (with the entry index
/// where there is one) when the order is not exactly the missing host edges
/// or the start is not a spanning subgraph.
Verdict verify_saturation(const Graph& host, const SaturationCertificate& cert);

/// Searches spanning trees of a connected host for a weakly saturated one.
/// Throws Connectivity for a disconnected host.
TreeDecision decide_wsat_eq_treesize(const Graph& host, const SearchOptions& options = {});

/// Minimum number of edges of a weakly K3-saturated subgraph, trying sizes
/// upward from the forest bound n - (number of components).
WsatResult wsat_number(const Graph& host, const SearchOptions& options = {});

}  // namespace shellsat
