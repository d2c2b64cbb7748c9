#include "shellsat/certificates.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "shellsat/error.hpp"

namespace shellsat {

SaturationCertificate shelling_to_saturated_tree(const Complex& l,
                                                 const ShellingCertificate& cert) {
  if (!is_pure(l) || l.dimension() != 2) {
    throw Error(ErrorKind::Purity, "expected a pure 2-dimensional complex");
  }
  if (auto v = verify_shelling(l, cert); !v) {
    throw Error(ErrorKind::MalformedCertificate, "not a shelling: " + v.reason, v.index);
  }

  std::set<Face> old_edges;
  std::set<VertexId> old_vertices;
  std::vector<Face> tree;
  SaturationCertificate out;

  auto absorb = [&](const Face& t) {
    for (const Face& e : t.boundary()) old_edges.insert(e);
    old_vertices.insert(t.begin(), t.end());
  };

  const Face& first = cert.order.front();
  const auto first_edges = first.boundary();
  tree.push_back(first_edges[0]);
  tree.push_back(first_edges[1]);
  out.order.push_back(first_edges[2]);
  out.witnesses.push_back(first);
  absorb(first);

  for (std::size_t i = 1; i < cert.order.size(); ++i) {
    const Face& t = cert.order[i];
    std::vector<Face> fresh;
    for (const Face& e : t.boundary()) {
      if (!old_edges.contains(e)) fresh.push_back(e);
    }
    switch (fresh.size()) {
      case 0:  // the whole boundary is old; nothing to add
        break;
      case 1:
        out.order.push_back(fresh[0]);
        out.witnesses.push_back(t);
        break;
      case 2: {
        // One shared edge: the opposite vertex is new.
        const VertexId apex = fresh[0].intersection(fresh[1]).front();
        if (old_vertices.contains(apex)) {
          throw std::logic_error("shelling step revisits an old vertex through one edge");
        }
        tree.push_back(fresh[0]);
        out.order.push_back(fresh[1]);
        out.witnesses.push_back(t);
        break;
      }
      default:
        throw std::logic_error("shelling step shares no edge with its predecessors");
    }
    absorb(t);
  }

  out.start = Graph(l.label_table(), l.vertices(), std::move(tree));
  return out;
}

CollapseCertificate saturation_to_collapse(const Complex& l, const SaturationCertificate& cert) {
  if (!is_pure(l) || l.dimension() != 2) {
    throw Error(ErrorKind::Purity, "expected a pure 2-dimensional complex");
  }
  if (!is_flag2(l)) throw Error(ErrorKind::Flagness, "complex is not flag");
  const Graph skeleton = Graph::from_complex(l);
  if (auto v = verify_saturation(skeleton, cert); !v) {
    throw Error(ErrorKind::MalformedCertificate, "not a saturation: " + v.reason, v.index);
  }
  const auto& tree = cert.start.edges();
  if (tree.size() + 1 != skeleton.num_vertices()) {
    throw Error(ErrorKind::MalformedCertificate, "start graph is not a spanning tree");
  }

  std::set<Face> spanned;
  for (std::size_t i = 0; i < cert.witnesses.size(); ++i) {
    const Face& j = cert.witnesses[i];
    if (!l.contains(j)) {
      throw Error(ErrorKind::Flagness,
                  "witness {" + l.format(j) + "} does not span a triangle", i);
    }
    // Witness i holds edge i but no later edge, so the triangles differ.
    if (!spanned.insert(j).second) {
      throw std::logic_error("two added edges share a witness triangle");
    }
  }

  CollapseCertificate out;
  for (const Face& t : l.facets()) {
    if (!spanned.contains(t)) out.removed_triangles.push_back(t);
  }
  for (std::size_t i = cert.order.size(); i-- > 0;) {
    out.steps.push_back({cert.order[i], cert.witnesses[i]});
  }

  // Prune the tree, always removing the largest leaf.
  std::map<VertexId, std::set<VertexId>> adj;
  for (VertexId v : cert.start.vertices()) adj[v];
  for (const Face& e : tree) {
    adj[e[0]].insert(e[1]);
    adj[e[1]].insert(e[0]);
  }
  std::set<VertexId> leaves;
  for (const auto& [v, nbrs] : adj) {
    if (nbrs.size() == 1) leaves.insert(v);
  }
  std::size_t remaining = adj.size();
  while (remaining > 1) {
    const VertexId leaf = *leaves.rbegin();
    leaves.erase(std::prev(leaves.end()));
    const VertexId parent = *adj[leaf].begin();
    out.steps.push_back({Face{leaf}, Face{leaf, parent}});
    adj[parent].erase(leaf);
    adj[leaf].clear();
    if (adj[parent].size() == 1) leaves.insert(parent);
    --remaining;
  }
  out.target = Complex::from_generators(l.label_table(), {Face{adj.begin()->first}});
  return out;
}

bool check_removal_count(const Complex& l, const CollapseCertificate& cert) {
  return static_cast<std::int64_t>(cert.removed_triangles.size()) ==
         reduced_euler_characteristic(l);
}

std::string_view to_string(StageStatus s) noexcept {
  switch (s) {
    case StageStatus::Passed: return "passed";
    case StageStatus::Failed: return "failed";
    case StageStatus::Skipped: return "skipped";
    case StageStatus::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

std::string_view to_string(ChainStatus s) noexcept {
  switch (s) {
    case ChainStatus::Complete: return "complete";
    case ChainStatus::Unshellable: return "unshellable";
    case ChainStatus::BudgetExceeded: return "budget-exceeded";
    case ChainStatus::Failed: return "failed";
  }
  return "?";
}

ChainReport run_chain(const Complex& k, const SearchOptions& options) {
  if (!is_pure(k) || k.dimension() != 2) {
    throw Error(ErrorKind::Purity, "chain requires a pure 2-dimensional complex");
  }
  if (!is_connected(k)) throw Error(ErrorKind::Connectivity, "complex is not connected");

  ChainReport report;
  report.input_fingerprint = k.fingerprint();
  report.subdivision_depth = is_flag2(k) ? 0 : 2;
  report.subject = barycentric_subdivision(k, report.subdivision_depth);
  report.chi = reduced_euler_characteristic(report.subject);
  const Complex& l = report.subject;

  auto stage = [&](std::string name, StageStatus status, std::string detail = {}) {
    report.stages.push_back({std::move(name), status, std::move(detail)});
    return status == StageStatus::Passed;
  };
  auto fail = [&](const char* name, const std::string& why) {
    stage(name, StageStatus::Failed, why);
    report.status = ChainStatus::Failed;
    return report;
  };

  auto shelling = find_shelling(l, options);
  if (auto* budget = std::get_if<BudgetExceeded>(&shelling)) {
    stage("shelling", StageStatus::BudgetExceeded,
          "after " + std::to_string(budget->nodes) + " nodes");
    report.status = ChainStatus::BudgetExceeded;
    return report;
  }
  if (std::holds_alternative<Unshellable>(shelling)) {
    stage("shelling", StageStatus::Failed, "unshellable");
    report.status = ChainStatus::Unshellable;
    auto tree = decide_wsat_eq_treesize(Graph::from_complex(l), options);
    if (std::holds_alternative<SaturationCertificate>(tree)) report.wsat_tree = true;
    if (std::holds_alternative<No>(tree)) report.wsat_tree = false;
    return report;
  }
  report.shelling = std::get<ShellingCertificate>(std::move(shelling));
  if (auto v = verify_shelling(l, *report.shelling); !v) return fail("shelling", v.reason);
  stage("shelling", StageStatus::Passed);

  const char* current = "saturation";
  try {
    report.saturation = shelling_to_saturated_tree(l, *report.shelling);
    const Graph skeleton = Graph::from_complex(l);
    if (auto v = verify_saturation(skeleton, *report.saturation); !v) {
      return fail("saturation", v.reason);
    }
    if (report.saturation->start.num_edges() + 1 != skeleton.num_vertices()) {
      return fail("saturation", "start graph does not have n-1 edges");
    }
    stage("saturation", StageStatus::Passed);

    current = "collapse";
    report.collapse = saturation_to_collapse(l, *report.saturation);
    if (auto v = verify_collapse(l, *report.collapse); !v) return fail("collapse", v.reason);
    if (report.collapse->target.num_vertices() != 1) {
      return fail("collapse", "collapse does not end at a point");
    }
    stage("collapse", StageStatus::Passed);
  } catch (const Error& e) {
    return fail(current, e.what());
  }

  report.removed_count = report.collapse->removed_triangles.size();
  if (!check_removal_count(l, *report.collapse)) {
    return fail("removal-count", "removed " + std::to_string(*report.removed_count) +
                                     " triangles, reduced Euler characteristic is " +
                                     std::to_string(report.chi));
  }
  stage("removal-count", StageStatus::Passed);
  report.status = ChainStatus::Complete;
  return report;
}

}  // namespace shellsat
