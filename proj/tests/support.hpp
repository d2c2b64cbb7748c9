#pragma once

#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "shellsat/complex.hpp"
#include "shellsat/error.hpp"
#include "shellsat/wsat.hpp"

namespace testing {

using namespace shellsat;

inline std::vector<std::string> split(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

/// Contractible 2-complex in which every edge lies in two or more
/// triangles, so it has no free face at all (a dunce hat).
inline const char* const kDunceHat[] = {
    "1 2 4", "1 2 7", "1 2 8", "1 3 4", "1 3 5", "1 3 6", "1 5 7", "1 6 8", "2 3 5",
    "2 3 7", "2 3 8", "2 4 5", "3 4 6", "4 5 6", "5 6 7", "6 7 8", "3 7 8"};

/// Complex from facet strings such as {"a b c", "b c d"}.
inline Complex cx(std::initializer_list<std::string_view> facets) {
  std::vector<std::vector<std::string>> lists;
  for (auto f : facets) lists.push_back(split(f));
  return Complex::from_facets(lists);
}

inline Complex dunce_hat() {
  std::vector<std::vector<std::string>> lists;
  for (const char* f : kDunceHat) lists.push_back(split(f));
  return Complex::from_facets(lists);
}

/// Face of `k` by labels, e.g. face(k, "a b").
inline Face face(const LabelTable& table, std::string_view labels) {
  std::vector<VertexId> ids;
  for (const auto& l : split(labels)) {
    auto id = find_label(table, l);
    if (!id) throw std::runtime_error("no vertex " + l);
    ids.push_back(*id);
  }
  return Face(ids);
}
inline Face face(const Complex& k, std::string_view labels) { return face(k.labels(), labels); }
inline Face face(const Graph& g, std::string_view labels) { return face(g.labels(), labels); }

inline std::vector<Face> faces(const Complex& k, std::initializer_list<std::string_view> list) {
  std::vector<Face> out;
  for (auto f : list) out.push_back(face(k, f));
  return out;
}

/// Labels of a face list, for readable comparisons.
template <typename Labelled>
std::vector<std::string> names(const Labelled& k, const std::vector<Face>& fs) {
  std::vector<std::string> out;
  for (const Face& f : fs) out.push_back(k.format(f));
  return out;
}

/// Graph from edge strings; isolated vertices may be listed alone.
inline Graph graph(std::initializer_list<std::string_view> edges) {
  return Graph::from_complex(cx(edges));
}

/// Spanning subgraph of `host` with the given edges.
inline Graph subgraph(const Graph& host, std::initializer_list<std::string_view> edges) {
  std::vector<Face> es;
  for (auto e : edges) es.push_back(face(host, e));
  return Graph(host.label_table(), host.vertices(), std::move(es));
}

}  // namespace testing
