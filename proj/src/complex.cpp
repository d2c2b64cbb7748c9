#include "shellsat/complex.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <utility>

#include "shellsat/error.hpp"

namespace shellsat {

namespace {

bool all_digits(std::string_view s) noexcept {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view strip_leading_zeros(std::string_view s) noexcept {
  const auto first = s.find_first_not_of('0');
  return first == std::string_view::npos ? s.substr(s.size() - 1) : s.substr(first);
}

std::vector<Face> downward_closure(std::vector<Face> generators) {
  std::vector<Face> faces;
  for (const Face& g : generators) {
    auto subs = g.subfaces();
    faces.insert(faces.end(), subs.begin(), subs.end());
  }
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  return faces;
}

// Tiny union-find over dense indices.
class Components {
 public:
  explicit Components(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

bool label_less(std::string_view a, std::string_view b) noexcept {
  const bool da = all_digits(a);
  const bool db = all_digits(b);
  if (da != db) return da;
  if (da) {
    const auto sa = strip_leading_zeros(a);
    const auto sb = strip_leading_zeros(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
  }
  return a < b;
}

std::size_t FVector::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

Complex::Complex() : Complex(std::make_shared<LabelTable>(), {Face{}}) {}

Complex::Complex(std::shared_ptr<const LabelTable> labels, std::vector<Face> faces)
    : labels_(std::move(labels)), faces_(std::move(faces)) {
  std::vector<char> maximal(faces_.size(), 1);
  for (const Face& f : faces_) {
    for (const Face& b : f.boundary()) {
      auto it = std::lower_bound(faces_.begin(), faces_.end(), b);
      maximal[static_cast<std::size_t>(it - faces_.begin())] = 0;
    }
  }
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    if (maximal[i]) facets_.push_back(faces_[i]);
  }
}

Complex Complex::from_facets(std::span<const std::vector<std::string>> facets,
                             std::vector<std::size_t>* absorbed) {
  if (facets.empty()) {
    throw Error(ErrorKind::EmptyComplex, "complex has no faces");
  }
  auto labels = std::make_shared<LabelTable>();
  for (std::size_t i = 0; i < facets.size(); ++i) {
    if (facets[i].empty()) {
      throw Error(ErrorKind::MalformedFace, "empty face listed", i);
    }
    labels->insert(labels->end(), facets[i].begin(), facets[i].end());
  }
  std::sort(labels->begin(), labels->end(),
            [](const std::string& a, const std::string& b) { return label_less(a, b); });
  labels->erase(std::unique(labels->begin(), labels->end()), labels->end());

  auto lookup = [&](const std::string& s) {
    auto it = std::lower_bound(labels->begin(), labels->end(), s,
                               [](const std::string& a, const std::string& b) {
                                 return label_less(a, b);
                               });
    return static_cast<VertexId>(it - labels->begin());
  };

  std::vector<Face> generators;
  generators.reserve(facets.size());
  for (std::size_t i = 0; i < facets.size(); ++i) {
    std::vector<VertexId> ids;
    ids.reserve(facets[i].size());
    for (const auto& s : facets[i]) ids.push_back(lookup(s));
    try {
      generators.emplace_back(ids);
    } catch (const Error& e) {
      throw Error(e.kind(), e.what(), i);
    }
  }

  Complex k(labels, downward_closure(generators));
  if (absorbed) {
    std::vector<char> seen(k.faces_.size(), 0);
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const auto idx = *k.index_of(generators[i]);
      if (!k.is_facet(generators[i]) || seen[idx]) absorbed->push_back(i);
      seen[idx] = 1;
    }
  }
  return k;
}

Complex Complex::from_generators(std::shared_ptr<const LabelTable> labels,
                                 std::vector<Face> generators) {
  for (const Face& g : generators) {
    if (!g.empty() && g.back() >= labels->size()) {
      throw Error(ErrorKind::NotAFace, "vertex id outside the label table");
    }
  }
  if (generators.empty()) generators.push_back(Face{});
  return Complex(std::move(labels), downward_closure(std::move(generators)));
}

bool Complex::contains(const Face& f) const noexcept {
  return std::binary_search(faces_.begin(), faces_.end(), f);
}

std::optional<std::size_t> Complex::index_of(const Face& f) const noexcept {
  auto it = std::lower_bound(faces_.begin(), faces_.end(), f);
  if (it == faces_.end() || *it != f) return std::nullopt;
  return static_cast<std::size_t>(it - faces_.begin());
}

bool Complex::is_facet(const Face& f) const noexcept {
  return std::binary_search(facets_.begin(), facets_.end(), f);
}

std::vector<VertexId> Complex::vertices() const {
  std::vector<VertexId> out;
  for (const Face& f : faces_) {
    if (f.size() == 1) out.push_back(f.front());
  }
  return out;
}

std::size_t Complex::num_vertices() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(faces_.begin(), faces_.end(), [](const Face& f) { return f.size() == 1; }));
}

int Complex::dimension() const noexcept {
  int d = -1;
  for (const Face& f : facets_) d = std::max(d, f.dimension());
  return d;
}

std::optional<VertexId> find_label(const LabelTable& table, std::string_view label) noexcept {
  auto it = std::lower_bound(table.begin(), table.end(), label,
                             [](const std::string& a, std::string_view b) {
                               return label_less(a, b);
                             });
  if (it == table.end() || *it != label) return std::nullopt;
  return static_cast<VertexId>(it - table.begin());
}

std::optional<VertexId> Complex::find_label(std::string_view label) const noexcept {
  return shellsat::find_label(*labels_, label);
}

std::string Complex::format(const Face& f) const {
  std::string out;
  for (VertexId v : f) {
    if (!out.empty()) out += ' ';
    // Faces from callers may carry ids the table does not know.
    out += v < labels_->size() ? (*labels_)[v] : "#" + std::to_string(v);
  }
  return out;
}

std::vector<std::vector<std::string>> Complex::facet_labels() const {
  std::vector<std::vector<std::string>> out;
  out.reserve(facets_.size());
  for (const Face& f : facets_) {
    auto& row = out.emplace_back();
    for (VertexId v : f) row.push_back(label(v));
  }
  return out;
}

std::string Complex::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
  };
  for (const Face& f : facets_) {
    feed(format(f));
    feed("\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool operator==(const Complex& a, const Complex& b) {
  if (a.facets_.size() != b.facets_.size()) return false;
  const bool same_table = a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
  if (same_table) return a.facets_ == b.facets_;
  return a.facet_labels() == b.facet_labels();
}

FVector f_vector(const Complex& k) {
  FVector fv;
  fv.counts.assign(static_cast<std::size_t>(k.dimension() + 2), 0);
  for (const Face& f : k.faces()) ++fv.counts[f.size()];
  return fv;
}

std::int64_t reduced_euler_characteristic(const Complex& k) {
  std::int64_t chi = 0;
  for (const Face& f : k.faces()) chi += (f.size() % 2 == 1) ? 1 : -1;
  return chi;
}

int dimension(const Complex& k) { return k.dimension(); }

bool is_pure(const Complex& k) {
  const auto& facets = k.facets();
  return std::all_of(facets.begin(), facets.end(), [&](const Face& f) {
    return f.size() == facets.front().size();
  });
}

bool is_connected(const Complex& k) {
  const auto verts = k.vertices();
  if (verts.empty()) return false;
  std::map<VertexId, std::size_t> index;
  for (std::size_t i = 0; i < verts.size(); ++i) index[verts[i]] = i;
  Components comps(verts.size());
  std::size_t joined = 0;
  for (const Face& f : k.faces()) {
    if (f.size() == 2 && comps.unite(index[f[0]], index[f[1]])) ++joined;
  }
  return joined + 1 == verts.size();
}

bool is_flag2(const Complex& k) {
  if (k.dimension() > 2) {
    throw Error(ErrorKind::UnsupportedDimension,
                "flagness is only checked for complexes of dimension at most 2");
  }
  std::map<VertexId, std::vector<VertexId>> nbrs;
  for (const Face& f : k.faces()) {
    if (f.size() == 2) {
      nbrs[f[0]].push_back(f[1]);
      nbrs[f[1]].push_back(f[0]);
    }
  }
  for (auto& [v, list] : nbrs) std::sort(list.begin(), list.end());
  for (const Face& f : k.faces()) {
    if (f.size() != 2) continue;
    const auto& nu = nbrs[f[0]];
    const auto& nv = nbrs[f[1]];
    std::vector<VertexId> common;
    std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(),
                          std::back_inserter(common));
    for (VertexId w : common) {
      if (w > f[1] && !k.contains(Face{f[0], f[1], w})) return false;
    }
  }
  return true;
}

Complex skeleton(const Complex& complex, int k) {
  if (k < 0) throw Error(ErrorKind::Parameter, "skeleton dimension must be non-negative");
  std::vector<Face> kept;
  for (const Face& f : complex.facets()) {
    if (f.dimension() <= k) {
      kept.push_back(f);
      continue;
    }
    // All k-dimensional subfaces of a larger facet.
    for (const Face& s : f.subfaces()) {
      if (s.dimension() == k) kept.push_back(s);
    }
  }
  return Complex::from_generators(complex.label_table(), std::move(kept));
}

Complex induced(const Complex& complex, std::span<const Face> faces) {
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (!complex.contains(faces[i])) {
      throw Error(ErrorKind::NotAFace, "face {" + complex.format(faces[i]) +
                                           "} does not belong to the complex", i);
    }
  }
  return Complex::from_generators(complex.label_table(),
                                  std::vector<Face>(faces.begin(), faces.end()));
}

Complex barycentric_subdivision(const Complex& k) {
  if (k.num_vertices() == 0) {
    throw Error(ErrorKind::EmptyComplex, "cannot subdivide an empty complex");
  }
  auto name = [&k](const Face& f) {
    std::string out = "{";
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) out += '|';
      out += k.label(f[i]);
    }
    return out + "}";
  };
  std::vector<std::vector<std::string>> chains;
  for (const Face& facet : k.facets()) {
    std::vector<VertexId> perm(facet.begin(), facet.end());
    do {
      auto& chain = chains.emplace_back();
      for (std::size_t len = 1; len <= perm.size(); ++len) {
        chain.push_back(name(Face(std::span<const VertexId>(perm.data(), len))));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return Complex::from_facets(chains);
}

Complex barycentric_subdivision(const Complex& k, int depth) {
  if (depth < 0) throw Error(ErrorKind::Parameter, "subdivision depth must be non-negative");
  Complex out = k;
  for (int i = 0; i < depth; ++i) out = barycentric_subdivision(out);
  return out;
}

}  // namespace shellsat
