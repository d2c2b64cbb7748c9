#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "shellsat/harness.hpp"
#include "support.hpp"

using namespace shellsat;
using testing::cx;
using testing::face;

namespace {

// Counts chains of nonempty faces by length, straight from the definition.
std::vector<std::size_t> chain_counts(const Complex& k) {
  std::vector<Face> nonempty;
  for (const Face& f : k.faces()) {
    if (!f.empty()) nonempty.push_back(f);
  }
  std::vector<std::size_t> counts{1};
  auto extend = [&](auto&& self, const Face& top, std::size_t length) -> void {
    if (counts.size() <= length) counts.resize(length + 1, 0);
    ++counts[length];
    for (const Face& f : nonempty) {
      if (top.is_proper_subset_of(f)) self(self, f, length + 1);
    }
  };
  for (const Face& f : nonempty) extend(extend, f, 1);
  return counts;
}

}  // namespace

TEST_CASE("face basics") {
  const Face f{3, 1, 2};
  CHECK(f.size() == 3);
  CHECK(f.dimension() == 2);
  CHECK(f[0] == 1);
  CHECK(f.back() == 3);
  CHECK(Face{}.dimension() == -1);
  CHECK(Face{1, 2}.is_proper_subset_of(f));
  CHECK_FALSE(f.is_proper_subset_of(f));
  CHECK(f.boundary().size() == 3);
  CHECK(f.boundary()[0] == Face{1, 2});
  CHECK(f.subfaces().size() == 8);
  CHECK(f.intersection(Face{2, 3, 4}) == Face{2, 3});
  CHECK(Face{1, 2} < Face{1, 3});
  CHECK(Face{1} < Face{1, 2});

  const std::vector<VertexId> dup{1, 1};
  CHECK_THROWS_AS(Face(std::span<const VertexId>(dup)), Error);
  const std::vector<VertexId> big{1, 2, 3, 4, 5};
  try {
    Face{std::span<const VertexId>(big)};
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedDimension);
  }
}

TEST_CASE("from_facets builds the downward closure") {
  const Complex tri = cx({"a b c"});
  CHECK(f_vector(tri).counts == std::vector<std::size_t>{1, 3, 3, 1});
  CHECK(tri.faces().size() == 8);
  CHECK(tri.contains(Face{}));

  std::vector<std::size_t> absorbed;
  const std::vector<std::vector<std::string>> lists{{"a", "b"}, {"b"}};
  const Complex edge = Complex::from_facets(lists, &absorbed);
  CHECK(edge.facets().size() == 1);
  CHECK(edge.format(edge.facets()[0]) == "a b");
  CHECK(absorbed == std::vector<std::size_t>{1});

  const Complex two = cx({"a b c", "b c d"});
  CHECK(f_vector(two).counts == std::vector<std::size_t>{1, 4, 5, 2});
}

TEST_CASE("from_facets rejects bad input") {
  try {
    cx({"a b c", "a a"});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedFace);
    CHECK(e.index() == 1u);
  }
  const std::vector<std::vector<std::string>> none;
  try {
    Complex::from_facets(none);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyComplex);
  }
  try {
    cx({"a b c d e"});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedDimension);
  }
}

TEST_CASE("vertex ids follow natural label order") {
  const Complex k = cx({"10 2 b", "a 1"});
  CHECK(k.labels() == LabelTable{"1", "2", "10", "a", "b"});
  CHECK(label_less("9", "10"));
  CHECK(label_less("10", "a"));
  CHECK_FALSE(label_less("a", "10"));
}

TEST_CASE("from_facets is idempotent and relabelling-invariant") {
  for (const auto& inst : harness::generate({7, 7, 6, harness::GeneratorMode::RandomPure2, 1, 20})) {
    const Complex& k = inst.complex;
    const auto labels = k.facet_labels();
    const Complex again = Complex::from_facets(labels);
    CHECK(again == k);
    CHECK(again.fingerprint() == k.fingerprint());
    auto shuffled = labels;
    std::reverse(shuffled.begin(), shuffled.end());
    for (auto& f : shuffled) std::reverse(f.begin(), f.end());
    CHECK(Complex::from_facets(shuffled).fingerprint() == k.fingerprint());
  }
}

TEST_CASE("skeleton") {
  const Complex two = cx({"a b c", "b c d"});
  const Complex s = skeleton(two, 1);
  CHECK(f_vector(s).counts == std::vector<std::size_t>{1, 4, 5});
  CHECK(s.facets().size() == 5);

  const Complex edge = cx({"a b"});
  CHECK(skeleton(edge, 1) == edge);

  const Complex tet = cx({"a b c d"});
  const Complex k4 = skeleton(tet, 1);
  CHECK(f_vector(k4).counts == std::vector<std::size_t>{1, 4, 6});
  CHECK(is_pure(k4));

  CHECK_THROWS_AS(skeleton(two, -1), Error);
}

TEST_CASE("induced") {
  const Complex two = cx({"a b c", "b c d"});
  const Complex abc = cx({"a b c"});
  const Face f_abc = face(two, "a b c");
  CHECK(induced(two, std::vector<Face>{f_abc}) == abc);
  CHECK(induced(two, two.facets()) == two);
  CHECK(induced(two, std::vector<Face>{f_abc, face(two, "b c")}) == abc);
  try {
    induced(two, std::vector<Face>{face(two, "a d")});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAFace);
    CHECK(e.index() == 0u);
  }
}

TEST_CASE("barycentric subdivision") {
  const Complex sd_tri = barycentric_subdivision(cx({"a b c"}));
  CHECK(f_vector(sd_tri).counts == std::vector<std::size_t>{1, 7, 12, 6});
  CHECK(sd_tri.find_label("{a|b}").has_value());
  CHECK(sd_tri.find_label("{a|b|c}").has_value());
  CHECK(sd_tri.find_label("{a}").has_value());

  const Complex point = cx({"p"});
  const Complex sd_point = barycentric_subdivision(point);
  CHECK(f_vector(sd_point).counts == std::vector<std::size_t>{1, 1});

  const Complex sd_edge = barycentric_subdivision(cx({"a b"}));
  CHECK(f_vector(sd_edge).counts == std::vector<std::size_t>{1, 3, 2});
  CHECK(testing::names(sd_edge, sd_edge.facets()) ==
        std::vector<std::string>{"{a|b} {a}", "{a|b} {b}"});

  CHECK(barycentric_subdivision(point, 0) == point);
  CHECK(f_vector(barycentric_subdivision(cx({"a b c"}), 2)).at_dimension(2) == 36);
  CHECK_THROWS_AS(barycentric_subdivision(point, -1), Error);
}

TEST_CASE("subdivision matches a direct chain count") {
  for (const auto& inst : harness::generate({3, 6, 5, harness::GeneratorMode::RandomPure2, 1, 15})) {
    const Complex& k = inst.complex;
    CHECK(f_vector(barycentric_subdivision(k)).counts == chain_counts(k));
  }
  const Complex mixed = cx({"a b c", "c d", "e"});
  CHECK(f_vector(barycentric_subdivision(mixed)).counts == chain_counts(mixed));
}

TEST_CASE("subdivision invariants") {
  for (const auto& inst : harness::generate({11, 7, 6, harness::GeneratorMode::RandomPure2, 1, 25})) {
    const Complex& k = inst.complex;
    const Complex sd = barycentric_subdivision(k);
    const FVector f = f_vector(k);
    const std::size_t n = f.at_dimension(0), m = f.at_dimension(1), t = f.at_dimension(2);
    CHECK(f_vector(sd).counts == std::vector<std::size_t>{1, n + m + t, 2 * m + 6 * t, 6 * t});
    CHECK(reduced_euler_characteristic(sd) == reduced_euler_characteristic(k));
    CHECK(is_flag2(sd));
    CHECK(is_connected(sd) == is_connected(k));
  }
  const Complex apart = cx({"a b", "c d"});
  CHECK_FALSE(is_connected(barycentric_subdivision(apart)));
}

TEST_CASE("reduced Euler characteristic and f-vector") {
  CHECK(reduced_euler_characteristic(cx({"p"})) == 0);
  CHECK(reduced_euler_characteristic(cx({"a b", "b c", "a c"})) == -1);
  CHECK(reduced_euler_characteristic(cx({"a b c"})) == 0);
  CHECK(f_vector(cx({"a b", "a c", "a d", "b c", "b d", "c d"})).counts ==
        std::vector<std::size_t>{1, 4, 6});
  const FVector f = f_vector(cx({"a b c", "b c d"}));
  CHECK(f.total() == 12);
  CHECK(f.at_dimension(-1) == 1);
  CHECK(f.at_dimension(5) == 0);
  // Octahedron boundary: a 2-sphere.
  const Complex octa = cx({"a c e", "a c f", "a d e", "a d f", "b c e", "b c f", "b d e", "b d f"});
  CHECK(reduced_euler_characteristic(octa) == 1);
}

TEST_CASE("purity, dimension, connectivity") {
  const Complex two = cx({"a b c", "b c d"});
  CHECK(is_pure(two));
  CHECK(dimension(two) == 2);
  CHECK_FALSE(is_pure(cx({"a b c", "d e"})));
  CHECK(is_pure(cx({"v"})));
  CHECK(dimension(cx({"v"})) == 0);
  CHECK(dimension(Complex{}) == -1);

  CHECK(is_connected(cx({"a b c", "c d e"})));
  CHECK_FALSE(is_connected(cx({"a b", "c d"})));
  CHECK(is_connected(cx({"v"})));
}

TEST_CASE("flagness") {
  CHECK(is_flag2(cx({"a b c", "b c d"})));
  CHECK_FALSE(is_flag2(cx({"a b", "b c", "a c"})));
  CHECK(is_flag2(barycentric_subdivision(cx({"a b", "b c", "a c"}))));
  CHECK_THROWS_AS(is_flag2(cx({"a b c d"})), Error);
}

TEST_CASE("fingerprint is label based") {
  const Complex a = cx({"a b c", "b c d"});
  const Complex b = cx({"d c b", "c b a"});
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint().size() == 16);
  CHECK(a.fingerprint() != cx({"a b c", "b c e"}).fingerprint());
}
