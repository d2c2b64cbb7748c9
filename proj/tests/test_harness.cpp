#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "shellsat/harness.hpp"
#include "shellsat/io.hpp"
#include "support.hpp"

using namespace shellsat;
using harness::GeneratorMode;
using harness::GeneratorSpec;
using testing::cx;

namespace {

std::vector<std::string> fingerprints(const std::vector<harness::Instance>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(x.complex.fingerprint());
  return out;
}

bool isomorphic_to_some(const Complex& k, const std::vector<harness::Instance>& xs) {
  // Relabel k onto "0".."n-1" in every order and look for a fingerprint match.
  const auto& labels = k.labels();
  std::vector<std::size_t> perm(labels.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  const auto prints = fingerprints(xs);
  do {
    std::vector<std::vector<std::string>> lists;
    for (const Face& f : k.facets()) {
      std::vector<std::string> l;
      for (VertexId v : f) l.push_back(std::to_string(perm[v]));
      lists.push_back(l);
    }
    const auto fp = Complex::from_facets(lists).fingerprint();
    if (std::find(prints.begin(), prints.end(), fp) != prints.end()) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("random generation is seeded and valid") {
  GeneratorSpec spec{7, 6, 5, GeneratorMode::RandomPure2, 1, 20};
  const auto a = harness::generate(spec);
  const auto b = harness::generate(spec);
  REQUIRE(a.size() == 20);
  CHECK(fingerprints(a) == fingerprints(b));
  for (const auto& inst : a) {
    const Complex& k = inst.complex;
    CHECK(k.num_vertices() == 6);
    CHECK(k.facets().size() == 5);
    CHECK(is_pure(k));
    CHECK(k.dimension() == 2);
    CHECK(is_connected(k));
  }
  spec.seed = 8;
  CHECK(fingerprints(harness::generate(spec)) != fingerprints(a));
}

TEST_CASE("generator parameter errors") {
  auto kind = [](GeneratorSpec s) {
    try {
      harness::generate(s);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Parse;
  };
  CHECK(kind({0, 2, 1, GeneratorMode::RandomPure2, 1, 1}) == ErrorKind::Parameter);
  CHECK(kind({0, 4, 0, GeneratorMode::RandomPure2, 1, 1}) == ErrorKind::Parameter);
  CHECK(kind({0, 4, 5, GeneratorMode::RandomPure2, 1, 1}) == ErrorKind::Parameter);
  CHECK(kind({0, 6, 2, GeneratorMode::RandomPure2, 1, 1}) == ErrorKind::Parameter);
  // The bowtie reaches the vertex bound for two triangles.
  CHECK(harness::generate({0, 5, 2, GeneratorMode::RandomPure2, 1, 1}).front().complex.num_vertices() == 5);
  CHECK(kind({0, 8, 0, GeneratorMode::EnumerateAll, 1, 1}) == ErrorKind::Parameter);
  CHECK_THROWS_AS(harness::parse_mode("random"), Error);
  CHECK(harness::parse_mode("enumerate-all") == GeneratorMode::EnumerateAll);
  CHECK(harness::parse_mode(harness::to_string(GeneratorMode::SubdivideDepth)) ==
        GeneratorMode::SubdivideDepth);
}

TEST_CASE("enumerate-all lists each class once") {
  GeneratorSpec spec;
  spec.mode = GeneratorMode::EnumerateAll;
  spec.n_triangles = 0;
  // Class counts of connected triangle sets covering exactly n vertices,
  // checked against a separate permutation-minimum count.
  const std::size_t expected[] = {0, 0, 0, 1, 4, 33};
  for (std::size_t n = 3; n <= 5; ++n) {
    spec.n_vertices = n;
    CHECK(harness::generate(spec).size() == expected[n]);
  }
  spec.n_vertices = 6;
  spec.n_triangles = 6;
  const auto six = harness::generate(spec);
  CHECK(six.size() == 168);

  // Every member is pure, connected and canonical; order is by size.
  std::size_t last_n = 0, last_t = 0;
  for (const auto& inst : six) {
    const Complex& k = inst.complex;
    CHECK(is_pure(k));
    CHECK(is_connected(k));
    const std::size_t n = k.num_vertices(), t = k.facets().size();
    CHECK((n > last_n || (n == last_n && t >= last_t)));
    last_n = n;
    last_t = t;
  }
  const auto again = harness::generate(spec);
  CHECK(fingerprints(again) == fingerprints(six));
}

TEST_CASE("enumerate-all contains the small named examples") {
  GeneratorSpec spec;
  spec.mode = GeneratorMode::EnumerateAll;
  spec.n_vertices = 5;
  spec.n_triangles = 0;
  const auto all = harness::generate(spec);
  CHECK(isomorphic_to_some(cx({"a b c", "c d e"}), all));
  CHECK(isomorphic_to_some(cx({"a b c", "b c d"}), all));
  CHECK(isomorphic_to_some(cx({"a b c", "a b d", "a c d", "b c d"}), all));
  CHECK_FALSE(isomorphic_to_some(cx({"a b c", "d e f"}), all));

  const Complex& first = all.front().complex;
  CHECK(first.facets().size() == 1);
  CHECK(first.format(first.facets()[0]) == "0 1 2");
}

TEST_CASE("subdivide-depth mode") {
  const auto base = harness::generate({3, 5, 2, GeneratorMode::RandomPure2, 1, 4});
  const auto sub = harness::generate({3, 5, 2, GeneratorMode::SubdivideDepth, 1, 4});
  REQUIRE(sub.size() == base.size());
  for (std::size_t i = 0; i < sub.size(); ++i) {
    CHECK(sub[i].complex == barycentric_subdivision(base[i].complex));
    CHECK(is_flag2(sub[i].complex));
  }
  const auto bowtie_sd = barycentric_subdivision(cx({"a b c", "c d e"}));
  CHECK(is_flag2(bowtie_sd));
  CHECK(bowtie_sd.facets().size() == 12);
}

TEST_CASE("graph helpers") {
  const Graph k5 = harness::complete_graph(5);
  CHECK(k5.num_vertices() == 5);
  CHECK(k5.num_edges() == 10);
  CHECK(harness::make_graph(4, {{0, 1}, {1, 2}, {2, 3}}).num_edges() == 3);
  const std::size_t classes[] = {0, 1, 1, 2, 6, 21, 112};
  for (std::size_t n = 1; n <= 6; ++n) CHECK(harness::connected_graphs(n).size() == classes[n]);

  const auto sample = harness::sample_connected_graphs(7, 10, 4);
  REQUIRE(sample.size() == 10);
  for (const Graph& g : sample) {
    CHECK(g.num_vertices() == 7);
    CHECK(is_connected(g.to_complex()));
  }
  CHECK(harness::sample_connected_graphs(7, 10, 4) == sample);
}

TEST_CASE("oracle examples") {
  CHECK(harness::oracle_wsat(harness::complete_graph(4)) == 3);
  CHECK(harness::oracle_wsat(testing::graph({"a b", "b c", "c d", "a d"})) == 4);
  CHECK(harness::oracle_wsat(harness::complete_graph(3)) == 2);

  CHECK(harness::oracle_shelling(cx({"a b c", "b c d"})));
  CHECK_FALSE(harness::oracle_shelling(cx({"a b c", "c d e"})));
  CHECK(harness::oracle_shelling(cx({"a b c", "a b d", "a c d", "b c d"})));

  CHECK(harness::oracle_collapsible(cx({"a b c"})));
  CHECK_FALSE(harness::oracle_collapsible(cx({"a b", "b c", "a c"})));
  CHECK_FALSE(harness::oracle_collapsible(cx({"a b c", "a b d", "a c d", "b c d"})));
}

TEST_CASE("oracles refuse inputs beyond their bounds") {
  auto kind = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Parse;
  };
  // sd of a triangle sits just inside both complex bounds; sd of two does not.
  const Complex sd1 = barycentric_subdivision(cx({"a b c"}));
  CHECK(harness::oracle_shelling(sd1));
  CHECK(harness::oracle_collapsible(sd1));
  const Complex sd2 = barycentric_subdivision(cx({"a b c", "b c d"}));
  CHECK(kind([&] { harness::oracle_shelling(sd2); }) == ErrorKind::OracleBound);
  CHECK(kind([&] { harness::oracle_collapsible(sd2); }) == ErrorKind::OracleBound);
  CHECK(harness::oracle_wsat(harness::complete_graph(7)) == 6);
  CHECK(kind([&] { harness::oracle_wsat(harness::complete_graph(8)); }) == ErrorKind::OracleBound);
}

TEST_CASE("write_corpus") {
  const auto dir = std::filesystem::temp_directory_path() / "shellsat-corpus-test";
  std::filesystem::remove_all(dir);
  const GeneratorSpec spec{11, 5, 3, GeneratorMode::RandomPure2, 1, 3};
  const auto written = harness::write_corpus(dir, spec);
  REQUIRE(written.size() == 3);
  for (std::size_t i = 0; i < written.size(); ++i) {
    const auto path = dir / ("instance-000" + std::to_string(i) + ".sc");
    REQUIRE(std::filesystem::exists(path));
    CHECK(io::load_complex(path).complex == written[i].complex);
  }
  const std::string manifest = io::read_file(dir / "manifest.txt");
  CHECK(manifest.rfind("# mode=random-pure-2 seed=11 vertices=5 triangles=3 depth=1 count=3\n", 0) == 0);
  CHECK(manifest.find("instance-0000.sc " + written[0].complex.fingerprint()) != std::string::npos);
  std::filesystem::remove_all(dir);
}
