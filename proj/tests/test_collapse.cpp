#include <doctest.h>

#include <random>

#include "shellsat/collapse.hpp"
#include "shellsat/harness.hpp"
#include "support.hpp"

using namespace shellsat;
using testing::cx;
using testing::face;

namespace {

const Complex kTri = cx({"a b c"});
const Complex kTwo = cx({"a b c", "b c d"});
const Complex kBowtie = cx({"a b c", "c d e"});
const Complex kCycle = cx({"a b", "b c", "a c"});

CollapseStep step(const Complex& k, std::string_view tau, std::string_view sigma) {
  return {face(k, tau), face(k, sigma)};
}

std::vector<std::string> step_names(const Complex& k, const std::vector<CollapseStep>& steps) {
  std::vector<std::string> out;
  for (const auto& s : steps) out.push_back(k.format(s.free_face) + " -> " + k.format(s.facet));
  return out;
}

Complex point(const Complex& k, std::string_view v) {
  return Complex::from_generators(k.label_table(), {face(k, v)});
}

}  // namespace

TEST_CASE("apply_collapse examples") {
  const Complex after = apply_collapse(kTri, step(kTri, "b c", "a b c"));
  CHECK(testing::names(after, after.facets()) == std::vector<std::string>{"a b", "a c"});

  const Complex path = cx({"a b", "b c"});
  const Complex shorter = apply_collapse(path, step(path, "c", "b c"));
  CHECK(testing::names(shorter, shorter.facets()) == std::vector<std::string>{"a b"});
  CHECK_FALSE(shorter.contains(face(path, "c")));

  try {
    apply_collapse(kTwo, step(kTwo, "b c", "a b c"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotFree);
    CHECK(std::string(e.what()).find("b c d") != std::string::npos);
  }
}

TEST_CASE("apply_collapse rejects malformed steps") {
  auto kind_of = [](const Complex& k, CollapseStep s) {
    try {
      apply_collapse(k, s);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Parse;
  };
  CHECK(kind_of(kTri, step(kTri, "a b c", "a b c")) == ErrorKind::MalformedCertificate);
  CHECK(kind_of(kTri, {Face{}, face(kTri, "a b c")}) == ErrorKind::MalformedCertificate);
  CHECK(kind_of(kTwo, step(kTwo, "a", "a b")) == ErrorKind::NotFree);
  CHECK(kind_of(kTwo, {face(kTwo, "a d"), face(kTwo, "a b c")}) == ErrorKind::NotAFace);
}

TEST_CASE("free_faces") {
  // Every vertex of a lone triangle lies in the single facet abc, so it is
  // free as well: collapsing it removes its whole star.
  CHECK(step_names(kTri, free_faces(kTri)) ==
        std::vector<std::string>{"a -> a b c", "a b -> a b c", "a c -> a b c", "b -> a b c",
                                 "b c -> a b c", "c -> a b c"});
  CHECK(free_faces(kCycle).empty());
  const Complex edge = cx({"a b"});
  CHECK(step_names(edge, free_faces(edge)) == std::vector<std::string>{"a -> a b", "b -> a b"});
  CHECK(free_faces(cx({"v"})).empty());
}

TEST_CASE("collapse preserves the reduced Euler characteristic") {
  std::mt19937_64 rng(42);
  for (const auto& inst : harness::generate({9, 6, 5, harness::GeneratorMode::RandomPure2, 1, 30})) {
    Complex k = inst.complex;
    const auto chi = reduced_euler_characteristic(k);
    while (true) {
      const auto steps = free_faces(k);
      if (steps.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, steps.size() - 1);
      const Complex next = apply_collapse(k, steps[pick(rng)]);
      CHECK(reduced_euler_characteristic(next) == chi);
      const FVector before = f_vector(k), after = f_vector(next);
      std::int64_t odd = 0, even = 0;
      for (std::size_t i = 0; i < before.counts.size(); ++i) {
        const auto removed = static_cast<std::int64_t>(before.counts[i]) -
                             static_cast<std::int64_t>(i < after.counts.size() ? after.counts[i] : 0);
        (i % 2 == 0 ? even : odd) += removed;  // counts[i] holds faces of size i
      }
      CHECK(odd == even);
      k = next;
    }
  }
}

TEST_CASE("is_collapsible examples") {
  const Complex tree = cx({"a b", "b c", "b d", "d e"});
  auto r = is_collapsible(tree);
  REQUIRE(std::holds_alternative<CollapseCertificate>(r));
  CHECK(verify_collapse(tree, std::get<CollapseCertificate>(r)));
  CHECK(std::get<CollapseCertificate>(r).target.num_vertices() == 1);

  CHECK(std::holds_alternative<NotCollapsible>(is_collapsible(kCycle)));

  auto tri = is_collapsible(kTri);
  REQUIRE(std::holds_alternative<CollapseCertificate>(tri));
  CHECK(verify_collapse(kTri, std::get<CollapseCertificate>(tri)));

  CHECK(std::holds_alternative<CollapseCertificate>(is_collapsible(cx({"v"}))));
  CHECK(std::holds_alternative<NotCollapsible>(is_collapsible(cx({"a", "b"}))));
  CHECK(std::holds_alternative<NotCollapsible>(is_collapsible(testing::dunce_hat())));
}

TEST_CASE("is_collapsible in dimension three") {
  const Complex solid = cx({"a b c d", "b c d e"});
  auto r = is_collapsible(solid);
  REQUIRE(std::holds_alternative<CollapseCertificate>(r));
  CHECK(verify_collapse(solid, std::get<CollapseCertificate>(r)));

  const Complex hollow = cx({"a b c", "a b d", "a c d", "b c d"});
  CHECK(std::holds_alternative<NotCollapsible>(is_collapsible(hollow)));
}

TEST_CASE("is_collapsible respects the budget") {
  const Complex big = barycentric_subdivision(barycentric_subdivision(kTwo));
  CHECK(std::holds_alternative<BudgetExceeded>(is_collapsible(big, {3, 1})));
  CHECK(std::holds_alternative<CollapseCertificate>(is_collapsible(big)));
}

TEST_CASE("collapsible_after_removing examples") {
  auto zero = collapsible_after_removing(kTri, 0);
  REQUIRE(std::holds_alternative<CollapseCertificate>(zero));
  CHECK(verify_collapse(kTri, std::get<CollapseCertificate>(zero)));

  CHECK(std::holds_alternative<Impossible>(collapsible_after_removing(kTri, 1)));

  auto two = collapsible_after_removing(kTwo, 0);
  REQUIRE(std::holds_alternative<CollapseCertificate>(two));
  CHECK(std::get<CollapseCertificate>(two).removed_triangles.empty());
  CHECK(verify_collapse(kTwo, std::get<CollapseCertificate>(two)));

  // Octahedron boundary: chi = 1, removing any one triangle leaves a disk.
  const Complex octa =
      cx({"a c e", "a c f", "a d e", "a d f", "b c e", "b c f", "b d e", "b d f"});
  CHECK(std::holds_alternative<Impossible>(collapsible_after_removing(octa, 0)));
  auto one = collapsible_after_removing(octa, 1);
  REQUIRE(std::holds_alternative<CollapseCertificate>(one));
  const auto& cert = std::get<CollapseCertificate>(one);
  CHECK(testing::names(octa, cert.removed_triangles) == std::vector<std::string>{"a c e"});
  CHECK(verify_collapse(octa, cert));

  CHECK(std::holds_alternative<Impossible>(collapsible_after_removing(testing::dunce_hat(), 0)));

  CHECK_THROWS_AS(collapsible_after_removing(cx({"a b c", "c d"}), 0), Error);
  CHECK_THROWS_AS(collapsible_after_removing(cx({"a b c", "d e f"}), 0), Error);
}

TEST_CASE("verify_collapse examples") {
  CollapseCertificate cert;
  cert.steps = {step(kTri, "b c", "a b c"), step(kTri, "c", "a c"), step(kTri, "b", "a b")};
  cert.target = point(kTri, "a");
  CHECK(verify_collapse(kTri, cert));

  // Same steps on the bowtie: bc is free there too, but c then still lies
  // in the facet cde, so the second step fails.
  CollapseCertificate bow;
  bow.steps = {step(kBowtie, "b c", "a b c"), step(kBowtie, "c", "a c"), step(kBowtie, "b", "a b")};
  bow.target = point(kBowtie, "a");
  const auto v = verify_collapse(kBowtie, bow);
  CHECK_FALSE(v);
  CHECK(v.index == 1u);

  CollapseCertificate identity;
  identity.target = kTwo;
  CHECK(verify_collapse(kTwo, identity));

  CollapseCertificate wrong_target = cert;
  wrong_target.target = point(kTri, "b");
  const auto w = verify_collapse(kTri, wrong_target);
  CHECK_FALSE(w);
  CHECK(w.index == 3u);

  CollapseCertificate stray = cert;
  stray.steps[0] = {face(kTri, "a b c"), face(kTri, "a b c")};
  CHECK_THROWS_AS(verify_collapse(kTri, stray), Error);

  CollapseCertificate edge_removed = cert;
  edge_removed.removed_triangles = {face(kTri, "a b")};
  CHECK_THROWS_AS(verify_collapse(kTri, edge_removed), Error);
}

TEST_CASE("removal beyond chi cannot reach a point") {
  const Complex octa =
      cx({"a c e", "a c f", "a d e", "a d f", "b c e", "b c f", "b d e", "b d f"});
  CHECK(std::holds_alternative<Impossible>(collapsible_after_removing(octa, 2)));
  const Complex removed = remove_triangles(octa, std::vector<Face>{face(octa, "a c e"), face(octa, "b d f")});
  CHECK(reduced_euler_characteristic(removed) == -1);
  CHECK(std::holds_alternative<NotCollapsible>(is_collapsible(removed)));
}

TEST_CASE("remove_triangles") {
  const Complex rest = remove_triangles(kTwo, std::vector<Face>{face(kTwo, "a b c")});
  CHECK(testing::names(rest, rest.facets()) == std::vector<std::string>{"a b", "a c", "b c d"});
  CHECK_THROWS_AS(remove_triangles(kTwo, std::vector<Face>{face(kTwo, "a b")}), Error);
  CHECK_THROWS_AS(remove_triangles(kTri, std::vector<Face>{Face{0, 1, 7}}), Error);
}

TEST_CASE("is_collapsible agrees with the exhaustive oracle") {
  harness::GeneratorSpec spec;
  spec.mode = harness::GeneratorMode::EnumerateAll;
  spec.n_vertices = 5;
  spec.n_triangles = 0;
  std::size_t checked = 0, yes = 0;
  for (const auto& inst : harness::generate(spec)) {
    const Complex& k = inst.complex;
    if (k.faces().size() - 1 > harness::kOracleCollapseFaces) continue;
    auto r = is_collapsible(k);
    REQUIRE_FALSE(std::holds_alternative<BudgetExceeded>(r));
    const bool found = std::holds_alternative<CollapseCertificate>(r);
    CHECK(found == harness::oracle_collapsible(k));
    if (found) {
      CHECK(verify_collapse(k, std::get<CollapseCertificate>(r)));
      ++yes;
    }
    ++checked;
  }
  // Graphs and mixed complexes that are not pure 2-complexes.
  for (const Complex& k : {kCycle, cx({"a b", "b c"}), cx({"a b c", "c d"}),
                           cx({"a b c", "c d", "d a"}), cx({"a b c", "a d", "b d", "c d"})}) {
    const bool found = std::holds_alternative<CollapseCertificate>(is_collapsible(k));
    CHECK(found == harness::oracle_collapsible(k));
    ++checked;
  }
  CHECK(checked > 20);
  CHECK(yes > 0);
}
