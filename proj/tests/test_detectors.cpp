#include "doctest.h"
#include "oracles.hpp"

#include "flagtop/complex.hpp"
#include "flagtop/detectors.hpp"
#include "flagtop/homology.hpp"

using namespace flagtop;

namespace {

// C_4 as u1=0, u2=1, v1=2, v2=3 plus a vertex 4 joined to `extra`.
Graph square_plus(std::vector<Vertex> extra) {
  std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  for (Vertex x : extra) e.emplace_back(x, 4);
  return Graph::from_edges(5, e);
}

const SphereCertificate kSquareCert{1, {0, 1}, {2, 3}};

std::int64_t betti(const Graph& g, int k) { return reduced_betti(build_clique_complex(g, k + 1))[k]; }

}  // namespace

TEST_CASE("octahedral skeletons") {
  const Graph s1 = octahedral_skeleton(1);
  CHECK(s1.n() == 4);
  CHECK(s1.edge_count() == 4);
  CHECK(connected_components(s1) == 1);
  for (Vertex v = 0; v < 4; ++v) CHECK(s1.degree(v) == 2);
  const Graph s2 = octahedral_skeleton(2);
  CHECK(s2.n() == 6);
  CHECK(s2.edge_count() == 12);
  const Graph s0 = octahedral_skeleton(0);
  CHECK(s0.n() == 2);
  CHECK(s0.edge_count() == 0);
  for (int k = 1; k <= 3; ++k) {
    std::vector<std::int64_t> expected(static_cast<std::size_t>(k) + 1, 0);
    expected[k] = 1;
    CHECK(reduced_betti(build_clique_complex(octahedral_skeleton(k), k + 1)).reduced_betti ==
          expected);
  }
}

TEST_CASE("density exponents") {
  CHECK(density_exponent(1).density == Rational{1, 1});
  CHECK(density_exponent(1).exponent == Rational{-1, 1});
  CHECK(density_exponent(2).density == Rational{2, 1});
  CHECK(density_exponent(2).exponent == Rational{-1, 2});
  CHECK(density_exponent(3).edges == 24);
  CHECK(density_exponent(3).vertices == 8);
  CHECK(density_exponent(3).exponent == Rational{-1, 3});
  CHECK_THROWS_AS(density_exponent(0), std::domain_error);
}

TEST_CASE("sphere search examples") {
  const RandomSource rng(5, 5);
  const auto c4 = find_sphere_certificate(Graph::cycle(4), 1, 10, rng);
  REQUIRE(c4.has_value());
  CHECK(Graph::cycle(4).adjacent(c4->u[0], c4->u[1]));
  CHECK_FALSE(certificate_violation(Graph::cycle(4), *c4).has_value());
  CHECK_FALSE(find_sphere_certificate(Graph::complete(4), 1, 200, rng).has_value());
  CHECK_FALSE(find_sphere_certificate(Graph::cycle(5), 1, 200, rng).has_value());
  CHECK_FALSE(find_sphere_certificate(Graph::cycle(3), 1, 10, rng).has_value());
  CHECK_THROWS_AS(find_sphere_certificate(Graph::cycle(4), 1, 0, rng), std::domain_error);
  for (int k = 1; k <= 3; ++k)
    CHECK(find_sphere_certificate(octahedral_skeleton(k), k, 50, rng).has_value());
}

TEST_CASE("sphere search is deterministic") {
  const Graph g = generate_gnp(80, 0.06, RandomSource(3, 3));
  const RandomSource rng(11, 0);
  CHECK(find_sphere_certificate(g, 1, 500, rng) == find_sphere_certificate(g, 1, 500, rng));
}

TEST_CASE("retraction examples") {
  const auto oct = octahedral_identity_certificate(2);
  const auto id = build_retraction(octahedral_skeleton(2), oct);
  CHECK(id.assignment == std::vector<Vertex>{0, 1, 2, 3, 4, 5});
  CHECK(verify_retraction(octahedral_skeleton(2), id, oct));
  CHECK(betti(octahedral_skeleton(2), 2) == 1);

  const Graph pendant = square_plus({0});
  const auto r = build_retraction(pendant, kSquareCert);
  CHECK(r.assignment[4] == 1);
  CHECK(verify_retraction(pendant, r, kSquareCert));
  CHECK(betti(pendant, 1) == 1);

  const Graph common = square_plus({0, 1});
  CHECK(certificate_violation(common, kSquareCert).has_value());
  CHECK_THROWS_AS(build_retraction(common, kSquareCert), CertificateError);

  // y = 4 adjacent to v1 = 2 only; sending it to u1 = 0 maps {4,2} onto
  // the non-edge {0,2}.
  const Graph to_v1 = square_plus({2});
  RetractionMap wrong{{0, 1, 2, 3, 0}};
  CHECK_FALSE(verify_retraction(to_v1, wrong, kSquareCert));
  CHECK(verify_retraction(to_v1, build_retraction(to_v1, kSquareCert), kSquareCert));
}

TEST_CASE("certificate clauses") {
  const Graph g = Graph::cycle(4);
  CHECK(certificate_violation(g, SphereCertificate{1, {0, 1}, {2}}).has_value());
  CHECK(certificate_violation(g, SphereCertificate{1, {0, 1}, {2, 2}}).has_value());
  CHECK(certificate_violation(g, SphereCertificate{1, {0, 1}, {2, 9}}).has_value());
  CHECK(certificate_violation(g, SphereCertificate{1, {0, 2}, {1, 3}}).has_value());
  // An outside vertex meeting both antipodal pairs has nowhere to go.
  CHECK(certificate_violation(square_plus({0, 3, 1}), kSquareCert).has_value());
  CHECK(certificate_violation(square_plus({0, 3}), kSquareCert).has_value());
}

TEST_CASE("found certificates are sound") {
  oracle::GraphGen gen(67);
  int found = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = gen.next(4, 16, 0.2, 0.7);
    const int k = 1 + static_cast<int>(gen.engine()() % 2);
    const auto cert = find_sphere_certificate(g, k, 40, RandomSource(trial, 1));
    if (!cert) continue;
    ++found;
    CHECK_FALSE(certificate_violation(g, *cert).has_value());
    const auto r = build_retraction(g, *cert);
    REQUIRE(verify_retraction(g, r, *cert));
    CHECK(betti(g, k) >= 1);
  }
  CHECK(found >= 5);
}

TEST_CASE("vanishing certificate examples") {
  CHECK(vanishing_certificate(Graph::complete(3), 1).guaranteed_zero());
  CHECK(vanishing_certificate(Graph::path(10), 1).guaranteed_zero());
  std::vector<Edge> forest{{0, 1}, {1, 2}, {3, 4}, {3, 5}, {3, 6}};
  CHECK(vanishing_certificate(Graph::from_edges(8, forest), 1).guaranteed_zero());
  const auto c4 = vanishing_certificate(Graph::cycle(4), 1);
  CHECK_FALSE(c4.guaranteed_zero());
  CHECK_THROWS_AS(vanishing_certificate(Graph::cycle(4), 0), std::domain_error);
}

TEST_CASE("vanishing certificates are sound on every graph with at most 6 vertices") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::uint64_t graphs = 1ULL << (n * (n - 1) / 2);
    for (std::uint64_t mask = 0; mask < graphs; ++mask) {
      const Graph g = oracle::graph_from_mask(n, mask);
      const auto h = reduced_betti(build_clique_complex(g, 3));
      for (int k = 1; k <= 2; ++k)
        if (vanishing_certificate(g, k).guaranteed_zero()) REQUIRE(h[k] == 0);
    }
  }
}

TEST_CASE("vanishing certificates are sound on random graphs") {
  oracle::GraphGen gen(71);
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = gen.next(4, 30, 0.05, 0.4);
    const auto h = reduced_betti(build_clique_complex(g, 4));
    for (int k = 1; k <= 3; ++k)
      if (vanishing_certificate(g, k).guaranteed_zero()) CHECK(h[k] == 0);
  }
}

TEST_CASE("certificates serialize to JSON") {
  const auto cert = octahedral_identity_certificate(1);
  const auto j = to_json(cert, build_retraction(octahedral_skeleton(1), cert));
  CHECK(j["k"] == 1);
  CHECK(j["u"] == nlohmann::json::array({0, 1}));
  CHECK(j["v"] == nlohmann::json::array({2, 3}));
  CHECK(j["assignment"].size() == 4);
}
