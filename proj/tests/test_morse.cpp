#include <algorithm>
#include <iterator>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "flagtop/complex.hpp"
#include "flagtop/homology.hpp"
#include "flagtop/morse.hpp"

using namespace flagtop;

namespace {

FaceId id_of(const SimplicialComplex& x, std::vector<Vertex> face) { return *x.find(face); }

// K_4 on vertices 1..4, with vertex 0 isolated.
Graph k4_on_1_to_4() {
  std::vector<Edge> e;
  for (Vertex v = 2; v <= 4; ++v)
    for (Vertex u = 1; u < v; ++u) e.emplace_back(u, v);
  return Graph::from_edges(5, e);
}

std::set<std::vector<Vertex>> faces(const SimplicialComplex& x, int dim,
                                    const std::vector<FaceId>& ids) {
  std::set<std::vector<Vertex>> out;
  for (FaceId id : ids) {
    const auto f = x.face(dim, id);
    out.emplace(f.begin(), f.end());
  }
  return out;
}

std::size_t naive_adjacent_pairs(const SimplicialComplex& x, int k) {
  std::size_t count = 0;
  for (FaceId a = 0; a < x.size(k); ++a)
    for (FaceId b = a + 1; b < x.size(k); ++b) {
      const auto fa = x.face(k, a), fb = x.face(k, b);
      std::vector<Vertex> common;
      std::set_intersection(fa.begin(), fa.end(), fb.begin(), fb.end(), std::back_inserter(common));
      if (common.size() == static_cast<std::size_t>(k)) ++count;
    }
  return count;
}

}  // namespace

TEST_CASE("lex field on K_4") {
  const auto x = build_clique_complex(k4_on_1_to_4(), 3);
  const auto v = lex_gradient_field(x, 1);
  std::set<std::pair<std::vector<Vertex>, std::vector<Vertex>>> pairs;
  for (auto [lo, up] : v.pairs) {
    const auto a = x.face(1, lo), b = x.face(2, up);
    pairs.emplace(std::vector<Vertex>(a.begin(), a.end()), std::vector<Vertex>(b.begin(), b.end()));
  }
  const std::set<std::pair<std::vector<Vertex>, std::vector<Vertex>>> expected{
      {{1, 2}, {1, 2, 3}}, {{1, 3}, {1, 3, 4}}, {{2, 3}, {2, 3, 4}}};
  CHECK(pairs == expected);
  CHECK(faces(x, 1, v.critical_lower) ==
        std::set<std::vector<Vertex>>{{1, 4}, {2, 4}, {3, 4}});
  CHECK(verify_acyclic(v, x));
  CHECK(critical_count(v, x, 1) == 3);
  CHECK(reduced_betti(x)[1] == 0);
}

TEST_CASE("lex field on C_4 and a path") {
  const auto c4 = build_clique_complex(Graph::cycle(4), 2);
  const auto v = lex_gradient_field(c4, 1);
  CHECK(v.pairs.empty());
  CHECK(v.critical_lower.size() == 4);
  CHECK(critical_count(v, c4, 1) == 4);

  const auto path = build_clique_complex(Graph::path(3), 2);
  const auto w = lex_gradient_field(path, 0);
  REQUIRE(w.pairs.size() == 2);
  CHECK(w.pairs[0] == std::pair<FaceId, FaceId>{id_of(path, {0}), id_of(path, {0, 1})});
  CHECK(w.pairs[1] == std::pair<FaceId, FaceId>{id_of(path, {1}), id_of(path, {1, 2})});
  CHECK(faces(path, 0, w.critical_lower) == std::set<std::vector<Vertex>>{{2}});
  CHECK(reduced_betti(path)[0] + 1 == 1);
}

TEST_CASE("lex field needs the cofaces stored") {
  const auto x = build_clique_complex(Graph::complete(5), 1);
  CHECK_THROWS_AS(lex_gradient_field(x, 1), std::domain_error);
  CHECK(lex_critical_faces_direct(x, 1).size() == 4);
}

TEST_CASE("verify_acyclic examples") {
  const auto tri = SimplicialComplex::from_facets({{0, 1}, {1, 2}, {0, 2}});
  DiscreteVectorField cyc;
  cyc.lower_dim = 0;
  cyc.pairs = {{id_of(tri, {0}), id_of(tri, {0, 1})},
               {id_of(tri, {1}), id_of(tri, {1, 2})},
               {id_of(tri, {2}), id_of(tri, {0, 2})}};
  CHECK_FALSE(verify_acyclic(cyc, tri));
  CHECK_THROWS_AS(critical_count(cyc, tri, 1), FieldValidationError);

  DiscreteVectorField empty;
  CHECK(verify_acyclic(empty, tri));

  DiscreteVectorField bad;
  bad.pairs = {{id_of(tri, {2}), id_of(tri, {0, 1})}};
  CHECK_THROWS_AS(verify_acyclic(bad, tri), FieldValidationError);
  DiscreteVectorField twice;
  twice.pairs = {{id_of(tri, {0}), id_of(tri, {0, 1})}, {id_of(tri, {0}), id_of(tri, {0, 2})}};
  CHECK_THROWS_AS(verify_acyclic(twice, tri), FieldValidationError);
}

TEST_CASE("random field examples") {
  const RandomSource rng(2024, 7);
  const auto edge = build_clique_complex(Graph::complete(2), 1);
  const auto e = random_matching_field(edge, 1, rng);
  CHECK(e.field.pairs.size() == 1);
  CHECK(e.report.removed() == 0);
  CHECK(critical_count(e.field, edge, 1) == 0);

  const auto tri = build_clique_complex(Graph::complete(3), 1);
  const auto t = random_matching_field(tri, 1, rng);
  CHECK(verify_acyclic(t.field, tri));
  CHECK(adjacent_kface_pairs(tri, 1) == 3);
  CHECK(t.report.removed() <= 3);

  const auto k4 = build_clique_complex(Graph::complete(4), 2);
  const auto f = random_matching_field(k4, 2, rng);
  CHECK(verify_acyclic(f.field, k4));
  CHECK(adjacent_kface_pairs(k4, 2) == 6);
  CHECK(f.report.removed() <= 6);

  const auto two = build_clique_complex(Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}}), 1);
  CHECK(adjacent_kface_pairs(two, 1) == 0);
  CHECK_THROWS_AS(random_matching_field(tri, 0, rng), std::domain_error);
}

TEST_CASE("a triangle boundary forces the cycle breaker") {
  // On the hollow triangle every choice of i(tau) that proposes three
  // distinct vertices closes a V-path; some seed must hit it.
  const auto tri = build_clique_complex(Graph::complete(3), 1);
  bool saw_cycle = false;
  for (std::uint64_t s = 0; s < 64 && !saw_cycle; ++s) {
    const auto r = random_matching_field(tri, 1, RandomSource(s, 0));
    CHECK(verify_acyclic(r.field, tri));
    saw_cycle = r.report.cycles_broken > 0;
  }
  CHECK(saw_cycle);
}

TEST_CASE("random field is deterministic and its proposals are per-face") {
  const auto x = build_clique_complex(generate_gnp(30, 0.3, RandomSource(1, 1)), 2);
  const RandomSource rng(99, 3);
  const auto a = random_matching_field(x, 2, rng);
  const auto b = random_matching_field(x, 2, rng);
  CHECK(a.field.pairs == b.field.pairs);
  CHECK(a.report.proposed == x.size(2));
}

TEST_CASE("Morse properties on random complexes") {
  oracle::GraphGen gen(61);
  for (int trial = 0; trial < 150; ++trial) {
    const Graph g = gen.next(1, 22, 0.1, 0.8);
    const auto x = build_clique_complex(g, 22);
    const auto h = reduced_betti(x);
    const auto f = f_vector(x);
    for (int k = 0; k <= x.top_dimension(); ++k) {
      const auto lex = lex_gradient_field(x, k);
      REQUIRE(verify_acyclic(lex, x));
      const auto direct = lex_critical_faces_direct(x, k);
      CHECK(lex.critical_lower == direct);
      const auto crit = critical_count(lex, x, k);
      CHECK(h[k] <= static_cast<std::int64_t>(crit));
      CHECK(crit <= f[k]);

      const auto d = adjacent_kface_pairs(x, k);
      if (k <= 3) CHECK(d == naive_adjacent_pairs(x, k));
      if (k == 0) continue;
      const auto rf = random_matching_field(x, k, RandomSource(trial, k));
      REQUIRE(verify_acyclic(rf.field, x));
      CHECK(rf.report.removed() <= d);
      CHECK(rf.report.proposed == f[k]);
      CHECK(rf.field.pairs.size() + rf.report.removed() == f[k]);
      const auto rcrit = critical_count(rf.field, x, k);
      CHECK(h[k] <= static_cast<std::int64_t>(rcrit));
      CHECK(rcrit <= f[k]);
    }
  }
}
