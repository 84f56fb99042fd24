#include <algorithm>
#include <iterator>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"

#include "flagtop/complex.hpp"
#include "flagtop/detectors.hpp"

using namespace flagtop;

namespace {

std::vector<Vertex> to_vec(std::span<const Vertex> s) { return {s.begin(), s.end()}; }

std::vector<std::size_t> counts(const SimplicialComplex& x) { return f_vector(x).counts; }

}  // namespace

TEST_CASE("Face validates its vertices") {
  CHECK(Face({0, 2, 5}).dimension() == 2);
  CHECK(Face({4}).max() == 4);
  CHECK_THROWS_AS(Face({2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Face({1, 1}), std::invalid_argument);
}

TEST_CASE("colex order compares the largest vertex first") {
  const std::vector<Vertex> a{0, 3}, b{1, 2}, c{1, 3};
  CHECK(colex_less(b, a));
  CHECK(colex_less(a, c));
  CHECK_FALSE(colex_less(a, a));
}

TEST_CASE("clique complex f-vector examples") {
  CHECK(counts(build_clique_complex(Graph::complete(4), 3)) == std::vector<std::size_t>{4, 6, 4, 1});
  CHECK(counts(build_clique_complex(Graph::cycle(4), 3)) == std::vector<std::size_t>{4, 4});
  CHECK(counts(build_clique_complex(Graph(5), 3)) == std::vector<std::size_t>{5});
  CHECK(counts(build_clique_complex(octahedral_skeleton(2), 3)) ==
        std::vector<std::size_t>{6, 12, 8});
}

TEST_CASE("capped build flags truncation") {
  const auto x = build_clique_complex(Graph::complete(6), 2);
  CHECK(counts(x) == std::vector<std::size_t>{6, 15, 20});
  CHECK(x.truncated());
  CHECK(x.stored_cap() == 2);
  const auto y = build_clique_complex(Graph::cycle(5), 2);
  CHECK_FALSE(y.truncated());
  CHECK(y.stored_cap() == 1);
}

TEST_CASE("face guard lowers the cap") {
  const auto x = build_clique_complex(Graph::complete(10), CliqueBuildOptions{4, 100});
  CHECK(x.guard_hit());
  CHECK(x.truncated());
  CHECK(x.stored_cap() < 4);
  for (int d = 0; d <= x.top_dimension(); ++d) CHECK(x.size(d) <= 100);
}

TEST_CASE("clique counts match subset enumeration and the cap is respected") {
  oracle::GraphGen gen(31);
  for (int trial = 0; trial < 150; ++trial) {
    const Graph g = gen.next(1, 12);
    const auto all = oracle::cliques(g);
    const auto full = build_clique_complex(g, 12);
    CHECK_FALSE(full.truncated());
    REQUIRE(counts(full) == oracle::clique_counts(g));
    for (int d = 0; d <= full.top_dimension(); ++d) {
      for (FaceId id = 0; id < full.size(d); ++id) {
        const auto face = to_vec(full.face(d, id));
        CHECK(std::binary_search(all[d].begin(), all[d].end(), face));
        CHECK(full.find(face) == id);
        if (id > 0) CHECK(colex_less(full.face(d, id - 1), full.face(d, id)));
        if (d > 0) {
          auto facet = face;
          facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(id % facet.size()));
          CHECK(full.contains(facet));
        }
      }
    }
    const int cap = static_cast<int>(gen.engine()() % 4);
    const auto capped = build_clique_complex(g, cap);
    CHECK(capped.top_dimension() <= cap);
    for (int d = 0; d <= std::min(cap, full.top_dimension()); ++d)
      CHECK(capped.size(d) == full.size(d));
    CHECK(capped.truncated() == (full.top_dimension() > cap));
  }
}

TEST_CASE("strongly connected components") {
  const auto two = SimplicialComplex::from_facets({{0, 1, 2}, {1, 2, 3}});
  const auto a = strongly_connected_components(two, 2);
  REQUIRE(a.size() == 1);
  CHECK(a[0].faces.size() == 2);
  CHECK(a[0].vertex_support == 4);

  const auto bowtie = SimplicialComplex::from_facets({{0, 1, 2}, {2, 3, 4}});
  const auto b = strongly_connected_components(bowtie, 2);
  REQUIRE(b.size() == 2);
  CHECK(b[0].vertex_support == 3);

  const auto k4 = strongly_connected_components(build_clique_complex(Graph::complete(4), 3), 2);
  REQUIRE(k4.size() == 1);
  CHECK(k4[0].faces.size() == 4);

  const auto edges = strongly_connected_components(build_clique_complex(Graph::path(4), 1), 1);
  CHECK(edges.size() == 1);
  const auto verts = strongly_connected_components(build_clique_complex(Graph(3), 1), 0);
  CHECK(verts.size() == 1);
}

TEST_CASE("strong components match a naive closure") {
  oracle::GraphGen gen(37);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = gen.next(3, 10, 0.3, 0.8);
    const auto x = build_clique_complex(g, 3);
    for (int k = 1; k <= x.top_dimension(); ++k) {
      const std::size_t m = x.size(k);
      std::vector<std::size_t> label(m);
      for (std::size_t i = 0; i < m; ++i) label[i] = i;
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j) {
            const auto a = x.face(k, static_cast<FaceId>(i));
            const auto b = x.face(k, static_cast<FaceId>(j));
            std::vector<Vertex> common;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
            if (common.size() == static_cast<std::size_t>(k) && label[j] < label[i]) {
              label[i] = label[j];
              changed = true;
            }
          }
      }
      const auto comps = strongly_connected_components(x, k);
      std::size_t total = 0;
      for (const auto& c : comps) {
        total += c.faces.size();
        for (FaceId f : c.faces) CHECK(label[f] == label[c.faces.front()]);
      }
      CHECK(total == m);
      std::set<std::size_t> distinct(label.begin(), label.end());
      CHECK(distinct.size() == comps.size());
    }
  }
}

TEST_CASE("vertex links") {
  const auto k5 = vertex_link_subgraph(Graph::complete(5), 0);
  CHECK(k5.graph == Graph::complete(4));
  CHECK(k5.original == std::vector<Vertex>{1, 2, 3, 4});
  const auto c4 = vertex_link_subgraph(Graph::cycle(4), 0);
  CHECK(c4.graph == Graph(2));
  CHECK(c4.original == std::vector<Vertex>{1, 3});
  std::vector<Edge> star{{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  CHECK(vertex_link_subgraph(Graph::from_edges(5, star), 0).graph == Graph(4));
}

TEST_CASE("facet lists close downward and round trip") {
  std::istringstream in("# two triangles\n2 1 0\n1 2 3\n\n4\n");
  const auto x = read_facet_list(in);
  CHECK(counts(x) == std::vector<std::size_t>{5, 5, 2});
  std::ostringstream out;
  write_facet_list(out, x);
  std::istringstream back(out.str());
  CHECK(counts(read_facet_list(back)) == counts(x));
  const auto rp2 = read_facet_list_file(std::string(FLAGTOP_FIXTURES) + "/rp2_6vertex.facets");
  CHECK(counts(rp2) == std::vector<std::size_t>{6, 15, 10});
  CHECK_THROWS(read_facet_list_file("/nonexistent/x.facets"));
}
