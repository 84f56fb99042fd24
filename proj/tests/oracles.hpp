// Independent reference computations for the tests. Everything here is
// deliberately naive (subset enumeration, dense elimination) and shares no
// code with the library beyond the Graph accessor.

#ifndef FLAGTOP_TESTS_ORACLES_HPP
#define FLAGTOP_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "flagtop/graph.hpp"

namespace oracle {

using flagtop::Graph;
using flagtop::Vertex;

// Every clique of g as a sorted vertex list, grouped by dimension, from
// bitmask enumeration. Only for n <= 16.
inline std::vector<std::vector<std::vector<Vertex>>> cliques(const Graph& g, int max_dim = 64) {
  std::vector<std::vector<std::vector<Vertex>>> by_dim;
  const std::uint32_t n = static_cast<std::uint32_t>(g.n());
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<Vertex> s;
    for (Vertex v = 0; v < n; ++v)
      if (mask >> v & 1u) s.push_back(v);
    const int d = static_cast<int>(s.size()) - 1;
    if (d > max_dim) continue;
    bool clique = true;
    for (std::size_t i = 0; i < s.size() && clique; ++i)
      for (std::size_t j = i + 1; j < s.size() && clique; ++j) clique = g.adjacent(s[i], s[j]);
    if (!clique) continue;
    if (by_dim.size() <= static_cast<std::size_t>(d)) by_dim.resize(d + 1);
    by_dim[d].push_back(s);
  }
  for (auto& faces : by_dim) std::sort(faces.begin(), faces.end());
  return by_dim;
}

inline std::vector<std::size_t> clique_counts(const Graph& g) {
  std::vector<std::size_t> f;
  for (const auto& faces : cliques(g)) f.push_back(faces.size());
  return f;
}

// Rank of a dense matrix over GF(p) by row echelon form.
inline std::size_t dense_rank(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
  const auto power = [p](std::int64_t b, std::int64_t e) {
    std::int64_t r = 1;
    b %= p;
    while (e) {
      if (e & 1) r = static_cast<std::int64_t>((__int128)r * b % p);
      b = static_cast<std::int64_t>((__int128)b * b % p);
      e >>= 1;
    }
    return r;
  };
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a[0].size();
  for (auto& row : a)
    for (auto& x : row) x = ((x % p) + p) % p;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const std::int64_t inv = power(a[rank][c], p - 2);
    for (auto& x : a[rank]) x = static_cast<std::int64_t>((__int128)x * inv % p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const std::int64_t f = a[r][c];
      for (std::size_t j = 0; j < cols; ++j)
        a[r][j] = static_cast<std::int64_t>(((a[r][j] - (__int128)f * a[rank][j]) % p + p) % p);
    }
    ++rank;
  }
  return rank;
}

// Reduced Betti numbers over GF(p) of the complex whose faces are `faces`
// (grouped by dimension, closed downward), by dense boundary ranks.
inline std::vector<std::int64_t> reduced_betti(
    const std::vector<std::vector<std::vector<Vertex>>>& faces, std::int64_t p) {
  const int top = static_cast<int>(faces.size()) - 1;
  std::vector<std::int64_t> rank(top + 2, 0);
  if (top >= 0) rank[0] = faces[0].empty() ? 0 : 1;
  for (int d = 1; d <= top; ++d) {
    std::map<std::vector<Vertex>, std::size_t> row_of;
    for (std::size_t i = 0; i < faces[d - 1].size(); ++i) row_of[faces[d - 1][i]] = i;
    std::vector<std::vector<std::int64_t>> m(faces[d - 1].size(),
                                             std::vector<std::int64_t>(faces[d].size(), 0));
    for (std::size_t j = 0; j < faces[d].size(); ++j) {
      const auto& s = faces[d][j];
      for (std::size_t i = 0; i < s.size(); ++i) {
        auto facet = s;
        facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(i));
        m[row_of.at(facet)][j] = (i % 2 == 0) ? 1 : -1;
      }
    }
    rank[d] = static_cast<std::int64_t>(dense_rank(m, p));
  }
  std::vector<std::int64_t> betti;
  for (int d = 0; d <= top; ++d)
    betti.push_back(static_cast<std::int64_t>(faces[d].size()) - rank[d] - rank[d + 1]);
  return betti;
}

inline std::vector<std::int64_t> clique_reduced_betti(const Graph& g, std::int64_t p = 2147483647) {
  return reduced_betti(cliques(g), p);
}

// Graph on n vertices whose edges are the set bits of `mask` in colex pair
// order ({0,1}, {0,2}, {1,2}, {0,3}, ...).
inline Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<flagtop::Edge> edges;
  std::size_t bit = 0;
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u, ++bit)
      if (mask >> bit & 1u) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

// Hand-rolled generator of small random graphs for property tests.
class GraphGen {
 public:
  explicit GraphGen(std::uint64_t seed) : rng_(seed) {}
  Graph next(std::size_t min_n, std::size_t max_n, double min_p = 0.0, double max_p = 1.0) {
    std::uniform_int_distribution<std::size_t> size(min_n, max_n);
    std::uniform_real_distribution<double> density(min_p, max_p);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const std::size_t n = size(rng_);
    const double p = density(rng_);
    std::vector<flagtop::Edge> edges;
    for (Vertex v = 1; v < n; ++v)
      for (Vertex u = 0; u < v; ++u)
        if (coin(rng_) < p) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle

#endif  // FLAGTOP_TESTS_ORACLES_HPP
