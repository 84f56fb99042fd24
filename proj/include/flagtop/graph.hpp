// Simple undirected graphs on vertices 0..n-1 stored as bit rows, the
// G(n,p) sampler, and graph-level hypothesis checkers.

#ifndef FLAGTOP_GRAPH_HPP
#define FLAGTOP_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flagtop/random.hpp"

namespace flagtop {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// A set of vertices as a bit row of 64-bit words. Bits beyond the owning
// graph's vertex count are always zero.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static VertexSet full(std::size_t n);
  static VertexSet of(std::size_t n, std::span<const Vertex> vertices);

  std::size_t universe() const { return n_; }
  bool contains(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1ULL; }
  void insert(Vertex v) { words_[v >> 6] |= 1ULL << (v & 63); }
  void erase(Vertex v) { words_[v >> 6] &= ~(1ULL << (v & 63)); }

  std::size_t count() const;
  bool empty() const;
  // Smallest member >= from, if any.
  std::optional<Vertex> first_from(Vertex from) const;
  std::vector<Vertex> members() const;

  VertexSet& operator&=(const VertexSet& other);
  VertexSet& operator&=(std::span<const std::uint64_t> row);
  // Removes every member <= v.
  void clear_through(Vertex v);

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  // Throws std::invalid_argument on loops or endpoints >= n. Duplicate edges
  // are merged.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  static Graph complete(std::size_t n);
  static Graph cycle(std::size_t n);
  static Graph path(std::size_t n);

  std::size_t n() const { return n_; }
  bool adjacent(Vertex u, Vertex v) const {
    return (bits_[u * words_ + (v >> 6)] >> (v & 63)) & 1ULL;
  }
  std::span<const std::uint64_t> row(Vertex u) const {
    return {bits_.data() + u * words_, words_};
  }
  std::size_t degree(Vertex u) const;
  std::size_t edge_count() const;
  std::vector<Vertex> neighbors(Vertex u) const;
  VertexSet neighborhood(Vertex u) const;

  // Edges {u,v}, u<v, in colexicographic order (by v, then u).
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend Graph generate_gnp(std::size_t, double, const RandomSource&);
  void set_edge(Vertex u, Vertex v);

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// An induced subgraph with its relabeling: vertex i of `graph` is vertex
// `original[i]` of the parent, and `original` is increasing.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> original;
};

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

// Colex rank of the pair {u,v}, u<v: v(v-1)/2 + u.
constexpr std::uint64_t pair_rank(Vertex u, Vertex v) {
  return static_cast<std::uint64_t>(v) * (v - 1) / 2 + u;
}

// One Bernoulli(p) draw per unordered pair, taken as uniform(pair_rank) < p,
// so for a fixed source the edge set grows monotonically in p.
Graph generate_gnp(std::size_t n, double p, const RandomSource& rng);

struct CommonNeighborResult {
  bool holds = false;
  std::optional<std::vector<Vertex>> witness;  // lexicographically first failing l-subset
};

// Whether every l-subset U has some w outside U adjacent to all of U.
CommonNeighborResult common_neighbor_all(const Graph& g, std::size_t l);

// The d-core by iterative peeling (possibly empty).
InducedSubgraph k_core(const Graph& g, std::size_t d);

// { w not in U : w adjacent to every vertex of U }; all vertices when U is empty.
std::vector<Vertex> common_neighborhood(const Graph& g, std::span<const Vertex> subset);

// True iff the subgraph induced on common_neighborhood(g, U) is nonempty and
// connected.
bool link_intersection_connected(const Graph& g, std::span<const Vertex> subset);

// Number of connected components (isolated vertices count).
std::size_t connected_components(const Graph& g);

// Edge-list text format: "n m" then m lines "u v"; '#' starts a comment.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

}  // namespace flagtop

#endif  // FLAGTOP_GRAPH_HPP
