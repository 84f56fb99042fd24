#include "flagtop/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace flagtop {

// ---------------------------------------------------------------- VertexSet

VertexSet VertexSet::full(std::size_t n) {
  VertexSet s(n);
  for (std::size_t w = 0; w < s.words_.size(); ++w) s.words_[w] = ~0ULL;
  if (n % 64 != 0) s.words_.back() = (1ULL << (n % 64)) - 1;
  return s;
}

VertexSet VertexSet::of(std::size_t n, std::span<const Vertex> vertices) {
  VertexSet s(n);
  for (Vertex v : vertices) {
    if (v >= n) throw std::out_of_range("vertex id out of range");
    s.insert(v);
  }
  return s;
}

std::size_t VertexSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool VertexSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

std::optional<Vertex> VertexSet::first_from(Vertex from) const {
  std::size_t w = from >> 6;
  if (w >= words_.size()) return std::nullopt;
  std::uint64_t word = words_[w] & (~0ULL << (from & 63));
  while (true) {
    if (word != 0) return static_cast<Vertex>(w * 64 + std::countr_zero(word));
    if (++w == words_.size()) return std::nullopt;
    word = words_[w];
  }
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    for (std::uint64_t word = words_[w]; word != 0; word &= word - 1) {
      out.push_back(static_cast<Vertex>(w * 64 + std::countr_zero(word)));
    }
  }
  return out;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
  return *this &= other.words();
}

VertexSet& VertexSet::operator&=(std::span<const std::uint64_t> row) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= row[w];
  return *this;
}

void VertexSet::clear_through(Vertex v) {
  const std::size_t last = v >> 6;
  for (std::size_t w = 0; w < last && w < words_.size(); ++w) words_[w] = 0;
  if (last < words_.size()) {
    const unsigned shift = (v & 63) + 1;
    words_[last] &= shift == 64 ? 0ULL : (~0ULL << shift);
  }
}

// -------------------------------------------------------------------- Graph

Graph::Graph(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

void Graph::set_edge(Vertex u, Vertex v) {
  bits_[u * words_ + (v >> 6)] |= 1ULL << (v & 63);
  bits_[v * words_ + (u >> 6)] |= 1ULL << (u & 63);
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    g.set_edge(u, v);
  }
  return g;
}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u) g.set_edge(u, v);
  return g;
}

Graph Graph::cycle(std::size_t n) {
  if (n < 3) throw std::invalid_argument("a cycle needs at least 3 vertices");
  Graph g(n);
  for (Vertex v = 0; v < n; ++v) g.set_edge(v, static_cast<Vertex>((v + 1) % n));
  return g;
}

Graph Graph::path(std::size_t n) {
  Graph g(n);
  for (Vertex v = 1; v < n; ++v) g.set_edge(v - 1, v);
  return g;
}

std::size_t Graph::degree(Vertex u) const {
  std::size_t d = 0;
  for (auto w : row(u)) d += static_cast<std::size_t>(std::popcount(w));
  return d;
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (auto w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total / 2;
}

std::vector<Vertex> Graph::neighbors(Vertex u) const { return neighborhood(u).members(); }

VertexSet Graph::neighborhood(Vertex u) const {
  VertexSet s = VertexSet::full(n_);
  s &= row(u);
  return s;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (Vertex v = 1; v < n_; ++v)
    for (Vertex u = 0; u < v; ++u)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  InducedSubgraph sub;
  sub.original.assign(vertices.begin(), vertices.end());
  std::sort(sub.original.begin(), sub.original.end());
  sub.original.erase(std::unique(sub.original.begin(), sub.original.end()), sub.original.end());
  std::vector<Edge> edges;
  for (Vertex j = 1; j < sub.original.size(); ++j)
    for (Vertex i = 0; i < j; ++i)
      if (g.adjacent(sub.original[i], sub.original[j])) edges.emplace_back(i, j);
  sub.graph = Graph::from_edges(sub.original.size(), edges);
  return sub;
}

Graph generate_gnp(std::size_t n, double p, const RandomSource& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("edge probability must lie in [0,1]");
  Graph g(n);
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u)
      if (rng.uniform(pair_rank(u, v)) < p) g.set_edge(u, v);
  return g;
}

// ------------------------------------------------------- hypothesis checks

namespace {

struct SubsetSearch {
  const Graph& g;
  std::size_t l;
  std::vector<Vertex> prefix;
  std::optional<std::vector<Vertex>> witness;

  // Returns false once a failing subset is found.
  bool descend(const VertexSet& common, Vertex next) {
    const std::size_t depth = prefix.size();
    if (depth > 0 && common.empty()) {
      // Every completion fails; the first one is the lexicographic witness.
      std::vector<Vertex> w = prefix;
      for (Vertex v = next; w.size() < l; ++v) w.push_back(v);
      witness = std::move(w);
      return false;
    }
    if (depth == l) return true;
    const std::size_t needed = l - depth;
    for (Vertex v = next; v + needed <= g.n(); ++v) {
      VertexSet narrowed = common;
      narrowed &= g.row(v);
      prefix.push_back(v);
      const bool ok = descend(narrowed, v + 1);
      prefix.pop_back();
      if (!ok) return false;
    }
    return true;
  }
};

}  // namespace

CommonNeighborResult common_neighbor_all(const Graph& g, std::size_t l) {
  if (l == 0 || l > g.n()) throw std::domain_error("subset size must satisfy 1 <= l <= n");
  SubsetSearch search{g, l, {}, std::nullopt};
  search.prefix.reserve(l);
  CommonNeighborResult result;
  result.holds = search.descend(VertexSet::full(g.n()), 0);
  result.witness = std::move(search.witness);
  return result;
}

InducedSubgraph k_core(const Graph& g, std::size_t d) {
  const std::size_t n = g.n();
  std::vector<std::size_t> degree(n);
  std::vector<bool> removed(n, false);
  std::vector<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    if (degree[v] < d) {
      removed[v] = true;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const Vertex v = queue.back();
    queue.pop_back();
    for (Vertex w : g.neighbors(v)) {
      if (removed[w]) continue;
      if (--degree[w] < d) {
        removed[w] = true;
        queue.push_back(w);
      }
    }
  }
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < n; ++v)
    if (!removed[v]) keep.push_back(v);
  return induced_subgraph(g, keep);
}

std::vector<Vertex> common_neighborhood(const Graph& g, std::span<const Vertex> subset) {
  VertexSet common = VertexSet::full(g.n());
  for (Vertex u : subset) {
    if (u >= g.n()) throw std::out_of_range("vertex id out of range");
    common &= g.row(u);
  }
  // Without loops no member of U is adjacent to itself, so U is excluded
  // automatically whenever U is nonempty.
  return common.members();
}

namespace {

std::size_t components_within(const Graph& g, const VertexSet& allowed) {
  VertexSet unseen = allowed;
  std::size_t components = 0;
  std::vector<Vertex> stack;
  while (auto start = unseen.first_from(0)) {
    ++components;
    unseen.erase(*start);
    stack.push_back(*start);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      VertexSet frontier = unseen;
      frontier &= g.row(v);
      for (Vertex w : frontier.members()) {
        unseen.erase(w);
        stack.push_back(w);
      }
    }
  }
  return components;
}

}  // namespace

bool link_intersection_connected(const Graph& g, std::span<const Vertex> subset) {
  const auto common = common_neighborhood(g, subset);
  if (common.empty()) return false;
  return components_within(g, VertexSet::of(g.n(), common)) == 1;
}

std::size_t connected_components(const Graph& g) {
  return components_within(g, VertexSet::full(g.n()));
}

// ------------------------------------------------------------------ edge I/O

namespace {

// Yields whitespace-separated tokens with '#' comments removed.
std::vector<std::string> tokenize(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string token;
    while (fields >> token) tokens.push_back(token);
  }
  return tokens;
}

std::uint64_t parse_count(const std::string& token) {
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty() || token[0] == '-')
    throw std::runtime_error("edge list: expected a nonnegative integer, got '" + token + "'");
  return value;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  const auto tokens = tokenize(in);
  if (tokens.size() < 2) throw std::runtime_error("edge list: missing 'n m' header");
  const auto n = parse_count(tokens[0]);
  const auto m = parse_count(tokens[1]);
  if (tokens.size() != 2 + 2 * m)
    throw std::runtime_error("edge list: header declares " + std::to_string(m) +
                             " edges but the body has " +
                             std::to_string((tokens.size() - 2) / 2));
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto u = parse_count(tokens[2 + 2 * i]);
    const auto v = parse_count(tokens[3 + 2 * i]);
    if (u >= n || v >= n || u == v)
      throw std::runtime_error("edge list: invalid edge " + std::to_string(u) + " " +
                               std::to_string(v));
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return Graph::from_edges(n, edges);
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list '" + path + "'");
  try {
    return read_edge_list(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_edge_list(std::ostream& out, const Graph& g) {
  const auto edges = g.edges();
  out << g.n() << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) out << u << ' ' << v << '\n';
}

void write_edge_list_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write edge list '" + path + "'");
  write_edge_list(out, g);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace flagtop
