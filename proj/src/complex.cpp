#include "flagtop/complex.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace flagtop {

bool colex_less(std::span<const Vertex> a, std::span<const Vertex> b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

Face::Face(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw std::invalid_argument("a face needs at least one vertex");
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    if (vertices_[i - 1] >= vertices_[i])
      throw std::invalid_argument("face vertices must be strictly increasing");
}

// -------------------------------------------------------- SimplicialComplex

std::size_t SimplicialComplex::FaceHash::operator()(std::span<const Vertex> v) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Vertex x : v) h = mix64(h ^ x);
  return static_cast<std::size_t>(h);
}

bool SimplicialComplex::FaceEqual::operator()(std::span<const Vertex> a,
                                              std::span<const Vertex> b) const {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

std::size_t SimplicialComplex::size(int dim) const {
  if (dim < 0 || dim > top_dimension()) return 0;
  return faces_[dim].size() / (static_cast<std::size_t>(dim) + 1);
}

std::size_t SimplicialComplex::total_faces() const {
  std::size_t total = 0;
  for (int d = 0; d <= top_dimension(); ++d) total += size(d);
  return total;
}

std::optional<FaceId> SimplicialComplex::find(std::span<const Vertex> vertices) const {
  const int dim = static_cast<int>(vertices.size()) - 1;
  if (dim < 0 || dim > top_dimension()) return std::nullopt;
  const auto& index = index_[dim];
  if (auto it = index.find(vertices); it != index.end()) return it->second;
  return std::nullopt;
}

void SimplicialComplex::assign(std::vector<std::vector<Vertex>> flat, int cap, bool truncated) {
  while (!flat.empty() && flat.back().empty()) flat.pop_back();
  faces_.clear();
  index_.clear();
  for (std::size_t d = 0; d < flat.size(); ++d) {
    const std::size_t width = d + 1;
    const std::size_t count = flat[d].size() / width;
    std::vector<FaceId> order(count);
    std::iota(order.begin(), order.end(), FaceId{0});
    const Vertex* base = flat[d].data();
    std::sort(order.begin(), order.end(), [&](FaceId a, FaceId b) {
      return colex_less({base + a * width, width}, {base + b * width, width});
    });
    std::vector<Vertex> sorted;
    sorted.reserve(flat[d].size());
    for (FaceId id : order) sorted.insert(sorted.end(), base + id * width, base + (id + 1) * width);
    flat[d].clear();
    flat[d].shrink_to_fit();

    FaceIndex index;
    index.reserve(count);
    for (FaceId id = 0; id < count; ++id) {
      auto [it, inserted] = index.emplace(
          std::vector<Vertex>(sorted.begin() + id * width, sorted.begin() + (id + 1) * width), id);
      if (!inserted) throw std::logic_error("duplicate face in complex");
    }
    faces_.push_back(std::move(sorted));
    index_.push_back(std::move(index));
  }
  cap_ = truncated ? cap : top_dimension();
  truncated_ = truncated;
}

SimplicialComplex SimplicialComplex::from_facets(const std::vector<std::vector<Vertex>>& facets) {
  std::vector<std::set<std::vector<Vertex>>> by_dim;
  for (auto facet : facets) {
    std::sort(facet.begin(), facet.end());
    facet.erase(std::unique(facet.begin(), facet.end()), facet.end());
    if (facet.empty()) continue;
    if (facet.size() > 24) throw std::invalid_argument("facet too large to close downward");
    const std::size_t m = facet.size();
    for (std::uint32_t mask = 1; mask < (1U << m); ++mask) {
      std::vector<Vertex> sub;
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (1U << i)) sub.push_back(facet[i]);
      if (by_dim.size() < sub.size()) by_dim.resize(sub.size());
      by_dim[sub.size() - 1].insert(std::move(sub));
    }
  }
  std::vector<std::vector<Vertex>> flat(by_dim.size());
  for (std::size_t d = 0; d < by_dim.size(); ++d)
    for (const auto& f : by_dim[d]) flat[d].insert(flat[d].end(), f.begin(), f.end());
  SimplicialComplex x;
  x.assign(std::move(flat), static_cast<int>(by_dim.size()) - 1, false);
  return x;
}

// ------------------------------------------------------------ clique build

namespace {

struct CliqueEnumerator {
  const Graph& g;
  std::size_t max_faces;
  int cap;
  bool truncated = false;
  bool guard_hit = false;
  std::vector<std::vector<Vertex>> flat;
  std::vector<Vertex> face;

  void lower_cap(int new_cap) {
    cap = new_cap;
    truncated = true;
    guard_hit = true;
    flat.resize(static_cast<std::size_t>(cap + 1));
  }

  // `face` is a clique whose common neighbours above its maximum are `above`.
  void extend(const VertexSet& above) {
    const int dim = static_cast<int>(face.size()) - 1;
    if (dim == cap) {
      if (!above.empty()) truncated = true;
      return;
    }
    for (auto next = above.first_from(0); next; next = above.first_from(*next + 1)) {
      const int child = dim + 1;
      if (child > cap) return;  // the guard may have lowered the cap mid-loop
      const std::size_t width = static_cast<std::size_t>(child) + 1;
      if (flat[child].size() / width >= max_faces) {
        lower_cap(child - 1);
        truncated = true;
        return;
      }
      face.push_back(*next);
      flat[child].insert(flat[child].end(), face.begin(), face.end());
      VertexSet narrowed = above;
      narrowed &= g.row(*next);
      narrowed.clear_through(*next);
      extend(narrowed);
      face.pop_back();
    }
  }
};

}  // namespace

CliqueComplex build_clique_complex(const Graph& g, const CliqueBuildOptions& options) {
  if (options.max_dim < 0) throw std::domain_error("max_dim must be nonnegative");
  if (options.max_faces_per_dim == 0) throw std::domain_error("face guard must be positive");
  CliqueEnumerator walk{g, options.max_faces_per_dim, options.max_dim, false, false, {}, {}};
  walk.flat.resize(static_cast<std::size_t>(options.max_dim) + 1);
  if (g.n() > options.max_faces_per_dim)
    throw std::domain_error("vertex count exceeds the face guard");
  for (Vertex v = 0; v < g.n(); ++v) {
    walk.face.assign(1, v);
    walk.flat[0].push_back(v);
    VertexSet above = g.neighborhood(v);
    above.clear_through(v);
    walk.extend(above);
  }
  CliqueComplex x;
  const int cap = walk.cap;
  x.assign(std::move(walk.flat), cap, walk.truncated);
  x.source_ = g;
  x.max_dim_ = options.max_dim;
  x.guard_hit_ = walk.guard_hit;
  return x;
}

CliqueComplex build_clique_complex(const Graph& g, int max_dim) {
  CliqueBuildOptions options;
  options.max_dim = max_dim;
  return build_clique_complex(g, options);
}

FVector f_vector(const SimplicialComplex& x) {
  FVector f;
  for (int d = 0; d <= x.top_dimension(); ++d) f.counts.push_back(x.size(d));
  return f;
}

// ------------------------------------------------------ strong connectivity

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;  // smallest member is the root
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<StrongComponent> strongly_connected_components(const SimplicialComplex& x, int k) {
  if (k < 0) throw std::domain_error("dimension must be nonnegative");
  if (x.truncated() && k > x.stored_cap())
    throw std::domain_error("dimension exceeds the stored cap of the complex");
  const std::size_t count = x.size(k);
  DisjointSets sets(count);
  if (k == 0) {
    for (std::size_t i = 1; i < count; ++i) sets.unite(0, i);
  } else {
    std::vector<std::optional<FaceId>> first_coface(x.size(k - 1));
    std::vector<Vertex> facet(static_cast<std::size_t>(k));
    for (FaceId id = 0; id < count; ++id) {
      const auto f = x.face(k, id);
      for (std::size_t drop = 0; drop < f.size(); ++drop) {
        std::size_t j = 0;
        for (std::size_t i = 0; i < f.size(); ++i)
          if (i != drop) facet[j++] = f[i];
        const FaceId lower = *x.find(facet);
        if (first_coface[lower]) sets.unite(*first_coface[lower], id);
        else first_coface[lower] = id;
      }
    }
  }
  std::vector<StrongComponent> components;
  std::vector<std::size_t> slot(count, static_cast<std::size_t>(-1));
  for (FaceId id = 0; id < count; ++id) {
    const std::size_t root = sets.find(id);
    if (slot[root] == static_cast<std::size_t>(-1)) {
      slot[root] = components.size();
      components.emplace_back();
    }
    components[slot[root]].faces.push_back(id);
  }
  for (auto& c : components) {
    std::set<Vertex> support;
    for (FaceId id : c.faces) {
      const auto f = x.face(k, id);
      support.insert(f.begin(), f.end());
    }
    c.vertex_support = support.size();
  }
  return components;
}

InducedSubgraph vertex_link_subgraph(const Graph& g, Vertex v) {
  if (v >= g.n()) throw std::out_of_range("vertex id out of range");
  const auto nbrs = g.neighbors(v);
  return induced_subgraph(g, nbrs);
}

// ---------------------------------------------------------- facet list I/O

SimplicialComplex read_facet_list(std::istream& in) {
  std::vector<std::vector<Vertex>> facets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<Vertex> facet;
    std::string token;
    while (fields >> token) {
      std::size_t used = 0;
      unsigned long value = 0;
      try {
        value = std::stoul(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size() || token[0] == '-' || value > UINT32_MAX)
        throw std::runtime_error("facet list line " + std::to_string(line_no) +
                                 ": bad vertex id '" + token + "'");
      facet.push_back(static_cast<Vertex>(value));
    }
    if (!facet.empty()) facets.push_back(std::move(facet));
  }
  return SimplicialComplex::from_facets(facets);
}

SimplicialComplex read_facet_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open facet list '" + path + "'");
  try {
    return read_facet_list(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_facet_list(std::ostream& out, const SimplicialComplex& x) {
  const int top = x.top_dimension();
  for (int d = 0; d <= top; ++d) {
    std::vector<bool> covered(x.size(d), false);
    if (d < top) {
      std::vector<Vertex> facet(static_cast<std::size_t>(d) + 1);
      for (FaceId id = 0; id < x.size(d + 1); ++id) {
        const auto f = x.face(d + 1, id);
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
          std::size_t j = 0;
          for (std::size_t i = 0; i < f.size(); ++i)
            if (i != drop) facet[j++] = f[i];
          covered[*x.find(facet)] = true;
        }
      }
    }
    for (FaceId id = 0; id < x.size(d); ++id) {
      if (covered[id]) continue;
      const auto f = x.face(d, id);
      for (std::size_t i = 0; i < f.size(); ++i) out << (i ? " " : "") << f[i];
      out << '\n';
    }
  }
}

}  // namespace flagtop
