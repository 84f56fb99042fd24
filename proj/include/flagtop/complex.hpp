// Finite simplicial complexes stored by dimension, and the clique (flag)
// complex of a graph up to a dimension cap.
//
// Faces are strictly increasing vertex lists. Within a dimension, faces are
// kept in colexicographic order (compare the largest vertex first, then the
// next largest, ...); that order is what every ordinal in this library
// refers to: matrix rows and columns, field pairs, tie-breaks.

#ifndef FLAGTOP_COMPLEX_HPP
#define FLAGTOP_COMPLEX_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "flagtop/graph.hpp"

namespace flagtop {

using FaceId = std::uint32_t;

// Colex comparison of two faces of the same dimension.
bool colex_less(std::span<const Vertex> a, std::span<const Vertex> b);

class Face {
 public:
  Face() = default;
  // Throws std::invalid_argument unless `vertices` is strictly increasing.
  explicit Face(std::vector<Vertex> vertices);
  Face(std::initializer_list<Vertex> vertices) : Face(std::vector<Vertex>(vertices)) {}

  int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
  std::span<const Vertex> vertices() const { return vertices_; }
  Vertex max() const { return vertices_.back(); }

  friend bool operator==(const Face&, const Face&) = default;

 private:
  std::vector<Vertex> vertices_;
};

struct FVector {
  std::vector<std::size_t> counts;  // counts[d] = number of d-faces

  std::size_t operator[](int d) const {
    return d >= 0 && static_cast<std::size_t>(d) < counts.size() ? counts[d] : 0;
  }
  int top_dimension() const { return static_cast<int>(counts.size()) - 1; }
  friend bool operator==(const FVector&, const FVector&) = default;
};

class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  // Downward closure of the given faces. Each face may be listed in any
  // order and with repeats; it is sorted and deduplicated first.
  static SimplicialComplex from_facets(const std::vector<std::vector<Vertex>>& facets);

  // Index of the highest dimension with a stored face; -1 when empty.
  int top_dimension() const { return static_cast<int>(faces_.size()) - 1; }
  std::size_t size(int dim) const;
  std::span<const Vertex> face(int dim, FaceId id) const {
    const auto width = static_cast<std::size_t>(dim) + 1;
    return {faces_[dim].data() + id * width, width};
  }
  std::optional<FaceId> find(std::span<const Vertex> vertices) const;
  bool contains(std::span<const Vertex> vertices) const { return find(vertices).has_value(); }
  std::size_t total_faces() const;

  // True when faces above `stored_cap()` may exist in the underlying
  // complex but were not enumerated.
  bool truncated() const { return truncated_; }
  // Highest dimension whose faces are all stored; top_dimension() for
  // untruncated complexes.
  int stored_cap() const { return cap_; }

 protected:
  // Takes per-dimension flat vertex arrays (any order), sorts every dimension
  // into colex order and builds the lookup tables.
  void assign(std::vector<std::vector<Vertex>> flat, int cap, bool truncated);

 private:
  struct FaceHash {
    using is_transparent = void;
    std::size_t operator()(std::span<const Vertex> v) const;
    std::size_t operator()(const std::vector<Vertex>& v) const {
      return (*this)(std::span<const Vertex>(v));
    }
  };
  struct FaceEqual {
    using is_transparent = void;
    bool operator()(std::span<const Vertex> a, std::span<const Vertex> b) const;
  };
  using FaceIndex = std::unordered_map<std::vector<Vertex>, FaceId, FaceHash, FaceEqual>;

  std::vector<std::vector<Vertex>> faces_;  // faces_[d] holds size(d) * (d+1) vertices
  std::vector<FaceIndex> index_;
  int cap_ = -1;
  bool truncated_ = false;
};

struct CliqueBuildOptions {
  int max_dim = 0;
  std::size_t max_faces_per_dim = 2'000'000;
};

class CliqueComplex : public SimplicialComplex {
 public:
  const Graph& source() const { return source_; }
  // The requested cap; stored_cap() is lower when the face guard fired.
  int max_dim() const { return max_dim_; }
  bool guard_hit() const { return guard_hit_; }

 private:
  friend CliqueComplex build_clique_complex(const Graph&, const CliqueBuildOptions&);
  Graph source_;
  int max_dim_ = 0;
  bool guard_hit_ = false;
};

// Enumerates every clique with at most max_dim+1 vertices by ordered
// extension: a face is extended only by common neighbours above its maximum.
CliqueComplex build_clique_complex(const Graph& g, const CliqueBuildOptions& options);
CliqueComplex build_clique_complex(const Graph& g, int max_dim);

FVector f_vector(const SimplicialComplex& x);

struct StrongComponent {
  std::vector<FaceId> faces;          // ascending
  std::size_t vertex_support = 0;     // distinct vertices used by the faces
};

// Classes of k-faces under the transitive closure of "share a (k-1)-face",
// ordered by smallest member.
std::vector<StrongComponent> strongly_connected_components(const SimplicialComplex& x, int k);

// Induced subgraph on the neighbours of v; its clique complex is lk(v).
InducedSubgraph vertex_link_subgraph(const Graph& g, Vertex v);

// Facet-list text format: one face per line as space-separated vertex ids,
// '#' comments allowed. Reading closes downward.
SimplicialComplex read_facet_list(std::istream& in);
SimplicialComplex read_facet_list_file(const std::string& path);
// Writes the maximal stored faces, by dimension then colex order.
void write_facet_list(std::ostream& out, const SimplicialComplex& x);

}  // namespace flagtop

#endif  // FLAGTOP_COMPLEX_HPP
