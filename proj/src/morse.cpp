#include "flagtop/morse.hpp"

#include <algorithm>
#include <optional>
#include <string>

namespace flagtop {

namespace {

constexpr std::int64_t kNone = -1;

void require_stored(const SimplicialComplex& x, int dim, const char* what) {
  if (x.truncated() && dim > x.stored_cap())
    throw std::domain_error(std::string(what) + ": the complex is not stored through dimension " +
                            std::to_string(dim));
}

// Facet of `face` obtained by deleting position `drop`.
void facet_without(std::span<const Vertex> face, std::size_t drop, std::vector<Vertex>& out) {
  out.clear();
  for (std::size_t i = 0; i < face.size(); ++i)
    if (i != drop) out.push_back(face[i]);
}

// Matching arrays for one pair of dimensions.
struct Matching {
  std::vector<std::int64_t> up_of;    // lower face -> upper face
  std::vector<std::int64_t> down_of;  // upper face -> lower face

  Matching(std::size_t lower, std::size_t upper) : up_of(lower, kNone), down_of(upper, kNone) {}

  void unpair(FaceId lower) {
    down_of[static_cast<std::size_t>(up_of[lower])] = kNone;
    up_of[lower] = kNone;
  }
};

// Successors of a paired lower face in the V-path digraph: the other facets
// of its partner that are themselves paired.
void successors(const SimplicialComplex& x, int lower_dim, const Matching& m, FaceId node,
                std::vector<FaceId>& out, std::vector<Vertex>& scratch) {
  out.clear();
  const auto upper = x.face(lower_dim + 1, static_cast<FaceId>(m.up_of[node]));
  for (std::size_t drop = 0; drop < upper.size(); ++drop) {
    facet_without(upper, drop, scratch);
    const FaceId next = *x.find(scratch);
    if (next != node && m.up_of[next] != kNone) out.push_back(next);
  }
}

// A closed V-path as the list of its lower faces, or empty when acyclic.
// Iterative DFS from every paired lower face in ascending order.
std::vector<FaceId> find_closed_path(const SimplicialComplex& x, int lower_dim, const Matching& m) {
  enum : std::uint8_t { white, grey, black };
  const std::size_t count = m.up_of.size();
  std::vector<std::uint8_t> color(count, white);
  std::vector<FaceId> parent(count, 0);
  struct Frame {
    FaceId node;
    std::vector<FaceId> next;
    std::size_t pos;
  };
  std::vector<Frame> stack;
  std::vector<Vertex> scratch;
  for (FaceId root = 0; root < count; ++root) {
    if (m.up_of[root] == kNone || color[root] != white) continue;
    color[root] = grey;
    stack.push_back({root, {}, 0});
    successors(x, lower_dim, m, root, stack.back().next, scratch);
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.pos == top.next.size()) {
        color[top.node] = black;
        stack.pop_back();
        continue;
      }
      const FaceId child = top.next[top.pos++];
      if (color[child] == grey) {
        std::vector<FaceId> cycle;
        for (FaceId v = top.node; v != child; v = parent[v]) cycle.push_back(v);
        cycle.push_back(child);
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      if (color[child] == black) continue;
      color[child] = grey;
      parent[child] = top.node;
      stack.push_back({child, {}, 0});
      successors(x, lower_dim, m, child, stack.back().next, scratch);
    }
  }
  return {};
}

DiscreteVectorField to_field(int lower_dim, const Matching& m) {
  DiscreteVectorField v;
  v.lower_dim = lower_dim;
  for (FaceId lower = 0; lower < m.up_of.size(); ++lower) {
    if (m.up_of[lower] == kNone) v.critical_lower.push_back(lower);
    else v.pairs.emplace_back(lower, static_cast<FaceId>(m.up_of[lower]));
  }
  return v;
}

Matching validated_matching(const DiscreteVectorField& v, const SimplicialComplex& x) {
  const int lo = v.lower_dim;
  if (lo < 0) throw FieldValidationError("lower dimension must be nonnegative");
  Matching m(x.size(lo), x.size(lo + 1));
  for (auto [lower, upper] : v.pairs) {
    if (lower >= x.size(lo) || upper >= x.size(lo + 1))
      throw FieldValidationError("pair references a face that does not exist");
    const auto a = x.face(lo, lower);
    const auto b = x.face(lo + 1, upper);
    if (!std::includes(b.begin(), b.end(), a.begin(), a.end()))
      throw FieldValidationError("pair (" + std::to_string(lower) + ", " + std::to_string(upper) +
                                 ") is not a codimension-one face/coface pair");
    if (m.up_of[lower] != kNone || m.down_of[upper] != kNone)
      throw FieldValidationError("a face appears in more than one pair");
    m.up_of[lower] = upper;
    m.down_of[upper] = lower;
  }
  return m;
}

}  // namespace

DiscreteVectorField lex_gradient_field(const SimplicialComplex& x, int k) {
  if (k < 0) throw std::domain_error("dimension must be nonnegative");
  require_stored(x, k + 1, "lex_gradient_field");
  Matching m(x.size(k), x.size(k + 1));
  // The coface alpha + {x} with x > max(alpha) is exactly a (k+1)-face whose
  // facet without its maximum is alpha; keep the one with the least maximum.
  std::vector<Vertex> facet;
  for (FaceId up = 0; up < x.size(k + 1); ++up) {
    const auto beta = x.face(k + 1, up);
    facet.assign(beta.begin(), beta.end() - 1);
    const FaceId alpha = *x.find(facet);
    const auto current = m.up_of[alpha];
    if (current == kNone || beta.back() < x.face(k + 1, static_cast<FaceId>(current)).back())
      m.up_of[alpha] = up;
  }
  for (FaceId alpha = 0; alpha < m.up_of.size(); ++alpha)
    if (m.up_of[alpha] != kNone) m.down_of[static_cast<std::size_t>(m.up_of[alpha])] = alpha;
  return to_field(k, m);
}

std::vector<FaceId> lex_critical_faces_direct(const CliqueComplex& x, int k) {
  if (k < 0) throw std::domain_error("dimension must be nonnegative");
  require_stored(x, k, "lex_critical_faces_direct");
  const Graph& g = x.source();
  std::vector<FaceId> critical;
  for (FaceId id = 0; id < x.size(k); ++id) {
    const auto sigma = x.face(k, id);
    VertexSet common = VertexSet::full(g.n());
    for (Vertex v : sigma) common &= g.row(v);
    common.clear_through(sigma.back());
    if (common.empty()) critical.push_back(id);
  }
  return critical;
}

RandomField random_matching_field(const SimplicialComplex& x, int k, const RandomSource& rng) {
  if (k < 1) throw std::domain_error("random matching needs k >= 1");
  require_stored(x, k, "random_matching_field");
  const int lo = k - 1;
  RandomField result;
  Matching m(x.size(lo), x.size(k));
  std::vector<Vertex> facet;
  for (FaceId tau = 0; tau < x.size(k); ++tau) {
    RandomStream draws(rng.substream(tau));
    const auto drop = static_cast<std::size_t>(draws.below(static_cast<std::uint64_t>(k) + 1));
    facet_without(x.face(k, tau), drop, facet);
    const FaceId lower = *x.find(facet);
    ++result.report.proposed;
    if (m.up_of[lower] != kNone) {
      ++result.report.conflicts_removed;
      continue;
    }
    m.up_of[lower] = tau;
    m.down_of[tau] = lower;
  }
  while (true) {
    const auto cycle = find_closed_path(x, lo, m);
    if (cycle.empty()) break;
    const FaceId worst = *std::max_element(cycle.begin(), cycle.end(), [&](FaceId a, FaceId b) {
      return m.up_of[a] < m.up_of[b];
    });
    m.unpair(worst);
    ++result.report.cycles_broken;
  }
  result.field = to_field(lo, m);
  return result;
}

bool verify_acyclic(const DiscreteVectorField& v, const SimplicialComplex& x) {
  const Matching m = validated_matching(v, x);
  return find_closed_path(x, v.lower_dim, m).empty();
}

std::size_t critical_count(const DiscreteVectorField& v, const SimplicialComplex& x, int k) {
  if (!verify_acyclic(v, x))
    throw FieldValidationError("field has a closed V-path; critical counts bound nothing");
  if (k < 0) return 0;
  const std::size_t faces = x.size(k);
  if (v.lower_dim == k || v.lower_dim + 1 == k) return faces - v.pairs.size();
  return faces;
}

std::size_t adjacent_kface_pairs(const SimplicialComplex& x, int k) {
  if (k < 0) throw std::domain_error("dimension must be nonnegative");
  require_stored(x, k, "adjacent_kface_pairs");
  if (k == 0) {
    const std::size_t n = x.size(0);
    return n * (n - (n > 0 ? 1 : 0)) / 2;
  }
  std::vector<std::size_t> cofaces(x.size(k - 1), 0);
  std::vector<Vertex> facet;
  for (FaceId id = 0; id < x.size(k); ++id) {
    const auto f = x.face(k, id);
    for (std::size_t drop = 0; drop < f.size(); ++drop) {
      facet_without(f, drop, facet);
      ++cofaces[*x.find(facet)];
    }
  }
  std::size_t pairs = 0;
  for (auto c : cofaces) pairs += c * (c - (c > 0 ? 1 : 0)) / 2;
  return pairs;
}

}  // namespace flagtop
