#include "flagtop/detectors.hpp"

#include <algorithm>
#include <numeric>

namespace flagtop {

namespace {

Rational reduce(std::int64_t num, std::int64_t den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Rational{num, den} : Rational{num / g, den / g};
}

std::vector<Vertex> sphere_vertices(const SphereCertificate& cert) {
  std::vector<Vertex> s = cert.u;
  s.insert(s.end(), cert.v.begin(), cert.v.end());
  return s;
}

}  // namespace

Graph octahedral_skeleton(int k) {
  if (k < 0) throw std::domain_error("sphere dimension must be nonnegative");
  const auto half = static_cast<Vertex>(k + 1);
  std::vector<Edge> edges;
  for (Vertex b = 1; b < 2 * half; ++b)
    for (Vertex a = 0; a < b; ++a)
      if (b != a + half) edges.emplace_back(a, b);
  return Graph::from_edges(2 * half, edges);
}

SphereCertificate octahedral_identity_certificate(int k) {
  SphereCertificate cert;
  cert.k = k;
  for (int i = 0; i <= k; ++i) {
    cert.u.push_back(static_cast<Vertex>(i));
    cert.v.push_back(static_cast<Vertex>(i + k + 1));
  }
  return cert;
}

DensityExponent density_exponent(int k) {
  if (k < 1) throw std::domain_error("density exponent needs k >= 1");
  DensityExponent d;
  d.vertices = 2 * static_cast<std::size_t>(k + 1);
  d.edges = d.vertices * (d.vertices - 1) / 2 - static_cast<std::size_t>(k + 1);
  d.density = reduce(static_cast<std::int64_t>(d.edges), static_cast<std::int64_t>(d.vertices));
  d.exponent = reduce(-static_cast<std::int64_t>(d.vertices), static_cast<std::int64_t>(d.edges));
  return d;
}

std::optional<std::string> certificate_violation(const Graph& g, const SphereCertificate& cert) {
  const auto m = static_cast<std::size_t>(cert.k) + 1;
  if (cert.k < 0 || cert.u.size() != m || cert.v.size() != m)
    return "u and v must each list k+1 vertices";
  auto s = sphere_vertices(cert);
  for (Vertex x : s)
    if (x >= g.n()) return "vertex " + std::to_string(x) + " is not in the host graph";
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) return "sphere vertices are not distinct";

  for (std::size_t i = 0; i < m; ++i) {
    if (g.adjacent(cert.u[i], cert.v[i]))
      return "antipodal vertices u_" + std::to_string(i + 1) + ", v_" + std::to_string(i + 1) +
             " are adjacent";
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      if (!g.adjacent(cert.u[i], cert.u[j]) || !g.adjacent(cert.v[i], cert.v[j]) ||
          !g.adjacent(cert.u[i], cert.v[j]))
        return "induced subgraph on the sphere is not the cocktail-party graph (pairs " +
               std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")";
    }
  }
  if (!common_neighborhood(g, cert.u).empty())
    return "the u-vertices have a common neighbour";
  const VertexSet on_sphere = VertexSet::of(g.n(), s);
  for (Vertex y = 0; y < g.n(); ++y) {
    if (on_sphere.contains(y)) continue;
    bool has_free_index = false;
    for (std::size_t i = 0; i < m && !has_free_index; ++i)
      has_free_index = !g.adjacent(y, cert.u[i]) && !g.adjacent(y, cert.v[i]);
    if (!has_free_index)
      return "outside vertex " + std::to_string(y) +
             " meets every antipodal pair, so no simplicial image exists";
  }
  return std::nullopt;
}

// ------------------------------------------------------------------ search

namespace {

template <class T>
void shuffle(std::vector<T>& items, RandomStream& rng) {
  for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[rng.below(i)]);
}

class SphereSearch {
 public:
  SphereSearch(const Graph& g, int k, RandomStream& rng, std::size_t expansion_cap)
      : g_(g), k_(k), rng_(rng), cap_(expansion_cap) {}

  std::optional<SphereCertificate> from(Vertex u1) {
    expansions_ = 0;
    cert_ = SphereCertificate{k_, {u1}, {}};
    std::vector<Vertex> partners;
    VertexSet near_u1 = g_.neighborhood(u1);
    for (Vertex v = 0; v < g_.n(); ++v)
      if (v != u1 && !near_u1.contains(v)) partners.push_back(v);
    shuffle(partners, rng_);
    for (Vertex v1 : partners) {
      if (++expansions_ > cap_) return std::nullopt;
      VertexSet common = near_u1;
      common &= g_.row(v1);
      if (common.count() < 2 * static_cast<std::size_t>(k_)) continue;
      cert_.v.assign(1, v1);
      if (extend(common)) return cert_;
    }
    return std::nullopt;
  }

 private:
  // `common` = vertices adjacent to every chosen vertex.
  bool extend(const VertexSet& common) {
    if (cert_.u.size() == static_cast<std::size_t>(k_) + 1)
      return !certificate_violation(g_, cert_).has_value();
    const std::size_t remaining = 2 * (static_cast<std::size_t>(k_) + 1 - cert_.u.size());
    if (common.count() < remaining) return false;
    auto candidates = common.members();
    shuffle(candidates, rng_);
    for (Vertex u : candidates) {
      VertexSet with_u = common;
      with_u &= g_.row(u);
      std::vector<Vertex> antipodes;
      for (Vertex v : candidates)
        if (v != u && !g_.adjacent(u, v)) antipodes.push_back(v);
      shuffle(antipodes, rng_);
      for (Vertex v : antipodes) {
        if (++expansions_ > cap_) return false;
        VertexSet next = with_u;
        next &= g_.row(v);
        cert_.u.push_back(u);
        cert_.v.push_back(v);
        if (extend(next)) return true;
        cert_.u.pop_back();
        cert_.v.pop_back();
      }
    }
    return false;
  }

  const Graph& g_;
  int k_;
  RandomStream& rng_;
  std::size_t cap_;
  std::size_t expansions_ = 0;
  SphereCertificate cert_;
};

}  // namespace

std::optional<SphereCertificate> find_sphere_certificate(const Graph& g, int k, std::size_t budget,
                                                         const RandomSource& rng) {
  if (k < 0) throw std::domain_error("sphere dimension must be nonnegative");
  if (budget < 1) throw std::domain_error("search budget must be at least 1");
  if (g.n() < 2 * static_cast<std::size_t>(k + 1)) return std::nullopt;
  RandomStream stream(rng);
  // Per-restart work cap keeps dense graphs from exhausting one restart.
  SphereSearch search(g, k, stream, 4 * g.n() + 64);
  for (std::size_t restart = 0; restart < budget; ++restart) {
    const auto u1 = static_cast<Vertex>(stream.below(g.n()));
    if (auto cert = search.from(u1)) return cert;
  }
  return std::nullopt;
}

// -------------------------------------------------------------- retraction

RetractionMap build_retraction(const Graph& g, const SphereCertificate& cert) {
  if (auto violation = certificate_violation(g, cert))
    throw CertificateError("invalid sphere certificate: " + *violation);
  RetractionMap r;
  r.assignment.resize(g.n());
  const VertexSet on_sphere = VertexSet::of(g.n(), sphere_vertices(cert));
  for (Vertex y = 0; y < g.n(); ++y) {
    if (on_sphere.contains(y)) {
      r.assignment[y] = y;
      continue;
    }
    for (std::size_t i = 0; i < cert.u.size(); ++i) {
      if (!g.adjacent(y, cert.u[i]) && !g.adjacent(y, cert.v[i])) {
        r.assignment[y] = cert.u[i];
        break;
      }
    }
  }
  return r;
}

bool verify_retraction(const Graph& g, const RetractionMap& r, const SphereCertificate& cert) {
  if (r.assignment.size() != g.n()) return false;
  const auto s = sphere_vertices(cert);
  for (Vertex x : s)
    if (x >= g.n() || r.assignment[x] != x) return false;
  const VertexSet on_sphere = VertexSet::of(g.n(), s);
  for (Vertex image : r.assignment)
    if (image >= g.n() || !on_sphere.contains(image)) return false;
  for (auto [x, y] : g.edges()) {
    const Vertex a = r.assignment[x];
    const Vertex b = r.assignment[y];
    if (a != b && !g.adjacent(a, b)) return false;
  }
  return true;
}

// --------------------------------------------------------------- vanishing

VanishingVerdict vanishing_certificate(const Graph& g, int k) {
  if (k < 1) throw std::domain_error("vanishing certificate needs k >= 1");
  const auto two_k = 2 * static_cast<std::size_t>(k);
  if (g.n() < two_k + 2)
    return {VanishingVerdict::Kind::guaranteed_zero,
            "fewer than " + std::to_string(two_k + 2) + " vertices"};
  if (k_core(g, two_k).graph.n() == 0)
    return {VanishingVerdict::Kind::guaranteed_zero, "empty " + std::to_string(two_k) + "-core"};
  return {VanishingVerdict::Kind::unknown, ""};
}

// -------------------------------------------------------------------- JSON

nlohmann::json to_json(const SphereCertificate& cert) {
  return {{"k", cert.k}, {"u", cert.u}, {"v", cert.v}};
}

nlohmann::json to_json(const SphereCertificate& cert, const RetractionMap& r) {
  auto j = to_json(cert);
  j["assignment"] = r.assignment;
  return j;
}

}  // namespace flagtop
