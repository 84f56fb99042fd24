// Structural certificates for nonvanishing and vanishing homology of clique
// complexes.
//
// Nonvanishing: an induced octahedral sphere S (the cocktail-party graph on
// u_1..u_{k+1}, v_1..v_{k+1}) onto which the whole complex retracts. The
// retraction fixes S and sends an outside vertex y to u_i for the least i
// with y adjacent to neither u_i nor v_i. That choice needs every outside
// vertex to have such an index, which is checked explicitly; mapping y to a
// u_i that is merely non-adjacent to y could send an edge {y, v_i} onto the
// non-edge {u_i, v_i}.
//
// Vanishing: a minimal nontrivial k-cycle lives on at least 2k+2 vertices
// inducing minimum degree >= 2k, so fewer vertices or an empty 2k-core
// force reduced beta_k = 0.

#ifndef FLAGTOP_DETECTORS_HPP
#define FLAGTOP_DETECTORS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "flagtop/graph.hpp"
#include "flagtop/random.hpp"

namespace flagtop {

struct SphereCertificate {
  int k = 0;
  std::vector<Vertex> u;  // u_1..u_{k+1}
  std::vector<Vertex> v;  // v_1..v_{k+1}; u_i and v_i are antipodal
  friend bool operator==(const SphereCertificate&, const SphereCertificate&) = default;
};

struct RetractionMap {
  std::vector<Vertex> assignment;  // host vertex -> vertex of the sphere
  friend bool operator==(const RetractionMap&, const RetractionMap&) = default;
};

class CertificateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  friend bool operator==(const Rational&, const Rational&) = default;
};

struct DensityExponent {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  Rational density;   // edges / vertices
  Rational exponent;  // appearance threshold exponent: -vertices / edges
};

// 1-skeleton of the k-dimensional octahedral sphere: vertices 0..2k+1 with
// i and i+k+1 antipodal (the only non-edges).
Graph octahedral_skeleton(int k);

// The identity certificate on octahedral_skeleton(k).
SphereCertificate octahedral_identity_certificate(int k);

DensityExponent density_exponent(int k);

// First violated certificate clause against g, or nullopt when valid.
std::optional<std::string> certificate_violation(const Graph& g, const SphereCertificate& cert);

// Randomized greedy search with backtracking: each of `budget` restarts
// picks a random u_1 and extends pair by pair inside the common
// neighbourhood of the chosen vertices, in random order. nullopt means the
// search failed, not that no sphere exists.
std::optional<SphereCertificate> find_sphere_certificate(const Graph& g, int k, std::size_t budget,
                                                         const RandomSource& rng);

// Throws CertificateError naming the violated clause.
RetractionMap build_retraction(const Graph& g, const SphereCertificate& cert);

// Pointwise fixing of the sphere and the simplicial condition on every edge.
bool verify_retraction(const Graph& g, const RetractionMap& r, const SphereCertificate& cert);

struct VanishingVerdict {
  enum class Kind { guaranteed_zero, unknown };
  Kind kind = Kind::unknown;
  std::string reason;
  bool guaranteed_zero() const { return kind == Kind::guaranteed_zero; }
};

VanishingVerdict vanishing_certificate(const Graph& g, int k);

nlohmann::json to_json(const SphereCertificate& cert);
nlohmann::json to_json(const SphereCertificate& cert, const RetractionMap& r);

}  // namespace flagtop

#endif  // FLAGTOP_DETECTORS_HPP
