// Discrete vector fields pairing faces of two consecutive dimensions: the
// lexicographic gradient field and the repaired random matching.
//
// Lexicographic order on faces compares sorted vertex sequences position by
// position, a strict prefix coming first. Hence alpha <_lex alpha + {x}
// exactly when x > max(alpha), and the lexicographically first such coface
// is alpha + {x_min} with x_min the least common neighbour above max(alpha).

#ifndef FLAGTOP_MORSE_HPP
#define FLAGTOP_MORSE_HPP

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "flagtop/complex.hpp"
#include "flagtop/random.hpp"

namespace flagtop {

struct DiscreteVectorField {
  int lower_dim = 0;                              // pairs are (lower_dim, lower_dim + 1)
  std::vector<std::pair<FaceId, FaceId>> pairs;   // (lower face, upper face), by lower face
  std::vector<FaceId> critical_lower;             // unpaired lower faces, ascending
};

class FieldValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Pairs every k-face with its lexicographically first coface when it has
// one. Needs the (k+1)-faces stored.
DiscreteVectorField lex_gradient_field(const SimplicialComplex& x, int k);

// Critical k-faces straight from the graph: sigma is critical iff no vertex
// x > max(sigma) is adjacent to all of sigma.
std::vector<FaceId> lex_critical_faces_direct(const CliqueComplex& x, int k);

struct RepairReport {
  std::size_t proposed = 0;
  std::size_t conflicts_removed = 0;  // later claims on an already paired (k-1)-face
  std::size_t cycles_broken = 0;      // pairs dropped to break closed V-paths
  std::size_t removed() const { return conflicts_removed + cycles_broken; }
};

struct RandomField {
  DiscreteVectorField field;  // lower_dim = k - 1
  RepairReport report;
};

// Proposes (tau - v_i, tau) for each k-face tau with i uniform in
// {0..k}, drawn as rng.bits(ordinal of tau) mod (k+1) via rejection; then
// keeps the first claim (colex order) on each (k-1)-face and breaks any
// closed V-path by dropping its pair with the largest upper face.
RandomField random_matching_field(const SimplicialComplex& x, int k, const RandomSource& rng);

// Validates the pairs (codimension one, each face in at most one pair;
// throws FieldValidationError otherwise) and reports whether the V-path
// digraph is acyclic.
bool verify_acyclic(const DiscreteVectorField& v, const SimplicialComplex& x);

// Number of k-faces in no pair of v. Throws FieldValidationError when v is
// not a gradient field.
std::size_t critical_count(const DiscreteVectorField& v, const SimplicialComplex& x, int k);

// Unordered pairs of k-faces sharing a (k-1)-face.
std::size_t adjacent_kface_pairs(const SimplicialComplex& x, int k);

}  // namespace flagtop

#endif  // FLAGTOP_MORSE_HPP
