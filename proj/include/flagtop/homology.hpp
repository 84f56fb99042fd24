// Reduced simplicial homology: boundary matrices, ranks over prime fields,
// integer invariant factors, and the Euler / Morse cross-checks.
//
// The augmented convention is used throughout: the (-1)-chain group is
// generated by the empty face, so reduced_betti[0] = components - 1 and an
// empty complex has a single class in dimension -1.

#ifndef FLAGTOP_HOMOLOGY_HPP
#define FLAGTOP_HOMOLOGY_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "flagtop/complex.hpp"

namespace flagtop {

using BigInt = boost::multiprecision::cpp_int;

constexpr std::uint32_t kDefaultPrime = 2'147'483'647;
constexpr std::uint32_t kCrossCheckPrime = 1'000'003;

class CoefficientSpec {
 public:
  enum class Kind { prime_field, integers };

  // Throws std::invalid_argument unless modulus is a prime below 2^32.
  static CoefficientSpec prime_field(std::uint64_t modulus);
  static CoefficientSpec integers() { return CoefficientSpec(Kind::integers, 0); }

  Kind kind() const { return kind_; }
  std::uint32_t modulus() const { return modulus_; }
  bool is_field() const { return kind_ == Kind::prime_field; }
  std::string describe() const;

  friend bool operator==(const CoefficientSpec&, const CoefficientSpec&) = default;

 private:
  CoefficientSpec(Kind kind, std::uint32_t modulus) : kind_(kind), modulus_(modulus) {}
  Kind kind_;
  std::uint32_t modulus_;
};

bool is_prime(std::uint64_t n);

struct BoundaryEntry {
  FaceId row;
  int sign;  // +1 or -1
  friend bool operator==(const BoundaryEntry&, const BoundaryEntry&) = default;
};

struct SparseBoundaryMatrix {
  int dim = 0;            // source dimension k: columns are k-faces
  std::size_t rows = 0;   // number of (k-1)-faces
  std::vector<std::vector<BoundaryEntry>> columns;  // entries sorted by row
};

// Column j is the boundary of k-face j: deleting the i-th smallest vertex
// contributes sign (-1)^i. Requires 1 <= k <= stored cap.
SparseBoundaryMatrix boundary_matrix(const SimplicialComplex& x, int k);

// Rank over GF(p) by column reduction in column order, pivoting on the
// largest row index. Stops once `bound` pivots are found.
std::size_t rank_mod_p(const SparseBoundaryMatrix& m, std::uint32_t p,
                       std::optional<std::size_t> bound = std::nullopt);

struct HomologySummary {
  CoefficientSpec coeff = CoefficientSpec::prime_field(kDefaultPrime);
  std::vector<std::int64_t> reduced_betti;  // dimensions 0..stored cap
  std::int64_t reduced_betti_minus_one = 0; // 1 only for the empty complex
  // Highest dimension whose value is exact; below the last entry when the
  // complex was truncated (the last entry is then an upper bound). Without
  // truncation every dimension is exact, including those above the top.
  int exact_through = -1;
  bool truncated = false;
  // Torsion invariant factors (> 1) per dimension, when computed.
  std::optional<std::vector<std::vector<BigInt>>> torsion;

  std::int64_t operator[](int d) const {
    return d >= 0 && static_cast<std::size_t>(d) < reduced_betti.size() ? reduced_betti[d] : 0;
  }
  bool exact_at(int d) const { return !truncated || d <= exact_through; }
};

HomologySummary reduced_betti(const SimplicialComplex& x,
                              const CoefficientSpec& coeff = CoefficientSpec::prime_field(kDefaultPrime));

// Dense integer matrix, row-major.
struct IntegerMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<BigInt> entries;

  IntegerMatrix() = default;
  IntegerMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
  BigInt& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const BigInt& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  static IntegerMatrix from_rows(const std::vector<std::vector<long long>>& rows);
  static IntegerMatrix from_boundary(const SparseBoundaryMatrix& m);
};

struct SNFResult {
  std::vector<BigInt> invariant_factors;  // nonzero diagonal, each dividing the next
  std::size_t rank = 0;
};

SNFResult smith_normal_form(IntegerMatrix m);
SNFResult smith_normal_form(const SparseBoundaryMatrix& m);

class TooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IntegerHomology {
  std::int64_t rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1
};

// Reduced integer homology in dimension k from the Smith forms of the
// boundaries into and out of the k-chains. Throws TooLargeError when a
// chain group involved exceeds face_limit faces.
IntegerHomology integer_homology(const SimplicialComplex& x, int k, std::size_t face_limit = 2000);

// Outcome of comparing reduced Betti numbers over two primes. When they
// disagree, integer homology is computed for every disagreeing dimension.
struct CoefficientCrossCheck {
  HomologySummary first;
  HomologySummary second;
  std::vector<int> disagreeing_dims;
  std::vector<IntegerHomology> integer;  // parallel to disagreeing_dims
  bool agree() const { return disagreeing_dims.empty(); }
};

CoefficientCrossCheck cross_check_coefficients(const SimplicialComplex& x,
                                               std::uint32_t first_prime = kDefaultPrime,
                                               std::uint32_t second_prime = kCrossCheckPrime,
                                               std::size_t face_limit = 2000);

enum class CheckStatus { holds, fails, skipped_truncated };
const char* to_string(CheckStatus s);

// Exact comparison of the alternating sums of face counts and unreduced
// Betti numbers.
CheckStatus euler_check(const FVector& f, const HomologySummary& h);

// -f_{k-1} + f_k - f_{k+1} <= reduced beta_k <= f_k, with f_{-1} = 1 (the
// empty face). Throws std::domain_error if h is not exact at k.
bool morse_inequality_check(const FVector& f, const HomologySummary& h, int k);

}  // namespace flagtop

#endif  // FLAGTOP_HOMOLOGY_HPP
