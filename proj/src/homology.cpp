#include "flagtop/homology.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace flagtop {

// --------------------------------------------------------------- coefficients

// Miller-Rabin with the first twelve prime bases, deterministic below 2^64.
bool is_prime(std::uint64_t n) {
  constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (std::uint64_t b : bases)
    if (n % b == 0) return n == b;
  const auto mul = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
  };
  std::uint64_t d = n - 1;
  int twos = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  for (std::uint64_t b : bases) {
    std::uint64_t x = 1, base = b, e = d;
    for (; e; e >>= 1, base = mul(base, base))
      if (e & 1) x = mul(x, base);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < twos && composite; ++i) {
      x = mul(x, x);
      composite = x != n - 1;
    }
    if (composite) return false;
  }
  return true;
}

CoefficientSpec CoefficientSpec::prime_field(std::uint64_t modulus) {
  if (modulus > UINT32_MAX || !is_prime(modulus))
    throw std::invalid_argument("coefficient modulus " + std::to_string(modulus) +
                                " is not a prime below 2^32");
  return CoefficientSpec(Kind::prime_field, static_cast<std::uint32_t>(modulus));
}

std::string CoefficientSpec::describe() const {
  return kind_ == Kind::integers ? "Z" : "GF(" + std::to_string(modulus_) + ")";
}

// ----------------------------------------------------------- boundary matrix

SparseBoundaryMatrix boundary_matrix(const SimplicialComplex& x, int k) {
  if (k < 1 || k > x.top_dimension())
    throw std::domain_error("boundary dimension " + std::to_string(k) + " out of range [1, " +
                            std::to_string(x.top_dimension()) + "]");
  SparseBoundaryMatrix m;
  m.dim = k;
  m.rows = x.size(k - 1);
  m.columns.resize(x.size(k));
  std::vector<Vertex> facet(static_cast<std::size_t>(k));
  for (FaceId id = 0; id < x.size(k); ++id) {
    const auto f = x.face(k, id);
    auto& column = m.columns[id];
    column.reserve(f.size());
    for (std::size_t drop = 0; drop < f.size(); ++drop) {
      std::size_t j = 0;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (i != drop) facet[j++] = f[i];
      const auto row = x.find(facet);
      if (!row) throw std::logic_error("complex is not closed under faces");
      column.push_back({*row, drop % 2 == 0 ? 1 : -1});
    }
    std::sort(column.begin(), column.end(),
              [](const BoundaryEntry& a, const BoundaryEntry& b) { return a.row < b.row; });
  }
  return m;
}

// ------------------------------------------------------- rank over GF(p)

namespace {

using Residue = std::uint32_t;
using SparseColumn = std::vector<std::pair<FaceId, Residue>>;

Residue mul_mod(Residue a, Residue b, Residue p) {
  return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p);
}

Residue inverse_mod(Residue a, Residue p) {
  Residue result = 1;
  Residue base = a;
  for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
  }
  return result;
}

// out = a + factor * b over GF(p), both sorted by row.
void axpy(const SparseColumn& a, Residue factor, const SparseColumn& b, Residue p,
          SparseColumn& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, mul_mod(factor, ib->second, p));
      ++ib;
    } else {
      const Residue v =
          static_cast<Residue>((ia->second + static_cast<std::uint64_t>(mul_mod(factor, ib->second, p))) % p);
      if (v != 0) out.emplace_back(ia->first, v);
      ++ia;
      ++ib;
    }
  }
}

}  // namespace

std::size_t rank_mod_p(const SparseBoundaryMatrix& m, std::uint32_t p,
                       std::optional<std::size_t> bound) {
  if (!is_prime(p)) throw std::invalid_argument("rank_mod_p needs a prime modulus");
  const std::size_t limit =
      std::min({bound.value_or(m.rows), m.rows, m.columns.size()});
  std::vector<std::int64_t> pivot_of(m.rows, -1);
  std::vector<SparseColumn> pivots;
  pivots.reserve(limit);
  SparseColumn work;
  SparseColumn scratch;
  std::size_t rank = 0;
  for (const auto& column : m.columns) {
    if (rank >= limit) break;
    work.clear();
    for (const auto& e : column) work.emplace_back(e.row, e.sign > 0 ? Residue{1} : p - 1);
    while (!work.empty()) {
      const auto [low, value] = work.back();
      const std::int64_t j = pivot_of[low];
      if (j < 0) {
        const Residue inv = inverse_mod(value, p);
        for (auto& entry : work) entry.second = mul_mod(entry.second, inv, p);
        pivot_of[low] = static_cast<std::int64_t>(pivots.size());
        pivots.push_back(work);
        ++rank;
        break;
      }
      axpy(work, p - value, pivots[static_cast<std::size_t>(j)], p, scratch);
      std::swap(work, scratch);
    }
  }
  return rank;
}

// --------------------------------------------------------- reduced Betti

HomologySummary reduced_betti(const SimplicialComplex& x, const CoefficientSpec& coeff) {
  if (!coeff.is_field())
    throw std::invalid_argument("reduced_betti needs a prime field; use integer_homology for Z");
  HomologySummary h;
  h.coeff = coeff;
  const int top = x.top_dimension();
  if (top < 0) {
    h.reduced_betti_minus_one = 1;
    h.exact_through = -1;
    return h;
  }
  // ranks[d] = rank of the boundary out of the d-chains; ranks[0] is the
  // augmentation.
  std::vector<std::int64_t> ranks(static_cast<std::size_t>(top) + 2, 0);
  ranks[0] = 1;
  for (int d = 1; d <= top; ++d) {
    const auto kernel_bound = static_cast<std::size_t>(
        static_cast<std::int64_t>(x.size(d - 1)) - ranks[d - 1]);
    ranks[d] = static_cast<std::int64_t>(
        rank_mod_p(boundary_matrix(x, d), coeff.modulus(), kernel_bound));
  }
  h.truncated = x.truncated();
  for (int d = 0; d <= top; ++d)
    h.reduced_betti.push_back(static_cast<std::int64_t>(x.size(d)) - ranks[d] - ranks[d + 1]);
  h.exact_through = h.truncated ? top - 1 : top;
  return h;
}

// ------------------------------------------------------- Smith normal form

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  IntegerMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (rows[i].size() != m.cols) throw std::invalid_argument("ragged integer matrix");
    for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntegerMatrix IntegerMatrix::from_boundary(const SparseBoundaryMatrix& b) {
  IntegerMatrix m(b.rows, b.columns.size());
  for (std::size_t j = 0; j < b.columns.size(); ++j)
    for (const auto& e : b.columns[j]) m.at(e.row, j) = e.sign;
  return m;
}

namespace {

struct Overflow {};

// a -= q * b
void sub_mul(std::int64_t& a, std::int64_t q, std::int64_t b) {
  std::int64_t prod = 0;
  if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &a)) throw Overflow{};
}
void sub_mul(BigInt& a, const BigInt& q, const BigInt& b) { a -= q * b; }

std::int64_t magnitude(std::int64_t a) {
  if (a == INT64_MIN) throw Overflow{};
  return a < 0 ? -a : a;
}
BigInt magnitude(const BigInt& a) { return abs(a); }

template <class T>
struct DenseSmith {
  std::size_t rows, cols;
  std::vector<T> a;

  T& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }

  void swap_rows(std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(at(r1, j), at(r2, j));
  }
  void swap_cols(std::size_t c1, std::size_t c2) {
    if (c1 == c2) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(at(i, c1), at(i, c2));
  }

  // Diagonal (not yet in divisibility form); absolute values.
  std::vector<T> diagonalize() {
    std::vector<T> diagonal;
    const std::size_t steps = std::min(rows, cols);
    std::vector<std::size_t> nonzero;
    for (std::size_t t = 0; t < steps; ++t) {
      // Smallest nonzero magnitude in the trailing block; stop at a unit.
      bool found = false;
      std::size_t pi = t, pj = t;
      T best{};
      for (std::size_t i = t; i < rows && !(found && best == 1); ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          const T& v = at(i, j);
          if (v == 0) continue;
          T mag = magnitude(v);
          if (!found || mag < best) {
            best = mag;
            pi = i;
            pj = j;
            found = true;
            if (best == 1) break;
          }
        }
      }
      if (!found) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      while (true) {
        bool clean = true;
        // Clear column t with row operations.
        nonzero.clear();
        for (std::size_t j = t; j < cols; ++j)
          if (at(t, j) != 0) nonzero.push_back(j);
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (at(i, t) == 0) continue;
          const T q = at(i, t) / at(t, t);
          if (q != 0)
            for (std::size_t j : nonzero) sub_mul(at(i, j), q, at(t, j));
          if (at(i, t) != 0) clean = false;
        }
        // Clear row t with column operations.
        nonzero.clear();
        for (std::size_t i = t; i < rows; ++i)
          if (at(i, t) != 0) nonzero.push_back(i);
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (at(t, j) == 0) continue;
          const T q = at(t, j) / at(t, t);
          if (q != 0)
            for (std::size_t i : nonzero) sub_mul(at(i, j), q, at(i, t));
          if (at(t, j) != 0) clean = false;
        }
        if (clean) break;
        // A remainder smaller than the pivot exists; move it to the pivot.
        std::size_t ri = t, rj = t;
        T small = magnitude(at(t, t));
        for (std::size_t i = t + 1; i < rows; ++i)
          if (at(i, t) != 0 && magnitude(at(i, t)) < small) {
            small = magnitude(at(i, t));
            ri = i;
            rj = t;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (at(t, j) != 0 && magnitude(at(t, j)) < small) {
            small = magnitude(at(t, j));
            ri = t;
            rj = j;
          }
        swap_rows(t, ri);
        swap_cols(t, rj);
      }
      diagonal.push_back(magnitude(at(t, t)));
    }
    return diagonal;
  }
};

template <class T>
std::vector<BigInt> diagonal_of(const IntegerMatrix& m) {
  DenseSmith<T> s{m.rows, m.cols, {}};
  s.a.reserve(m.entries.size());
  for (const auto& v : m.entries) {
    if constexpr (std::is_same_v<T, BigInt>) {
      s.a.push_back(v);
    } else {
      if (v > INT64_MAX || v < INT64_MIN) throw Overflow{};
      s.a.push_back(static_cast<std::int64_t>(v));
    }
  }
  std::vector<BigInt> out;
  for (const auto& d : s.diagonalize()) out.emplace_back(d);
  return out;
}

}  // namespace

SNFResult smith_normal_form(IntegerMatrix m) {
  std::vector<BigInt> diagonal;
  try {
    diagonal = diagonal_of<std::int64_t>(m);
  } catch (const Overflow&) {
    diagonal = diagonal_of<BigInt>(m);
  }
  // diag(a, b) is equivalent to diag(gcd, lcm); sweeping pairs yields the
  // divisibility chain.
  for (std::size_t i = 0; i < diagonal.size(); ++i) {
    for (std::size_t j = i + 1; j < diagonal.size(); ++j) {
      if (diagonal[i] == 1) break;
      if (diagonal[j] % diagonal[i] == 0) continue;
      const BigInt g = gcd(diagonal[i], diagonal[j]);
      const BigInt l = diagonal[i] / g * diagonal[j];
      diagonal[i] = g;
      diagonal[j] = l;
    }
  }
  std::sort(diagonal.begin(), diagonal.end());
  SNFResult result;
  result.rank = diagonal.size();
  result.invariant_factors = std::move(diagonal);
  return result;
}

SNFResult smith_normal_form(const SparseBoundaryMatrix& m) {
  return smith_normal_form(IntegerMatrix::from_boundary(m));
}

// -------------------------------------------------------- integer homology

IntegerHomology integer_homology(const SimplicialComplex& x, int k, std::size_t face_limit) {
  if (k < 0) throw std::domain_error("dimension must be nonnegative");
  const int top = x.top_dimension();
  if (x.truncated() && k >= x.stored_cap())
    throw std::domain_error("complex truncated at dimension " + std::to_string(x.stored_cap()) +
                            "; integer homology in dimension " + std::to_string(k) +
                            " is not exact");
  for (int d = k - 1; d <= k + 1; ++d)
    if (x.size(d) > face_limit)
      throw TooLargeError("too large for integer backend: " + std::to_string(x.size(d)) + " " +
                          std::to_string(d) + "-faces exceeds the limit of " +
                          std::to_string(face_limit));
  IntegerHomology result;
  if (k > top) return result;
  std::int64_t rank_in = 0;   // rank of the boundary out of the k-chains
  if (k == 0) rank_in = x.size(0) > 0 ? 1 : 0;
  else rank_in = static_cast<std::int64_t>(smith_normal_form(boundary_matrix(x, k)).rank);
  std::int64_t rank_out = 0;  // rank of the boundary into the k-chains
  if (k + 1 <= top) {
    const auto snf = smith_normal_form(boundary_matrix(x, k + 1));
    rank_out = static_cast<std::int64_t>(snf.rank);
    for (const auto& d : snf.invariant_factors)
      if (d > 1) result.torsion.push_back(d);
  }
  result.rank = static_cast<std::int64_t>(x.size(k)) - rank_in - rank_out;
  return result;
}

CoefficientCrossCheck cross_check_coefficients(const SimplicialComplex& x,
                                               std::uint32_t first_prime,
                                               std::uint32_t second_prime,
                                               std::size_t face_limit) {
  CoefficientCrossCheck check;
  check.first = reduced_betti(x, CoefficientSpec::prime_field(first_prime));
  check.second = reduced_betti(x, CoefficientSpec::prime_field(second_prime));
  const int exact = std::min(check.first.exact_through, check.second.exact_through);
  for (int d = 0; d <= exact; ++d) {
    if (check.first[d] != check.second[d]) {
      check.disagreeing_dims.push_back(d);
      check.integer.push_back(integer_homology(x, d, face_limit));
    }
  }
  return check;
}

// ----------------------------------------------------------------- checks

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::holds: return "holds";
    case CheckStatus::fails: return "fails";
    case CheckStatus::skipped_truncated: return "skipped_truncated";
  }
  return "unknown";
}

CheckStatus euler_check(const FVector& f, const HomologySummary& h) {
  if (h.truncated) return CheckStatus::skipped_truncated;
  std::int64_t chi_faces = 0;
  for (std::size_t i = 0; i < f.counts.size(); ++i)
    chi_faces += (i % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(f.counts[i]);
  std::int64_t chi_betti = 0;
  for (std::size_t i = 0; i < h.reduced_betti.size(); ++i) {
    std::int64_t b = h.reduced_betti[i];
    if (i == 0) b += 1;  // unreduced beta_0
    chi_betti += (i % 2 == 0 ? 1 : -1) * b;
  }
  return chi_faces == chi_betti ? CheckStatus::holds : CheckStatus::fails;
}

bool morse_inequality_check(const FVector& f, const HomologySummary& h, int k) {
  if (k < 0 || !h.exact_at(k))
    throw std::domain_error("homology is not exact in dimension " + std::to_string(k));
  const auto face_count = [&](int d) -> std::int64_t {
    if (d == -1) return 1;
    return static_cast<std::int64_t>(f[d]);
  };
  const std::int64_t beta = h[k];
  const std::int64_t lower = -face_count(k - 1) + face_count(k) - face_count(k + 1);
  return lower <= beta && beta <= face_count(k);
}

}  // namespace flagtop
