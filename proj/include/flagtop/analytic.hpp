// Closed-form expectations and threshold formulas for X(n,p), the clique
// complex of G(n,p). All logarithms are natural.

#ifndef FLAGTOP_ANALYTIC_HPP
#define FLAGTOP_ANALYTIC_HPP

#include <cstdint>
#include <optional>

#include "json.hpp"

namespace flagtop::analytic {

// p given either directly or as n^alpha.
struct RegimeSpec {
  std::uint64_t n = 0;
  int k = 1;
  std::optional<double> alpha;
  std::optional<double> p;
  double omega = 0.0;

  // Throws std::domain_error unless exactly one of alpha / p is set and the
  // resulting probability lies in [0,1].
  double probability() const;
};

double binomial(double n, double r);
double log_binomial(double n, double r);

// E[f_k] = C(n, k+1) p^C(k+1,2)
double expected_faces(double n, double p, int k);
double expected_faces_direct(double n, double p, int k);
double log_expected_faces(double n, double p, int k);

// E[f_k^2] = C(n,k+1) sum_m C(k+1,m) C(n-k-1, k+1-m) p^(2C(k+1,2) - C(m,2))
double expected_faces_second_moment(double n, double p, int k);

// Expected number of pairs of k-faces meeting in a (k-1)-face:
// C(k+2,2) C(n,k+2) p^(C(k+2,2) - 1).
double expected_bad_pairs(double n, double p, int k);

// -2 log n / log p; requires 0 < p < 1.
double dimension_estimate(double n, double p);

struct ThresholdProbe {
  double p_vanish_below = 0;  // n^(-1/k - margin)
  double p_middle = 0;        // n^((-1/k - 1/(k+1)) / 2)
  double p_connect = 0;       // ((2k+1) log n + offset) / n)^(1/(2k+1))
  std::optional<double> p_common;  // ((l log n + offset) / n)^(1/l)
  double margin = 0.2;
};

constexpr double kDefaultMargin = 0.2;

// Probabilities are clamped to at most 1.
ThresholdProbe threshold_probe(double n, int k, double offset, std::optional<int> l = std::nullopt,
                               double margin = kDefaultMargin);

// Everything above for one (n, p, k[, l]) as a JSON object.
nlohmann::json report(const RegimeSpec& regime, std::optional<int> l = std::nullopt);

}  // namespace flagtop::analytic

#endif  // FLAGTOP_ANALYTIC_HPP
