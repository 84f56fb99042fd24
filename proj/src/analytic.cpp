#include "flagtop/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace flagtop::analytic {

namespace {

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("probability must lie in [0,1]");
}

double choose2(int m) { return 0.5 * m * (m - 1); }

}  // namespace

double RegimeSpec::probability() const {
  if (alpha.has_value() == p.has_value())
    throw std::domain_error("regime needs exactly one of alpha or p");
  const double value = p ? *p : std::pow(static_cast<double>(n), *alpha);
  require_probability(value);
  return value;
}

double binomial(double n, double r) {
  if (r < 0 || r > n) return 0.0;
  r = std::min(r, n - r);
  double result = 1.0;
  for (double i = 1; i <= r; ++i) result = result * (n - r + i) / i;
  return result;
}

double log_binomial(double n, double r) {
  if (r < 0 || r > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1) - std::lgamma(r + 1) - std::lgamma(n - r + 1);
}

double expected_faces_direct(double n, double p, int k) {
  require_probability(p);
  return binomial(n, k + 1) * std::pow(p, choose2(k + 1));
}

double log_expected_faces(double n, double p, int k) {
  require_probability(p);
  const double e = choose2(k + 1);
  const double log_p = e == 0 ? 0.0 : e * std::log(p);
  return log_binomial(n, k + 1) + log_p;
}

double expected_faces(double n, double p, int k) {
  require_probability(p);
  const double ways = binomial(n, k + 1);
  const double prob = std::pow(p, choose2(k + 1));
  if (ways == 0.0 || prob == 0.0) return 0.0;
  const double direct = ways * prob;
  if (std::isnormal(direct) && std::isfinite(ways)) return direct;
  return std::exp(log_expected_faces(n, p, k));
}

double expected_faces_second_moment(double n, double p, int k) {
  require_probability(p);
  const int size = k + 1;
  double sum = 0.0;
  for (int m = 0; m <= size; ++m) {
    const double ways = binomial(size, m) * binomial(n - size, size - m);
    if (ways == 0.0) continue;
    sum += ways * std::pow(p, 2 * choose2(size) - choose2(m));
  }
  return binomial(n, size) * sum;
}

double expected_bad_pairs(double n, double p, int k) {
  require_probability(p);
  const double pairs_per_set = choose2(k + 2);
  return pairs_per_set * binomial(n, k + 2) * std::pow(p, pairs_per_set - 1);
}

double dimension_estimate(double n, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("dimension estimate needs 0 < p < 1");
  return -2.0 * std::log(n) / std::log(p);
}

ThresholdProbe threshold_probe(double n, int k, double offset, std::optional<int> l,
                               double margin) {
  if (n < 2) throw std::domain_error("threshold probe needs n >= 2");
  if (k < 1) throw std::domain_error("threshold probe needs k >= 1");
  const double kk = k;
  const double log_n = std::log(n);
  const auto clamp = [](double p) { return std::min(1.0, std::max(0.0, p)); };
  ThresholdProbe probe;
  probe.margin = margin;
  probe.p_vanish_below = clamp(std::pow(n, -1.0 / kk - margin));
  probe.p_middle = clamp(std::pow(n, (-1.0 / kk - 1.0 / (kk + 1)) / 2.0));
  probe.p_connect = clamp(std::pow(((2 * kk + 1) * log_n + offset) / n, 1.0 / (2 * kk + 1)));
  if (l) {
    if (*l < 1) throw std::domain_error("common-neighbour subset size must be positive");
    probe.p_common = clamp(std::pow((*l * log_n + offset) / n, 1.0 / *l));
  }
  return probe;
}

nlohmann::json report(const RegimeSpec& regime, std::optional<int> l) {
  const double p = regime.probability();
  const double n = static_cast<double>(regime.n);
  const int k = regime.k;
  nlohmann::json j;
  j["n"] = regime.n;
  j["p"] = p;
  j["k"] = k;
  if (regime.alpha) j["alpha"] = *regime.alpha;
  j["expected_faces"] = {{"k-1", k >= 1 ? expected_faces(n, p, k - 1) : 1.0},
                         {"k", expected_faces(n, p, k)},
                         {"k+1", expected_faces(n, p, k + 1)}};
  const double mean = expected_faces(n, p, k);
  const double second = expected_faces_second_moment(n, p, k);
  j["expected_faces_second_moment"] = second;
  j["variance_faces"] = second - mean * mean;
  j["expected_bad_pairs"] = expected_bad_pairs(n, p, k);
  if (p > 0.0 && p < 1.0) j["dimension_estimate"] = dimension_estimate(n, p);
  if (regime.n >= 2 && k >= 1) {
    const auto probe = threshold_probe(n, k, regime.omega, l);
    j["thresholds"] = {{"p_vanish_below", probe.p_vanish_below},
                       {"p_middle", probe.p_middle},
                       {"p_connect", probe.p_connect},
                       {"margin", probe.margin}};
    if (probe.p_common) j["thresholds"]["p_common"] = *probe.p_common;
  }
  return j;
}

}  // namespace flagtop::analytic
