// Seeded Monte Carlo trials over X(n,p): each trial samples a graph, builds
// its clique complex, computes homology, both discrete Morse fields and the
// structural certificates, and checks every cross-module invariant inline.
//
// Reproducibility: a trial is a pure function of (master_seed, n, p, trial
// index). Its stream id is
//
//   stream_id = mix64(mix64(mix64(n) ^ bits(p)) ^ index)
//
// with mix64 the SplitMix64 finalizer and bits(p) the IEEE-754 pattern of p,
// so adding points to a sweep never perturbs existing trials. Sub-tasks use
// fixed substreams: 1 = random matching, 2 = sphere search, 3 = SNF spot
// checks.

#ifndef FLAGTOP_HARNESS_HPP
#define FLAGTOP_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "flagtop/graph.hpp"

namespace flagtop::harness {

class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { csv, json_lines, both };

struct SweepConfig {
  std::vector<std::uint64_t> n_list;
  std::vector<double> p_list;      // exactly one of p_list / alpha_list is nonempty
  std::vector<double> alpha_list;  // p = n^alpha
  int k_max = 1;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  std::optional<int> max_dim;      // nullopt = k_max + 1
  std::size_t max_faces_per_dim = 2'000'000;
  std::uint32_t prime = 2'147'483'647;
  bool paranoid = false;           // second prime + SNF spot checks
  double spot_check_rate = 0.01;
  std::size_t snf_face_limit = 2000;
  bool sphere_search = true;
  std::size_t detector_budget = 0; // restarts; 0 = 50 n
  std::size_t acyclicity_face_limit = 5000;
  std::string output = "sweep_out";
  OutputFormat format = OutputFormat::both;
  std::size_t jobs = 1;
  bool record_timings = false;     // wall times are the only nondeterministic output

  int effective_max_dim() const { return max_dim.value_or(k_max + 1); }
  // Throws ConfigError on inconsistent settings.
  void validate() const;
};

// Parses the JSON config; unknown keys are rejected.
SweepConfig parse_config(const nlohmann::json& j);
SweepConfig load_config(const std::string& path);
nlohmann::json to_json(const SweepConfig& cfg);

struct SweepPoint {
  std::uint64_t n = 0;
  double p = 0.0;
  std::optional<double> alpha;
};

std::vector<SweepPoint> sweep_points(const SweepConfig& cfg);

std::uint64_t trial_stream_id(std::uint64_t n, double p, std::uint64_t index);

struct StageTimes {
  double graph_ms = 0, complex_ms = 0, homology_ms = 0, morse_ms = 0, detectors_ms = 0;
  double total_ms() const { return graph_ms + complex_ms + homology_ms + morse_ms + detectors_ms; }
};

struct TrialRecord {
  std::uint64_t trial_id = 0;     // point_index * trials + index
  std::size_t point_index = 0;
  std::uint64_t index = 0;
  std::uint64_t n = 0;
  double p = 0.0;
  std::optional<double> alpha;
  int k = 0;                      // target dimension (k_max)
  std::uint64_t seed = 0;         // stream id of this trial
  std::vector<std::size_t> f_vector;
  std::vector<std::int64_t> betti;  // reduced, dimensions 0..stored cap
  int exact_through = -1;
  bool truncated = false;
  bool guard_hit = false;
  std::string euler = "skipped_truncated";
  std::vector<std::int64_t> critical_lex;  // per k = 0..k_max; -1 when not computable
  std::vector<int> lex_acyclic;            // 1 verified, 0 failed, -1 skipped (size limit)
  std::optional<std::size_t> random_removed;
  std::optional<std::size_t> random_conflicts;
  std::optional<std::size_t> random_cycles;
  std::size_t d_pairs = 0;
  bool cert_found = false;
  bool cert_verified = false;
  std::string vanish_cert = "unknown";
  std::optional<bool> coefficients_agree;  // paranoid mode only
  std::optional<std::string> snf_spot_check;
  StageTimes times;
  std::optional<std::string> error;

  std::int64_t betti_at(int d) const {
    return d >= 0 && static_cast<std::size_t>(d) < betti.size() ? betti[d] : 0;
  }
  std::size_t f_at(int d) const {
    return d >= 0 && static_cast<std::size_t>(d) < f_vector.size() ? f_vector[d] : 0;
  }
  bool exact_at(int d) const { return !truncated || d <= exact_through; }
};

// Runs one trial, checking invariants inline. Throws InvariantViolation on
// any violated cross-check.
TrialRecord run_trial(const SweepConfig& cfg, const SweepPoint& point, std::size_t point_index,
                      std::uint64_t index);

struct SummaryRow {
  std::uint64_t n = 0;
  double p = 0.0;
  std::optional<double> alpha;
  int k = 0;
  std::size_t trials = 0;           // records without errors
  std::size_t exact_trials = 0;     // records exact at k
  double prob_nonzero = 0.0;        // over exact records
  double mean_ratio = 0.0;          // beta_k / f_k over exact records with f_k > 0
  double stderr_ratio = 0.0;
  double mean_faces = 0.0;
  double expected_faces = 0.0;
  std::optional<double> cert_hit_rate;  // at k = k_max only
};

struct SweepResult {
  std::vector<TrialRecord> records;  // sorted by (point, index)
  std::vector<SummaryRow> summary;
  std::size_t failures() const;
};

SweepResult run_sweep(const SweepConfig& cfg);
std::vector<SummaryRow> summarize(const SweepConfig& cfg, const std::vector<TrialRecord>& records);

// CSV header, exactly:
// trial_id,n,p,alpha,k,seed,f_vector,betti,truncated,critical_lex,d_pairs,
// cert_found,cert_verified,vanish_cert,time_ms_total
std::string csv_header();
std::string csv_row(const TrialRecord& r, bool with_times);
nlohmann::json to_json(const TrialRecord& r, bool with_times);
std::string summary_csv(const std::vector<SummaryRow>& rows);

// Writes trials.csv and/or trials.jsonl plus summary.csv into `dir`
// (created if missing). Returns the written paths.
std::vector<std::filesystem::path> emit(const SweepResult& result, const SweepConfig& cfg,
                                        const std::filesystem::path& dir);

// Deterministic formatting of doubles (shortest round-trip form).
std::string format_double(double x);

struct MeshulamCheck {
  bool hypothesis = false;   // every 2k+2 vertices have a common neighbour
  bool vanishes = true;      // reduced beta_i = 0 for all i <= k (only meaningful with hypothesis)
  std::vector<std::int64_t> betti;
};

// Checks one graph; when 2k+2 > n the hypothesis is reported false.
MeshulamCheck meshulam_check(const Graph& g, int k);

struct MeshulamReport {
  std::size_t trials = 0;
  std::size_t hypothesis_satisfied = 0;
  std::vector<std::size_t> violations;  // trial indexes
};

// Samples G(n,p) with stream ids 0..trials-1 under `seed`.
MeshulamReport meshulam_suite(std::uint64_t n, double p, int k, std::size_t trials,
                              std::uint64_t seed);

}  // namespace flagtop::harness

#endif  // FLAGTOP_HARNESS_HPP
