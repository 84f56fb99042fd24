#include "flagtop/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "flagtop/analytic.hpp"
#include "flagtop/complex.hpp"
#include "flagtop/detectors.hpp"
#include "flagtop/homology.hpp"
#include "flagtop/morse.hpp"
#include "flagtop/random.hpp"

namespace flagtop::harness {

namespace {

constexpr std::uint64_t kMatchingStream = 1;
constexpr std::uint64_t kSphereStream = 2;
constexpr std::uint64_t kSpotCheckStream = 3;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(values[i]);
  }
  return out;
}

const char* format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json_lines: return "jsonl";
    case OutputFormat::both: return "both";
  }
  return "both";
}

void violation(const TrialRecord& r, const std::string& what) {
  std::ostringstream msg;
  msg << "invariant violated in trial " << r.trial_id << " (n=" << r.n
      << ", p=" << format_double(r.p) << ", seed=" << r.seed << "): " << what;
  throw InvariantViolation(msg.str());
}

// Universal coefficients: beta_d over GF(p) counts the free rank plus the
// invariant factors divisible by p in dimensions d and d-1.
std::string snf_spot_check(const SimplicialComplex& x, const HomologySummary& h, int through,
                           std::size_t limit, TrialRecord& r) {
  const std::uint32_t p = h.coeff.modulus();
  std::vector<IntegerHomology> z;
  try {
    for (int d = 0; d <= through; ++d) z.push_back(integer_homology(x, d, limit));
  } catch (const TooLargeError&) {
    return "skipped_too_large";
  }
  const auto divisible = [p](const std::vector<BigInt>& factors) {
    return static_cast<std::int64_t>(std::count_if(
        factors.begin(), factors.end(), [p](const BigInt& t) { return t % p == 0; }));
  };
  bool torsion = false;
  for (int d = 0; d <= through; ++d) {
    std::int64_t expected = z[d].rank + divisible(z[d].torsion);
    if (d > 0) expected += divisible(z[d - 1].torsion);
    if (expected != h[d])
      violation(r, "integer homology disagrees with GF(" + std::to_string(p) +
                       ") Betti number in dimension " + std::to_string(d));
    torsion = torsion || !z[d].torsion.empty();
  }
  return torsion ? "torsion" : "ok";
}

}  // namespace

// ------------------------------------------------------------------ config

void SweepConfig::validate() const {
  if (n_list.empty()) throw ConfigError("n_list must not be empty");
  if (p_list.empty() == alpha_list.empty())
    throw ConfigError("exactly one of p_list and alpha_list must be given");
  for (double p : p_list)
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p values must lie in [0,1]");
  for (double a : alpha_list)
    if (!(a <= 0.0)) throw ConfigError("alpha values must be nonpositive");
  for (auto n : n_list)
    if (n == 0) throw ConfigError("n values must be positive");
  if (k_max < 0) throw ConfigError("k_max must be nonnegative");
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (effective_max_dim() < k_max) throw ConfigError("max_dim must be at least k_max");
  if (!is_prime(prime)) throw ConfigError("prime must be prime");
  if (!(spot_check_rate >= 0.0 && spot_check_rate <= 1.0))
    throw ConfigError("spot_check_rate must lie in [0,1]");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  if (max_faces_per_dim < 1) throw ConfigError("max_faces_per_dim must be positive");
}

SweepConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {
      "n_list", "p_list", "alpha_list", "k_max", "trials", "master_seed", "max_dim",
      "max_faces_per_dim", "prime", "paranoid", "spot_check_rate", "snf_face_limit",
      "sphere_search", "detector_budget", "acyclicity_face_limit", "output", "format", "jobs",
      "record_timings"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ConfigError("unknown config key \"" + key + "\"");

  SweepConfig c;
  try {
    if (j.contains("n_list")) c.n_list = j.at("n_list").get<std::vector<std::uint64_t>>();
    if (j.contains("p_list")) c.p_list = j.at("p_list").get<std::vector<double>>();
    if (j.contains("alpha_list")) c.alpha_list = j.at("alpha_list").get<std::vector<double>>();
    if (j.contains("k_max")) c.k_max = j.at("k_max").get<int>();
    if (j.contains("trials")) c.trials = j.at("trials").get<std::size_t>();
    if (j.contains("master_seed")) c.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("max_dim")) {
      const auto& m = j.at("max_dim");
      if (m.is_string()) {
        if (m.get<std::string>() != "auto") throw ConfigError("max_dim must be \"auto\" or an integer");
      } else {
        c.max_dim = m.get<int>();
      }
    }
    if (j.contains("max_faces_per_dim"))
      c.max_faces_per_dim = j.at("max_faces_per_dim").get<std::size_t>();
    if (j.contains("prime")) c.prime = j.at("prime").get<std::uint32_t>();
    if (j.contains("paranoid")) c.paranoid = j.at("paranoid").get<bool>();
    if (j.contains("spot_check_rate")) c.spot_check_rate = j.at("spot_check_rate").get<double>();
    if (j.contains("snf_face_limit")) c.snf_face_limit = j.at("snf_face_limit").get<std::size_t>();
    if (j.contains("sphere_search")) c.sphere_search = j.at("sphere_search").get<bool>();
    if (j.contains("detector_budget"))
      c.detector_budget = j.at("detector_budget").get<std::size_t>();
    if (j.contains("acyclicity_face_limit"))
      c.acyclicity_face_limit = j.at("acyclicity_face_limit").get<std::size_t>();
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
    if (j.contains("format")) {
      const auto f = j.at("format").get<std::string>();
      if (f == "csv") c.format = OutputFormat::csv;
      else if (f == "jsonl" || f == "json-lines") c.format = OutputFormat::json_lines;
      else if (f == "both") c.format = OutputFormat::both;
      else throw ConfigError("format must be csv, jsonl or both");
    }
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<std::size_t>();
    if (j.contains("record_timings")) c.record_timings = j.at("record_timings").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  c.validate();
  return c;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(j);
}

nlohmann::json to_json(const SweepConfig& c) {
  nlohmann::json j;
  j["n_list"] = c.n_list;
  if (!c.p_list.empty()) j["p_list"] = c.p_list;
  if (!c.alpha_list.empty()) j["alpha_list"] = c.alpha_list;
  j["k_max"] = c.k_max;
  j["trials"] = c.trials;
  j["master_seed"] = c.master_seed;
  if (c.max_dim) j["max_dim"] = *c.max_dim;
  else j["max_dim"] = "auto";
  j["max_faces_per_dim"] = c.max_faces_per_dim;
  j["prime"] = c.prime;
  j["paranoid"] = c.paranoid;
  j["spot_check_rate"] = c.spot_check_rate;
  j["snf_face_limit"] = c.snf_face_limit;
  j["sphere_search"] = c.sphere_search;
  j["detector_budget"] = c.detector_budget;
  j["acyclicity_face_limit"] = c.acyclicity_face_limit;
  j["output"] = c.output;
  j["format"] = format_name(c.format);
  j["jobs"] = c.jobs;
  j["record_timings"] = c.record_timings;
  return j;
}

std::vector<SweepPoint> sweep_points(const SweepConfig& cfg) {
  std::vector<SweepPoint> points;
  for (auto n : cfg.n_list) {
    for (double p : cfg.p_list) points.push_back({n, p, std::nullopt});
    for (double a : cfg.alpha_list)
      points.push_back({n, std::min(1.0, std::pow(static_cast<double>(n), a)), a});
  }
  return points;
}

std::uint64_t trial_stream_id(std::uint64_t n, double p, std::uint64_t index) {
  return mix64(mix64(mix64(n) ^ std::bit_cast<std::uint64_t>(p)) ^ index);
}

// ------------------------------------------------------------------- trial

TrialRecord run_trial(const SweepConfig& cfg, const SweepPoint& point, std::size_t point_index,
                      std::uint64_t index) {
  TrialRecord r;
  r.point_index = point_index;
  r.index = index;
  r.trial_id = static_cast<std::uint64_t>(point_index) * cfg.trials + index;
  r.n = point.n;
  r.p = point.p;
  r.alpha = point.alpha;
  r.k = cfg.k_max;
  r.seed = trial_stream_id(point.n, point.p, index);
  const RandomSource source(cfg.master_seed, r.seed);
  const int k_max = cfg.k_max;

  auto start = Clock::now();
  const Graph g = generate_gnp(point.n, point.p, source);
  r.times.graph_ms = elapsed_ms(start);

  start = Clock::now();
  const CliqueComplex x =
      build_clique_complex(g, CliqueBuildOptions{cfg.effective_max_dim(), cfg.max_faces_per_dim});
  const FVector f = f_vector(x);
  r.f_vector = f.counts;
  r.truncated = x.truncated();
  r.guard_hit = x.guard_hit();
  r.times.complex_ms = elapsed_ms(start);

  start = Clock::now();
  const HomologySummary h = reduced_betti(x, CoefficientSpec::prime_field(cfg.prime));
  r.betti = h.reduced_betti;
  r.exact_through = h.exact_through;
  const CheckStatus euler = euler_check(f, h);
  r.euler = to_string(euler);
  if (euler == CheckStatus::fails) violation(r, "Euler characteristic mismatch");
  const int exact_k = h.truncated ? std::min(k_max, h.exact_through) : k_max;
  for (int k = 0; k <= exact_k; ++k)
    if (!morse_inequality_check(f, h, k))
      violation(r, "weak Morse inequalities fail in dimension " + std::to_string(k));
  if (cfg.paranoid) {
    const std::uint32_t other = cfg.prime == kCrossCheckPrime ? kDefaultPrime : kCrossCheckPrime;
    const HomologySummary h2 = reduced_betti(x, CoefficientSpec::prime_field(other));
    r.coefficients_agree = h2.reduced_betti == h.reduced_betti;
    if (source.substream(kSpotCheckStream).uniform(0) < cfg.spot_check_rate)
      r.snf_spot_check = snf_spot_check(x, h, exact_k, cfg.snf_face_limit, r);
  }
  r.times.homology_ms = elapsed_ms(start);

  start = Clock::now();
  const int cap = x.stored_cap();
  for (int k = 0; k <= k_max; ++k) {
    if (x.truncated() && k > cap) {
      r.critical_lex.push_back(-1);
      r.lex_acyclic.push_back(-1);
      continue;
    }
    const auto direct = lex_critical_faces_direct(x, k);
    r.critical_lex.push_back(static_cast<std::int64_t>(direct.size()));
    if (h.exact_at(k) && (h[k] > static_cast<std::int64_t>(direct.size()) || direct.size() > f[k]))
      violation(r, "lex critical count does not sit between beta_k and f_k at k=" +
                       std::to_string(k));
    if (x.truncated() && k + 1 > cap) {
      r.lex_acyclic.push_back(-1);
      continue;
    }
    const auto field = lex_gradient_field(x, k);
    if (field.critical_lower != direct)
      violation(r, "the two lex critical-set characterizations differ at k=" + std::to_string(k));
    if (x.total_faces() <= cfg.acyclicity_face_limit) {
      if (!verify_acyclic(field, x)) violation(r, "lex field has a closed V-path");
      r.lex_acyclic.push_back(1);
    } else {
      r.lex_acyclic.push_back(-1);
    }
  }
  if (k_max >= 1 && (!x.truncated() || k_max <= cap)) {
    const auto random = random_matching_field(x, k_max, source.substream(kMatchingStream));
    r.random_removed = random.report.removed();
    r.random_conflicts = random.report.conflicts_removed;
    r.random_cycles = random.report.cycles_broken;
    r.d_pairs = adjacent_kface_pairs(x, k_max);
    if (random.report.removed() > r.d_pairs)
      violation(r, "random field removed more pairs than there are adjacent k-face pairs");
    if (!verify_acyclic(random.field, x)) violation(r, "repaired random field is not gradient");
    if (h.exact_at(k_max) &&
        h[k_max] > static_cast<std::int64_t>(critical_count(random.field, x, k_max)))
      violation(r, "random field critical count is below beta_k");
  }
  r.times.morse_ms = elapsed_ms(start);

  start = Clock::now();
  if (cfg.sphere_search) {
    const std::size_t budget = cfg.detector_budget ? cfg.detector_budget : 50 * point.n;
    if (auto cert = find_sphere_certificate(g, k_max, budget, source.substream(kSphereStream))) {
      r.cert_found = true;
      const RetractionMap map = build_retraction(g, *cert);
      r.cert_verified = verify_retraction(g, map, *cert);
      if (!r.cert_verified) violation(r, "sphere retraction fails verification");
      if (h.exact_at(k_max) && h[k_max] < 1)
        violation(r, "sphere retract found but beta_k = 0");
    }
  }
  if (k_max >= 1) {
    const auto verdict = vanishing_certificate(g, k_max);
    r.vanish_cert = verdict.guaranteed_zero() ? "guaranteed_zero" : "unknown";
    if (verdict.guaranteed_zero() && h.exact_at(k_max) && h[k_max] != 0)
      violation(r, "vanishing certificate (" + verdict.reason + ") but beta_k != 0");
  } else {
    r.vanish_cert = "n/a";
  }
  r.times.detectors_ms = elapsed_ms(start);
  return r;
}

// ------------------------------------------------------------------- sweep

std::size_t SweepResult::failures() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.error.has_value(); }));
}

SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const auto points = sweep_points(cfg);
  const std::size_t total = points.size() * cfg.trials;
  SweepResult result;
  result.records.resize(total);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t task = next++; task < total; task = next++) {
      const std::size_t point_index = task / cfg.trials;
      const std::uint64_t index = task % cfg.trials;
      const SweepPoint& point = points[point_index];
      try {
        result.records[task] = run_trial(cfg, point, point_index, index);
      } catch (const std::exception& e) {
        TrialRecord& r = result.records[task];
        r = TrialRecord{};
        r.point_index = point_index;
        r.index = index;
        r.trial_id = task;
        r.n = point.n;
        r.p = point.p;
        r.alpha = point.alpha;
        r.k = cfg.k_max;
        r.seed = trial_stream_id(point.n, point.p, index);
        r.vanish_cert = "error";
        r.euler = "error";
        r.error = e.what();
      }
    }
  };
  const std::size_t threads = std::min(cfg.jobs, std::max<std::size_t>(total, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  result.summary = summarize(cfg, result.records);
  return result;
}

std::vector<SummaryRow> summarize(const SweepConfig& cfg, const std::vector<TrialRecord>& records) {
  const auto points = sweep_points(cfg);
  std::vector<SummaryRow> rows;
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    for (int k = 0; k <= cfg.k_max; ++k) {
      SummaryRow row;
      row.n = points[pi].n;
      row.p = points[pi].p;
      row.alpha = points[pi].alpha;
      row.k = k;
      row.expected_faces =
          analytic::expected_faces(static_cast<double>(row.n), row.p, k);
      std::size_t nonzero = 0, found = 0;
      double face_sum = 0;
      std::vector<double> ratios;
      for (const auto& r : records) {
        if (r.point_index != pi || r.error) continue;
        ++row.trials;
        face_sum += static_cast<double>(r.f_at(k));
        if (r.cert_found) ++found;
        if (!r.exact_at(k)) continue;
        ++row.exact_trials;
        if (r.betti_at(k) != 0) ++nonzero;
        if (r.f_at(k) > 0)
          ratios.push_back(static_cast<double>(r.betti_at(k)) / static_cast<double>(r.f_at(k)));
      }
      if (row.trials) row.mean_faces = face_sum / static_cast<double>(row.trials);
      if (row.exact_trials)
        row.prob_nonzero = static_cast<double>(nonzero) / static_cast<double>(row.exact_trials);
      if (!ratios.empty()) {
        double sum = 0;
        for (double v : ratios) sum += v;
        row.mean_ratio = sum / static_cast<double>(ratios.size());
        if (ratios.size() > 1) {
          double ss = 0;
          for (double v : ratios) ss += (v - row.mean_ratio) * (v - row.mean_ratio);
          row.stderr_ratio = std::sqrt(ss / static_cast<double>(ratios.size() - 1) /
                                       static_cast<double>(ratios.size()));
        }
      }
      if (k == cfg.k_max && cfg.sphere_search && row.trials)
        row.cert_hit_rate = static_cast<double>(found) / static_cast<double>(row.trials);
      rows.push_back(row);
    }
  }
  return rows;
}

// ------------------------------------------------------------------ output

std::string format_double(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string csv_header() {
  return "trial_id,n,p,alpha,k,seed,f_vector,betti,truncated,critical_lex,d_pairs,cert_found,"
         "cert_verified,vanish_cert,time_ms_total";
}

std::string csv_row(const TrialRecord& r, bool with_times) {
  std::ostringstream out;
  out << r.trial_id << ',' << r.n << ',' << format_double(r.p) << ','
      << (r.alpha ? format_double(*r.alpha) : "") << ',' << r.k << ',' << r.seed << ','
      << join(r.f_vector) << ',' << join(r.betti) << ',' << (r.truncated ? "true" : "false") << ','
      << join(r.critical_lex) << ',' << r.d_pairs << ',' << (r.cert_found ? "true" : "false")
      << ',' << (r.cert_verified ? "true" : "false") << ',' << r.vanish_cert << ','
      << format_double(with_times ? r.times.total_ms() : 0.0);
  return out.str();
}

nlohmann::json to_json(const TrialRecord& r, bool with_times) {
  nlohmann::json j;
  j["trial_id"] = r.trial_id;
  j["n"] = r.n;
  j["p"] = r.p;
  j["alpha"] = r.alpha ? nlohmann::json(*r.alpha) : nlohmann::json(nullptr);
  j["k"] = r.k;
  j["seed"] = r.seed;
  j["f_vector"] = r.f_vector;
  j["betti"] = r.betti;
  j["exact_through"] = r.exact_through;
  j["truncated"] = r.truncated;
  j["guard_hit"] = r.guard_hit;
  j["euler"] = r.euler;
  j["critical_lex"] = r.critical_lex;
  j["lex_acyclic"] = r.lex_acyclic;
  const auto opt = [](const std::optional<std::size_t>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  j["random_removed"] = opt(r.random_removed);
  j["random_conflicts"] = opt(r.random_conflicts);
  j["random_cycles"] = opt(r.random_cycles);
  j["d_pairs"] = r.d_pairs;
  j["cert_found"] = r.cert_found;
  j["cert_verified"] = r.cert_verified;
  j["vanish_cert"] = r.vanish_cert;
  if (r.coefficients_agree) j["coefficients_agree"] = *r.coefficients_agree;
  if (r.snf_spot_check) j["snf_spot_check"] = *r.snf_spot_check;
  const double scale = with_times ? 1.0 : 0.0;
  j["time_ms"] = {{"graph", r.times.graph_ms * scale},
                  {"complex", r.times.complex_ms * scale},
                  {"homology", r.times.homology_ms * scale},
                  {"morse", r.times.morse_ms * scale},
                  {"detectors", r.times.detectors_ms * scale}};
  j["time_ms_total"] = r.times.total_ms() * scale;
  j["error"] = r.error ? nlohmann::json(*r.error) : nlohmann::json(nullptr);
  return j;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "n,p,alpha,k,trials,exact_trials,prob_nonzero,mean_ratio,stderr_ratio,mean_faces,"
         "expected_faces,cert_hit_rate\n";
  for (const auto& s : rows) {
    out << s.n << ',' << format_double(s.p) << ',' << (s.alpha ? format_double(*s.alpha) : "")
        << ',' << s.k << ',' << s.trials << ',' << s.exact_trials << ','
        << format_double(s.prob_nonzero) << ',' << format_double(s.mean_ratio) << ','
        << format_double(s.stderr_ratio) << ',' << format_double(s.mean_faces) << ','
        << format_double(s.expected_faces) << ','
        << (s.cert_hit_rate ? format_double(*s.cert_hit_rate) : "") << '\n';
  }
  return out.str();
}

std::vector<std::filesystem::path> emit(const SweepResult& result, const SweepConfig& cfg,
                                        const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  const auto write = [&](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path.string());
    written.push_back(path);
  };
  const bool times = cfg.record_timings;
  if (cfg.format != OutputFormat::json_lines) {
    std::string text = csv_header() + '\n';
    for (const auto& r : result.records) text += csv_row(r, times) + '\n';
    write(dir / "trials.csv", text);
  }
  if (cfg.format != OutputFormat::csv) {
    std::string text;
    for (const auto& r : result.records) text += to_json(r, times).dump() + '\n';
    write(dir / "trials.jsonl", text);
  }
  write(dir / "summary.csv", summary_csv(result.summary));
  return written;
}

// ----------------------------------------------------------------- Meshulam

MeshulamCheck meshulam_check(const Graph& g, int k) {
  if (k < 0) throw std::domain_error("k must be nonnegative");
  MeshulamCheck c;
  const auto l = 2 * static_cast<std::size_t>(k) + 2;
  if (l > g.n()) return c;
  c.hypothesis = common_neighbor_all(g, l).holds;
  if (!c.hypothesis) return c;
  const auto x = build_clique_complex(g, k + 1);
  const auto h = reduced_betti(x);
  for (int i = 0; i <= k; ++i) {
    c.betti.push_back(h[i]);
    if (h[i] != 0) c.vanishes = false;
  }
  return c;
}

MeshulamReport meshulam_suite(std::uint64_t n, double p, int k, std::size_t trials,
                              std::uint64_t seed) {
  MeshulamReport report;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const Graph g = generate_gnp(n, p, RandomSource(seed, t));
    const auto c = meshulam_check(g, k);
    if (!c.hypothesis) continue;
    ++report.hypothesis_satisfied;
    if (!c.vanishes) report.violations.push_back(t);
  }
  return report;
}

}  // namespace flagtop::harness
