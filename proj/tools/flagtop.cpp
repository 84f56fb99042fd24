// flagtop: command-line front end for random clique complexes.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "flagtop/analytic.hpp"
#include "flagtop/complex.hpp"
#include "flagtop/detectors.hpp"
#include "flagtop/graph.hpp"
#include "flagtop/harness.hpp"
#include "flagtop/homology.hpp"
#include "flagtop/morse.hpp"

using namespace flagtop;
using nlohmann::json;

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

json betti_json(const HomologySummary& h) {
  json j;
  j["coefficients"] = h.coeff.describe();
  j["reduced_betti"] = h.reduced_betti;
  j["reduced_betti_minus_one"] = h.reduced_betti_minus_one;
  j["exact_through"] = h.exact_through;
  j["truncated"] = h.truncated;
  return j;
}

std::string big_to_string(const BigInt& b) { return b.str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random clique complexes: sampling, homology, discrete Morse fields, certificates"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Sample G(n,p) and write an edge list");
  std::size_t gen_n = 0;
  std::optional<double> gen_p, gen_alpha;
  std::uint64_t gen_seed = 0, gen_stream = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Number of vertices")->required();
  auto* gen_p_opt = gen->add_option("--p", gen_p, "Edge probability");
  gen->add_option("--alpha", gen_alpha, "Edge probability as n^alpha")->excludes(gen_p_opt);
  gen->add_option("--seed", gen_seed, "Master seed");
  gen->add_option("--stream", gen_stream, "Stream id");
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  // complex
  auto* cx = app.add_subcommand("complex", "Clique complex of an edge-list graph as a facet list");
  std::string cx_graph, cx_out;
  int cx_dim = 2;
  std::size_t cx_faces = 2'000'000;
  cx->add_option("--graph", cx_graph, "Edge-list file")->required();
  cx->add_option("--max-dim", cx_dim, "Dimension cap");
  cx->add_option("--max-faces", cx_faces, "Face guard per dimension");
  cx->add_option("--out", cx_out, "Output file (default stdout)");

  // homology
  auto* hom = app.add_subcommand("homology", "Reduced Betti numbers (and torsion) as JSON");
  std::string hom_graph, hom_facets;
  int hom_dim = 3;
  std::uint64_t hom_prime = kDefaultPrime;
  bool hom_integer = false;
  std::size_t hom_limit = 2000;
  auto* hom_g = hom->add_option("--graph", hom_graph, "Edge-list file");
  hom->add_option("--facets", hom_facets, "Facet-list file")->excludes(hom_g);
  hom->add_option("--max-dim", hom_dim, "Dimension cap for graph input");
  hom->add_option("--prime", hom_prime, "Coefficient prime");
  hom->add_flag("--integer", hom_integer, "Also compute integer homology (torsion)");
  hom->add_option("--snf-limit", hom_limit, "Face limit for the integer backend");

  // morse
  auto* mor = app.add_subcommand("morse", "Discrete gradient field statistics as JSON");
  std::string mor_graph, mor_strategy = "lex";
  int mor_k = 1;
  std::uint64_t mor_seed = 0;
  mor->add_option("--graph", mor_graph, "Edge-list file")->required();
  mor->add_option("--strategy", mor_strategy, "lex or random")
      ->check(CLI::IsMember({"lex", "random"}));
  mor->add_option("--k", mor_k, "Dimension");
  mor->add_option("--seed", mor_seed, "Seed for the random strategy");

  // detect
  auto* det = app.add_subcommand("detect", "Sphere retract search or vanishing certificate");
  std::string det_graph;
  std::optional<int> det_sphere, det_vanish;
  std::size_t det_budget = 0;
  std::uint64_t det_seed = 0;
  det->add_option("--graph", det_graph, "Edge-list file")->required();
  auto* det_s = det->add_option("--sphere-k", det_sphere, "Search for an octahedral k-sphere retract");
  det->add_option("--vanish-k", det_vanish, "Check the vanishing certificate for beta_k")
      ->excludes(det_s);
  det->add_option("--budget", det_budget, "Search restarts (default 50 n)");
  det->add_option("--seed", det_seed, "Search seed");

  // analytic
  auto* ana = app.add_subcommand("analytic", "Closed-form expectations and thresholds as JSON");
  analytic::RegimeSpec regime;
  std::optional<int> ana_l;
  ana->add_option("--n", regime.n, "Number of vertices")->required();
  ana->add_option("--k", regime.k, "Dimension");
  auto* ana_p = ana->add_option("--p", regime.p, "Edge probability");
  ana->add_option("--alpha", regime.alpha, "Edge probability as n^alpha")->excludes(ana_p);
  ana->add_option("--omega", regime.omega, "Additive offset in the threshold formulas");
  ana->add_option("--l", ana_l, "Subset size for the common-neighbour threshold");

  // sweep
  auto* swp = app.add_subcommand("sweep", "Run a seeded Monte Carlo sweep from a JSON config");
  std::string swp_config, swp_out;
  std::optional<std::size_t> swp_jobs;
  swp->add_option("--config", swp_config, "Config file")->required()->check(CLI::ExistingFile);
  swp->add_option("--out", swp_out, "Output directory (overrides the config)");
  swp->add_option("--jobs", swp_jobs, "Worker threads (overrides the config)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      double p = 0;
      if (gen_p) p = *gen_p;
      else if (gen_alpha) p = std::pow(static_cast<double>(gen_n), *gen_alpha);
      else throw CLI::ValidationError("generate", "one of --p or --alpha is required");
      const Graph g = generate_gnp(gen_n, std::min(p, 1.0), RandomSource(gen_seed, gen_stream));
      std::ostringstream text;
      write_edge_list(text, g);
      write_text(gen_out, text.str());
    } else if (*cx) {
      const Graph g = read_edge_list_file(cx_graph);
      const auto x = build_clique_complex(g, CliqueBuildOptions{cx_dim, cx_faces});
      std::ostringstream text;
      if (x.truncated())
        text << "# truncated: faces above dimension " << x.stored_cap() << " omitted\n";
      write_facet_list(text, x);
      write_text(cx_out, text.str());
    } else if (*hom) {
      SimplicialComplex x;
      if (!hom_facets.empty()) x = read_facet_list_file(hom_facets);
      else if (!hom_graph.empty()) x = build_clique_complex(read_edge_list_file(hom_graph), hom_dim);
      else throw CLI::ValidationError("homology", "one of --graph or --facets is required");
      const auto h = reduced_betti(x, CoefficientSpec::prime_field(hom_prime));
      json j = betti_json(h);
      j["f_vector"] = f_vector(x).counts;
      if (hom_integer) {
        json z = json::array();
        const int through = x.truncated() ? x.stored_cap() - 1 : x.top_dimension();
        for (int d = 0; d <= through; ++d) {
          try {
            const auto ih = integer_homology(x, d, hom_limit);
            json t = json::array();
            for (const auto& f : ih.torsion) t.push_back(big_to_string(f));
            z.push_back({{"dim", d}, {"rank", ih.rank}, {"torsion", t}});
          } catch (const TooLargeError& e) {
            z.push_back({{"dim", d}, {"error", e.what()}});
          }
        }
        j["integer"] = z;
      }
      std::cout << j.dump(2) << '\n';
    } else if (*mor) {
      const Graph g = read_edge_list_file(mor_graph);
      json j;
      j["strategy"] = mor_strategy;
      j["k"] = mor_k;
      if (mor_strategy == "lex") {
        const auto x = build_clique_complex(g, mor_k + 1);
        const auto field = lex_gradient_field(x, mor_k);
        j["faces"] = x.size(mor_k);
        j["pairs"] = field.pairs.size();
        j["critical"] = field.critical_lower.size();
        j["acyclic"] = verify_acyclic(field, x);
      } else {
        const auto x = build_clique_complex(g, mor_k);
        const auto rf = random_matching_field(x, mor_k, RandomSource(mor_seed, 0));
        j["faces"] = x.size(mor_k);
        j["pairs"] = rf.field.pairs.size();
        j["proposed"] = rf.report.proposed;
        j["conflicts_removed"] = rf.report.conflicts_removed;
        j["cycles_broken"] = rf.report.cycles_broken;
        j["removed"] = rf.report.removed();
        j["critical"] = critical_count(rf.field, x, mor_k);
        j["adjacent_pairs"] = adjacent_kface_pairs(x, mor_k);
        j["acyclic"] = verify_acyclic(rf.field, x);
      }
      std::cout << j.dump(2) << '\n';
    } else if (*det) {
      const Graph g = read_edge_list_file(det_graph);
      json j;
      if (det_sphere) {
        const std::size_t budget = det_budget ? det_budget : 50 * g.n();
        const auto cert = find_sphere_certificate(g, *det_sphere, budget, RandomSource(det_seed, 0));
        j["found"] = cert.has_value();
        if (cert) {
          const auto r = build_retraction(g, *cert);
          j["certificate"] = to_json(*cert, r);
          j["verified"] = verify_retraction(g, r, *cert);
        }
      } else if (det_vanish) {
        const auto v = vanishing_certificate(g, *det_vanish);
        j["k"] = *det_vanish;
        j["verdict"] = v.guaranteed_zero() ? "guaranteed_zero" : "unknown";
        j["reason"] = v.reason;
      } else {
        throw CLI::ValidationError("detect", "one of --sphere-k or --vanish-k is required");
      }
      std::cout << j.dump(2) << '\n';
    } else if (*ana) {
      std::cout << analytic::report(regime, ana_l).dump(2) << '\n';
    } else if (*swp) {
      auto cfg = harness::load_config(swp_config);
      if (!swp_out.empty()) cfg.output = swp_out;
      if (swp_jobs) cfg.jobs = *swp_jobs;
      cfg.validate();
      const auto result = harness::run_sweep(cfg);
      const auto paths = harness::emit(result, cfg, cfg.output);
      for (const auto& p : paths) std::cerr << "wrote " << p.string() << '\n';
      for (const auto& r : result.records)
        if (r.error) std::cerr << "trial " << r.trial_id << " failed: " << *r.error << '\n';
      if (result.failures()) {
        std::cerr << result.failures() << " of " << result.records.size() << " trials failed\n";
        return 2;
      }
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
