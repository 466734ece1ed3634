#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "copclust/clustering.hpp"
#include "copclust/copula_models.hpp"
#include "copclust/error.hpp"
#include "copclust/io.hpp"
#include "copclust/parallel.hpp"
#include "copclust/permutation.hpp"
#include "copclust/rng.hpp"
#include "copclust/serialize.hpp"
#include "copclust/simharness.hpp"
#include "copclust/tuning.hpp"

namespace cc = copclust;

namespace {

struct CommonOptions {
  std::string input;
  std::string format = "long_csv";
  std::string pairing = "independent";
  std::string transform = "none";
  std::string alpha = "1";
  std::string calibration = "plugin";
  std::string output;
  cc::RunConfig run;
};

void add_run_options(CLI::App* app, CommonOptions& o, bool with_input) {
  if (with_input) {
    app->add_option("-i,--input", o.input, "long CSV file or directory of CSVs")->required();
    app->add_option("--format", o.format, "long_csv | wide_dir")
        ->check(CLI::IsMember({"long_csv", "wide_dir"}));
    app->add_option("--pairing", o.pairing, "independent | paired")
        ->check(CLI::IsMember({"independent", "paired"}));
    app->add_option("--transform", o.transform, "none | log_return")
        ->check(CLI::IsMember({"none", "log_return"}));
  }
  app->add_option("--level", o.run.level, "test level");
  app->add_option("--alpha", o.alpha, "penalty factor, or 'auto' to calibrate");
  app->add_option("--d-max", o.run.d_max, "maximal degree");
  app->add_option("--calibration", o.calibration, "plugin | permutation")
      ->check(CLI::IsMember({"plugin", "permutation"}));
  app->add_option("--permutations", o.run.permutation_B, "permutation draws B");
  app->add_option("--seed", o.run.seed, "root seed");
  app->add_option("-o,--output", o.output, "output file (stdout when omitted)");
}

void finalize(CommonOptions& o) {
  o.run.pairing = o.pairing == "paired" ? cc::Pairing::paired : cc::Pairing::independent;
  o.run.transform = o.transform == "log_return" ? cc::Transform::log_return : cc::Transform::none;
  o.run.calibration =
      o.calibration == "permutation" ? cc::Calibration::permutation : cc::Calibration::plugin;
  if (o.alpha == "auto") {
    o.run.alpha_factor.reset();
  } else {
    try {
      std::size_t used = 0;
      o.run.alpha_factor = std::stod(o.alpha, &used);
      if (used != o.alpha.size()) throw std::invalid_argument(o.alpha);
    } catch (const std::exception&) {
      throw cc::InputError("--alpha must be a number or 'auto', got '" + o.alpha + "'");
    }
  }
  o.run.validate();
}

cc::Dataset load(const CommonOptions& o) {
  auto ds = cc::ingest(o.input, o.format == "wide_dir" ? cc::InputFormat::wide_dir
                                                       : cc::InputFormat::long_csv,
                       o.run.pairing);
  if (o.run.transform == cc::Transform::log_return) ds = cc::apply_log_returns(ds);
  return ds;
}

cc::PenaltyConfig resolve_penalty(const CommonOptions& o, const cc::Dataset& ds,
                                  std::optional<cc::TuningReport>& report) {
  auto cfg = o.run.penalty();
  if (!o.run.alpha_factor) {
    cc::TuningConfig t;
    t.seed = cc::derive_seed(o.run.seed, {cc::tag::tuning});
    report = cc::calibrate_alpha(ds, cfg, t);
    cfg.alpha_factor = report->alpha_hat;
  }
  return cfg;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    cc::write_text(path, text);
  }
}

int run_cluster(CommonOptions& o, const std::string& emit_format, const std::string& dot_path) {
  finalize(o);
  const auto ds = load(o);
  std::optional<cc::TuningReport> tuning;
  const auto cfg = resolve_penalty(o, ds, tuning);
  const auto result = cc::cluster(ds, cfg);
  if (!dot_path.empty()) cc::write_text(dot_path, cc::dendrogram_dot(cc::dendrogram(result)));
  if (emit_format == "dot") {
    emit(o.output, cc::dendrogram_dot(cc::dendrogram(result)));
  } else if (emit_format == "csv") {
    const std::vector<cc::ClusterSet> one{result};
    const auto assoc = cc::association_matrix(one);
    emit(o.output, cc::association_csv(assoc.labels, assoc.percent));
  } else {
    nlohmann::json j = cc::to_json(result);
    j["config"] = cc::to_json(cfg);
    j["config"]["pairing"] = o.pairing;
    j["config"]["transform"] = o.transform;
    if (tuning) j["tuning"] = cc::to_json(*tuning);
    emit(o.output, j.dump(2) + "\n");
  }
  return 0;
}

int run_test_pair(CommonOptions& o, const std::string& a, const std::string& b) {
  finalize(o);
  const auto ds = load(o);
  std::optional<cc::TuningReport> tuning;
  const auto cfg = resolve_penalty(o, ds, tuning);
  const std::size_t ia = ds.index_of(a), ib = ds.index_of(b);
  if (ia == ib) throw cc::InputError("--a and --b must name different populations");
  auto r = cc::pair_test_data(ds.populations[ia].data, ds.populations[ib].data, ds.pairing(ia, ib),
                              cfg);
  r.pair = cc::PairId{0, 1, 1};
  nlohmann::json j = cc::to_json(r, {a, b});
  j["config"] = cc::to_json(cfg);
  if (tuning) j["tuning"] = cc::to_json(*tuning);
  emit(o.output, j.dump(2) + "\n");
  return 0;
}

int run_tune(CommonOptions& o, std::size_t k_prime, std::size_t reps) {
  finalize(o);
  const auto ds = load(o);
  cc::TuningConfig t;
  t.k_prime = k_prime;
  t.n_reps = reps;
  t.seed = cc::derive_seed(o.run.seed, {cc::tag::tuning});
  const auto report = cc::calibrate_alpha(ds, o.run.penalty(), t);
  emit(o.output, cc::to_json(report).dump(2) + "\n");
  return 0;
}

int run_simulate(CommonOptions& o, const std::string& design, std::optional<std::size_t> reps,
                 const std::string& emit_format) {
  finalize(o);
  if (!o.run.alpha_factor) throw cc::InputError("simulate needs a numeric --alpha");
  cc::DesignSpec spec;
  if (std::filesystem::exists(design)) {
    std::ifstream in(design);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw cc::InputError(design + ": " + e.what());
    }
    spec = cc::design_spec_from_json(j);
  } else {
    spec = cc::builtin_design(design);
  }
  if (reps) spec.replicates = *reps;
  spec.seed = o.run.seed;
  spec.level = o.run.level;
  const auto result = cc::run_design(spec, o.run.penalty());
  if (emit_format == "csv") {
    emit(o.output, cc::association_csv(result.labels, result.association));
  } else {
    nlohmann::json j = cc::to_json(result);
    j["config"] = cc::to_json(o.run.penalty());
    emit(o.output, j.dump(2) + "\n");
  }
  return 0;
}

int run_sample(const std::vector<std::string>& copulas, int dim, std::size_t n, std::uint64_t seed,
               double df, const std::string& output) {
  cc::Dataset ds;
  for (std::size_t k = 0; k < copulas.size(); ++k) {
    const auto& text = copulas[k];
    const auto colon = text.find(':');
    cc::CopulaSpec spec;
    spec.family = cc::parse_family(text.substr(0, colon));
    spec.dim = dim;
    spec.student_df = df;
    if (colon != std::string::npos) {
      try {
        spec.tau = std::stod(text.substr(colon + 1));
      } catch (const std::exception&) {
        throw cc::InputError("bad copula '" + text + "', expected family:tau");
      }
    } else if (spec.family == cc::Family::comonotone) {
      spec.tau = 1.0;
    }
    spec.validate();
    cc::Population pop;
    pop.label = std::to_string(k + 1);
    pop.data = cc::sample(spec, n, cc::derive_seed(seed, {cc::tag::sample, k}));
    ds.populations.push_back(std::move(pop));
  }
  std::ostringstream out;
  cc::write_long_csv(out, ds);
  emit(output, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clustering of populations by their copulas"};
  app.require_subcommand(1);

  CommonOptions cluster_opts;
  std::string cluster_emit = "json", cluster_dot;
  auto* cluster = app.add_subcommand("cluster", "cluster the populations of a dataset");
  add_run_options(cluster, cluster_opts, true);
  cluster->add_option("--emit", cluster_emit, "json | csv | dot")
      ->check(CLI::IsMember({"json", "csv", "dot"}));
  cluster->add_option("--dot", cluster_dot, "also write the dendrogram to this file");

  CommonOptions pair_opts;
  std::string label_a, label_b;
  auto* test_pair = app.add_subcommand("test-pair", "test equality of two copulas");
  add_run_options(test_pair, pair_opts, true);
  test_pair->add_option("--a", label_a, "first population label")->required();
  test_pair->add_option("--b", label_b, "second population label")->required();

  CommonOptions tune_opts;
  std::size_t k_prime = 3, tune_reps = 20;
  auto* tune = app.add_subcommand("tune-alpha", "calibrate the penalty factor");
  add_run_options(tune, tune_opts, true);
  tune->add_option("--k-prime", k_prime, "number of null sub-populations");
  tune->add_option("--reps", tune_reps, "number of random splits");

  CommonOptions sim_opts;
  std::string design, sim_emit = "json";
  std::optional<std::size_t> sim_reps;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo run of a simulation design");
  add_run_options(simulate, sim_opts, false);
  simulate->get_option("--seed")->required();
  simulate->add_option("--design", design, "builtin name (A100..D500) or JSON file")->required();
  simulate->add_option("--replicates", sim_reps, "override the replicate count");
  simulate->add_option("--emit", sim_emit, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  std::vector<std::string> copulas;
  int sample_dim = 2;
  std::size_t sample_n = 100;
  std::uint64_t sample_seed = 0;
  double sample_df = 4.0;
  std::string sample_out;
  auto* sample = app.add_subcommand("sample", "draw synthetic copula data as long CSV");
  sample->add_option("--copula", copulas, "family:tau, one per population")->required();
  sample->add_option("--dim", sample_dim, "dimension p");
  sample->add_option("-n,--n", sample_n, "rows per population");
  sample->add_option("--seed", sample_seed, "root seed")->required();
  sample->add_option("--df", sample_df, "Student degrees of freedom");
  sample->add_option("-o,--output", sample_out, "output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cc::configure_workers_from_env();
    if (*cluster) return run_cluster(cluster_opts, cluster_emit, cluster_dot);
    if (*test_pair) return run_test_pair(pair_opts, label_a, label_b);
    if (*tune) return run_tune(tune_opts, k_prime, tune_reps);
    if (*simulate) return run_simulate(sim_opts, design, sim_reps, sim_emit);
    if (*sample) return run_sample(copulas, sample_dim, sample_n, sample_seed, sample_df, sample_out);
  } catch (const cc::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const cc::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
