#include "plateau/acceptance.hpp"
#include "plateau/experiments.hpp"
#include "plateau/kernels.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kConfigError = 2;

struct Overrides {
  std::string config;
  std::optional<long> seed;
  std::optional<std::string> out;
  std::optional<int> threads;
  std::optional<int> quadrature_order;
};

void add_common_flags(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "Experiment config (INI)")->required()->check(CLI::ExistingFile);
  sub->add_option("--seed", o.seed, "Override experiment.seed");
  sub->add_option("--out", o.out, "Output directory");
  sub->add_option("--threads", o.threads, "OpenMP threads for the kernels")->check(CLI::PositiveNumber);
  sub->add_option("--quadrature-order", o.quadrature_order, "Quadrature order")->check(CLI::PositiveNumber);
}

int run_experiment(const std::string& kind, const Overrides& o) {
  plateau::ExperimentConfig cfg;
  try {
    auto sections = plateau::read_ini(o.config);
    auto& ex = sections.try_emplace("experiment", "experiment", std::map<std::string, std::string>{}).first->second;
    if (!ex.has("kind")) ex.set("kind", kind);
    if (ex.str("kind") != kind) {
      throw plateau::ConfigError("experiment.kind: config says '" + ex.str("kind") + "' but the subcommand is '" +
                                 kind + "'");
    }
    if (o.seed) ex.set("seed", std::to_string(*o.seed));
    if (o.out) ex.set("out", *o.out);
    if (o.threads) ex.set("threads", std::to_string(*o.threads));
    if (o.quadrature_order) ex.set("quadrature_order", std::to_string(*o.quadrature_order));
    cfg = plateau::ExperimentConfig::from_sections(sections);
  } catch (const std::exception& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  }
  try {
    const plateau::ResultTable t = plateau::run(cfg);
    plateau::write_outputs(t, cfg.out_dir);
    std::cout << "wrote " << t.rows.size() << " rows to " << cfg.out_dir << '/' << t.name << ".{csv,json}"
              << " (config_hash " << std::hex << t.config_hash << std::dec << ")\n";
  } catch (const plateau::ConfigError& e) {
    std::cerr << "configuration error in " << kind << ": " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << kind << " failed: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical-volume and Kazhdan-constant experiments"};
  app.set_version_flag("--version", plateau::kToolVersion);
  app.require_subcommand(1);

  const char* kinds[] = {"surface-poisson", "minimize",      "barycenter-verify", "kazhdan",
                         "amenable-collapse", "thickness-scan", "margulis-check"};
  Overrides overrides;
  std::string chosen;
  for (const char* k : kinds) {
    CLI::App* sub = app.add_subcommand(k, std::string("Run the ") + k + " pipeline");
    add_common_flags(sub, overrides);
    sub->callback([&chosen, k] { chosen = k; });
  }

  std::string config_dir = "configs/acceptance";
  std::vector<int> only;
  int threads = 0;
  CLI::App* acc = app.add_subcommand("acceptance", "Run the acceptance criteria");
  acc->add_option("--config", config_dir, "Directory of criterion fixtures")->check(CLI::ExistingDirectory);
  acc->add_option("--only", only, "Criterion ids (default: all)")->check(CLI::Range(1, 9));
  acc->add_option("--threads", threads, "OpenMP threads")->check(CLI::PositiveNumber);
  acc->callback([&chosen] { chosen = "acceptance"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (chosen == "acceptance") {
    if (threads > 0) plateau::set_kernel_threads(threads);
    const auto results = plateau::run_acceptance(config_dir, only, std::cout);
    std::cout << '\n';
    plateau::print_summary(std::cout, results);
    for (const auto& r : results) {
      if (!r.passed) return kFailure;
    }
    return kOk;
  }
  return run_experiment(chosen, overrides);
}
