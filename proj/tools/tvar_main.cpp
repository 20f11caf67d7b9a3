// tvar: generate sample paths, decompose them at a truncation level c,
// compute p-variation curves, integrate, and run Monte Carlo limit
// experiments. Emits plot-ready TSV tables and JSON summaries.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tvar/harness.hpp"
#include "tvar/stieltjes.hpp"
#include "tvar/truncation.hpp"
#include "tvar/variation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSelftest = 3;

// write-to-temp then rename, so readers never see a partial file
void atomic_write(const std::string& filename, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(filename);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw tvar::ParseError("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw tvar::ParseError("write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, target);
}

std::string slurp(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw tvar::ParseError("cannot open " + filename);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string path_csv_string(const tvar::SampledPath& path) {
  std::ostringstream out;
  tvar::write_path_csv(path, out);
  return out.str();
}

struct GenerateOpts {
  std::string kind = "wiener";
  double drift = 0.0, sigma = 0.0, lambda = 0.0;
  double jump_mean = 0.0, jump_sd = 1.0;
  double horizon = 1.0;
  std::size_t steps = 1024;
  std::uint64_t seed = 0;
  std::string config_file;
  std::string out;
};

int cmd_generate(const GenerateOpts& opts) {
  tvar::GeneratorConfig config;
  if (!opts.config_file.empty()) {
    config = tvar::GeneratorConfig::from_json(slurp(opts.config_file));
  } else {
    config.kind = tvar::process_kind_from_string(opts.kind);
    config.drift = opts.drift;
    config.volatility = opts.sigma;
    config.jump_rate = opts.lambda;
    config.jump_mean = opts.jump_mean;
    config.jump_sd = opts.jump_sd;
    config.horizon = opts.horizon;
    config.steps = opts.steps;
    config.seed = opts.seed;
    config.check();
  }
  const auto gp = tvar::generate(config);

  nlohmann::json meta;
  meta["config"] = nlohmann::json::parse(config.to_json());
  meta["true_qv_cont"] = gp.true_qv_cont;
  meta["drift_part"] = gp.drift_part;
  nlohmann::json jumps = nlohmann::json::array();
  for (const auto& j : gp.jumps) jumps.push_back({{"time", j.time}, {"size", j.size}});
  meta["jumps"] = std::move(jumps);

  atomic_write(opts.out, path_csv_string(gp.path));
  std::string base = opts.out;
  if (base.ends_with(".csv")) base = base.substr(0, base.size() - 4);
  atomic_write(base + ".meta.json", meta.dump(2) + "\n");
  return kExitOk;
}

int cmd_decompose(const std::string& input, double c, const std::string& out) {
  const auto path = tvar::read_path_csv_file(input);
  const auto result = tvar::truncated_path(path, c);
  const auto [trend, noise] = tvar::decompose(path, c);
  double sup_noise = 0.0;
  for (double v : noise.values) sup_noise = std::max(sup_noise, std::abs(v));

  nlohmann::json summary;
  summary["c"] = c;
  summary["utv"] = result.utv;
  summary["dtv"] = result.dtv;
  summary["tv"] = result.tv;
  summary["sup_noise"] = sup_noise;

  atomic_write(out + ".trend.csv", path_csv_string(trend));
  atomic_write(out + ".noise.csv", path_csv_string(noise));
  atomic_write(out + ".summary.json", summary.dump(2) + "\n");
  std::cout << summary.dump(2) << '\n';
  return kExitOk;
}

int cmd_pvar(const std::string& input, double p, const std::string& scheme_name,
             int levels, const std::vector<double>& deltas, const std::string& out) {
  const auto path = tvar::read_path_csv_file(input);
  tvar::PvarScheme scheme;
  if (scheme_name == "nested") {
    scheme = tvar::PvarScheme::nested(levels);
  } else if (scheme_name == "mesh-sweep") {
    scheme = tvar::PvarScheme::mesh_sweep(deltas);
  } else if (scheme_name == "mesh-schedule") {
    scheme = tvar::PvarScheme::mesh_schedule(deltas);
  } else if (scheme_name == "log-schedule") {
    scheme = tvar::PvarScheme::log_schedule(path.duration(), levels);
  } else if (scheme_name == "log-squared-schedule") {
    scheme = tvar::PvarScheme::log_squared_schedule(path.duration(), levels);
  } else {
    throw tvar::ConfigError("unknown scheme '" + scheme_name + "'");
  }
  const auto curve = tvar::pvar_curve(path, p, scheme);
  std::ostringstream tsv;
  curve.write_tsv(tsv);
  if (out.empty())
    std::cout << tsv.str();
  else
    atomic_write(out, tsv.str());
  return kExitOk;
}

int cmd_integrate(const std::string& y_file, const std::string& x_file, double c,
                  bool has_c, const std::string& out) {
  const auto y = tvar::read_path_csv_file(y_file);
  auto x = tvar::read_path_csv_file(x_file);
  if (has_c) x = tvar::truncated_path(x, c).truncated;
  const auto integral = tvar::stieltjes_left(y, x);
  nlohmann::json j;
  j["value"] = integral.value;
  j["integrator_tv"] = integral.integrator_tv;
  if (has_c) j["c"] = c;
  const std::string text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    atomic_write(out, text);
  return kExitOk;
}

int cmd_experiment(const std::string& config_file, const std::string& out) {
  const auto config = tvar::ExperimentConfig::from_json(slurp(config_file));
  const auto report = tvar::run_experiment(config);
  std::ostringstream tsv;
  report.write_tsv(tsv);
  if (out.empty()) {
    std::cout << report.to_json() << '\n' << tsv.str();
  } else {
    atomic_write(out + ".json", report.to_json() + "\n");
    atomic_write(out + ".tsv", tsv.str());
  }
  if (report.guard_warning)
    std::cerr << "warning: some c below 3 * median |dX|; discrete TV^c may not "
                 "track the continuous-time functional\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"truncated-variation decomposition, p-variation and pathwise "
               "Stieltjes integration toolkit"};
  app.require_subcommand(1);

  GenerateOpts gen;
  auto* generate = app.add_subcommand("generate", "simulate a sample path");
  generate->add_option("--kind", gen.kind, "wiener | compound_poisson | jump_diffusion");
  generate->add_option("--drift", gen.drift, "drift per unit time");
  generate->add_option("--sigma", gen.sigma, "volatility per sqrt(time)");
  generate->add_option("--jump-rate", gen.lambda, "jump intensity per unit time");
  generate->add_option("--jump-mean", gen.jump_mean);
  generate->add_option("--jump-sd", gen.jump_sd);
  generate->add_option("--t", gen.horizon, "time horizon");
  generate->add_option("--n", gen.steps, "number of grid steps");
  generate->add_option("--seed", gen.seed);
  generate->add_option("--config", gen.config_file, "generator config JSON (overrides flags)");
  generate->add_option("--out", gen.out, "output CSV path")->required();

  std::string dec_in, dec_out;
  double dec_c = 0.0;
  auto* decompose = app.add_subcommand("decompose", "split a path into trend + noise at level c");
  decompose->add_option("--in", dec_in)->required()->check(CLI::ExistingFile);
  decompose->add_option("--c", dec_c)->required();
  decompose->add_option("--out", dec_out, "output file prefix")->required();

  std::string pv_in, pv_scheme = "nested", pv_out;
  double pv_p = 2.0;
  int pv_levels = 10;
  std::vector<double> pv_deltas;
  auto* pvar = app.add_subcommand("pvar", "p-variation curve of a path");
  pvar->add_option("--in", pv_in)->required()->check(CLI::ExistingFile);
  pvar->add_option("--p", pv_p, "variation exponent");
  pvar->add_option("--scheme", pv_scheme,
                   "nested | mesh-sweep | mesh-schedule | log-schedule | log-squared-schedule");
  pvar->add_option("--levels", pv_levels, "levels (nested) or stages (log schedules)");
  pvar->add_option("--delta", pv_deltas, "mesh bounds for mesh-sweep/mesh-schedule");
  pvar->add_option("--out", pv_out, "output TSV (stdout if omitted)");

  std::string int_y, int_x, int_out;
  double int_c = 0.0;
  auto* integrate = app.add_subcommand("integrate", "left-point Stieltjes integral of Y against X");
  integrate->add_option("--y", int_y)->required()->check(CLI::ExistingFile);
  integrate->add_option("--x", int_x)->required()->check(CLI::ExistingFile);
  auto* c_opt = integrate->add_option("--c", int_c, "truncate the integrator at level c first");
  integrate->add_option("--out", int_out, "output JSON (stdout if omitted)");

  std::string exp_config, exp_out;
  auto* experiment = app.add_subcommand("experiment", "run a Monte Carlo limit experiment");
  experiment->add_option("--config", exp_config)->required()->check(CLI::ExistingFile);
  experiment->add_option("--out", exp_out, "output file prefix (stdout if omitted)");

  auto* selftest = app.add_subcommand("selftest", "run reduced-size invariant and oracle suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (decompose->parsed()) return cmd_decompose(dec_in, dec_c, dec_out);
    if (pvar->parsed())
      return cmd_pvar(pv_in, pv_p, pv_scheme, pv_levels, pv_deltas, pv_out);
    if (integrate->parsed())
      return cmd_integrate(int_y, int_x, int_c, c_opt->count() > 0, int_out);
    if (experiment->parsed()) return cmd_experiment(exp_config, exp_out);
    if (selftest->parsed())
      return tvar::selftest(std::cout) ? kExitOk : kExitSelftest;
  } catch (const tvar::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const tvar::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const tvar::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitConfig;
}
