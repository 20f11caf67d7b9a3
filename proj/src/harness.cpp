#include "tvar/harness.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tvar/stieltjes.hpp"
#include "tvar/truncation.hpp"
#include "tvar/variation.hpp"

namespace tvar {

std::string to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::ito_plus_bracket: return "ito_plus_bracket";
    case TargetKind::ito_plus_cont_bracket: return "ito_plus_cont_bracket";
    case TargetKind::decomposition_tv_growth: return "decomposition_tv_growth";
  }
  throw ConfigError("unknown target kind");
}

TargetKind target_kind_from_string(const std::string& name) {
  if (name == "ito_plus_bracket") return TargetKind::ito_plus_bracket;
  if (name == "ito_plus_cont_bracket") return TargetKind::ito_plus_cont_bracket;
  if (name == "decomposition_tv_growth") return TargetKind::decomposition_tv_growth;
  throw ConfigError("unknown target kind '" + name + "'");
}

void ExperimentConfig::check() const {
  x.check();
  if (y) y->check();
  if (c_values.empty()) throw ConfigError("c_values must be nonempty");
  for (std::size_t i = 0; i < c_values.size(); ++i) {
    if (!(c_values[i] > 0)) throw ConfigError("c_values must be positive");
    if (i > 0 && !(c_values[i] < c_values[i - 1]))
      throw ConfigError("c_values must be strictly decreasing");
  }
  if (replications < 1) throw ConfigError("replications must be >= 1");
  if (steps && *steps < 1) throw ConfigError("steps must be >= 1");
}

std::string ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["x"] = nlohmann::json::parse(x.to_json());
  if (y)
    j["y"] = nlohmann::json::parse(y->to_json());
  else
    j["y"] = "same_as_x";
  j["c_values"] = c_values;
  j["replications"] = replications;
  j["base_seed"] = base_seed;
  j["target"] = to_string(target);
  if (steps) j["steps"] = *steps;
  return j.dump();
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
  ExperimentConfig c;
  try {
    c.x = GeneratorConfig::from_json(j.at("x").dump());
    if (j.contains("y") && !(j["y"].is_string() && j["y"] == "same_as_x"))
      c.y = GeneratorConfig::from_json(j["y"].dump());
    c.c_values = j.at("c_values").get<std::vector<double>>();
    c.replications = j.at("replications").get<std::size_t>();
    c.base_seed = j.at("base_seed").get<std::uint64_t>();
    c.target = target_kind_from_string(j.at("target").get<std::string>());
    if (j.contains("steps")) c.steps = j["steps"].get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad experiment config: ") + e.what());
  }
  c.check();
  return c;
}

std::string ExperimentReport::to_json() const {
  nlohmann::json j;
  j["config"] = nlohmann::json::parse(config_json);
  j["param_name"] = param_name;
  j["columns"] = columns;
  j["guard_warning"] = guard_warning;
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json r;
    r[param_name] = row.param;
    for (const auto& [key, value] : row.stats) r[key] = value;
    rows_json.push_back(std::move(r));
  }
  j["rows"] = std::move(rows_json);
  return j.dump(2);
}

void ExperimentReport::write_tsv(std::ostream& out) const {
  out << param_name;
  for (const auto& col : columns) out << '\t' << col;
  out << '\n';
  for (const auto& row : rows) {
    out << format_double(row.param);
    for (const auto& col : columns) out << '\t' << format_double(row.stats.at(col));
    out << '\n';
  }
}

namespace {

constexpr std::uint64_t kYSeedStream = 0x5959;
constexpr double kIdentityTol = 1e-9;

struct Stats {
  double mean = 0.0;
  double sd = 0.0;
};

Stats mean_and_sd(const std::vector<double>& xs) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    const double y = x - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  Stats st;
  st.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double sq = 0.0;
    for (double x : xs) sq += (x - st.mean) * (x - st.mean);
    st.sd = std::sqrt(sq / static_cast<double>(xs.size() - 1));
  }
  return st;
}

double mean_of(const std::vector<double>& xs) { return mean_and_sd(xs).mean; }

double median_abs_increment(const SampledPath& path) {
  std::vector<double> inc;
  inc.reserve(path.size());
  for (std::size_t k = 1; k < path.size(); ++k)
    inc.push_back(std::abs(path.values[k] - path.values[k - 1]));
  if (inc.empty()) return 0.0;
  const auto mid = inc.begin() + static_cast<std::ptrdiff_t>(inc.size() / 2);
  std::nth_element(inc.begin(), mid, inc.end());
  return *mid;
}

struct EffectiveConfigs {
  GeneratorConfig x;
  GeneratorConfig y;  // ignored when same_path
  bool same_path = false;
};

EffectiveConfigs effective_configs(const ExperimentConfig& config) {
  EffectiveConfigs eff;
  eff.x = config.x;
  eff.x.seed = config.base_seed;
  eff.same_path = !config.y.has_value();
  if (!eff.same_path) {
    eff.y = *config.y;
    eff.y.seed = mix_seed(config.base_seed, kYSeedStream);
    if (config.steps) eff.y.steps = *config.steps;
    if (eff.y.horizon != eff.x.horizon || eff.y.steps != eff.x.steps)
      throw ConfigError("X and Y generators must share horizon and steps");
  }
  if (config.steps) eff.x.steps = *config.steps;
  return eff;
}

// The discrete integration-by-parts identity holds exactly per path; a
// violation indicates a numerical defect, so it aborts the experiment.
void check_summation_by_parts(const SampledPath& y, const SampledPath& x) {
  const double lhs = stieltjes_left(y, x).value + stieltjes_left(x, y).value +
                     discrete_bracket(x, y, Partition::full(x.size())).value;
  const double rhs = y.values.back() * x.values.back() -
                     y.values.front() * x.values.front();
  if (std::abs(lhs - rhs) > kIdentityTol)
    throw Error("summation-by-parts identity violated: |" +
                format_double(lhs) + " - " + format_double(rhs) + "| > 1e-9");
}

ExperimentReport run_limit_experiment(const ExperimentConfig& config,
                                      bool continuous_case) {
  config.check();
  if (continuous_case) {
    if (config.x.kind != ProcessKind::wiener ||
        (config.y && config.y->kind != ProcessKind::wiener))
      throw ConfigError("continuous-case experiment requires jump-free (wiener) generators");
  }
  const auto eff = effective_configs(config);
  const std::size_t n_c = config.c_values.size();

  std::vector<std::vector<double>> errs(n_c), abs_errs(n_c), tvcs(n_c);
  std::vector<std::vector<double>> jump_cov_trunc(n_c);
  std::vector<double> abs_refs, jump_covs, closed_form_errs;
  bool guard_warning = false;

  for (std::size_t rep = 0; rep < config.replications; ++rep) {
    const GeneratedPath gx = generate(eff.x, rep);
    const GeneratedPath gy = eff.same_path ? gx : generate(eff.y, rep);
    check_summation_by_parts(gy.path, gx.path);

    const double ito = ito_reference_integral(gy.path, gx.path).value;
    double ref;
    if (continuous_case) {
      ref = ito + discrete_bracket(gx.path, gy.path,
                                   Partition::full(gx.path.size())).value;
    } else {
      const auto [x_cont, x_jump] = split_parts(gx);
      const auto [y_cont, y_jump] = split_parts(gy);
      ref = ito + discrete_bracket(x_cont, y_cont,
                                   Partition::full(gx.path.size())).value;
    }
    abs_refs.push_back(std::abs(ref));
    if (!continuous_case)
      jump_covs.push_back(jump_covariation(gx, gy).value);
    if (continuous_case && eff.same_path) {
      const double bracket =
          discrete_bracket(gx.path, gx.path, Partition::full(gx.path.size())).value;
      const double xt = gx.path.values.back();
      closed_form_errs.push_back(std::abs(ref - (0.5 * xt * xt + 0.5 * bracket)));
    }

    const double guard = 3.0 * median_abs_increment(gx.path);
    for (std::size_t ci = 0; ci < n_c; ++ci) {
      const double c = config.c_values[ci];
      if (c < guard) guard_warning = true;
      const TruncationResult trunc = truncated_path(gx.path, c);
      const double observed = stieltjes_left(gy.path, trunc.truncated).value;
      errs[ci].push_back(observed - ref);
      abs_errs[ci].push_back(std::abs(observed - ref));
      tvcs[ci].push_back(trunc.tv);
      if (!continuous_case)
        jump_cov_trunc[ci].push_back(jump_covariation(gx, gy, trunc.truncated).value);
    }
  }

  ExperimentReport report;
  report.config_json = config.to_json();
  report.param_name = "c";
  report.columns = {"mean_err", "std_err", "mean_tvc"};
  report.guard_warning = guard_warning;
  for (std::size_t ci = 0; ci < n_c; ++ci) {
    ReportRow row;
    row.param = config.c_values[ci];
    const Stats err = mean_and_sd(errs[ci]);
    row.stats["mean_err"] = err.mean;
    row.stats["std_err"] = err.sd;
    row.stats["mean_abs_err"] = mean_of(abs_errs[ci]);
    row.stats["mean_tvc"] = mean_of(tvcs[ci]);
    row.stats["mean_abs_ref"] = mean_of(abs_refs);
    if (!continuous_case) {
      row.stats["mean_jump_cov_trunc"] = mean_of(jump_cov_trunc[ci]);
      row.stats["mean_jump_cov"] = mean_of(jump_covs);
    }
    if (!closed_form_errs.empty())
      row.stats["mean_abs_closed_form_gap"] = mean_of(closed_form_errs);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace

ExperimentReport run_continuous_limit(const ExperimentConfig& config) {
  return run_limit_experiment(config, /*continuous_case=*/true);
}

ExperimentReport run_jump_limit(const ExperimentConfig& config) {
  return run_limit_experiment(config, /*continuous_case=*/false);
}

ExperimentReport run_decomposition_study(const ExperimentConfig& config) {
  config.check();
  if (config.x.kind != ProcessKind::wiener || config.y)
    throw ConfigError("decomposition study runs on a single wiener generator");
  auto eff = effective_configs(config);
  const double c = config.c_values.front();
  const std::size_t n = eff.x.steps + 1;

  int levels = 1;
  while ((1ull << levels) < n - 1) ++levels;

  const std::size_t n_rows = static_cast<std::size_t>(levels);
  std::vector<std::vector<double>> tv_noise(n_rows), tv_trend(n_rows),
      p2_x(n_rows), p2_trend(n_rows), p2_noise(n_rows);
  std::vector<double> tvc_values;
  std::vector<double> meshes(n_rows, 0.0);

  for (std::size_t rep = 0; rep < config.replications; ++rep) {
    const GeneratedPath gx = generate(eff.x, rep);
    const auto [trend, noise] = decompose(gx.path, c);
    tvc_values.push_back(truncated_variations(gx.path, c).tv);
    const auto partitions = dyadic_partitions(gx.path, levels);
    for (std::size_t k = 0; k < n_rows; ++k) {
      const auto& part = partitions[k];
      tv_noise[k].push_back(pvar_sum(noise, part, 1.0));
      tv_trend[k].push_back(pvar_sum(trend, part, 1.0));
      p2_x[k].push_back(pvar_sum(gx.path, part, 2.0));
      p2_trend[k].push_back(pvar_sum(trend, part, 2.0));
      p2_noise[k].push_back(pvar_sum(noise, part, 2.0));
      meshes[k] = part.mesh(gx.path);
    }
  }

  ExperimentReport report;
  report.config_json = config.to_json();
  report.param_name = "level";
  report.columns = {"mesh", "tv_noise", "tv_trend", "tvc", "p2_x", "p2_trend",
                    "p2_noise"};
  const double mean_tvc = mean_of(tvc_values);
  for (std::size_t k = 0; k < n_rows; ++k) {
    ReportRow row;
    row.param = static_cast<double>(k + 1);
    row.stats["mesh"] = meshes[k];
    row.stats["tv_noise"] = mean_of(tv_noise[k]);
    row.stats["tv_trend"] = mean_of(tv_trend[k]);
    row.stats["tvc"] = mean_tvc;
    row.stats["p2_x"] = mean_of(p2_x[k]);
    row.stats["p2_trend"] = mean_of(p2_trend[k]);
    row.stats["p2_noise"] = mean_of(p2_noise[k]);
    report.rows.push_back(std::move(row));
  }
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  switch (config.target) {
    case TargetKind::ito_plus_bracket: return run_continuous_limit(config);
    case TargetKind::ito_plus_cont_bracket: return run_jump_limit(config);
    case TargetKind::decomposition_tv_growth: return run_decomposition_study(config);
  }
  throw ConfigError("unknown target kind");
}

namespace {

SampledPath random_path(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> value_dist(lo, hi);
  SampledPath p;
  p.times.resize(n);
  p.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.times[i] = static_cast<double>(i);
    p.values[i] = value_dist(rng);
  }
  return p;
}

bool log_check(std::ostream& log, const char* name, bool ok) {
  log << (ok ? "ok   " : "FAIL ") << name << '\n';
  return ok;
}

}  // namespace

bool selftest(std::ostream& log) {
  bool all = true;
  std::mt19937_64 rng(20240817u);

  {  // oracle equivalence, fast vs exhaustive
    bool ok = true;
    std::uniform_int_distribution<std::size_t> len_dist(2, 10);
    for (int trial = 0; trial < 300 && ok; ++trial) {
      const auto p = random_path(rng, len_dist(rng), -2.0, 2.0);
      for (double c : {0.0, 0.3, 1.0}) {
        const auto fast = truncated_variations(p, c);
        const auto ref = truncated_variations_bruteforce(p, c);
        ok = ok && std::abs(fast.utv - ref.utv) <= kIdentityTol &&
             std::abs(fast.dtv - ref.dtv) <= kIdentityTol &&
             std::abs(fast.tv - ref.tv) <= kIdentityTol;
      }
    }
    all &= log_check(log, "truncated variation oracle equivalence", ok);
  }

  {  // truncated-path property suite on generated paths
    bool ok = true;
    const GeneratorConfig kinds[] = {
        {ProcessKind::wiener, 0.1, 1.0, 0, 0, 0, 1.0, 256, 1},
        {ProcessKind::compound_poisson, 0, 0, 5.0, 0, 1.0, 1.0, 256, 2},
        {ProcessKind::jump_diffusion, 0.1, 0.5, 3.0, 0, 1.0, 1.0, 256, 3},
    };
    for (const auto& cfg : kinds) {
      for (std::uint64_t rep = 0; rep < 30 && ok; ++rep) {
        const auto gp = generate(cfg, rep);
        double prev_tv = -1.0;
        for (double c : {1.0, 0.2, 0.05}) {
          const auto result = truncated_path(gp.path, c);
          const auto [trend, noise] = decompose(gp.path, c);
          double sup_noise = 0.0, min_noise = 0.0, max_noise = 0.0, tv_sum = 0.0;
          for (std::size_t k = 0; k < gp.path.size(); ++k) {
            sup_noise = std::max(sup_noise, std::abs(noise.values[k]));
            min_noise = std::min(min_noise, noise.values[k]);
            max_noise = std::max(max_noise, noise.values[k]);
            if (k > 0) {
              const double dxc = result.truncated.values[k] -
                                 result.truncated.values[k - 1];
              const double dx = gp.path.values[k] - gp.path.values[k - 1];
              tv_sum += std::abs(dxc);
              ok = ok && std::abs(dxc) <= std::abs(dx) + kIdentityTol;
            }
          }
          ok = ok && sup_noise <= c + kIdentityTol;                  // tube
          ok = ok && (max_noise - min_noise) <= c + kIdentityTol;    // increments
          ok = ok && std::abs(tv_sum - result.tv) <= kIdentityTol;   // TV identity
          ok = ok && std::abs(result.utv + result.dtv - result.tv) <= kIdentityTol;
          if (prev_tv >= 0) ok = ok && result.tv >= prev_tv - kIdentityTol;
          prev_tv = result.tv;
        }
      }
    }
    all &= log_check(log, "truncated path property suite", ok);
  }

  {  // summation by parts on random pairs
    bool ok = true;
    for (int trial = 0; trial < 50 && ok; ++trial) {
      const auto x = random_path(rng, 64, -2.0, 2.0);
      auto y = random_path(rng, 64, -2.0, 2.0);
      y.times = x.times;
      try {
        check_summation_by_parts(y, x);
      } catch (const Error&) {
        ok = false;
      }
    }
    all &= log_check(log, "summation-by-parts identity", ok);
  }

  {  // per-partition Minkowski inequality
    bool ok = true;
    for (int trial = 0; trial < 100 && ok; ++trial) {
      const auto f = random_path(rng, 32, -2.0, 2.0);
      auto g = random_path(rng, 32, -2.0, 2.0);
      g.times = f.times;
      for (double p : {1.0, 1.5, 2.0, 3.0})
        ok = ok && check_pvar_triangle(f, g, Partition::full(32), p).holds;
    }
    all &= log_check(log, "Minkowski per-partition inequality", ok);
  }

  {  // modulus bound for the truncated path
    bool ok = true;
    GeneratorConfig cfg{ProcessKind::wiener, 0, 1.0, 0, 0, 0, 1.0, 512, 9};
    for (std::uint64_t rep = 0; rep < 10 && ok; ++rep) {
      const auto gp = generate(cfg, rep);
      const auto partitions = dyadic_partitions(gp.path, 6);
      for (const auto& part : partitions)
        for (double c : {0.05, 0.2})
          for (double p : {1.5, 2.0, 3.0})
            ok = ok && check_pvar_bound_for_truncated(gp.path, c, part, p).holds;
    }
    all &= log_check(log, "modulus-of-continuity bound", ok);
  }

  return all;
}

}  // namespace tvar
