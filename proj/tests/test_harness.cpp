#include <cmath>
#include <sstream>

#include <doctest.h>

#include "tvar/harness.hpp"
#include "tvar/stieltjes.hpp"
#include "tvar/truncation.hpp"

using namespace tvar;

namespace {

ExperimentConfig small_wiener_config() {
  ExperimentConfig config;
  config.x.kind = ProcessKind::wiener;
  config.x.volatility = 1.0;
  config.x.steps = 1 << 10;
  config.c_values = {0.4, 0.2, 0.1};
  config.replications = 20;
  config.base_seed = 808;
  config.target = TargetKind::ito_plus_bracket;
  return config;
}

}  // namespace

TEST_CASE("experiment config json round-trip and validation") {
  auto config = small_wiener_config();
  const auto back = ExperimentConfig::from_json(config.to_json());
  CHECK(back.to_json() == config.to_json());
  CHECK(!back.y.has_value());

  config.y = config.x;
  config.y->kind = ProcessKind::compound_poisson;
  config.y->volatility = 0;
  config.y->jump_rate = 2.0;
  config.y->jump_sd = 1.0;
  const auto back2 = ExperimentConfig::from_json(config.to_json());
  CHECK(back2.y.has_value());

  auto bad = small_wiener_config();
  bad.c_values = {0.1, 0.2};
  CHECK_THROWS_AS(bad.check(), ConfigError);
  bad.c_values = {0.1, -0.2};
  CHECK_THROWS_AS(bad.check(), ConfigError);
  bad.c_values = {};
  CHECK_THROWS_AS(bad.check(), ConfigError);
  bad = small_wiener_config();
  bad.replications = 0;
  CHECK_THROWS_AS(bad.check(), ConfigError);
}

TEST_CASE("continuous limit: drift-only path, error shrinks linearly in c") {
  ExperimentConfig config;
  config.x.kind = ProcessKind::wiener;
  config.x.drift = 1.0;
  config.x.volatility = 0.0;
  config.x.steps = 1 << 10;
  config.c_values = {0.4, 0.2, 0.1, 0.05};
  config.replications = 1;
  config.target = TargetKind::ito_plus_bracket;
  const auto report = run_continuous_limit(config);
  REQUIRE(report.rows.size() == 4);
  double prev = 1e300;
  for (const auto& row : report.rows) {
    const double err = row.stats.at("mean_abs_err");
    CHECK(err < prev);
    prev = err;
  }
  // deterministic line: integral error of a c-truncation is at most c * TV
  CHECK(report.rows.back().stats.at("mean_abs_err") < 0.06);
}

TEST_CASE("continuous limit: degenerate c bigger than the path range") {
  ExperimentConfig config = small_wiener_config();
  config.c_values = {1e6};
  config.replications = 3;
  const auto report = run_continuous_limit(config);
  // X^c constant, observed integral 0, so mean |err| = mean |reference|
  CHECK(report.rows[0].stats.at("mean_abs_err") ==
        doctest::Approx(report.rows[0].stats.at("mean_abs_ref")).epsilon(1e-9));
  CHECK(report.rows[0].stats.at("mean_tvc") == 0.0);
}

TEST_CASE("continuous limit rejects jumpy generators") {
  ExperimentConfig config = small_wiener_config();
  config.x.kind = ProcessKind::jump_diffusion;
  config.x.jump_rate = 1.0;
  config.x.jump_sd = 1.0;
  CHECK_THROWS_AS(run_continuous_limit(config), ConfigError);
}

TEST_CASE("jump limit reduces to continuous semantics on jump-free input") {
  ExperimentConfig config = small_wiener_config();
  config.replications = 5;
  const auto cont = run_continuous_limit(config);
  config.target = TargetKind::ito_plus_cont_bracket;
  const auto jump = run_jump_limit(config);
  for (std::size_t i = 0; i < cont.rows.size(); ++i) {
    CHECK(cont.rows[i].stats.at("mean_err") ==
          doctest::Approx(jump.rows[i].stats.at("mean_err")).epsilon(1e-12).scale(1.0));
    CHECK(jump.rows[i].stats.at("mean_jump_cov") == 0.0);
  }
}

TEST_CASE("jump limit on compound poisson tracks the jump-sum reference") {
  ExperimentConfig config;
  config.x.kind = ProcessKind::compound_poisson;
  config.x.jump_rate = 5.0;
  config.x.jump_mean = 0.0;
  config.x.jump_sd = 1.0;
  config.x.steps = 1 << 10;
  config.c_values = {0.1, 0.01, 0.001};
  config.replications = 20;
  config.base_seed = 99;
  config.target = TargetKind::ito_plus_cont_bracket;
  const auto report = run_jump_limit(config);
  double prev = 1e300;
  for (const auto& row : report.rows) {
    const double err = row.stats.at("mean_abs_err");
    CHECK(err <= prev + 1e-12);
    prev = err;
  }
  // the truncated jump covariation approaches sum dY dX as c decreases
  const auto& last = report.rows.back().stats;
  CHECK(std::abs(last.at("mean_jump_cov_trunc") - last.at("mean_jump_cov")) < 0.05);
}

TEST_CASE("decomposition study shape and saturation") {
  ExperimentConfig config;
  config.x.kind = ProcessKind::wiener;
  config.x.volatility = 1.0;
  config.x.steps = 1 << 12;
  config.c_values = {0.1};
  config.replications = 3;
  config.base_seed = 17;
  config.target = TargetKind::decomposition_tv_growth;
  const auto report = run_decomposition_study(config);
  REQUIRE(report.rows.size() == 12);
  CHECK(report.param_name == "level");

  // trend p=1 curve saturates at TV^c; noise p=1 curve keeps growing
  const auto& last = report.rows.back().stats;
  CHECK(last.at("tv_trend") == doctest::Approx(last.at("tvc")).epsilon(1e-9));
  CHECK(last.at("tv_noise") > 4.0 * report.rows[3].stats.at("tv_noise"));

  // trend p=2 curve decays toward 0 under refinement
  CHECK(last.at("p2_trend") < report.rows[3].stats.at("p2_trend"));

  ExperimentConfig bad = config;
  bad.x.kind = ProcessKind::compound_poisson;
  bad.x.volatility = 0;
  bad.x.jump_rate = 1.0;
  CHECK_THROWS_AS(run_decomposition_study(bad), ConfigError);
}

TEST_CASE("reports are deterministic and well-formed") {
  const auto config = small_wiener_config();
  const auto a = run_experiment(config);
  const auto b = run_experiment(config);
  CHECK(a.to_json() == b.to_json());

  std::ostringstream tsv_a, tsv_b;
  a.write_tsv(tsv_a);
  b.write_tsv(tsv_b);
  CHECK(tsv_a.str() == tsv_b.str());
  CHECK(tsv_a.str().starts_with("c\tmean_err\tstd_err\tmean_tvc\n"));

  // rows ordered by c descending, standard deviations nonnegative
  double prev_c = 1e300;
  for (const auto& row : a.rows) {
    CHECK(row.param < prev_c);
    prev_c = row.param;
    CHECK(row.stats.at("std_err") >= 0.0);
  }
}

TEST_CASE("selftest passes") {
  std::ostringstream log;
  CHECK(selftest(log));
  CHECK(log.str().find("FAIL") == std::string::npos);
}
