#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <doctest.h>

#include "tvar/truncation.hpp"

using namespace tvar;

namespace {

constexpr double kTol = 1e-9;

SampledPath make_path(std::vector<double> values) {
  std::vector<double> times(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) times[i] = static_cast<double>(i);
  return validate_path(std::move(times), std::move(values));
}

SampledPath random_path(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> values(n);
  for (auto& v : values) v = dist(rng);
  return make_path(std::move(values));
}

}  // namespace

TEST_CASE("truncated variations on simple paths") {
  const auto constant = make_path({1, 1, 1});
  for (double c : {0.0, 0.5, 2.0}) {
    const auto tv = truncated_variations(constant, c);
    CHECK(tv.utv == 0);
    CHECK(tv.dtv == 0);
    CHECK(tv.tv == 0);
  }

  const auto rise = make_path({0, 5});
  auto tv = truncated_variations(rise, 0.0);
  CHECK(tv.utv == doctest::Approx(5).epsilon(kTol));
  CHECK(tv.dtv == 0);
  CHECK(tv.tv == doctest::Approx(5).epsilon(kTol));
  tv = truncated_variations(rise, 1.0);
  CHECK(tv.utv == doctest::Approx(4).epsilon(kTol));
  CHECK(tv.dtv == 0);
  CHECK(tv.tv == doctest::Approx(4).epsilon(kTol));
}

TEST_CASE("truncated variations, worked example") {
  // expected values verified against the exhaustive oracle below
  const auto p = make_path({0, 3, 1, 4});
  const auto tv = truncated_variations(p, 1.0);
  CHECK(tv.utv == doctest::Approx(4).epsilon(kTol));
  CHECK(tv.dtv == doctest::Approx(1).epsilon(kTol));
  CHECK(tv.tv == doctest::Approx(5).epsilon(kTol));

  const auto oracle = truncated_variations_bruteforce(p, 1.0);
  CHECK(oracle.utv == doctest::Approx(4).epsilon(kTol));
  CHECK(oracle.dtv == doctest::Approx(1).epsilon(kTol));
  CHECK(oracle.tv == doctest::Approx(5).epsilon(kTol));
}

TEST_CASE("bruteforce reference cases") {
  const auto pair = make_path({0, 1});
  const auto tv = truncated_variations_bruteforce(pair, 0.5);
  CHECK(tv.utv == doctest::Approx(0.5).epsilon(kTol));
  CHECK(tv.dtv == 0);
  CHECK(tv.tv == doctest::Approx(0.5).epsilon(kTol));

  const auto zigzag = make_path({0, 1, 0, 1, 0});
  const auto tv0 = truncated_variations_bruteforce(zigzag, 0.0);
  CHECK(tv0.utv == doctest::Approx(2).epsilon(kTol));
  CHECK(tv0.dtv == doctest::Approx(2).epsilon(kTol));
  CHECK(tv0.tv == doctest::Approx(4).epsilon(kTol));

  std::vector<double> times(17), values(17, 0.0);
  for (int i = 0; i < 17; ++i) times[i] = i;
  CHECK_THROWS_AS(
      truncated_variations_bruteforce(validate_path(times, values), 0.0),
      DomainError);
}

TEST_CASE("fast implementation matches brute force on random paths") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<std::size_t> len(2, 10);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = random_path(rng, len(rng), -2.0, 2.0);
    for (double c : {0.0, 0.3, 1.0}) {
      const auto fast = truncated_variations(p, c);
      const auto ref = truncated_variations_bruteforce(p, c);
      CHECK(std::abs(fast.utv - ref.utv) <= kTol);
      CHECK(std::abs(fast.dtv - ref.dtv) <= kTol);
      CHECK(std::abs(fast.tv - ref.tv) <= kTol);
    }
  }
}

TEST_CASE("running truncated variations") {
  const auto p = make_path({0, 3, 1, 4});
  const auto running = running_truncated_variations(p, 1.0);
  CHECK(running.utv == std::vector<double>{0, 2, 2, 4});
  CHECK(running.dtv == std::vector<double>{0, 0, 1, 1});

  // each prefix value matches the brute force of that prefix
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto q = random_path(rng, 8, -2.0, 2.0);
    for (double c : {0.0, 0.4}) {
      const auto run = running_truncated_variations(q, c);
      for (std::size_t k = 0; k < q.size(); ++k) {
        SampledPath prefix{{q.times.begin(), q.times.begin() + k + 1},
                           {q.values.begin(), q.values.begin() + k + 1}};
        const auto ref = truncated_variations_bruteforce(prefix, c);
        CHECK(std::abs(run.utv[k] - ref.utv) <= kTol);
        CHECK(std::abs(run.dtv[k] - ref.dtv) <= kTol);
      }
    }
  }

  const auto mono = make_path({0, 1, 3, 6});
  const auto r = running_truncated_variations(mono, 0.0);
  CHECK(r.utv == std::vector<double>{0, 1, 3, 6});
  CHECK(r.dtv == std::vector<double>{0, 0, 0, 0});

  const auto any = make_path({0, 3, 1, 4});
  const auto large = running_truncated_variations(any, 4.0);  // c >= range
  CHECK(large.utv == std::vector<double>{0, 0, 0, 0});
  CHECK(large.dtv == std::vector<double>{0, 0, 0, 0});

  CHECK_THROWS_AS(running_truncated_variations(any, -1.0), DomainError);
}

TEST_CASE("truncated path, worked example") {
  const auto p = make_path({0, 3, 1, 4});
  const auto result = truncated_path(p, 1.0);
  CHECK(result.truncated.values == std::vector<double>{0, 2, 1, 3});

  double sup = 0.0, tv_sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    sup = std::max(sup, std::abs(p.values[k] - result.truncated.values[k]));
    if (k > 0)
      tv_sum += std::abs(result.truncated.values[k] - result.truncated.values[k - 1]);
  }
  CHECK(sup <= 1.0 + kTol);
  CHECK(tv_sum == doctest::Approx(5).epsilon(kTol));
  CHECK(tv_sum == doctest::Approx(result.tv).epsilon(kTol));
}

TEST_CASE("truncated path degenerate levels") {
  const auto p = make_path({0, 3, 1, 4});
  CHECK(truncated_path(p, 0.0).truncated == p);
  const auto flat = truncated_path(p, 10.0).truncated;
  for (double v : flat.values) CHECK(v == 0.0);
}

TEST_CASE("decompose reconstructs and bounds the noise") {
  const auto p = make_path({0, 3, 1, 4});

  auto [trend0, noise0] = decompose(p, 0.0);
  for (double v : noise0.values) CHECK(v == 0.0);

  auto [trend, noise] = decompose(p, 1.0);
  CHECK(noise.values == std::vector<double>{0, 1, 0, 1});
  for (std::size_t k = 0; k < p.size(); ++k)
    CHECK(trend.values[k] + noise.values[k] == p.values[k]);
}

TEST_CASE("property suite on random paths") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_path(rng, 40, -2.0, 2.0);
    double prev_tv = std::numeric_limits<double>::infinity();
    for (double c : {0.0, 0.05, 0.2, 1.0, 3.0}) {
      const auto result = truncated_path(p, c);
      const auto& xc = result.truncated.values;

      double sup = 0, noise_min = 0, noise_max = 0, tv_sum = 0;
      for (std::size_t k = 0; k < p.size(); ++k) {
        const double noise = p.values[k] - xc[k];
        sup = std::max(sup, std::abs(noise));
        noise_min = std::min(noise_min, noise);
        noise_max = std::max(noise_max, noise);
        if (k > 0) {
          const double dxc = xc[k] - xc[k - 1];
          const double dx = p.values[k] - p.values[k - 1];
          tv_sum += std::abs(dxc);
          // jump domination, per grid step
          CHECK(std::abs(dxc) <= std::abs(dx) + kTol);
        }
      }
      CHECK(sup <= c + kTol);                       // tube
      CHECK(noise_max - noise_min <= c + kTol);     // increment closeness
      CHECK(std::abs(tv_sum - result.tv) <= kTol);  // variation identity
      CHECK(result.tv <= prev_tv + kTol);           // monotone in c
      CHECK(std::abs(result.utv + result.dtv - result.tv) <= kTol);
      prev_tv = result.tv;
    }

    // prefix consistency: truncation of a prefix equals the prefix of the
    // truncation
    const auto full = truncated_path(p, 0.3).truncated;
    const std::size_t cut = 17;
    SampledPath prefix{{p.times.begin(), p.times.begin() + cut},
                       {p.values.begin(), p.values.begin() + cut}};
    const auto partial = truncated_path(prefix, 0.3).truncated;
    for (std::size_t k = 0; k < cut; ++k)
      CHECK(partial.values[k] == doctest::Approx(full.values[k]).epsilon(kTol));
  }
}

TEST_CASE("tv(0) equals the classical total variation") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_path(rng, 30, -2.0, 2.0);
    double classical = 0.0;
    for (std::size_t k = 1; k < p.size(); ++k)
      classical += std::abs(p.values[k] - p.values[k - 1]);
    CHECK(truncated_variations(p, 0.0).tv ==
          doctest::Approx(classical).epsilon(kTol));
  }
}

TEST_CASE("random perturbation search finds no smaller-variation candidate") {
  // coarse minimality check: any y with range(x - y) <= c has TV >= TV^c
  std::mt19937_64 rng(31415);
  std::uniform_real_distribution<double> offset(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_path(rng, 6, -2.0, 2.0);
    const double c = 0.5;
    const double tvc = truncated_variations(p, c).tv;
    for (int candidate = 0; candidate < 100; ++candidate) {
      double tv_y = 0.0;
      double prev = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) {
        const double y = p.values[k] - c * offset(rng);
        if (k > 0) tv_y += std::abs(y - prev);
        prev = y;
      }
      CHECK(tv_y >= tvc - kTol);
    }
  }
}

TEST_CASE("negative c rejected") {
  const auto p = make_path({0, 1});
  CHECK_THROWS_AS(truncated_variations(p, -0.1), DomainError);
  CHECK_THROWS_AS(truncated_path(p, -0.1), DomainError);
  CHECK_THROWS_AS(decompose(p, -0.1), DomainError);
}
