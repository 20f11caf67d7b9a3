#include "tvar/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tvar {

namespace {

void check_c(double c) {
  if (!std::isfinite(c) || c < 0.0)
    throw DomainError("truncation level c must be finite and >= 0");
}

// One step of the three coupled maximizations. Each functional is a maximum
// over index subsequences of sums of clipped increments; the state carries
// the best value achievable so far (u, d, t) together with the best
// "open start" offsets:
//   hu = max over s of (U_s - x_s)           next upward leg starts at s
//   ld = max over s of (D_s + x_s)           next downward leg starts at s
//   tp = max over s of (T_s + x_s),  tn = max over s of (T_s - x_s)
struct TvState {
  double u, d, t, hu, ld, tp, tn;

  explicit TvState(double x0)
      : u(0), d(0), t(0), hu(-x0), ld(x0), tp(x0), tn(-x0) {}

  void step(double x, double c) {
    u = std::max(u, hu + x - c);
    d = std::max(d, ld - x - c);
    t = std::max({t, tn + x - c, tp - x - c});
    hu = std::max(hu, u - x);
    ld = std::max(ld, d + x);
    tp = std::max(tp, t + x);
    tn = std::max(tn, t - x);
  }
};

}  // namespace

TruncatedVariations truncated_variations(const SampledPath& path, double c) {
  check_c(c);
  TvState s(path.values[0]);
  for (std::size_t k = 1; k < path.size(); ++k) s.step(path.values[k], c);
  return {s.u, s.d, s.t};
}

TruncatedVariations truncated_variations_bruteforce(const SampledPath& path,
                                                    double c) {
  check_c(c);
  const std::size_t n = path.size();
  if (n > 16) throw DomainError("bruteforce limited to paths of length <= 16");
  TruncatedVariations best;  // empty subsequence gives 0
  const auto& x = path.values;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    double utv = 0, dtv = 0, tv = 0;
    bool have_prev = false;
    double prev = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      if (have_prev) {
        const double d = x[i] - prev;
        utv += std::max(d - c, 0.0);
        dtv += std::max(-d - c, 0.0);
        tv += std::max(std::abs(d) - c, 0.0);
      }
      prev = x[i];
      have_prev = true;
    }
    best.utv = std::max(best.utv, utv);
    best.dtv = std::max(best.dtv, dtv);
    best.tv = std::max(best.tv, tv);
  }
  return best;
}

RunningTruncatedVariations running_truncated_variations(const SampledPath& path,
                                                        double c) {
  check_c(c);
  const std::size_t n = path.size();
  RunningTruncatedVariations out;
  out.utv.resize(n);
  out.dtv.resize(n);
  TvState s(path.values[0]);
  out.utv[0] = 0;
  out.dtv[0] = 0;
  for (std::size_t k = 1; k < n; ++k) {
    s.step(path.values[k], c);
    out.utv[k] = s.u;
    out.dtv[k] = s.d;
  }
  return out;
}

TruncationResult truncated_path(const SampledPath& path, double c) {
  const auto running = running_truncated_variations(path, c);
  const std::size_t n = path.size();
  SampledPath trunc;
  trunc.times = path.times;
  trunc.values.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    trunc.values[k] = path.values[0] + running.utv[k] - running.dtv[k];
  TruncationResult result;
  result.utv = running.utv[n - 1];
  result.dtv = running.dtv[n - 1];
  result.tv = truncated_variations(path, c).tv;
  result.truncated = std::move(trunc);
  return result;
}

std::pair<SampledPath, SampledPath> decompose(const SampledPath& path, double c) {
  auto result = truncated_path(path, c);
  SampledPath noise;
  noise.times = path.times;
  noise.values.resize(path.size());
  for (std::size_t k = 0; k < path.size(); ++k)
    noise.values[k] = path.values[k] - result.truncated.values[k];
  return {std::move(result.truncated), std::move(noise)};
}

}  // namespace tvar
