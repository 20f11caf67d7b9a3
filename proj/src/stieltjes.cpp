#include "tvar/stieltjes.hpp"

#include <algorithm>
#include <cmath>

namespace tvar {

namespace {

struct KahanAccumulator {
  double sum = 0.0;
  double comp = 0.0;
  void add(double term) {
    const double y = term - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
};

void require_same_grid(const SampledPath& a, const SampledPath& b,
                       const char* where) {
  if (!a.same_grid(b))
    throw GridMismatchError(std::string(where) + ": paths on different grids");
}

}  // namespace

IntegralValue stieltjes_left(const SampledPath& y, const SampledPath& x) {
  require_same_grid(y, x, "stieltjes_left");
  KahanAccumulator value, tv;
  for (std::size_t k = 1; k < x.size(); ++k) {
    const double dx = x.values[k] - x.values[k - 1];
    value.add(y.values[k - 1] * dx);
    tv.add(std::abs(dx));
  }
  return {value.sum, tv.sum};
}

CovariationValue discrete_bracket(const SampledPath& x, const SampledPath& y,
                                  const Partition& partition) {
  require_same_grid(x, y, "discrete_bracket");
  partition.check(x);
  KahanAccumulator value;
  for (std::size_t j = 1; j < partition.indices.size(); ++j) {
    const std::size_t a = partition.indices[j - 1];
    const std::size_t b = partition.indices[j];
    value.add((x.values[b] - x.values[a]) * (y.values[b] - y.values[a]));
  }
  return {value.sum, partition};
}

CovariationValue jump_covariation(const GeneratedPath& x, const GeneratedPath& y) {
  require_same_grid(x.path, y.path, "jump_covariation");
  KahanAccumulator value;
  std::size_t i = 0, j = 0;
  while (i < x.jumps.size() && j < y.jumps.size()) {
    if (x.jumps[i].time < y.jumps[j].time) {
      ++i;
    } else if (y.jumps[j].time < x.jumps[i].time) {
      ++j;
    } else {
      value.add(x.jumps[i].size * y.jumps[j].size);
      ++i;
      ++j;
    }
  }
  return {value.sum, Partition::full(x.path.size())};
}

CovariationValue jump_covariation(const GeneratedPath& x, const GeneratedPath& y,
                                  const SampledPath& x_truncated) {
  require_same_grid(x.path, y.path, "jump_covariation");
  require_same_grid(x.path, x_truncated, "jump_covariation");
  KahanAccumulator value;
  std::size_t j = 0;
  for (const auto& jump : x.jumps) {
    while (j < y.jumps.size() && y.jumps[j].time < jump.time) ++j;
    if (j >= y.jumps.size() || y.jumps[j].time != jump.time) continue;
    const auto it = std::lower_bound(x_truncated.times.begin(),
                                     x_truncated.times.end(), jump.time);
    const auto k = static_cast<std::size_t>(it - x_truncated.times.begin());
    // jump times are grid-aligned and never at index 0
    const double dxc = x_truncated.values[k] - x_truncated.values[k - 1];
    value.add(y.jumps[j].size * dxc);
  }
  return {value.sum, Partition::full(x.path.size())};
}

IntegralValue ito_reference_integral(const SampledPath& y, const SampledPath& x) {
  return stieltjes_left(y, x);
}

}  // namespace tvar
