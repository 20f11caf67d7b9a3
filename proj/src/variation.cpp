#include "tvar/variation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <ostream>

#include "tvar/truncation.hpp"

namespace tvar {

namespace {

double kahan_sum(const std::vector<double>& terms) {
  double sum = 0.0, comp = 0.0;
  for (double t : terms) {
    const double y = t - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum;
}

}  // namespace

double pvar_sum(const SampledPath& path, const Partition& partition, double p) {
  if (!(p > 0)) throw DomainError("pvar_sum: need p > 0");
  partition.check(path);
  std::vector<double> terms;
  terms.reserve(partition.indices.size());
  for (std::size_t j = 1; j < partition.indices.size(); ++j) {
    const double d = path.values[partition.indices[j]] -
                     path.values[partition.indices[j - 1]];
    if (d != 0.0) terms.push_back(std::pow(std::abs(d), p));
  }
  return kahan_sum(terms);
}

double pvar_mesh_bounded(const SampledPath& path, double p, double delta) {
  if (!(p > 0)) throw DomainError("pvar_mesh_bounded: need p > 0");
  const std::size_t n = path.size();
  if (n > 5000)
    throw DomainError("pvar_mesh_bounded: path too long (limit 5000, quadratic cost)");
  if (n == 1) return 0.0;
  constexpr double kUnreachable = -std::numeric_limits<double>::infinity();
  std::vector<double> best(n, kUnreachable);
  best[0] = 0.0;
  std::size_t window_start = 0;
  for (std::size_t j = 1; j < n; ++j) {
    while (path.times[j] - path.times[window_start] > delta) ++window_start;
    for (std::size_t i = window_start; i < j; ++i) {
      if (best[i] == kUnreachable) continue;
      const double cand =
          best[i] + std::pow(std::abs(path.values[j] - path.values[i]), p);
      best[j] = std::max(best[j], cand);
    }
  }
  if (best[n - 1] == kUnreachable)
    throw DomainError("pvar_mesh_bounded: no admissible partition, delta too small");
  return best[n - 1];
}

PvarScheme PvarScheme::nested(int levels) {
  PvarScheme s;
  s.kind = Kind::nested;
  s.levels = levels;
  return s;
}

PvarScheme PvarScheme::mesh_sweep(std::vector<double> deltas) {
  PvarScheme s;
  s.kind = Kind::mesh_sweep;
  s.deltas = std::move(deltas);
  return s;
}

PvarScheme PvarScheme::mesh_schedule(std::vector<double> deltas) {
  PvarScheme s;
  s.kind = Kind::mesh_schedule;
  s.deltas = std::move(deltas);
  return s;
}

PvarScheme PvarScheme::log_schedule(double horizon, int stages) {
  std::vector<double> deltas;
  for (int k = 1; k <= stages; ++k) deltas.push_back(horizon / std::log(k + 2.0));
  return mesh_schedule(std::move(deltas));
}

PvarScheme PvarScheme::log_squared_schedule(double horizon, int stages) {
  std::vector<double> deltas;
  for (int k = 1; k <= stages; ++k) {
    const double l = std::log(k + 2.0);
    deltas.push_back(horizon / (l * l));
  }
  return mesh_schedule(std::move(deltas));
}

void PvarCurve::write_tsv(std::ostream& out) const {
  for (std::size_t i = 0; i < params.size(); ++i)
    out << format_double(params[i]) << '\t' << format_double(sums[i]) << '\n';
}

PvarCurve pvar_curve(const SampledPath& path, double p, const PvarScheme& scheme) {
  PvarCurve curve;
  curve.p = p;
  switch (scheme.kind) {
    case PvarScheme::Kind::mesh_sweep:
      for (std::size_t i = 0; i < scheme.deltas.size(); ++i) {
        if (i > 0 && !(scheme.deltas[i] < scheme.deltas[i - 1]))
          throw DomainError("mesh_sweep deltas must be strictly decreasing");
        curve.params.push_back(scheme.deltas[i]);
        curve.sums.push_back(pvar_mesh_bounded(path, p, scheme.deltas[i]));
      }
      break;
    case PvarScheme::Kind::mesh_schedule:
      for (std::size_t i = 0; i < scheme.deltas.size(); ++i) {
        curve.params.push_back(static_cast<double>(i + 1));  // stage index
        curve.sums.push_back(pvar_mesh_bounded(path, p, scheme.deltas[i]));
      }
      break;
    case PvarScheme::Kind::nested: {
      const auto partitions = dyadic_partitions(path, scheme.levels);
      for (int k = 0; k < scheme.levels; ++k) {
        curve.params.push_back(static_cast<double>(k + 1));
        curve.sums.push_back(pvar_sum(path, partitions[static_cast<std::size_t>(k)], p));
      }
      break;
    }
  }
  return curve;
}

double modulus_of_continuity(const SampledPath& path, double h) {
  if (!(h >= 0)) throw DomainError("modulus_of_continuity: need h >= 0");
  // sliding window [t_j - h, t_j] with monotonic deques for window min/max
  std::deque<std::size_t> minq, maxq;
  double omega = 0.0;
  std::size_t start = 0;
  for (std::size_t j = 0; j < path.size(); ++j) {
    while (!minq.empty() && path.values[minq.back()] >= path.values[j]) minq.pop_back();
    minq.push_back(j);
    while (!maxq.empty() && path.values[maxq.back()] <= path.values[j]) maxq.pop_back();
    maxq.push_back(j);
    while (path.times[j] - path.times[start] > h) {
      if (minq.front() == start) minq.pop_front();
      if (maxq.front() == start) maxq.pop_front();
      ++start;
    }
    omega = std::max(omega, path.values[maxq.front()] - path.values[minq.front()]);
  }
  return omega;
}

InequalityReport check_pvar_triangle(const SampledPath& f, const SampledPath& g,
                                     const Partition& partition, double p) {
  if (!(p >= 1)) throw DomainError("check_pvar_triangle: need p >= 1");
  if (!f.same_grid(g)) throw GridMismatchError("check_pvar_triangle: different grids");
  SampledPath sum;
  sum.times = f.times;
  sum.values.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    sum.values[i] = f.values[i] + g.values[i];
  InequalityReport report;
  report.lhs = std::pow(pvar_sum(sum, partition, p), 1.0 / p);
  report.rhs = std::pow(pvar_sum(f, partition, p), 1.0 / p) +
               std::pow(pvar_sum(g, partition, p), 1.0 / p);
  report.holds = report.lhs <= report.rhs + 1e-9;
  return report;
}

InequalityReport check_pvar_bound_for_truncated(const SampledPath& path, double c,
                                                const Partition& partition,
                                                double p) {
  if (!(p > 1)) throw DomainError("check_pvar_bound_for_truncated: need p > 1");
  const auto result = truncated_path(path, c);
  InequalityReport report;
  report.lhs = pvar_sum(result.truncated, partition, p);
  const double omega = modulus_of_continuity(result.truncated, partition.mesh(path));
  report.rhs = std::pow(omega, p - 1.0) * result.tv;
  report.holds = report.lhs <= report.rhs + 1e-9;
  return report;
}

}  // namespace tvar
