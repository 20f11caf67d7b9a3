#pragma once

#include <vector>

#include "tvar/path.hpp"

namespace tvar {

// Sum over consecutive partition indices of |dx|^p. Throws DomainError for
// p <= 0 or an invalid partition.
double pvar_sum(const SampledPath& path, const Partition& partition, double p);

// Exact maximum of pvar_sum over subsequences that start at index 0, end at
// the last index and have all consecutive time gaps <= delta. Dynamic
// programming over indices, O(n^2); paths longer than 5000 points are
// rejected. Throws DomainError (MeshTooSmall / PathTooLong / NonPositiveP).
double pvar_mesh_bounded(const SampledPath& path, double p, double delta);

// Evaluation scheme for a p-variation curve.
//  mesh_sweep:    pvar_mesh_bounded along a decreasing delta sequence
//  mesh_schedule: same, with delta_n indexed by refinement stage n
//  nested:        pvar_sum along nested dyadic partitions
struct PvarScheme {
  enum class Kind { mesh_sweep, mesh_schedule, nested };
  Kind kind = Kind::nested;
  std::vector<double> deltas;  // mesh_sweep / mesh_schedule
  int levels = 0;              // nested

  static PvarScheme nested(int levels);
  static PvarScheme mesh_sweep(std::vector<double> deltas);
  static PvarScheme mesh_schedule(std::vector<double> deltas);
  // delta_n = horizon/ln(n+2) resp. horizon/ln(n+2)^2, n = 1..stages
  static PvarScheme log_schedule(double horizon, int stages);
  static PvarScheme log_squared_schedule(double horizon, int stages);
};

// Curve of p-variation sums against the scheme parameter (delta or level).
// No extrapolation is performed; the curve itself is the result.
struct PvarCurve {
  double p = 0.0;
  std::vector<double> params;
  std::vector<double> sums;

  void write_tsv(std::ostream& out) const;  // param<TAB>sum
};

PvarCurve pvar_curve(const SampledPath& path, double p, const PvarScheme& scheme);

// omega(h) = max over grid pairs with |t_i - t_j| <= h of |x_i - x_j|.
// Throws DomainError for h < 0.
double modulus_of_continuity(const SampledPath& path, double h);

// Both sides of an inequality plus the verdict lhs <= rhs + 1e-9.
struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

// Per-partition Minkowski inequality
//   pvar_sum(f+g)^{1/p} <= pvar_sum(f)^{1/p} + pvar_sum(g)^{1/p},  p >= 1.
InequalityReport check_pvar_triangle(const SampledPath& f, const SampledPath& g,
                                     const Partition& partition, double p);

// Modulus bound for the truncated path, p > 1:
//   sum |dX^c|^p over the partition <= omega(mesh, X^c)^{p-1} * TV^c.
InequalityReport check_pvar_bound_for_truncated(const SampledPath& path, double c,
                                                const Partition& partition,
                                                double p);

}  // namespace tvar
