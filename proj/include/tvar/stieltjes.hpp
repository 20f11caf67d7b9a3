#pragma once

#include "tvar/generators.hpp"
#include "tvar/path.hpp"

namespace tvar {

struct IntegralValue {
  double value = 0.0;
  double integrator_tv = 0.0;  // sum |dX| over the window, diagnostic
};

struct CovariationValue {
  double value = 0.0;
  Partition partition;
};

// Left-point Riemann-Stieltjes sum sum_k Y_{t_{k-1}} (X_{t_k} - X_{t_{k-1}}).
// Exact (not approximate) for step-function integrators. Both paths must be
// on the same grid; throws GridMismatchError otherwise.
IntegralValue stieltjes_left(const SampledPath& y, const SampledPath& x);

// Realized covariation sum dX * dY over consecutive partition indices; the
// discrete surrogate for the quadratic bracket.
CovariationValue discrete_bracket(const SampledPath& x, const SampledPath& y,
                                  const Partition& partition);

// Sum over common jump times of (jump size of X) * (jump size of Y), from
// generator metadata.
CovariationValue jump_covariation(const GeneratedPath& x, const GeneratedPath& y);

// Same, with the integrating increments taken from x_truncated at x's
// metadata jump times (the [Y, X^c] jump sum).
CovariationValue jump_covariation(const GeneratedPath& x, const GeneratedPath& y,
                                  const SampledPath& x_truncated);

// Left-point Euler sum on the full grid; identical formula to stieltjes_left,
// the distinct name marks its role as the c-independent reference value in
// limit experiments.
IntegralValue ito_reference_integral(const SampledPath& y, const SampledPath& x);

}  // namespace tvar
