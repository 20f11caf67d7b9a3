#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tvar/path.hpp"

namespace tvar {

enum class ProcessKind { wiener, compound_poisson, jump_diffusion };

std::string to_string(ProcessKind kind);
ProcessKind process_kind_from_string(const std::string& name);

// Monte Carlo generator configuration. Serializes to JSON with exactly these
// field names.
struct GeneratorConfig {
  ProcessKind kind = ProcessKind::wiener;
  double drift = 0.0;        // per unit time
  double volatility = 0.0;   // per sqrt(time)
  double jump_rate = 0.0;    // per unit time
  double jump_mean = 0.0;
  double jump_sd = 0.0;
  double horizon = 1.0;
  std::size_t steps = 1;
  std::uint64_t seed = 0;

  void check() const;  // throws ConfigError
  std::string to_json() const;
  static GeneratorConfig from_json(const std::string& text);
};

struct Jump {
  double time = 0.0;  // grid-aligned
  double size = 0.0;
};

// A generated path on the uniform grid {i*T/n} plus ground-truth metadata.
struct GeneratedPath {
  SampledPath path;
  double true_qv_cont = 0.0;  // sigma^2 * T for the continuous part
  std::vector<Jump> jumps;    // grid-aligned, one entry per jump grid time
  double drift_part = 0.0;    // mu * T
};

// Deterministic given the config: same config gives bit-identical output.
// Wiener: exact-increment sampling. Compound Poisson: Poisson(lambda*T) jump
// count, uniform times snapped to the next grid point, normal sizes; jumps
// landing on the same grid point are merged. Jump diffusion: sum of both with
// independent randomness streams.
GeneratedPath generate(const GeneratorConfig& config);

// Same, with the seed mixed with a replication index so replications are
// independent and insensitive to execution order.
GeneratedPath generate(const GeneratorConfig& config, std::uint64_t replication);

// (continuous part, running jump sum); the two add back to the path exactly.
std::pair<SampledPath, SampledPath> split_parts(const GeneratedPath& gp);

// splitmix64-style mixing of a seed with a stream/replication index.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace tvar
