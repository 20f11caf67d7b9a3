#include "tvar/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <nlohmann/json.hpp>

namespace tvar {

std::string to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::wiener: return "wiener";
    case ProcessKind::compound_poisson: return "compound_poisson";
    case ProcessKind::jump_diffusion: return "jump_diffusion";
  }
  throw ConfigError("unknown process kind");
}

ProcessKind process_kind_from_string(const std::string& name) {
  if (name == "wiener") return ProcessKind::wiener;
  if (name == "compound_poisson") return ProcessKind::compound_poisson;
  if (name == "jump_diffusion") return ProcessKind::jump_diffusion;
  throw ConfigError("unknown process kind '" + name + "'");
}

void GeneratorConfig::check() const {
  if (!(volatility >= 0)) throw ConfigError("volatility must be >= 0");
  if (!(jump_rate >= 0)) throw ConfigError("jump_rate must be >= 0");
  if (!(horizon > 0)) throw ConfigError("horizon must be > 0");
  if (steps < 1) throw ConfigError("steps must be >= 1");
  if (!(jump_sd >= 0)) throw ConfigError("jump_sd must be >= 0");
  if (!std::isfinite(drift) || !std::isfinite(jump_mean))
    throw ConfigError("drift and jump_mean must be finite");
  if (kind == ProcessKind::wiener && jump_rate != 0.0)
    throw ConfigError("wiener paths have no jumps; use jump_diffusion");
  if (kind == ProcessKind::compound_poisson && (volatility != 0.0 || drift != 0.0))
    throw ConfigError("compound_poisson paths have no continuous part");
}

std::string GeneratorConfig::to_json() const {
  nlohmann::json j;
  j["kind"] = to_string(kind);
  j["drift"] = drift;
  j["volatility"] = volatility;
  j["jump_rate"] = jump_rate;
  j["jump_mean"] = jump_mean;
  j["jump_sd"] = jump_sd;
  j["horizon"] = horizon;
  j["steps"] = steps;
  j["seed"] = seed;
  return j.dump();
}

namespace {

GeneratorConfig config_from_json_obj(const nlohmann::json& j) {
  GeneratorConfig c;
  c.kind = process_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("drift")) c.drift = j["drift"].get<double>();
  if (j.contains("volatility")) c.volatility = j["volatility"].get<double>();
  if (j.contains("jump_rate")) c.jump_rate = j["jump_rate"].get<double>();
  if (j.contains("jump_mean")) c.jump_mean = j["jump_mean"].get<double>();
  if (j.contains("jump_sd")) c.jump_sd = j["jump_sd"].get<double>();
  if (j.contains("horizon")) c.horizon = j["horizon"].get<double>();
  if (j.contains("steps")) c.steps = j["steps"].get<std::size_t>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  c.check();
  return c;
}

}  // namespace

GeneratorConfig GeneratorConfig::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
  try {
    return config_from_json_obj(j);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad generator config: ") + e.what());
  }
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer applied to the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace {

constexpr std::uint64_t kDiffusionStream = 0x1d1f;
constexpr std::uint64_t kJumpStream = 0x2a2b;

// Continuous increments mu*dt + sigma*sqrt(dt)*Z, exact-in-law sampling.
std::vector<double> diffusion_increments(const GeneratorConfig& cfg,
                                         std::uint64_t seed) {
  const std::size_t n = cfg.steps;
  const double dt = cfg.horizon / static_cast<double>(n);
  std::vector<double> inc(n, 0.0);
  const double sd = cfg.volatility * std::sqrt(dt);
  std::mt19937_64 rng(mix_seed(seed, kDiffusionStream));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    double z = (sd > 0.0) ? normal(rng) : 0.0;
    inc[i] = cfg.drift * dt + sd * z;
  }
  return inc;
}

// Jump sizes accumulated per grid index (next grid point after the uniform
// jump time). Jumps sharing a grid point merge into one.
std::map<std::size_t, double> jump_increments(const GeneratorConfig& cfg,
                                              std::uint64_t seed) {
  std::map<std::size_t, double> jumps;
  if (cfg.jump_rate == 0.0) return jumps;
  const std::size_t n = cfg.steps;
  std::mt19937_64 rng(mix_seed(seed, kJumpStream));
  std::poisson_distribution<long> poisson(cfg.jump_rate * cfg.horizon);
  std::uniform_real_distribution<double> uniform(0.0, cfg.horizon);
  std::normal_distribution<double> size_dist(cfg.jump_mean, cfg.jump_sd);
  const long count = poisson(rng);
  std::vector<double> times(static_cast<std::size_t>(count));
  for (auto& t : times) t = uniform(rng);
  std::sort(times.begin(), times.end());
  for (double t : times) {
    // snap to the next grid point {i*T/n}
    auto idx = static_cast<std::size_t>(
        std::ceil(t * static_cast<double>(n) / cfg.horizon));
    idx = std::clamp<std::size_t>(idx, 1, n);
    jumps[idx] += size_dist(rng);
  }
  return jumps;
}

}  // namespace

GeneratedPath generate(const GeneratorConfig& config) {
  config.check();
  const std::size_t n = config.steps;
  const double dt = config.horizon / static_cast<double>(n);

  const bool has_diffusion = config.kind != ProcessKind::compound_poisson;
  const bool has_jumps = config.kind != ProcessKind::wiener;

  std::vector<double> cont_inc(n, 0.0);
  if (has_diffusion) cont_inc = diffusion_increments(config, config.seed);
  std::map<std::size_t, double> jump_inc;
  if (has_jumps) jump_inc = jump_increments(config, config.seed);

  GeneratedPath gp;
  gp.path.times.resize(n + 1);
  gp.path.values.resize(n + 1);
  gp.path.times[0] = 0.0;
  gp.path.values[0] = 0.0;
  // The jump level is accumulated separately and in the same order as
  // split_parts so the split reconstructs the path exactly.
  double cont_level = 0.0;
  double jump_level = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    cont_level += cont_inc[i - 1];
    if (auto it = jump_inc.find(i); it != jump_inc.end()) jump_level += it->second;
    gp.path.times[i] = static_cast<double>(i) * dt;
    gp.path.values[i] = cont_level + jump_level;
  }
  gp.true_qv_cont =
      has_diffusion ? config.volatility * config.volatility * config.horizon : 0.0;
  gp.drift_part = has_diffusion ? config.drift * config.horizon : 0.0;
  gp.jumps.reserve(jump_inc.size());
  for (const auto& [idx, size] : jump_inc)
    gp.jumps.push_back({gp.path.times[idx], size});
  return gp;
}

GeneratedPath generate(const GeneratorConfig& config, std::uint64_t replication) {
  GeneratorConfig derived = config;
  derived.seed = mix_seed(config.seed, replication);
  return generate(derived);
}

std::pair<SampledPath, SampledPath> split_parts(const GeneratedPath& gp) {
  SampledPath jump_path;
  jump_path.times = gp.path.times;
  jump_path.values.assign(gp.path.size(), 0.0);
  std::size_t next_jump = 0;
  double running = 0.0;
  for (std::size_t i = 0; i < gp.path.size(); ++i) {
    while (next_jump < gp.jumps.size() &&
           gp.jumps[next_jump].time <= gp.path.times[i]) {
      running += gp.jumps[next_jump].size;
      ++next_jump;
    }
    jump_path.values[i] = running;
  }
  SampledPath cont;
  cont.times = gp.path.times;
  cont.values.resize(gp.path.size());
  for (std::size_t i = 0; i < gp.path.size(); ++i)
    cont.values[i] = gp.path.values[i] - jump_path.values[i];
  return {std::move(cont), std::move(jump_path)};
}

}  // namespace tvar
