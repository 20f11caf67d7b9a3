#include "tvar/path.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tvar {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

bool SampledPath::same_grid(const SampledPath& other) const {
  return times == other.times;
}

SampledPath validate_path(std::vector<double> times, std::vector<double> values) {
  if (times.size() != values.size())
    throw ValidationError("length mismatch: " + std::to_string(times.size()) +
                          " times vs " + std::to_string(values.size()) + " values");
  if (times.empty()) throw ValidationError("empty path");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]))
      throw ValidationError("non-finite time at index " + std::to_string(i));
    if (!std::isfinite(values[i]))
      throw ValidationError("non-finite value at index " + std::to_string(i));
    if (i > 0 && times[i] <= times[i - 1])
      throw ValidationError("times not strictly increasing at index " +
                            std::to_string(i));
  }
  return SampledPath{std::move(times), std::move(values)};
}

SampledPath restrict(const SampledPath& path, double a, double b) {
  if (!(a < b)) throw DomainError("restrict: need a < b");
  auto lo = std::lower_bound(path.times.begin(), path.times.end(), a);
  auto hi = std::upper_bound(path.times.begin(), path.times.end(), b);
  if (lo >= hi) throw DomainError("restrict: empty window [" + format_double(a) +
                                  ", " + format_double(b) + "]");
  auto i = static_cast<std::size_t>(lo - path.times.begin());
  auto j = static_cast<std::size_t>(hi - path.times.begin());
  return SampledPath{{path.times.begin() + i, path.times.begin() + j},
                     {path.values.begin() + i, path.values.begin() + j}};
}

Partition Partition::full(std::size_t n) {
  Partition p;
  p.path_length = n;
  p.indices.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.indices[i] = i;
  return p;
}

double Partition::mesh(const SampledPath& path) const {
  check(path);
  double m = 0.0;
  for (std::size_t j = 1; j < indices.size(); ++j)
    m = std::max(m, path.times[indices[j]] - path.times[indices[j - 1]]);
  return m;
}

void Partition::check(const SampledPath& path) const {
  if (path_length != path.size())
    throw DomainError("partition built for a path of different length");
  if (indices.empty()) throw DomainError("empty partition");
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] >= path.size()) throw DomainError("partition index out of range");
    if (j > 0 && indices[j] <= indices[j - 1])
      throw DomainError("partition indices not strictly increasing");
  }
}

std::vector<Partition> dyadic_partitions(const SampledPath& path, int levels) {
  const std::size_t n = path.size();
  if (n < 2) throw DomainError("dyadic_partitions: need at least 2 grid points");
  if (levels < 1) throw DomainError("dyadic_partitions: need levels >= 1");
  std::vector<Partition> out;
  out.reserve(static_cast<std::size_t>(levels));
  for (int k = 1; k <= levels; ++k) {
    Partition part;
    part.path_length = n;
    const unsigned long long denom = 1ull << k;
    std::size_t prev = static_cast<std::size_t>(-1);
    for (unsigned long long j = 0; j <= denom; ++j) {
      // round half up, exact in integer arithmetic
      const unsigned long long idx = (2ull * j * (n - 1) + denom) / (2ull * denom);
      if (idx != prev) {
        part.indices.push_back(static_cast<std::size_t>(idx));
        prev = static_cast<std::size_t>(idx);
      }
    }
    out.push_back(std::move(part));
  }
  return out;
}

SampledPath read_path_csv(std::istream& in) {
  std::string line;
  long row = 0;
  if (!std::getline(in, line)) throw ParseError("empty input", 1);
  ++row;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "time,value")
    throw ParseError("expected header 'time,value', got '" + line + "'", row);
  std::vector<double> times, values;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("row " + std::to_string(row) + ": missing comma", row);
    std::size_t pos1 = 0, pos2 = 0;
    double t, v;
    try {
      t = std::stod(line.substr(0, comma), &pos1);
      v = std::stod(line.substr(comma + 1), &pos2);
    } catch (const std::exception&) {
      throw ParseError("row " + std::to_string(row) + ": bad number", row);
    }
    if (pos1 != comma || pos2 != line.size() - comma - 1)
      throw ParseError("row " + std::to_string(row) + ": trailing characters", row);
    times.push_back(t);
    values.push_back(v);
  }
  try {
    return validate_path(std::move(times), std::move(values));
  } catch (const ValidationError& e) {
    throw ParseError(std::string("invalid path data: ") + e.what());
  }
}

void write_path_csv(const SampledPath& path, std::ostream& out) {
  out << "time,value\n";
  for (std::size_t i = 0; i < path.size(); ++i)
    out << format_double(path.times[i]) << ',' << format_double(path.values[i])
        << '\n';
}

SampledPath read_path_csv_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw ParseError("cannot open " + filename);
  return read_path_csv(in);
}

void write_path_csv_file(const SampledPath& path, const std::string& filename) {
  std::ofstream out(filename);
  if (!out) throw ParseError("cannot open " + filename + " for writing");
  write_path_csv(path, out);
  if (!out) throw ParseError("write to " + filename + " failed");
}

std::string path_to_json(const SampledPath& path) {
  nlohmann::json j;
  j["times"] = path.times;
  j["values"] = path.values;
  return j.dump();
}

SampledPath path_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
  if (!j.contains("times") || !j.contains("values"))
    throw ParseError("JSON path needs 'times' and 'values'");
  return validate_path(j["times"].get<std::vector<double>>(),
                       j["values"].get<std::vector<double>>());
}

}  // namespace tvar
