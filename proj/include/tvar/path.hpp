#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "tvar/errors.hpp"

namespace tvar {

// A sampled path on a strictly increasing time grid, interpreted as the
// right-continuous step function t -> value at the last grid point <= t.
// Immutable after construction.
struct SampledPath {
  std::vector<double> times;
  std::vector<double> values;

  std::size_t size() const { return times.size(); }
  double duration() const { return times.back() - times.front(); }

  bool same_grid(const SampledPath& other) const;
  bool operator==(const SampledPath& other) const = default;
};

// Validates raw data and returns a SampledPath.
// Throws ValidationError (non-increasing times, length mismatch, non-finite).
SampledPath validate_path(std::vector<double> times, std::vector<double> values);

// Sub-path of grid points in [a, b]. Throws DomainError if a >= b or if no
// grid point lies in the window.
SampledPath restrict(const SampledPath& path, double a, double b);

// A strictly increasing subsequence of grid indices of a path of length
// path_length.
struct Partition {
  std::size_t path_length = 0;
  std::vector<std::size_t> indices;

  static Partition full(std::size_t n);

  // max gap in time between consecutive chosen indices
  double mesh(const SampledPath& path) const;

  void check(const SampledPath& path) const;  // throws DomainError
};

// Nested dyadic partitions, level k = 1..levels selecting indices
// round(j*(n-1)/2^k), j = 0..2^k, deduplicated. Each level's index set
// contains the previous one's.
std::vector<Partition> dyadic_partitions(const SampledPath& path, int levels);

// CSV with header "time,value"; values printed with 17 significant digits so
// write/read round-trips exactly. Throws ParseError with a row number.
SampledPath read_path_csv(std::istream& in);
void write_path_csv(const SampledPath& path, std::ostream& out);

SampledPath read_path_csv_file(const std::string& filename);
void write_path_csv_file(const SampledPath& path, const std::string& filename);

// JSON form {"times":[...],"values":[...]}.
std::string path_to_json(const SampledPath& path);
SampledPath path_from_json(const std::string& text);

// Shortest-exact decimal form used across all text output.
std::string format_double(double x);

}  // namespace tvar
