#pragma once

// Instance files and the deterministic instance generator.
//
// CSV: headerless, one rectangle per line, 2d comma-separated fields laid
// out lo_1,hi_1,...,lo_d,hi_d. JSON: {"rects": [[lo_1, hi_1, ...], ...]}.
// A file whose fields are all integral is read with integer coordinates;
// otherwise every field is read as a double.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

#include "maxisect/core.hpp"

namespace maxisect {

using Instance = std::variant<RectList<std::int64_t>, RectList<double>>;

Instance parse_csv(std::istream& in);
Instance parse_json(std::istream& in);

/// Reads `path`, choosing JSON when the first non-blank character is '{'.
Instance load_instance(const std::string& path);
Instance parse_instance(std::istream& in);

const char* coordinate_kind(const Instance& instance);

template <class T>
void write_csv(std::ostream& out, const RectList<T>& list);

struct GenParams {
  Index n = 10;
  int d = 2;
  std::int64_t lo = 0;
  std::int64_t hi = 100;
  /// Probability that an endpoint reuses the same endpoint of a uniformly
  /// chosen earlier row, creating runs of equal values.
  double dup_prob = 0.0;
  /// Concentric boxes [-k, k]^d for k = 1..n instead of random ones.
  bool nested = false;
  std::uint64_t seed = 1;
};

/// Deterministic for fixed parameters. Rows are never empty: lo <= hi on
/// every axis. Throws InputError on invalid parameters.
RectList<std::int64_t> generate(const GenParams& params);

}  // namespace maxisect
