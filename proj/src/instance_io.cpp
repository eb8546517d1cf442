#include "maxisect/instance_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace maxisect {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool is_integral_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::int64_t parse_int(std::string_view s, std::size_t line) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("line " + std::to_string(line) + ": integer out of range: " +
                     std::string(s));
  }
  return v;
}

double parse_double(std::string_view s, std::size_t line) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw InputError("line " + std::to_string(line) + ": not a finite number: '" +
                     std::string(s) + "'");
  }
  return v;
}

}  // namespace

Instance parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_of;
  std::string line;
  std::size_t line_no = 0;
  bool integral = true;
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = content.find(',', start);
      const auto field = trim(content.substr(
          start, comma == std::string_view::npos ? std::string_view::npos
                                                 : comma - start));
      if (field.empty()) {
        throw InputError("line " + std::to_string(line_no) + ": empty field");
      }
      integral = integral && is_integral_literal(field);
      fields.emplace_back(field);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() % 2 != 0) {
      throw InputError("line " + std::to_string(line_no) +
                       ": odd number of fields (" + std::to_string(fields.size()) +
                       ")");
    }
    if (!rows.empty() && fields.size() != rows.front().size()) {
      throw InputError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(rows.front().size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    rows.push_back(std::move(fields));
    line_of.push_back(line_no);
  }
  if (rows.empty()) throw InputError("instance has no rectangles");

  auto convert = [&](auto parse) {
    using T = decltype(parse(std::string_view{}, 0));
    std::vector<std::vector<T>> out;
    out.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::vector<T> row;
      for (const auto& f : rows[i]) row.push_back(parse(f, line_of[i]));
      out.push_back(std::move(row));
    }
    return RectList<T>::from_rows(out);
  };
  if (integral) return convert(parse_int);
  return convert(parse_double);
}

Instance parse_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rects") || !doc["rects"].is_array()) {
    throw InputError("JSON instance needs a \"rects\" array");
  }
  const auto& rects = doc["rects"];
  bool integral = true;
  for (const auto& row : rects) {
    if (!row.is_array()) throw InputError("each rect must be an array of numbers");
    for (const auto& v : row) {
      if (!v.is_number()) throw InputError("rect coordinates must be numbers");
      if (v.is_number_unsigned() &&
          v.get<std::uint64_t>() >
              static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        throw InputError("integer coordinate out of range");
      }
      integral = integral && v.is_number_integer();
    }
  }
  auto convert = [&](auto tag) {
    using T = decltype(tag);
    std::vector<std::vector<T>> out;
    for (const auto& row : rects) out.push_back(row.get<std::vector<T>>());
    return RectList<T>::from_rows(out);
  };
  if (integral) return convert(std::int64_t{});
  return convert(double{});
}

Instance parse_instance(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  std::istringstream reread(text);
  if (first != std::string::npos && text[first] == '{') return parse_json(reread);
  return parse_csv(reread);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_instance(in);
}

const char* coordinate_kind(const Instance& instance) {
  return std::visit(
      [](const auto& list) {
        using T = typename std::decay_t<decltype(list)>::value_type;
        return CoordTraits<T>::kName;
      },
      instance);
}

template <class T>
void write_csv(std::ostream& out, const RectList<T>& list) {
  for (Index j = 0; j < list.size(); ++j) {
    const auto row = list.row(j);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if constexpr (std::is_floating_point_v<T>) {
        out << to_string(row[i]);
      } else {
        out << row[i];
      }
    }
    out << '\n';
  }
}

template void write_csv<std::int64_t>(std::ostream&, const RectList<std::int64_t>&);
template void write_csv<double>(std::ostream&, const RectList<double>&);

RectList<std::int64_t> generate(const GenParams& params) {
  if (params.n < 1) throw InputError("n must be positive");
  if (params.d < 1) throw InputError("d must be positive");
  if (params.lo > params.hi) throw InputError("empty coordinate range");
  if (!(params.dup_prob >= 0.0 && params.dup_prob <= 1.0)) {
    throw InputError("duplicate probability must lie in [0, 1]");
  }
  const int width = 2 * params.d;
  std::vector<std::int64_t> coords(static_cast<std::size_t>(params.n) * width);
  auto at = [&](Index j, int order) -> std::int64_t& {
    return coords[static_cast<std::size_t>(j) * width + order];
  };

  if (params.nested) {
    for (Index j = 0; j < params.n; ++j) {
      for (int t = 0; t < params.d; ++t) {
        at(j, 2 * t) = -(j + 1);
        at(j, 2 * t + 1) = j + 1;
      }
    }
    return RectList<std::int64_t>(params.d, std::move(coords));
  }

  std::mt19937_64 rng(params.seed);
  std::bernoulli_distribution reuse(params.dup_prob);
  auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  for (Index j = 0; j < params.n; ++j) {
    for (int t = 0; t < params.d; ++t) {
      Index lo_src = kNone;
      Index hi_src = kNone;
      if (j > 0 && reuse(rng)) lo_src = static_cast<Index>(uniform(0, j - 1));
      if (j > 0 && reuse(rng)) hi_src = static_cast<Index>(uniform(0, j - 1));
      std::int64_t lo;
      std::int64_t hi;
      if (lo_src == kNone && hi_src == kNone) {
        lo = uniform(params.lo, params.hi);
        hi = uniform(params.lo, params.hi);
        if (lo > hi) std::swap(lo, hi);
      } else if (hi_src == kNone) {
        lo = at(lo_src, 2 * t);
        hi = uniform(lo, params.hi);
      } else if (lo_src == kNone) {
        hi = at(hi_src, 2 * t + 1);
        lo = uniform(params.lo, hi);
      } else {
        lo = at(lo_src, 2 * t);
        hi = at(hi_src, 2 * t + 1);
        if (lo > hi) hi = at(lo_src, 2 * t + 1);
      }
      at(j, 2 * t) = lo;
      at(j, 2 * t + 1) = hi;
    }
  }
  return RectList<std::int64_t>(params.d, std::move(coords));
}

}  // namespace maxisect
