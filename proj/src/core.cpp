#include "maxisect/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <type_traits>

namespace maxisect {

template <class V>
V checked_mul(V a, V b) {
  if constexpr (std::is_floating_point_v<V>) {
    return a * b;
  } else {
    V out;
    if (__builtin_mul_overflow(a, b, &out)) {
      throw std::overflow_error("volume overflows 128-bit integer");
    }
    return out;
  }
}

template __int128 checked_mul<__int128>(__int128, __int128);
template double checked_mul<double>(double, double);

std::string to_string(__int128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  // Work on the negated magnitude so INT128_MIN is representable.
  std::string digits;
  __int128 rest = negative ? v : -v;
  while (rest != 0) {
    digits.push_back(static_cast<char>('0' - static_cast<int>(rest % 10)));
    rest /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::string to_string(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

template <class T>
DRect<T>::DRect(std::vector<T> bounds) : bounds_(std::move(bounds)) {
  if (bounds_.empty() || bounds_.size() % 2 != 0) {
    throw InputError("a d-rectangle needs 2d > 0 coordinates, got " +
                     std::to_string(bounds_.size()));
  }
}

template <class T>
RectList<T>::RectList(int d, std::vector<T> coords)
    : d_(d), coords_(std::move(coords)) {
  if (d < 1) throw InputError("dimension must be at least 1");
  const std::size_t width = 2 * static_cast<std::size_t>(d);
  if (coords_.empty() || coords_.size() % width != 0) {
    throw InputError("coordinate count is not a positive multiple of 2d");
  }
  size_ = static_cast<Index>(coords_.size() / width);
}

template <class T>
RectList<T> RectList<T>::from_rows(const std::vector<std::vector<T>>& rows) {
  if (rows.empty()) throw InputError("rectangle list is empty");
  const std::size_t width = rows.front().size();
  if (width == 0 || width % 2 != 0) {
    throw InputError("rows need an even, positive number of coordinates");
  }
  std::vector<T> coords;
  coords.reserve(rows.size() * width);
  for (const auto& row : rows) {
    if (row.size() != width) throw InputError("rows differ in length");
    coords.insert(coords.end(), row.begin(), row.end());
  }
  return RectList(static_cast<int>(width / 2), std::move(coords));
}

template <class T>
DRect<T> RectList<T>::rect(Index j) const {
  auto r = row(j);
  return DRect<T>(std::vector<T>(r.begin(), r.end()));
}

template <class T>
DVolume<VolumeOf<T>> dvolume(std::span<const T> bounds) {
  using V = VolumeOf<T>;
  const std::size_t d = bounds.size() / 2;
  DVolume<V> out{0, V(1)};
  for (std::size_t t = 0; t < d; ++t) {
    const T lo = bounds[2 * t];
    const T hi = bounds[2 * t + 1];
    if (lo > hi) return {-1, V(0)};
    if (lo < hi) {
      out.vol = checked_mul<V>(out.vol, V(hi) - V(lo));
      ++out.dim;
    }
  }
  if (out.dim == 0) out.vol = V(0);
  return out;
}

template <class T>
DRect<T> intersect(const RectList<T>& list, std::span<const Index> members) {
  if (members.empty()) throw InputError("intersection of an empty family");
  std::vector<T> bounds(list.orders());
  bool first = true;
  for (Index j : members) {
    if (j < 0 || j >= list.size()) throw InputError("rectangle index out of range");
    auto row = list.row(j);
    if (first) {
      std::copy(row.begin(), row.end(), bounds.begin());
      first = false;
      continue;
    }
    for (int t = 0; t < list.d(); ++t) {
      bounds[2 * t] = std::max(bounds[2 * t], row[2 * t]);
      bounds[2 * t + 1] = std::min(bounds[2 * t + 1], row[2 * t + 1]);
    }
  }
  return DRect<T>(std::move(bounds));
}

template <class T>
DRect<T> intersect_complement(const RectList<T>& list,
                              std::span<const Index> discarded) {
  std::vector<char> gone(list.size(), 0);
  for (Index j : discarded) {
    if (j < 0 || j >= list.size()) throw InputError("rectangle index out of range");
    gone[j] = 1;
  }
  std::vector<Index> kept;
  kept.reserve(list.size());
  for (Index j = 0; j < list.size(); ++j) {
    if (!gone[j]) kept.push_back(j);
  }
  return intersect(list, std::span<const Index>(kept));
}

template <class T>
std::vector<Index> sorted_by_order(const RectList<T>& list, int order) {
  std::vector<Index> idx(list.size());
  std::iota(idx.begin(), idx.end(), Index{0});
  std::sort(idx.begin(), idx.end(), [&](Index a, Index b) {
    return list.precedes(order, a, b);
  });
  return idx;
}

template <class T>
bool contained_in(std::span<const T> inner, std::span<const T> outer) {
  const std::size_t d = inner.size() / 2;
  for (std::size_t t = 0; t < d; ++t) {
    if (inner[2 * t] > inner[2 * t + 1]) return true;  // empty set
  }
  for (std::size_t t = 0; t < d; ++t) {
    if (inner[2 * t] < outer[2 * t] || inner[2 * t + 1] > outer[2 * t + 1]) {
      return false;
    }
  }
  return true;
}

#define MAXISECT_INSTANTIATE(T)                                              \
  template class DRect<T>;                                                   \
  template class RectList<T>;                                                \
  template DVolume<VolumeOf<T>> dvolume<T>(std::span<const T>);              \
  template DRect<T> intersect<T>(const RectList<T>&, std::span<const Index>); \
  template DRect<T> intersect_complement<T>(const RectList<T>&,              \
                                            std::span<const Index>);         \
  template std::vector<Index> sorted_by_order<T>(const RectList<T>&, int);   \
  template bool contained_in<T>(std::span<const T>, std::span<const T>);

MAXISECT_INSTANTIATE(std::int64_t)
MAXISECT_INSTANTIATE(double)

#undef MAXISECT_INSTANTIATE

}  // namespace maxisect
