#pragma once

// Exact primitives for axis-aligned boxes: endpoint encoding, the
// (dim, vol) objective, subset intersection and the 2d endpoint orders.
//
// Coordinates are compared exactly. Integer instances use 64-bit
// coordinates with 128-bit volumes; floating instances use double for both,
// and equality between coordinates is plain value equality.

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxisect {

/// Rectangle index, 0-based inside the library.
using Index = std::int32_t;
inline constexpr Index kNone = -1;

/// Malformed input or a violated call contract on user-supplied data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T>
struct CoordTraits;

template <>
struct CoordTraits<std::int64_t> {
  using Volume = __int128;
  static constexpr const char* kName = "integer";
};

template <>
struct CoordTraits<double> {
  using Volume = double;
  static constexpr const char* kName = "float";
};

template <class T>
using VolumeOf = typename CoordTraits<T>::Volume;

// An order index o in [0, 2d) names one endpoint column. Even o is the left
// endpoint of axis o/2, ordered by decreasing value; odd o is the right
// endpoint, ordered by increasing value. Ties are broken by rectangle index.
constexpr bool is_left(int order) { return order % 2 == 0; }
constexpr int axis_of(int order) { return order / 2; }

/// Multiplies two volumes; integral volumes throw std::overflow_error
/// instead of wrapping.
template <class V>
V checked_mul(V a, V b);

std::string to_string(__int128 v);
std::string to_string(double v);

/// The d-volume of a box: lexicographic on (dim, vol).
///   dim == -1: empty, vol == 0
///   dim ==  0: a point, vol == 0
///   dim >=  1: vol is the product of the dim positive extents
template <class V>
struct DVolume {
  int dim = -1;
  V vol{};

  friend bool operator==(const DVolume&, const DVolume&) = default;
};

template <class V>
std::weak_ordering compare_dvolume(const DVolume<V>& a, const DVolume<V>& b) {
  if (a.dim != b.dim) return a.dim <=> b.dim;
  if (a.vol < b.vol) return std::weak_ordering::less;
  if (b.vol < a.vol) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

template <class V>
std::weak_ordering operator<=>(const DVolume<V>& a, const DVolume<V>& b) {
  return compare_dvolume(a, b);
}

/// A d-rectangle stored as [lo_1, hi_1, ..., lo_d, hi_d]. lo > hi on some
/// axis encodes the empty set; the endpoints are kept anyway.
template <class T>
class DRect {
 public:
  explicit DRect(std::vector<T> bounds);

  int d() const { return static_cast<int>(bounds_.size() / 2); }
  T lo(int axis) const { return bounds_[2 * axis]; }
  T hi(int axis) const { return bounds_[2 * axis + 1]; }
  T operator[](int order) const { return bounds_[order]; }
  std::span<const T> bounds() const { return bounds_; }

  friend bool operator==(const DRect&, const DRect&) = default;

 private:
  std::vector<T> bounds_;
};

/// An ordered list of N d-rectangles (duplicates allowed), row-major.
template <class T>
class RectList {
 public:
  using value_type = T;

  RectList() = default;
  /// coords holds N rows of 2d values. Throws InputError on a shape mismatch.
  RectList(int d, std::vector<T> coords);

  static RectList from_rows(const std::vector<std::vector<T>>& rows);

  Index size() const { return size_; }
  int d() const { return d_; }
  int orders() const { return 2 * d_; }

  T coord(Index j, int order) const {
    return coords_[static_cast<std::size_t>(j) * orders() + order];
  }
  std::span<const T> row(Index j) const {
    return std::span<const T>(coords_).subspan(
        static_cast<std::size_t>(j) * orders(), orders());
  }
  DRect<T> rect(Index j) const;
  std::span<const T> coords() const { return coords_; }

  /// j ≼ k in the total order of column `order`.
  bool order_leq(int order, Index j, Index k) const {
    return j == k || precedes(order, j, k);
  }
  /// j ≺ k: strictly better coordinate value, no tie-break.
  bool order_strict(int order, Index j, Index k) const {
    const T a = coord(j, order);
    const T b = coord(k, order);
    return is_left(order) ? a > b : a < b;
  }
  /// Strict version of ≼ (j ≼ k and j != k); a strict weak order suitable
  /// as a sort comparator.
  bool precedes(int order, Index j, Index k) const {
    const T a = coord(j, order);
    const T b = coord(k, order);
    if (a != b) return is_left(order) ? a > b : a < b;
    return j < k;
  }

  friend bool operator==(const RectList&, const RectList&) = default;

 private:
  int d_ = 0;
  Index size_ = 0;
  std::vector<T> coords_;
};

template <class T>
DVolume<VolumeOf<T>> dvolume(std::span<const T> bounds);

template <class T>
DVolume<VolumeOf<T>> dvolume(const DRect<T>& rect) {
  return dvolume<T>(rect.bounds());
}

/// Coordinate-wise max of left endpoints and min of right endpoints over
/// `members`. Throws InputError when `members` is empty or out of range.
template <class T>
DRect<T> intersect(const RectList<T>& list, std::span<const Index> members);

/// Intersection of every rectangle not listed in `discarded`.
template <class T>
DRect<T> intersect_complement(const RectList<T>& list,
                              std::span<const Index> discarded);

/// All indices of `list` sorted by ≼ of column `order`.
template <class T>
std::vector<Index> sorted_by_order(const RectList<T>& list, int order);

/// R ⊆ S for a non-empty R.
template <class T>
bool contained_in(std::span<const T> inner, std::span<const T> outer);

}  // namespace maxisect
