#pragma once

// Brute-force ground truth. Everything here works on fully sorted endpoint
// lists and explicit subset enumeration, and shares no code path with the
// prefix-based search beyond the core primitives. Slow on purpose.

#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "maxisect/core.hpp"

namespace maxisect {

/// An enumeration would exceed its subset budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultSubsetBudget = 1'000'000;

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Σ_{s <= r} C(n, s), saturating.
std::uint64_t subsets_up_to(std::uint64_t n, std::uint64_t r);

/// Calls fn once per k-subset of {0..n-1}, in lexicographic order.
void for_each_subset(Index n, Index k,
                     const std::function<void(std::span<const Index>)>& fn);

template <class V>
struct BruteForceBest {
  DVolume<V> best;
  std::vector<Index> witness;  // first optimal subset in lexicographic order
  std::uint64_t optimal_count = 0;
};

/// Maximum of dvolume(intersection of the rest) over all s-subsets.
/// Throws BudgetExceeded when C(N, s) > budget.
template <class T>
BruteForceBest<VolumeOf<T>> brute_force_best(
    const RectList<T>& list, Index s,
    std::uint64_t budget = kDefaultSubsetBudget);

template <class V>
struct OracleReport {
  std::vector<BruteForceBest<V>> per_s;  // s = 0..r
};

/// brute_force_best for every s <= r, refused up front when
/// Σ_{s <= r} C(N, s) > budget.
template <class T>
OracleReport<VolumeOf<T>> oracle_report(
    const RectList<T>& list, Index r,
    std::uint64_t budget = kDefaultSubsetBudget);

using IndexSet = std::vector<Index>;  // sorted ascending

/// {U(R)} over the non-empty intersections R of at least N - r rectangles,
/// where U(R) is the set of rectangles not containing R.
template <class T>
std::set<IndexSet> enumerate_Ur(const RectList<T>& list, Index r,
                                std::uint64_t budget = kDefaultSubsetBudget);

/// Membership in the family above decided from barrier values alone: every
/// axis keeps lo <= hi, and every member of X is strictly beaten by the
/// barrier of some column. Requires |X| <= r < N.
template <class T>
bool verify_U_membership(const RectList<T>& list, std::span<const Index> X,
                         Index r);

struct CanonicalWord {
  std::string letters;          // 'D' and 'S'
  std::vector<Index> deletions;  // the D targets in reading order
};

/// The unique legal word deleting exactly U: each element of U is deleted
/// at the first column where it is strictly below that column's barrier,
/// and within a column in ascending column order. Throws InputError when U
/// is not in the family.
template <class T>
CanonicalWord canonical_word(const RectList<T>& list, std::span<const Index> U,
                             Index r);

struct ReplayResult {
  bool legal = false;
  char violated = 0;  // 'A'..'F' for the first rule broken
  std::vector<Index> deleted;
};

/// Reads `word` over fully sorted endpoint lists and checks every legality
/// rule as it goes:
///   A exactly 2d S    B ends with S       C at most r D
///   D barrier values of columns left behind never change
///   E a D at the focus consumes its whole block, within budget
///   F lo <= hi on every axis
template <class T>
ReplayResult replay_word(const RectList<T>& list, std::string_view word,
                         Index r);

/// Closed-form step count d·C(p+s, s) + C(p+s+1, s) − d.
std::uint64_t step_bound(std::uint64_t p, std::uint64_t s, std::uint64_t d);

/// step_bound with d = 1: the number of recursive calls the search can make
/// with p deletions and s shifts left.
std::uint64_t call_bound(std::uint64_t p, std::uint64_t s);

}  // namespace maxisect
