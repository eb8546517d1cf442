#include "maxisect/oracle.hpp"

#include <algorithm>
#include <limits>

namespace maxisect {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

// Full ≼-sorted endpoint lists with deletion flags, read by the word
// replay and the membership test.
template <class T>
class FullLists {
 public:
  explicit FullLists(const RectList<T>& list) : list_(list), alive_(list.size(), 1) {
    for (int order = 0; order < list.orders(); ++order) {
      sorted_.push_back(sorted_by_order(list, order));
    }
  }

  Index smallest(int order) const {
    for (Index j : sorted_[order]) {
      if (alive_[j]) return j;
    }
    return kNone;
  }

  T barrier(int order) const { return list_.coord(smallest(order), order); }

  // Alive members sharing the smallest element's value.
  Index initial_block_size(int order) const {
    const T value = barrier(order);
    Index n = 0;
    for (Index j : sorted_[order]) {
      if (!alive_[j]) continue;
      if (list_.coord(j, order) != value) break;
      ++n;
    }
    return n;
  }

  void erase(Index j) { alive_[j] = 0; }

 private:
  const RectList<T>& list_;
  std::vector<char> alive_;
  std::vector<std::vector<Index>> sorted_;
};

template <class T>
std::vector<Index> complement(const RectList<T>& list, std::span<const Index> X) {
  std::vector<char> in_x(list.size(), 0);
  for (Index j : X) in_x[j] = 1;
  std::vector<Index> out;
  for (Index j = 0; j < list.size(); ++j) {
    if (!in_x[j]) out.push_back(j);
  }
  return out;
}

// Smallest element of the full order `order` outside X.
Index first_outside(const std::vector<Index>& sorted, std::span<const Index> X) {
  for (Index j : sorted) {
    if (std::find(X.begin(), X.end(), j) == X.end()) return j;
  }
  return kNone;
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t subsets_up_to(std::uint64_t n, std::uint64_t r) {
  std::uint64_t total = 0;
  for (std::uint64_t s = 0; s <= std::min(r, n); ++s) {
    total = saturating_add(total, binomial(n, s));
  }
  return total;
}

void for_each_subset(Index n, Index k,
                     const std::function<void(std::span<const Index>)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<Index> pick(k);
  for (Index i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    fn(pick);
    Index pos = k - 1;
    while (pos >= 0 && pick[pos] == n - k + pos) --pos;
    if (pos < 0) return;
    ++pick[pos];
    for (Index i = pos + 1; i < k; ++i) pick[i] = pick[i - 1] + 1;
  }
}

template <class T>
BruteForceBest<VolumeOf<T>> brute_force_best(const RectList<T>& list, Index s,
                                             std::uint64_t budget) {
  if (s < 0 || s >= list.size()) {
    throw InputError("brute force needs 0 <= s < N");
  }
  if (binomial(list.size(), s) > budget) {
    throw BudgetExceeded("C(" + std::to_string(list.size()) + ", " +
                         std::to_string(s) + ") subsets exceed the budget of " +
                         std::to_string(budget));
  }
  BruteForceBest<VolumeOf<T>> out;
  bool first = true;
  for_each_subset(list.size(), s, [&](std::span<const Index> X) {
    const auto value = dvolume(intersect_complement(list, X));
    const auto cmp = compare_dvolume(value, out.best);
    if (first || cmp > 0) {
      out.best = value;
      out.witness.assign(X.begin(), X.end());
      out.optimal_count = 1;
      first = false;
    } else if (cmp == 0) {
      ++out.optimal_count;
    }
  });
  return out;
}

template <class T>
OracleReport<VolumeOf<T>> oracle_report(const RectList<T>& list, Index r,
                                        std::uint64_t budget) {
  if (r < 0 || r >= list.size()) throw InputError("oracle needs 0 <= r < N");
  if (subsets_up_to(list.size(), r) > budget) {
    throw BudgetExceeded("Σ C(" + std::to_string(list.size()) + ", s) for s <= " +
                         std::to_string(r) + " exceeds the budget of " +
                         std::to_string(budget));
  }
  OracleReport<VolumeOf<T>> out;
  for (Index s = 0; s <= r; ++s) {
    out.per_s.push_back(brute_force_best(list, s, budget));
  }
  return out;
}

template <class T>
std::set<IndexSet> enumerate_Ur(const RectList<T>& list, Index r,
                                std::uint64_t budget) {
  if (r < 0 || r >= list.size()) throw InputError("enumeration needs 0 <= r < N");
  if (subsets_up_to(list.size(), r) > budget) {
    throw BudgetExceeded("subset enumeration exceeds the budget of " +
                         std::to_string(budget));
  }
  std::set<IndexSet> out;
  for (Index s = 0; s <= r; ++s) {
    for_each_subset(list.size(), s, [&](std::span<const Index> X) {
      const auto rect = intersect_complement(list, X);
      if (dvolume(rect).dim < 0) return;
      IndexSet u;
      for (Index j = 0; j < list.size(); ++j) {
        if (!contained_in<T>(rect.bounds(), list.row(j))) u.push_back(j);
      }
      out.insert(std::move(u));
    });
  }
  return out;
}

template <class T>
bool verify_U_membership(const RectList<T>& list, std::span<const Index> X,
                         Index r) {
  if (static_cast<Index>(X.size()) > r || r >= list.size()) {
    throw InputError("membership test needs |X| <= r < N");
  }
  std::vector<Index> barrier_owner(list.orders());
  for (int order = 0; order < list.orders(); ++order) {
    barrier_owner[order] = first_outside(sorted_by_order(list, order), X);
  }
  for (int axis = 0; axis < list.d(); ++axis) {
    if (list.coord(barrier_owner[2 * axis], 2 * axis) >
        list.coord(barrier_owner[2 * axis + 1], 2 * axis + 1)) {
      return false;
    }
  }
  for (Index j : X) {
    bool beaten = false;
    for (int order = 0; order < list.orders() && !beaten; ++order) {
      beaten = list.order_strict(order, j, barrier_owner[order]);
    }
    if (!beaten) return false;
  }
  return true;
}

template <class T>
CanonicalWord canonical_word(const RectList<T>& list, std::span<const Index> U,
                             Index r) {
  if (!verify_U_membership(list, U, r)) {
    throw InputError("set is not the discard set of any reachable intersection");
  }
  CanonicalWord out;
  std::vector<char> taken(list.size(), 0);
  for (int order = 0; order < list.orders(); ++order) {
    const auto sorted = sorted_by_order(list, order);
    const Index owner = first_outside(sorted, U);
    for (Index j : sorted) {
      if (!list.order_strict(order, j, owner)) break;
      if (taken[j]) continue;
      taken[j] = 1;
      out.letters.push_back('D');
      out.deletions.push_back(j);
    }
    out.letters.push_back('S');
  }
  return out;
}

template <class T>
ReplayResult replay_word(const RectList<T>& list, std::string_view word,
                         Index r) {
  ReplayResult out;
  const auto shifts = std::count(word.begin(), word.end(), 'S');
  const auto deltas = std::count(word.begin(), word.end(), 'D');
  if (static_cast<std::size_t>(shifts + deltas) != word.size() ||
      shifts != list.orders()) {
    out.violated = 'A';
    return out;
  }
  if (word.back() != 'S') {
    out.violated = 'B';
    return out;
  }
  if (deltas > r) {
    out.violated = 'C';
    return out;
  }

  FullLists<T> lists(list);
  std::vector<T> frozen;
  int focus = 0;
  for (std::size_t t = 0; t < word.size(); ++t) {
    if (word[t] == 'S') {
      if (!is_left(focus) && lists.barrier(focus - 1) > lists.barrier(focus)) {
        out.violated = 'F';
        return out;
      }
      frozen.push_back(lists.barrier(focus));
      ++focus;
      continue;
    }
    const Index block = lists.initial_block_size(focus);
    const auto run = word.find_first_not_of('D', t);
    const std::size_t available = (run == std::string_view::npos ? word.size() : run) - t;
    if (static_cast<Index>(out.deleted.size()) + block > r ||
        available < static_cast<std::size_t>(block)) {
      out.violated = 'E';
      return out;
    }
    const Index j = lists.smallest(focus);
    lists.erase(j);
    out.deleted.push_back(j);
    for (int k = 0; k < focus; ++k) {
      if (lists.barrier(k) != frozen[k]) {
        out.violated = 'D';
        return out;
      }
    }
  }
  out.legal = true;
  return out;
}

std::uint64_t step_bound(std::uint64_t p, std::uint64_t s, std::uint64_t d) {
  const unsigned __int128 value =
      static_cast<unsigned __int128>(d) * binomial(p + s, s) +
      binomial(p + s + 1, s) - d;
  return value > kSaturated ? kSaturated : static_cast<std::uint64_t>(value);
}

std::uint64_t call_bound(std::uint64_t p, std::uint64_t s) {
  return step_bound(p, s, 1);
}

#define MAXISECT_INSTANTIATE(T)                                                 \
  template BruteForceBest<VolumeOf<T>> brute_force_best<T>(const RectList<T>&,  \
                                                           Index, std::uint64_t); \
  template OracleReport<VolumeOf<T>> oracle_report<T>(const RectList<T>&, Index, \
                                                      std::uint64_t);           \
  template std::set<IndexSet> enumerate_Ur<T>(const RectList<T>&, Index,        \
                                              std::uint64_t);                   \
  template bool verify_U_membership<T>(const RectList<T>&,                      \
                                       std::span<const Index>, Index);          \
  template CanonicalWord canonical_word<T>(const RectList<T>&,                  \
                                           std::span<const Index>, Index);      \
  template ReplayResult replay_word<T>(const RectList<T>&, std::string_view, Index);

MAXISECT_INSTANTIATE(std::int64_t)
MAXISECT_INSTANTIATE(double)

#undef MAXISECT_INSTANTIATE

}  // namespace maxisect
