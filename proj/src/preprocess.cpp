#include "maxisect/preprocess.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <random>
#include <string>

namespace maxisect {
namespace {

constexpr std::size_t kSampleThreshold = 1024;
constexpr std::size_t kSampleSize = 128;
constexpr std::size_t kSampleMargin = 8;

// Position in [lo, hi) of the pivot. Small ranges take a uniformly random
// element. Large ones take the element a few ranks above the target in a
// random sample, so one pass discards nearly all of the range.
template <class E, class Less>
std::size_t choose_pivot(std::span<E> v, std::size_t lo, std::size_t hi,
                         std::size_t kth, Less less, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(lo, hi - 1);
  const std::size_t n = hi - lo;
  if (n < kSampleThreshold) return pick(rng);
  std::array<std::size_t, kSampleSize> sample;
  for (auto& pos : sample) pos = pick(rng);
  std::sort(sample.begin(), sample.end(), [&](std::size_t a, std::size_t b) {
    return less(v[a], v[b]) || (!less(v[b], v[a]) && a < b);
  });
  const std::size_t target = (kth - lo) * kSampleSize / n + kSampleMargin;
  return sample[std::min(target, kSampleSize - 1)];
}

// Hoare's selection with a randomized pivot and Lomuto partition.
// The comparator is a strict total order (ties broken by index), so no
// three-way partition is needed. On return v[kth] holds the element of
// rank kth and everything before it ranks lower.
template <class E, class Less>
void quickselect(std::span<E> v, std::size_t kth, Less less, std::mt19937_64& rng) {
  std::size_t lo = 0;
  std::size_t hi = v.size();
  while (hi - lo > 1) {
    std::swap(v[choose_pivot(v, lo, hi, kth, less, rng)], v[hi - 1]);
    const E pivot = v[hi - 1];
    std::size_t store = lo;
    for (std::size_t i = lo; i + 1 < hi; ++i) {
      if (less(v[i], pivot)) std::swap(v[i], v[store++]);
    }
    std::swap(v[store], v[hi - 1]);
    if (kth == store) return;
    if (kth < store) {
      hi = store;
    } else {
      lo = store + 1;
    }
  }
}

template <class T>
struct Entry {
  T value;
  Index j;
};

// Selection runs over (value, index) pairs copied out of the column into
// `scratch` so the partition loop reads memory sequentially.
template <class T>
OrderedPrefix select_with(const RectList<T>& list, int order, Index budget,
                          std::uint64_t seed, std::vector<Entry<T>>& scratch) {
  if (order < 0 || order >= list.orders()) {
    throw InputError("order index out of range");
  }
  if (budget < 0 || budget >= list.size()) {
    throw InputError("budget r=" + std::to_string(budget) +
                     " must satisfy 0 <= r < N=" + std::to_string(list.size()));
  }
  scratch.resize(list.size());
  for (Index j = 0; j < list.size(); ++j) scratch[j] = {list.coord(j, order), j};
  const bool left = is_left(order);
  auto less = [left](const Entry<T>& a, const Entry<T>& b) {
    if (a.value != b.value) return left ? a.value > b.value : a.value < b.value;
    return a.j < b.j;
  };

  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (order + 1)));
  const auto kth = static_cast<std::size_t>(budget);
  quickselect(std::span<Entry<T>>(scratch), kth, less, rng);
  std::sort(scratch.begin(), scratch.begin() + kth + 1, less);
  std::vector<Index> idx;
  idx.reserve(kth + 1);
  for (std::size_t i = 0; i <= kth; ++i) idx.push_back(scratch[i].j);
  return OrderedPrefix{order, std::move(idx)};
}

}  // namespace

template <class T>
OrderedPrefix select_prefix(const RectList<T>& list, int order, Index budget,
                            std::uint64_t seed) {
  std::vector<Entry<T>> scratch;
  return select_with(list, order, budget, seed, scratch);
}

template <class T>
BlockColumn build_blocks(const RectList<T>& list, const OrderedPrefix& prefix) {
  BlockColumn out;
  out.block_of.assign(list.size(), kNoBlock);
  std::int32_t block = -1;
  for (std::size_t pos = 0; pos < prefix.members.size(); ++pos) {
    const Index j = prefix.members[pos];
    if (pos == 0 || list.coord(j, prefix.order) !=
                        list.coord(prefix.members[pos - 1], prefix.order)) {
      ++block;
      out.initial_sizes.push_back(0);
    }
    out.block_of[j] = block;
    ++out.initial_sizes[block];
  }
  return out;
}

LinkColumn build_dll(Index n, const OrderedPrefix& prefix) {
  LinkColumn out;
  out.prev.assign(static_cast<std::size_t>(n) + 1, kNone);
  out.next.assign(static_cast<std::size_t>(n) + 1, kNone);
  Index last = out.head();
  for (Index j : prefix.members) {
    out.next[last] = j;
    out.prev[j] = last;
    last = j;
  }
  return out;
}

template <class T>
Preprocessed<T>::Preprocessed(const RectList<T>& list, Index budget,
                              std::uint64_t seed)
    : list_(&list), budget_(budget) {
  if (budget < 1 || budget >= list.size()) {
    throw InputError("budget r=" + std::to_string(budget) +
                     " must satisfy 0 < r < N=" + std::to_string(list.size()));
  }
  columns_.reserve(list.orders());
  std::vector<Entry<T>> scratch;
  for (int order = 0; order < list.orders(); ++order) {
    Column col;
    col.prefix = select_with(list, order, budget, seed, scratch);
    col.blocks = build_blocks(list, col.prefix);
    col.live_sizes = col.blocks.initial_sizes;
    col.links = build_dll(list.size(), col.prefix);
    col.live = static_cast<Index>(col.prefix.members.size());
    columns_.push_back(std::move(col));
  }
  deleted_.reserve(budget + 2 * list.d());
}

template <class T>
std::vector<Index> Preprocessed<T>::live_members(int order) const {
  std::vector<Index> out;
  const auto& links = columns_[order].links;
  for (Index j = links.next[links.head()]; j != kNone; j = links.next[j]) {
    out.push_back(j);
  }
  return out;
}

template <class T>
void Preprocessed<T>::delete_index(Index j) {
  assert(std::find(deleted_.begin(), deleted_.end(), j) == deleted_.end() &&
         "rectangle deleted twice");
  for (auto& col : columns_) {
    const std::int32_t block = col.blocks.block_of[j];
    if (block == kNoBlock) continue;
    auto& links = col.links;
    links.next[links.prev[j]] = links.next[j];
    if (links.next[j] != kNone) links.prev[links.next[j]] = links.prev[j];
    --col.live_sizes[block];
    --col.live;
  }
  deleted_.push_back(j);
}

template <class T>
void Preprocessed<T>::restore_index(Index j) {
  assert(!deleted_.empty() && deleted_.back() == j &&
         "restore out of stack order");
  deleted_.pop_back();
  for (auto& col : columns_) {
    const std::int32_t block = col.blocks.block_of[j];
    if (block == kNoBlock) continue;
    auto& links = col.links;
    links.next[links.prev[j]] = j;
    if (links.next[j] != kNone) links.prev[links.next[j]] = j;
    ++col.live_sizes[block];
    ++col.live;
  }
}

#define MAXISECT_INSTANTIATE(T)                                                \
  template OrderedPrefix select_prefix<T>(const RectList<T>&, int, Index,      \
                                          std::uint64_t);                      \
  template BlockColumn build_blocks<T>(const RectList<T>&, const OrderedPrefix&); \
  template class Preprocessed<T>;

MAXISECT_INSTANTIATE(std::int64_t)
MAXISECT_INSTANTIATE(double)

#undef MAXISECT_INSTANTIATE

}  // namespace maxisect
