#pragma once

// Per-column state the search runs on. For every endpoint column only the
// r+1 best rectangles (in that column's order) are kept: with at most r
// deletions outstanding one of them always survives, so the column minimum
// is always found inside that prefix.

#include <cstdint>
#include <span>
#include <vector>

#include "maxisect/core.hpp"

namespace maxisect {

inline constexpr std::int32_t kNoBlock = -1;
inline constexpr std::uint64_t kDefaultSeed = 0x5eed'1234'abcdULL;

/// The budget+1 ≼-smallest indices of one column, in ascending ≼ order.
struct OrderedPrefix {
  int order = 0;
  std::vector<Index> members;

  friend bool operator==(const OrderedPrefix&, const OrderedPrefix&) = default;
};

/// Block numbers of one column. block_of[j] is the 0-based number of the
/// run of equal values containing j, or kNoBlock when j is outside the
/// prefix. initial_sizes[b] is the length of run b.
struct BlockColumn {
  std::vector<std::int32_t> block_of;
  std::vector<std::int32_t> initial_sizes;

  friend bool operator==(const BlockColumn&, const BlockColumn&) = default;
};

/// Doubly linked threading of one prefix. Slots 0..N-1 belong to the
/// rectangles, slot N is the head sentinel. kNone marks both "no
/// neighbour" and "not a member". Unlinked members keep their stale links
/// so they can be relinked.
struct LinkColumn {
  std::vector<Index> prev;
  std::vector<Index> next;

  Index head() const { return static_cast<Index>(next.size()) - 1; }

  friend bool operator==(const LinkColumn&, const LinkColumn&) = default;
};

/// Randomized quickselect for the (budget+1)-st element followed by a sort
/// of the prefix. Expected O(N + budget log budget). Throws InputError
/// unless 0 <= budget < N.
template <class T>
OrderedPrefix select_prefix(const RectList<T>& list, int order, Index budget,
                            std::uint64_t seed = kDefaultSeed);

template <class T>
BlockColumn build_blocks(const RectList<T>& list, const OrderedPrefix& prefix);

LinkColumn build_dll(Index n, const OrderedPrefix& prefix);

/// The prefixes, block tables and linked lists of all 2d columns, plus the
/// delete/restore operations the search drives. Holds a reference to the
/// rectangle list, which must outlive it. Single owner; not thread-safe.
template <class T>
class Preprocessed {
 public:
  /// Throws InputError unless 0 < budget < list.size().
  Preprocessed(const RectList<T>& list, Index budget,
               std::uint64_t seed = kDefaultSeed);

  const RectList<T>& list() const { return *list_; }
  Index budget() const { return budget_; }
  int orders() const { return static_cast<int>(columns_.size()); }

  const OrderedPrefix& prefix(int order) const { return columns_[order].prefix; }
  const BlockColumn& blocks(int order) const { return columns_[order].blocks; }
  const LinkColumn& links(int order) const { return columns_[order].links; }

  std::int32_t block_of(Index j, int order) const {
    return columns_[order].blocks.block_of[j];
  }
  /// Live (undeleted) size of block `block` in column `order`.
  std::int32_t block_size(std::int32_t block, int order) const {
    return columns_[order].live_sizes[block];
  }
  Index live_count(int order) const { return columns_[order].live; }

  /// The ≼-smallest undeleted prefix member of column `order`.
  Index smallest(int order) const {
    const auto& links = columns_[order].links;
    return links.next[links.head()];
  }

  /// Undeleted prefix members of column `order`, in list order.
  std::vector<Index> live_members(int order) const;

  /// Unlinks j from every column whose prefix contains it. O(d).
  void delete_index(Index j);
  /// Undoes the most recent outstanding delete_index(j). O(d).
  void restore_index(Index j);

  std::span<const Index> deleted() const { return deleted_; }

  friend bool operator==(const Preprocessed&, const Preprocessed&) = default;

 private:
  struct Column {
    OrderedPrefix prefix;
    BlockColumn blocks;
    std::vector<std::int32_t> live_sizes;
    LinkColumn links;
    Index live = 0;

    friend bool operator==(const Column&, const Column&) = default;
  };

  const RectList<T>* list_;
  Index budget_;
  std::vector<Column> columns_;
  std::vector<Index> deleted_;
};

}  // namespace maxisect
