#pragma once

// Depth-first enumeration of discard words over {Δ, S}.
//
// A word is read left to right with a focus column that starts at 0. Δ
// discards the smallest surviving rectangle of the focus column, S moves
// the focus to the next column. Leaves are words with exactly 2d S moves
// and at most r Δ moves. The search only walks words that satisfy the
// legality rules below, and these correspond one to one with the distinct
// intersection rectangles reachable by at most r discards:
//
//   budget   at most r Δ moves
//   frozen   a Δ never changes the barrier value of a column already left
//   block    a Δ at the focus consumes the whole run of equal values it
//            starts, and that run must fit in the remaining budget
//   nonempty leaving a right-endpoint column requires lo <= hi on its axis

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxisect/core.hpp"
#include "maxisect/preprocess.hpp"

namespace maxisect {

/// Position of a node in its NodeStore.
using Handle = std::int32_t;
inline constexpr Handle kUndefHandle = -1;
inline constexpr Handle kIllegalHandle = -2;

enum class Move : std::uint8_t { kRoot, kDelta, kShift };

template <class V>
struct SearchNode {
  Handle parent = kUndefHandle;
  Move move = Move::kRoot;
  Index deleted = kNone;  // set for kDelta
  // Running values over completed axes: dim counts positive extents, vol is
  // their product (1 while dim == 0).
  int dim = 0;
  V vol = V(1);
  Handle delta_child = kUndefHandle;
  Handle shift_child = kUndefHandle;
};

/// Append-only; the root sits at position 0 and parents precede children.
template <class V>
class NodeStore {
 public:
  Handle add(const SearchNode<V>& node) {
    nodes_.push_back(node);
    return static_cast<Handle>(nodes_.size()) - 1;
  }
  SearchNode<V>& operator[](Handle h) { return nodes_[h]; }
  const SearchNode<V>& operator[](Handle h) const { return nodes_[h]; }
  std::size_t size() const { return nodes_.size(); }
  auto begin() const { return nodes_.begin(); }
  auto end() const { return nodes_.end(); }

 private:
  std::vector<SearchNode<V>> nodes_;
};

/// Best leaf found per exact discard count.
template <class V>
struct ResultEntry {
  int dim = -1;
  std::optional<V> vol;
  Handle address = kUndefHandle;

  bool is_set() const { return address != kUndefHandle; }
  DVolume<V> value() const { return {dim, vol.value_or(V(0))}; }
};

template <class V>
using ResultsTable = std::vector<ResultEntry<V>>;

struct Decision {
  bool delta_legal = false;
  bool shift_legal = false;
};

struct SearchOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Keep the handle of every leaf reached, in DFS order.
  bool record_leaves = false;
  /// Diagnostic mutation: delete the focus minimum on S moves as well, as a
  /// literal reading of the recursion pseudocode would. Produces wrong
  /// answers; exists so oracle cross-checks can be shown to catch it.
  bool literal_shift_delete = false;
};

template <class T>
struct SearchOutcome {
  using V = VolumeOf<T>;
  ResultsTable<V> results;
  NodeStore<V> nodes;
  std::vector<Handle> leaves;
  std::uint64_t calls = 0;
};

/// Drives the recursion over a Preprocessed state it does not own. The
/// state is mutated during explore() and restored when it returns.
template <class T>
class Searcher {
 public:
  using V = VolumeOf<T>;

  Searcher(Preprocessed<T>& state, const SearchOptions& options = {});

  Handle root() const { return 0; }

  /// Legality of extending `node` with Δ and with S, where p deletions and
  /// s shifts remain. Marks illegal children on the node. At s == 0 the
  /// node is a leaf and the results table is updated instead.
  Decision decide(int p, int s, Handle node);

  /// decide() followed by recursion into the legal children, Δ first.
  /// Returns whether any leaf was reached below `node`.
  bool explore(int p, int s, Handle node);

  /// Appends the Δ child of `node` (focus column `focus`) and deletes the
  /// focus minimum. Undo with pop_delta().
  Handle push_delta(Handle node, int focus);
  void pop_delta(Handle child);
  /// Appends the S child of `node`, completing an axis when `focus` is a
  /// right-endpoint column. Undo with pop_shift().
  Handle push_shift(Handle node, int focus);
  void pop_shift(Handle child);

  const NodeStore<V>& nodes() const { return nodes_; }
  const ResultsTable<V>& results() const { return results_; }
  std::uint64_t calls() const { return calls_; }

  SearchOutcome<T> take() &&;

 private:
  void record_leaf(int p, Handle node);
  bool columns_alive(int through) const;

  Preprocessed<T>* state_;
  const RectList<T>* list_;
  SearchOptions options_;
  NodeStore<V> nodes_;
  ResultsTable<V> results_;
  std::vector<Handle> leaves_;
  std::uint64_t calls_ = 0;
};

/// Preprocesses `list` and explores every legal word from the root.
/// Throws InputError unless 0 < r < N.
template <class T>
SearchOutcome<T> run_search(const RectList<T>& list, Index r,
                            const SearchOptions& options = {});

/// Δ indices on the path root → h, in deletion order. O(p + 2d).
template <class V>
std::vector<Index> extract_discards(const NodeStore<V>& store, Handle h);

/// The path root → h spelled with 'D' for Δ and 'S' for S.
template <class V>
std::string word_of(const NodeStore<V>& store, Handle h);

template <class V>
struct Answer {
  Index s = 0;
  DVolume<V> best;
  std::vector<Index> discard_minimal;  // size achieved_with
  std::vector<Index> discard_exact;    // size s
  Index achieved_with = 0;
  bool empty = false;  // every choice of s discards leaves an empty set
};

/// Per-s answers: best(s) is the maximum over p <= s of the results table,
/// padded with the lowest unused indices to exactly s discards.
template <class T>
std::vector<Answer<VolumeOf<T>>> finalize(
    const ResultsTable<VolumeOf<T>>& results,
    const NodeStore<VolumeOf<T>>& store, const RectList<T>& list, Index r);

struct Instrumentation {
  std::uint64_t nodes = 0;
  std::uint64_t calls = 0;
  std::uint64_t call_bound = 0;
  std::chrono::nanoseconds elapsed{0};
};

template <class T>
struct Solution {
  std::vector<Answer<VolumeOf<T>>> answers;
  Instrumentation stats;
};

/// run_search + finalize, timed.
template <class T>
Solution<T> solve(const RectList<T>& list, Index r,
                  const SearchOptions& options = {});

}  // namespace maxisect
