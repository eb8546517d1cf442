#include "maxisect/search.hpp"

#include <algorithm>
#include <cassert>

#include "maxisect/oracle.hpp"

namespace maxisect {

template <class T>
Searcher<T>::Searcher(Preprocessed<T>& state, const SearchOptions& options)
    : state_(&state), list_(&state.list()), options_(options) {
  nodes_.add(SearchNode<V>{});
  results_.resize(static_cast<std::size_t>(state.budget()) + 1);
}

template <class T>
bool Searcher<T>::columns_alive(int through) const {
  for (int i = 0; i <= through; ++i) {
    if (state_->live_count(i) == 0) return false;
  }
  return true;
}

template <class T>
void Searcher<T>::record_leaf(int p, Handle node) {
  const auto& leaf = nodes_[node];
  const DVolume<V> value{leaf.dim, leaf.dim == 0 ? V(0) : leaf.vol};
  auto& entry = results_[state_->budget() - p];
  if (!entry.is_set() || compare_dvolume(value, entry.value()) > 0) {
    entry.dim = value.dim;
    entry.vol = value.vol;
    entry.address = node;
  }
  if (options_.record_leaves) leaves_.push_back(node);
}

template <class T>
Decision Searcher<T>::decide(int p, int s, Handle node) {
  auto mark = [&](Decision d) {
    if (!d.delta_legal) nodes_[node].delta_child = kIllegalHandle;
    if (!d.shift_legal) nodes_[node].shift_child = kIllegalHandle;
    return d;
  };

  // Only reachable under literal_shift_delete, where columns can run dry.
  if (nodes_[node].dim < 0) return mark({false, false});

  if (s == 0) {
    record_leaf(p, node);
    return mark({false, false});
  }

  const int focus = state_->orders() - s;
  if (options_.literal_shift_delete && !columns_alive(focus)) {
    return mark({false, false});
  }

  Decision out{true, true};
  const Index j = state_->smallest(focus);
  assert(j != kNone && "a prefix column ran empty during search");

  if (p == 0) {
    out.delta_legal = false;
  } else if (state_->block_size(state_->block_of(j, focus), focus) > p) {
    // The whole run of equal values at the focus has to go, and it does not
    // fit in the remaining budget.
    out.delta_legal = false;
  } else {
    // Deleting j must not move the barrier of any column already left.
    for (int i = 0; i < focus; ++i) {
      const std::int32_t block = state_->block_of(j, i);
      if (block == kNoBlock) continue;
      const Index k = state_->smallest(i);
      if (block == state_->block_of(k, i) && state_->block_size(block, i) == 1) {
        out.delta_legal = false;
        break;
      }
    }
  }

  if (!is_left(focus)) {
    const Index k = state_->smallest(focus - 1);
    if (list_->coord(k, focus - 1) > list_->coord(j, focus)) {
      out.shift_legal = false;  // the axis would come out empty
    }
  }

  // A run started at this focus must be finished before the focus moves on.
  if (!options_.literal_shift_delete && nodes_[node].move == Move::kDelta) {
    const std::int32_t block = state_->block_of(nodes_[node].deleted, focus);
    if (state_->block_size(block, focus) > 0) out.shift_legal = false;
  }

  return mark(out);
}

template <class T>
Handle Searcher<T>::push_delta(Handle node, int focus) {
  const Index j = state_->smallest(focus);
  SearchNode<V> child;
  child.parent = node;
  child.move = Move::kDelta;
  child.deleted = j;
  child.dim = nodes_[node].dim;
  child.vol = nodes_[node].vol;
  const Handle h = nodes_.add(child);
  nodes_[node].delta_child = h;
  state_->delete_index(j);
  return h;
}

template <class T>
void Searcher<T>::pop_delta(Handle child) {
  state_->restore_index(nodes_[child].deleted);
}

template <class T>
Handle Searcher<T>::push_shift(Handle node, int focus) {
  const Index j = state_->smallest(focus);
  SearchNode<V> child;
  child.parent = node;
  child.move = Move::kShift;
  child.dim = nodes_[node].dim;
  child.vol = nodes_[node].vol;
  if (options_.literal_shift_delete) {
    child.deleted = j;
    state_->delete_index(j);
  }
  if (!is_left(focus)) {
    if (state_->live_count(focus - 1) == 0) {
      child.dim = -1;
    } else {
      const Index k = state_->smallest(focus - 1);
      const V extent = V(list_->coord(j, focus)) - V(list_->coord(k, focus - 1));
      if (extent > V(0)) {
        child.vol = checked_mul<V>(child.vol, extent);
        ++child.dim;
      } else if (extent < V(0)) {
        assert(options_.literal_shift_delete);
        child.dim = -1;
      }
    }
  }
  const Handle h = nodes_.add(child);
  nodes_[node].shift_child = h;
  return h;
}

template <class T>
void Searcher<T>::pop_shift(Handle child) {
  if (options_.literal_shift_delete) state_->restore_index(nodes_[child].deleted);
}

template <class T>
bool Searcher<T>::explore(int p, int s, Handle node) {
  ++calls_;
  const Decision decision = decide(p, s, node);
  if (s == 0) return nodes_[node].dim >= 0;

  const int focus = state_->orders() - s;
  bool reached = false;
  if (decision.delta_legal) {
    const Handle child = push_delta(node, focus);
    const bool below = explore(p - 1, s, child);
    pop_delta(child);
    // Dead branches are snipped by marking; the node itself stays stored.
    if (!below) nodes_[node].delta_child = kIllegalHandle;
    reached = reached || below;
  }
  if (decision.shift_legal) {
    const Handle child = push_shift(node, focus);
    const bool below = explore(p, s - 1, child);
    pop_shift(child);
    if (!below) nodes_[node].shift_child = kIllegalHandle;
    reached = reached || below;
  }
  return reached;
}

template <class T>
SearchOutcome<T> Searcher<T>::take() && {
  SearchOutcome<T> out;
  out.results = std::move(results_);
  out.nodes = std::move(nodes_);
  out.leaves = std::move(leaves_);
  out.calls = calls_;
  return out;
}

template <class T>
SearchOutcome<T> run_search(const RectList<T>& list, Index r,
                            const SearchOptions& options) {
  Preprocessed<T> state(list, r, options.seed);
  Searcher<T> searcher(state, options);
  searcher.explore(r, state.orders(), searcher.root());
  return std::move(searcher).take();
}

template <class V>
std::vector<Index> extract_discards(const NodeStore<V>& store, Handle h) {
  std::vector<Index> out;
  for (Handle at = h; at != kUndefHandle; at = store[at].parent) {
    if (store[at].move == Move::kDelta) out.push_back(store[at].deleted);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

template <class V>
std::string word_of(const NodeStore<V>& store, Handle h) {
  std::string out;
  for (Handle at = h; at != kUndefHandle; at = store[at].parent) {
    if (store[at].move == Move::kDelta) out.push_back('D');
    if (store[at].move == Move::kShift) out.push_back('S');
  }
  std::reverse(out.begin(), out.end());
  return out;
}

template <class T>
std::vector<Answer<VolumeOf<T>>> finalize(
    const ResultsTable<VolumeOf<T>>& results,
    const NodeStore<VolumeOf<T>>& store, const RectList<T>& list, Index r) {
  using V = VolumeOf<T>;
  if (r < 0 || r >= list.size() ||
      results.size() != static_cast<std::size_t>(r) + 1) {
    throw InputError("results table does not match r and the list size");
  }
  std::vector<Answer<V>> answers;
  answers.reserve(static_cast<std::size_t>(r) + 1);

  Index best_p = kNone;
  for (Index s = 0; s <= r; ++s) {
    const auto& entry = results[s];
    if (entry.is_set() &&
        (best_p == kNone ||
         compare_dvolume(entry.value(), results[best_p].value()) > 0)) {
      best_p = s;
    }

    Answer<V> answer;
    answer.s = s;
    if (best_p == kNone) {
      answer.empty = true;
      answer.best = {-1, V(0)};
      answer.achieved_with = s;
      for (Index j = 0; j < s; ++j) answer.discard_minimal.push_back(j);
      answer.discard_exact = answer.discard_minimal;
    } else {
      answer.best = results[best_p].value();
      answer.achieved_with = best_p;
      answer.discard_minimal = extract_discards(store, results[best_p].address);
      std::sort(answer.discard_minimal.begin(), answer.discard_minimal.end());
      answer.discard_exact = answer.discard_minimal;
      for (Index j = 0; static_cast<Index>(answer.discard_exact.size()) < s;
           ++j) {
        if (!std::binary_search(answer.discard_minimal.begin(),
                                answer.discard_minimal.end(), j)) {
          answer.discard_exact.push_back(j);
        }
      }
      std::sort(answer.discard_exact.begin(), answer.discard_exact.end());
    }
    answers.push_back(std::move(answer));
  }
  return answers;
}

template <class T>
Solution<T> solve(const RectList<T>& list, Index r, const SearchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  auto outcome = run_search(list, r, options);
  Solution<T> out;
  out.answers = finalize(outcome.results, outcome.nodes, list, r);
  out.stats.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  out.stats.nodes = outcome.nodes.size();
  out.stats.calls = outcome.calls;
  out.stats.call_bound = call_bound(r, list.orders());
  return out;
}

#define MAXISECT_INSTANTIATE(T)                                                \
  template class Searcher<T>;                                                  \
  template SearchOutcome<T> run_search<T>(const RectList<T>&, Index,           \
                                          const SearchOptions&);               \
  template std::vector<Index> extract_discards<VolumeOf<T>>(                   \
      const NodeStore<VolumeOf<T>>&, Handle);                                  \
  template std::string word_of<VolumeOf<T>>(const NodeStore<VolumeOf<T>>&,     \
                                            Handle);                           \
  template std::vector<Answer<VolumeOf<T>>> finalize<T>(                       \
      const ResultsTable<VolumeOf<T>>&, const NodeStore<VolumeOf<T>>&,         \
      const RectList<T>&, Index);                                              \
  template Solution<T> solve<T>(const RectList<T>&, Index, const SearchOptions&);

MAXISECT_INSTANTIATE(std::int64_t)
MAXISECT_INSTANTIATE(double)

#undef MAXISECT_INSTANTIATE

}  // namespace maxisect
