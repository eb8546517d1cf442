#include <algorithm>
#include <random>

#include "maxisect/oracle.hpp"
#include "maxisect/preprocess.hpp"
#include "test_support.hpp"

using namespace maxisect;
using namespace maxisect::testing;

namespace {

// ρ column values 10, 8, 12, 7, 30 and λ column values 5, 5, 0, 0, 9.
IList selection_fixture() {
  return rows({{5, 10}, {5, 8}, {0, 12}, {0, 7}, {9, 30}});
}

std::vector<Index> full_sort_prefix(const IList& list, int order, Index r) {
  auto sorted = sorted_by_order(list, order);
  sorted.resize(r + 1);
  return sorted;
}

// First surviving index of the fully sorted column.
Index full_smallest(const IList& list, int order, const std::vector<Index>& gone) {
  for (Index j : sorted_by_order(list, order)) {
    if (std::find(gone.begin(), gone.end(), j) == gone.end()) return j;
  }
  return kNone;
}

}  // namespace

TEST_CASE("select_prefix returns the r+1 smallest in order") {
  const auto list = selection_fixture();
  const auto right = select_prefix(list, 1, 2);
  CHECK(right.members == full_sort_prefix(list, 1, 2));
  CHECK(right.members == idx1({4, 2, 1}));

  const auto left = select_prefix(list, 0, 2);
  CHECK(left.members == full_sort_prefix(list, 0, 2));
  CHECK(left.members == idx1({5, 1, 2}));

  CHECK(select_prefix(list, 1, 4).members == sorted_by_order(list, 1));
  CHECK_THROWS_AS(select_prefix(list, 1, 5), InputError);
  CHECK_THROWS_AS(select_prefix(list, 2, 1), InputError);
}

TEST_CASE("select_prefix agrees with a full sort for any seed") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 2 + static_cast<Index>(rng() % 60);
    const int d = 1 + static_cast<int>(rng() % 3);
    const auto list = random_instance(rng, n, d, 0.7, 10);
    const Index r = static_cast<Index>(rng() % n);
    for (int o = 0; o < list.orders(); ++o) {
      CHECK(select_prefix(list, o, r, rng()).members == full_sort_prefix(list, o, r));
    }
  }
}

TEST_CASE("select_prefix on columns long enough to sample pivots") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 1500 + static_cast<Index>(rng() % 4000);
    const auto list = random_instance(rng, n, 2, trial % 2 == 0 ? 0.0 : 0.9, 1000);
    for (Index r : {Index{1}, Index{7}, Index{300}, n - 1}) {
      for (int o = 0; o < list.orders(); ++o) {
        CHECK(select_prefix(list, o, r, rng()).members == full_sort_prefix(list, o, r));
      }
    }
  }
}

TEST_CASE("build_blocks groups runs of equal values") {
  const auto list = rows({{5, 0}, {5, 0}, {3, 0}});
  OrderedPrefix prefix{0, idx1({1, 2, 3})};
  const auto blocks = build_blocks(list, prefix);
  CHECK(blocks.block_of == std::vector<std::int32_t>{0, 0, 1});
  CHECK(blocks.initial_sizes == std::vector<std::int32_t>{2, 1});

  const auto distinct = rows({{4, 0}, {3, 0}, {2, 0}, {1, 0}});
  const auto d = build_blocks(distinct, select_prefix(distinct, 0, 2));
  CHECK(d.initial_sizes == std::vector<std::int32_t>{1, 1, 1});
  CHECK(d.block_of[3] == kNoBlock);

  const auto same = rows({{1, 2}, {1, 2}, {1, 2}, {1, 2}});
  const auto s = build_blocks(same, select_prefix(same, 1, 2));
  CHECK(s.initial_sizes == std::vector<std::int32_t>{3});
}

TEST_CASE("build_dll threads the prefix behind a sentinel") {
  const auto links = build_dll(5, OrderedPrefix{1, idx1({4, 2, 1})});
  const Index head = links.head();
  CHECK(head == 5);
  CHECK(links.next[head] == 3);
  CHECK(links.next[3] == 1);
  CHECK(links.next[1] == 0);
  CHECK(links.next[0] == kNone);
  CHECK(links.prev[3] == head);
  CHECK(links.prev[head] == kNone);
  CHECK(links.next[2] == kNone);  // not a member

  const auto one = build_dll(3, OrderedPrefix{0, {2}});
  CHECK(one.next[one.head()] == 2);
  CHECK(one.next[2] == kNone);
}

TEST_CASE("delete and restore keep links and block sizes consistent") {
  const auto list = selection_fixture();
  Preprocessed<std::int64_t> state(list, 2);
  const auto initial = state;

  SUBCASE("unlinking the middle element and putting it back") {
    state.delete_index(1);  // rectangle 2
    CHECK(state.live_members(1) == idx1({4, 1}));
    CHECK(state.live_members(0) == idx1({5, 1}));
    state.restore_index(1);
    CHECK(state.live_members(1) == idx1({4, 2, 1}));
    CHECK(state == initial);
  }

  SUBCASE("a rectangle outside every prefix is a no-op") {
    // Rectangle 3 is neither among the 3 largest λ nor the 3 smallest ρ.
    CHECK(state.block_of(2, 0) == kNoBlock);
    CHECK(state.block_of(2, 1) == kNoBlock);
    state.delete_index(2);
    CHECK(state.live_members(0) == initial.live_members(0));
    CHECK(state.live_members(1) == initial.live_members(1));
    state.restore_index(2);
    CHECK(state == initial);
  }

  SUBCASE("sole member of a block drops to zero") {
    const auto b = state.block_of(4, 0);  // rectangle 5, λ = 9
    CHECK(state.block_size(b, 0) == 1);
    state.delete_index(4);
    CHECK(state.block_size(b, 0) == 0);
    CHECK(state.live_count(0) == 2);
    state.restore_index(4);
    CHECK(state == initial);
  }

  SUBCASE("smallest tracks deletions") {
    CHECK(state.smallest(1) == 3);
    state.delete_index(3);
    CHECK(state.smallest(1) == 1);
    state.delete_index(1);
    CHECK(state.smallest(1) == 0);  // r = 2 deletions, last member left
    state.restore_index(1);
    state.restore_index(3);
    CHECK(state == initial);
  }
}

TEST_CASE("Preprocessed rejects budgets outside 0 < r < N") {
  const auto list = selection_fixture();
  CHECK_THROWS_AS(Preprocessed<std::int64_t>(list, 0), InputError);
  CHECK_THROWS_AS(Preprocessed<std::int64_t>(list, 5), InputError);
}

TEST_CASE("prefix columns see the same minimum as the full lists") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const Index n = 2 + static_cast<Index>(rng() % 12);
    const int d = 1 + static_cast<int>(rng() % 3);
    const auto list = random_instance(rng, n, d, 0.6, 8);
    const Index r = 1 + static_cast<Index>(rng() % (n - 1));
    Preprocessed<std::int64_t> state(list, r, rng());

    std::vector<Index> order(n);
    for (Index j = 0; j < n; ++j) order[j] = j;
    std::shuffle(order.begin(), order.end(), rng);
    const Index k = static_cast<Index>(rng() % (r + 1));
    std::vector<Index> gone(order.begin(), order.begin() + k);
    for (Index j : gone) state.delete_index(j);

    for (int o = 0; o < list.orders(); ++o) {
      REQUIRE(state.live_count(o) >= 1);
      CHECK(state.smallest(o) == full_smallest(list, o, gone));
      // Live block sizes sum to the live count of the column.
      std::int32_t total = 0;
      for (std::size_t b = 0; b < state.blocks(o).initial_sizes.size(); ++b) {
        const auto size = state.block_size(static_cast<std::int32_t>(b), o);
        CHECK(size >= 0);
        CHECK(size <= state.blocks(o).initial_sizes[b]);
        total += size;
      }
      CHECK(total == state.live_count(o));
    }
    for (auto it = gone.rbegin(); it != gone.rend(); ++it) state.restore_index(*it);
  }
}

TEST_CASE("a truncated last block only looks exhausted when the budget is spent") {
  // Exhaustive over all deletion sets of size <= r on small instances: when
  // the live minimum sits in the last prefix block with one live member,
  // either its full-list block also has one live member or r deletions are
  // already outstanding.
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const Index n = 3 + static_cast<Index>(rng() % 6);
    const auto list = random_instance(rng, n, 1 + static_cast<int>(rng() % 2), 0.8, 4);
    const Index r = 1 + static_cast<Index>(rng() % (n - 1));
    Preprocessed<std::int64_t> state(list, r);
    for (Index size = 0; size <= r; ++size) {
      for_each_subset(n, size, [&](std::span<const Index> X) {
        for (Index j : X) state.delete_index(j);
        for (int o = 0; o < list.orders(); ++o) {
          const Index k = state.smallest(o);
          const auto b = state.block_of(k, o);
          const bool last = b + 1 == static_cast<std::int32_t>(
                                         state.blocks(o).initial_sizes.size());
          if (!last || state.block_size(b, o) != 1) continue;
          Index full_live = 0;
          for (Index j = 0; j < n; ++j) {
            if (std::find(X.begin(), X.end(), j) == X.end() &&
                list.coord(j, o) == list.coord(k, o)) {
              ++full_live;
            }
          }
          CHECK((full_live == 1 || static_cast<Index>(X.size()) == r));
        }
        for (auto it = X.rbegin(); it != X.rend(); ++it) state.restore_index(*it);
      });
    }
  }
}

TEST_CASE("balanced delete/restore nestings return to the initial snapshot") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 4 + static_cast<Index>(rng() % 20);
    const auto list = random_instance(rng, n, 2, 0.5);
    const Index r = 1 + static_cast<Index>(rng() % (n - 1));
    Preprocessed<std::int64_t> state(list, r);
    const auto initial = state;
    std::vector<Index> stack;
    for (int step = 0; step < 60; ++step) {
      const bool push = stack.empty() ||
                        (static_cast<Index>(stack.size()) < r && rng() % 2 == 0);
      if (push) {
        // Delete a live column minimum, as the search does.
        const int o = static_cast<int>(rng() % list.orders());
        const Index j = state.smallest(o);
        state.delete_index(j);
        stack.push_back(j);
      } else {
        state.restore_index(stack.back());
        stack.pop_back();
      }
    }
    while (!stack.empty()) {
      state.restore_index(stack.back());
      stack.pop_back();
    }
    CHECK(state == initial);
  }
}
