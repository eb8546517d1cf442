// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "maxisect/instance_io.hpp"
#include "maxisect/oracle.hpp"
#include "maxisect/search.hpp"

using namespace maxisect;
using IList = RectList<std::int64_t>;
using IVol = DVolume<__int128>;

namespace {

struct Case {
  IList list;
  Index r;
};

std::string show(const IVol& v) {
  return "(" + std::to_string(v.dim) + "," + to_string(v.vol) + ")";
}

IList rows(const std::vector<std::vector<std::int64_t>>& r) { return IList::from_rows(r); }

IList nested_squares(int n) {
  std::vector<std::vector<std::int64_t>> out;
  for (std::int64_t k = 1; k <= n; ++k) out.push_back({-k, k, -k, k});
  return rows(out);
}

// Seeded family for criteria 1 and 4: every (N, d, dup, r) combination,
// several seeds each.
std::vector<Case> oracle_family() {
  std::vector<Case> out;
  std::uint64_t seed = 1;
  for (Index n = 2; n <= 12; ++n) {
    for (int d = 1; d <= 3; ++d) {
      for (double dup : {0.0, 0.5, 0.9}) {
        for (Index r = 1; r <= std::min<Index>(4, n - 1); ++r) {
          for (int rep = 0; rep < 4; ++rep) {
            GenParams p;
            p.n = n;
            p.d = d;
            p.hi = 12;
            p.dup_prob = dup;
            p.seed = seed++;
            out.push_back({generate(p), r});
          }
        }
      }
    }
  }
  return out;
}

// Seeded family for criteria 6 and 7.
std::vector<Case> bijection_family() {
  std::vector<Case> out;
  std::uint64_t seed = 100000;
  for (Index n = 2; n <= 8; ++n) {
    for (int d = 1; d <= 2; ++d) {
      for (double dup : {0.0, 0.5, 0.9}) {
        for (Index r = 1; r <= std::min<Index>(3, n - 1); ++r) {
          for (int rep = 0; rep < 6; ++rep) {
            GenParams p;
            p.n = n;
            p.d = d;
            p.hi = 8;
            p.dup_prob = dup;
            p.seed = seed++;
            out.push_back({generate(p), r});
          }
        }
      }
    }
  }
  return out;
}

struct Verdict {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

Verdict oracle_equivalence(const std::vector<Case>& family) {
  Verdict v;
  std::size_t checked = 0;
  for (const auto& [list, r] : family) {
    const auto solution = solve(list, r);
    const auto oracle = oracle_report(list, r);
    for (Index s = 0; s <= r; ++s) {
      ++checked;
      if (solution.answers[s].best != oracle.per_s[s].best) {
        v.fail("N=" + std::to_string(list.size()) + " d=" + std::to_string(list.d()) +
               " r=" + std::to_string(r) + " s=" + std::to_string(s) + ": search " +
               show(solution.answers[s].best) + " vs oracle " + show(oracle.per_s[s].best));
      }
    }
  }
  if (v.ok) {
    v.detail = std::to_string(family.size()) + " instances, " + std::to_string(checked) +
               " (instance, s) pairs";
  }
  return v;
}

Verdict regression_fixture() {
  Verdict v;
  const auto list = rows({{5, 10}, {5, 20}, {0, 6}, {0, 30}});
  const auto answers = solve(list, 2).answers;
  if (answers[2].best != IVol{1, 15}) v.fail("s=2 value " + show(answers[2].best));
  if (answers[2].discard_exact != std::vector<Index>{0, 2}) v.fail("s=2 discard set");
  if (answers[1].best != IVol{1, 5}) v.fail("s=1 value " + show(answers[1].best));
  if (answers[1].discard_exact != std::vector<Index>{2}) v.fail("s=1 discard set");
  if (v.ok) v.detail = "s=1 (1,5) {3}; s=2 (1,15) {1,3}";
  return v;
}

Verdict nested_instance() {
  Verdict v;
  const auto list = nested_squares(5);
  const auto answers = solve(list, 2).answers;
  const std::vector<IVol> expected{{2, 4}, {2, 16}, {2, 36}};
  for (Index s = 0; s <= 2; ++s) {
    if (answers[s].best != expected[s]) v.fail("s=" + std::to_string(s) + " " + show(answers[s].best));
  }
  const auto out = run_search(list, 2);
  std::set<Index> dropped;
  for (const auto& node : out.nodes) {
    if (node.move == Move::kDelta) dropped.insert(node.deleted);
  }
  if (dropped.size() > 2) v.fail(std::to_string(dropped.size()) + " distinct deleted indices");
  if (v.ok) v.detail = "volumes 4,16,36; distinct deleted indices " + std::to_string(dropped.size());
  return v;
}

Verdict complexity_bound(const std::vector<Case>& family) {
  Verdict v;
  double worst = 0.0;
  for (const auto& [list, r] : family) {
    const auto out = run_search(list, r);
    const auto bound = call_bound(r, list.orders());
    const auto expected = binomial(r + list.orders(), list.orders()) +
                          binomial(r + list.orders() + 1, list.orders()) - 1;
    if (bound != expected) v.fail("call_bound formula");
    if (out.calls > bound) {
      v.fail("N=" + std::to_string(list.size()) + " r=" + std::to_string(r) + ": " +
             std::to_string(out.calls) + " calls > " + std::to_string(bound));
    }
    worst = std::max(worst, static_cast<double>(out.calls) / static_cast<double>(bound));
  }
  for (std::uint64_t d = 1; d <= 4; ++d) {
    for (std::uint64_t p = 0; p <= 12; ++p) {
      if (step_bound(p, 0, d) != 1) v.fail("f(p,0) != 1");
    }
    for (std::uint64_t s = 0; s <= 12; ++s) {
      if (step_bound(0, s, d) != s + 1) v.fail("f(0,s) != s+1");
    }
    for (std::uint64_t p = 1; p <= 12; ++p) {
      for (std::uint64_t s = 1; s <= 12; ++s) {
        if (step_bound(p, s, d) != step_bound(p - 1, s, d) + step_bound(p, s - 1, d) + d) {
          v.fail("step_bound recurrence at p=" + std::to_string(p) + " s=" + std::to_string(s));
        }
      }
    }
  }
  if (v.ok) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "max calls/bound %.3f", worst);
    v.detail = buf;
  }
  return v;
}

double median_ms(const IList& list, Index r, int reps) {
  std::vector<double> times;
  for (int i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    const auto solution = solve(list, r);
    const auto stop = std::chrono::steady_clock::now();
    if (solution.answers.empty()) return -1.0;
    times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

Verdict linear_scaling() {
  Verdict v;
  GenParams p;
  p.d = 2;
  p.hi = 1'000'000'000;
  p.seed = 77;
  p.n = 100'000;
  const auto small = generate(p);
  p.n = 200'000;
  p.seed = 78;
  const auto large = generate(p);
  median_ms(small, 3, 1);  // warm up
  const double a = median_ms(small, 3, 5);
  const double b = median_ms(large, 3, 5);
  const double ratio = b / a;
  char buf[96];
  std::snprintf(buf, sizeof buf, "N=1e5 %.2f ms, N=2e5 %.2f ms, ratio %.2f", a, b, ratio);
  v.detail = buf;
  if (!(ratio <= 2.5)) v.ok = false;
  return v;
}

Verdict bijection(const std::vector<Case>& family) {
  Verdict v;
  std::size_t leaves = 0;
  for (const auto& [list, r] : family) {
    SearchOptions options;
    options.record_leaves = true;
    const auto out = run_search(list, r, options);
    const auto family_u = enumerate_Ur(list, r);
    std::multiset<IndexSet> seen;
    for (Handle leaf : out.leaves) {
      IndexSet u = extract_discards(out.nodes, leaf);
      const auto word = word_of(out.nodes, leaf);
      std::sort(u.begin(), u.end());
      seen.insert(u);
      if (family_u.count(u) == 0) {
        v.fail("leaf set outside the family, N=" + std::to_string(list.size()));
        continue;
      }
      if (canonical_word(list, std::span<const Index>(u), r).letters != word) {
        v.fail("leaf word " + word + " is not canonical");
      }
    }
    leaves += out.leaves.size();
    if (seen.size() != family_u.size() ||
        std::set<IndexSet>(seen.begin(), seen.end()) != family_u) {
      v.fail("leaf sets differ from the family: " + std::to_string(seen.size()) + " leaves, " +
             std::to_string(family_u.size()) + " sets");
    }
  }
  if (v.ok) {
    v.detail = std::to_string(family.size()) + " instances, " + std::to_string(leaves) + " leaves";
  }
  return v;
}

Verdict barrier_membership(const std::vector<Case>& family) {
  Verdict v;
  std::size_t tested = 0;
  for (const auto& [list, r] : family) {
    const auto family_u = enumerate_Ur(list, r);
    for (Index size = 0; size <= r; ++size) {
      for_each_subset(list.size(), size, [&](std::span<const Index> X) {
        ++tested;
        const bool listed = family_u.count(IndexSet(X.begin(), X.end())) == 1;
        if (verify_U_membership(list, X, r) != listed) {
          v.fail("disagreement at N=" + std::to_string(list.size()));
        }
      });
    }
  }
  if (v.ok) v.detail = std::to_string(tested) + " subsets";
  return v;
}

Verdict degenerate_cases() {
  Verdict v;
  const auto same = rows({{1, 4, 2, 7}, {1, 4, 2, 7}, {1, 4, 2, 7}, {1, 4, 2, 7}});
  for (const auto& a : solve(same, 3).answers) {
    if (a.best != IVol{2, 15}) v.fail("all-equal s=" + std::to_string(a.s) + " " + show(a.best));
  }
  const auto disjoint = rows({{0, 1, 0, 1}, {5, 6, 0, 1}, {2, 3, 0, 1}});
  const auto dis = solve(disjoint, 2).answers;
  if (dis[0].best.dim != -1 || !dis[0].empty) v.fail("disjoint s=0 " + show(dis[0].best));
  if (dis[2].best != IVol{2, 1}) v.fail("disjoint s=2 " + show(dis[2].best));
  const auto point = rows({{0, 2, 0, 2}, {2, 4, 2, 4}, {-5, 5, -5, 5}});
  const auto pt = solve(point, 1).answers;
  if (pt[0].best != IVol{0, 0}) v.fail("point s=0 " + show(pt[0].best));
  if (v.ok) v.detail = "all-equal (2,15) for s=0..3; disjoint (-1,0) at s=0; point (0,0)";
  return v;
}

}  // namespace

int main() {
  const auto oracle_cases = oracle_family();
  const auto small_cases = bijection_family();

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 oracle equivalence", [&] { return oracle_equivalence(oracle_cases); }},
      {"2 regression fixture", regression_fixture},
      {"3 nested squares", nested_instance},
      {"4 call-count bound", [&] { return complexity_bound(oracle_cases); }},
      {"5 linear scaling in N", linear_scaling},
      {"6 leaf/family bijection", [&] { return bijection(small_cases); }},
      {"7 barrier membership test", [&] { return barrier_membership(small_cases); }},
      {"8 degenerate inputs", degenerate_cases},
  };

  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.ok) ++failures;
    std::cout << (v.ok ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
