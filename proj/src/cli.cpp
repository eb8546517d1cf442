#include "maxisect/cli.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxisect/instance_io.hpp"
#include "maxisect/oracle.hpp"
#include "maxisect/search.hpp"

namespace maxisect::cli {
namespace {

using nlohmann::json;

// Integral volumes that do not fit in 64 bits are emitted as decimal strings.
json volume_json(__int128 v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return to_string(v);
}

json volume_json(double v) { return v; }

std::vector<Index> one_based(const std::vector<Index>& indices) {
  std::vector<Index> out(indices);
  for (auto& j : out) ++j;
  return out;
}

std::string join(const std::vector<Index>& indices) {
  std::string out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(indices[i]);
  }
  return out.empty() ? "-" : out;
}

template <class V>
std::string dvolume_text(const DVolume<V>& v) {
  return "(" + std::to_string(v.dim) + ", " + to_string(v.vol) + ")";
}

template <class T>
void write_json(std::ostream& out, const RectList<T>& list, Index r,
                const Solution<T>& solution) {
  json doc;
  doc["n"] = list.size();
  doc["d"] = list.d();
  doc["r"] = r;
  doc["coordinates"] = CoordTraits<T>::kName;
  doc["indexing"] = "1-based";
  json rows = json::array();
  for (const auto& a : solution.answers) {
    rows.push_back({{"s", a.s},
                    {"dim", a.best.dim},
                    {"vol", volume_json(a.best.vol)},
                    {"empty", a.empty},
                    {"discard_minimal", one_based(a.discard_minimal)},
                    {"discard_exact", one_based(a.discard_exact)},
                    {"achieved_with", a.achieved_with}});
  }
  doc["results"] = std::move(rows);
  doc["instrumentation"] = {{"nodes", solution.stats.nodes},
                            {"calls", solution.stats.calls},
                            {"call_bound", solution.stats.call_bound},
                            {"elapsed_ns", solution.stats.elapsed.count()}};
  out << doc.dump(2) << '\n';
}

template <class T>
void write_tsv(std::ostream& out, const RectList<T>& list, Index r,
               const Solution<T>& solution) {
  out << "# n=" << list.size() << " d=" << list.d() << " r=" << r
      << " coordinates=" << CoordTraits<T>::kName << " indexing=1-based\n";
  out << "s\tdim\tvol\tempty\tachieved_with\tdiscard_minimal\tdiscard_exact\n";
  for (const auto& a : solution.answers) {
    out << a.s << '\t' << a.best.dim << '\t' << to_string(a.best.vol) << '\t'
        << (a.empty ? "true" : "false") << '\t' << a.achieved_with << '\t'
        << join(one_based(a.discard_minimal)) << '\t'
        << join(one_based(a.discard_exact)) << '\n';
  }
  out << "# nodes=" << solution.stats.nodes << " calls=" << solution.stats.calls
      << " call_bound=" << solution.stats.call_bound
      << " elapsed_ns=" << solution.stats.elapsed.count() << '\n';
}

void require_budget(Index n, Index r) {
  if (r < 1 || r >= n) {
    throw InputError("r=" + std::to_string(r) + " must satisfy 0 < r < N=" +
                     std::to_string(n));
  }
}

// Compares search answers against brute force on (dim, vol). Mismatches are
// written to `err`.
template <class T>
bool cross_check(const RectList<T>& list, Index r, const Solution<T>& solution,
                 std::uint64_t budget, std::ostream* report, std::ostream& err) {
  const auto oracle = oracle_report(list, r, budget);
  bool ok = true;
  for (Index s = 0; s <= r; ++s) {
    const auto& mine = solution.answers[s].best;
    const auto& truth = oracle.per_s[s].best;
    const bool same = mine == truth;
    ok = ok && same;
    if (report) {
      *report << "s=" << s << " search=" << dvolume_text(mine)
              << " oracle=" << dvolume_text(truth) << (same ? " ok" : " MISMATCH")
              << '\n';
    }
    if (!same) {
      err << "mismatch at s=" << s << ": search " << dvolume_text(mine)
          << ", brute force " << dvolume_text(truth) << '\n';
    }
  }
  return ok;
}

struct SolveArgs {
  std::string input;
  Index r = 0;
  std::string format = "json";
  bool check = false;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t budget = kDefaultSubsetBudget;
  bool literal_shift_delete = false;
};

int solve_cmd(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  const Instance instance = load_instance(args.input);
  return std::visit(
      [&](const auto& list) {
        require_budget(list.size(), args.r);
        SearchOptions options;
        options.seed = args.seed;
        options.literal_shift_delete = args.literal_shift_delete;
        const auto solution = solve(list, args.r, options);
        if (args.check && !cross_check(list, args.r, solution, args.budget,
                                       nullptr, err)) {
          return kMismatch;
        }
        if (args.format == "tsv") {
          write_tsv(out, list, args.r, solution);
        } else {
          write_json(out, list, args.r, solution);
        }
        return kOk;
      },
      instance);
}

int check_cmd(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  const Instance instance = load_instance(args.input);
  return std::visit(
      [&](const auto& list) {
        require_budget(list.size(), args.r);
        if (subsets_up_to(list.size(), args.r) > args.budget) {
          throw BudgetExceeded("N=" + std::to_string(list.size()) + ", r=" +
                               std::to_string(args.r) +
                               " is beyond the brute-force budget of " +
                               std::to_string(args.budget) + " subsets");
        }
        SearchOptions options;
        options.seed = args.seed;
        options.literal_shift_delete = args.literal_shift_delete;
        const auto solution = solve(list, args.r, options);
        const bool ok = cross_check(list, args.r, solution, args.budget, &out, err);
        out << (ok ? "PASS" : "FAIL") << '\n';
        return ok ? kOk : kMismatch;
      },
      instance);
}

struct GenArgs {
  GenParams params;
  std::string format = "csv";
};

int gen_cmd(const GenArgs& args, std::ostream& out) {
  if (args.params.n < 2) throw InputError("gen needs n >= 2");
  const auto list = generate(args.params);
  if (args.format == "json") {
    json rects = json::array();
    for (Index j = 0; j < list.size(); ++j) {
      const auto row = list.row(j);
      rects.push_back(std::vector<std::int64_t>(row.begin(), row.end()));
    }
    out << json{{"rects", rects}}.dump() << '\n';
  } else {
    write_csv(out, list);
  }
  return kOk;
}

struct BenchArgs {
  std::vector<Index> sizes;
  Index r = 1;
  int d = 2;
  std::uint64_t seed = 1;
  int reps = 5;
  double dup_prob = 0.0;
  std::int64_t hi = 1'000'000'000;
};

int bench_cmd(const BenchArgs& args, std::ostream& out) {
  if (args.reps < 1) throw InputError("reps must be positive");
  out << "n,d,r,reps,median_ms,nodes,calls,call_bound\n";
  for (Index n : args.sizes) {
    require_budget(n, args.r);
    GenParams params;
    params.n = n;
    params.d = args.d;
    params.hi = args.hi;
    params.dup_prob = args.dup_prob;
    params.seed = args.seed;
    const auto list = generate(params);
    std::vector<double> times;
    Instrumentation stats;
    for (int rep = 0; rep < args.reps; ++rep) {
      const auto solution = solve(list, args.r);
      stats = solution.stats;
      times.push_back(std::chrono::duration<double, std::milli>(stats.elapsed).count());
    }
    std::sort(times.begin(), times.end());
    out << n << ',' << args.d << ',' << args.r << ',' << args.reps << ','
        << times[times.size() / 2] << ',' << stats.nodes << ',' << stats.calls
        << ',' << stats.call_bound << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discard up to r boxes to maximize the (dim, vol) of the "
               "intersection of the rest. Rectangle indices are 1-based."};
  app.name("maxisect");
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve an instance for every s <= r");
  solve->add_option("--input", solve_args.input, "CSV or JSON instance")->required();
  solve->add_option("--r", solve_args.r, "Discard budget, 0 < r < N")->required();
  solve->add_option("--format", solve_args.format, "Report format")
      ->check(CLI::IsMember({"json", "tsv"}));
  solve->add_flag("--check", solve_args.check,
                  "Cross-check against brute force before reporting");
  solve->add_option("--seed", solve_args.seed, "Selection pivot seed");
  solve->add_option("--budget", solve_args.budget, "Brute-force subset budget");
  solve->add_flag("--literal-shift-delete", solve_args.literal_shift_delete,
                  "Diagnostic: also delete on S moves (gives wrong answers)");

  SolveArgs check_args;
  auto* check = app.add_subcommand("check", "Compare search and brute force per s");
  check->add_option("--input", check_args.input, "CSV or JSON instance")->required();
  check->add_option("--r", check_args.r, "Discard budget, 0 < r < N")->required();
  check->add_option("--seed", check_args.seed, "Selection pivot seed");
  check->add_option("--budget", check_args.budget, "Brute-force subset budget");
  check->add_flag("--literal-shift-delete", check_args.literal_shift_delete,
                  "Diagnostic: also delete on S moves (gives wrong answers)");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a random or nested instance");
  gen->add_option("--n", gen_args.params.n, "Number of boxes")->required();
  gen->add_option("--d", gen_args.params.d, "Dimension")->required();
  gen->add_option("--lo", gen_args.params.lo, "Smallest coordinate");
  gen->add_option("--hi", gen_args.params.hi, "Largest coordinate");
  gen->add_option("--dup-prob", gen_args.params.dup_prob,
                  "Probability of reusing an earlier endpoint value");
  gen->add_flag("--nested", gen_args.params.nested, "Concentric boxes [-k,k]^d");
  gen->add_option("--seed", gen_args.params.seed, "RNG seed")->required();
  gen->add_option("--format", gen_args.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Time the solver over instance sizes");
  bench->add_option("--sizes", bench_args.sizes, "Comma-separated N values")
      ->required()
      ->delimiter(',');
  bench->add_option("--r", bench_args.r, "Discard budget")->required();
  bench->add_option("--d", bench_args.d, "Dimension")->required();
  bench->add_option("--seed", bench_args.seed, "RNG seed")->required();
  bench->add_option("--reps", bench_args.reps, "Repetitions per size (median)");
  bench->add_option("--dup-prob", bench_args.dup_prob, "Generator duplicate probability");
  bench->add_option("--hi", bench_args.hi, "Largest coordinate");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve) return solve_cmd(solve_args, out, err);
    if (*check) return check_cmd(check_args, out, err);
    if (*gen) return gen_cmd(gen_args, out);
    if (*bench) return bench_cmd(bench_args, out);
  } catch (const BudgetExceeded& e) {
    err << "refused: " << e.what() << '\n';
    return kBudgetRefused;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::overflow_error& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace maxisect::cli
