#pragma once

#include <atomic>
#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bcs/instances.hpp"
#include "bcs/io.hpp"
#include "bcs/slab_dag.hpp"
#include "bcs/solve.hpp"
#include "bcs/svg.hpp"

// Command line front end.  Exit codes: 0 success, 1 invalid solution
// (check), 2 malformed input/arguments, 3 budget refusal, 4 internal
// validation failure.

namespace bcs::cli {

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

inline int resolve_k(const InstanceFile& inst, int k_flag) {
  if (k_flag > 0) return k_flag;
  if (inst.k) return *inst.k;
  throw ParseError("no k given: pass --k or put a 'k=<int>' line in the instance");
}

inline std::vector<long long> parse_int_list(const std::string& csv) {
  std::vector<long long> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    const std::string item = csv.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) throw ParseError("empty entry in integer list '" + csv + "'");
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument("trail");
    } catch (const std::exception&) {
      throw ParseError("bad integer '" + item + "' in list");
    }
  }
  return out;
}

struct SolveOutcome {
  int exit_code = 0;
  std::string stdout_text;
  std::string stderr_text;
};

// Shared by `solve` and `batch`: solve one instance file and write the
// solution next to it (or to `out_path`).
inline SolveOutcome solve_one_file(const std::string& path, int k_flag,
                                   const std::string& algorithm,
                                   std::string out_path, const Budget& budget) {
  SolveOutcome res;
  try {
    const InstanceFile inst = parse_instance(read_file(path));
    const int k = resolve_k(inst, k_flag);
    if (k < 1) throw ParseError("k must be >= 1");
    std::string used;
    const auto start = std::chrono::steady_clock::now();
    Solution sol = solve_with_algorithm(algorithm, inst.points, k, budget, &used);
    const double elapsed = ms_since(start);
    normalize_solution(sol);
    if (out_path.empty()) out_path = path + ".solution.json";
    write_file(out_path, format_solution(SolutionFile{sol, used, elapsed}));
    std::string sizes;
    for (const auto& s : sol.sets) {
      if (!sizes.empty()) sizes += " ";
      sizes += std::to_string(s.size());
    }
    res.stdout_text = path + ": value " + std::to_string(sol.value) +
                      (sol.infeasible_k ? " (k > n, infeasible)" : "") +
                      " | sizes " + sizes + " | solver " + used + " | wrote " +
                      out_path + "\n";
    res.stderr_text = path + ": " + std::to_string(elapsed) + " ms\n";
  } catch (const ParseError& e) {
    res.exit_code = 2;
    res.stderr_text = std::string("error: ") + e.what() + "\n";
  } catch (const BudgetExceeded& e) {
    res.exit_code = 3;
    res.stderr_text = std::string("error: ") + e.what() + "\n";
  } catch (const std::invalid_argument& e) {
    // Bad algorithm/k combinations are usage errors, not internal failures.
    res.exit_code = 2;
    res.stderr_text = std::string("error: ") + e.what() + "\n";
  } catch (const std::logic_error& e) {
    res.exit_code = 4;
    res.stderr_text = std::string("internal error: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    res.exit_code = 2;
    res.stderr_text = std::string("error: ") + e.what() + "\n";
  }
  return res;
}

}  // namespace detail

inline int run(std::vector<std::string> args) {
  CLI::App app{"exact solvers for bottleneck convex subsets"};
  app.require_subcommand(1);

  Budget budget;
  try {
    budget = Budget::from_env();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "solve one instance file");
  std::string solve_path, solve_algorithm = "auto", solve_out;
  int solve_k = 0;
  bool solve_all = false;
  std::size_t solve_limit = 1000;
  solve->add_option("instance", solve_path, "instance file")->required();
  solve->add_option("--k", solve_k, "number of subsets (overrides k= in the file)");
  solve->add_option("--algorithm", solve_algorithm, "auto|slab|fpt|brute|k1")
      ->check(CLI::IsMember({"auto", "slab", "fpt", "brute", "k1"}));
  solve->add_option("--out", solve_out, "output path (default: <instance>.solution.json)");
  solve->add_flag("--all", solve_all, "enumerate all optimal solutions (slab sweep)");
  solve->add_option("--limit", solve_limit, "cap for --all enumeration");

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate instance files");
  gen->require_subcommand(1);
  std::string gen_out;
  int gen_n = 8, gen_bound = 100, gen_rows = 3, gen_cols = 3, gen_k = 0;
  std::uint64_t gen_seed = 1;
  bool gen_general = false;
  std::string gen_a, gen_b, gen_c;

  auto* gen_random_cmd = gen->add_subcommand("random", "uniform random integer points");
  gen_random_cmd->add_option("--n", gen_n, "point count")->required();
  gen_random_cmd->add_option("--seed", gen_seed, "rng seed");
  gen_random_cmd->add_option("--bound", gen_bound, "coordinates in [0,bound]");
  gen_random_cmd->add_flag("--general-position", gen_general, "forbid collinear triples");
  gen_random_cmd->add_option("--k", gen_k, "write a k= header");
  gen_random_cmd->add_option("--out", gen_out, "output path")->required();

  auto* gen_convex_cmd = gen->add_subcommand("convex", "points in strictly convex position");
  gen_convex_cmd->add_option("--n", gen_n, "point count")->required();
  gen_convex_cmd->add_option("--seed", gen_seed, "rng seed");
  gen_convex_cmd->add_option("--k", gen_k, "write a k= header");
  gen_convex_cmd->add_option("--out", gen_out, "output path")->required();

  auto* gen_grid_cmd = gen->add_subcommand("grid", "full integer grid");
  gen_grid_cmd->add_option("--rows", gen_rows, "rows")->required();
  gen_grid_cmd->add_option("--cols", gen_cols, "columns")->required();
  gen_grid_cmd->add_option("--k", gen_k, "write a k= header");
  gen_grid_cmd->add_option("--out", gen_out, "output path")->required();

  auto* gen_gadget_cmd = gen->add_subcommand(
      "dnmts-gadget", "hardness gadget from a numerical-matching instance");
  gen_gadget_cmd->add_option("--a", gen_a, "comma-separated A entries");
  gen_gadget_cmd->add_option("--b", gen_b, "comma-separated B entries");
  gen_gadget_cmd->add_option("--c", gen_c, "comma-separated C entries");
  gen_gadget_cmd->add_option("--n", gen_n, "generate a random yes-instance of this size");
  gen_gadget_cmd->add_option("--seed", gen_seed, "rng seed for --n");
  gen_gadget_cmd->add_option("--out", gen_out, "output path")->required();

  // ---- check ----
  auto* check = app.add_subcommand("check", "validate a solution file against an instance");
  std::string check_instance, check_solution;
  int check_k = 0;
  check->add_option("instance", check_instance, "instance file")->required();
  check->add_option("solution", check_solution, "solution JSON")->required();
  check->add_option("--k", check_k, "expected set count (default: instance k= or set count)");

  // ---- plot ----
  auto* plot = app.add_subcommand("plot", "render an instance (and solution) as SVG");
  std::string plot_instance, plot_solution, plot_out;
  bool plot_logy = false;
  plot->add_option("instance", plot_instance, "instance file")->required();
  plot->add_option("--solution", plot_solution, "solution JSON to color sets");
  plot->add_option("--out", plot_out, "output SVG path")->required();
  plot->add_flag("--log-y", plot_logy, "log-compress the y axis");

  // ---- batch ----
  auto* batch = app.add_subcommand("batch", "solve many instance files");
  std::vector<std::string> batch_files;
  std::string batch_algorithm = "auto";
  int batch_k = 0, batch_jobs = 1;
  batch->add_option("files", batch_files, "instance files")->required();
  batch->add_option("--k", batch_k, "number of subsets (overrides k= headers)");
  batch->add_option("--algorithm", batch_algorithm, "auto|slab|fpt|brute|k1")
      ->check(CLI::IsMember({"auto", "slab", "fpt", "brute", "k1"}));
  batch->add_option("--jobs", batch_jobs, "worker threads")->check(CLI::PositiveNumber);

  try {
    std::reverse(args.begin(), args.end());  // CLI11 wants reversed argv-style
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) {
      if (!solve_all) {
        const auto res = detail::solve_one_file(solve_path, solve_k, solve_algorithm,
                                                solve_out, budget);
        std::cout << res.stdout_text;
        std::cerr << res.stderr_text;
        return res.exit_code;
      }
      const InstanceFile inst = parse_instance(read_file(solve_path));
      const int k = detail::resolve_k(inst, solve_k);
      const std::vector<Solution> all =
          enumerate_optimal_solutions(inst.points, k, solve_limit);
      nlohmann::json j;
      j["count"] = all.size();
      j["value"] = all.empty() ? 0 : all.front().value;
      auto& sols = j["solutions"] = nlohmann::json::array();
      for (const auto& sol : all) sols.push_back(sol.sets);
      const std::string out =
          solve_out.empty() ? solve_path + ".solutions.json" : solve_out;
      write_file(out, j.dump(2) + "\n");
      std::cout << solve_path << ": " << all.size() << " optimal solution(s) of value "
                << (all.empty() ? 0 : all.front().value) << " | wrote " << out << "\n";
      return 0;
    }

    if (gen->parsed()) {
      std::optional<int> header_k =
          gen_k > 0 ? std::optional<int>(gen_k) : std::nullopt;
      if (gen_random_cmd->parsed()) {
        const PointSet ps = gen_random(gen_n, gen_seed, gen_bound, gen_general);
        write_file(gen_out, format_instance(InstanceFile{ps, header_k}));
        std::cout << "wrote " << gen_out << " (" << ps.size() << " points)\n";
        return 0;
      }
      if (gen_convex_cmd->parsed()) {
        const PointSet ps = gen_convex_position(gen_n, gen_seed);
        write_file(gen_out, format_instance(InstanceFile{ps, header_k}));
        std::cout << "wrote " << gen_out << " (" << ps.size() << " points)\n";
        return 0;
      }
      if (gen_grid_cmd->parsed()) {
        const PointSet ps = gen_grid(gen_rows, gen_cols);
        write_file(gen_out, format_instance(InstanceFile{ps, header_k}));
        std::cout << "wrote " << gen_out << " (" << ps.size() << " points)\n";
        return 0;
      }
      // dnmts-gadget
      DnmtsInstance dn;
      if (!gen_a.empty() || !gen_b.empty() || !gen_c.empty()) {
        dn.A = detail::parse_int_list(gen_a);
        dn.B = detail::parse_int_list(gen_b);
        dn.C = detail::parse_int_list(gen_c);
        try {
          check_dnmts(dn);
        } catch (const std::invalid_argument& e) {
          throw ParseError(e.what());
        }
      } else {
        dn = gen_dnmts_yes(gen_n, gen_seed);
      }
      const AnglePartitionInstance ap = dnmts_to_angle_partition(dn);
      const GadgetInstance g = angle_partition_to_bcs(ap);
      write_file(gen_out, format_instance(InstanceFile{g.points, g.k}));
      write_file(gen_out + ".meta.json", format_gadget_sidecar(g));
      std::cout << "wrote " << gen_out << " (" << g.points.size() << " points, k=" << g.k
                << ", delta=" << to_string(g.delta)
                << ", escalations=" << g.delta_escalations
                << ", wedge_verified=" << (g.wedge_verified ? "true" : "false")
                << ")\n";
      if (static_cast<int>(dn.A.size()) <= budget.angle_max_n) {
        if (auto matching = brute_angle_partition(ap, budget)) {
          const Solution witness = build_gadget_witness(g, *matching);
          write_file(gen_out + ".witness.json",
                     format_solution(SolutionFile{witness, "witness", 0.0}));
          std::cout << "solvable matching found: wrote " << gen_out
                    << ".witness.json (value " << witness.value << ")\n";
        } else {
          std::cout << "no valid matching: expected optimum is 4n+6 or less\n";
        }
      }
      return 0;
    }

    if (check->parsed()) {
      const InstanceFile inst = parse_instance(read_file(check_instance));
      const SolutionFile sf = parse_solution(read_file(check_solution));
      int k = check_k;
      if (k <= 0) k = inst.k ? *inst.k : static_cast<int>(sf.solution.sets.size());
      if (auto err = validate_solution(inst.points, k, sf.solution)) {
        std::cout << "INVALID: " << *err << "\n";
        return 1;
      }
      std::cout << "OK: " << k << " disjoint sets in convex position, value "
                << sf.solution.value << "\n";
      return 0;
    }

    if (plot->parsed()) {
      const InstanceFile inst = parse_instance(read_file(plot_instance));
      std::optional<SolutionFile> sf;
      if (!plot_solution.empty()) sf = parse_solution(read_file(plot_solution));
      SvgOptions opt;
      opt.log_scale_y = plot_logy;
      write_file(plot_out,
                 render_svg(inst.points, sf ? &sf->solution : nullptr, opt));
      std::cout << "wrote " << plot_out << "\n";
      return 0;
    }

    if (batch->parsed()) {
      std::vector<detail::SolveOutcome> outcomes(batch_files.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&]() {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= batch_files.size()) break;
          outcomes[i] = detail::solve_one_file(batch_files[i], batch_k,
                                               batch_algorithm, "", budget);
        }
      };
      const int jobs = std::min<int>(batch_jobs, static_cast<int>(batch_files.size()));
      std::vector<std::thread> threads;
      for (int t = 0; t < std::max(1, jobs); ++t) threads.emplace_back(worker);
      for (auto& t : threads) t.join();
      int exit_code = 0;
      for (const auto& res : outcomes) {
        std::cout << res.stdout_text;
        std::cerr << res.stderr_text;
        if (exit_code == 0 && res.exit_code != 0) exit_code = res.exit_code;
      }
      return exit_code;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

inline int run_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
  return run(std::move(args));
}

}  // namespace bcs::cli
