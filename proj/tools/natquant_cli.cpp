// Command-line front end for exact n-means quantization of discrete
// distributions on the natural numbers.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage/parse error,
// 3 solver error.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "natquant/analysis.hpp"
#include "natquant/io.hpp"
#include "natquant/solver.hpp"

namespace {

using namespace natquant;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;

struct CommonOptions {
  std::string dist = "distA";
  unsigned digits = 6;
  std::string format = "table";
  std::uint64_t max_trunc = 4096;

  SolverConfig solver_config() const {
    SolverConfig cfg;
    cfg.max_truncation = max_trunc;
    return cfg;
  }
  bool json() const { return format == "json"; }
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_dist = true) {
  if (with_dist) {
    cmd->add_option("--dist", opts.dist,
                    "built-in name, defn:<permutation>, inline JSON, or path");
  }
  cmd->add_option("--digits", opts.digits, "decimal digits for annotations")
      ->check(CLI::Range(0u, 50u));
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"table", "json"}));
  cmd->add_option("--max-trunc", opts.max_trunc,
                  "truncation ceiling for tail certification");
}

void print_result_table(const DiscreteDistribution& d, const SolveResult& r,
                        unsigned digits) {
  std::cout << "n=" << r.n << "  V_n = " << fraction_string(r.vn) << " (~"
            << decimal_string(r.vn, digits) << ")\n";
  for (const auto& [partition, quantizer] : r.optima) {
    std::cout << "  blocks:";
    for (const auto& b : partition.blocks(d)) std::cout << " " << block_string(b);
    std::cout << "\n  centroids:";
    for (const auto& c : quantizer.points) {
      std::cout << " " << fraction_string(c);
    }
    std::cout << "\n";
  }
}

int emit_solve(const DiscreteDistribution& d,
               const std::vector<SolveResult>& results,
               const CommonOptions& opts, const std::string& command) {
  for (const auto& r : results) {
    const auto centroid = verify_centroid_condition(d, r);
    const auto voronoi = verify_voronoi_consistency(d, r);
    if (!centroid.ok || !voronoi.ok) {
      std::cerr << "optimality verification failed for n=" << r.n << "\n";
      return kExitMismatch;
    }
  }
  if (opts.json()) {
    nlohmann::ordered_json doc;
    doc["command"] = command;
    doc["distribution"] = distribution_to_json(d);
    doc["results"] = nlohmann::ordered_json::array();
    for (const auto& r : results) {
      doc["results"].push_back(solve_result_to_json(d, r, opts.digits));
    }
    doc["verified"] = true;
    std::cout << doc.dump(2) << "\n";
  } else {
    for (const auto& r : results) print_result_table(d, r, opts.digits);
  }
  return kExitOk;
}

int run_verify_paper(const CommonOptions& opts, std::uint64_t sweep_to) {
  bool ok = true;
  auto line = [&](bool pass, const std::string& what) {
    std::cout << (pass ? "PASS  " : "FAIL  ") << what << "\n";
    if (!pass) ok = false;
  };

  for (const auto& fixture : paper_fixtures()) {
    for (const auto& row : fixture.rows) {
      SolveResult r;
      try {
        r = solve_n_means(fixture.dist, row.n, opts.solver_config());
      } catch (const SolverError& e) {
        line(false, fixture.name + " n=" + std::to_string(row.n) +
                        " solver error: " + e.what());
        continue;
      }
      bool pass = r.vn == row.vn;
      if (!row.optima.empty()) {
        pass = pass && r.optima.size() == row.optima.size();
        for (const auto& expected : row.optima) {
          bool found = false;
          for (const auto& [p, q] : r.optima) {
            if (p == expected) found = true;
          }
          pass = pass && found;
        }
      }
      pass = pass && verify_centroid_condition(fixture.dist, r).ok &&
             verify_voronoi_consistency(fixture.dist, r).ok;
      line(pass, fixture.name + " n=" + std::to_string(row.n) +
                     " V_n=" + fraction_string(row.vn));
    }
    if (fixture.closed_form_from) {
      try {
        const auto report = verify_theorem1(fixture.dist, sweep_to);
        line(report.ok, fixture.name + " closed-form sweep n=" +
                            std::to_string(*fixture.closed_form_from) + ".." +
                            std::to_string(sweep_to));
      } catch (const std::exception& e) {
        line(false, fixture.name + " closed-form sweep: " + std::string(e.what()));
      }
    }
  }
  return ok ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact n-means quantization of discrete distributions on N"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::uint64_t n = 2;
  std::uint64_t n_from = 2;
  std::uint64_t n_to = 8;
  std::uint64_t sweep_to = 40;

  auto* solve = app.add_subcommand("solve", "optimal n-means for one n");
  add_common(solve, opts);
  solve->add_option("--n", n, "number of means")->required();

  auto* sweep = app.add_subcommand("sweep", "optimal n-means over a range");
  add_common(sweep, opts);
  sweep->add_option("--n-from", n_from, "first n");
  sweep->add_option("--n-to", n_to, "last n")->required();

  auto* conjecture = app.add_subcommand(
      "check-conjecture", "test the singleton-prefix property over a range");
  add_common(conjecture, opts);
  conjecture->add_option("--n-from", n_from, "first n");
  conjecture->add_option("--n-to", n_to, "last n")->required();

  auto* verify = app.add_subcommand(
      "verify-paper", "re-derive every published fixture result exactly");
  add_common(verify, opts, /*with_dist=*/false);
  verify->add_option("--sweep-to", sweep_to,
                     "upper n for the closed-form sweeps");

  auto* dimension = app.add_subcommand(
      "dimension", "quantization-dimension sequence 2 ln n / (-ln V_n)");
  add_common(dimension, opts);
  dimension->add_option("--n-to", n_to, "last n")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return run_verify_paper(opts, sweep_to);

    const DiscreteDistribution d = resolve_distribution(opts.dist);

    if (solve->parsed()) {
      const auto r = solve_n_means(d, n, opts.solver_config());
      return emit_solve(d, {r}, opts, "solve");
    }
    if (sweep->parsed()) {
      const auto results = solve_range(d, n_from, n_to, opts.solver_config());
      return emit_solve(d, results, opts, "sweep");
    }
    if (conjecture->parsed()) {
      const auto reports = check_conjecture(d, n_from, n_to);
      if (opts.json()) {
        nlohmann::ordered_json doc;
        doc["command"] = "check-conjecture";
        doc["distribution"] = distribution_to_json(d);
        doc["reports"] = nlohmann::ordered_json::array();
        for (const auto& r : reports) {
          doc["reports"].push_back(conjecture_report_to_json(r));
        }
        std::cout << doc.dump(2) << "\n";
      } else {
        for (const auto& r : reports) {
          std::cout << "n=" << r.n << "  holds="
                    << (r.holds ? "true" : "false");
          if (!r.missing_points.empty()) {
            std::cout << "  missing:";
            for (auto p : r.missing_points) std::cout << " " << p;
          }
          std::cout << "\n";
        }
      }
      return kExitOk;
    }
    if (dimension->parsed()) {
      const auto sweep_result = dimension_sequence(d, n_to, opts.digits);
      if (opts.json()) {
        nlohmann::ordered_json doc;
        doc["command"] = "dimension";
        doc["distribution"] = distribution_to_json(d);
        doc.update(dimension_sweep_to_json(sweep_result, opts.digits));
        std::cout << doc.dump(2) << "\n";
      } else {
        for (const auto& s : sweep_result.samples) {
          std::cout << "n=" << s.n << "  V_n=" << fraction_string(s.vn)
                    << "  d_n=" << s.dn_string << "\n";
        }
        for (auto skipped : sweep_result.skipped) {
          std::cerr << "note: n=" << skipped
                    << " skipped (V_n >= 1, quotient undefined)\n";
        }
      }
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DistributionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const AnalysisError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
