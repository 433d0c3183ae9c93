#include "natquant/solver.hpp"

#include <algorithm>
#include <limits>

namespace natquant {

namespace {

// Exact block costs over {1,...,T}: fin(i,j) = sse of [i,j], and for
// distributions with a tail, inf(m) = sse of [m, inf).
class CostCache {
 public:
  CostCache(const DiscreteDistribution& d, std::uint64_t T) : T_(T) {
    fin_.resize(T + 1);
    for (std::uint64_t i = 1; i <= T; ++i) {
      fin_[i].reserve(T - i + 1);
      MomentTriple acc{0, 0, 0};
      for (std::uint64_t j = i; j <= T; ++j) {
        acc += d.block_moments(j, j);
        fin_[i].push_back(acc.sse());
      }
    }
    if (d.has_tail()) {
      inf_.resize(T + 1);
      for (std::uint64_t m = 1; m <= T; ++m) {
        inf_[m] = d.moments(Block::from(m)).sse();
      }
    }
  }

  const Rational& fin(std::uint64_t i, std::uint64_t j) const {
    return fin_[i][j - i];
  }
  const Rational& inf(std::uint64_t m) const { return inf_[m]; }
  std::uint64_t truncation() const { return T_; }

 private:
  std::uint64_t T_;
  std::vector<std::vector<Rational>> fin_;
  std::vector<Rational> inf_;
};

// val[j][i]: minimal cost of splitting [1, i] into j nonempty contiguous
// blocks; preds[j][i] lists every split point achieving it.
struct DpTable {
  std::vector<std::vector<std::optional<Rational>>> val;
  std::vector<std::vector<std::vector<std::uint64_t>>> preds;

  DpTable(const CostCache& costs, std::uint64_t rows, bool want_preds) {
    const std::uint64_t T = costs.truncation();
    val.assign(rows + 1, std::vector<std::optional<Rational>>(T + 1));
    if (want_preds) {
      preds.assign(rows + 1,
                   std::vector<std::vector<std::uint64_t>>(T + 1));
    }
    val[0][0] = Rational(0);
    for (std::uint64_t j = 1; j <= rows; ++j) {
      for (std::uint64_t i = j; i <= T; ++i) {
        std::optional<Rational> best;
        std::vector<std::uint64_t> best_k;
        for (std::uint64_t k = j - 1; k < i; ++k) {
          if (!val[j - 1][k]) continue;
          Rational total = *val[j - 1][k] + costs.fin(k + 1, i);
          if (!best || total < *best) {
            best = std::move(total);
            if (want_preds) best_k.assign(1, k);
          } else if (want_preds && total == *best) {
            best_k.push_back(k);
          }
        }
        val[j][i] = std::move(best);
        if (want_preds) preds[j][i] = std::move(best_k);
      }
    }
  }

  // All boundary sequences of j-block partitions of [1, end] attaining
  // the minimum, each in ascending order.
  std::vector<std::vector<std::uint64_t>> backtrack(std::uint64_t j,
                                                    std::uint64_t end) const {
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> current;
    walk(j, end, current, out);
    for (auto& b : out) std::reverse(b.begin(), b.end());
    return out;
  }

 private:
  void walk(std::uint64_t j, std::uint64_t i,
            std::vector<std::uint64_t>& current,
            std::vector<std::vector<std::uint64_t>>& out) const {
    if (j == 0) {
      if (i == 0) out.push_back(current);
      return;
    }
    for (std::uint64_t k : preds[j][i]) {
      current.push_back(k + 1);
      walk(j - 1, k, current, out);
      current.pop_back();
    }
  }
};

void check_n(const DiscreteDistribution& d, std::uint64_t n) {
  if (n < 1) throw SolverError("n must be at least 1");
  if (!d.has_tail() && n > d.max_support()) {
    throw TooManyMeansError("requested " + std::to_string(n) +
                            " means for a support of size " +
                            std::to_string(d.max_support()));
  }
}

std::uint64_t default_initial_truncation(const DiscreteDistribution& d,
                                         std::uint64_t n) {
  return n + (d.has_tail() ? d.tail()->start : 0) + 16;
}

SolveResult finalize(const DiscreteDistribution& d, std::uint64_t n,
                     Rational vn,
                     std::vector<BlockPartition> partitions,
                     std::uint64_t truncation) {
  SolveResult r;
  r.n = n;
  r.vn = std::move(vn);
  std::sort(partitions.begin(), partitions.end());
  partitions.erase(std::unique(partitions.begin(), partitions.end()),
                   partitions.end());
  r.optima.reserve(partitions.size());
  for (auto& p : partitions) {
    Quantizer q = centroids(d, p);
    r.optima.emplace_back(std::move(p), std::move(q));
  }
  r.truncation_used = truncation;
  return r;
}

// One exact solve of every n in [n_from, n_to] at a fixed truncation.
// For distributions with a tail also reports, per n, the minimal cost of
// an (n-1)-block partition of the full finite prefix [1, T]; together
// with monotonicity of block sse this bounds every tail start beyond T.
struct FixedTruncationSolve {
  std::vector<SolveResult> results;
  std::vector<std::optional<Rational>> boundary_cost;  // indexed n - n_from
};

FixedTruncationSolve solve_at(const DiscreteDistribution& d,
                              std::uint64_t n_from, std::uint64_t n_to,
                              std::uint64_t T, bool want_optima) {
  const CostCache costs(d, T);
  const DpTable dp(costs, n_to, want_optima);
  FixedTruncationSolve out;
  for (std::uint64_t n = n_from; n <= n_to; ++n) {
    std::optional<Rational> best;
    std::vector<std::uint64_t> best_m;
    for (std::uint64_t m = n; m <= T; ++m) {
      const auto& prefix = dp.val[n - 1][m - 1];
      if (!prefix) continue;
      Rational total = *prefix + costs.inf(m);
      if (!best || total < *best) {
        best = std::move(total);
        best_m.assign(1, m);
      } else if (total == *best) {
        best_m.push_back(m);
      }
    }
    if (!best) throw SolverError("no feasible partition at truncation");
    std::vector<BlockPartition> partitions;
    if (want_optima) {
      for (std::uint64_t m : best_m) {
        for (auto& fin : dp.backtrack(n - 1, m - 1)) {
          fin.push_back(m);
          partitions.push_back(BlockPartition{std::move(fin)});
        }
      }
    }
    out.results.push_back(
        finalize(d, n, *best, std::move(partitions), T));
    out.boundary_cost.push_back(dp.val[n - 1][T]);
  }
  return out;
}

std::vector<SolveResult> solve_finite(const DiscreteDistribution& d,
                                      std::uint64_t n_from, std::uint64_t n_to,
                                      bool want_optima) {
  const std::uint64_t N = d.max_support();
  const CostCache costs(d, N);
  const DpTable dp(costs, n_to, want_optima);
  std::vector<SolveResult> out;
  for (std::uint64_t n = n_from; n <= n_to; ++n) {
    std::vector<BlockPartition> partitions;
    if (want_optima) {
      for (auto& b : dp.backtrack(n, N)) {
        partitions.push_back(BlockPartition{std::move(b)});
      }
    }
    out.push_back(finalize(d, n, *dp.val[n][N], std::move(partitions), N));
  }
  return out;
}

bool same_outcome(const SolveResult& a, const SolveResult& b,
                  bool want_optima) {
  if (a.vn != b.vn) return false;
  if (!want_optima) return true;
  if (a.optima.size() != b.optima.size()) return false;
  for (std::size_t i = 0; i < a.optima.size(); ++i) {
    if (a.optima[i].first != b.optima[i].first) return false;
  }
  return true;
}

}  // namespace

Block BlockPartition::block(std::size_t i, const DiscreteDistribution& d) const {
  const std::uint64_t first = boundaries[i];
  if (i + 1 < boundaries.size()) {
    return Block::range(first, boundaries[i + 1] - 1);
  }
  return d.has_tail() ? Block::from(first)
                      : Block::range(first, d.max_support());
}

std::vector<Block> BlockPartition::blocks(const DiscreteDistribution& d) const {
  std::vector<Block> out;
  out.reserve(boundaries.size());
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    out.push_back(block(i, d));
  }
  return out;
}

Rational distortion(const DiscreteDistribution& d, const BlockPartition& p) {
  if (p.boundaries.empty() || p.boundaries.front() != 1) {
    throw CoverageMismatchError("partition must start at support point 1");
  }
  for (std::size_t i = 1; i < p.boundaries.size(); ++i) {
    if (p.boundaries[i] <= p.boundaries[i - 1]) {
      throw CoverageMismatchError("boundaries must be strictly increasing");
    }
  }
  if (!d.has_tail() && p.boundaries.back() > d.max_support()) {
    throw CoverageMismatchError("partition extends past the support");
  }
  Rational total = 0;
  for (const auto& b : p.blocks(d)) total += d.sse(b);
  return total;
}

Quantizer centroids(const DiscreteDistribution& d, const BlockPartition& p) {
  Quantizer q;
  q.points.reserve(p.size());
  for (const auto& b : p.blocks(d)) q.points.push_back(d.mean(b));
  return q;
}

std::vector<SolveResult> solve_range(const DiscreteDistribution& d,
                                     std::uint64_t n_from, std::uint64_t n_to,
                                     const SolverConfig& cfg) {
  if (n_from < 1 || n_from > n_to) throw SolverError("bad n range");
  check_n(d, n_to);
  if (!d.has_tail()) return solve_finite(d, n_from, n_to, cfg.want_optima);

  std::uint64_t T = cfg.initial_truncation
                        ? *cfg.initial_truncation
                        : default_initial_truncation(d, n_to);
  T = std::max<std::uint64_t>(T, n_to + 2);
  if (T >= cfg.max_truncation) {
    throw SolverError("initial truncation must be below max truncation");
  }

  FixedTruncationSolve prev = solve_at(d, n_from, n_to, T, cfg.want_optima);
  while (true) {
    const std::uint64_t T2 = std::min(2 * T, cfg.max_truncation);
    FixedTruncationSolve cur = solve_at(d, n_from, n_to, T2, cfg.want_optima);
    bool certified = true;
    for (std::size_t i = 0; i < cur.results.size(); ++i) {
      if (!same_outcome(prev.results[i], cur.results[i], cfg.want_optima)) {
        certified = false;
        break;
      }
      // Finite-prefix costs are nondecreasing in the prefix length and
      // every infinite block has strictly positive sse, so once the best
      // (n-1)-block cost of [1, T] reaches vn no tail start beyond T
      // can tie the optimum.
      const auto& bound = cur.boundary_cost[i];
      if (bound && *bound < cur.results[i].vn) {
        certified = false;
        break;
      }
    }
    if (certified) return std::move(cur.results);
    if (T2 >= cfg.max_truncation) {
      throw TruncationExceededError(
          "result not certified by truncation " +
          std::to_string(cfg.max_truncation));
    }
    prev = std::move(cur);
    T = T2;
  }
}

SolveResult solve_n_means(const DiscreteDistribution& d, std::uint64_t n,
                          const SolverConfig& cfg) {
  return std::move(solve_range(d, n, n, cfg).front());
}

SolveResult brute_force_n_means(const DiscreteDistribution& d, std::uint64_t n,
                                std::uint64_t T) {
  check_n(d, n);
  if (!d.has_tail()) T = std::min(T, d.max_support());
  if (n > T) throw SolverError("truncation smaller than n");
  if (d.has_tail() && T < d.tail()->start) {
    throw SolverError("truncation must reach the tail start");
  }
  const CostCache costs(d, T);

  std::optional<Rational> best;
  std::vector<BlockPartition> argmins;
  std::vector<std::uint64_t> bounds(n);
  bounds[0] = 1;

  // Enumerates every strictly increasing boundary sequence; running
  // partial costs, no pruning.
  auto close_cost = [&](std::uint64_t start) {
    return d.has_tail() ? costs.inf(start) : costs.fin(start, T);
  };
  auto enumerate = [&](auto&& self, std::size_t depth,
                       const Rational& partial) -> void {
    if (depth == n) {
      Rational total = partial + close_cost(bounds[n - 1]);
      if (!best || total < *best) {
        best = total;
        argmins.assign(1, BlockPartition{bounds});
      } else if (total == *best) {
        argmins.push_back(BlockPartition{bounds});
      }
      return;
    }
    // Leave room for the remaining blocks.
    for (std::uint64_t b = bounds[depth - 1] + 1; b + (n - depth - 1) <= T;
         ++b) {
      bounds[depth] = b;
      self(self, depth + 1,
           partial + costs.fin(bounds[depth - 1], b - 1));
    }
  };
  if (n == 1) {
    best = close_cost(1);
    argmins.assign(1, BlockPartition{{1}});
  } else {
    enumerate(enumerate, 1, Rational(0));
  }
  return finalize(d, n, *best, std::move(argmins), T);
}

VerificationReport verify_centroid_condition(const DiscreteDistribution& d,
                                             const SolveResult& r) {
  VerificationReport report;
  for (const auto& [partition, quantizer] : r.optima) {
    const auto blocks = partition.blocks(d);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const Rational expected = d.mean(blocks[i]);
      if (quantizer.points[i] != expected) {
        report.ok = false;
        report.violations.push_back(
            "point " + fraction_string(quantizer.points[i]) + " of block " +
            block_string(blocks[i]) + " differs from centroid " +
            fraction_string(expected));
      }
    }
  }
  return report;
}

VerificationReport verify_voronoi_consistency(const DiscreteDistribution& d,
                                              const SolveResult& r) {
  VerificationReport report;
  for (const auto& [partition, quantizer] : r.optima) {
    auto& mids = report.midpoints.emplace_back();
    for (std::size_t i = 0; i + 1 < quantizer.points.size(); ++i) {
      const Rational mid =
          (quantizer.points[i] + quantizer.points[i + 1]) / 2;
      mids.push_back(mid);
      const std::uint64_t next_first = partition.boundaries[i + 1];
      const std::uint64_t prev_last = next_first - 1;
      if (!(Rational(prev_last) < mid && mid < Rational(next_first))) {
        report.ok = false;
        report.violations.push_back(
            "midpoint " + fraction_string(mid) +
            " does not separate blocks at " + std::to_string(next_first));
      }
      if (mid == Rational(prev_last) || mid == Rational(next_first)) {
        report.ok = false;
        report.violations.push_back("support point carries boundary mass at " +
                                    fraction_string(mid));
      }
    }
  }
  return report;
}

}  // namespace natquant
