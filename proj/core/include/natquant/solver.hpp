#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "natquant/distribution.hpp"

namespace natquant {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TooManyMeansError : public SolverError {
 public:
  using SolverError::SolverError;
};

class TruncationExceededError : public SolverError {
 public:
  using SolverError::SolverError;
};

class CoverageMismatchError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// Ordered contiguous partition of the support. Block i is
/// [boundaries[i], boundaries[i+1] - 1]; the last block runs to infinity
/// when the distribution has a tail, else to the last support point.
struct BlockPartition {
  std::vector<std::uint64_t> boundaries;

  std::size_t size() const { return boundaries.size(); }
  /// The i-th block (0-based) of a partition over distribution d.
  Block block(std::size_t i, const DiscreteDistribution& d) const;
  std::vector<Block> blocks(const DiscreteDistribution& d) const;

  bool operator==(const BlockPartition&) const = default;
  auto operator<=>(const BlockPartition&) const = default;
};

struct Quantizer {
  std::vector<Rational> points;
  bool operator==(const Quantizer&) const = default;
};

struct SolveResult {
  std::uint64_t n = 0;
  Rational vn;
  /// Every exactly-optimal partition with its centroid quantizer, sorted
  /// lexicographically by boundary sequence.
  std::vector<std::pair<BlockPartition, Quantizer>> optima;
  std::uint64_t truncation_used = 0;
};

struct SolverConfig {
  /// Defaults to n + tail start + 16 when unset.
  std::optional<std::uint64_t> initial_truncation;
  std::uint64_t max_truncation = 4096;
  /// When false, optima are not collected (vn only); used by sweeps that
  /// only need the error sequence.
  bool want_optima = true;
};

/// Exact distortion of the centroid quantizer of partition p: the sum of
/// each block's sse. Throws CoverageMismatchError when p does not cover
/// the support.
Rational distortion(const DiscreteDistribution& d, const BlockPartition& p);

/// Centroids of all blocks of p.
Quantizer centroids(const DiscreteDistribution& d, const BlockPartition& p);

/// Exact optimal n-means by dynamic programming over contiguous
/// partitions, with the infinite tail block evaluated in closed form.
/// Returns the exact minimum and every argmin partition. Truncation is
/// escalated by doubling until the result is stable across two
/// consecutive truncations and the monotone finite-prefix bound rules
/// out any larger tail start.
SolveResult solve_n_means(const DiscreteDistribution& d, std::uint64_t n,
                          const SolverConfig& cfg = {});

/// Solves every n in [n_from, n_to] off one shared dynamic-programming
/// table per truncation level.
std::vector<SolveResult> solve_range(const DiscreteDistribution& d,
                                     std::uint64_t n_from, std::uint64_t n_to,
                                     const SolverConfig& cfg = {});

/// Independent oracle: exhaustively enumerates every contiguous
/// n-partition of {1,...,T} (last block a tail when the distribution has
/// one) with no pruning and no shared subproblems.
SolveResult brute_force_n_means(const DiscreteDistribution& d, std::uint64_t n,
                                std::uint64_t T);

struct VerificationReport {
  bool ok = true;
  std::vector<std::string> violations;
  /// Voronoi check only: per optimum, the consecutive-centroid midpoints.
  std::vector<std::vector<Rational>> midpoints;
};

/// Checks that every quantizer point equals the exact centroid of its
/// block, for every optimum in r.
VerificationReport verify_centroid_condition(const DiscreteDistribution& d,
                                             const SolveResult& r);

/// Checks that each consecutive-centroid midpoint lies strictly between
/// the adjacent blocks, and flags any support point landing exactly on a
/// midpoint.
VerificationReport verify_voronoi_consistency(const DiscreteDistribution& d,
                                              const SolveResult& r);

}  // namespace natquant
