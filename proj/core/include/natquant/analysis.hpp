#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "natquant/distribution.hpp"
#include "natquant/solver.hpp"

namespace natquant {

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotDefinitionFamilyError : public AnalysisError {
 public:
  using AnalysisError::AnalysisError;
};

class NTooSmallError : public AnalysisError {
 public:
  using AnalysisError::AnalysisError;
};

/// 50-decimal-digit binary float, the only inexact number type in the
/// project; used solely for dimension-sequence logarithms.
using HighFloat = boost::multiprecision::cpp_bin_float_50;

HighFloat to_high_float(const Rational& q);

/// For distributions in the permutation-head family with parameter k and
/// n >= k+2, the two candidate partitions:
///   singletons 1..n-2, [n-1, n], [n+1, inf)
///   singletons 1..n-3, [n-2, n-1], [n, n+1], [n+2, inf)
std::pair<BlockPartition, BlockPartition> theorem1_candidates(
    const DiscreteDistribution& d, std::uint64_t n);

struct Theorem1Entry {
  std::uint64_t n = 0;
  Rational vn;
  Rational expected;              // 2^(3-n)/3
  Rational candidate_cost_first;  // distortion of each candidate
  Rational candidate_cost_second;
  bool both_present = false;      // both candidates appear among the optima
  bool pass = false;
};

struct Theorem1Report {
  bool ok = true;
  std::vector<Theorem1Entry> entries;
};

/// For each n in [k+2, n_max]: both candidates cost exactly 2^(3-n)/3,
/// that value equals the solved vn, and both candidates are optima.
Theorem1Report verify_theorem1(const DiscreteDistribution& d,
                               std::uint64_t n_max);

struct ConjectureReport {
  std::uint64_t n = 0;
  bool holds = false;
  std::vector<std::pair<BlockPartition, Quantizer>> witness;
  /// Points of {1,...,n-3} that some optimum fails to carry as a
  /// singleton centroid.
  std::vector<std::uint64_t> missing_points;
};

/// Solves each n exactly and tests whether every optimum keeps
/// 1, ..., n-3 as singleton blocks.
std::vector<ConjectureReport> check_conjecture(const DiscreteDistribution& d,
                                               std::uint64_t n_from,
                                               std::uint64_t n_to);

struct DimensionSample {
  std::uint64_t n = 0;
  Rational vn;
  HighFloat dn;          // 2 ln n / (-ln vn)
  std::string dn_string; // rendered to the requested digits
};

struct DimensionSweep {
  std::vector<DimensionSample> samples;
  /// n values skipped because vn >= 1 leaves the quotient undefined.
  std::vector<std::uint64_t> skipped;
};

DimensionSweep dimension_sequence(const DiscreteDistribution& d,
                                  std::uint64_t n_max, unsigned digits);

struct GoldenRow {
  std::uint64_t n = 0;
  Rational vn;
  /// The complete expected optima set, when the source states it.
  std::vector<BlockPartition> optima;
};

struct PaperFixture {
  std::string name;
  DiscreteDistribution dist;
  std::vector<GoldenRow> rows;
  /// First n covered by the 2^(3-n)/3 closed form, when applicable.
  std::optional<std::uint64_t> closed_form_from;
};

/// The four built-in distributions with their published result tables:
/// distA (head 1/4, 1/2), distB (head 1/8, 1/4, 1/2), distC
/// (head 149/200, 1/200), and the plain 2^-j geometric.
std::vector<PaperFixture> paper_fixtures();

/// Fixture lookup by name; throws AnalysisError for unknown names.
PaperFixture paper_fixture(const std::string& name);

}  // namespace natquant
