#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "natquant/rational.hpp"

namespace natquant {

class DistributionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MassNotOneError : public DistributionError {
 public:
  explicit MassNotOneError(Rational deficit_);
  Rational deficit;
};

class NonpositiveProbabilityError : public DistributionError {
 public:
  using DistributionError::DistributionError;
};

class TailStartMismatchError : public DistributionError {
 public:
  using DistributionError::DistributionError;
};

class EmptyBlockError : public DistributionError {
 public:
  using DistributionError::DistributionError;
};

class NoTailError : public DistributionError {
 public:
  using DistributionError::DistributionError;
};

class StartInsideHeadError : public DistributionError {
 public:
  using DistributionError::DistributionError;
};

class OutOfSupportError : public DistributionError {
 public:
  using DistributionError::DistributionError;
};

/// Contiguous set of support points [first, last], or [first, inf) when
/// last is absent.
struct Block {
  std::uint64_t first = 1;
  std::optional<std::uint64_t> last;

  static Block range(std::uint64_t a, std::uint64_t b) { return {a, b}; }
  static Block from(std::uint64_t a) { return {a, std::nullopt}; }
  bool infinite() const { return !last.has_value(); }
  bool operator==(const Block&) const = default;
};

std::string block_string(const Block& b);

/// (mass, first moment, second moment) of a set of weighted points.
struct MomentTriple {
  Rational m0, m1, m2;

  MomentTriple& operator+=(const MomentTriple& o);
  MomentTriple& operator-=(const MomentTriple& o);
  friend MomentTriple operator+(MomentTriple a, const MomentTriple& b) { return a += b; }
  friend MomentTriple operator-(MomentTriple a, const MomentTriple& b) { return a -= b; }
  bool operator==(const MomentTriple&) const = default;

  /// Conditional mean m1/m0. Requires m0 > 0.
  Rational mean() const;
  /// Sum of squared deviations about the mean: m2 - m1^2/m0. Requires m0 > 0.
  Rational sse() const;
};

/// pmf(j) = coeff * ratio^j for j >= start.
struct GeometricTail {
  std::uint64_t start = 1;
  Rational coeff = 1;
  Rational ratio{1, 2};
  bool operator==(const GeometricTail&) const = default;
};

/// Probability distribution supported on {1, 2, 3, ...}: an explicit head
/// (p_1, ..., p_{k-1}) at points 1..k-1, plus an optional geometric tail
/// from k. Immutable after construction; the prefix-moment cache grows
/// monotonically under a lock, so sharing across threads is safe.
class DiscreteDistribution {
 public:
  DiscreteDistribution(std::vector<Rational> head,
                       std::optional<GeometricTail> tail);
  DiscreteDistribution(const DiscreteDistribution& o);
  DiscreteDistribution& operator=(const DiscreteDistribution& o);
  DiscreteDistribution(DiscreteDistribution&&) = default;
  DiscreteDistribution& operator=(DiscreteDistribution&&) = default;

  /// Head p_j = 2^-perm(j), where perm is a permutation of (1, ..., k-1),
  /// plus the 2^-j tail from k. Rejects non-permutations.
  static DiscreteDistribution from_permutation(
      const std::vector<std::uint64_t>& permutation);

  const std::vector<Rational>& head() const { return head_; }
  const std::optional<GeometricTail>& tail() const { return tail_; }
  bool has_tail() const { return tail_.has_value(); }
  std::uint64_t head_size() const { return head_.size(); }
  /// Largest support point; only meaningful for finite distributions.
  std::uint64_t max_support() const;

  Rational pmf(std::uint64_t j) const;

  /// Exact moments over the finite block [k, l].
  MomentTriple block_moments(std::uint64_t k, std::uint64_t l) const;
  /// Closed-form moments of the geometric tail restricted to [m, inf).
  /// Requires a tail and m >= tail start.
  MomentTriple tail_moments(std::uint64_t m) const;
  /// Moments of an arbitrary block, finite or infinite.
  MomentTriple moments(const Block& b) const;

  /// Conditional mean of the block (the block's centroid).
  Rational mean(const Block& b) const;
  /// The block's contribution to distortion: sum of p_j (j - mean)^2.
  Rational sse(const Block& b) const;

  /// (E(X), V_1): global mean and the one-point quantization error.
  std::pair<Rational, Rational> mean_and_variance() const;

  /// If the head is a permutation of {1/2, ..., 1/2^(k-1)} and the tail is
  /// the plain 2^-j tail from k, returns k.
  std::optional<std::uint64_t> definition_family_k() const;

  bool operator==(const DiscreteDistribution& o) const {
    return head_ == o.head_ && tail_ == o.tail_;
  }

 private:
  std::vector<Rational> head_;
  std::optional<GeometricTail> tail_;

  // prefix_[i] = moments of [1, i]; index 0 is the empty prefix.
  mutable std::vector<MomentTriple> prefix_;
  mutable std::mutex cache_mutex_;

  MomentTriple prefix(std::uint64_t i) const;
};

/// Checks all structural invariants with exact arithmetic. Throws
/// NonpositiveProbabilityError, TailStartMismatchError, or MassNotOneError
/// (with the exact deficit 1 - total mass).
void validate(const DiscreteDistribution& d);

}  // namespace natquant
