#include "natquant/distribution.hpp"

#include <algorithm>

namespace natquant {

MassNotOneError::MassNotOneError(Rational deficit_)
    : DistributionError("total mass differs from 1 by " +
                        fraction_string(deficit_)),
      deficit(std::move(deficit_)) {}

std::string block_string(const Block& b) {
  if (b.infinite()) return "[" + std::to_string(b.first) + ",∞)";
  return "[" + std::to_string(b.first) + "," + std::to_string(*b.last) + "]";
}

MomentTriple& MomentTriple::operator+=(const MomentTriple& o) {
  m0 += o.m0;
  m1 += o.m1;
  m2 += o.m2;
  return *this;
}

MomentTriple& MomentTriple::operator-=(const MomentTriple& o) {
  m0 -= o.m0;
  m1 -= o.m1;
  m2 -= o.m2;
  return *this;
}

Rational MomentTriple::mean() const {
  if (m0 <= 0) throw EmptyBlockError("mean of a block with no mass");
  return m1 / m0;
}

Rational MomentTriple::sse() const {
  if (m0 <= 0) throw EmptyBlockError("sse of a block with no mass");
  return m2 - m1 * m1 / m0;
}

DiscreteDistribution::DiscreteDistribution(std::vector<Rational> head,
                                           std::optional<GeometricTail> tail)
    : head_(std::move(head)), tail_(std::move(tail)) {
  prefix_.push_back(MomentTriple{0, 0, 0});
}

DiscreteDistribution::DiscreteDistribution(const DiscreteDistribution& o)
    : head_(o.head_), tail_(o.tail_) {
  std::scoped_lock lock(o.cache_mutex_);
  prefix_ = o.prefix_;
}

DiscreteDistribution& DiscreteDistribution::operator=(
    const DiscreteDistribution& o) {
  if (this == &o) return *this;
  std::scoped_lock lock(cache_mutex_, o.cache_mutex_);
  head_ = o.head_;
  tail_ = o.tail_;
  prefix_ = o.prefix_;
  return *this;
}

DiscreteDistribution DiscreteDistribution::from_permutation(
    const std::vector<std::uint64_t>& permutation) {
  const std::uint64_t m = permutation.size();
  if (m == 0) {
    throw DistributionError("permutation must be nonempty");
  }
  std::vector<bool> seen(m, false);
  for (auto v : permutation) {
    if (v < 1 || v > m || seen[v - 1]) {
      throw DistributionError(
          "sequence is not a permutation of {1,...," + std::to_string(m) + "}");
    }
    seen[v - 1] = true;
  }
  std::vector<Rational> head;
  head.reserve(m);
  for (auto v : permutation) head.push_back(pow2(-static_cast<long>(v)));
  GeometricTail tail{m + 1, 1, Rational(1, 2)};
  DiscreteDistribution d(std::move(head), tail);
  validate(d);
  return d;
}

std::uint64_t DiscreteDistribution::max_support() const {
  if (has_tail()) {
    throw DistributionError("infinite support has no maximum point");
  }
  return head_.size();
}

Rational DiscreteDistribution::pmf(std::uint64_t j) const {
  if (j == 0) return 0;
  if (j <= head_.size()) return head_[j - 1];
  if (tail_ && j >= tail_->start) {
    return tail_->coeff * pow_rational(tail_->ratio, j);
  }
  return 0;
}

MomentTriple DiscreteDistribution::prefix(std::uint64_t i) const {
  std::scoped_lock lock(cache_mutex_);
  while (prefix_.size() <= i) {
    const std::uint64_t j = prefix_.size();
    const Rational p = pmf(j);
    MomentTriple next = prefix_.back();
    next += MomentTriple{p, p * j, p * j * j};
    prefix_.push_back(std::move(next));
  }
  return prefix_[i];
}

MomentTriple DiscreteDistribution::block_moments(std::uint64_t k,
                                                 std::uint64_t l) const {
  if (k < 1 || k > l) throw EmptyBlockError("empty block");
  if (!has_tail() && l > head_.size()) {
    throw OutOfSupportError("block extends past the last support point");
  }
  return prefix(l) - prefix(k - 1);
}

MomentTriple DiscreteDistribution::tail_moments(std::uint64_t m) const {
  if (!tail_) throw NoTailError("distribution has no tail");
  if (m < tail_->start) {
    throw StartInsideHeadError("tail query starts inside the head");
  }
  const Rational& r = tail_->ratio;
  const Rational one_minus = 1 - r;
  const Rational rm = tail_->coeff * pow_rational(r, m);
  // Closed-form geometric sums: for S_i = sum_{j>=m} j^i r^j,
  //   S_0 = r^m / (1-r)
  //   S_1 = r^m (m/(1-r) + r/(1-r)^2)
  //   S_2 = r^m (m^2/(1-r) + 2mr/(1-r)^2 + (r+r^2)/(1-r)^3)
  const Rational inv1 = 1 / one_minus;
  const Rational inv2 = inv1 * inv1;
  const Rational inv3 = inv2 * inv1;
  MomentTriple t;
  t.m0 = rm * inv1;
  t.m1 = rm * (Rational(m) * inv1 + r * inv2);
  t.m2 = rm * (Rational(m) * m * inv1 + 2 * Rational(m) * r * inv2 +
               (r + r * r) * inv3);
  return t;
}

MomentTriple DiscreteDistribution::moments(const Block& b) const {
  if (!b.infinite()) return block_moments(b.first, *b.last);
  if (!has_tail()) {
    throw NoTailError("infinite block over a finite distribution");
  }
  if (b.first < 1) throw EmptyBlockError("blocks start at 1");
  const std::uint64_t ts = tail_->start;
  if (b.first >= ts) return tail_moments(b.first);
  return block_moments(b.first, ts - 1) + tail_moments(ts);
}

Rational DiscreteDistribution::mean(const Block& b) const {
  return moments(b).mean();
}

Rational DiscreteDistribution::sse(const Block& b) const {
  return moments(b).sse();
}

std::pair<Rational, Rational> DiscreteDistribution::mean_and_variance() const {
  const Block support =
      has_tail() ? Block::from(1) : Block::range(1, max_support());
  const MomentTriple t = moments(support);
  return {t.mean(), t.sse()};
}

std::optional<std::uint64_t> DiscreteDistribution::definition_family_k() const {
  if (!tail_) return std::nullopt;
  const std::uint64_t k = head_.size() + 1;
  if (k < 2) return std::nullopt;
  if (tail_->start != k || tail_->coeff != 1 || tail_->ratio != Rational(1, 2)) {
    return std::nullopt;
  }
  std::vector<bool> seen(k - 1, false);
  for (const auto& p : head_) {
    // p must be 2^-v for some v in 1..k-1, each used once.
    bool matched = false;
    for (std::uint64_t v = 1; v < k; ++v) {
      if (!seen[v - 1] && p == pow2(-static_cast<long>(v))) {
        seen[v - 1] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return std::nullopt;
  }
  return k;
}

void validate(const DiscreteDistribution& d) {
  for (const auto& p : d.head()) {
    if (p <= 0 || p >= 1) {
      throw NonpositiveProbabilityError(
          "head probability " + fraction_string(p) + " outside (0,1)");
    }
  }
  Rational mass = 0;
  for (const auto& p : d.head()) mass += p;
  if (d.has_tail()) {
    const auto& t = *d.tail();
    if (t.coeff <= 0) {
      throw NonpositiveProbabilityError("tail coefficient must be positive");
    }
    if (t.ratio <= 0 || t.ratio >= 1) {
      throw NonpositiveProbabilityError("tail ratio must lie in (0,1)");
    }
    if (t.start != d.head_size() + 1) {
      throw TailStartMismatchError(
          "tail starts at " + std::to_string(t.start) + " but head ends at " +
          std::to_string(d.head_size()));
    }
    mass += d.tail_moments(t.start).m0;
  }
  if (mass != 1) throw MassNotOneError(1 - mass);
}

}  // namespace natquant
