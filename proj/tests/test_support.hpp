#pragma once

#include <cstdint>
#include <random>

#include "natquant/distribution.hpp"

namespace natquant::testing {

// Direct-summation oracle for block moments: loops over pmf values with
// no prefix cache and no closed forms.
inline MomentTriple direct_moments(const DiscreteDistribution& d,
                                   std::uint64_t k, std::uint64_t l) {
  MomentTriple t{0, 0, 0};
  for (std::uint64_t j = k; j <= l; ++j) {
    const Rational p = d.pmf(j);
    t.m0 += p;
    t.m1 += p * j;
    t.m2 += p * j * j;
  }
  return t;
}

inline DiscreteDistribution make_dist_a() {
  return DiscreteDistribution::from_permutation({2, 1});
}

inline DiscreteDistribution make_dist_b() {
  return DiscreteDistribution::from_permutation({3, 2, 1});
}

inline DiscreteDistribution make_dist_c() {
  DiscreteDistribution d({Rational(149, 200), Rational(1, 200)},
                         GeometricTail{3, 1, Rational(1, 2)});
  validate(d);
  return d;
}

inline DiscreteDistribution make_geometric() {
  return DiscreteDistribution::from_permutation({1});
}

}  // namespace natquant::testing
