#include "natquant/analysis.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace natquant {

HighFloat to_high_float(const Rational& q) {
  return HighFloat(numerator(q).str()) / HighFloat(denominator(q).str());
}

namespace {

std::uint64_t require_definition_family(const DiscreteDistribution& d) {
  const auto k = d.definition_family_k();
  if (!k) {
    throw NotDefinitionFamilyError(
        "distribution head is not a permutation of {1/2,...,1/2^(k-1)} "
        "with a plain 2^-j tail");
  }
  return *k;
}

std::string render(const HighFloat& x, unsigned digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(static_cast<int>(digits)) << x;
  return os.str();
}

}  // namespace

std::pair<BlockPartition, BlockPartition> theorem1_candidates(
    const DiscreteDistribution& d, std::uint64_t n) {
  const std::uint64_t k = require_definition_family(d);
  if (n < k + 2) {
    throw NTooSmallError("candidates require n >= k+2 = " +
                         std::to_string(k + 2));
  }
  BlockPartition first, second;
  // first: singletons 1..n-2, then [n-1, n], then [n+1, inf).
  for (std::uint64_t j = 1; j <= n - 2; ++j) first.boundaries.push_back(j);
  first.boundaries.push_back(n - 1);
  first.boundaries.push_back(n + 1);
  // second: singletons 1..n-3, then [n-2, n-1], [n, n+1], [n+2, inf).
  for (std::uint64_t j = 1; j <= n - 3; ++j) second.boundaries.push_back(j);
  second.boundaries.push_back(n - 2);
  second.boundaries.push_back(n);
  second.boundaries.push_back(n + 2);
  return {std::move(first), std::move(second)};
}

Theorem1Report verify_theorem1(const DiscreteDistribution& d,
                               std::uint64_t n_max) {
  const std::uint64_t k = require_definition_family(d);
  if (n_max < k + 2) {
    throw NTooSmallError("sweep requires n_max >= k+2");
  }
  Theorem1Report report;
  const auto solved = solve_range(d, k + 2, n_max);
  for (const auto& result : solved) {
    const std::uint64_t n = result.n;
    Theorem1Entry entry;
    entry.n = n;
    entry.vn = result.vn;
    entry.expected = pow2(3 - static_cast<long>(n)) / 3;
    const auto [c1, c2] = theorem1_candidates(d, n);
    entry.candidate_cost_first = distortion(d, c1);
    entry.candidate_cost_second = distortion(d, c2);
    auto contains = [&](const BlockPartition& p) {
      return std::any_of(result.optima.begin(), result.optima.end(),
                         [&](const auto& o) { return o.first == p; });
    };
    entry.both_present = contains(c1) && contains(c2);
    entry.pass = entry.vn == entry.expected &&
                 entry.candidate_cost_first == entry.expected &&
                 entry.candidate_cost_second == entry.expected &&
                 entry.both_present;
    if (!entry.pass) report.ok = false;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

std::vector<ConjectureReport> check_conjecture(const DiscreteDistribution& d,
                                               std::uint64_t n_from,
                                               std::uint64_t n_to) {
  if (n_from < 2) throw AnalysisError("conjecture check starts at n >= 2");
  std::vector<ConjectureReport> reports;
  const auto solved = solve_range(d, n_from, n_to);
  for (const auto& result : solved) {
    ConjectureReport report;
    report.n = result.n;
    report.witness = result.optima;
    const std::uint64_t prefix = result.n >= 4 ? result.n - 3 : 0;
    std::vector<bool> missing(prefix, false);
    for (const auto& [partition, quantizer] : result.optima) {
      for (std::uint64_t j = 1; j <= prefix; ++j) {
        // Point j is kept iff block j is the singleton [j, j].
        const bool kept = partition.boundaries[j - 1] == j &&
                          partition.boundaries[j] == j + 1;
        if (!kept) missing[j - 1] = true;
      }
    }
    for (std::uint64_t j = 1; j <= prefix; ++j) {
      if (missing[j - 1]) report.missing_points.push_back(j);
    }
    report.holds = report.missing_points.empty();
    reports.push_back(std::move(report));
  }
  return reports;
}

DimensionSweep dimension_sequence(const DiscreteDistribution& d,
                                  std::uint64_t n_max, unsigned digits) {
  if (n_max < 2) throw AnalysisError("dimension sweep requires n_max >= 2");
  if (digits > 50) throw AnalysisError("at most 50 digits");
  DimensionSweep sweep;
  SolverConfig cfg;
  cfg.want_optima = false;
  const auto solved = solve_range(d, 2, n_max, cfg);
  for (const auto& result : solved) {
    if (result.vn >= 1) {
      sweep.skipped.push_back(result.n);
      continue;
    }
    DimensionSample sample;
    sample.n = result.n;
    sample.vn = result.vn;
    sample.dn = 2 * log(HighFloat(result.n)) / -log(to_high_float(result.vn));
    sample.dn_string = render(sample.dn, digits);
    sweep.samples.push_back(std::move(sample));
  }
  return sweep;
}

std::vector<PaperFixture> paper_fixtures() {
  std::vector<PaperFixture> fixtures;

  auto part = [](std::initializer_list<std::uint64_t> b) {
    return BlockPartition{std::vector<std::uint64_t>(b)};
  };

  {
    PaperFixture f{"distA", DiscreteDistribution::from_permutation({2, 1}), {},
                   5};
    f.rows = {
        {2, Rational(17, 28), {part({1, 4})}},
        {3, Rational(1, 3), {part({1, 3, 5})}},
        {4, Rational(1, 6), {part({1, 2, 3, 5})}},
    };
    fixtures.push_back(std::move(f));
  }
  {
    PaperFixture f{"distB", DiscreteDistribution::from_permutation({3, 2, 1}),
                   {}, 6};
    f.rows = {
        {2, Rational(5, 7), {part({1, 4})}},
        {3, Rational(19, 72), {part({1, 3, 5})}},
        {4, Rational(1, 6), {part({1, 3, 4, 6})}},
        {5, Rational(1, 12), {part({1, 2, 3, 4, 6})}},
    };
    fixtures.push_back(std::move(f));
  }
  {
    DiscreteDistribution distC({Rational(149, 200), Rational(1, 200)},
                               GeometricTail{3, 1, Rational(1, 2)});
    validate(distC);
    PaperFixture f{"distC", std::move(distC), {}, std::nullopt};
    f.rows = {
        {5, Rational(29, 624), {part({1, 2, 4, 5, 7}), part({1, 2, 4, 6, 8})}},
    };
    fixtures.push_back(std::move(f));
  }
  {
    PaperFixture f{"geometric", DiscreteDistribution::from_permutation({1}),
                   {}, 4};
    f.rows = {
        {1, Rational(2), {part({1})}},
    };
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

PaperFixture paper_fixture(const std::string& name) {
  for (auto& f : paper_fixtures()) {
    if (f.name == name) return f;
  }
  throw AnalysisError("unknown fixture '" + name + "'");
}

}  // namespace natquant
