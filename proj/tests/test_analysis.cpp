#include <doctest.h>

#include "natquant/analysis.hpp"
#include "test_support.hpp"

using namespace natquant;
using namespace natquant::testing;

namespace {

BlockPartition part(std::initializer_list<std::uint64_t> b) {
  return BlockPartition{std::vector<std::uint64_t>(b)};
}

}  // namespace

TEST_CASE("candidate partitions for the closed-form regime") {
  const auto [b1, b2] = theorem1_candidates(make_dist_b(), 6);
  CHECK(b1 == part({1, 2, 3, 4, 5, 7}));
  CHECK(b2 == part({1, 2, 3, 4, 6, 8}));

  const auto da = make_dist_a();
  const auto [a1, a2] = theorem1_candidates(da, 5);
  CHECK(distortion(da, a1) == Rational(1, 12));
  CHECK(distortion(da, a2) == Rational(1, 12));

  const auto g = make_geometric();
  const auto [g1, g2] = theorem1_candidates(g, 4);
  CHECK(g1 == part({1, 2, 3, 5}));
  CHECK(g2 == part({1, 2, 4, 6}));
  CHECK(distortion(g, g1) == Rational(1, 6));
  CHECK(distortion(g, g2) == Rational(1, 6));
}

TEST_CASE("candidate construction rejects unsuitable inputs") {
  CHECK_THROWS_AS(theorem1_candidates(make_dist_c(), 6),
                  NotDefinitionFamilyError);
  CHECK_THROWS_AS(theorem1_candidates(make_dist_a(), 4), NTooSmallError);
}

TEST_CASE("closed-form sweep holds for all three family fixtures") {
  for (const auto& [d, n_max] :
       {std::pair{make_dist_a(), std::uint64_t{20}},
        std::pair{make_dist_b(), std::uint64_t{20}},
        std::pair{make_geometric(), std::uint64_t{10}}}) {
    const auto report = verify_theorem1(d, n_max);
    CHECK(report.ok);
    for (const auto& entry : report.entries) {
      CHECK(entry.vn == pow2(3 - static_cast<long>(entry.n)) / 3);
      CHECK(entry.both_present);
    }
  }
}

TEST_CASE("singleton-prefix property holds on the family fixtures") {
  for (const auto& report : check_conjecture(make_dist_a(), 5, 16)) {
    CHECK(report.holds);
    CHECK(report.missing_points.empty());
  }
  for (const auto& report : check_conjecture(make_dist_b(), 6, 16)) {
    CHECK(report.holds);
  }
}

TEST_CASE("singleton-prefix property fails on the counterexample") {
  const auto reports = check_conjecture(make_dist_c(), 5, 5);
  REQUIRE(reports.size() == 1);
  CHECK_FALSE(reports[0].holds);
  CHECK(reports[0].missing_points == std::vector<std::uint64_t>{2});
  // Both optima start with the singleton {1} followed by [2,3].
  for (const auto& [p, q] : reports[0].witness) {
    CHECK(p.boundaries[0] == 1);
    CHECK(p.boundaries[1] == 2);
    CHECK(p.boundaries[2] == 4);
    CHECK(q.points[1] == Rational(77, 26));
  }
}

TEST_CASE("dimension samples match independent high-precision evaluation") {
  const auto sweep = dimension_sequence(make_dist_a(), 16, 6);
  CHECK(sweep.skipped.empty());
  REQUIRE(sweep.samples.size() == 15);

  const auto& d2 = sweep.samples.front();
  CHECK(d2.n == 2);
  CHECK(d2.vn == Rational(17, 28));
  const HighFloat expected2 =
      2 * log(HighFloat(2)) / log(HighFloat(28) / HighFloat(17));
  CHECK(abs(d2.dn - expected2) < HighFloat("1e-40"));

  const auto& d16 = sweep.samples.back();
  CHECK(d16.n == 16);
  CHECK(d16.vn == pow2(-13) / 3);
  CHECK(d16.dn_string.substr(0, 6) == "0.5485");
}

TEST_CASE("dimension sequence decays along doublings") {
  const auto sweep = dimension_sequence(make_dist_a(), 32, 10);
  auto sample_at = [&](std::uint64_t n) {
    for (const auto& s : sweep.samples) {
      if (s.n == n) return s.dn;
    }
    FAIL("missing sample");
    return HighFloat(0);
  };
  CHECK(sample_at(16) < sample_at(8));
  CHECK(sample_at(32) < sample_at(16));
}

TEST_CASE("built-in fixtures carry their golden tables") {
  const auto fixtures = paper_fixtures();
  REQUIRE(fixtures.size() == 4);
  for (const auto& f : fixtures) CHECK_NOTHROW(validate(f.dist));

  const auto a = paper_fixture("distA");
  CHECK(a.rows[0].n == 2);
  CHECK(a.rows[0].vn == Rational(17, 28));
  CHECK(a.closed_form_from == 5);

  const auto c = paper_fixture("distC");
  CHECK(c.rows[0].vn == Rational(29, 624));
  CHECK_FALSE(c.dist.definition_family_k().has_value());

  CHECK(paper_fixture("distB").dist.definition_family_k() == 4);
  CHECK(paper_fixture("geometric").dist.definition_family_k() == 2);
  CHECK_THROWS_AS(paper_fixture("nope"), AnalysisError);
}

TEST_CASE("scaled errors settle at one third in the closed-form regime") {
  const auto d = make_dist_a();
  for (const auto& r : solve_range(d, 5, 14)) {
    CHECK(r.vn * pow2(static_cast<long>(r.n) - 3) == Rational(1, 3));
  }
}
