#include <doctest.h>

#include <bit>
#include <cmath>
#include <vector>

#include "qksys/caps.hpp"
#include "qksys/errors.hpp"
#include "qksys/rng.hpp"
#include "qksys/util.hpp"

using namespace qksys;

namespace {

// Test-side filter, independent of both the library DFS and its own brute
// filter: collinearity checked per triple through the line list.
std::vector<std::int64_t> triple_filter_counts(const IncidencePlane& plane) {
  const int n = plane.point_count();
  REQUIRE(n <= 16);
  std::vector<std::uint32_t> line_bits;
  for (const auto& line : plane.lines) {
    std::uint32_t m = 0;
    for (int p : line) m |= (1u << p);
    line_bits.push_back(m);
  }
  std::vector<std::int64_t> counts(n + 1, 0);
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    bool cap = true;
    for (std::uint32_t lb : line_bits) {
      if (std::popcount(s & lb) >= 3) {
        cap = false;
        break;
      }
    }
    if (cap) ++counts[std::popcount(s)];
  }
  while (counts.size() > 1 && counts.back() == 0) counts.pop_back();
  return counts;
}

}  // namespace

TEST_SUITE("caps") {

TEST_CASE("AG(2,2) has no collinear triples: the census is the power set") {
  const CapReport rep = enumerate_caps(build_affine_plane(2));
  CHECK(rep.counts == std::vector<std::int64_t>({1, 4, 6, 4, 1}));
  CHECK(rep.total == 16);
  CHECK(rep.max_cap_size == 4);  // q + 2
  CHECK(rep.exhaustive);
}

TEST_CASE("AG(2,3) census against independent oracles") {
  const IncidencePlane plane = build_affine_plane(3);
  const CapReport rep = enumerate_caps(plane);

  // I_{3,3} = C(9,3) - 12 lines, each line being one collinear triple.
  CHECK(rep.count(3) == binom64(9, 3) - 12);
  CHECK(rep.count(3) == 72);
  CHECK(rep.max_cap_size == 4);
  CHECK(rep.count(0) == 1);
  CHECK(rep.count(1) == 9);
  CHECK(rep.count(2) == binom64(9, 2));

  CHECK(rep.counts == triple_filter_counts(plane));
  CHECK(rep.counts == brute_force_cap_counts(plane));
}

TEST_CASE("witnesses are genuine caps") {
  const IncidencePlane plane = build_affine_plane(4);
  const CapReport rep = enumerate_caps(plane);
  REQUIRE(!rep.witnesses.empty());
  const std::vector<int>& top = rep.witnesses[rep.max_cap_size];
  REQUIRE(static_cast<int>(top.size()) == rep.max_cap_size);
  for (const auto& line : plane.lines) {
    int on_line = 0;
    for (int p : top) {
      on_line += std::count(line.begin(), line.end(), p) > 0;
    }
    CHECK(on_line <= 2);
  }
  // count_only drops witnesses but not counts.
  const CapReport quiet = enumerate_caps(plane, std::nullopt, true);
  CHECK(quiet.witnesses.empty());
  CHECK(quiet.counts == rep.counts);
}

TEST_CASE("budget exhaustion leaves labeled partial counts") {
  const CapReport partial = enumerate_caps(build_affine_plane(4), std::nullopt, true, 100);
  CHECK(partial.budget_exhausted);
  CHECK(!partial.exhaustive);
  const CapReport full = enumerate_caps(build_affine_plane(4));
  for (std::size_t t = 0; t < partial.counts.size(); ++t) {
    CHECK(partial.counts[t] <= full.count(static_cast<int>(t)));
  }
}

TEST_CASE("max_t truncates the census depth but keeps shallow counts exact") {
  const CapReport full = enumerate_caps(build_affine_plane(3));
  const CapReport cut = enumerate_caps(build_affine_plane(3), 3);
  CHECK(!cut.exhaustive);
  CHECK(cut.count(3) == full.count(3));
  CHECK(cut.count(2) == full.count(2));
  CHECK(cut.max_cap_size == 3);
}

TEST_CASE("cap_bound values and domain") {
  // q = 3, t = 3: 3^4 * min(9, 27) / 3! = 81 * 9 / 6.
  CHECK(cap_bound(3, 3) == doctest::Approx(121.5).epsilon(1e-12));
  CHECK(cap_count_within_bound(72, 3, 3));
  CHECK(!cap_count_within_bound(122, 3, 3));

  CHECK_THROWS_AS(cap_bound(3, 6), RangeError);   // t > q + 2
  CHECK_THROWS_AS(cap_bound(3, 2), RangeError);   // t < 3
  CHECK_THROWS_AS(cap_bound(40, 5), RangeError);  // overflow guard

  // The min switches branch exactly when C(i,2) > q.
  for (const int q : {3, 4, 5, 7}) {
    const double q2 = static_cast<double>(q) * q;
    const double q3 = q2 * q;
    for (int i = 2; i <= q + 1; ++i) {
      const double pairs = binom64(i, 2);
      if (pairs > q) {
        CHECK(q3 / pairs < q2);
      } else {
        CHECK(q3 / pairs >= q2);
      }
    }
  }
}

TEST_CASE("census counts stay below the product-formula bound") {
  for (const int q : {3, 4}) {
    const CapReport rep = enumerate_caps(build_affine_plane(q));
    for (int t = 3; t <= q + 2; ++t) {
      CAPTURE(q);
      CAPTURE(t);
      CHECK(cap_count_within_bound(rep.count(t), q, t));
    }
  }
}

TEST_CASE("mixing check degenerate and closed-form cases") {
  const IncidencePlane plane = build_affine_plane(5);
  const MixingCheck empty = mixing_check(plane, {}, {0, 1, 2});
  CHECK(empty.observed == 0);
  CHECK(empty.holds);  // 0 deviation, 0 bound tolerated

  // One point and the q+1 lines through it.
  for (const int q : {2, 3, 5, 7}) {
    const IncidencePlane p = build_affine_plane(q);
    const int point = 0;
    std::vector<int> through;
    for (std::size_t li = 0; li < p.lines.size(); ++li) {
      if (std::count(p.lines[li].begin(), p.lines[li].end(), point) > 0) {
        through.push_back(static_cast<int>(li));
      }
    }
    REQUIRE(static_cast<int>(through.size()) == q + 1);
    const MixingCheck mc = mixing_check(p, {point}, through);
    CHECK(mc.observed == q + 1);
    CHECK(mc.predicted == doctest::Approx((q + 1.0) / q));
    CHECK(mc.holds);
  }
}

TEST_CASE("mixing holds on 1000 seeded samples in AG(2,5)") {
  const IncidencePlane plane = build_affine_plane(5);
  Rng rng(555);
  for (int s = 0; s < 1000; ++s) {
    const double px = rng.unit_real();
    const double py = rng.unit_real();
    std::vector<int> points, lines;
    for (int p = 0; p < plane.point_count(); ++p) {
      if (rng.bernoulli(px)) points.push_back(p);
    }
    for (int l = 0; l < static_cast<int>(plane.lines.size()); ++l) {
      if (rng.bernoulli(py)) lines.push_back(l);
    }
    CHECK(mixing_check(plane, points, lines).holds);
  }
}

TEST_CASE("singular values of the incidence structure") {
  CHECK(second_singular_value(build_affine_plane(3)) ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
  CHECK(second_singular_value(build_affine_plane(2)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  for (const int q : {2, 3, 4, 5, 7}) {
    const std::vector<double> s = plane_singular_values(build_affine_plane(q));
    CHECK(s[0] == doctest::Approx(std::sqrt(static_cast<double>(q) * (q + 1))).epsilon(1e-9));
    CHECK(s[1] == doctest::Approx(std::sqrt(static_cast<double>(q))).epsilon(1e-9));
  }
}

TEST_CASE("greedy cap traces respect the counting identities") {
  const IncidencePlane plane = build_affine_plane(4);
  const std::int64_t q3 = 64;
  for (const std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const CapTrace trace = greedy_cap_extension_trace(plane, seed);
    REQUIRE(!trace.rows.empty());
    CHECK(trace.rows.front().i == 2);
    CHECK(trace.rows.front().z_size == 1);
    for (const CapTraceRow& row : trace.rows) {
      CHECK(row.z_size == binom64(row.i, 2));
      CHECK(row.x_size * binom64(row.i, 2) <= q3);
    }
    CHECK(static_cast<int>(trace.cap.size()) <= 6);  // q + 2
    CHECK(trace.rows.back().x_size == 0);
  }
  const CapTrace a = greedy_cap_extension_trace(plane, 77);
  const CapTrace b = greedy_cap_extension_trace(plane, 77);
  CHECK(a.cap == b.cap);
}

}  // TEST_SUITE
