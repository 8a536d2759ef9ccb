#include <doctest.h>

#include <minrisk/bounds.hpp>
#include <minrisk/capacity.hpp>
#include <minrisk/core.hpp>
#include <minrisk/learning.hpp>

#include <cmath>
#include <string>
#include <vector>

using namespace minrisk;

namespace {

Repertoire make_repertoire(std::uint32_t m, const std::vector<std::string>& bits) {
  Repertoire F;
  F.m = m;
  for (const std::string& b : bits) F.members.push_back(Hypothesis::from_bitstring(b));
  return F;
}

Repertoire chain_fixture() {
  return make_repertoire(4, {"1111", "0111", "0011", "0001", "0000"});
}

}  // namespace

TEST_CASE("standard constants evaluate their closed forms") {
  BoundConstants c = BoundConstants::standard();
  CHECK(c.c1 == doctest::Approx(2.039333980337618).epsilon(1e-9));
  CHECK(c.c2 == doctest::Approx(0.832554611157698).epsilon(1e-9));
  CHECK(c.c3 == doctest::Approx(1.177410022515475).epsilon(1e-9));
  CHECK(c.c1 == doctest::Approx(std::sqrt(6.0 * std::log(2.0))).epsilon(1e-15));
  CHECK(c.c2 == doctest::Approx(std::sqrt(std::log(2.0))).epsilon(1e-15));
  CHECK(c.c3 == doctest::Approx(std::sqrt(2.0 * std::log(2.0))).epsilon(1e-15));
}

TEST_CASE("confidence must lie strictly inside the unit interval") {
  CHECK_NOTHROW(Confidence(0.05));
  CHECK_THROWS_AS(Confidence(0.0), Error);
  CHECK_THROWS_AS(Confidence(1.0), Error);
  CHECK_THROWS_AS(Confidence(-0.5), Error);
}

TEST_CASE("bound kind names") {
  CHECK(std::string(bound_kind_name(BoundKind::vc)) == "vc");
  CHECK(std::string(bound_kind_name(BoundKind::rademacher)) == "rademacher");
  CHECK(std::string(bound_kind_name(BoundKind::ei_vc)) == "ei_vc");
  CHECK(std::string(bound_kind_name(BoundKind::ei_rademacher)) == "ei_rademacher");
}

TEST_CASE("vc bound on the chain fixture sample") {
  BoundReport r = vc_bound(RiskValue{0, 3}, 2.0, 3, Confidence(0.05));
  CHECK(r.kind == BoundKind::vc);
  CHECK(r.empirical_term == Rational(0));
  CHECK(r.capacity_term == doctest::Approx(1.6651092223154).epsilon(1e-10));
  CHECK(r.confidence_term == doctest::Approx(1.1088852441550).epsilon(1e-10));
  CHECK(r.total == doctest::Approx(2.7739944664704).epsilon(1e-10));
  CHECK(r.vacuous);
}

TEST_CASE("vc bound at a workable sample size is informative") {
  BoundReport r = vc_bound(RiskValue{0, 1000}, 2.0, 1000, Confidence(0.05));
  CHECK(r.capacity_term == doctest::Approx(0.0912017881772).epsilon(1e-10));
  CHECK(r.confidence_term == doctest::Approx(0.0607361461908).epsilon(1e-10));
  CHECK(r.total == doctest::Approx(0.1519379343680).epsilon(1e-10));
  CHECK_FALSE(r.vacuous);
}

TEST_CASE("vc bound with zero capacity keeps only the confidence term") {
  BoundReport r = vc_bound(RiskValue{0, 8}, 0.0, 8, Confidence(0.5));
  CHECK(r.capacity_term == 0.0);
  CHECK(r.total == doctest::Approx(0.4162773055788).epsilon(1e-10));
}

TEST_CASE("vc bound validates its inputs") {
  CHECK_THROWS_AS(vc_bound(RiskValue{0, 3}, -1.0, 3, Confidence(0.05)), Error);
  try {
    vc_bound(RiskValue{0, 4}, 1.0, 3, Confidence(0.05));
    FAIL("expected a length mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::length_mismatch);
  }
}

TEST_CASE("rademacher bound on the chain fixture sample") {
  BoundReport r = rademacher_bound(RiskValue{0, 3}, Rational(2, 3), 3, Confidence(0.05));
  CHECK(r.kind == BoundKind::rademacher);
  CHECK(r.capacity_term == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  REQUIRE(r.capacity_exact.has_value());
  CHECK(*r.capacity_exact == Rational(2, 3));
  CHECK(r.confidence_term == doctest::Approx(1.5682005513994).epsilon(1e-10));
  CHECK(r.total == doctest::Approx(2.2348672180660).epsilon(1e-10));
  CHECK(r.vacuous);
}

TEST_CASE("rademacher bound extremes") {
  BoundReport full = rademacher_bound(RiskValue{0, 100}, Rational(1), 100, Confidence(0.05));
  CHECK(full.vacuous);  // capacity term alone reaches 1
  BoundReport free = rademacher_bound(RiskValue{0, 10000}, Rational(0), 10000, Confidence(0.05));
  CHECK(free.capacity_term == 0.0);
  CHECK(free.confidence_term == doctest::Approx(0.0271620303148).epsilon(1e-10));
  CHECK_FALSE(free.vacuous);
  CHECK_THROWS_AS(rademacher_bound(RiskValue{0, 3}, Rational(3, 2), 3, Confidence(0.05)), Error);
  CHECK_THROWS_AS(rademacher_bound(RiskValue{0, 3}, Rational(-2), 3, Confidence(0.05)), Error);
}

TEST_CASE("ei vc bound pivots on remembered bits") {
  // Full information leaves no capacity term; none leaves the worst case.
  BoundReport all = ei_vc_bound(RiskValue{0, 10}, 10.0, 10, Confidence(0.05));
  CHECK(all.capacity_term == doctest::Approx(0.0));
  BoundReport none = ei_vc_bound(RiskValue{0, 10}, 0.0, 10, Confidence(0.05));
  CHECK(none.capacity_term == doctest::Approx(BoundConstants::standard().c1).epsilon(1e-12));
  CHECK_THROWS_AS(ei_vc_bound(RiskValue{0, 10}, 11.0, 10, Confidence(0.05)), Error);
  CHECK_THROWS_AS(ei_vc_bound(RiskValue{0, 10}, -0.5, 10, Confidence(0.05)), Error);
}

TEST_CASE("ei route and vc route agree through the level-zero identity") {
  // With ei0 = l - V the two capacity forms coincide: sqrt(1 - ei0/l) = sqrt(V/l).
  for (std::uint32_t l : {3u, 10u, 100u, 1000u}) {
    for (double v = 0.0; v <= l; v += static_cast<double>(l) / 4.0) {
      for (double delta : {0.05, 0.2, 0.5}) {
        BoundReport via_v = vc_bound(RiskValue{1, l}, v, l, Confidence(delta));
        BoundReport via_ei =
            ei_vc_bound(RiskValue{1, l}, static_cast<double>(l) - v, l, Confidence(delta));
        CHECK(via_ei.capacity_term == doctest::Approx(via_v.capacity_term).epsilon(1e-12));
        CHECK(via_ei.total == doctest::Approx(via_v.total).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("ei rademacher bound carries the exact capacity value") {
  Repertoire F = chain_fixture();
  Sample d = Sample::of({0, 1, 2});
  MinRiskHistogram h = min_risk_histogram(F, d);
  BoundReport r = ei_rademacher_bound(RiskValue{0, 3}, h, Confidence(0.05));
  CHECK(r.kind == BoundKind::ei_rademacher);
  REQUIRE(r.capacity_exact.has_value());
  CHECK(*r.capacity_exact == rademacher_via_distribution(h));
  CHECK(*r.capacity_exact == Rational(2, 3));

  // Same histogram through the generic rademacher form gives the same total.
  BoundReport generic = rademacher_bound(RiskValue{0, 3}, Rational(2, 3), 3, Confidence(0.05));
  CHECK(r.total == doctest::Approx(generic.total).epsilon(1e-15));

  Repertoire full;
  full.m = 3;
  for (const Hypothesis& hy : enumerate_hypotheses(InputSpace{3})) full.members.push_back(hy);
  MinRiskHistogram hf = min_risk_histogram(full, Sample::of({0, 1, 2}));
  CHECK(*ei_rademacher_bound(RiskValue{0, 3}, hf, Confidence(0.05)).capacity_exact ==
        Rational(1));

  MinRiskHistogram hs =
      min_risk_histogram(make_repertoire(3, {"101"}), Sample::of({0, 1, 2}));
  CHECK(*ei_rademacher_bound(RiskValue{0, 3}, hs, Confidence(0.05)).capacity_exact ==
        Rational(0));
}

TEST_CASE("totals are monotone in capacity, sample size, and confidence") {
  double prev = -1.0;
  for (double v : {0.0, 1.0, 2.0, 4.0, 8.0}) {
    double t = vc_bound(RiskValue{0, 64}, v, 64, Confidence(0.05)).total;
    CHECK(t > prev);
    prev = t;
  }
  CHECK(vc_bound(RiskValue{0, 100}, 2.0, 100, Confidence(0.05)).total >
        vc_bound(RiskValue{0, 400}, 2.0, 400, Confidence(0.05)).total);
  CHECK(vc_bound(RiskValue{0, 100}, 2.0, 100, Confidence(0.01)).total >
        vc_bound(RiskValue{0, 100}, 2.0, 100, Confidence(0.2)).total);
}

TEST_CASE("vacuous flags totals at or above one") {
  CHECK(vc_bound(RiskValue{0, 3}, 2.0, 3, Confidence(0.05)).vacuous);
  CHECK_FALSE(vc_bound(RiskValue{0, 4000}, 2.0, 4000, Confidence(0.05)).vacuous);
  // The empirical term alone can push a bound past one.
  CHECK(rademacher_bound(RiskValue{9, 10}, Rational(0), 10, Confidence(0.5)).vacuous);
}

TEST_CASE("custom constants rescale their terms") {
  BoundConstants crippled = BoundConstants::standard();
  crippled.c1 = 0.0;
  BoundReport r = vc_bound(RiskValue{0, 100}, 5.0, 100, Confidence(0.05), crippled);
  CHECK(r.capacity_term == 0.0);
  BoundConstants doubled = BoundConstants::standard();
  doubled.c2 *= 2.0;
  CHECK(vc_bound(RiskValue{0, 100}, 5.0, 100, Confidence(0.05), doubled).confidence_term ==
        doctest::Approx(2.0 * vc_bound(RiskValue{0, 100}, 5.0, 100, Confidence(0.05))
                                  .confidence_term)
            .epsilon(1e-12));
}

TEST_CASE("empirical term is carried exactly") {
  BoundReport r = vc_bound(RiskValue{1, 3}, 0.0, 3, Confidence(0.5));
  CHECK(r.empirical_term == Rational(1, 3));
  CHECK(r.total == doctest::Approx(1.0 / 3.0 + r.confidence_term).epsilon(1e-15));
}
