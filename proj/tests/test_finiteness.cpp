#include <catch2/catch_amalgamated.hpp>

#include "zkit/finiteness.hpp"
#include "zkit/io.hpp"

using namespace zkit;

namespace {

SurfaceModel load_fixture(const std::string& name) {
    return load_model_file(std::string(ZKIT_FIXTURE_DIR) + "/models/" + name + ".json");
}

NSClass cls(std::vector<long long> v) {
    std::vector<Rational> c;
    for (auto x : v) c.emplace_back(x);
    return NSClass(std::move(c));
}

} // namespace

TEST_CASE("boundary divisors are made of declared curves") {
    auto blp2 = load_fixture("blp2");
    auto e = BoundaryDivisor::from_names(blp2, {"e"});
    CHECK(e.components.size() == 1);
    CHECK(e.total == cls({0, 1}));

    auto both = BoundaryDivisor::from_names(blp2, {"e", "f"});
    CHECK(both.total == cls({1, 0}));

    CHECK_THROWS_AS(BoundaryDivisor::from_names(blp2, {}), error);
    CHECK_THROWS_AS(BoundaryDivisor::from_names(blp2, {"e", "e"}), error);
    CHECK_THROWS_AS(BoundaryDivisor::from_names(blp2, {"nope"}), error);
}

TEST_CASE("minimal a for the B_+ criterion") {
    auto blp2 = load_fixture("blp2");
    CHECK(minimal_a_bplus(blp2, cls({1, 0}), BoundaryDivisor::from_names(blp2, {"e"}), 64) == 0);

    auto f2 = load_fixture("f2");
    CHECK(minimal_a_bplus(f2, cls({1, 1}), BoundaryDivisor::from_names(f2, {"s"}), 64) == 0);

    auto f0 = load_fixture("f0");
    CHECK(!minimal_a_bplus(f0, cls({1, 1}), BoundaryDivisor::from_names(f0, {"f1"}), 64));

    // 2H - e needs one twist before e falls into B_+
    CHECK(minimal_a_bplus(blp2, cls({2, -1}), BoundaryDivisor::from_names(blp2, {"e"}), 64) == 1);

    CHECK_THROWS_AS(minimal_a_bplus(blp2, cls({0, 1}), BoundaryDivisor::from_names(blp2, {"e"}), 8),
                    error);
}

TEST_CASE("minimal a for the N_sigma criterion") {
    auto blp2 = load_fixture("blp2");
    CHECK(minimal_a_nsigma(blp2, cls({1, 0}), BoundaryDivisor::from_names(blp2, {"e"}), 64) == 1);

    auto f2 = load_fixture("f2");
    CHECK(minimal_a_nsigma(f2, cls({1, 1}), BoundaryDivisor::from_names(f2, {"s"}), 64) == 1);

    CHECK(!minimal_a_nsigma(blp2, cls({1, 0}), BoundaryDivisor::from_names(blp2, {"f"}), 64));

    CHECK(minimal_a_nsigma(blp2, cls({2, -1}), BoundaryDivisor::from_names(blp2, {"e"}), 64) == 2);
}

TEST_CASE("classify_big: worked examples") {
    auto blp2 = load_fixture("blp2");
    auto v = classify_big(blp2, cls({1, 0}), BoundaryDivisor::from_names(blp2, {"e"}), 64);
    CHECK(v.status == FinitenessStatus::finite);
    CHECK(v.a_min_bplus == 0);
    CHECK(v.a_min_nsigma == 1);
    CHECK(v.satisfied_cases.empty());

    auto f0 = load_fixture("f0");
    auto v2 = classify_big(f0, cls({1, 1}), BoundaryDivisor::from_names(f0, {"f1"}), 64);
    CHECK(v2.status == FinitenessStatus::infinite);
    CHECK(v2.witness.find("kappa_sigma") != std::string::npos);
    CHECK(v2.witness.find("f1") != std::string::npos);

    auto p2 = load_fixture("p2");
    auto v3 = classify_big(p2, cls({1}), BoundaryDivisor::from_names(p2, {"L"}), 64);
    CHECK(v3.status == FinitenessStatus::infinite);
    CHECK(v3.witness.find("2") != std::string::npos);

    CHECK_THROWS_AS(classify_big(blp2, cls({0, 1}), BoundaryDivisor::from_names(blp2, {"e"}), 64),
                    error);
}

TEST_CASE("classify_big: reducible boundary with rigid pieces meeting") {
    // e and f are each rigid-or-movable alone; e+f = H is big, so the total
    // boundary has positive dimension and the verdict is Infinite
    auto blp2 = load_fixture("blp2");
    auto v = classify_big(blp2, cls({1, 0}), BoundaryDivisor::from_names(blp2, {"e", "f"}), 64);
    CHECK(v.status == FinitenessStatus::infinite);
}

TEST_CASE("classify_big: monotonicity of the B_+ criterion in a") {
    auto blp2 = load_fixture("blp2");
    auto f2 = load_fixture("f2");
    struct Sample {
        const SurfaceModel* model;
        NSClass d;
        std::vector<std::string> names;
    };
    std::vector<Sample> samples = {
        {&blp2, cls({1, 0}), {"e"}},
        {&blp2, cls({2, -1}), {"e"}},
        {&blp2, cls({3, -1}), {"e"}},
        {&f2, cls({1, 1}), {"s"}},
        {&f2, cls({1, 2}), {"s"}},
    };
    for (const auto& s : samples) {
        auto e = BoundaryDivisor::from_names(*s.model, s.names);
        auto v = classify_big(*s.model, s.d, e, 16, /*want_trace=*/true);
        REQUIRE(v.status == FinitenessStatus::finite);
        bool seen = false;
        for (const auto& row : v.trace) {
            if (seen) CHECK(row.bplus_holds);
            if (row.bplus_holds) seen = true;
        }
        CHECK(seen);
        // bridge inequality, both sides
        REQUIRE(v.a_min_bplus);
        REQUIRE(v.a_min_nsigma);
        CHECK(*v.a_min_bplus <= *v.a_min_nsigma);
        CHECK(*v.a_min_nsigma <= *v.a_min_bplus + 1);
    }
}

TEST_CASE("classify_pseff: trichotomy examples") {
    auto blp2 = load_fixture("blp2");

    // (e, e): rigid boundary, cases I and III
    auto v = classify_pseff(blp2, cls({0, 1}), BoundaryDivisor::from_names(blp2, {"e"}), 64);
    CHECK(v.status == FinitenessStatus::finite);
    CHECK(v.satisfied_cases == std::set<TrichotomyCase>{TrichotomyCase::I, TrichotomyCase::III});
    CHECK(v.a_min_nsigma == 0);

    // (f, e): case I only, first at a = 2
    auto v2 = classify_pseff(blp2, cls({1, -1}), BoundaryDivisor::from_names(blp2, {"e"}), 64);
    CHECK(v2.status == FinitenessStatus::finite);
    CHECK(v2.satisfied_cases == std::set<TrichotomyCase>{TrichotomyCase::I});
    CHECK(v2.a_min_nsigma == 2);

    // (e, f): everything fails
    auto v3 = classify_pseff(blp2, cls({0, 1}), BoundaryDivisor::from_names(blp2, {"f"}), 64);
    CHECK(v3.status == FinitenessStatus::infinite);
    CHECK(v3.satisfied_cases.empty());

    // big D delegates to classify_big
    auto f0 = load_fixture("f0");
    auto v4 = classify_pseff(f0, cls({1, 1}), BoundaryDivisor::from_names(f0, {"f1"}), 64);
    CHECK(v4.status == FinitenessStatus::infinite);

    // (f1, f2): nef D against a movable boundary
    auto v5 = classify_pseff(f0, cls({1, 0}), BoundaryDivisor::from_names(f0, {"f2"}), 64);
    CHECK(v5.status == FinitenessStatus::infinite);
    CHECK(v5.case_eval.at(TrichotomyCase::I) == CaseEval::fails);
    CHECK(v5.case_eval.at(TrichotomyCase::II) == CaseEval::fails);
    CHECK(v5.case_eval.at(TrichotomyCase::III) == CaseEval::fails);

    // (s, s) on F2: cases I and III
    auto f2 = load_fixture("f2");
    auto v6 = classify_pseff(f2, cls({1, 0}), BoundaryDivisor::from_names(f2, {"s"}), 64);
    CHECK(v6.status == FinitenessStatus::finite);
    CHECK(v6.satisfied_cases == std::set<TrichotomyCase>{TrichotomyCase::I, TrichotomyCase::III});

    // (f, s) on F2: case I at a = 2
    auto v7 = classify_pseff(f2, cls({0, 1}), BoundaryDivisor::from_names(f2, {"s"}), 64);
    CHECK(v7.status == FinitenessStatus::finite);
    CHECK(v7.a_min_nsigma == 2);

    // (s, f) on F2: infinite
    auto v8 = classify_pseff(f2, cls({1, 0}), BoundaryDivisor::from_names(f2, {"f"}), 64);
    CHECK(v8.status == FinitenessStatus::infinite);

    // (0, L) on P^2: rigid D against the line
    auto p2 = load_fixture("p2");
    auto v9 = classify_pseff(p2, cls({0}), BoundaryDivisor::from_names(p2, {"L"}), 64);
    CHECK(v9.status == FinitenessStatus::infinite);

    CHECK_THROWS_AS(classify_pseff(blp2, cls({-1, 0}), BoundaryDivisor::from_names(blp2, {"e"}), 8),
                    error);
}

TEST_CASE("classify_pseff without the kappa flag degrades honestly") {
    auto blp2 = load_fixture("blp2");
    blp2.kodaira_equals_numerical = false;

    // case I still decides finiteness on purely numerical grounds
    auto v = classify_pseff(blp2, cls({0, 1}), BoundaryDivisor::from_names(blp2, {"e"}), 64);
    CHECK(v.status == FinitenessStatus::finite);
    CHECK(v.satisfied_cases == std::set<TrichotomyCase>{TrichotomyCase::I});
    CHECK(v.case_eval.at(TrichotomyCase::III) == CaseEval::unknown);

    // (e, f): case III's numerical part holds but kappa(E) is unavailable
    auto v2 = classify_pseff(blp2, cls({0, 1}), BoundaryDivisor::from_names(blp2, {"f"}), 64);
    CHECK(v2.status == FinitenessStatus::inconclusive);
    CHECK(v2.case_eval.at(TrichotomyCase::III) == CaseEval::unknown);
}

TEST_CASE("riemann-roch lower bound: worked values") {
    auto p2 = load_fixture("p2");
    auto l = BoundaryDivisor::from_names(p2, {"L"});
    CHECK(rr_lower_bound(p2, cls({1}), l, 1, 2) == 10);
    CHECK(rr_lower_bound(p2, cls({1}), l, 0, 0) == 1); // chi - pg

    auto f0 = load_fixture("f0");
    auto f1 = BoundaryDivisor::from_names(f0, {"f1"});
    CHECK(rr_lower_bound(f0, cls({1, 1}), f1, 1, 3) == 10);
}

TEST_CASE("riemann-roch infiniteness test") {
    auto p2 = load_fixture("p2");
    CHECK(rr_infiniteness_test(p2, cls({1}), BoundaryDivisor::from_names(p2, {"L"})) == 1);

    auto f0 = load_fixture("f0");
    CHECK(rr_infiniteness_test(f0, cls({1, 1}), BoundaryDivisor::from_names(f0, {"f1"})) == 1);

    auto blp2 = load_fixture("blp2");
    CHECK(!rr_infiniteness_test(blp2, cls({1, 0}), BoundaryDivisor::from_names(blp2, {"e"})));

    // E^2 = 0 with a large canonical pairing pushes m_0 up
    SurfaceModel tweaked = f0;
    tweaked.canonical = cls({3, 3}); // E.K = 3 now, need m0 > 3/2
    CHECK(rr_infiniteness_test(tweaked, cls({1, 1}),
                               BoundaryDivisor::from_names(tweaked, {"f1"})) == 2);
    // D.E = 0 disables the test
    CHECK(!rr_infiniteness_test(f0, cls({1, 0}), BoundaryDivisor::from_names(f0, {"f1"})));
}

TEST_CASE("growth estimates") {
    auto blp2 = load_fixture("blp2");
    auto g = growth_estimate(blp2, cls({1, 0}), BoundaryDivisor::from_names(blp2, {"e"}), 64);
    CHECK(g.degree == 2);
    CHECK(g.leading == parse_rational("1/2"));
    CHECK(g.slope_bound == 0);

    auto f2 = load_fixture("f2");
    auto g2 = growth_estimate(f2, cls({1, 1}), BoundaryDivisor::from_names(f2, {"s"}), 64);
    CHECK(g2.leading == parse_rational("1/4"));
    CHECK(g2.slope_bound == 0);

    auto g3 = growth_estimate(blp2, cls({2, 0}), BoundaryDivisor::from_names(blp2, {"e"}), 64);
    CHECK(g3.leading == 2);

    auto g4 = growth_estimate(blp2, cls({2, -1}), BoundaryDivisor::from_names(blp2, {"e"}), 64);
    CHECK(g4.leading == 2);
    CHECK(g4.slope_bound == 1);

    // Infinite cases have no growth estimate
    auto f0 = load_fixture("f0");
    CHECK_THROWS_AS(growth_estimate(f0, cls({1, 1}), BoundaryDivisor::from_names(f0, {"f1"}), 64),
                    error);
}

TEST_CASE("exact rational threshold diagnostic") {
    auto f2 = load_fixture("f2");
    auto e = BoundaryDivisor::from_names(f2, {"s"});
    auto a_min = minimal_a_nsigma(f2, cls({1, 1}), e, 64);
    REQUIRE(a_min == 1);
    auto threshold = nsigma_threshold(f2, cls({1, 1}), e, *a_min);
    REQUIRE(threshold);
    CHECK(*threshold == parse_rational("1/2"));

    auto blp2 = load_fixture("blp2");
    auto e2 = BoundaryDivisor::from_names(blp2, {"e"});
    auto t2 = nsigma_threshold(blp2, cls({1, 0}), e2, 1);
    REQUIRE(t2);
    CHECK(*t2 == 1); // coefficient of e in N_sigma(H + ae) is exactly a
}
