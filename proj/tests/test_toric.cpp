#include <catch2/catch_amalgamated.hpp>

#include "zkit/io.hpp"
#include "zkit/scan.hpp"
#include "zkit/toric.hpp"
#include "zkit/zariski.hpp"

using namespace zkit;

namespace {

ToricFan load_fan(const std::string& name) {
    return load_fan_file(std::string(ZKIT_FIXTURE_DIR) + "/fans/" + name + ".json");
}

// Independent counting route: enumerate a generous box point by point and
// test every facet inequality directly. Fails loudly if the box was too
// small, so it can never silently agree with the sweep it checks.
long long brute_force_count(const ToricFan& fan, const ToricDivisor& t) {
    long long bound = 1;
    for (auto d : t.coeffs) bound += (d < 0 ? -d : d);
    bound *= 4;
    long long count = 0;
    for (long long x = -bound; x <= bound; ++x)
        for (long long y = -bound; y <= bound; ++y) {
            bool inside = true;
            for (std::size_t i = 0; i < fan.size() && inside; ++i)
                if (fan.rays[i][0] * x + fan.rays[i][1] * y < -t.coeffs[i]) inside = false;
            if (!inside) continue;
            REQUIRE(std::abs(x) < bound);
            REQUIRE(std::abs(y) < bound);
            ++count;
        }
    return count;
}

} // namespace

TEST_CASE("build_fan accepts the standard fans") {
    CHECK(build_fan({{1, 0}, {0, 1}, {-1, -1}}).size() == 3);
    CHECK(build_fan({{1, 0}, {1, 1}, {0, 1}, {-1, -1}}).size() == 4);
    CHECK(build_fan({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}).size() == 4);
    CHECK(build_fan({{1, 0}, {0, 1}, {-1, 2}, {0, -1}}).size() == 4);
    // rotations of a valid fan stay valid
    CHECK(build_fan({{0, 1}, {-1, -1}, {1, 0}}).size() == 3);
}

TEST_CASE("build_fan rejects invalid input") {
    auto code_of = [](const std::vector<std::array<long long, 2>>& rays) {
        try {
            build_fan(rays);
        } catch (const error& e) {
            return e.code();
        }
        return errc::input_error;
    };
    CHECK(code_of({{1, 0}, {-1, 0}}) == errc::not_complete);
    CHECK(code_of({{2, 0}, {0, 1}, {-1, -1}}) == errc::non_primitive_ray);
    CHECK(code_of({{0, 0}, {0, 1}, {-1, -1}}) == errc::non_primitive_ray);
    CHECK(code_of({{1, 0}, {0, 1}, {-1, -2}}) == errc::not_smooth);
    CHECK(code_of({{1, 0}, {0, -1}, {-1, 1}}) == errc::not_complete); // clockwise
    CHECK(code_of({{1, 0}, {0, 1}, {-1, -1}, {1, 0}}) == errc::not_complete);
    // all adjacent determinants are +1 here, but the sequence winds around
    // the origin twice; only the angular-order check can catch it
    CHECK(code_of({{1, 0}, {-1, 1}, {0, -1}, {1, 1}, {-1, 0}, {5, -1}}) == errc::not_complete);
}

TEST_CASE("fan export: P^2") {
    auto exp = fan_to_surface_model(load_fan("p2"));
    CHECK(exp.model.rank == 1);
    CHECK(exp.model.gram(0, 0) == 1);
    CHECK(exp.model.canonical == NSClass({Rational(-3)}));
    CHECK(exp.model.chi == 1);
    CHECK(exp.model.pg == 0);
    CHECK(exp.model.kodaira_equals_numerical);
    CHECK(validate_model(exp.model).pass);
    // all three rays are lines
    for (const auto& c : exp.ray_classes) CHECK(c == NSClass({Rational(1)}));
}

TEST_CASE("fan export: F2 in the (s, f) basis") {
    auto exp = fan_to_surface_model(load_fan("f2"), std::vector<std::size_t>{1, 0},
                                    std::vector<std::string>{"s", "f"});
    CHECK(exp.model.gram(0, 0) == -2);
    CHECK(exp.model.gram(0, 1) == 1);
    CHECK(exp.model.gram(1, 1) == 0);
    CHECK(exp.model.canonical == NSClass({Rational(-2), Rational(-4)}));
    CHECK(pair(exp.model, exp.model.canonical, exp.model.canonical) == 8);
    CHECK(validate_model(exp.model).pass);
    CHECK(exp.model.basis_names == std::vector<std::string>{"s", "f"});
}

TEST_CASE("fan export: Bl_p P^2 in the (H, e) basis") {
    auto exp = fan_to_surface_model(load_fan("blp2"), std::vector<std::size_t>{3, 1});
    CHECK(exp.model.gram(0, 0) == 1);
    CHECK(exp.model.gram(0, 1) == 0);
    CHECK(exp.model.gram(1, 1) == -1);
    CHECK(exp.model.canonical == NSClass({Rational(-3), Rational(1)}));
    // relations D4 ~ D1 + D2 and D1 ~ D3 (1-based), i.e. rays 3 ~ 0+1, 0 ~ 2
    CHECK(exp.ray_classes[3] == exp.ray_classes[0] + exp.ray_classes[1]);
    CHECK(exp.ray_classes[0] == exp.ray_classes[2]);
    CHECK(validate_model(exp.model).pass);
}

TEST_CASE("fan export round-trip: pairings match toric intersection rules") {
    for (const auto& name : {"p2", "blp2", "f0", "f2"}) {
        auto fan = load_fan(name);
        auto exp = fan_to_surface_model(fan);
        REQUIRE(validate_model(exp.model).pass);
        std::size_t n = fan.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rational expected;
                if (i == j) {
                    const auto& prev = fan.rays[(i + n - 1) % n];
                    const auto& next = fan.rays[(i + 1) % n];
                    expected = Rational(-(prev[0] * next[1] - prev[1] * next[0]));
                } else if ((i + 1) % n == j || (j + 1) % n == i) {
                    expected = 1;
                } else {
                    expected = 0;
                }
                CHECK(pair(exp.model, exp.ray_classes[i], exp.ray_classes[j]) == expected);
            }
        REQUIRE(exp.model.ample);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(pair(exp.model, *exp.model.ample, exp.ray_classes[i]) > 0);

        // the exported file reproduces those pairings after a reload
        auto reloaded = model_from_json(model_to_json(exp.model));
        REQUIRE(validate_model(reloaded).pass);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                CHECK(pair(reloaded, reloaded.curves[i].cls, reloaded.curves[j].cls) ==
                      pair(exp.model, exp.ray_classes[i], exp.ray_classes[j]));
    }
}

TEST_CASE("fan export: iterated blowups of higher rank") {
    // successive smooth blowups of Bl_p P^2; ranks 3 and 4
    std::vector<std::vector<std::array<long long, 2>>> fans = {
        {{1, 0}, {2, 1}, {1, 1}, {0, 1}, {-1, -1}},
        {{1, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 1}, {-1, -1}},
    };
    for (const auto& rays : fans) {
        auto fan = build_fan(rays);
        auto exp = fan_to_surface_model(fan);
        CHECK(exp.model.rank == rays.size() - 2);
        auto report = validate_model(exp.model);
        INFO((report.failures.empty() ? std::string() : report.failures[0]));
        CHECK(report.pass);
        REQUIRE(exp.model.ample);
        for (const auto& c : exp.ray_classes)
            CHECK(pair(exp.model, *exp.model.ample, c) > 0);
        // K^2 = 9 - #blowups for an iterated blowup of P^2
        long long blowups = static_cast<long long>(rays.size()) - 3;
        CHECK(pair(exp.model, exp.model.canonical, exp.model.canonical) == 9 - blowups);
        // class arithmetic stays consistent with counting
        ToricDivisor anti_k{std::vector<long long>(fan.size(), 1)};
        CHECK(volume(exp.model, exp.class_of(anti_k)) == oracle_volume(fan, anti_k));
    }
}

TEST_CASE("fan export rejects ray sets that are not a lattice basis") {
    // on F0 rays 0 and 2 have the same class
    CHECK_THROWS_AS(fan_to_surface_model(load_fan("f0"), std::vector<std::size_t>{0, 2}), error);
    CHECK_THROWS_AS(fan_to_surface_model(load_fan("f0"), std::vector<std::size_t>{0}), error);
    CHECK_THROWS_AS(fan_to_surface_model(load_fan("f0"), std::vector<std::size_t>{0, 9}), error);
}

TEST_CASE("lattice point counts: known values") {
    auto p2 = load_fan("p2");
    CHECK(count_h0(p2, {{3, 0, 0}}) == 10);
    CHECK(count_h0(p2, {{0, 0, 3}}) == 10);
    CHECK(count_h0(p2, {{0, 0, 0}}) == 1);
    CHECK(count_h0(p2, {{-1, 0, 0}}) == 0);

    auto blp2 = load_fan("blp2");
    for (long long m = 0; m <= 5; ++m)
        for (long long k = 0; k <= 5; ++k)
            CHECK(count_h0(blp2, {{0, k, 0, m}}) == (m + 1) * (m + 2) / 2);

    auto f0 = load_fan("f0");
    for (long long m = 0; m <= 4; ++m)
        for (long long k = 0; k <= 4; ++k)
            CHECK(count_h0(f0, {{m + k, m, 0, 0}}) == (m + 1) * (m + k + 1));
}

TEST_CASE("column sweep agrees with brute-force enumeration") {
    for (const auto& name : {"p2", "blp2", "f0", "f2"}) {
        auto fan = load_fan(name);
        std::vector<long long> c(fan.size(), -1);
        for (;;) { // all coefficient vectors in {-1,...,2}^n
            ToricDivisor t{c};
            CHECK(count_h0(fan, t) == brute_force_count(fan, t));
            std::size_t i = 0;
            while (i < fan.size() && c[i] == 2) c[i++] = -1;
            if (i == fan.size()) break;
            ++c[i];
        }
    }
}

TEST_CASE("counts are invariant under linear equivalence") {
    std::vector<std::array<long long, 2>> shifts = {{1, 0}, {0, 1}, {-2, 3}};
    for (const auto& name : {"p2", "blp2", "f2"}) {
        auto fan = load_fan(name);
        std::vector<ToricDivisor> samples = {ToricDivisor{std::vector<long long>(fan.size(), 1)},
                                             ToricDivisor{std::vector<long long>(fan.size(), 0)}};
        samples[1].coeffs[0] = 3;
        for (const auto& t : samples)
            for (const auto& u : shifts) {
                ToricDivisor shifted = t;
                for (std::size_t i = 0; i < fan.size(); ++i)
                    shifted.coeffs[i] += u[0] * fan.rays[i][0] + u[1] * fan.rays[i][1];
                CHECK(count_h0(fan, shifted) == count_h0(fan, t));
                CHECK(oracle_volume(fan, shifted) == oracle_volume(fan, t));
            }
    }
}

TEST_CASE("counts are monotone along effective directions") {
    auto f2 = load_fan("f2");
    for (long long a = 0; a <= 2; ++a)
        for (long long b = 0; b <= 2; ++b) {
            ToricDivisor t{{a, b, 0, 0}};
            long long base = count_h0(f2, t);
            for (std::size_t i = 0; i < 4; ++i) {
                ToricDivisor bigger = t;
                bigger.coeffs[i] += 1;
                CHECK(count_h0(f2, bigger) >= base);
            }
        }
}

TEST_CASE("polygon vertices and volumes: known values") {
    auto p2 = load_fan("p2");
    CHECK(oracle_volume(p2, {{1, 0, 0}}) == 1);
    CHECK(oracle_volume(p2, {{-1, 0, 0}}) == 0);

    auto f2 = load_fan("f2");
    auto verts = polygon_vertices(f2, {{1, 1, 0, 0}});
    REQUIRE(verts.size() == 3);
    CHECK(verts[0] == std::array<Rational, 2>{Rational(-1), parse_rational("-1/2")});
    CHECK(verts[1] == std::array<Rational, 2>{Rational(0), Rational(0)});
    CHECK(verts[2] == std::array<Rational, 2>{Rational(-1), Rational(0)});
    CHECK(oracle_volume(f2, {{1, 1, 0, 0}}) == parse_rational("1/2"));

    // degenerate polygons have zero area
    CHECK(oracle_volume(p2, {{0, 0, 0}}) == 0);
    auto f0 = load_fan("f0");
    CHECK(oracle_volume(f0, {{1, 0, 0, 0}}) == 0); // segment
}

TEST_CASE("limit scan: stabilized rows") {
    auto blp2 = load_fan("blp2");
    ScanOptions opts;
    opts.m_max = 3;
    auto report = h0_limit_scan(blp2, {{0, 0, 0, 1}}, {{0, 1, 0, 0}}, opts);
    REQUIRE(report.rows.size() == 3);
    CHECK(report.all_stabilized());
    for (const auto& row : report.rows) {
        CHECK(row.status == ScanRowStatus::stabilized);
        CHECK(row.k_of_m == 0);
    }
    CHECK(report.rows[2].stabilized_value == 10);

    auto f2 = load_fan("f2");
    auto report2 = h0_limit_scan(f2, {{1, 1, 0, 0}}, {{0, 1, 0, 0}}, opts);
    CHECK(report2.rows[1].status == ScanRowStatus::stabilized);
    CHECK(report2.rows[1].k_of_m == 0);
    CHECK(report2.rows[1].stabilized_value == 4);
}

TEST_CASE("limit scan: unbounded rows") {
    auto f0 = load_fan("f0");
    ScanOptions opts;
    opts.m_max = 2;
    opts.k_cap = 24;
    auto report = h0_limit_scan(f0, {{1, 1, 0, 0}}, {{1, 0, 0, 0}}, opts);
    CHECK(report.any_unbounded());
    const auto& row = report.rows[0];
    CHECK(row.status == ScanRowStatus::unbounded);
    for (long long k = 0; k <= 24; ++k)
        CHECK(row.values[static_cast<std::size_t>(k)] == 2 * (k + 2));
}

TEST_CASE("limit scan: predictions override the window") {
    auto blp2 = load_fan("blp2");
    ScanOptions opts;
    opts.m_max = 2;
    opts.k_cap = 6;
    opts.predictions[1] = 3; // h^0(H) = 3
    opts.predictions[2] = 6; // h^0(2H) = 6
    auto report = h0_limit_scan(blp2, {{0, 0, 0, 1}}, {{0, 1, 0, 0}}, opts);
    CHECK(report.all_stabilized());
    CHECK(report.rows[0].k_of_m == 0);

    // a wrong (too small) prediction is flagged, not absorbed
    opts.predictions[1] = 2;
    auto wrong = h0_limit_scan(blp2, {{0, 0, 0, 1}}, {{0, 1, 0, 0}}, opts);
    CHECK(wrong.rows[0].status == ScanRowStatus::prediction_exceeded);

    // an unreachable prediction leaves the row inconclusive
    opts.predictions[1] = 99;
    auto unreachable = h0_limit_scan(blp2, {{0, 0, 0, 1}}, {{0, 1, 0, 0}}, opts);
    CHECK(unreachable.rows[0].status == ScanRowStatus::inconclusive);
}

TEST_CASE("limit scan rejects non-reduced boundaries") {
    auto f0 = load_fan("f0");
    CHECK_THROWS_AS(h0_limit_scan(f0, {{1, 1, 0, 0}}, {{2, 0, 0, 0}}, {}), error);
    CHECK_THROWS_AS(h0_limit_scan(f0, {{1, 1, 0, 0}}, {{0, 0, 0, 0}}, {}), error);
}
