#include <catch2/catch_amalgamated.hpp>

#include "zkit/io.hpp"
#include "zkit/verify.hpp"

using namespace zkit;

namespace {

ToricFan load_fan(const std::string& name) {
    return load_fan_file(std::string(ZKIT_FIXTURE_DIR) + "/fans/" + name + ".json");
}

VerifyOptions quick_options() {
    VerifyOptions opts;
    opts.m_max = 8;
    opts.r_max = 6;
    opts.a_max = 32;
    opts.growth_m_max = 14;
    opts.max_big_samples = 40;
    opts.max_okounkov_samples = 2;
    return opts;
}

} // namespace

TEST_CASE("fkl suite passes on all fixtures") {
    for (const auto& name : {"p2", "blp2", "f0", "f2"}) {
        auto report = verify_suite(load_fan(name), Suite::fkl, quick_options());
        for (const auto& c : report.checks) {
            INFO(name << " / " << c.name << ": " << c.detail);
            CHECK(c.pass);
        }
        CHECK(report.pass());
    }
}

TEST_CASE("okounkov suite passes on all fixtures") {
    for (const auto& name : {"p2", "blp2", "f0", "f2"}) {
        auto report = verify_suite(load_fan(name), Suite::okounkov, quick_options());
        for (const auto& c : report.checks) {
            INFO(name << " / " << c.name << ": " << c.detail);
            CHECK(c.pass);
        }
        CHECK(report.pass());
    }
}

TEST_CASE("growth suite passes on all fixtures") {
    for (const auto& name : {"p2", "blp2", "f0", "f2"}) {
        auto report = verify_suite(load_fan(name), Suite::growth, quick_options());
        for (const auto& c : report.checks) {
            INFO(name << " / " << c.name << ": " << c.detail);
            CHECK(c.pass);
        }
        CHECK(report.pass());
    }
}

TEST_CASE("rr suite passes on all fixtures") {
    for (const auto& name : {"p2", "blp2", "f0", "f2"}) {
        auto report = verify_suite(load_fan(name), Suite::rr, quick_options());
        for (const auto& c : report.checks) {
            INFO(name << " / " << c.name << ": " << c.detail);
            CHECK(c.pass);
        }
        CHECK(report.pass());
    }
}

TEST_CASE("scan suite passes on all fixtures") {
    for (const auto& name : {"p2", "blp2", "f0", "f2"}) {
        auto report = verify_suite(load_fan(name), Suite::scan, quick_options());
        for (const auto& c : report.checks) {
            INFO(name << " / " << c.name << ": " << c.detail);
            CHECK(c.pass);
        }
        CHECK(report.pass());
    }
}

TEST_CASE("suites hold on a rank-4 iterated blowup") {
    auto fan = build_fan({{1, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 1}, {-1, -1}});
    VerifyOptions opts = quick_options();
    opts.m_max = 6;
    opts.r_max = 5;
    opts.max_big_samples = 12;
    opts.max_okounkov_samples = 1;
    for (auto suite : {Suite::fkl, Suite::okounkov, Suite::rr}) {
        auto report = verify_suite(fan, suite, opts);
        for (const auto& c : report.checks) {
            INFO(suite_name(suite) << " / " << c.name << ": " << c.detail);
            CHECK(c.pass);
        }
        CHECK(report.pass());
    }
}

TEST_CASE("suite names round-trip") {
    for (auto s : {Suite::fkl, Suite::okounkov, Suite::growth, Suite::rr, Suite::scan})
        CHECK(suite_from_name(suite_name(s)) == s);
    CHECK(!suite_from_name("nope"));
}
