#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <string>

#include "offsetdeg/cli.hpp"
#include "offsetdeg/errors.hpp"
#include "offsetdeg/mvpoly.hpp"
#include "offsetdeg/offset.hpp"
#include "offsetdeg/verify.hpp"

using namespace offsetdeg;

namespace {

const UniversePtr& uni() { return VariableUniverse::standard(); }

RationalFn fn(const std::string& text) {
    RationalPoly rp = parse_expression(text);
    return {rp.num, MultiPoly(uni(), rp.den)};
}

struct Worked {
    const char* name;
    std::array<RationalFn, 3> components;
};

std::array<Worked, 3> worked_examples() {
    return {{{"hyperbolic paraboloid",
              {fn("t1"), fn("2*t2"), fn("t1^2 - t2^2")}},
             {"circular paraboloid", {fn("t1^3"), fn("t2"), fn("t1^6 + t2^2")}},
             {"whitney umbrella", {fn("t1*t2"), fn("t2"), fn("t1^2")}}}};
}

struct Prepared {
    Parametrization P;
    ProjectiveParametrization Ph;
    NormalData nd;
    AuxiliarySystem sys;
    MultiPoly R;
};

Prepared prepare(const std::array<RationalFn, 3>& components) {
    Parametrization P = normalize(components);
    ProjectiveParametrization Ph = projectivize(P);
    NormalData nd = associated_normal(P, Ph);
    AuxiliarySystem sys = build_projective_auxiliary(Ph, nd);
    MultiPoly R = generalized_resultant(sys);
    return {std::move(P), std::move(Ph), std::move(nd), std::move(sys),
            std::move(R)};
}

}  // namespace

TEST_CASE("splitmix64 matches the reference stream") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xe220a8397b1dcdafull);
    CHECK(rng.next() == 0x6e789e6aa1b965f4ull);
    CHECK(rng.next() == 0x06c45d188009454full);
}

TEST_CASE("identity suite proves the construction identities") {
    for (const Worked& w : worked_examples()) {
        CAPTURE(w.name);
        Prepared p = prepare(w.components);
        SuiteReport rep = identity_suite(p.P, p.Ph, p.nd, p.sys);
        CHECK(rep.suite == "identity");
        CHECK(rep.ok());
        CHECK(rep.passes == 9);
        CHECK(rep.failures == 0);
        CHECK(rep.checks.size() == 9);
        CHECK(rep.summary() == "identity: 9/9 passed");
    }
}

TEST_CASE("identity suite pinpoints a mutated system") {
    Prepared p = prepare(worked_examples()[0].components);

    AuxiliarySystem broken_syzygy = p.sys;
    broken_syzygy.U[1] += MultiPoly(uni(), 1);
    SuiteReport rep = identity_suite(p.P, p.Ph, p.nd, broken_syzygy);
    CHECK_FALSE(rep.ok());
    CHECK(rep.failures == 2);
    for (const SuiteCheck& c : rep.checks)
        if (!c.passed) {
            CHECK(c.name.find("U2") != std::string::npos);
            CHECK(c.witness.find("difference = ") == 0);
        }

    AuxiliarySystem broken_t0 = p.sys;
    broken_t0.T0 += MultiPoly(uni(), 1);
    rep = identity_suite(p.P, p.Ph, p.nd, broken_t0);
    CHECK(rep.failures == 1);
    CHECK_FALSE(rep.checks.back().passed);
    CHECK(rep.checks.back().name == "T0*Q0 = S0");
}

TEST_CASE("specialization suite accepts the computed resultant") {
    for (const Worked& w : worked_examples()) {
        CAPTURE(w.name);
        Prepared p = prepare(w.components);
        SuiteReport rep = specialization_suite(p.sys, p.R, SampleConfig{});
        CHECK(rep.suite == "specialization");
        CHECK(rep.ok());
        CHECK(rep.trials == 25);
        CHECK(rep.passes == 25);
        CHECK(rep.failures == 0);
        CHECK(rep.checks.empty());
        CHECK(rep.degenerate_redraws <= 2);
    }
}

TEST_CASE("specialization suite rejects a corrupted resultant") {
    Prepared p = prepare(worked_examples()[0].components);
    const MultiPoly corrupted = p.R + MultiPoly(uni(), 1);
    SuiteReport rep = specialization_suite(p.sys, corrupted, SampleConfig{});
    CHECK_FALSE(rep.ok());
    CHECK(rep.failures == rep.trials);
    REQUIRE_FALSE(rep.checks.empty());
    CHECK(rep.checks.front().name.find("specialization trial") == 0);
    CHECK(rep.checks.front().witness.find(
              "disagrees with specialized R") != std::string::npos);
}

TEST_CASE("oracle suite cross-checks the elimination kernel") {
    SuiteReport rep = oracle_suite(SampleConfig{});
    CHECK(rep.suite == "oracle");
    CHECK(rep.ok());
    CHECK(rep.trials == 25);
    CHECK(rep.passes == 25);
    CHECK(rep.summary() == "oracle: 25/25 passed (25 trials)");
}

TEST_CASE("suites are deterministic in the seed") {
    Prepared p = prepare(worked_examples()[1].components);
    const SampleConfig cfg{7, 10, 5};

    SuiteReport a = specialization_suite(p.sys, p.R, cfg);
    SuiteReport b = specialization_suite(p.sys, p.R, cfg);
    CHECK(a.summary() == b.summary());
    CHECK(a.degenerate_redraws == b.degenerate_redraws);
    CHECK(a.checks.size() == b.checks.size());

    SuiteReport c = oracle_suite(cfg);
    SuiteReport d = oracle_suite(cfg);
    CHECK(c.summary() == d.summary());
    CHECK(c.passes == d.passes);
}

TEST_CASE("sample configuration is validated") {
    Prepared p = prepare(worked_examples()[0].components);
    CHECK_THROWS_AS(specialization_suite(p.sys, p.R, SampleConfig{42, 0, 5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(specialization_suite(p.sys, p.R, SampleConfig{42, 25, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(oracle_suite(SampleConfig{42, 0, 5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(oracle_suite(SampleConfig{42, 25, 0}),
                    std::invalid_argument);
}
