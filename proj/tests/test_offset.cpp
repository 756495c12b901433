#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "offsetdeg/cli.hpp"
#include "offsetdeg/eliminate.hpp"
#include "offsetdeg/errors.hpp"
#include "offsetdeg/mvpoly.hpp"
#include "offsetdeg/offset.hpp"

using namespace offsetdeg;

namespace {

const UniversePtr& uni() { return VariableUniverse::standard(); }

MultiPoly poly(const std::string& text) {
    return parse_polynomial(text, uni());
}

RationalFn fn(const std::string& num, const std::string& den = "1") {
    return {poly(num), poly(den)};
}

MultiPoly fixture(const std::string& relpath) {
    std::ifstream in(std::string(FIXTURE_DIR) + "/" + relpath + ".txt");
    REQUIRE_MESSAGE(in.good(), relpath);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_polynomial(ss.str(), uni());
}

std::map<std::string, unsigned> fixture_values(const std::string& surface) {
    std::ifstream in(std::string(FIXTURE_DIR) + "/expected/" + surface +
                     "/values.txt");
    REQUIRE(in.good());
    std::map<std::string, unsigned> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        out[line.substr(0, eq)] = unsigned(std::stoul(line.substr(eq + 1)));
    }
    return out;
}

struct Pipeline {
    Parametrization P;
    ProjectiveParametrization Ph;
    NormalData nd;
    AffineSystem aff;
    AuxiliarySystem sys;
    MultiPoly R;
    DegreeReport deg;
};

Pipeline run_pipeline(const std::array<RationalFn, 3>& components,
                      std::optional<unsigned> tracing_index = std::nullopt) {
    Parametrization P = normalize(components);
    check_assumptions(P);
    ProjectiveParametrization Ph = projectivize(P);
    NormalData nd = associated_normal(P, Ph);
    AffineSystem aff = build_affine_auxiliary(P, nd);
    AuxiliarySystem sys = build_projective_auxiliary(Ph, nd);
    MultiPoly R = generalized_resultant(sys);
    DegreeReport deg = extract_degree(R, tracing_index);
    return {std::move(P),   std::move(Ph), std::move(nd), std::move(aff),
            std::move(sys), std::move(R),  std::move(deg)};
}

std::array<RationalFn, 3> hyperbolic() {
    return {fn("t1"), fn("2*t2"), fn("t1^2 - t2^2")};
}

std::array<RationalFn, 3> circular() {
    return {fn("t1^3"), fn("t2"), fn("t1^6 + t2^2")};
}

std::array<RationalFn, 3> whitney() {
    return {fn("t1*t2"), fn("t2"), fn("t1^2")};
}

}  // namespace

TEST_CASE("normalize clears denominators and shared factors") {
    Parametrization flat = normalize(hyperbolic());
    CHECK(flat.P0 == MultiPoly(uni(), 1));
    CHECK(flat.P1 == poly("t1"));
    CHECK(flat.P2 == poly("2*t2"));
    CHECK(flat.P3 == poly("t1^2 - t2^2"));

    Parametrization frac =
        normalize({fn("t1", "t2"), fn("1", "t2"), fn("t1")});
    CHECK(frac.P0 == poly("t2"));
    CHECK(frac.P1 == poly("t1"));
    CHECK(frac.P2 == MultiPoly(uni(), 1));
    CHECK(frac.P3 == poly("t1*t2"));

    Parametrization scaled =
        normalize({fn("2*t1", "2"), fn("4*t2", "2"), fn("2*t1^2", "2")});
    CHECK(scaled.P0 == MultiPoly(uni(), 1));
    CHECK(scaled.P1 == poly("t1"));
    CHECK(scaled.P2 == poly("2*t2"));
    CHECK(scaled.P3 == poly("t1^2"));

    Parametrization sign = normalize(
        {RationalFn{poly("t1"), poly("-t2")}, fn("1", "t2"), fn("t1")});
    CHECK(sign.P0 == poly("t2"));
    CHECK(sign.P1 == poly("-t1"));

    CHECK_THROWS_AS(normalize({fn("1"), fn("2"), fn("3")}), AssumptionError);
    CHECK_THROWS_AS(normalize({fn("t1", "0"), fn("t2"), fn("1")}),
                    std::invalid_argument);
}

TEST_CASE("check_assumptions rejects origin-centered spheres") {
    const std::string w = "t1^2 + t2^2 + 1";
    CHECK_THROWS_WITH_AS(
        check_assumptions(normalize({fn("2*t1", w),
                                     fn("t1^2 + t2^2 - 1", w),
                                     fn("2*t2", w)})),
        doctest::Contains("sphere"), AssumptionError);

    std::vector<CheckOutcome> checks = check_assumptions(normalize(hyperbolic()));
    REQUIRE(checks.size() == 4);
    CHECK(checks[0].name == "sphere");
    CHECK(checks[1].name == "hodograph");
    CHECK(checks[2].name == "cylinder");
    CHECK(checks[3].name == "origin");
    for (const CheckOutcome& c : checks)
        CHECK(c.status != CheckOutcome::Status::warning);
}

TEST_CASE("check_assumptions flags a cylinder parametrization") {
    std::vector<CheckOutcome> checks = check_assumptions(
        normalize({fn("t1^2", "t2^2"), fn("1", "t2^2"), fn("t1", "t2")}));
    bool warned = false;
    for (const CheckOutcome& c : checks)
        if (c.name == "cylinder") {
            CHECK(c.status == CheckOutcome::Status::warning);
            warned = true;
        }
    CHECK(warned);
}

TEST_CASE("projectivize homogenizes all four coordinates with t0") {
    ProjectiveParametrization hyp = projectivize(normalize(hyperbolic()));
    CHECK(hyp.d_P == 2);
    CHECK(hyp.X == poly("t0*t1"));
    CHECK(hyp.Y == poly("2*t0*t2"));
    CHECK(hyp.Z == poly("t1^2 - t2^2"));
    CHECK(hyp.W == poly("t0^2"));

    ProjectiveParametrization cir = projectivize(normalize(circular()));
    CHECK(cir.d_P == 6);
    CHECK(cir.X == poly("t0^3*t1^3"));
    CHECK(cir.Y == poly("t0^5*t2"));
    CHECK(cir.Z == poly("t1^6 + t0^4*t2^2"));
    CHECK(cir.W == poly("t0^6"));

    ProjectiveParametrization lin =
        projectivize(normalize({fn("t1"), fn("t2"), fn("0")}));
    CHECK(lin.d_P == 1);
    CHECK(lin.X == poly("t1"));
    CHECK(lin.Y == poly("t2"));
    CHECK(lin.Z.is_zero());
    CHECK(lin.W == poly("t0"));
}

TEST_CASE("associated normal is reduced and sign-normalized") {
    Parametrization plane = normalize({fn("t1"), fn("t2"), fn("0")});
    NormalData nd = associated_normal(plane, projectivize(plane));
    CHECK(nd.n[0].is_zero());
    CHECK(nd.n[1].is_zero());
    CHECK(nd.n[2] == MultiPoly(uni(), 1));
    CHECK(nd.N[2] == MultiPoly(uni(), 1));
    CHECK(nd.h == MultiPoly(uni(), 1));
    CHECK(nd.H == MultiPoly(uni(), 1));

    Parametrization hyp = normalize(hyperbolic());
    NormalData hnd = associated_normal(hyp, projectivize(hyp));
    CHECK(hnd.n[0] == poly("2*t1"));
    CHECK(hnd.n[1] == poly("-t2"));
    CHECK(hnd.n[2] == MultiPoly(uni(), Int(-1)));
    CHECK(hnd.h == poly("4*t1^2 + t2^2 + 1"));
}

TEST_CASE("pipeline reproduces the frozen systems") {
    const struct {
        const char* dir;
        std::array<RationalFn, 3> components;
    } cases[] = {{"hyperbolic_paraboloid", hyperbolic()},
                 {"circular_paraboloid", circular()},
                 {"whitney_umbrella", whitney()}};
    for (const auto& c : cases) {
        CAPTURE(c.dir);
        const std::string base = std::string("expected/") + c.dir + "/";
        Pipeline p = run_pipeline(c.components);

        for (int i = 0; i < 3; ++i)
            CHECK(p.nd.N[i] == fixture(base + "N" + std::to_string(i + 1)));
        CHECK(p.nd.H == fixture(base + "H"));
        CHECK(p.sys.Q == fixture(base + "Q"));
        CHECK(p.sys.Q0 == fixture(base + "Q0"));
        CHECK(p.sys.T0 == fixture(base + "T0"));
        for (int i = 0; i < 3; ++i)
            CHECK(p.sys.T[i] == fixture(base + "T" + std::to_string(i + 1)));
        CHECK(p.R == fixture(base + "R"));
        CHECK(p.deg.M1 == fixture(base + "M1"));
        CHECK(p.deg.M2 == fixture(base + "M2"));
        CHECK(p.deg.M3 == fixture(base + "M3"));

        std::map<std::string, unsigned> want = fixture_values(c.dir);
        CHECK(p.Ph.d_P == want.at("d_P"));
        CHECK(p.sys.T0.degree_in(0) == want.at("deg_t0_T0"));
        CHECK(p.sys.T0.degree({0, 1, 2}) == want.at("deg_th_T0"));
        CHECK(p.sys.T[0].degree_in(0) == want.at("deg_t0_T1"));
        CHECK(p.sys.T[0].degree({0, 1, 2}) == want.at("deg_th_T1"));
        CHECK(p.deg.deg_R == want.at("deg_R"));
        CHECK(p.deg.deg_M1 == want.at("deg_M1"));
        CHECK(p.deg.deg_M2 == want.at("deg_M2"));
        CHECK(p.deg.deg_M3 == want.at("deg_M3"));
        CHECK(p.R.term_count() == want.at("terms_R"));
        CHECK(p.deg.M2.term_count() == want.at("terms_M2"));
        CHECK(p.deg.M3.term_count() == want.at("terms_M3"));
        CHECK(p.deg.m_delta == want.at("m_delta"));
    }
}

TEST_CASE("published systems match up to the overall sign of N and T0") {
    const struct {
        const char* dir;
        std::array<RationalFn, 3> components;
    } cases[] = {{"hyperbolic_paraboloid", hyperbolic()},
                 {"circular_paraboloid", circular()}};
    for (const auto& c : cases) {
        CAPTURE(c.dir);
        const std::string base = std::string("documented/") + c.dir + "/";
        Pipeline p = run_pipeline(c.components);

        for (int i = 0; i < 3; ++i)
            CHECK(p.nd.N[i] == -fixture(base + "N" + std::to_string(i + 1)));
        CHECK(p.sys.T0 == -fixture(base + "T0"));
        for (int i = 0; i < 3; ++i)
            CHECK(p.sys.T[i] == fixture(base + "T" + std::to_string(i + 1)));
        CHECK(p.deg.M1 == fixture(base + "M1"));
        CHECK(p.deg.M2 == fixture(base + "M2"));
        CHECK(p.deg.M3 == fixture(base + "M3"));
    }
}

TEST_CASE("published umbrella curves drive the resultant to the published factors") {
    const std::string base = "documented/umbrella_variant/";
    MultiPoly T0 = fixture(base + "T0");
    MultiPoly pencil(uni());
    for (int i = 0; i < 3; ++i)
        pencil += MultiPoly::variable(uni(), 7 + i) *
                  fixture(base + "T" + std::to_string(i + 1));
    MultiPoly R = resultant(T0, pencil, 0);
    DegreeReport deg = extract_degree(R, std::nullopt);
    CHECK(deg.M1 == fixture(base + "M1"));
    CHECK(deg.M2 == fixture(base + "M2"));
    CHECK(deg.M3 == fixture(base + "M3"));
    CHECK(deg.M1 == poly("4*t1^4*t2^2"));
    CHECK(deg.m_delta == 14);
}

TEST_CASE("affine and projective systems agree on the chart t0 = 1") {
    for (const auto& components : {hyperbolic(), circular(), whitney()}) {
        Pipeline p = run_pipeline(components);
        const std::map<std::size_t, Int> chart{{0, Int(1)}};
        const MultiPoly q = p.sys.Q.substitute(chart);
        for (int i = 0; i < 3; ++i)
            CHECK(p.sys.T[i].substitute(chart) * q == p.aff.s[i]);
        const MultiPoly t0q0 =
            p.sys.T0.substitute(chart) * p.sys.Q0.substitute(chart);
        CHECK((t0q0 == p.aff.s0 || t0q0 == -p.aff.s0));
    }
}

TEST_CASE("s0 is the incidence determinant of k, P and the normal") {
    Parametrization P = normalize(whitney());
    NormalData nd = associated_normal(P, projectivize(P));
    AffineSystem aff = build_affine_auxiliary(P, nd);
    auto v = [&](std::size_t i) { return MultiPoly::variable(uni(), i); };
    MultiPoly det = v(4) * (P.P2 * nd.n[2] - P.P3 * nd.n[1]) -
                    v(5) * (P.P1 * nd.n[2] - P.P3 * nd.n[0]) +
                    v(6) * (P.P1 * nd.n[1] - P.P2 * nd.n[0]);
    CHECK(aff.s0 == det);
}

TEST_CASE("a plane fails the t0-degree hypothesis") {
    Parametrization P = normalize({fn("t1"), fn("t2"), fn("0")});
    NormalData nd = associated_normal(P, projectivize(P));
    CHECK_THROWS_WITH_AS(build_projective_auxiliary(projectivize(P), nd),
                         doctest::Contains("t0"), InapplicableError);
}

TEST_CASE("a T0 free of t0 degenerates to a power of T0") {
    const MultiPoly zero(uni());
    AuxiliarySystem sys{zero,
                        zero,
                        {zero, zero, zero},
                        poly("k1*t2 - k2*t1"),
                        {poly("t0^2*t1"), poly("t0^2*t2"), poly("t0^2")},
                        {zero, zero, zero},
                        {zero, zero, zero},
                        zero,
                        {zero, zero, zero}};
    CHECK(generalized_resultant(sys) == poly_pow(sys.T0, 2));
}

TEST_CASE("tracing index divides the degree or leaves it undetermined") {
    Pipeline p = run_pipeline(circular());
    CHECK(p.deg.m_delta == 18);
    CHECK_FALSE(p.deg.delta.has_value());

    DegreeReport with_index = extract_degree(p.R, 3);
    REQUIRE(with_index.delta.has_value());
    CHECK(*with_index.delta == 6);
    CHECK(with_index.warnings.empty());

    DegreeReport bad_index = extract_degree(p.R, 4);
    CHECK_FALSE(bad_index.delta.has_value());
    CHECK_FALSE(bad_index.warnings.empty());

    CHECK_THROWS_AS(extract_degree(p.R, 0), std::invalid_argument);
}

TEST_CASE("scaling the parametrization by a constant preserves the degree") {
    auto scale7 = [](std::array<RationalFn, 3> components) {
        for (RationalFn& c : components) c.num = c.num * Int(7);
        return components;
    };
    CHECK(run_pipeline(scale7(hyperbolic())).deg.m_delta == 10);
    CHECK(run_pipeline(scale7(circular())).deg.m_delta == 18);
    CHECK(run_pipeline(scale7(whitney())).deg.m_delta == 14);
}

TEST_CASE("stored generic offset polynomials have the computed total degree") {
    UniversePtr xu = make_universe({"d", "x1", "x2", "x3"});
    auto load = [&](const std::string& relpath) {
        std::ifstream in(std::string(FIXTURE_DIR) + "/" + relpath + ".txt");
        REQUIRE_MESSAGE(in.good(), relpath);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_polynomial(ss.str(), xu);
    };
    CHECK(load("documented/hyperbolic_paraboloid/g").degree({1, 2, 3}) == 10);
    CHECK(load("documented/whitney_umbrella/g").degree({1, 2, 3}) == 14);
}
