#include "offsetdeg/verify.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "offsetdeg/eliminate.hpp"
#include "offsetdeg/errors.hpp"

namespace offsetdeg {

namespace {

void require_config(const SampleConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (cfg.bound < 2) throw std::invalid_argument("bound must be >= 2");
}

std::size_t var_index(const UniversePtr& u, std::string_view name) {
    auto i = u->index_of(name);
    if (!i) throw std::invalid_argument("universe lacks variable " +
                                        std::string(name));
    return *i;
}

Int draw_nonzero(SplitMix64& rng, unsigned bound) {
    long v = static_cast<long>(rng.next() % (2ul * bound)) -
             static_cast<long>(bound);
    if (v >= 0) ++v;
    return Int(v);
}

Rational draw_rational(SplitMix64& rng, unsigned bound) {
    Rational q(draw_nonzero(rng, bound), draw_nonzero(rng, bound));
    q.canonicalize();
    return q;
}

std::string short_str(const MultiPoly& p) {
    std::string s = p.str();
    if (s.size() > 160) s = s.substr(0, 157) + "...";
    return s;
}

Int int_pow(const Int& base, unsigned exp) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

void add_check(SuiteReport& rep, const std::string& name, bool passed,
               const std::string& witness = "") {
    rep.checks.push_back({name, passed, passed ? "" : witness});
    if (passed)
        ++rep.passes;
    else
        ++rep.failures;
}

}  // namespace

std::string SuiteReport::summary() const {
    std::ostringstream out;
    out << suite << ": " << passes << "/" << (passes + failures) << " passed";
    if (trials > 0) out << " (" << trials << " trials)";
    if (degenerate_redraws > 0)
        out << ", " << degenerate_redraws << " degenerate redraws";
    if (inconclusive) out << ", inconclusive";
    return out.str();
}

SuiteReport specialization_suite(const AuxiliarySystem& sys, const MultiPoly& R,
                                 const SampleConfig& cfg) {
    require_config(cfg);
    SuiteReport rep;
    rep.suite = "specialization";

    const UniversePtr& u = sys.T0.universe();
    const std::size_t t0 = var_index(u, "t0");
    const std::vector<std::size_t> point_vars = {
        var_index(u, "d"),  var_index(u, "k1"), var_index(u, "k2"),
        var_index(u, "k3"), var_index(u, "c1"), var_index(u, "c2"),
        var_index(u, "c3")};

    MultiPoly T(u);
    for (int i = 0; i < 3; ++i)
        T += MultiPoly::variable(u, point_vars[4 + i]) * sys.T[i];

    const unsigned deg_T0 = sys.T0.degree_in(t0);
    const unsigned deg_T = T.degree_in(t0);
    const MultiPoly lead_T0 = sys.T0.coeff_of(t0, deg_T0);
    const MultiPoly lead_T = T.coeff_of(t0, deg_T);

    SplitMix64 rng(cfg.seed);
    const unsigned redraw_budget = 10 * cfg.trials;

    for (unsigned trial = 0; trial < cfg.trials; ++trial) {
        std::map<std::size_t, Rational> point;
        bool drawn = false;
        while (!drawn) {
            if (rep.degenerate_redraws >= redraw_budget) {
                rep.inconclusive = true;
                rep.checks.push_back(
                    {"draw budget", false,
                     "exhausted " + std::to_string(redraw_budget) +
                         " redraws before completing all trials"});
                return rep;
            }
            point.clear();
            for (std::size_t v : point_vars)
                point.emplace(v, draw_rational(rng, cfg.bound));
            if (lead_T0.substitute(point).num.is_zero() ||
                lead_T.substitute(point).num.is_zero()) {
                ++rep.degenerate_redraws;
                continue;
            }
            drawn = true;
        }

        const RationalPoly A = sys.T0.substitute(point);
        const RationalPoly B = T.substitute(point);
        const RationalPoly Rs = R.substitute(point);
        const MultiPoly res = resultant(A.num, B.num, t0);
        // Res(A/a, B/b) = Res(A, B) / (a^deg(B) * b^deg(A)) in t0.
        const MultiPoly lhs = res * Rs.den;
        const MultiPoly rhs =
            Rs.num * (int_pow(A.den, deg_T) * int_pow(B.den, deg_T0));
        ++rep.trials;
        if (lhs == rhs) {
            ++rep.passes;
        } else {
            ++rep.failures;
            std::ostringstream w;
            w << "specialized resultant disagrees with specialized R at";
            static const char* names[] = {"d",  "k1", "k2", "k3",
                                          "c1", "c2", "c3"};
            for (std::size_t i = 0; i < point_vars.size(); ++i)
                w << " " << names[i] << "="
                  << point.at(point_vars[i]).get_str();
            rep.checks.push_back(
                {"specialization trial " + std::to_string(trial), false,
                 w.str()});
        }
    }
    return rep;
}

SuiteReport identity_suite(const Parametrization& P,
                           const ProjectiveParametrization& Ph,
                           const NormalData& nd, const AuxiliarySystem& sys) {
    SuiteReport rep;
    rep.suite = "identity";

    const UniversePtr& u = P.P0.universe();
    const std::size_t t1 = var_index(u, "t1");
    const std::size_t t2 = var_index(u, "t2");
    const std::size_t d = var_index(u, "d");

    auto identity = [&](const std::string& name, const MultiPoly& diff) {
        add_check(rep, name, diff.is_zero(),
                  "difference = " + short_str(diff));
    };

    identity("X*U1 + Y*U2 + Z*U3 = 0",
             Ph.X * sys.U[0] + Ph.Y * sys.U[1] + Ph.Z * sys.U[2]);
    identity("N1*U1 + N2*U2 + N3*U3 = 0",
             nd.N[0] * sys.U[0] + nd.N[1] * sys.U[1] + nd.N[2] * sys.U[2]);

    const std::array<MultiPoly, 3> comps = {P.P1, P.P2, P.P3};
    for (std::size_t var : {t1, t2}) {
        MultiPoly dot(u);
        for (int i = 0; i < 3; ++i) {
            MultiPoly tangent = comps[i].partial_derivative(var) * P.P0 -
                                comps[i] * P.P0.partial_derivative(var);
            dot += nd.n[i] * tangent;
        }
        identity("n orthogonal to " + u->name(var) + "-tangent numerators",
                 dot);
    }

    identity("h = n1^2 + n2^2 + n3^2",
             nd.h - (nd.n[0] * nd.n[0] + nd.n[1] * nd.n[1] +
                     nd.n[2] * nd.n[2]));

    const MultiPoly d2W2 =
        MultiPoly::variable(u, d, 2) * (Ph.W * Ph.W);
    for (int i = 0; i < 3; ++i) {
        identity("T" + std::to_string(i + 1) +
                     "*Q = H*M_h^2 - d^2*W^2*G_h^2",
                 sys.T[i] * sys.Q -
                     (nd.H * (sys.M_h[i] * sys.M_h[i]) -
                      d2W2 * (sys.G_h[i] * sys.G_h[i])));
    }
    identity("T0*Q0 = S0", sys.T0 * sys.Q0 - sys.S0);
    return rep;
}

namespace {

// Random polynomial in t0, t1, t2 with exact t0-degree deg and small sparse
// tails; keeps Sylvester blocks tiny so the cofactor oracle stays cheap.
MultiPoly random_t0_poly(SplitMix64& rng, const UniversePtr& u, unsigned deg,
                         unsigned bound, std::size_t t0, std::size_t t1,
                         std::size_t t2) {
    MultiPoly::Terms terms;
    auto put = [&](unsigned e0, unsigned e1, unsigned e2, Int coeff) {
        Monomial mono;
        mono.set_exp(t0, e0);
        mono.set_exp(t1, e1);
        mono.set_exp(t2, e2);
        terms[mono] += coeff;
    };
    put(deg, static_cast<unsigned>(rng.next() % 2),
        static_cast<unsigned>(rng.next() % 2), draw_nonzero(rng, bound));
    for (unsigned e = 0; e < deg; ++e) {
        if (rng.next() % 3 == 0) continue;
        put(e, static_cast<unsigned>(rng.next() % 2),
            static_cast<unsigned>(rng.next() % 2), draw_nonzero(rng, bound));
    }
    return MultiPoly::from_terms(u, std::move(terms));
}

}  // namespace

SuiteReport oracle_suite(const SampleConfig& cfg) {
    require_config(cfg);
    SuiteReport rep;
    rep.suite = "oracle";

    const UniversePtr& u = VariableUniverse::standard();
    const std::size_t t0 = var_index(u, "t0");
    const std::size_t t1 = var_index(u, "t1");
    const std::size_t t2 = var_index(u, "t2");
    const MultiPoly zero(u);
    SplitMix64 rng(cfg.seed);

    for (unsigned trial = 0; trial < cfg.trials; ++trial) {
        const unsigned m = 1 + static_cast<unsigned>(rng.next() % 4);
        const unsigned n = 1 + static_cast<unsigned>(rng.next() % 4);
        const MultiPoly f = random_t0_poly(rng, u, m, cfg.bound, t0, t1, t2);
        const MultiPoly g = random_t0_poly(rng, u, n, cfg.bound, t0, t1, t2);
        const MultiPoly w = random_t0_poly(rng, u, 1, cfg.bound, t0, t1, t2);

        ++rep.trials;
        std::string fail;

        if (resultant(f, g, t0) != SylvesterMatrix(f, g, t0).det_cofactor())
            fail = "resultant != cofactor oracle for f=" + short_str(f) +
                   ", g=" + short_str(g);

        if (fail.empty() && !resultant(f * w, g * w, t0).is_zero())
            fail = "shared factor w=" + short_str(w) +
                   " did not force a zero resultant";

        if (fail.empty()) {
            const MultiPoly fw = f * w;
            const MultiPoly gw = g * w;
            const MultiPoly G = gcd(fw, gw);
            if (!divide_if_exact(G, w) || !divide_if_exact(fw, G) ||
                !divide_if_exact(gw, G))
                fail = "gcd reconstruction failed for w=" + short_str(w);
        }

        if (fail.empty() && gcd(f, zero) != normalize_sign(f))
            fail = "gcd(f, 0) is not the sign-normalized f=" + short_str(f);

        if (fail.empty()) {
            const MultiPoly p = f * g;
            const std::vector<std::size_t> tvars = {t1, t2};
            if (content(p, tvars) * primitive_part(p, tvars) != p)
                fail = "content * primitive part != p for p=" + short_str(p);
        }

        if (fail.empty()) {
            ++rep.passes;
        } else {
            ++rep.failures;
            rep.checks.push_back(
                {"oracle trial " + std::to_string(trial), false, fail});
        }
    }
    return rep;
}

}  // namespace offsetdeg
