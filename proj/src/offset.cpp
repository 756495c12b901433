#include "offsetdeg/offset.hpp"

#include <algorithm>
#include <utility>

#include "offsetdeg/eliminate.hpp"
#include "offsetdeg/errors.hpp"

namespace offsetdeg {

namespace {

// Indices into VariableUniverse::standard().
namespace vidx {
constexpr std::size_t t0 = 0, t1 = 1, t2 = 2, d = 3;
constexpr std::size_t k1 = 4, k2 = 5, k3 = 6;
constexpr std::size_t c1 = 7, c2 = 8, c3 = 9;
}  // namespace vidx

const std::vector<std::size_t>& t_pair() {
    static const std::vector<std::size_t> v{vidx::t1, vidx::t2};
    return v;
}

const std::vector<std::size_t>& t_homog() {
    static const std::vector<std::size_t> v{vidx::t0, vidx::t1, vidx::t2};
    return v;
}

void require_standard(const MultiPoly& p, const char* what) {
    if (p.universe() == VariableUniverse::standard()) return;
    if (!(*p.universe() == *VariableUniverse::standard()))
        throw std::invalid_argument(std::string(what) +
                                    " must live in the standard universe");
}

MultiPoly kvar(std::size_t v) {
    return MultiPoly::variable(VariableUniverse::standard(), v);
}

// True when var divides p; the zero polynomial counts as divisible.
bool var_divides(std::size_t var, const MultiPoly& p) {
    for (const auto& [mono, coeff] : p.terms()) {
        (void)coeff;
        if (mono.exp(var) == 0) return false;
    }
    return true;
}

std::array<MultiPoly, 3> cross(const std::array<MultiPoly, 3>& a,
                               const std::array<MultiPoly, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

// Tangent numerator vectors: j-th entry d(Pj)/d(ti) * P0 - Pj * d(P0)/d(ti).
std::array<MultiPoly, 3> tangent_numerators(const MultiPoly& p0,
                                            const MultiPoly& p1,
                                            const MultiPoly& p2,
                                            const MultiPoly& p3,
                                            std::size_t var) {
    std::array<const MultiPoly*, 3> comps{&p1, &p2, &p3};
    std::array<MultiPoly, 3> out{MultiPoly(p0.universe()), MultiPoly(p0.universe()),
                                 MultiPoly(p0.universe())};
    for (int j = 0; j < 3; ++j)
        out[j] = comps[j]->partial_derivative(var) * p0 -
                 *comps[j] * p0.partial_derivative(var);
    return out;
}

// gcd-reduce a vector and make the first nonzero component's leading
// coefficient positive.
std::array<MultiPoly, 3> reduce_vector(const std::array<MultiPoly, 3>& raw,
                                       const char* what) {
    if (raw[0].is_zero() && raw[1].is_zero() && raw[2].is_zero())
        throw AssumptionError(std::string(what) +
                              " vanishes identically; the map does not "
                              "parametrize a surface");
    MultiPoly g = gcd({raw[0], raw[1], raw[2]});
    std::array<MultiPoly, 3> out{divide_exact(raw[0], g), divide_exact(raw[1], g),
                                 divide_exact(raw[2], g)};
    for (const MultiPoly& comp : out) {
        if (comp.is_zero()) continue;
        if (comp.leading_coefficient() < 0)
            for (MultiPoly& c : out) c = -c;
        break;
    }
    return out;
}

MultiPoly strip_t0_power(const MultiPoly& p, unsigned k) {
    if (k == 0 || p.is_zero()) return p;
    MultiPoly::Terms out;
    for (const auto& [mono, coeff] : p.terms()) {
        Monomial m = mono;
        m.set_exp(vidx::t0, mono.exp(vidx::t0) - k);
        out.emplace(m, coeff);
    }
    return MultiPoly::from_terms(p.universe(), std::move(out));
}

bool is_one(const MultiPoly& p) {
    return p.is_constant() && !p.is_zero() && p.constant_value() == 1;
}

}  // namespace

Parametrization normalize(const std::array<RationalFn, 3>& components) {
    const UniversePtr& u = VariableUniverse::standard();
    std::array<MultiPoly, 3> num{MultiPoly(u), MultiPoly(u), MultiPoly(u)};
    std::array<MultiPoly, 3> den{MultiPoly(u), MultiPoly(u), MultiPoly(u)};
    for (int i = 0; i < 3; ++i) {
        require_standard(components[i].num, "component numerator");
        require_standard(components[i].den, "component denominator");
        if (components[i].den.is_zero())
            throw std::invalid_argument("component denominator is zero");
        for (const MultiPoly* p : {&components[i].num, &components[i].den})
            for (std::size_t v = 0; v < u->size(); ++v)
                if (v != vidx::t1 && v != vidx::t2 && p->depends_on(v))
                    throw std::invalid_argument(
                        "parametrization may only use t1 and t2");
        MultiPoly g = gcd(components[i].num, components[i].den);
        num[i] = divide_exact(components[i].num, g);
        den[i] = divide_exact(components[i].den, g);
        if (den[i].leading_coefficient() < 0) {
            num[i] = -num[i];
            den[i] = -den[i];
        }
    }

    MultiPoly p0 = den[0];
    for (int i = 1; i < 3; ++i)
        p0 = divide_exact(p0 * den[i], gcd(p0, den[i]));
    p0 = normalize_sign(std::move(p0));

    std::array<MultiPoly, 3> p{MultiPoly(u), MultiPoly(u), MultiPoly(u)};
    for (int i = 0; i < 3; ++i) p[i] = num[i] * divide_exact(p0, den[i]);

    MultiPoly g = gcd({p0, p[0], p[1], p[2]});
    p0 = divide_exact(p0, g);
    for (MultiPoly& q : p) q = divide_exact(q, g);
    if (p0.leading_coefficient() < 0) {
        p0 = -p0;
        for (MultiPoly& q : p) q = -q;
    }

    bool all_constant = true;
    for (const MultiPoly& q : p) {
        if (q.is_zero()) continue;
        all_constant = all_constant &&
                       q * p0.leading_coefficient() == p0 * q.leading_coefficient();
    }
    if (all_constant)
        throw AssumptionError("every component is constant; the image is a point");

    return {std::move(p0), std::move(p[0]), std::move(p[1]), std::move(p[2])};
}

ProjectiveParametrization projectivize(const Parametrization& P) {
    unsigned d_P = 0;
    for (const MultiPoly* q : {&P.P0, &P.P1, &P.P2, &P.P3})
        if (!q->is_zero()) d_P = std::max(d_P, q->total_degree());

    MultiPoly X = P.P1.homogenize(vidx::t0, d_P);
    MultiPoly Y = P.P2.homogenize(vidx::t0, d_P);
    MultiPoly Z = P.P3.homogenize(vidx::t0, d_P);
    MultiPoly W = P.P0.homogenize(vidx::t0, d_P);

    unsigned shared_t0 = d_P;
    for (const MultiPoly* q : {&X, &Y, &Z, &W}) {
        if (q->is_zero()) continue;
        unsigned low = d_P;
        for (const auto& [mono, coeff] : q->terms()) {
            (void)coeff;
            low = std::min(low, mono.exp(vidx::t0));
        }
        shared_t0 = std::min(shared_t0, low);
    }
    if (shared_t0 > 0) {
        X = strip_t0_power(X, shared_t0);
        Y = strip_t0_power(Y, shared_t0);
        Z = strip_t0_power(Z, shared_t0);
        W = strip_t0_power(W, shared_t0);
        d_P -= shared_t0;
    }
    if (!is_one(gcd({X, Y, Z, W})))
        throw InternalError("projectivization left a common factor");
    return {std::move(X), std::move(Y), std::move(Z), std::move(W), d_P};
}

NormalData associated_normal(const Parametrization& P,
                             const ProjectiveParametrization& Ph) {
    std::array<MultiPoly, 3> u1 =
        tangent_numerators(P.P0, P.P1, P.P2, P.P3, vidx::t1);
    std::array<MultiPoly, 3> u2 =
        tangent_numerators(P.P0, P.P1, P.P2, P.P3, vidx::t2);
    std::array<MultiPoly, 3> n = reduce_vector(cross(u1, u2), "the cross product");

    std::array<MultiPoly, 3> v1 =
        tangent_numerators(Ph.W, Ph.X, Ph.Y, Ph.Z, vidx::t1);
    std::array<MultiPoly, 3> v2 =
        tangent_numerators(Ph.W, Ph.X, Ph.Y, Ph.Z, vidx::t2);
    std::array<MultiPoly, 3> N =
        reduce_vector(cross(v1, v2), "the homogeneous cross product");

    bool some_off_t0 = false;
    unsigned deg_N = 0;
    bool seen = false;
    for (const MultiPoly& comp : N) {
        if (comp.is_zero()) continue;
        some_off_t0 = some_off_t0 || !var_divides(vidx::t0, comp);
        if (!is_homogeneous(comp, t_homog()))
            throw InternalError("normal component is not homogeneous");
        unsigned deg = comp.degree(t_homog());
        if (seen && deg != deg_N)
            throw InternalError("normal components have unequal degrees");
        deg_N = deg;
        seen = true;
    }
    if (!some_off_t0)
        throw InternalError("every normal component is divisible by t0");

    MultiPoly h(P.P0.universe());
    MultiPoly H(P.P0.universe());
    for (int i = 0; i < 3; ++i) {
        h += n[i] * n[i];
        H += N[i] * N[i];
    }
    return {std::move(n), std::move(N), std::move(h), std::move(H)};
}

AffineSystem build_affine_auxiliary(const Parametrization& P,
                                    const NormalData& nd) {
    MultiPoly k1 = kvar(vidx::k1), k2 = kvar(vidx::k2), k3 = kvar(vidx::k3);
    MultiPoly d = kvar(vidx::d);
    std::array<MultiPoly, 3> M{k2 * P.P3 - k3 * P.P2, k3 * P.P1 - k1 * P.P3,
                               k1 * P.P2 - k2 * P.P1};
    std::array<MultiPoly, 3> G{k2 * nd.n[2] - k3 * nd.n[1],
                               k3 * nd.n[0] - k1 * nd.n[2],
                               k1 * nd.n[1] - k2 * nd.n[0]};
    MultiPoly dP0_sq = d * d * P.P0 * P.P0;
    std::array<MultiPoly, 3> s{MultiPoly(P.P0.universe()),
                               MultiPoly(P.P0.universe()),
                               MultiPoly(P.P0.universe())};
    for (int i = 0; i < 3; ++i) s[i] = nd.h * M[i] * M[i] - dP0_sq * G[i] * G[i];
    MultiPoly s0 = k1 * (P.P2 * nd.n[2] - P.P3 * nd.n[1]) -
                   k2 * (P.P1 * nd.n[2] - P.P3 * nd.n[0]) +
                   k3 * (P.P1 * nd.n[1] - P.P2 * nd.n[0]);
    return {std::move(s0), std::move(s), std::move(M), std::move(G)};
}

AuxiliarySystem build_projective_auxiliary(const ProjectiveParametrization& Ph,
                                           const NormalData& nd) {
    const UniversePtr& u = Ph.X.universe();
    MultiPoly k1 = kvar(vidx::k1), k2 = kvar(vidx::k2), k3 = kvar(vidx::k3);
    MultiPoly d = kvar(vidx::d);

    std::array<MultiPoly, 3> M_h{k2 * Ph.Z - k3 * Ph.Y, k3 * Ph.X - k1 * Ph.Z,
                                 k1 * Ph.Y - k2 * Ph.X};
    std::array<MultiPoly, 3> G_h{k2 * nd.N[2] - k3 * nd.N[1],
                                 k3 * nd.N[0] - k1 * nd.N[2],
                                 k1 * nd.N[1] - k2 * nd.N[0]};
    MultiPoly dW_sq = d * d * Ph.W * Ph.W;
    std::array<MultiPoly, 3> S{MultiPoly(u), MultiPoly(u), MultiPoly(u)};
    for (int i = 0; i < 3; ++i)
        S[i] = nd.H * M_h[i] * M_h[i] - dW_sq * G_h[i] * G_h[i];

    MultiPoly Q = gcd(nd.H, Ph.W * Ph.W);

    std::array<MultiPoly, 3> raw{Ph.Y * nd.N[2] - Ph.Z * nd.N[1],
                                 Ph.Z * nd.N[0] - Ph.X * nd.N[2],
                                 Ph.X * nd.N[1] - Ph.Y * nd.N[0]};
    if (raw[0].is_zero() && raw[1].is_zero() && raw[2].is_zero())
        throw InapplicableError(
            "the position vector is everywhere parallel to the normal");
    MultiPoly Q0 = gcd({raw[0], raw[1], raw[2]});
    std::array<MultiPoly, 3> U{divide_exact(raw[0], Q0), divide_exact(raw[1], Q0),
                               divide_exact(raw[2], Q0)};
    MultiPoly S0 = k1 * raw[0] + k2 * raw[1] + k3 * raw[2];
    MultiPoly T0 = k1 * U[0] + k2 * U[1] + k3 * U[2];

    std::array<MultiPoly, 3> T{divide_exact(S[0], Q), divide_exact(S[1], Q),
                               divide_exact(S[2], Q)};

    if (!(Ph.X * U[0] + Ph.Y * U[1] + Ph.Z * U[2]).is_zero())
        throw InternalError("syzygy X*U1+Y*U2+Z*U3 = 0 violated");
    if (!(nd.N[0] * U[0] + nd.N[1] * U[1] + nd.N[2] * U[2]).is_zero())
        throw InternalError("syzygy N1*U1+N2*U2+N3*U3 = 0 violated");
    if (!is_one(gcd({U[0], U[1], U[2]})))
        throw InternalError("U1, U2, U3 share a factor after Q0 removal");

    for (int i = 0; i < 3; ++i) {
        if (T[i].is_zero() || !T[i].depends_on(vidx::t0))
            throw InapplicableError(
                "formula inapplicable: T" + std::to_string(i + 1) +
                " has no positive degree in t0");
    }
    unsigned deg1 = T[0].degree(t_homog());
    for (int i = 1; i < 3; ++i)
        if (T[i].degree(t_homog()) != deg1)
            throw InapplicableError(
                "formula inapplicable: T1, T2, T3 have unequal total degrees "
                "in t0, t1, t2");
    if (!is_one(gcd({T[0], T[1], T[2]})))
        throw InapplicableError(
            "formula inapplicable: T1, T2, T3 share a common factor");
    bool witness = false;
    for (int i = 0; i < 3; ++i)
        witness = witness ||
                  (!var_divides(vidx::t0, U[i]) && !var_divides(vidx::t0, T[i]));
    if (!witness)
        throw InapplicableError(
            "formula inapplicable: no index i with t0 dividing neither Ui nor Ti");

    return {std::move(Q0), std::move(Q),   std::move(U),   std::move(T0),
            std::move(T),  std::move(M_h), std::move(G_h), std::move(S0),
            std::move(S)};
}

MultiPoly generalized_resultant(const AuxiliarySystem& sys) {
    MultiPoly T = kvar(vidx::c1) * sys.T[0] + kvar(vidx::c2) * sys.T[1] +
                  kvar(vidx::c3) * sys.T[2];
    unsigned deg_T = T.degree_in(vidx::t0);
    if (!sys.T0.depends_on(vidx::t0)) return poly_pow(sys.T0, deg_T);
    MultiPoly R = resultant(sys.T0, T, vidx::t0);
    if (R.is_zero())
        throw InapplicableError(
            "the generalized resultant vanishes identically: T0 shares a "
            "factor with the pencil of T1, T2, T3");
    return R;
}

DegreeReport extract_degree(const MultiPoly& R,
                            std::optional<unsigned> tracing_index) {
    require_standard(R, "resultant");
    if (R.is_zero()) throw std::invalid_argument("resultant is zero");
    if (!is_homogeneous(R, {vidx::t1, vidx::t2}))
        throw std::invalid_argument("resultant is not homogeneous in t1, t2");
    if (tracing_index && *tracing_index == 0)
        throw std::invalid_argument("tracing index must be positive");

    const std::vector<std::size_t> cbar{vidx::c1, vidx::c2, vidx::c3};
    const std::vector<std::size_t> dkbar{vidx::d, vidx::k1, vidx::k2, vidx::k3};

    MultiPoly con_c = content(R, cbar);
    MultiPoly M3 = divide_exact(R, con_c);
    MultiPoly M1 = content(con_c, dkbar);
    MultiPoly M2 = divide_exact(con_c, M1);
    if (!(M1 * M2 * M3 == R))
        throw InternalError("factorization R = M1*M2*M3 failed to recompose");

    for (std::size_t v : cbar)
        if (M1.depends_on(v) || M2.depends_on(v))
            throw InternalError("content extraction left c variables behind");
    for (std::size_t v : dkbar)
        if (M1.depends_on(v))
            throw InternalError("M1 depends on d or k after content extraction");
    for (const MultiPoly* part : {&M1, &M2, &M3})
        if (!is_homogeneous(*part, t_pair()))
            throw InternalError("factor is not homogeneous in t1, t2");

    unsigned deg_R = R.degree(t_pair());
    unsigned deg_M1 = M1.degree(t_pair());
    unsigned deg_M2 = M2.degree(t_pair());
    unsigned deg_M3 = M3.degree(t_pair());
    if (deg_R != deg_M1 + deg_M2 + deg_M3)
        throw InternalError("factor degrees do not sum to deg(R)");

    DegreeReport report{R,      M1,     M2,     M3,          deg_R,
                        deg_M1, deg_M2, deg_M3, deg_M2,      std::nullopt,
                        {}};
    if (tracing_index) {
        if (report.m_delta % *tracing_index == 0) {
            report.delta = report.m_delta / *tracing_index;
        } else {
            report.warnings.push_back(
                "tracing index " + std::to_string(*tracing_index) +
                " does not divide the computed degree " +
                std::to_string(report.m_delta) + "; no total degree reported");
        }
    }
    return report;
}

std::vector<CheckOutcome> check_assumptions(const Parametrization& P) {
    std::vector<CheckOutcome> out;

    MultiPoly sum_sq = P.P1 * P.P1 + P.P2 * P.P2 + P.P3 * P.P3;
    if (!sum_sq.is_zero()) {
        auto ratio = divide_if_exact(sum_sq, P.P0 * P.P0);
        if (ratio && ratio->is_constant())
            throw AssumptionError(
                "P1^2+P2^2+P3^2 is a constant multiple of P0^2: the surface "
                "is a sphere centered at the origin and the degree formula "
                "does not apply");
    }
    out.push_back({"sphere", CheckOutcome::Status::pass,
                   "surface is not a sphere centered at the origin"});

    std::array<MultiPoly, 3> u1 =
        tangent_numerators(P.P0, P.P1, P.P2, P.P3, vidx::t1);
    std::array<MultiPoly, 3> u2 =
        tangent_numerators(P.P0, P.P1, P.P2, P.P3, vidx::t2);
    std::array<MultiPoly, 3> raw = cross(u1, u2);
    if (raw[0].is_zero() && raw[1].is_zero() && raw[2].is_zero())
        throw AssumptionError(
            "the associated normal vanishes identically; the map does not "
            "parametrize a surface");
    out.push_back({"hodograph", CheckOutcome::Status::pass,
                   "associated normal is nonzero"});

    ProjectiveParametrization Ph = projectivize(P);
    int moving = int(Ph.X.depends_on(vidx::t0)) + int(Ph.Y.depends_on(vidx::t0)) +
                 int(Ph.Z.depends_on(vidx::t0));
    if (!Ph.W.depends_on(vidx::t0) && moving == 1) {
        out.push_back({"cylinder", CheckOutcome::Status::warning,
                       "W is free of t0 and exactly one coordinate moves with "
                       "t0; the surface looks like a cylinder and offset "
                       "components may degenerate"});
    } else {
        out.push_back({"cylinder", CheckOutcome::Status::pass,
                       "no cylinder shape detected"});
    }

    out.push_back({"origin", CheckOutcome::Status::note,
                   "the generic offset is assumed not to pass through the "
                   "origin; this is asserted, not verified"});
    return out;
}

}  // namespace offsetdeg
