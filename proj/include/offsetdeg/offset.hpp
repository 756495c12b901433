#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "offsetdeg/mvpoly.hpp"

namespace offsetdeg {

// One surface component as a ratio of polynomials in t1, t2.
struct RationalFn {
    MultiPoly num, den;
};

// x(t1,t2) = (P1/P0, P2/P0, P3/P0) over the standard universe, with
// gcd(P0,...,P3) = 1 and P0 of positive leading coefficient.
struct Parametrization {
    MultiPoly P0, P1, P2, P3;
};

// Common-degree homogenization (X:Y:Z:W) of the parametrization with t0.
struct ProjectiveParametrization {
    MultiPoly X, Y, Z, W;
    unsigned d_P;
};

// Affine and projective associated normal vectors with their squared norms.
// Both vectors are gcd-reduced and sign-normalized on the first nonzero
// component; orthogonality against the tangent numerators is an invariant.
struct NormalData {
    std::array<MultiPoly, 3> n;
    std::array<MultiPoly, 3> N;
    MultiPoly h, H;
};

// Affine incidence system: s0 = det(k; P; n), si = h*Mi^2 - d^2*P0^2*Gi^2.
struct AffineSystem {
    MultiPoly s0;
    std::array<MultiPoly, 3> s;
    std::array<MultiPoly, 3> M, G;
};

// Projective auxiliary system.  Ti*Q = Si and T0*Q0 = S0 hold exactly;
// X*U1+Y*U2+Z*U3 = 0 and N1*U1+N2*U2+N3*U3 = 0 are enforced syzygies.
struct AuxiliarySystem {
    MultiPoly Q0, Q;
    std::array<MultiPoly, 3> U;
    MultiPoly T0;
    std::array<MultiPoly, 3> T;
    std::array<MultiPoly, 3> M_h, G_h;
    MultiPoly S0;
    std::array<MultiPoly, 3> S;
};

struct CheckOutcome {
    enum class Status { pass, note, warning };
    std::string name;
    Status status;
    std::string detail;
};

struct DegreeReport {
    MultiPoly R, M1, M2, M3;
    unsigned deg_R, deg_M1, deg_M2, deg_M3;  // degrees in (t1, t2)
    unsigned m_delta;
    std::optional<unsigned> delta;           // set when the tracing index divides
    std::vector<std::string> warnings;
};

// Common denominator, shared gcd removed, sign fixed by P0.
// Throws AssumptionError when every component is constant.
Parametrization normalize(const std::array<RationalFn, 3>& components);

// Sphere and degenerate-normal rejection (AssumptionError), cylinder
// warning, and the unverified origin assumption as a note.
std::vector<CheckOutcome> check_assumptions(const Parametrization& P);

ProjectiveParametrization projectivize(const Parametrization& P);

NormalData associated_normal(const Parametrization& P,
                             const ProjectiveParametrization& Ph);

AffineSystem build_affine_auxiliary(const Parametrization& P,
                                    const NormalData& nd);

// Throws InapplicableError when the degree-formula hypotheses fail:
// some Ti free of t0, unequal total degrees, gcd(T1,T2,T3) != 1, or no
// index i with t0 dividing neither Ui nor Ti.
AuxiliarySystem build_projective_auxiliary(const ProjectiveParametrization& Ph,
                                           const NormalData& nd);

// Res_t0(T0, c1*T1+c2*T2+c3*T3); T0 free of t0 degenerates to a power of T0.
MultiPoly generalized_resultant(const AuxiliarySystem& sys);

// Split R into M1 (content in d,k of the content in c), M2 (its primitive
// part), M3 (primitive part in c), check R = M1*M2*M3, and read off
// m_delta = deg_{t1,t2}(M2).
DegreeReport extract_degree(const MultiPoly& R,
                            std::optional<unsigned> tracing_index);

}  // namespace offsetdeg
