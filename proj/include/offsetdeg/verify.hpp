#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "offsetdeg/mvpoly.hpp"
#include "offsetdeg/offset.hpp"

namespace offsetdeg {

// Deterministic 64-bit stream (splitmix64); the suites derive every draw
// from it so a (seed, trials, bound) triple fixes the whole run.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

struct SampleConfig {
    std::uint64_t seed = 42;
    unsigned trials = 25;
    // Rational numerators/denominators are drawn from [-bound, bound] \ {0}.
    unsigned bound = 5;
};

struct SuiteCheck {
    std::string name;
    bool passed;
    std::string witness;  // empty when passed
};

struct SuiteReport {
    std::string suite;
    unsigned trials = 0;
    unsigned passes = 0;
    unsigned failures = 0;
    unsigned degenerate_redraws = 0;
    bool inconclusive = false;  // redraw budget exhausted
    std::vector<SuiteCheck> checks;

    bool ok() const { return failures == 0 && !inconclusive; }
    std::string summary() const;
};

// Substitutes random rational (d, k, c) points into T0, T = c1*T1+c2*T2+c3*T3
// and R, and checks that specialization commutes with the resultant.  Draws
// that kill a leading t0-coefficient are redrawn, at most 10x trials.
SuiteReport specialization_suite(const AuxiliarySystem& sys, const MultiPoly& R,
                                 const SampleConfig& cfg);

// Exact polynomial identities behind the degree computation: both U-syzygies,
// orthogonality of n against the tangent numerators, h = sum n_i^2,
// Ti*Q = H*M_h,i^2 - d^2*W^2*G_h,i^2, and T0*Q0 = S0.
SuiteReport identity_suite(const Parametrization& P,
                           const ProjectiveParametrization& Ph,
                           const NormalData& nd, const AuxiliarySystem& sys);

// Randomized cross-checks of the elimination kernel: resultant against the
// cofactor-expansion determinant, gcd and content/primitive-part
// reconstruction, and a shared-factor resultant that must vanish.
SuiteReport oracle_suite(const SampleConfig& cfg);

}  // namespace offsetdeg
