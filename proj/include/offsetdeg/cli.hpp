#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "offsetdeg/mvpoly.hpp"
#include "offsetdeg/offset.hpp"

namespace offsetdeg {

// Strict surface-input grammar over t1, t2: integer and p/q rational
// literals, + - * / ^, unary minus, parentheses.  Exponents are nonnegative
// integer literals, division is only by a nonzero constant, implicit
// multiplication is a syntax error, and the engine variables t0, d, k1..k3,
// c1..c3 are reserved.  Returns a polynomial over the standard universe.
RationalPoly parse_expression(const std::string& text);

// Same grammar with every variable of the given universe admitted and
// integer coefficients required.  Used to load polynomial fixtures.
MultiPoly parse_polynomial(const std::string& text, const UniversePtr& universe);

struct SurfaceInput {
    std::string p1, p2, p3;            // numerator expressions
    std::optional<std::string> p0;     // common denominator, default 1
    std::optional<unsigned> tracing_index;
    std::string label;
};

// One surface per file, key=value lines (P1=, P2=, P3=, optional P0=, m=,
// label=), # comments.  Throws std::runtime_error with a line-numbered
// message on malformed files; expressions are parsed later, in run().
SurfaceInput read_surface_file(const std::string& path);

enum class ChecksLevel { none, fast, all };
enum class ReportFormat { text, json };

struct RunOptions {
    ChecksLevel checks = ChecksLevel::fast;
    std::uint64_t seed = 42;
    unsigned trials = 25;
    ReportFormat format = ReportFormat::text;
    bool timing = false;
};

// Exit codes: 0 success, 1 parse/usage, 2 assumption violation, 3 formula
// inapplicable, 4 internal-consistency failure.
struct RunOutcome {
    int exit_code = 0;
    std::string report;  // rendered per opts.format; diagnostic on failure
    std::optional<unsigned> m_delta;
    std::optional<unsigned> delta;
    std::vector<std::string> warnings;
};

// Full pipeline on one surface: parse and normalize the input, run the
// assumption checks, build the auxiliary systems, take the generalized
// resultant, extract the degree, then run the verify suites selected by
// opts.checks (fast = identities, all = identities + specialization +
// kernel oracle).  Never throws; failures are mapped to exit codes.
RunOutcome run(const SurfaceInput& input, const RunOptions& opts);

}  // namespace offsetdeg
