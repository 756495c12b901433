#include "offsetdeg/cli.hpp"

#include <json.hpp>

#include <cctype>
#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "offsetdeg/eliminate.hpp"
#include "offsetdeg/errors.hpp"
#include "offsetdeg/verify.hpp"

namespace offsetdeg {

namespace {

// ---------------------------------------------------------------------------
// Expression grammar
//
//   sum     := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)*
//   primary := number | variable | '(' sum ')'
//
// '/' only by a nonzero constant; exponents are nonnegative integer
// literals, optionally wrapped in parentheses and sign characters so that
// "t1^(-1)" reports a negative exponent rather than a syntax error.
// ---------------------------------------------------------------------------

struct Token {
    enum class Kind { number, ident, plus, minus, star, slash, caret,
                      lparen, rparen, end };
    Kind kind;
    std::string text;
    std::size_t pos;  // 1-based offset in the input
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const unsigned char ch = static_cast<unsigned char>(text[i]);
        const std::size_t pos = i + 1;
        if (std::isspace(ch)) {
            ++i;
            continue;
        }
        if (std::isdigit(ch)) {
            std::size_t j = i;
            while (j < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            out.push_back({Token::Kind::number, text.substr(i, j - i), pos});
            i = j;
            continue;
        }
        if (std::isalpha(ch) || ch == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) ||
                    text[j] == '_'))
                ++j;
            out.push_back({Token::Kind::ident, text.substr(i, j - i), pos});
            i = j;
            continue;
        }
        Token::Kind kind;
        switch (text[i]) {
            case '+': kind = Token::Kind::plus; break;
            case '-': kind = Token::Kind::minus; break;
            case '*': kind = Token::Kind::star; break;
            case '/': kind = Token::Kind::slash; break;
            case '^': kind = Token::Kind::caret; break;
            case '(': kind = Token::Kind::lparen; break;
            case ')': kind = Token::Kind::rparen; break;
            default:
                throw ParseError(
                    std::string("unexpected character '") + text[i] + "'", pos);
        }
        out.push_back({kind, std::string(1, text[i]), pos});
        ++i;
    }
    out.push_back({Token::Kind::end, "", text.size() + 1});
    return out;
}

RationalPoly rp_pow(const RationalPoly& a, unsigned e) {
    Int den;
    mpz_pow_ui(den.get_mpz_t(), a.den.get_mpz_t(), e);
    return make_rational_poly(poly_pow(a.num, e), den);
}

class ExprParser {
public:
    ExprParser(std::vector<Token> tokens, UniversePtr universe,
               bool surface_mode)
        : tokens_(std::move(tokens)),
          universe_(std::move(universe)),
          surface_mode_(surface_mode) {}

    RationalPoly parse() {
        if (peek().kind == Token::Kind::end)
            throw ParseError("empty expression", 1);
        RationalPoly value = parse_sum();
        if (peek().kind != Token::Kind::end)
            fail("unexpected token '" + peek().text + "'", peek().pos);
        return value;
    }

private:
    const Token& peek() const { return tokens_[next_]; }

    const Token& advance() { return tokens_[next_++]; }

    [[noreturn]] static void fail(const std::string& message,
                                  std::size_t pos) {
        throw ParseError(message, pos);
    }

    void expect(Token::Kind kind, const std::string& message) {
        if (peek().kind != kind) fail(message, peek().pos);
        advance();
    }

    RationalPoly parse_sum() {
        RationalPoly lhs = parse_term();
        while (peek().kind == Token::Kind::plus ||
               peek().kind == Token::Kind::minus) {
            const bool add = advance().kind == Token::Kind::plus;
            RationalPoly rhs = parse_term();
            MultiPoly num = add ? lhs.num * rhs.den + rhs.num * lhs.den
                                : lhs.num * rhs.den - rhs.num * lhs.den;
            lhs = make_rational_poly(std::move(num), lhs.den * rhs.den);
        }
        return lhs;
    }

    RationalPoly parse_term() {
        RationalPoly lhs = parse_unary();
        while (peek().kind == Token::Kind::star ||
               peek().kind == Token::Kind::slash) {
            const Token op = advance();
            RationalPoly rhs = parse_unary();
            if (op.kind == Token::Kind::star) {
                lhs = make_rational_poly(lhs.num * rhs.num, lhs.den * rhs.den);
            } else {
                if (rhs.num.is_zero()) fail("division by zero", op.pos);
                if (!rhs.num.is_constant())
                    fail("division by a non-constant expression", op.pos);
                lhs = make_rational_poly(lhs.num * rhs.den,
                                         lhs.den * rhs.num.constant_value());
            }
        }
        return lhs;
    }

    RationalPoly parse_unary() {
        if (peek().kind == Token::Kind::minus) {
            advance();
            RationalPoly value = parse_unary();
            return make_rational_poly(-value.num, value.den);
        }
        return parse_power();
    }

    RationalPoly parse_power() {
        RationalPoly base = parse_primary();
        while (peek().kind == Token::Kind::caret) {
            advance();
            base = rp_pow(base, parse_exponent());
        }
        return base;
    }

    unsigned parse_exponent() {
        const std::size_t start = peek().pos;
        std::size_t open = 0;
        bool negative = false;
        while (true) {
            if (peek().kind == Token::Kind::lparen) {
                advance();
                ++open;
            } else if (peek().kind == Token::Kind::minus) {
                advance();
                negative = !negative;
            } else {
                break;
            }
        }
        if (peek().kind != Token::Kind::number)
            fail("exponent must be an integer literal", peek().pos);
        const Token literal = advance();
        for (; open > 0; --open) expect(Token::Kind::rparen, "expected ')'");
        const Int value(literal.text);
        if (negative && value != 0) fail("negative exponent", start);
        if (value > max_exponent)
            fail("exponent exceeds the supported limit of " +
                     std::to_string(max_exponent),
                 literal.pos);
        return static_cast<unsigned>(value.get_ui());
    }

    RationalPoly parse_primary() {
        const Token& tok = peek();
        switch (tok.kind) {
            case Token::Kind::number: {
                advance();
                return RationalPoly{MultiPoly(universe_, Int(tok.text)),
                                    Int(1)};
            }
            case Token::Kind::ident: {
                advance();
                return RationalPoly{
                    MultiPoly::variable(universe_, lookup(tok)), Int(1)};
            }
            case Token::Kind::lparen: {
                advance();
                RationalPoly value = parse_sum();
                expect(Token::Kind::rparen, "expected ')'");
                return value;
            }
            default:
                fail("expected a number, a variable, or '('", tok.pos);
        }
    }

    std::size_t lookup(const Token& tok) const {
        if (surface_mode_) {
            if (tok.text == "t1") return 1;
            if (tok.text == "t2") return 2;
            static const std::set<std::string> reserved{
                "t0", "d", "k1", "k2", "k3", "c1", "c2", "c3"};
            if (reserved.count(tok.text))
                fail("variable '" + tok.text +
                         "' is reserved for internal use; surfaces are "
                         "functions of t1, t2",
                     tok.pos);
            fail("unknown variable '" + tok.text + "'", tok.pos);
        }
        if (auto idx = universe_->index_of(tok.text)) return *idx;
        fail("unknown variable '" + tok.text + "'", tok.pos);
    }

    static constexpr long max_exponent = 1024;

    std::vector<Token> tokens_;
    std::size_t next_ = 0;
    UniversePtr universe_;
    bool surface_mode_;
};

std::string trim(const std::string& text) {
    std::size_t begin = 0, end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin])))
        ++begin;
    while (end > begin &&
           std::isspace(static_cast<unsigned char>(text[end - 1])))
        --end;
    return text.substr(begin, end - begin);
}

const char* status_name(CheckOutcome::Status status) {
    switch (status) {
        case CheckOutcome::Status::pass: return "pass";
        case CheckOutcome::Status::note: return "note";
        case CheckOutcome::Status::warning: return "warning";
    }
    return "unknown";
}

using StageTimings = std::vector<std::pair<std::string, long long>>;

struct PipelineResult {
    Parametrization P;
    ProjectiveParametrization Ph;
    NormalData nd;
    AuxiliarySystem sys;
    DegreeReport deg;
    std::vector<CheckOutcome> checks;
    std::vector<std::string> warnings;
};

std::string render_text(const SurfaceInput& input, const PipelineResult& r,
                        const RunOptions& opts, const StageTimings& timings) {
    std::ostringstream os;
    if (!input.label.empty()) os << "label: " << input.label << "\n";
    os << "P0 = " << r.P.P0.str() << "\n";
    os << "P1 = " << r.P.P1.str() << "\n";
    os << "P2 = " << r.P.P2.str() << "\n";
    os << "P3 = " << r.P.P3.str() << "\n";
    os << "d_P = " << r.Ph.d_P << "\n";
    for (int i = 0; i < 3; ++i)
        os << "N" << (i + 1) << " = " << r.nd.N[i].str() << "\n";
    os << "H = " << r.nd.H.str() << "\n";
    os << "Q = " << r.sys.Q.str() << "\n";
    os << "Q0 = " << r.sys.Q0.str() << "\n";
    const MultiPoly* ts[4] = {&r.sys.T0, &r.sys.T[0], &r.sys.T[1],
                              &r.sys.T[2]};
    for (int i = 0; i < 4; ++i)
        os << "T" << i << ": deg_t0 = " << ts[i]->degree_in(0)
           << ", deg_total = " << ts[i]->total_degree() << "\n";
    os << "deg(R) = " << r.deg.deg_R << " (M1 " << r.deg.deg_M1 << ", M2 "
       << r.deg.deg_M2 << ", M3 " << r.deg.deg_M3 << ")\n";
    os << "m_delta = " << r.deg.m_delta << "\n";
    if (r.deg.delta)
        os << "delta = " << *r.deg.delta << " (tracing index "
           << *input.tracing_index << ")\n";
    else if (input.tracing_index)
        os << "delta = undetermined\n";
    else
        os << "delta = undetermined (no tracing index supplied)\n";
    for (const CheckOutcome& c : r.checks) {
        os << "check " << c.name << ": " << status_name(c.status);
        if (!c.detail.empty()) os << " (" << c.detail << ")";
        os << "\n";
    }
    for (const std::string& w : r.warnings) os << "warning: " << w << "\n";
    if (opts.timing)
        for (const auto& [stage, ms] : timings)
            os << "timing " << stage << " = " << ms << " ms\n";
    return os.str();
}

std::string render_json(const SurfaceInput& input, const PipelineResult& r,
                        const RunOptions& opts, const StageTimings& timings) {
    nlohmann::ordered_json j;
    j["label"] = input.label;
    auto& par = j["parametrization"];
    par["P0"] = r.P.P0.str();
    par["P1"] = r.P.P1.str();
    par["P2"] = r.P.P2.str();
    par["P3"] = r.P.P3.str();
    j["d_P"] = r.Ph.d_P;
    j["N"] = {r.nd.N[0].str(), r.nd.N[1].str(), r.nd.N[2].str()};
    j["H"] = r.nd.H.str();
    j["Q"] = r.sys.Q.str();
    j["Q0"] = r.sys.Q0.str();
    auto& t = j["T"];
    const MultiPoly* ts[4] = {&r.sys.T0, &r.sys.T[0], &r.sys.T[1],
                              &r.sys.T[2]};
    for (int i = 0; i < 4; ++i) {
        auto& entry = t["T" + std::to_string(i)];
        entry["deg_t0"] = ts[i]->degree_in(0);
        entry["deg_total"] = ts[i]->total_degree();
    }
    auto& degrees = j["degrees"];
    degrees["R"] = r.deg.deg_R;
    degrees["M1"] = r.deg.deg_M1;
    degrees["M2"] = r.deg.deg_M2;
    degrees["M3"] = r.deg.deg_M3;
    j["m_delta"] = r.deg.m_delta;
    if (r.deg.delta)
        j["delta"] = *r.deg.delta;
    else
        j["delta"] = nullptr;
    j["checks"] = nlohmann::ordered_json::array();
    for (const CheckOutcome& c : r.checks) {
        nlohmann::ordered_json entry;
        entry["name"] = c.name;
        entry["status"] = status_name(c.status);
        entry["detail"] = c.detail;
        j["checks"].push_back(entry);
    }
    j["warnings"] = r.warnings;
    j["timings_ms"] = nlohmann::ordered_json::object();
    if (opts.timing)
        for (const auto& [stage, ms] : timings) j["timings_ms"][stage] = ms;
    return j.dump(2) + "\n";
}

// T_i(t0=1)*Q(t0=1) = s_i and T0(t0=1)*Q0(t0=1) = ±s0: the projective
// system must restrict to the affine one on the chart t0 = 1.
void check_chart_coherence(const AffineSystem& aff, const AuxiliarySystem& sys) {
    const std::map<std::size_t, Int> chart{{0, Int(1)}};
    const MultiPoly q = sys.Q.substitute(chart);
    for (int i = 0; i < 3; ++i)
        if (!(sys.T[i].substitute(chart) * q == aff.s[i]))
            throw InternalError(
                "projective auxiliary curve T" + std::to_string(i + 1) +
                " does not restrict to the affine curve at t0 = 1");
    const MultiPoly t0q0 = sys.T0.substitute(chart) * sys.Q0.substitute(chart);
    if (!(t0q0 == aff.s0 || t0q0 == -aff.s0))
        throw InternalError(
            "projective normal-incidence curve T0 does not restrict to the "
            "affine curve at t0 = 1");
}

void append_documented_typo_warning(const Parametrization& P,
                                    PipelineResult& r) {
    const UniversePtr& u = P.P0.universe();
    const MultiPoly one(u, 1);
    const MultiPoly t1 = MultiPoly::variable(u, 1);
    const MultiPoly t2 = MultiPoly::variable(u, 2);
    if (P.P0 == one && P.P1 == t1 * t2 && P.P2 == t2 &&
        P.P3 == MultiPoly::variable(u, 1, 2)) {
        r.checks.push_back(
            {"documented_typo", CheckOutcome::Status::warning,
             "surface is the corrected Whitney umbrella (t1*t2, t2, t1^2); "
             "the commonly documented (t1*t2, t2, t1) does not satisfy the "
             "implicit equation y1^2 - y2^2*y3 = 0 and its printed normal "
             "is inconsistent with every candidate parametrization"});
    }
}

}  // namespace

RationalPoly parse_expression(const std::string& text) {
    ExprParser parser(lex(text), VariableUniverse::standard(), true);
    return parser.parse();
}

MultiPoly parse_polynomial(const std::string& text,
                           const UniversePtr& universe) {
    ExprParser parser(lex(text), universe, false);
    RationalPoly value = parser.parse();
    if (value.den != 1)
        throw ParseError("expression has non-integer coefficients", 1);
    return value.num;
}

SurfaceInput read_surface_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open surface file: " + path);

    SurfaceInput out;
    std::set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    auto at = [&](const std::string& message) {
        return std::runtime_error(path + ":" + std::to_string(lineno) + ": " +
                                  message);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw at("expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) throw at("duplicate key '" + key + "'");
        if (value.empty()) throw at("empty value for key '" + key + "'");
        if (key == "P0") {
            out.p0 = value;
        } else if (key == "P1") {
            out.p1 = value;
        } else if (key == "P2") {
            out.p2 = value;
        } else if (key == "P3") {
            out.p3 = value;
        } else if (key == "m") {
            std::size_t used = 0;
            unsigned long m = 0;
            try {
                m = std::stoul(value, &used);
            } catch (const std::exception&) {
                throw at("tracing index m must be a positive integer");
            }
            if (used != value.size() || m == 0 || m > 1000000)
                throw at("tracing index m must be a positive integer");
            out.tracing_index = static_cast<unsigned>(m);
        } else if (key == "label") {
            out.label = value;
        } else {
            throw at("unknown key '" + key + "'");
        }
    }
    const std::array<std::pair<const char*, const std::string*>, 3> required{
        {{"P1", &out.p1}, {"P2", &out.p2}, {"P3", &out.p3}}};
    for (const auto& [key, text] : required)
        if (text->empty())
            throw std::runtime_error(path + ": missing required key '" +
                                     std::string(key) + "'");
    return out;
}

RunOutcome run(const SurfaceInput& input, const RunOptions& opts) {
    RunOutcome out;
    StageTimings timings;
    using Clock = std::chrono::steady_clock;
    Clock::time_point last = Clock::now();
    auto mark = [&](const char* stage) {
        const Clock::time_point now = Clock::now();
        timings.emplace_back(
            stage, std::chrono::duration_cast<std::chrono::milliseconds>(
                       now - last)
                       .count());
        last = now;
    };

    try {
        auto component = [](const char* key, const std::string& text) {
            try {
                return parse_expression(text);
            } catch (const ParseError& e) {
                throw ParseError(std::string(key) + ": " + e.what(),
                                 e.position());
            }
        };
        const RationalPoly p1 = component("P1", input.p1);
        const RationalPoly p2 = component("P2", input.p2);
        const RationalPoly p3 = component("P3", input.p3);
        const RationalPoly p0 =
            input.p0 ? component("P0", *input.p0)
                     : RationalPoly{
                           MultiPoly(VariableUniverse::standard(), Int(1)),
                           Int(1)};
        if (p0.num.is_zero())
            throw ParseError("P0: denominator is identically zero", 1);
        const std::array<RationalFn, 3> components{
            RationalFn{p1.num * p0.den, p0.num * p1.den},
            RationalFn{p2.num * p0.den, p0.num * p2.den},
            RationalFn{p3.num * p0.den, p0.num * p3.den}};
        mark("parse");

        Parametrization P = normalize(components);
        mark("normalize");
        std::vector<CheckOutcome> checks = check_assumptions(P);
        mark("check_assumptions");
        ProjectiveParametrization Ph = projectivize(P);
        mark("projectivize");
        NormalData nd = associated_normal(P, Ph);
        mark("associated_normal");
        const AffineSystem aff = build_affine_auxiliary(P, nd);
        mark("build_affine_auxiliary");
        AuxiliarySystem sys = build_projective_auxiliary(Ph, nd);
        mark("build_projective_auxiliary");
        const MultiPoly R = generalized_resultant(sys);
        mark("generalized_resultant");
        DegreeReport deg = extract_degree(R, input.tracing_index);
        mark("extract_degree");

        PipelineResult r{std::move(P),   std::move(Ph),     std::move(nd),
                         std::move(sys), std::move(deg),    std::move(checks),
                         {}};

        append_documented_typo_warning(r.P, r);
        check_chart_coherence(aff, r.sys);
        r.checks.push_back({"chart_coherence", CheckOutcome::Status::pass,
                            "projective system restricts to the affine "
                            "system at t0 = 1"});
        r.checks.push_back({"factorization", CheckOutcome::Status::pass,
                            "R = M1*M2*M3 verified by exact division"});

        if (opts.checks != ChecksLevel::none) {
            std::vector<SuiteReport> suites;
            suites.push_back(identity_suite(r.P, r.Ph, r.nd, r.sys));
            if (opts.checks == ChecksLevel::all) {
                SampleConfig cfg;
                cfg.seed = opts.seed;
                cfg.trials = opts.trials;
                suites.push_back(specialization_suite(r.sys, R, cfg));
                suites.push_back(oracle_suite(cfg));
            }
            for (const SuiteReport& suite : suites) {
                if (suite.failures > 0) {
                    std::string witness;
                    for (const SuiteCheck& c : suite.checks)
                        if (!c.passed) {
                            witness = c.name + ": " + c.witness;
                            break;
                        }
                    throw InternalError(suite.suite + " suite failed, " +
                                        witness);
                }
                r.checks.push_back(
                    {suite.suite + "_suite",
                     suite.inconclusive ? CheckOutcome::Status::warning
                                        : CheckOutcome::Status::pass,
                     suite.summary()});
            }
        }
        mark("verify");

        for (const CheckOutcome& c : r.checks)
            if (c.status == CheckOutcome::Status::warning)
                r.warnings.push_back(c.detail);
        for (const std::string& w : r.deg.warnings) r.warnings.push_back(w);

        out.exit_code = 0;
        out.m_delta = r.deg.m_delta;
        out.delta = r.deg.delta;
        out.warnings = r.warnings;
        out.report = opts.format == ReportFormat::json
                         ? render_json(input, r, opts, timings)
                         : render_text(input, r, opts, timings);
    } catch (const ParseError& e) {
        out.exit_code = 1;
        out.report = "parse error at position " +
                     std::to_string(e.position()) + ": " + e.what();
    } catch (const AssumptionError& e) {
        out.exit_code = 2;
        out.report = std::string("assumption violated: ") + e.what();
    } catch (const InapplicableError& e) {
        out.exit_code = 3;
        out.report = std::string("degree formula inapplicable: ") + e.what();
    } catch (const InternalError& e) {
        out.exit_code = 4;
        out.report = std::string("internal consistency failure: ") + e.what();
    } catch (const std::exception& e) {
        out.exit_code = 4;
        out.report = std::string("internal error: ") + e.what();
    }
    return out;
}

}  // namespace offsetdeg
