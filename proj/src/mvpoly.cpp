#include "offsetdeg/mvpoly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>
#include <utility>

namespace offsetdeg {

namespace {

bool valid_identifier(const std::string& name) {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_')
        return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

Int int_pow(const Int& base, unsigned exp) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

Rational rational_pow(const Rational& base, unsigned exp) {
    Rational out(int_pow(base.get_num(), exp), int_pow(base.get_den(), exp));
    out.canonicalize();
    return out;
}

}  // namespace

VariableUniverse::VariableUniverse(std::vector<std::string> names)
    : names_(std::move(names)) {
    if (names_.empty() || names_.size() > max_vars)
        throw std::invalid_argument("universe must hold between 1 and 16 variables");
    for (const auto& name : names_) {
        if (!valid_identifier(name))
            throw std::invalid_argument("invalid variable name: " + name);
    }
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw std::invalid_argument("duplicate variable name: " + names_[i]);
}

std::optional<std::size_t> VariableUniverse::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

const UniversePtr& VariableUniverse::standard() {
    static const UniversePtr u = make_universe(
        {"t0", "t1", "t2", "d", "k1", "k2", "k3", "c1", "c2", "c3"});
    return u;
}

UniversePtr make_universe(std::vector<std::string> names) {
    return std::make_shared<const VariableUniverse>(std::move(names));
}

void Monomial::set_exp(std::size_t var, unsigned value) {
    if (var >= exps_.size())
        throw std::invalid_argument("variable index out of range");
    if (value > std::numeric_limits<std::uint16_t>::max())
        throw std::overflow_error("monomial exponent overflow");
    tdeg_ = tdeg_ - exps_[var] + value;
    exps_[var] = static_cast<std::uint16_t>(value);
}

Monomial Monomial::times(const Monomial& other) const {
    Monomial out;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        unsigned sum = unsigned(exps_[i]) + unsigned(other.exps_[i]);
        if (sum > std::numeric_limits<std::uint16_t>::max())
            throw std::overflow_error("monomial exponent overflow");
        out.exps_[i] = static_cast<std::uint16_t>(sum);
    }
    out.tdeg_ = tdeg_ + other.tdeg_;
    return out;
}

bool Monomial::divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

Monomial Monomial::divide(const Monomial& other) const {
    if (!other.divides(*this))
        throw std::invalid_argument("monomial division is not exact");
    Monomial out;
    for (std::size_t i = 0; i < exps_.size(); ++i)
        out.exps_[i] = static_cast<std::uint16_t>(exps_[i] - other.exps_[i]);
    out.tdeg_ = tdeg_ - other.tdeg_;
    return out;
}

int Monomial::cmp(const Monomial& a, const Monomial& b) {
    if (a.tdeg_ != b.tdeg_) return a.tdeg_ < b.tdeg_ ? -1 : 1;
    for (std::size_t i = 0; i < a.exps_.size(); ++i)
        if (a.exps_[i] != b.exps_[i]) return a.exps_[i] < b.exps_[i] ? -1 : 1;
    return 0;
}

MultiPoly::MultiPoly(UniversePtr universe) : universe_(std::move(universe)) {
    if (!universe_) throw std::invalid_argument("null universe");
}

MultiPoly::MultiPoly(UniversePtr universe, Int constant)
    : universe_(std::move(universe)) {
    if (!universe_) throw std::invalid_argument("null universe");
    if (constant != 0) terms_.emplace(Monomial{}, std::move(constant));
}

MultiPoly MultiPoly::variable(const UniversePtr& universe, std::size_t var,
                              unsigned exp) {
    if (!universe) throw std::invalid_argument("null universe");
    if (var >= universe->size())
        throw std::invalid_argument("variable index out of range");
    MultiPoly out(universe);
    Monomial mono;
    mono.set_exp(var, exp);
    out.terms_.emplace(mono, Int(1));
    return out;
}

MultiPoly MultiPoly::from_terms(UniversePtr universe, Terms terms) {
    if (!universe) throw std::invalid_argument("null universe");
    for (auto it = terms.begin(); it != terms.end();) {
        for (std::size_t v = universe->size(); v < VariableUniverse::max_vars; ++v)
            if (it->first.exp(v) != 0)
                throw std::invalid_argument("monomial uses variable outside universe");
        it = it->second == 0 ? terms.erase(it) : std::next(it);
    }
    MultiPoly out(std::move(universe));
    out.terms_ = std::move(terms);
    return out;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first.total_degree() == 0);
}

Int MultiPoly::constant_value() const {
    if (!is_constant())
        throw std::invalid_argument("polynomial is not constant");
    return terms_.empty() ? Int(0) : terms_.begin()->second;
}

const Monomial& MultiPoly::leading_monomial() const {
    if (terms_.empty())
        throw std::invalid_argument("zero polynomial has no leading term");
    return terms_.begin()->first;
}

const Int& MultiPoly::leading_coefficient() const {
    if (terms_.empty())
        throw std::invalid_argument("zero polynomial has no leading term");
    return terms_.begin()->second;
}

void MultiPoly::add_term(const Monomial& mono, const Int& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(mono, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

void MultiPoly::check_same_universe(const MultiPoly& other) const {
    if (universe_ == other.universe_) return;
    if (!(*universe_ == *other.universe_))
        throw std::invalid_argument("variable universe mismatch");
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly out(universe_);
    for (const auto& [mono, coeff] : terms_) out.terms_.emplace(mono, -coeff);
    return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
    check_same_universe(other);
    for (const auto& [mono, coeff] : other.terms_) add_term(mono, coeff);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
    check_same_universe(other);
    for (const auto& [mono, coeff] : other.terms_) add_term(mono, -coeff);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Int& scalar) {
    if (scalar == 0) {
        terms_.clear();
    } else {
        for (auto& [mono, coeff] : terms_) coeff *= scalar;
    }
    return *this;
}

MultiPoly MultiPoly::operator*(const MultiPoly& other) const {
    check_same_universe(other);
    MultiPoly out(universe_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : other.terms_)
            out.add_term(ma.times(mb), ca * cb);
    return out;
}

bool MultiPoly::operator==(const MultiPoly& other) const {
    check_same_universe(other);
    return terms_ == other.terms_;
}

MultiPoly MultiPoly::partial_derivative(std::size_t var) const {
    if (var >= universe_->size())
        throw std::invalid_argument("variable index out of range");
    MultiPoly out(universe_);
    for (const auto& [mono, coeff] : terms_) {
        unsigned e = mono.exp(var);
        if (e == 0) continue;
        Monomial m = mono;
        m.set_exp(var, e - 1);
        out.add_term(m, coeff * e);
    }
    return out;
}

MultiPoly MultiPoly::homogenize(std::size_t var, unsigned target_degree) const {
    if (var >= universe_->size())
        throw std::invalid_argument("variable index out of range");
    MultiPoly out(universe_);
    for (const auto& [mono, coeff] : terms_) {
        if (mono.exp(var) != 0)
            throw std::invalid_argument(
                "homogenization variable already occurs: " + universe_->name(var));
        if (mono.total_degree() > target_degree)
            throw std::invalid_argument("target_degree below total degree");
        Monomial m = mono;
        m.set_exp(var, target_degree - mono.total_degree());
        out.terms_.emplace(m, coeff);
    }
    return out;
}

unsigned MultiPoly::total_degree() const {
    if (terms_.empty())
        throw std::invalid_argument("degree of zero polynomial");
    return terms_.begin()->first.total_degree();
}

unsigned MultiPoly::degree_in(std::size_t var) const {
    return degree({var});
}

unsigned MultiPoly::degree(const std::vector<std::size_t>& vars) const {
    if (terms_.empty())
        throw std::invalid_argument("degree of zero polynomial");
    for (std::size_t v : vars)
        if (v >= universe_->size())
            throw std::invalid_argument("variable index out of range");
    unsigned best = 0;
    for (const auto& [mono, coeff] : terms_) {
        (void)coeff;
        unsigned sum = 0;
        for (std::size_t v : vars) sum += mono.exp(v);
        best = std::max(best, sum);
    }
    return best;
}

MultiPoly MultiPoly::coeff_of(std::size_t var, unsigned power) const {
    if (var >= universe_->size())
        throw std::invalid_argument("variable index out of range");
    MultiPoly out(universe_);
    for (const auto& [mono, coeff] : terms_) {
        if (mono.exp(var) != power) continue;
        Monomial m = mono;
        m.set_exp(var, 0);
        out.terms_.emplace(m, coeff);
    }
    return out;
}

std::map<Monomial, MultiPoly, GrlexGreater>
MultiPoly::split(const std::vector<std::size_t>& vars) const {
    for (std::size_t v : vars)
        if (v >= universe_->size())
            throw std::invalid_argument("variable index out of range");
    std::map<Monomial, MultiPoly, GrlexGreater> out;
    for (const auto& [mono, coeff] : terms_) {
        Monomial key;
        Monomial rest = mono;
        for (std::size_t v : vars) {
            key.set_exp(v, mono.exp(v));
            rest.set_exp(v, 0);
        }
        auto it = out.find(key);
        if (it == out.end())
            it = out.emplace(key, MultiPoly(universe_)).first;
        it->second.add_term(rest, coeff);
    }
    return out;
}

MultiPoly MultiPoly::substitute(const std::map<std::size_t, Int>& bindings) const {
    for (const auto& [v, value] : bindings) {
        (void)value;
        if (v >= universe_->size())
            throw std::invalid_argument("variable index out of range");
    }
    MultiPoly out(universe_);
    for (const auto& [mono, coeff] : terms_) {
        Int c = coeff;
        Monomial m = mono;
        for (const auto& [v, value] : bindings) {
            unsigned e = mono.exp(v);
            if (e == 0) continue;
            c *= int_pow(value, e);
            m.set_exp(v, 0);
        }
        out.add_term(m, c);
    }
    return out;
}

RationalPoly
MultiPoly::substitute(const std::map<std::size_t, Rational>& bindings) const {
    for (const auto& [v, value] : bindings) {
        (void)value;
        if (v >= universe_->size())
            throw std::invalid_argument("variable index out of range");
    }
    std::map<Monomial, Rational, GrlexGreater> sums;
    for (const auto& [mono, coeff] : terms_) {
        Rational c(coeff);
        Monomial m = mono;
        for (const auto& [v, value] : bindings) {
            unsigned e = mono.exp(v);
            if (e == 0) continue;
            c *= rational_pow(value, e);
            m.set_exp(v, 0);
        }
        sums[m] += c;
    }
    Int den(1);
    for (const auto& [mono, value] : sums) {
        (void)mono;
        if (value != 0) den = lcm(den, Int(value.get_den()));
    }
    MultiPoly num(universe_);
    for (const auto& [mono, value] : sums) {
        if (value == 0) continue;
        num.terms_.emplace(mono, Int(value.get_num()) * (den / Int(value.get_den())));
    }
    return make_rational_poly(std::move(num), std::move(den));
}

bool MultiPoly::depends_on(std::size_t var) const {
    if (var >= universe_->size())
        throw std::invalid_argument("variable index out of range");
    for (const auto& [mono, coeff] : terms_) {
        (void)coeff;
        if (mono.exp(var) != 0) return true;
    }
    return false;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [mono, coeff] : terms_) {
        bool negative = coeff < 0;
        if (first) {
            if (negative) out << "-";
            first = false;
        } else {
            out << (negative ? " - " : " + ");
        }
        Int mag = abs(coeff);
        bool need_coeff = mag != 1 || mono.total_degree() == 0;
        if (need_coeff) out << mag.get_str();
        bool need_star = need_coeff;
        for (std::size_t v = 0; v < universe_->size(); ++v) {
            unsigned e = mono.exp(v);
            if (e == 0) continue;
            if (need_star) out << "*";
            out << universe_->name(v);
            if (e > 1) out << "^" << e;
            need_star = true;
        }
    }
    return out.str();
}

Int integer_content(const MultiPoly& p) {
    Int g(0);
    for (const auto& [mono, coeff] : p.terms()) {
        (void)mono;
        g = gcd(g, coeff);
        if (g == 1) break;
    }
    return abs(g);
}

MultiPoly poly_pow(const MultiPoly& p, unsigned exp) {
    MultiPoly out(p.universe(), Int(1));
    MultiPoly base = p;
    while (exp > 0) {
        if (exp & 1u) out = out * base;
        exp >>= 1u;
        if (exp > 0) base = base * base;
    }
    return out;
}

bool is_homogeneous(const MultiPoly& p, const std::vector<std::size_t>& vars) {
    bool first = true;
    unsigned want = 0;
    for (const auto& [mono, coeff] : p.terms()) {
        (void)coeff;
        unsigned sum = 0;
        for (std::size_t v : vars) sum += mono.exp(v);
        if (first) {
            want = sum;
            first = false;
        } else if (sum != want) {
            return false;
        }
    }
    return true;
}

MultiPoly normalize_sign(MultiPoly p) {
    if (!p.is_zero() && p.leading_coefficient() < 0) p *= Int(-1);
    return p;
}

std::string RationalPoly::str() const {
    if (den == 1) return num.str();
    return "(" + num.str() + ")/" + den.get_str();
}

RationalPoly make_rational_poly(MultiPoly num, Int den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (num.is_zero()) return {std::move(num), Int(1)};
    if (den < 0) {
        num *= Int(-1);
        den = -den;
    }
    Int g = gcd(integer_content(num), den);
    if (g > 1) {
        MultiPoly::Terms reduced;
        for (const auto& [mono, coeff] : num.terms()) {
            Int c;
            mpz_divexact(c.get_mpz_t(), coeff.get_mpz_t(), g.get_mpz_t());
            reduced.emplace(mono, std::move(c));
        }
        num = MultiPoly::from_terms(num.universe(), std::move(reduced));
        Int d;
        mpz_divexact(d.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
        den = std::move(d);
    }
    return {std::move(num), std::move(den)};
}

}  // namespace offsetdeg
