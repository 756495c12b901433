#pragma once

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "offsetdeg/errors.hpp"

namespace offsetdeg {

using Int = mpz_class;
using Rational = mpq_class;

// A fixed, ordered list of variable names.  Polynomials over the same
// universe share one instance; arithmetic across different universes (by
// content, not pointer) is rejected.
class VariableUniverse {
public:
    static constexpr std::size_t max_vars = 16;

    explicit VariableUniverse(std::vector<std::string> names);

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    std::optional<std::size_t> index_of(std::string_view name) const;

    bool operator==(const VariableUniverse& other) const {
        return names_ == other.names_;
    }

    // t0 t1 t2 d k1 k2 k3 c1 c2 c3, shared by the whole offset pipeline.
    static const std::shared_ptr<const VariableUniverse>& standard();

private:
    std::vector<std::string> names_;
};

using UniversePtr = std::shared_ptr<const VariableUniverse>;

UniversePtr make_universe(std::vector<std::string> names);

// Exponent vector with cached total degree.  Always 16 slots; slots beyond
// the universe size stay zero.
class Monomial {
public:
    Monomial() : exps_{}, tdeg_(0) {}

    unsigned exp(std::size_t var) const { return exps_[var]; }
    unsigned total_degree() const { return tdeg_; }

    void set_exp(std::size_t var, unsigned value);

    Monomial times(const Monomial& other) const;
    bool divides(const Monomial& other) const;
    Monomial divide(const Monomial& other) const;  // other must divide *this

    // Graded lexicographic: total degree first, then earlier variables win.
    static int cmp(const Monomial& a, const Monomial& b);

    bool operator==(const Monomial& other) const {
        return tdeg_ == other.tdeg_ && exps_ == other.exps_;
    }

private:
    std::array<std::uint16_t, 16> exps_;
    std::uint32_t tdeg_;
};

struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return Monomial::cmp(a, b) > 0;
    }
};

struct RationalPoly;

// Sparse multivariate polynomial with exact integer coefficients, stored in
// descending graded lexicographic order.  All operations are pure.
class MultiPoly {
public:
    using Terms = std::map<Monomial, Int, GrlexGreater>;

    explicit MultiPoly(UniversePtr universe);
    MultiPoly(UniversePtr universe, Int constant);

    static MultiPoly variable(const UniversePtr& universe, std::size_t var,
                              unsigned exp = 1);
    static MultiPoly from_terms(UniversePtr universe, Terms terms);

    const UniversePtr& universe() const { return universe_; }
    const Terms& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Int constant_value() const;  // requires is_constant()

    const Monomial& leading_monomial() const;      // requires nonzero
    const Int& leading_coefficient() const;        // requires nonzero

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& other);
    MultiPoly& operator-=(const MultiPoly& other);
    MultiPoly& operator*=(const Int& scalar);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    MultiPoly operator*(const MultiPoly& other) const;
    friend MultiPoly operator*(MultiPoly p, const Int& scalar) { return p *= scalar; }
    friend MultiPoly operator*(const Int& scalar, MultiPoly p) { return p *= scalar; }

    bool operator==(const MultiPoly& other) const;

    MultiPoly partial_derivative(std::size_t var) const;

    // Errors if var occurs or target_degree is below the total degree.
    MultiPoly homogenize(std::size_t var, unsigned target_degree) const;

    // Degrees error on the zero polynomial.
    unsigned total_degree() const;
    unsigned degree_in(std::size_t var) const;
    unsigned degree(const std::vector<std::size_t>& vars) const;

    // Coefficient of var^power, as a polynomial free of var.
    MultiPoly coeff_of(std::size_t var, unsigned power) const;

    // Group terms by their monomial in vars; values are free of vars.
    std::map<Monomial, MultiPoly, GrlexGreater>
    split(const std::vector<std::size_t>& vars) const;

    MultiPoly substitute(const std::map<std::size_t, Int>& bindings) const;
    RationalPoly substitute(const std::map<std::size_t, Rational>& bindings) const;

    bool depends_on(std::size_t var) const;

    // Canonical text: terms in descending graded lex order, explicit * and ^.
    std::string str() const;

private:
    void add_term(const Monomial& mono, const Int& coeff);
    void check_same_universe(const MultiPoly& other) const;

    UniversePtr universe_;
    Terms terms_;
};

// gcd of all coefficients, nonnegative; 0 for the zero polynomial.
Int integer_content(const MultiPoly& p);

MultiPoly poly_pow(const MultiPoly& p, unsigned exp);

// True when all terms share one total degree in vars; true for zero.
bool is_homogeneous(const MultiPoly& p, const std::vector<std::size_t>& vars);

// Flips the sign so the graded lex leading coefficient is positive.
MultiPoly normalize_sign(MultiPoly p);

// num / den with den > 0 and gcd(integer content of num, den) = 1.
// Build through make_rational_poly, which restores both invariants.
struct RationalPoly {
    MultiPoly num;
    Int den;

    std::string str() const;
};

RationalPoly make_rational_poly(MultiPoly num, Int den);

}  // namespace offsetdeg
