#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "offsetdeg/mvpoly.hpp"

namespace offsetdeg {

// Quotient p / q when the division leaves no remainder, nullopt otherwise.
std::optional<MultiPoly> divide_if_exact(const MultiPoly& p, const MultiPoly& q);

// Exact division.  A remainder means the caller's algebra is wrong, so this
// throws InternalError rather than returning a value.
MultiPoly divide_exact(const MultiPoly& p, const MultiPoly& q);

// Pseudo-remainder of f by g with respect to var: the remainder of
// lc_var(g)^(deg_var f - deg_var g + 1) * f under division by g.
// Requires g nonzero and deg_var f >= deg_var g.
MultiPoly prem(const MultiPoly& f, const MultiPoly& g, std::size_t var);

// Greatest common divisor over the integers, sign-normalized so the graded
// lex leading coefficient is positive.  gcd(0, 0) = 0.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);
MultiPoly gcd(const std::vector<MultiPoly>& polys);

// Content and primitive part of p viewed as a polynomial in vars with
// coefficients free of vars.  content is sign-normalized; p = content * pp
// exactly.  Both map the zero polynomial to zero.
MultiPoly content(const MultiPoly& p, const std::vector<std::size_t>& vars);
MultiPoly primitive_part(const MultiPoly& p, const std::vector<std::size_t>& vars);

// Sylvester matrix of f and g with respect to var, rows built from f first.
class SylvesterMatrix {
public:
    SylvesterMatrix(const MultiPoly& f, const MultiPoly& g, std::size_t var);

    std::size_t size() const { return size_; }
    const MultiPoly& entry(std::size_t row, std::size_t col) const;

    // Fraction-free Gaussian elimination; every division is exact.
    MultiPoly det_bareiss() const;

    // Cofactor expansion, for cross-checking only.  Requires size() <= 8.
    MultiPoly det_cofactor() const;

private:
    MultiPoly det_cofactor_rec(const std::vector<MultiPoly>& m,
                               std::size_t dim) const;

    std::size_t size_;
    UniversePtr universe_;
    std::vector<MultiPoly> entries_;
};

// Res_var(f, g) for nonzero f, g, at least one of positive degree in var.
// Uses a pseudo-remainder reduction when min(deg f, deg g) <= 2 and the
// Bareiss determinant of the Sylvester matrix otherwise.
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, std::size_t var);

// Independent small-scale implementation (cofactor determinant) used to
// validate resultant().  Requires deg f + deg g <= 8.
MultiPoly resultant_oracle(const MultiPoly& f, const MultiPoly& g,
                           std::size_t var);

}  // namespace offsetdeg
