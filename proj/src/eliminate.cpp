#include "offsetdeg/eliminate.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <utility>

namespace offsetdeg {

namespace {

Int int_gcd(const Int& a, const Int& b) {
    Int out;
    mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

Int int_divexact(const Int& a, const Int& b) {
    Int out;
    mpz_divexact(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

void check_universes(const MultiPoly& a, const MultiPoly& b) {
    if (a.universe() != b.universe() && !(*a.universe() == *b.universe()))
        throw std::invalid_argument("variable universe mismatch");
}

// Per-variable minimum exponent over all terms.  Requires p nonzero.
Monomial monomial_content(const MultiPoly& p) {
    Monomial out = p.terms().begin()->first;
    for (const auto& [mono, coeff] : p.terms()) {
        (void)coeff;
        for (std::size_t v = 0; v < VariableUniverse::max_vars; ++v)
            if (mono.exp(v) < out.exp(v)) out.set_exp(v, mono.exp(v));
    }
    return out;
}

MultiPoly strip_contents(const MultiPoly& p, const Int& ic, const Monomial& mc) {
    MultiPoly::Terms out;
    for (const auto& [mono, coeff] : p.terms())
        out.emplace(mono.divide(mc), int_divexact(coeff, ic));
    return MultiPoly::from_terms(p.universe(), std::move(out));
}

std::uint32_t present_mask(const MultiPoly& p) {
    std::uint32_t mask = 0;
    for (const auto& [mono, coeff] : p.terms()) {
        (void)coeff;
        for (std::size_t v = 0; v < VariableUniverse::max_vars; ++v)
            if (mono.exp(v) != 0) mask |= (1u << v);
    }
    return mask;
}

bool homogeneous_in(const MultiPoly& p, std::uint32_t vars) {
    unsigned want = 0;
    bool first = true;
    for (const auto& [mono, coeff] : p.terms()) {
        (void)coeff;
        unsigned sum = 0;
        for (std::size_t v = 0; v < VariableUniverse::max_vars; ++v)
            if (vars & (1u << v)) sum += mono.exp(v);
        if (first) {
            want = sum;
            first = false;
        } else if (sum != want) {
            return false;
        }
    }
    return true;
}

// Restore the grading in vars that was removed by substituting 1 for var.
// Requires g to be the dehomogenization of a polynomial not divisible by var.
MultiPoly rehomogenize(const MultiPoly& g, std::uint32_t vars, std::size_t var) {
    auto rest_degree = [&](const Monomial& mono) {
        unsigned sum = 0;
        for (std::size_t v = 0; v < VariableUniverse::max_vars; ++v)
            if (v != var && (vars & (1u << v))) sum += mono.exp(v);
        return sum;
    };
    unsigned target = 0;
    for (const auto& [mono, coeff] : g.terms()) {
        (void)coeff;
        target = std::max(target, rest_degree(mono));
    }
    MultiPoly::Terms out;
    for (const auto& [mono, coeff] : g.terms()) {
        Monomial m = mono;
        m.set_exp(var, target - rest_degree(mono));
        out.emplace(m, coeff);
    }
    return MultiPoly::from_terms(g.universe(), std::move(out));
}

// ---------------------------------------------------------------------------
// Modular coprimality certificate.  Specializing every variable but one at a
// point that preserves both leading coefficients can only increase the gcd
// degree in the remaining variable, and reducing mod a word-size prime can
// only increase it further.  A degree-0 image gcd therefore proves that the
// true gcd is free of that variable, which collapses the computation to a
// gcd of contents.  Failure to certify proves nothing and the caller falls
// back to the remainder sequence.
// ---------------------------------------------------------------------------

constexpr std::uint64_t cert_prime = 2147483647ull;  // 2^31 - 1

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t out = 1;
    base %= cert_prime;
    while (exp != 0) {
        if (exp & 1) out = out * base % cert_prime;
        base = base * base % cert_prime;
        exp >>= 1;
    }
    return out;
}

// Coefficients of the image of p in F_prime[var], other variables fixed at
// point[].  Trailing (leading) zeros stripped; empty means the zero image.
std::vector<std::uint64_t> modular_image(
    const MultiPoly& p, std::size_t var,
    const std::array<std::uint64_t, VariableUniverse::max_vars>& point) {
    std::vector<std::uint64_t> out(p.degree_in(var) + 1, 0);
    for (const auto& [mono, coeff] : p.terms()) {
        std::uint64_t c = mpz_fdiv_ui(coeff.get_mpz_t(), cert_prime);
        for (std::size_t v = 0; v < VariableUniverse::max_vars; ++v)
            if (v != var && mono.exp(v) != 0)
                c = c * pow_mod(point[v], mono.exp(v)) % cert_prime;
        std::size_t e = mono.exp(var);
        out[e] = (out[e] + c) % cert_prime;
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

unsigned modular_gcd_degree(std::vector<std::uint64_t> a,
                            std::vector<std::uint64_t> b) {
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        const std::uint64_t inv = pow_mod(b.back(), cert_prime - 2);
        while (a.size() >= b.size()) {
            const std::uint64_t factor = a.back() * inv % cert_prime;
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) {
                std::uint64_t sub = factor * b[i] % cert_prime;
                a[i + shift] = (a[i + shift] + cert_prime - sub) % cert_prime;
            }
            while (!a.empty() && a.back() == 0) a.pop_back();
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a.empty() ? 0 : unsigned(a.size() - 1);
}

std::uint64_t splitmix_step(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

bool certify_coprime_in_var(const MultiPoly& a, const MultiPoly& b,
                            std::size_t var) {
    std::uint64_t state = 0x0ff5e7de60a1c0deull;
    for (int attempt = 0; attempt < 4; ++attempt) {
        std::array<std::uint64_t, VariableUniverse::max_vars> point{};
        for (std::size_t v = 0; v < VariableUniverse::max_vars; ++v)
            point[v] = 1 + splitmix_step(state) % (cert_prime - 1);
        auto ia = modular_image(a, var, point);
        if (ia.size() != std::size_t(a.degree_in(var)) + 1) continue;
        auto ib = modular_image(b, var, point);
        if (ib.size() != std::size_t(b.degree_in(var)) + 1) continue;
        return modular_gcd_degree(std::move(ia), std::move(ib)) == 0;
    }
    return false;
}

// Subresultant polynomial remainder sequence on inputs that are primitive
// and of positive degree in var.  Returns the primitive gcd, up to sign.
MultiPoly prs_gcd(MultiPoly a, MultiPoly b, std::size_t var) {
    if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
    const UniversePtr& u = a.universe();
    MultiPoly g(u, Int(1));
    MultiPoly h(u, Int(1));
    while (true) {
        unsigned delta = a.degree_in(var) - b.degree_in(var);
        MultiPoly r = prem(a, b, var);
        if (r.is_zero()) return primitive_part(b, {var});
        if (r.degree_in(var) == 0) return MultiPoly(u, Int(1));
        a = b;
        b = divide_exact(r, g * poly_pow(h, delta));
        g = a.coeff_of(var, a.degree_in(var));
        if (delta == 1)
            h = g;
        else if (delta > 1)
            h = divide_exact(poly_pow(g, delta), poly_pow(h, delta - 1));
    }
}

MultiPoly resultant_by_reduction(const MultiPoly& f, const MultiPoly& g,
                                 std::size_t var);

}  // namespace

std::optional<MultiPoly> divide_if_exact(const MultiPoly& p, const MultiPoly& q) {
    check_universes(p, q);
    if (q.is_zero()) throw std::invalid_argument("division by zero polynomial");
    MultiPoly quotient(p.universe());
    MultiPoly r = p;
    const Monomial& lmq = q.leading_monomial();
    const Int& lcq = q.leading_coefficient();
    while (!r.is_zero()) {
        const Monomial& lmr = r.leading_monomial();
        const Int& lcr = r.leading_coefficient();
        if (!lmq.divides(lmr)) return std::nullopt;
        if (!mpz_divisible_p(lcr.get_mpz_t(), lcq.get_mpz_t())) return std::nullopt;
        MultiPoly::Terms term;
        term.emplace(lmr.divide(lmq), int_divexact(lcr, lcq));
        MultiPoly t = MultiPoly::from_terms(p.universe(), std::move(term));
        quotient += t;
        r -= t * q;
    }
    return quotient;
}

MultiPoly divide_exact(const MultiPoly& p, const MultiPoly& q) {
    auto quotient = divide_if_exact(p, q);
    if (!quotient) throw InternalError("division expected to be exact left a remainder");
    return *std::move(quotient);
}

MultiPoly prem(const MultiPoly& f, const MultiPoly& g, std::size_t var) {
    check_universes(f, g);
    if (g.is_zero()) throw std::invalid_argument("pseudo-remainder by zero");
    if (f.is_zero()) return f;
    unsigned m = f.degree_in(var);
    unsigned n = g.degree_in(var);
    if (m < n) throw std::invalid_argument("pseudo-remainder needs deg f >= deg g");
    MultiPoly lg = g.coeff_of(var, n);
    MultiPoly r = f;
    for (unsigned e = m;; --e) {
        MultiPoly cr = r.coeff_of(var, e);
        r = lg * r - cr * MultiPoly::variable(f.universe(), var, e - n) * g;
        if (e == n) break;
    }
    return r;
}

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
    check_universes(a, b);
    if (a.is_zero() && b.is_zero()) return a;
    if (a.is_zero()) return normalize_sign(b);
    if (b.is_zero()) return normalize_sign(a);

    const UniversePtr& u = a.universe();
    Int ca = integer_content(a);
    Int cb = integer_content(b);
    Monomial ma = monomial_content(a);
    Monomial mb = monomial_content(b);
    MultiPoly A = strip_contents(a, ca, ma);
    MultiPoly B = strip_contents(b, cb, mb);

    Monomial shared_mono;
    for (std::size_t v = 0; v < VariableUniverse::max_vars; ++v)
        shared_mono.set_exp(v, std::min(ma.exp(v), mb.exp(v)));
    MultiPoly::Terms base_term;
    base_term.emplace(shared_mono, int_gcd(ca, cb));
    MultiPoly base = MultiPoly::from_terms(u, std::move(base_term));

    if (A.is_constant() || B.is_constant()) return base;
    std::uint32_t pa = present_mask(A);
    std::uint32_t pb = present_mask(B);
    if ((pa & pb) == 0) return base;

    // When both polynomials are homogeneous with respect to a common set of
    // variables, drop one of those variables by setting it to 1, take the
    // gcd there, and restore the grading.  Cheap to detect and it removes a
    // variable from the remainder sequences below.
    if (A.term_count() >= 8 && B.term_count() >= 8) {
        std::uint32_t all = pa | pb;
        if (std::popcount(all) <= 10) {
            for (std::uint32_t s = all; s != 0; s = (s - 1) & all) {
                if (std::popcount(s) < 2) continue;
                if (!homogeneous_in(A, s) || !homogeneous_in(B, s)) continue;
                std::size_t var = std::bit_width(s) - 1;
                std::map<std::size_t, Int> one{{var, Int(1)}};
                MultiPoly G = gcd(A.substitute(one), B.substitute(one));
                return normalize_sign(base * rehomogenize(G, s, var));
            }
        }
    }

    std::size_t var = std::countr_zero(pa & pb);
    const bool coprime_in_var = certify_coprime_in_var(A, B, var);
    MultiPoly cont_a = content(A, {var});
    MultiPoly cont_b = content(B, {var});
    MultiPoly cont_g = gcd(cont_a, cont_b);
    if (coprime_in_var) return normalize_sign(base * cont_g);
    MultiPoly pp_a = divide_exact(A, cont_a);
    MultiPoly pp_b = divide_exact(B, cont_b);
    MultiPoly prim_g = prs_gcd(std::move(pp_a), std::move(pp_b), var);
    return normalize_sign(base * cont_g * prim_g);
}

MultiPoly gcd(const std::vector<MultiPoly>& polys) {
    if (polys.empty()) throw std::invalid_argument("gcd of empty family");
    std::vector<const MultiPoly*> order;
    order.reserve(polys.size());
    for (const auto& p : polys) order.push_back(&p);
    std::stable_sort(order.begin(), order.end(),
                     [](const MultiPoly* x, const MultiPoly* y) {
                         return x->term_count() < y->term_count();
                     });
    MultiPoly g(polys.front().universe());
    for (const MultiPoly* p : order) {
        g = gcd(g, *p);
        if (g.is_constant() && !g.is_zero() && g.constant_value() == 1) break;
    }
    return g;
}

MultiPoly content(const MultiPoly& p, const std::vector<std::size_t>& vars) {
    if (p.is_zero()) return p;
    auto parts = p.split(vars);
    std::vector<MultiPoly> coeffs;
    coeffs.reserve(parts.size());
    for (auto& [mono, coeff] : parts) {
        (void)mono;
        coeffs.push_back(std::move(coeff));
    }
    return gcd(coeffs);
}

MultiPoly primitive_part(const MultiPoly& p, const std::vector<std::size_t>& vars) {
    if (p.is_zero()) return p;
    return divide_exact(p, content(p, vars));
}

SylvesterMatrix::SylvesterMatrix(const MultiPoly& f, const MultiPoly& g,
                                 std::size_t var) {
    check_universes(f, g);
    if (f.is_zero() || g.is_zero())
        throw std::invalid_argument("Sylvester matrix of zero polynomial");
    universe_ = f.universe();
    unsigned m = f.degree_in(var);
    unsigned n = g.degree_in(var);
    size_ = std::size_t(m) + std::size_t(n);
    entries_.assign(size_ * size_, MultiPoly(universe_));
    for (std::size_t i = 0; i < n; ++i)
        for (unsigned j = 0; j <= m; ++j)
            entries_[i * size_ + i + j] = f.coeff_of(var, m - j);
    for (std::size_t i = 0; i < m; ++i)
        for (unsigned j = 0; j <= n; ++j)
            entries_[(n + i) * size_ + i + j] = g.coeff_of(var, n - j);
}

const MultiPoly& SylvesterMatrix::entry(std::size_t row, std::size_t col) const {
    if (row >= size_ || col >= size_)
        throw std::invalid_argument("matrix index out of range");
    return entries_[row * size_ + col];
}

MultiPoly SylvesterMatrix::det_bareiss() const {
    if (size_ == 0) return MultiPoly(universe_, Int(1));
    std::vector<MultiPoly> m = entries_;
    auto at = [&](std::size_t i, std::size_t j) -> MultiPoly& {
        return m[i * size_ + j];
    };
    bool negate = false;
    for (std::size_t k = 0; k + 1 < size_; ++k) {
        if (at(k, k).is_zero()) {
            std::size_t pivot = k + 1;
            while (pivot < size_ && at(pivot, k).is_zero()) ++pivot;
            if (pivot == size_) return MultiPoly(universe_);
            for (std::size_t j = 0; j < size_; ++j)
                std::swap(at(k, j), at(pivot, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < size_; ++i) {
            for (std::size_t j = k + 1; j < size_; ++j) {
                MultiPoly num = at(k, k) * at(i, j) - at(i, k) * at(k, j);
                at(i, j) = (k == 0) ? std::move(num)
                                    : divide_exact(num, at(k - 1, k - 1));
            }
            at(i, k) = MultiPoly(universe_);
        }
    }
    MultiPoly det = at(size_ - 1, size_ - 1);
    return negate ? -det : det;
}

MultiPoly SylvesterMatrix::det_cofactor_rec(const std::vector<MultiPoly>& m,
                                            std::size_t dim) const {
    if (dim == 0) return MultiPoly(universe_, Int(1));
    if (dim == 1) return m[0];
    MultiPoly out(universe_);
    for (std::size_t col = 0; col < dim; ++col) {
        if (m[col].is_zero()) continue;
        std::vector<MultiPoly> minor;
        minor.reserve((dim - 1) * (dim - 1));
        for (std::size_t i = 1; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                if (j != col) minor.push_back(m[i * dim + j]);
        MultiPoly term = m[col] * det_cofactor_rec(minor, dim - 1);
        if (col % 2 == 1) term = -term;
        out += term;
    }
    return out;
}

MultiPoly SylvesterMatrix::det_cofactor() const {
    if (size_ > 8)
        throw std::invalid_argument("cofactor determinant limited to size 8");
    if (size_ == 0) return MultiPoly(universe_, Int(1));
    return det_cofactor_rec(entries_, size_);
}

namespace {

MultiPoly resultant_by_reduction(const MultiPoly& f, const MultiPoly& g,
                                 std::size_t var) {
    unsigned m = f.degree_in(var);
    unsigned n = g.degree_in(var);
    if (m < n) {
        MultiPoly swapped = resultant(g, f, var);
        return (std::uint64_t(m) * n) % 2 == 1 ? -swapped : swapped;
    }
    MultiPoly r = prem(f, g, var);
    if (r.is_zero()) return MultiPoly(f.universe());
    unsigned p = r.degree_in(var);
    MultiPoly c = g.coeff_of(var, n);
    long e = long(m) - long(p) - long(n) * (long(m) - long(n) + 1);
    MultiPoly out = resultant(g, r, var);
    if ((std::uint64_t(m) * n) % 2 == 1) out = -out;
    if (e >= 0) return out * poly_pow(c, unsigned(e));
    return divide_exact(out, poly_pow(c, unsigned(-e)));
}

}  // namespace

MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, std::size_t var) {
    check_universes(f, g);
    if (f.is_zero() || g.is_zero())
        throw std::invalid_argument("resultant of zero polynomial");
    unsigned m = f.degree_in(var);
    unsigned n = g.degree_in(var);
    if (m == 0 && n == 0)
        throw std::invalid_argument("resultant needs positive degree in the variable");
    if (m == 0) return poly_pow(f, n);
    if (n == 0) return poly_pow(g, m);
    if (std::min(m, n) <= 2) return resultant_by_reduction(f, g, var);
    return SylvesterMatrix(f, g, var).det_bareiss();
}

MultiPoly resultant_oracle(const MultiPoly& f, const MultiPoly& g,
                           std::size_t var) {
    check_universes(f, g);
    if (f.is_zero() || g.is_zero())
        throw std::invalid_argument("resultant of zero polynomial");
    if (f.degree_in(var) == 0 && g.degree_in(var) == 0)
        throw std::invalid_argument("resultant needs positive degree in the variable");
    return SylvesterMatrix(f, g, var).det_cofactor();
}

}  // namespace offsetdeg
