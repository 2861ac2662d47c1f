#ifndef CYDYN_FACTOR_HPP
#define CYDYN_FACTOR_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "cydyn/poly.hpp"

namespace cydyn {

/* Rational root extraction and partial factorization over Q.
 *
 * rational_roots is complete (rational root theorem: scale to a primitive
 * integer polynomial, enumerate divisor candidates of the constant and
 * leading coefficients, verify by exact evaluation, deflate for
 * multiplicity).  factor_over_q is deliberately partial: it strips rational
 * roots, certifies quadratic residues by discriminant, and leaves anything
 * of degree >= 3 flagged possibly-reducible rather than guessing.  Callers
 * that need completeness must check the flags.
 */

namespace detail {

// All positive divisors of |n|, n != 0, by trial division up to sqrt.
inline std::vector<Int> positive_divisors(const Int& n) {
    Int m = int_abs(n);
    internal_check(m != 0, "divisors of zero");
    std::vector<Int> small, large;
    for (Int d = 1; d * d <= m; ++d) {
        if (m % d != 0) continue;
        small.push_back(d);
        if (d * d != m) large.push_back(m / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;   // ascending
}

} // namespace detail

/* All rational roots of p, with multiplicity (repeated entries), sorted
 * ascending.  p must be nonzero.
 */
inline std::vector<Rat> rational_roots(const Poly& p) {
    if (p.is_zero()) throw DomainError("rational roots of zero polynomial");
    if (p.degree() == 0) return {};

    // Split off t^k so the constant coefficient is nonzero.
    std::size_t zero_mult = 0;
    while (p.coeff(zero_mult).is_zero()) ++zero_mult;
    std::vector<Rat> rest(p.coeffs().begin() + std::ptrdiff_t(zero_mult), p.coeffs().end());
    Poly q(std::move(rest));

    std::vector<Rat> roots(zero_mult, Rat(0));
    if (q.degree() > 0) {
        auto [ints, scale] = primitive_integer_coeffs(q);
        (void)scale;
        std::vector<Int> nums = detail::positive_divisors(ints.front());
        std::vector<Int> dens = detail::positive_divisors(ints.back());
        std::vector<Rat> candidates;
        for (const Int& a : nums)
            for (const Int& b : dens) {
                Rat c(a, b);
                candidates.push_back(c);
                candidates.push_back(-c);
            }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (const Rat& c : candidates) {
            while (!q.is_zero() && q.degree() > 0 && q.eval(c).is_zero()) {
                roots.push_back(c);
                q = exact_div(q, Poly::linear_root(c));
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

enum class FactorStatus {
    Irreducible,        // certified (linear, or quadratic with non-square discriminant)
    PossiblyReducible,  // degree >= 3 residue, not analyzed further
};

struct FactorPart {
    Poly poly;              // monic
    FactorStatus status;
};

struct FactorizationQ {
    Rat scalar;                     // product of parts times this equals the input
    std::vector<FactorPart> parts;  // linear parts ascending by root, then the residue

    bool all_irreducible() const {
        for (const auto& f : parts)
            if (f.status != FactorStatus::Irreducible) return false;
        return true;
    }

    Poly product() const {
        Poly acc = Poly::constant(scalar);
        for (const auto& f : parts) acc = acc * f.poly;
        return acc;
    }
};

/* Partial factorization of a squarefree polynomial (throws
 * NotSquarefreeError otherwise, with the repeated-factor witness in the
 * message).  Output parts are monic; scalar restores the leading
 * coefficient.  Deterministic order: linear factors ascending by root,
 * then the residue (at most one, since everything rational was stripped).
 */
inline FactorizationQ factor_over_q(const Poly& p) {
    if (p.is_zero()) throw DomainError("factorization of zero polynomial");
    if (p.degree() > 1) {
        Poly g = poly_gcd(p, p.derivative());
        if (g.degree() > 0)
            throw NotSquarefreeError("polynomial has repeated factor " + g.str());
    }

    FactorizationQ out;
    out.scalar = p.degree() >= 0 ? p.leading() : Rat(1);
    if (p.degree() == 0) return out;

    Poly q = p.monic();
    for (const Rat& r : rational_roots(p)) {   // squarefree, so all distinct
        out.parts.push_back({Poly::linear_root(r), FactorStatus::Irreducible});
        q = exact_div(q, Poly::linear_root(r));
    }
    if (q.degree() == 1) {
        // Can't happen: a monic linear residue has a rational root.
        throw InternalError("linear residue escaped rational root extraction");
    }
    if (q.degree() == 2) {
        // x^2 + bx + c with b^2 - 4c not a perfect rational square, else the
        // roots would have been rational and stripped above.
        Rat disc = q.coeff(1) * q.coeff(1) - Rat(4) * q.coeff(0);
        // N/D reduced is a rational square iff N*D is an integer square.
        bool square = is_perfect_square(disc.num() * disc.den());
        internal_check(!square, "quadratic residue with square discriminant");
        out.parts.push_back({q, FactorStatus::Irreducible});
    } else if (q.degree() >= 3) {
        out.parts.push_back({q, FactorStatus::PossiblyReducible});
    }
    return out;
}

} // namespace cydyn

#endif
