#ifndef CYDYN_SPECTRAL_HPP
#define CYDYN_SPECTRAL_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cydyn/factor.hpp"
#include "cydyn/logint.hpp"
#include "cydyn/matrix.hpp"
#include "cydyn/sturm.hpp"
#include "cydyn/surd.hpp"

namespace cydyn {

/* Spectral radius of an integer (or rational) matrix, certified.
 *
 * Strategy: take the squarefree part of the characteristic polynomial,
 * factor what can be factored, isolate every real root of every factor
 * (negative roots via the reflected polynomial, so the half-open interval
 * convention survives the sign flip), and take the exact maximum of the
 * absolute values by algebraic comparison.  Moduli of non-real roots are
 * never computed, only bounded: if any factor with non-real roots has a
 * Cauchy bound exceeding the best real candidate, the result degrades to a
 * certified but wide enclosure and says so.  The exact closed form is
 * attached when the achieving factor has degree 1 (rational) or 2 (surd).
 */

enum class RadiusKind {
    Rational,       // achieved by a linear factor: exact rational value
    Surd,           // achieved by a quadratic factor: exact a + b*sqrt(d)
    IntervalOnly,   // enclosure only (deg >= 3 achiever, or non-real not dominated)
};

struct SpectralRadius {
    RadiusKind kind = RadiusKind::IntervalOnly;
    bool dominated = true;      // false: some non-real modulus may exceed the real max
    std::optional<Rat> rational_value;
    std::optional<QuadraticSurd> surd_value;
    Poly achieving_factor;      // zero polynomial when no real eigenvalue exists
    bool from_negative_eigenvalue = false;
    Rat lo, hi;                 // certified enclosure of the radius
    std::vector<std::string> notes;

    std::string kind_str() const {
        switch (kind) {
            case RadiusKind::Rational: return "rational";
            case RadiusKind::Surd: return "quadratic-surd";
            default: return "interval-only";
        }
    }
};

namespace detail {

struct RadiusCandidate {
    bool is_rational;
    Rat rational;               // when is_rational
    RealRoot root;              // otherwise: a positive real algebraic number
    std::size_t part_index;     // which factor it came from
    bool negated;               // value is |negative root| of the factor
};

// -1/0/+1 comparing two candidates' values.
inline int compare_candidates(const RadiusCandidate& x, const RadiusCandidate& y) {
    if (x.is_rational && y.is_rational)
        return x.rational < y.rational ? -1 : (x.rational == y.rational ? 0 : 1);
    if (x.is_rational) return -compare_root_rat(y.root, x.rational);
    if (y.is_rational) return compare_root_rat(x.root, y.rational);
    return compare_roots(x.root, y.root);
}

} // namespace detail

inline SpectralRadius spectral_radius_of_charpoly(const Poly& chi_in, const Rat& width) {
    if (chi_in.is_zero() || chi_in.degree() < 1)
        throw DomainError("spectral radius needs a characteristic polynomial of degree >= 1");
    if (!(width > Rat(0))) throw DomainError("enclosure width must be positive");

    SpectralRadius out;
    Poly chi = chi_in;
    if (!is_squarefree(chi)) {
        chi = squarefree_part(chi);     // same root set, radius unchanged
        out.notes.push_back("characteristic polynomial not squarefree; radius computed from squarefree part");
    }
    FactorizationQ fac = factor_over_q(chi);

    std::vector<detail::RadiusCandidate> candidates;
    std::vector<Rat> nonreal_bounds;    // Cauchy bound per factor with non-real roots

    for (std::size_t pi = 0; pi < fac.parts.size(); ++pi) {
        const Poly& f = fac.parts[pi].poly;
        if (f.degree() == 1) {
            candidates.push_back({true, (-f.coeff(0)).abs(), {}, pi, f.coeff(0).sign() > 0});
            continue;
        }
        std::size_t real_count = 0;
        for (bool reflected : {false, true}) {
            Poly g = reflected ? f.reflect() : f;
            SturmChain chain(g);
            for (IsolatingInterval iv : isolate_real_roots(g)) {
                if (!reflected) ++real_count;
                // Park the interval on one side of zero; the root is never 0
                // (rational roots were stripped into linear parts).
                while (iv.lo.sign() < 0 && iv.hi.sign() > 0)
                    iv = refine(g, chain, iv, iv.width() / Rat(2));
                if (iv.hi.sign() <= 0) continue;    // negative root; its mirror is handled reflected
                candidates.push_back({false, Rat(0), RealRoot{g, iv}, pi, reflected});
            }
        }
        if (real_count < std::size_t(f.degree()))
            nonreal_bounds.push_back(cauchy_bound(f));
    }

    // Exact maximum over the candidate values (empty means no real eigenvalue).
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (!best || detail::compare_candidates(candidates[i], candidates[*best]) > 0)
            best = i;

    if (best) {
        const detail::RadiusCandidate& c = candidates[*best];
        const Poly& f = fac.parts[c.part_index].poly;
        out.achieving_factor = f;
        out.from_negative_eigenvalue = c.negated;
        if (c.is_rational) {
            out.kind = RadiusKind::Rational;
            out.rational_value = c.rational;
            out.lo = c.rational - rat_min(width, Rat(1, 2));
            out.hi = c.rational;
        } else {
            IsolatingInterval iv = refine(c.root.poly, c.root.interval, width);
            out.lo = iv.lo;
            out.hi = iv.hi;
            if (f.degree() == 2) {
                // Identify which branch of the conjugate pair (possibly
                // negated) the winning root is, by exact interval membership.
                // Collect the distinct positive values first: with rational
                // part 0 the pure radical appears under two signs, and a wide
                // requested width may cover two distinct branches, in which
                // case the interval is narrowed until only the root remains.
                SurdPair pair = surd_roots_of_quadratic(f);
                std::vector<QuadraticSurd> branches;
                for (const QuadraticSurd& s : {pair.plus(), pair.minus(),
                                               pair.plus().negated(),
                                               pair.minus().negated()}) {
                    if (s.sign() <= 0) continue;
                    bool seen = false;
                    for (const QuadraticSurd& t : branches)
                        if (t.compare(s) == 0) seen = true;
                    if (!seen) branches.push_back(s);
                }
                auto hits = [&](const IsolatingInterval& window) {
                    std::vector<QuadraticSurd> in;
                    for (const QuadraticSurd& s : branches)
                        if (s.in_interval(window.lo, window.hi)) in.push_back(s);
                    return in;
                };
                IsolatingInterval window = iv;
                std::vector<QuadraticSurd> match = hits(window);
                while (match.size() > 1) {
                    window = refine(c.root.poly, window, window.width() / Rat(2));
                    match = hits(window);
                }
                internal_check(match.size() == 1,
                               "no surd branch matches the refined interval");
                out.kind = RadiusKind::Surd;
                out.surd_value = match.front();
            } else {
                out.kind = RadiusKind::IntervalOnly;
                out.notes.push_back("achieving factor has degree " + std::to_string(f.degree()) +
                                    "; no closed form attached");
            }
        }
    } else {
        out.lo = Rat(0);
        out.hi = Rat(0);
        out.kind = RadiusKind::IntervalOnly;
        out.notes.push_back("no real eigenvalues; radius bounded via Cauchy only");
    }

    // Non-real roots can only be excluded by domination: every factor with
    // non-real roots must have its Cauchy bound at or below the certified
    // real maximum, otherwise the enclosure widens to the worst bound.
    Rat worst = out.hi;
    for (const Rat& b : nonreal_bounds) {
        bool exceeds;
        if (best && !candidates[*best].is_rational)
            exceeds = compare_root_rat(candidates[*best].root, b) < 0;
        else
            exceeds = out.hi < b;   // rational best (or none): plain comparison
        if (exceeds) {
            out.dominated = false;
            worst = rat_max(worst, b);
            out.notes.push_back("factor with non-real roots has Cauchy bound " + b.str() +
                                " above the largest real eigenvalue; enclosure widened");
        }
    }
    if (!out.dominated) {
        out.hi = worst;
        out.kind = RadiusKind::IntervalOnly;
        out.rational_value.reset();
        out.surd_value.reset();
    }
    return out;
}

inline SpectralRadius spectral_radius(const Mat& m, const Rat& width) {
    if (!m.is_square() || m.rows() == 0)
        throw DimensionError("spectral radius needs a nonempty square matrix");
    return spectral_radius_of_charpoly(char_poly(m), width);
}

/* Eigenvalue inventory of a characteristic polynomial for reporting:
 * rational eigenvalues with multiplicity, real quadratic conjugate pairs,
 * complex quadratic factors, and anything of degree >= 3 left unresolved.
 */
struct EigenSummary {
    std::vector<Rat> rational;              // with multiplicity, ascending
    std::vector<SurdPair> real_pairs;       // a +- b sqrt(d) per real quadratic factor
    std::vector<Poly> complex_quadratics;
    std::vector<Poly> unresolved;           // degree >= 3, not certified either way
    bool squarefree = true;
};

/* Natural log of a certified radius enclosure: the entropy-style quantity
 * attached to the dynamical degree.  Monotonicity of ln makes the interval
 * arithmetic one-sided per endpoint.
 */
struct EntropyBound {
    Rat lo, hi;     // lo <= ln(radius) <= hi
};

inline EntropyBound entropy_bound(const SpectralRadius& r) {
    if (r.lo.sign() <= 0)
        throw DomainError("entropy bound needs a positive radius lower bound");
    return {log_interval(r.lo).lo, log_interval(r.hi).hi};
}

inline EigenSummary eigen_summary(const Poly& chi) {
    EigenSummary out;
    out.rational = rational_roots(chi);
    Poly sf = chi;
    if (!is_squarefree(chi)) {
        out.squarefree = false;
        sf = squarefree_part(chi);
    }
    for (const FactorPart& part : factor_over_q(sf).parts) {
        if (part.poly.degree() == 1) continue;      // already in rational[]
        if (part.poly.degree() == 2) {
            Rat c1 = part.poly.coeff(1), c0 = part.poly.coeff(0);
            if ((c1 * c1 - Rat(4) * c0).sign() > 0)
                out.real_pairs.push_back(surd_roots_of_quadratic(part.poly));
            else
                out.complex_quadratics.push_back(part.poly);
        } else {
            out.unresolved.push_back(part.poly);
        }
    }
    return out;
}

} // namespace cydyn

#endif
