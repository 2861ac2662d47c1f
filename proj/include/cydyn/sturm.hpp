#ifndef CYDYN_STURM_HPP
#define CYDYN_STURM_HPP

#include <utility>
#include <vector>

#include "cydyn/poly.hpp"

namespace cydyn {

/* Sturm chains and certified real root isolation.
 *
 * Conventions, used consistently everywhere:
 *   - intervals are half-open (lo, hi]: a root landing exactly on a
 *     bisection point belongs to the interval on its left, and the interval
 *     records the fact in root_at_hi;
 *   - all interval endpoints are dyadic rationals (the initial bound is a
 *     power of two and bisection only ever averages), so endpoint
 *     arithmetic never grows denominators beyond powers of two;
 *   - counting in (lo, hi] is V(lo) - V(hi) in the classic way, which is
 *     exactly the half-open count since sign variations drop when passing
 *     a root from the left.
 */

class SturmChain {
public:
    // p0 = p, p1 = p', then negated remainders until zero.
    explicit SturmChain(const Poly& p) {
        if (p.is_zero()) throw DomainError("Sturm chain of zero polynomial");
        seq_.push_back(p);
        if (p.degree() >= 1) {
            seq_.push_back(p.derivative());
            while (seq_.back().degree() >= 1) {
                Poly r = divrem(seq_[seq_.size() - 2], seq_.back()).second;
                if (r.is_zero()) break;
                seq_.push_back(-r);
            }
        }
    }

    const Poly& poly() const { return seq_.front(); }
    const std::vector<Poly>& sequence() const { return seq_; }

    // The chain bottoms out in a nonzero constant iff p is squarefree.
    bool squarefree() const { return seq_.back().degree() <= 0; }

    int variations_at(const Rat& x) const {
        int count = 0, prev = 0;
        for (const Poly& p : seq_) {
            int s = p.eval(x).sign();
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
        return count;
    }

    int variations_at_pos_inf() const { return variations_limit(+1); }
    int variations_at_neg_inf() const { return variations_limit(-1); }

    // Number of roots in (lo, hi].
    int count_in(const Rat& lo, const Rat& hi) const {
        if (!(lo < hi)) throw DomainError("count_in needs lo < hi");
        return variations_at(lo) - variations_at(hi);
    }

    int count_all_real() const {
        return variations_at_neg_inf() - variations_at_pos_inf();
    }

private:
    int variations_limit(int direction) const {
        int count = 0, prev = 0;
        for (const Poly& p : seq_) {
            int s = p.leading().sign();
            if (direction < 0 && p.degree() % 2 == 1) s = -s;
            if (s == 0) continue;   // unreachable: leading coefficients are nonzero
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
        return count;
    }

    std::vector<Poly> seq_;
};

/* 1 + max |c_i / c_n|, rounded up to a power of two, so every real root of p
 * lies strictly inside (-B, B) and the bound is dyadic from the start.
 */
inline Rat cauchy_bound(const Poly& p) {
    if (p.is_zero() || p.degree() < 1)
        throw DomainError("Cauchy bound needs degree >= 1");
    Rat lead = p.leading().abs();
    Rat worst(0);
    for (int i = 0; i < p.degree(); ++i)
        worst = rat_max(worst, p.coeff(std::size_t(i)).abs() / lead);
    Int n = (Rat(1) + worst).ceil();
    Int pow2 = 1;
    while (pow2 < n) pow2 *= 2;
    return Rat(pow2);
}

struct IsolatingInterval {
    Rat lo, hi;          // dyadic; the root lies in (lo, hi]
    bool root_at_hi;     // true when the root is exactly hi

    Rat width() const { return hi - lo; }
    bool contains(const Rat& x) const { return lo < x && x <= hi; }
};

namespace detail {

// Sign-condition re-verification done at every step that emits an interval:
// either the root sits exactly at hi, or the endpoint values must straddle 0.
inline void verify_isolating(const Poly& p, const Rat& lo, const Rat& hi, bool root_at_hi) {
    if (root_at_hi) {
        internal_check(p.eval(hi).is_zero(), "root_at_hi without vanishing endpoint");
        return;
    }
    int slo = p.eval(lo).sign(), shi = p.eval(hi).sign();
    internal_check(shi != 0, "unflagged root at interval endpoint");
    if (slo != 0)
        internal_check(slo != shi, "no sign change across isolating interval");
    // slo == 0 happens when the left neighbour's root is exactly lo; the
    // Sturm count already certified exactly one root of p inside (lo, hi].
}

} // namespace detail

/* Isolating intervals for every real root of a squarefree p, ascending.
 * Bisection from (-B, B], B the dyadic Cauchy bound.  Each emitted interval
 * is re-verified by endpoint signs on top of the Sturm count.
 */
inline std::vector<IsolatingInterval> isolate_real_roots(const Poly& p) {
    if (p.is_zero()) throw DomainError("root isolation of zero polynomial");
    if (p.degree() == 0) return {};
    SturmChain chain(p);
    if (!chain.squarefree())
        throw NotSquarefreeError("root isolation requires a squarefree polynomial");

    Rat bound = cauchy_bound(p);
    std::vector<IsolatingInterval> out;

    // Depth-first bisection; pushing the right half before the left makes
    // the traversal in-order, so the output comes out sorted.
    struct Span { Rat lo, hi; int count; };
    std::vector<Span> stack;
    auto push = [&](Rat lo, Rat hi) {
        int c = chain.count_in(lo, hi);
        if (c > 0) stack.push_back({std::move(lo), std::move(hi), c});
    };
    push(-bound, bound);
    while (!stack.empty()) {
        Span s = stack.back();
        stack.pop_back();
        if (s.count == 1) {
            bool at_hi = p.eval(s.hi).is_zero();
            detail::verify_isolating(p, s.lo, s.hi, at_hi);
            out.push_back({s.lo, s.hi, at_hi});
            continue;
        }
        Rat mid = (s.lo + s.hi) / Rat(2);
        push(mid, s.hi);
        push(s.lo, mid);
    }
    internal_check(int(out.size()) == chain.count_all_real(),
                   "isolation missed roots inside the Cauchy bound");
    return out;
}

/* Shrinks an isolating interval to width <= target by bisection, keeping the
 * half-open convention, dyadic endpoints, and the exactly-one-root
 * certificate at every step.
 */
inline IsolatingInterval refine(const Poly& p, const SturmChain& chain,
                                IsolatingInterval iv, const Rat& target_width) {
    if (!(target_width > Rat(0))) throw DomainError("refinement width must be positive");
    internal_check(chain.count_in(iv.lo, iv.hi) == 1, "refine needs an isolating interval");
    while (iv.width() > target_width) {
        Rat mid = (iv.lo + iv.hi) / Rat(2);
        if (iv.root_at_hi) {
            iv.lo = mid;    // root pinned at hi; just close in from the left
        } else if (p.eval(mid).is_zero()) {
            iv.hi = mid;
            iv.root_at_hi = true;
        } else if (chain.count_in(iv.lo, mid) == 1) {
            iv.hi = mid;
        } else {
            iv.lo = mid;
        }
        detail::verify_isolating(p, iv.lo, iv.hi, iv.root_at_hi);
    }
    return iv;
}

inline IsolatingInterval refine(const Poly& p, IsolatingInterval iv, const Rat& width) {
    return refine(p, SturmChain(p), std::move(iv), width);
}

/* A real algebraic number: the unique root of `poly` inside `interval`.
 * poly is squarefree on construction paths used here; comparisons refine
 * copies and never mutate the stored interval.
 */
struct RealRoot {
    Poly poly;
    IsolatingInterval interval;
};

// -1, 0, +1 for alpha < q, == q, > q.
inline int compare_root_rat(const RealRoot& a, const Rat& q) {
    if (a.poly.eval(q).is_zero() && a.interval.contains(q)) return 0;
    SturmChain chain(a.poly);
    IsolatingInterval iv = a.interval;
    for (;;) {
        if (q <= iv.lo) return 1;         // alpha > lo >= q
        if (q >= iv.hi) return -1;        // alpha <= hi <= q, and alpha != q
        iv = refine(a.poly, chain, iv, iv.width() / Rat(2));
    }
}

/* -1, 0, +1 comparing two isolated real algebraic numbers.  Equality is
 * decided exactly: a common root can only be shared through gcd(p, q), and
 * if the gcd has a root in the overlap of the two isolating intervals that
 * root must be both of them.  Otherwise refine until the intervals are
 * disjoint in the half-open sense and read off the order.
 */
inline int compare_roots(const RealRoot& a, const RealRoot& b) {
    Poly g = poly_gcd(a.poly, b.poly);
    if (g.degree() >= 1) {
        Rat lo = rat_max(a.interval.lo, b.interval.lo);
        Rat hi = rat_min(a.interval.hi, b.interval.hi);
        if (lo < hi && SturmChain(g).count_in(lo, hi) >= 1) return 0;
    }
    SturmChain ca(a.poly), cb(b.poly);
    IsolatingInterval ia = a.interval, ib = b.interval;
    for (;;) {
        if (ia.hi <= ib.lo) return -1;
        if (ib.hi <= ia.lo) return 1;
        ia = refine(a.poly, ca, ia, ia.width() / Rat(2));
        ib = refine(b.poly, cb, ib, ib.width() / Rat(2));
    }
}

} // namespace cydyn

#endif
