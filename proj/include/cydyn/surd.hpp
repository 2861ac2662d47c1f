#ifndef CYDYN_SURD_HPP
#define CYDYN_SURD_HPP

#include <string>
#include <utility>

#include "cydyn/poly.hpp"
#include "cydyn/sturm.hpp"

namespace cydyn {

/* Exact numbers of the form a + b*sqrt(d), the closed form the dominant
 * eigenvalue takes when its minimal polynomial is quadratic.  d is kept
 * squarefree so the representation is unique; comparisons are exact sign
 * arguments (move the rational part across, square, compare), never
 * numerical.
 */

/* n = w^2 * d with d squarefree, for n >= 1.  Trial division by primes up
 * to 10^6, then the leftover cofactor is either a perfect square (absorbed
 * into w) or treated as squarefree: a missed square factor would need a
 * prime above 10^6 squared, i.e. a factor beyond 10^12, far past anything a
 * characteristic polynomial discriminant produces here.
 */
inline std::pair<Int, Int> extract_square_part(Int n) {
    if (n < 1) throw DomainError("square part extraction needs n >= 1");
    Int w = 1, d = 1;
    auto strip = [&](const Int& p) {
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e == 0) return;
        w *= int_pow(p, e / 2);
        if (e % 2 == 1) d *= p;
    };
    strip(2);
    for (Int p = 3; p <= 1000000 && p * p <= n; p += 2) strip(p);
    if (n > 1) {
        Int s;
        if (is_perfect_square(n, &s)) w *= s;
        else d *= n;
    }
    return {w, d};
}

class QuadraticSurd {
public:
    // a + b*sqrt(d); requires b != 0 and d squarefree >= 2.
    QuadraticSurd(Rat a, Rat b, Int d)
        : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
        if (b_.is_zero()) throw DomainError("surd with zero irrational part");
        if (d_ < 2) throw DomainError("surd radicand must be >= 2");
        auto [w, sf] = extract_square_part(d_);
        if (w != 1 || sf != d_) throw DomainError("surd radicand must be squarefree");
    }

    const Rat& rational_part() const { return a_; }
    const Rat& radical_coeff() const { return b_; }
    const Int& radicand() const { return d_; }

    QuadraticSurd conjugate() const { return QuadraticSurd(a_, -b_, d_); }
    QuadraticSurd negated() const { return QuadraticSurd(-a_, -b_, d_); }

    // (a + b sqrt d)(a - b sqrt d) = a^2 - d b^2.
    Rat norm() const { return a_ * a_ - Rat(d_) * b_ * b_; }

    // t^2 - 2a t + (a^2 - d b^2): monic, kills both conjugates.
    Poly min_poly() const {
        return Poly({norm(), Rat(-2) * a_, Rat(1)});
    }

    int sign() const { return sign_of(a_, b_, d_); }

    // Exact comparison with a rational: sign of (a - r) + b*sqrt(d).
    int compare(const Rat& r) const { return sign_of(a_ - r, b_, d_); }

    // Exact comparison with another surd over the same radicand.
    int compare(const QuadraticSurd& o) const {
        if (d_ != o.d_) throw DomainError("surd comparison across different radicands");
        return sign_of(a_ - o.a_, b_ - o.b_, d_);
    }

    bool in_interval(const Rat& lo, const Rat& hi) const {
        return compare(lo) > 0 && compare(hi) <= 0;   // (lo, hi], matching isolation
    }

    // The number as the distinguished root of its minimal polynomial.
    RealRoot to_real_root() const {
        Poly mp = min_poly();
        auto intervals = isolate_real_roots(mp);
        internal_check(intervals.size() == 2, "surd minimal polynomial must have two real roots");
        return {mp, b_.sign() > 0 ? intervals[1] : intervals[0]};
    }

    // "1351 + 780*sqrt(3)"
    std::string str() const {
        std::string s = a_.str();
        s += b_.sign() < 0 ? " - " : " + ";
        Rat mag = b_.abs();
        if (mag != Rat(1)) s += mag.str() + "*";
        return s + "sqrt(" + d_.str() + ")";
    }

private:
    // sign of x + y*sqrt(d), y allowed zero here.
    static int sign_of(const Rat& x, const Rat& y, const Int& d) {
        if (y.is_zero()) return x.sign();
        if (x.is_zero()) return y.sign();
        if (x.sign() > 0 && y.sign() > 0) return 1;
        if (x.sign() < 0 && y.sign() < 0) return -1;
        // Opposite signs: compare x^2 against d y^2; equality would force
        // sqrt(d) rational, impossible for squarefree d >= 2.
        Rat lhs = x * x, rhs = Rat(d) * y * y;
        internal_check(lhs != rhs, "surd equal to a rational");
        if (x.sign() > 0) return lhs > rhs ? 1 : -1;    // x > 0, y < 0
        return lhs < rhs ? 1 : -1;                      // x < 0, y > 0
    }

    Rat a_, b_;
    Int d_;
};

/* The conjugate pair a +- b*sqrt(d), b > 0: what a real quadratic factor
 * contributes to the eigenvalue list.  sum and product recover the monic
 * quadratic's coefficients, which makes for cheap exactness cross-checks.
 */
struct SurdPair {
    Rat a;
    Rat b;      // > 0
    Int d;      // squarefree >= 2

    QuadraticSurd plus() const { return QuadraticSurd(a, b, d); }
    QuadraticSurd minus() const { return QuadraticSurd(a, -b, d); }
    Rat sum() const { return Rat(2) * a; }
    Rat product() const { return a * a - Rat(d) * b * b; }
};

/* Both roots of a degree-2 polynomial with positive non-square discriminant,
 * as a surd pair.  Errors out when the roots are rational (that belongs to
 * rational_roots) or complex.
 */
inline SurdPair surd_roots_of_quadratic(const Poly& q) {
    if (q.degree() != 2) throw DomainError("surd extraction needs a quadratic");
    Poly m = q.monic();
    Rat c1 = m.coeff(1), c0 = m.coeff(0);
    Rat disc = c1 * c1 - Rat(4) * c0;
    if (disc.sign() < 0) throw DomainError("quadratic has complex roots");
    if (disc.sign() == 0) throw DomainError("quadratic has a repeated rational root");
    // sqrt(N/D) = sqrt(N*D)/D; split N*D into square part and radicand.
    Int nd = disc.num() * disc.den();
    auto [w, d] = extract_square_part(nd);
    if (d == 1) throw DomainError("quadratic splits over Q, no surd needed");
    return SurdPair{-c1 / Rat(2), Rat(w, 2 * disc.den()), d};
}

} // namespace cydyn

#endif
