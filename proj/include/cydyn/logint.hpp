#ifndef CYDYN_LOGINT_HPP
#define CYDYN_LOGINT_HPP

#include <utility>

#include "cydyn/rat.hpp"

namespace cydyn {

/* Rigorous natural-log enclosures in pure rational arithmetic, for turning
 * a dynamical-degree enclosure into an entropy enclosure.  No floating
 * point: ln is summed as 2*atanh((x-1)/(x+1)) after range-reducing x into
 * [1, 2) by exact powers of two, with the series tail bounded geometrically
 * and all results rounded outward onto the 2^-60 grid.
 */

struct LogInterval {
    Rat lo, hi;     // lo <= ln(x) <= hi
};

namespace detail {

inline Rat round_down_dyadic(const Rat& x, unsigned bits) {
    Int scale = int_pow(2, bits);
    return Rat(floor_div(x.num() * scale, x.den()), scale);
}

inline Rat round_up_dyadic(const Rat& x, unsigned bits) {
    return -round_down_dyadic(-x, bits);
}

/* 2*atanh(z) = 2 * sum z^(2n+1)/(2n+1) for |z| < 1; here 0 <= z < 1/2.
 * Tail after the last added term t_N = z^(2N+1)/(2N+1) is at most
 * t_N * z^2 / (1 - z^2).  Returns a pre-rounding enclosure.
 */
inline std::pair<Rat, Rat> two_atanh(const Rat& z, const Rat& tail_target) {
    internal_check(z.sign() >= 0 && z < Rat(1, 2), "two_atanh range reduction failed");
    if (z.is_zero()) return {Rat(0), Rat(0)};
    Rat z2 = z * z;
    Rat geom = z2 / (Rat(1) - z2);
    Rat term = z;       // z^(2n+1) for n = 0
    Rat sum(0);
    for (unsigned n = 0;; ++n) {
        sum += term / Rat(Int(2 * n + 1));
        Rat tail = (term / Rat(Int(2 * n + 1))) * geom;
        if (tail < tail_target) {
            return {Rat(2) * sum, Rat(2) * (sum + tail)};
        }
        term *= z2;
        internal_check(n < 500, "atanh series failed to converge");
    }
}

} // namespace detail

// ln(2) enclosure at the working precision; 2 reduces to z = 1/3.
inline LogInterval ln2_interval() {
    static const LogInterval cached = [] {
        auto [lo, hi] = detail::two_atanh(Rat(1, 3), Rat(1, int_pow(2, 80)));
        return LogInterval{detail::round_down_dyadic(lo, 60), detail::round_up_dyadic(hi, 60)};
    }();
    return cached;
}

/* Enclosure of ln(x) for rational x > 0, outward-rounded to 2^-60.  Exact
 * for x = 1.  Width stays a few ulps of the grid: the series tail is pushed
 * to 2^-80 and the only other slack is k times the ln(2) rounding.
 */
inline LogInterval log_interval(const Rat& x) {
    if (x.sign() <= 0) throw DomainError("logarithm of non-positive rational");
    Rat m = x;
    long long k = 0;
    while (m < Rat(1)) { m *= Rat(2); --k; }
    while (m >= Rat(2)) { m /= Rat(2); ++k; }
    // m in [1, 2)  =>  z = (m-1)/(m+1) in [0, 1/3)
    Rat z = (m - Rat(1)) / (m + Rat(1));
    auto [mlo, mhi] = detail::two_atanh(z, Rat(1, int_pow(2, 80)));
    LogInterval l2 = ln2_interval();
    Rat klo, khi;
    if (k >= 0) {
        klo = Rat(Int(k)) * l2.lo;
        khi = Rat(Int(k)) * l2.hi;
    } else {
        klo = Rat(Int(k)) * l2.hi;
        khi = Rat(Int(k)) * l2.lo;
    }
    return {detail::round_down_dyadic(klo + mlo, 60),
            detail::round_up_dyadic(khi + mhi, 60)};
}

} // namespace cydyn

#endif
