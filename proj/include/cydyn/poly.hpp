#ifndef CYDYN_POLY_HPP
#define CYDYN_POLY_HPP

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "cydyn/rat.hpp"

namespace cydyn {

/* Univariate polynomials over Rat.
 *
 * Coefficients are stored ascending (c[k] multiplies t^k) and kept trimmed:
 * the zero polynomial is the empty vector and everything else has a nonzero
 * leading coefficient.  degree() is -1 for the zero polynomial.  All
 * arithmetic is exact.
 */

class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(Rat v) { return Poly({std::move(v)}); }
    // t - r, handy for assembling factorizations.
    static Poly linear_root(const Rat& r) { return Poly({-r, Rat(1)}); }

    const std::vector<Rat>& coeffs() const { return c_; }
    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    Rat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }
    const Rat& leading() const {
        if (c_.empty()) throw DomainError("leading coefficient of zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back() == Rat(1); }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }

    friend Poly operator*(const Rat& s, const Poly& p) {
        if (s.is_zero()) return Poly();
        Poly r = p;
        for (auto& x : r.c_) x *= s;
        return r;
    }

    Rat eval(const Rat& x) const {          // Horner
        Rat acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<Rat> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rat(Int(i)) * c_[i];
        return Poly(std::move(d));
    }

    // p(-t): flips the sign of odd coefficients.
    Poly reflect() const {
        Poly r = *this;
        for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
        return r;
    }

    Poly monic() const {
        if (is_zero()) throw DomainError("monic of zero polynomial");
        return leading().inverse() * *this;
    }

    // Multiplies by t^k.
    Poly shifted(std::size_t k) const {
        if (is_zero()) return Poly();
        std::vector<Rat> c(c_.size() + k, Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) c[i + k] = c_[i];
        return Poly(std::move(c));
    }

    // Ascending-order rendering: "1 - 2703*t + 2703*t^2 - t^3".
    std::string str(const std::string& var = "t") const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const Rat& a = c_[i];
            if (a.is_zero()) continue;
            Rat mag = a.abs();
            if (out.empty())
                out += (a.sign() < 0) ? "-" : "";
            else
                out += (a.sign() < 0) ? " - " : " + ";
            bool unit = (mag == Rat(1)) && i > 0;
            if (!unit) out += mag.str();
            if (i > 0) {
                if (!unit) out += "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out.empty() ? "0" : out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rat> c_;
};

/* Exact division with remainder: a = q*b + r, deg r < deg b.  Throws on a
 * zero divisor.  All arithmetic over Rat, so this is plain long division.
 */
inline std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<Rat> rem(a.coeffs());
    std::vector<Rat> quo(std::size_t(a.degree() - b.degree()) + 1, Rat(0));
    Rat lead_inv = b.leading().inverse();
    for (std::size_t k = quo.size(); k-- > 0;) {
        Rat q = rem[k + std::size_t(b.degree())] * lead_inv;
        quo[k] = q;
        if (q.is_zero()) continue;
        for (int i = 0; i <= b.degree(); ++i)
            rem[k + std::size_t(i)] -= q * b.coeff(std::size_t(i));
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

// Quotient when the division is known exact; errors if a remainder shows up.
inline Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divrem(a, b);
    internal_check(r.is_zero(), "exact_div had nonzero remainder");
    return q;
}

// Monic gcd by Euclid's algorithm; gcd(0,0) is defined as 0.
inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

inline bool is_squarefree(const Poly& p) {
    if (p.is_zero()) throw DomainError("squarefree test on zero polynomial");
    if (p.degree() <= 1) return true;
    return poly_gcd(p, p.derivative()).degree() == 0;
}

// p / gcd(p, p'): same roots, all simple.
inline Poly squarefree_part(const Poly& p) {
    if (p.is_zero()) throw DomainError("squarefree part of zero polynomial");
    if (p.degree() <= 1) return p.monic();
    Poly g = poly_gcd(p, p.derivative());
    if (g.degree() == 0) return p.monic();
    return exact_div(p, g).monic();
}

/* Writes p as scale * P with P integer-coefficient, primitive (content 1),
 * and positive leading coefficient; scale carries sign and denominators.
 * Requires p nonzero.
 */
inline std::pair<std::vector<Int>, Rat> primitive_integer_coeffs(const Poly& p) {
    if (p.is_zero()) throw DomainError("primitive scaling of zero polynomial");
    Int den_lcm = 1;
    for (const Rat& a : p.coeffs()) den_lcm = int_lcm(den_lcm, a.den());
    std::vector<Int> ints(p.coeffs().size());
    Int content = 0;
    for (std::size_t i = 0; i < ints.size(); ++i) {
        ints[i] = p.coeffs()[i].num() * (den_lcm / p.coeffs()[i].den());
        content = int_gcd(content, int_abs(ints[i]));
    }
    bool negate = ints.back() < 0;
    for (auto& v : ints) {
        v /= content;
        if (negate) v = -v;
    }
    Rat scale = Rat(negate ? -content : content, den_lcm);
    return {std::move(ints), std::move(scale)};
}

} // namespace cydyn

#endif
