#ifndef CYDYN_RAT_HPP
#define CYDYN_RAT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <utility>

#include "cydyn/errors.hpp"

namespace cydyn {

/* Exact rational arithmetic over arbitrary-precision integers.
 *
 * Int is boost's cpp_int (header-only, no external deps).  Rat keeps the
 * invariant gcd(|num|, den) == 1, den > 0, and 0 == 0/1 at all times; every
 * constructor and operator normalizes eagerly.  There is deliberately no
 * conversion to or from floating point anywhere: decimal rendering goes
 * through exact integer division (see decimal_string).
 */

using Int = boost::multiprecision::cpp_int;

inline Int int_abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int int_gcd(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(a, b);
}

inline Int int_lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return int_abs(a / int_gcd(a, b) * b);
}

// Floor division (cpp_int's operator/ truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
    internal_check(b != 0, "floor_div by zero");
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Largest s with s*s <= n.  boost's sqrt on cpp_int is exactly this.
inline Int isqrt(const Int& n) {
    if (n < 0) throw DomainError("isqrt of negative integer");
    return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int s = isqrt(n);
    if (s * s != n) return false;
    if (root) *root = s;
    return true;
}

inline Int int_pow(const Int& base, unsigned exp) {
    Int r = 1, b = base;
    for (unsigned e = exp; e != 0; e >>= 1) {
        if (e & 1u) r *= b;
        b *= b;
    }
    return r;
}

class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(Int n) : num_(std::move(n)), den_(1) {}          // NOLINT(google-explicit-constructor)
    Rat(long long n) : num_(n), den_(1) {}               // NOLINT(google-explicit-constructor)
    Rat(int n) : num_(n), den_(1) {}                     // NOLINT(google-explicit-constructor)
    Rat(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rat operator-() const { return Rat(unchecked{}, -num_, den_); }

    Rat& operator+=(const Rat& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rat& operator-=(const Rat& o) { return *this += -o; }
    Rat& operator*=(const Rat& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rat& operator/=(const Rat& o) {
        if (o.num_ == 0) throw DomainError("rational division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    Rat abs() const { return num_ < 0 ? -*this : *this; }

    Rat inverse() const {
        if (num_ == 0) throw DomainError("inverse of zero");
        return Rat(unchecked{}, num_ < 0 ? -den_ : den_, int_abs(num_));
    }

    Rat pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        return Rat(unchecked{}, int_pow(num_, unsigned(e)), int_pow(den_, unsigned(e)));
    }

    Int floor() const { return floor_div(num_, den_); }
    Int ceil() const { return -floor_div(-num_, den_); }

    // "a/b", or just "a" when the denominator is 1.
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

private:
    struct unchecked {};
    // Caller guarantees gcd-reduced with positive denominator.
    Rat(unchecked, Int n, Int d) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize() {
        if (den_ == 0) throw DomainError("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        if (num_ == 0) { den_ = 1; return; }
        Int g = int_gcd(int_abs(num_), den_);
        if (g != 1) { num_ /= g; den_ /= g; }
    }

    Int num_;
    Int den_;
};

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

/* Decimal rendering with `digits` places after the point, truncated toward
 * -infinity so the printed value never overstates the number.  Used for the
 * human-facing approximations; the exact value always travels alongside.
 */
inline std::string decimal_string(const Rat& x, unsigned digits) {
    Int scaled = floor_div(x.num() * int_pow(10, digits), x.den());
    bool neg = scaled < 0;
    std::string raw = int_abs(scaled).str();
    if (raw.size() <= digits) raw.insert(0, digits + 1 - raw.size(), '0');
    std::string out = raw.substr(0, raw.size() - digits);
    if (digits > 0) out += "." + raw.substr(raw.size() - digits);
    return neg ? "-" + out : out;
}

// Parses "a" or "a/b" with optional leading minus; anything else is an error.
inline Rat parse_rat(const std::string& tok) {
    auto is_int_token = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    std::size_t slash = tok.find('/');
    if (slash == std::string::npos) {
        if (!is_int_token(tok)) throw DomainError("not a rational: '" + tok + "'");
        return Rat(Int(tok));
    }
    std::string n = tok.substr(0, slash), d = tok.substr(slash + 1);
    if (!is_int_token(n) || !is_int_token(d))
        throw DomainError("not a rational: '" + tok + "'");
    Int den(d);
    if (den == 0) throw DomainError("zero denominator: '" + tok + "'");
    return Rat(Int(n), den);
}

} // namespace cydyn

#endif
