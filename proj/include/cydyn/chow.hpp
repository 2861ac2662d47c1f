#ifndef CYDYN_CHOW_HPP
#define CYDYN_CHOW_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cydyn/lattice.hpp"

namespace cydyn {

/* Chow ring of a product of projective spaces P^{n_1} x ... x P^{n_k},
 * modelled as Z[h_1..h_k] / (h_i^{n_i + 1}): exponent-vector polynomials
 * with truncation applied on every multiplication.  Intersection numbers
 * are coefficients of the top monomial h_1^{n_1}...h_k^{n_k}; that is all
 * the downstream lattice code needs.
 */

struct Ambient {
    std::vector<unsigned> dims;     // n_i >= 1 per factor

    explicit Ambient(std::vector<unsigned> d) : dims(std::move(d)) {
        if (dims.empty()) throw DimensionError("ambient needs at least one factor");
        for (unsigned n : dims)
            if (n == 0) throw DimensionError("ambient factor dimension must be >= 1");
    }

    std::size_t factors() const { return dims.size(); }
    unsigned total_dim() const {
        unsigned t = 0;
        for (unsigned n : dims) t += n;
        return t;
    }
    std::vector<unsigned> top_exponent() const { return dims; }

    friend bool operator==(const Ambient& a, const Ambient& b) { return a.dims == b.dims; }
    friend bool operator!=(const Ambient& a, const Ambient& b) { return !(a == b); }
};

class ChowPoly {
public:
    explicit ChowPoly(Ambient amb) : amb_(std::move(amb)) {}

    static ChowPoly one(const Ambient& amb) {
        ChowPoly p(amb);
        p.terms_[std::vector<unsigned>(amb.factors(), 0)] = 1;
        return p;
    }

    // h_i, 1-based factor index.
    static ChowPoly hyperplane(const Ambient& amb, std::size_t i) {
        if (i < 1 || i > amb.factors()) throw DimensionError("hyperplane index out of range");
        ChowPoly p(amb);
        std::vector<unsigned> e(amb.factors(), 0);
        e[i - 1] = 1;
        if (e[i - 1] <= amb.dims[i - 1]) p.terms_[std::move(e)] = 1;
        return p;
    }

    // sum_j c_j h_j.
    static ChowPoly linear(const Ambient& amb, const std::vector<Int>& coeffs) {
        if (coeffs.size() != amb.factors())
            throw DimensionError("linear class coefficient count mismatch");
        ChowPoly p(amb);
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            if (coeffs[j] == 0) continue;
            std::vector<unsigned> e(amb.factors(), 0);
            e[j] = 1;
            p.terms_[std::move(e)] = coeffs[j];
        }
        return p;
    }

    const Ambient& ambient() const { return amb_; }

    Int coefficient(const std::vector<unsigned>& expo) const {
        auto it = terms_.find(expo);
        return it == terms_.end() ? Int(0) : it->second;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    friend bool operator==(const ChowPoly& a, const ChowPoly& b) {
        return a.amb_ == b.amb_ && a.terms_ == b.terms_;
    }

    friend ChowPoly operator+(const ChowPoly& a, const ChowPoly& b) {
        if (a.amb_ != b.amb_) throw DimensionError("Chow sum across different ambients");
        ChowPoly r = a;
        for (const auto& [e, c] : b.terms_) {
            Int& slot = r.terms_[e];
            slot += c;
            if (slot == 0) r.terms_.erase(e);
        }
        return r;
    }

    friend ChowPoly operator*(const ChowPoly& a, const ChowPoly& b) {
        if (a.amb_ != b.amb_) throw DimensionError("Chow product across different ambients");
        ChowPoly r(a.amb_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                std::vector<unsigned> e(ea.size());
                bool dead = false;
                for (std::size_t i = 0; i < e.size(); ++i) {
                    e[i] = ea[i] + eb[i];
                    if (e[i] > a.amb_.dims[i]) { dead = true; break; }   // h_i^(n_i+1) = 0
                }
                if (dead) continue;
                r.terms_[std::move(e)] += ca * cb;
            }
        // Sweep out exact cancellations to keep the no-zero-terms invariant.
        for (auto it = r.terms_.begin(); it != r.terms_.end();) {
            if (it->second == 0) it = r.terms_.erase(it);
            else ++it;
        }
        return r;
    }

private:
    Ambient amb_;
    std::map<std::vector<unsigned>, Int> terms_;
};

/* A complete intersection inside the ambient product: one multidegree row
 * per defining hypersurface.
 */
struct CompleteIntersection {
    std::vector<std::vector<Int>> degrees;      // rows: hypersurfaces; cols: factors

    std::size_t codim() const { return degrees.size(); }

    void validate(const Ambient& amb) const {
        for (const auto& row : degrees) {
            if (row.size() != amb.factors())
                throw DimensionError("hypersurface multidegree length mismatch");
            for (const Int& d : row)
                if (d < 0) throw DomainError("hypersurface multidegree must be nonnegative");
        }
        if (codim() > amb.total_dim())
            throw DimensionError("complete intersection codimension exceeds ambient dimension");
    }

    // Product of the defining classes, truncated in the ambient ring.
    ChowPoly cls(const Ambient& amb) const {
        validate(amb);
        ChowPoly p = ChowPoly::one(amb);
        for (const auto& row : degrees) p = p * ChowPoly::linear(amb, row);
        return p;
    }
};

/* Intersection number [X] . h_1^{e_1} ... h_k^{e_k} on the complete
 * intersection X: coefficient of the top monomial in the product.  The
 * exponents must complement the codimension exactly; exponents that
 * overshoot a factor's dimension give 0 (the cycle misses X), which is a
 * value, not an error.
 */
inline Int intersection_number(const Ambient& amb, const CompleteIntersection& ci,
                               const std::vector<unsigned>& exponents) {
    if (exponents.size() != amb.factors())
        throw DimensionError("intersection exponent count mismatch");
    unsigned total = 0;
    for (unsigned e : exponents) total += e;
    if (total + ci.codim() != amb.total_dim())
        throw DimensionError("intersection degree mismatch: exponents sum to " +
                             std::to_string(total) + ", expected " +
                             std::to_string(amb.total_dim() - ci.codim()));
    ChowPoly mono(amb);
    {
        ChowPoly acc = ChowPoly::one(amb);
        for (std::size_t i = 0; i < exponents.size(); ++i)
            for (unsigned rep = 0; rep < exponents[i]; ++rep)
                acc = acc * ChowPoly::hyperplane(amb, i + 1);
        mono = acc;
    }
    return (ci.cls(amb) * mono).coefficient(amb.top_exponent());
}

/* The cubic form of a complete-intersection threefold, one generator per
 * ambient factor: T(i,j,k) = X . h_i h_j h_k.
 */
inline TripleForm triple_form_from_ambient(const Ambient& amb, const CompleteIntersection& ci) {
    ci.validate(amb);
    if (amb.total_dim() - ci.codim() != 3)
        throw DimensionError("triple form needs a threefold (ambient dim minus codim = 3)");
    std::size_t rho = amb.factors();
    std::vector<Int> table(rho * rho * rho);
    for (std::size_t i = 0; i < rho; ++i)
        for (std::size_t j = 0; j < rho; ++j)
            for (std::size_t k = 0; k < rho; ++k) {
                std::vector<unsigned> e(rho, 0);
                ++e[i]; ++e[j]; ++e[k];
                table[(i * rho + j) * rho + k] = intersection_number(amb, ci, e);
            }
    return TripleForm(rho, std::move(table));
}

} // namespace cydyn

#endif
