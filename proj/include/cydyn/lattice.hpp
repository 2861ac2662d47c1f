#ifndef CYDYN_LATTICE_HPP
#define CYDYN_LATTICE_HPP

#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cydyn/matrix.hpp"

namespace cydyn {

/* The divisor-class lattice of a threefold, seen through its cubic
 * intersection form, together with one-sided effectivity reasoning.
 *
 * Everything here proves exclusions only: a certificate says "this class
 * cannot be effective" (it pairs negatively against a curve class that
 * moves in a covering family, possibly after pushing forward along known
 * birational maps) or "this class cannot be nef".  Membership in the
 * effective or nef cone is never claimed; absence of a certificate means
 * unknown, not effective.
 */

struct DivisorClass {
    std::vector<Rat> v;     // coordinates in the divisor basis L_1..L_rho

    std::size_t rank() const { return v.size(); }
    DivisorClass negated() const {
        DivisorClass d = *this;
        for (auto& x : d.v) x = -x;
        return d;
    }
    bool is_zero() const {
        for (const auto& x : v) if (!x.is_zero()) return false;
        return true;
    }
    friend bool operator==(const DivisorClass& a, const DivisorClass& b) { return a.v == b.v; }
};

struct CurveClass {
    std::vector<Rat> v;     // coordinates in the dual basis

    std::size_t rank() const { return v.size(); }
    CurveClass negated() const {
        CurveClass c = *this;
        for (auto& x : c.v) x = -x;
        return c;
    }
    bool is_zero() const {
        for (const auto& x : v) if (!x.is_zero()) return false;
        return true;
    }
    friend bool operator==(const CurveClass& a, const CurveClass& b) { return a.v == b.v; }
};

// Natural pairing: divisor coordinates against dual-basis curve coordinates.
inline Rat pairing(const DivisorClass& d, const CurveClass& c) {
    if (d.rank() != c.rank()) throw DimensionError("pairing rank mismatch");
    Rat s(0);
    for (std::size_t i = 0; i < d.v.size(); ++i) s += d.v[i] * c.v[i];
    return s;
}

// "L1 - 2*L2 + L3" from coordinates; symbol defaults to the divisor basis.
inline std::string basis_combo_str(const std::vector<Rat>& v, const std::string& symbol = "L") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        Rat mag = v[i].abs();
        if (out.empty())
            out += v[i].sign() < 0 ? "-" : "";
        else
            out += v[i].sign() < 0 ? " - " : " + ";
        if (mag != Rat(1)) out += mag.str() + "*";
        out += symbol + std::to_string(i + 1);
    }
    return out.empty() ? "0" : out;
}

inline std::string coords_str(const std::vector<Rat>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? ", " : "") + v[i].str();
    return out + ")";
}

/* Symmetric integral trilinear form T(i,j,k) = L_i . L_j . L_k on a rank-rho
 * lattice; stored dense, validated symmetric on construction.
 */
class TripleForm {
public:
    TripleForm(std::size_t rank, std::vector<Int> table)
        : rank_(rank), t_(std::move(table)) {
        if (t_.size() != rank_ * rank_ * rank_)
            throw DimensionError("triple form table size mismatch");
        for (std::size_t i = 0; i < rank_; ++i)
            for (std::size_t j = 0; j < rank_; ++j)
                for (std::size_t k = 0; k < rank_; ++k) {
                    const Int& v = at(i, j, k);
                    if (v != at(i, k, j) || v != at(j, i, k))
                        throw DomainError("triple form is not symmetric");
                }
    }

    std::size_t rank() const { return rank_; }

    // 0-based indices.
    const Int& at(std::size_t i, std::size_t j, std::size_t k) const {
        if (i >= rank_ || j >= rank_ || k >= rank_)
            throw DimensionError("triple form index out of range");
        return t_[(i * rank_ + j) * rank_ + k];
    }

    // T extended trilinearly to rational coordinates.
    Rat eval(const std::vector<Rat>& x, const std::vector<Rat>& y,
             const std::vector<Rat>& z) const {
        if (x.size() != rank_ || y.size() != rank_ || z.size() != rank_)
            throw DimensionError("triple form evaluation rank mismatch");
        Rat s(0);
        for (std::size_t i = 0; i < rank_; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < rank_; ++j) {
                if (y[j].is_zero()) continue;
                for (std::size_t k = 0; k < rank_; ++k)
                    s += x[i] * y[j] * z[k] * Rat(at(i, j, k));
            }
        }
        return s;
    }

private:
    std::size_t rank_;
    std::vector<Int> t_;
};

/* Class of the curves cut out by the fibers of the i-th fibration (1-based):
 * pairing of L_j with a fiber curve is L_j . L_i . L_i.
 */
inline CurveClass fiber_curve_class(const TripleForm& form, std::size_t i) {
    if (i < 1 || i > form.rank()) throw DimensionError("fibration index out of range");
    CurveClass c;
    c.v.resize(form.rank());
    for (std::size_t j = 0; j < form.rank(); ++j)
        c.v[j] = Rat(form.at(j, i - 1, i - 1));
    return c;
}

/* Intersection form of the surface obtained by restricting to a general
 * member of the i-th pencil (1-based): b(x, y) = T(x, y, L_i).  Symmetric
 * by symmetry of T.
 */
inline Mat restrict_to_surface(const TripleForm& form, std::size_t i) {
    if (i < 1 || i > form.rank()) throw DimensionError("fibration index out of range");
    Mat b(form.rank(), form.rank());
    for (std::size_t j = 0; j < form.rank(); ++j)
        for (std::size_t k = 0; k < form.rank(); ++k)
            b.at(j, k) = Rat(form.at(j, k, i - 1));
    return b;
}

struct CoveringCurve {
    CurveClass cls;
    std::string provenance;     // e.g. "fiber of projection 2"
};

struct EffectiveWitness {
    DivisorClass cls;
    std::string provenance;     // e.g. "basis divisor L1"
};

/* A lattice plus the one-sided cone data this tool is allowed to use:
 * divisor classes known effective and curve classes known to move in
 * covering families.  The basis divisors are taken effective (they are
 * restrictions of very ample classes from upstairs); fibration fibers give
 * the covering curves.
 */
class LatticeContext {
public:
    LatticeContext(TripleForm form, std::vector<std::size_t> fibration_indices,
                   std::vector<EffectiveWitness> extra_witnesses = {})
        : form_(std::move(form)), fibrations_(std::move(fibration_indices)) {
        std::size_t rho = form_.rank();
        for (std::size_t i = 1; i <= rho; ++i) {
            DivisorClass d;
            d.v.assign(rho, Rat(0));
            d.v[i - 1] = Rat(1);
            effective_.push_back({std::move(d), "basis divisor L" + std::to_string(i)});
        }
        for (auto& w : extra_witnesses) {
            if (w.cls.rank() != rho) throw DimensionError("effective witness rank mismatch");
            effective_.push_back(std::move(w));
        }
        for (std::size_t idx : fibrations_) {
            covering_.push_back({fiber_curve_class(form_, idx),
                                 "fiber of projection " + std::to_string(idx)});
        }
    }

    std::size_t rank() const { return form_.rank(); }
    const TripleForm& form() const { return form_; }
    const std::vector<std::size_t>& fibrations() const { return fibrations_; }
    const std::vector<EffectiveWitness>& effective_witnesses() const { return effective_; }
    const std::vector<CoveringCurve>& covering_curves() const { return covering_; }

private:
    TripleForm form_;
    std::vector<std::size_t> fibrations_;
    std::vector<EffectiveWitness> effective_;
    std::vector<CoveringCurve> covering_;
};

// A named pushforward matrix used to transport classes along the orbit.
struct Transport {
    std::string name;
    Mat pushforward;
};

enum class ExclusionKind {
    CoveringCurveKind,      // the class itself pairs negatively with a covering curve
    OrbitTransportKind,     // some pushforward image of it does
};

/* Proof that a divisor class is not effective.  Replayable: apply the
 * transports named in `word` (in order) to `excluded`, pair the image with
 * `curve`; the result is `pairing` < 0.  An effective class would stay
 * effective under pushforward and pair >= 0 against a curve moving through
 * every point, so no such word can exist for one.
 */
struct ExclusionCertificate {
    ExclusionKind kind;
    DivisorClass excluded;
    std::vector<std::string> word;      // transport names, applied left to right
    DivisorClass transported;           // image of excluded under the word
    CurveClass curve;
    std::string curve_provenance;
    Rat pairing_value;                  // < 0
};

/* Breadth-first search for an exclusion certificate: test the class against
 * every covering curve, then every single pushforward image, then words of
 * length 2, ... up to max_depth.  Returns the first certificate found
 * (shortest word; ties broken by transport order, then curve order), or
 * nothing.  "Nothing" carries no information about effectivity.
 */
inline std::optional<ExclusionCertificate> exclude_from_eff(
    const LatticeContext& ctx, const DivisorClass& d,
    const std::vector<Transport>& transports, unsigned max_depth = 3) {
    if (d.rank() != ctx.rank()) throw DimensionError("divisor class rank mismatch");
    for (const Transport& t : transports)
        if (!t.pushforward.is_square() || t.pushforward.rows() != ctx.rank())
            throw DimensionError("transport matrix shape mismatch");

    struct Node { std::vector<std::string> word; std::vector<Rat> image; };
    std::deque<Node> queue;
    queue.push_back({{}, d.v});
    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();
        for (const CoveringCurve& c : ctx.covering_curves()) {
            Rat p = pairing(DivisorClass{node.image}, c.cls);
            if (p.sign() < 0) {
                return ExclusionCertificate{
                    node.word.empty() ? ExclusionKind::CoveringCurveKind
                                      : ExclusionKind::OrbitTransportKind,
                    d, node.word, DivisorClass{node.image}, c.cls, c.provenance, p};
            }
        }
        if (node.word.size() < max_depth) {
            for (const Transport& t : transports) {
                Node next;
                next.word = node.word;
                next.word.push_back(t.name);
                next.image = mat_vec(t.pushforward, node.image);
                queue.push_back(std::move(next));
            }
        }
    }
    return std::nullopt;
}

/* Depth-1 cross-check used by the diagnostics: does the image of d under
 * this one transport already pair negatively with some covering curve?
 */
inline std::optional<ExclusionCertificate> transport_check(
    const LatticeContext& ctx, const DivisorClass& d, const Transport& t) {
    if (d.rank() != ctx.rank()) throw DimensionError("divisor class rank mismatch");
    DivisorClass image{mat_vec(t.pushforward, d.v)};
    for (const CoveringCurve& c : ctx.covering_curves()) {
        Rat p = pairing(image, c.cls);
        if (p.sign() < 0) {
            return ExclusionCertificate{ExclusionKind::OrbitTransportKind,
                                        d, {t.name}, image, c.cls, c.provenance, p};
        }
    }
    return std::nullopt;
}

// Replays a certificate from scratch against the context; used by tests and
// by the acceptance gate before trusting any stored certificate.
inline bool revalidate_certificate(const LatticeContext& ctx,
                                   const std::vector<Transport>& transports,
                                   const ExclusionCertificate& cert) {
    std::vector<Rat> image = cert.excluded.v;
    for (const std::string& name : cert.word) {
        const Transport* found = nullptr;
        for (const Transport& t : transports)
            if (t.name == name) { found = &t; break; }
        if (!found) return false;
        image = mat_vec(found->pushforward, image);
    }
    if (DivisorClass{image} != cert.transported) return false;
    bool curve_known = false;
    for (const CoveringCurve& c : ctx.covering_curves())
        if (c.cls == cert.curve && c.provenance == cert.curve_provenance) {
            curve_known = true;
            break;
        }
    if (!curve_known) return false;
    Rat p = pairing(cert.transported, cert.curve);
    if (p != cert.pairing_value) return false;
    if (cert.kind == ExclusionKind::CoveringCurveKind && !cert.word.empty()) return false;
    if (cert.kind == ExclusionKind::OrbitTransportKind && cert.word.empty()) return false;
    return p.sign() < 0;
}

/* Proof that neither +u nor -u can be the class of a nef curve: each sign
 * pairs negatively with a divisor class known to be effective.  Both signs
 * are required; one alone proves nothing about the ray pair.
 */
struct NefExclusion {
    CurveClass candidate;
    DivisorClass witness;
    std::string witness_provenance;
    Rat pairing_value;      // < 0
};

struct NefExclusionPair {
    NefExclusion plus;
    NefExclusion minus;
};

inline std::optional<NefExclusionPair> exclude_nef_curve(const LatticeContext& ctx,
                                                         const CurveClass& u) {
    if (u.rank() != ctx.rank()) throw DimensionError("curve class rank mismatch");
    if (u.is_zero()) throw DomainError("nef exclusion of the zero curve class");
    auto one_sign = [&](const CurveClass& c) -> std::optional<NefExclusion> {
        for (const EffectiveWitness& w : ctx.effective_witnesses()) {
            Rat p = pairing(w.cls, c);
            if (p.sign() < 0) return NefExclusion{c, w.cls, w.provenance, p};
        }
        return std::nullopt;
    };
    auto plus = one_sign(u);
    if (!plus) return std::nullopt;
    auto minus = one_sign(u.negated());
    if (!minus) return std::nullopt;
    return NefExclusionPair{std::move(*plus), std::move(*minus)};
}

} // namespace cydyn

#endif
