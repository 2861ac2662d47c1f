#ifndef CYDYN_PRIMITIVITY_HPP
#define CYDYN_PRIMITIVITY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cydyn/factor.hpp"
#include "cydyn/lattice.hpp"
#include "cydyn/matrix.hpp"
#include "cydyn/translation.hpp"

namespace cydyn {

/* The imprimitivity-obstruction engine.
 *
 * A composite map could fail to be "genuinely 3-dimensional" in two ways:
 * it could preserve a fibration (a fixed effective divisor class sweeping
 * one out) or a stable face of the effective cone could exhibit an
 * invariant subvariety structure.  Both obstructions live on rational
 * M-stable data, so they can be attacked with exact certificates:
 *
 *   condition 1: the fixed subspace of the pullback either is zero, or its
 *     generator ray is excluded from the effective cone on both sides;
 *   condition 2: every proper nonzero rational M-stable subspace is
 *     discharged, by ray exclusion (dimension 1) or by excluding the
 *     annihilator from being a nef curve class (codimension 1).
 *
 * Everything is tri-state: certified yes, certified obstruction data, or
 * inconclusive-with-reason.  The final verdict is Primitive only when both
 * conditions are certified, the subspace enumeration is provably complete,
 * and the geometric hypotheses (which a lattice cannot see) were declared
 * by the caller.
 */

// --- irreducibility of the characteristic polynomial (the shortcut) -----

enum class IrredStatus { Irreducible, Reducible, Unresolved };

struct IrreducibilityResult {
    IrredStatus status;
    std::string reason;
    std::optional<Poly> witness_factor;     // a proper factor, when Reducible

    std::string status_str() const {
        switch (status) {
            case IrredStatus::Irreducible: return "irreducible";
            case IrredStatus::Reducible: return "reducible";
            default: return "unresolved";
        }
    }
};

inline IrreducibilityResult check_irreducibility(const Poly& p) {
    if (p.is_zero() || p.degree() < 1)
        throw DomainError("irreducibility check needs degree >= 1");
    if (p.degree() == 1)
        return {IrredStatus::Irreducible, "degree 1", std::nullopt};
    Poly g = poly_gcd(p, p.derivative());
    if (g.degree() >= 1)
        return {IrredStatus::Reducible, "repeated factor " + g.str(), g};
    FactorizationQ fac = factor_over_q(p);
    if (fac.parts.size() >= 2)
        return {IrredStatus::Reducible,
                "splits off factor " + fac.parts.front().poly.str(),
                fac.parts.front().poly};
    internal_check(fac.parts.size() == 1, "empty factorization of nonconstant polynomial");
    if (fac.parts.front().status == FactorStatus::Irreducible)
        return {IrredStatus::Irreducible,
                p.degree() == 2 ? "quadratic with non-square discriminant" : "degree 1",
                std::nullopt};
    return {IrredStatus::Unresolved,
            "degree " + std::to_string(p.degree()) + " factor not certified either way",
            std::nullopt};
}

// --- condition 1: the fixed subspace ------------------------------------

enum class FixedStatus { CertifiedTrivial, CertifiedExcluded, Inconclusive };

struct TransportCheckEntry {
    std::string transport;
    bool positive_sign;
    std::optional<ExclusionCertificate> cert;
};

struct FixedSubspaceCondition {
    FixedStatus status;
    std::string reason;
    std::vector<std::vector<Rat>> fixed_basis;      // kernel of (pullback - I)
    std::optional<DivisorClass> generator;          // primitive, dimension-1 case
    std::optional<ExclusionCertificate> plus_cert;
    std::optional<ExclusionCertificate> minus_cert;
    // Depth-1 diagnostics: for each transport and each sign, whether the
    // transported class is already excluded by a covering curve.
    std::vector<TransportCheckEntry> transport_table;

    bool certified() const { return status != FixedStatus::Inconclusive; }
    std::string status_str() const {
        switch (status) {
            case FixedStatus::CertifiedTrivial: return "certified-trivial";
            case FixedStatus::CertifiedExcluded: return "certified-excluded";
            default: return "inconclusive";
        }
    }
};

inline FixedSubspaceCondition fixed_subspace_condition(
    const LatticeContext& ctx, const Mat& pullback,
    const std::vector<Transport>& transports, unsigned depth) {
    if (!pullback.is_square() || pullback.rows() != ctx.rank())
        throw DimensionError("pullback rank mismatch");
    FixedSubspaceCondition out;
    out.fixed_basis = kernel_basis(pullback - Mat::identity(ctx.rank()));

    if (out.fixed_basis.empty()) {
        out.status = FixedStatus::CertifiedTrivial;
        out.reason = "fixed subspace is zero";
        return out;
    }
    if (out.fixed_basis.size() >= 2) {
        out.status = FixedStatus::Inconclusive;
        out.reason = "fixed subspace has dimension " +
                     std::to_string(out.fixed_basis.size()) + "; not handled";
        return out;
    }

    DivisorClass w{primitive_integer_vector(out.fixed_basis.front())};
    out.generator = w;
    out.plus_cert = exclude_from_eff(ctx, w, transports, depth);
    out.minus_cert = exclude_from_eff(ctx, w.negated(), transports, depth);
    for (const Transport& t : transports) {
        out.transport_table.push_back({t.name, true, transport_check(ctx, w, t)});
        out.transport_table.push_back({t.name, false, transport_check(ctx, w.negated(), t)});
    }
    if (out.plus_cert && out.minus_cert) {
        out.status = FixedStatus::CertifiedExcluded;
        out.reason = "both signs of the fixed generator excluded from the effective cone";
    } else {
        out.status = FixedStatus::Inconclusive;
        out.reason = std::string("no exclusion certificate for ") +
                     (out.plus_cert ? "-" : "+") + "generator within depth " +
                     std::to_string(depth);
    }
    return out;
}

// --- condition 2: stable subspaces and faces ----------------------------

enum class DischargeMethod { RayExclusion, FaceAnnihilator, None };

struct StableSubspaceRecord {
    std::vector<std::size_t> factor_indices;    // which irreducible factors cut it out
    Poly annihilating_poly;                     // their product g; V = ker g(pullback)
    std::size_t dimension = 0;
    std::vector<std::vector<Rat>> basis;
    DischargeMethod method = DischargeMethod::None;
    bool discharged = false;
    std::string note;
    // RayExclusion payload:
    std::optional<DivisorClass> generator;
    std::optional<ExclusionCertificate> ray_plus, ray_minus;
    // FaceAnnihilator payload:
    std::optional<CurveClass> annihilator;      // primitive integer dual generator
    std::optional<Rat> annihilator_eigenvalue;  // its eigenvalue under the transpose
    std::optional<NefExclusionPair> nef_exclusion;

    std::string method_str() const {
        switch (method) {
            case DischargeMethod::RayExclusion: return "ray-exclusion";
            case DischargeMethod::FaceAnnihilator: return "face-annihilator";
            default: return "none";
        }
    }
};

struct StableFaceCondition {
    bool complete = false;          // the record list provably covers all stable subspaces
    std::string completeness_reason;
    std::vector<StableSubspaceRecord> records;
    bool all_discharged = false;
};

/* Enumerates the proper nonzero rational stable subspaces as kernels of
 * g(pullback), g ranging over products of proper nonempty subsets of the
 * certified-irreducible factors of the characteristic polynomial.  When
 * the polynomial is squarefree and fully factored this is exactly the
 * stable subspace lattice; otherwise the list is still sound but the
 * completeness flag stays down and the verdict can never reach Primitive.
 */
inline StableFaceCondition stable_face_condition(
    const LatticeContext& ctx, const Mat& pullback,
    const std::vector<Transport>& transports, unsigned depth) {
    if (!pullback.is_square() || pullback.rows() != ctx.rank())
        throw DimensionError("pullback rank mismatch");
    StableFaceCondition out;
    std::size_t rho = ctx.rank();

    Poly chi = char_poly(pullback);
    bool squarefree = is_squarefree(chi);
    Poly sf = squarefree ? chi : squarefree_part(chi);
    FactorizationQ fac = factor_over_q(sf);

    if (!squarefree) {
        out.completeness_reason = "characteristic polynomial is not squarefree";
    } else if (!fac.all_irreducible()) {
        std::string deg;
        for (const auto& part : fac.parts)
            if (part.status != FactorStatus::Irreducible)
                deg = std::to_string(part.poly.degree());
        out.completeness_reason = "factor of degree " + deg + " not certified irreducible";
    } else {
        out.complete = true;
        out.completeness_reason = "squarefree characteristic polynomial with all factors "
                                  "certified irreducible";
    }

    std::size_t f = fac.parts.size();
    internal_check(f >= 1 && f < 16, "unexpected factor count");
    for (unsigned mask = 1; mask + 1 < (1u << f); ++mask) {
        StableSubspaceRecord rec;
        Poly g = Poly::constant(Rat(1));
        for (std::size_t b = 0; b < f; ++b)
            if (mask & (1u << b)) {
                rec.factor_indices.push_back(b);
                g = g * fac.parts[b].poly;
            }
        rec.annihilating_poly = g;
        rec.basis = kernel_basis(poly_eval_matrix(g, pullback));
        rec.dimension = rec.basis.size();
        if (rec.dimension == 0 || rec.dimension == rho) {
            // Degenerate only when the factorization was partial; an honest
            // proper subspace never comes out trivial here.
            internal_check(!out.complete, "degenerate kernel from certified factors");
            rec.note = "kernel degenerate; skipped";
            out.records.push_back(std::move(rec));
            continue;
        }
        // Stability sanity: g(M) M v = M g(M) v = 0, so M-stability is
        // automatic; still verify membership of each basis image.
        {
            Mat gm = poly_eval_matrix(g, pullback);
            for (const auto& v : rec.basis) {
                auto image = mat_vec(pullback, v);
                auto killed = mat_vec(gm, image);
                for (const Rat& x : killed)
                    internal_check(x.is_zero(), "enumerated subspace is not stable");
            }
        }

        if (rec.dimension == 1) {
            rec.method = DischargeMethod::RayExclusion;
            DivisorClass gen{primitive_integer_vector(rec.basis.front())};
            rec.generator = gen;
            rec.ray_plus = exclude_from_eff(ctx, gen, transports, depth);
            rec.ray_minus = exclude_from_eff(ctx, gen.negated(), transports, depth);
            rec.discharged = bool(rec.ray_plus) && bool(rec.ray_minus);
            rec.note = rec.discharged
                           ? "generator ray excluded from the effective cone"
                           : "missing exclusion certificate for a generator sign";
        } else if (rec.dimension == rho - 1) {
            rec.method = DischargeMethod::FaceAnnihilator;
            Mat rows(rec.dimension, rho);
            for (std::size_t r = 0; r < rec.dimension; ++r)
                for (std::size_t c = 0; c < rho; ++c)
                    rows.at(r, c) = rec.basis[r][c];
            auto ann = kernel_basis(rows);
            internal_check(ann.size() == 1, "codimension-1 subspace with non-line annihilator");
            CurveClass u{primitive_integer_vector(ann.front())};
            rec.annihilator = u;
            // The annihilator line is stable under the transpose; record its
            // eigenvalue as a cross-check.
            {
                auto tu = mat_vec(pullback.transpose(), u.v);
                std::size_t nz = 0;
                while (nz < u.v.size() && u.v[nz].is_zero()) ++nz;
                internal_check(nz < u.v.size(), "zero annihilator");
                Rat lambda = tu[nz] / u.v[nz];
                for (std::size_t c = 0; c < u.v.size(); ++c)
                    internal_check(tu[c] == lambda * u.v[c],
                                   "annihilator is not a transpose eigenvector");
                rec.annihilator_eigenvalue = lambda;
            }
            rec.nef_exclusion = exclude_nef_curve(ctx, u);
            rec.discharged = bool(rec.nef_exclusion);
            rec.note = rec.discharged
                           ? "annihilator excluded from the nef curve classes, both signs"
                           : "no effective witness pairs negatively with an annihilator sign";
        } else {
            rec.method = DischargeMethod::None;
            rec.discharged = false;
            rec.note = "dimension " + std::to_string(rec.dimension) +
                       " subspace (neither a ray nor a hyperplane); not handled";
        }
        out.records.push_back(std::move(rec));
    }

    out.all_discharged = true;
    for (const auto& rec : out.records) {
        if (rec.dimension == 0 || rec.dimension == rho) continue;   // degenerate, flagged above
        if (!rec.discharged) out.all_discharged = false;
    }
    return out;
}

// --- verdict -------------------------------------------------------------

// Geometric facts a lattice cannot verify; the caller declares them and the
// report echoes the declaration next to the verdict.
struct Hypotheses {
    bool minimal_cy = false;
    unsigned dimension = 0;
    unsigned picard_number = 0;
    bool abundant = false;

    bool declared_sufficient() const {
        return minimal_cy && dimension == 3 && picard_number >= 2 && abundant;
    }
};

enum class Verdict { Primitive, Inconclusive };

struct CriterionOutcome {
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> reasons;       // why not Primitive; empty otherwise
    IrreducibilityResult shortcut;          // irreducibility of the char poly
    FixedSubspaceCondition condition1;
    StableFaceCondition condition2;

    std::string verdict_str() const {
        return verdict == Verdict::Primitive ? "primitive" : "inconclusive";
    }
};

inline CriterionOutcome evaluate_criterion(const LatticeContext& ctx, const Mat& pullback,
                                           const std::vector<Transport>& transports,
                                           unsigned depth, const Hypotheses& hyp) {
    CriterionOutcome out;
    out.shortcut = check_irreducibility(char_poly(pullback));
    // Both conditions always run in full, even if one already failed: the
    // report should show everything that was and wasn't certified.
    out.condition1 = fixed_subspace_condition(ctx, pullback, transports, depth);
    out.condition2 = stable_face_condition(ctx, pullback, transports, depth);

    bool conditions_ok = out.condition1.certified() &&
                         out.condition2.complete && out.condition2.all_discharged;
    if (!out.condition1.certified())
        out.reasons.push_back("fixed-subspace condition: " + out.condition1.reason);
    if (!out.condition2.complete)
        out.reasons.push_back("stable-subspace enumeration incomplete: " +
                              out.condition2.completeness_reason);
    if (!out.condition2.all_discharged)
        out.reasons.push_back("some stable subspace was not discharged");
    if (conditions_ok && !hyp.declared_sufficient())
        out.reasons.push_back("conditions verified; theorem hypotheses undeclared");

    out.verdict = (conditions_ok && hyp.declared_sufficient()) ? Verdict::Primitive
                                                               : Verdict::Inconclusive;
    return out;
}

} // namespace cydyn

#endif
