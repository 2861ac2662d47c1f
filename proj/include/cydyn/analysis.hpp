#ifndef CYDYN_ANALYSIS_HPP
#define CYDYN_ANALYSIS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cydyn/chow.hpp"
#include "cydyn/config.hpp"
#include "cydyn/primitivity.hpp"
#include "cydyn/report.hpp"
#include "cydyn/spectral.hpp"
#include "cydyn/translation.hpp"

namespace cydyn {

/* End-to-end pipeline: config -> intersection theory -> lattice context ->
 * synthesized maps -> composite pullback -> dynamical degree -> criterion ->
 * deterministic report.  Everything structured stays accessible on the
 * result object so tests and the acceptance gate never have to parse the
 * rendered report to check values.
 */

struct ReferenceCheck {
    std::string subject;
    std::string expected;
    std::string computed;       // "unevaluated" when the pipeline had no value to compare
    bool evaluated = false;
    bool matches = false;
};

struct AnalysisResult {
    Config config;
    std::optional<Ambient> ambient;
    std::optional<TripleForm> form;
    std::optional<LatticeContext> ctx;
    std::vector<std::pair<std::string, SynthesizedMap>> maps;   // config order
    std::vector<Transport> transports;
    std::optional<Mat> composite_pushforward;
    std::optional<Mat> pullback;
    std::optional<Poly> chi;
    std::optional<FactorizationQ> chi_factors;
    std::optional<SpectralRadius> d1;
    std::optional<EntropyBound> entropy;
    std::optional<SpectralRadius> d1_inverse;
    std::optional<CriterionOutcome> criterion;
    std::vector<ReferenceCheck> reference_checks;
    Report report;

    const SynthesizedMap* find_map(const std::string& name) const {
        for (const auto& [n, m] : maps)
            if (n == name) return &m;
        return nullptr;
    }

    std::size_t discrepancy_count() const {
        std::size_t n = 0;
        for (const auto& r : reference_checks)
            if (r.evaluated && !r.matches) ++n;
        return n;
    }
};

namespace detail {

inline std::string machine_vec(const std::vector<Rat>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].str();
    return s;
}

inline std::string machine_ints(const std::vector<Int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].str();
    return s;
}

inline std::string machine_coeffs(const Poly& p) {
    std::string s;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        s += (i ? " " : "") + p.coeffs()[i].str();
    return s.empty() ? "0" : s;
}

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

inline void emit_matrix(Report& rep, const std::string& prefix, const Mat& m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        rep.add(prefix + ".row." + std::to_string(r + 1), machine_vec(m.row(r)));
}

inline void emit_exclusion(Report& rep, const std::string& prefix,
                           const ExclusionCertificate& cert) {
    rep.add(prefix + ".kind", cert.kind == ExclusionKind::CoveringCurveKind
                                  ? "covering-curve" : "orbit-transport");
    rep.add(prefix + ".word.len", std::to_string(cert.word.size()));
    for (std::size_t i = 0; i < cert.word.size(); ++i)
        rep.add(prefix + ".word." + std::to_string(i + 1), cert.word[i]);
    rep.add(prefix + ".image", machine_vec(cert.transported.v));
    rep.add(prefix + ".curve", cert.curve_provenance);
    rep.add(prefix + ".curve.coords", machine_vec(cert.curve.v));
    rep.add(prefix + ".pairing", cert.pairing_value.str());
}

inline void emit_spectral(Report& rep, const std::string& prefix, const SpectralRadius& r) {
    rep.add(prefix + ".kind", r.kind_str());
    rep.add(prefix + ".dominated", bool_str(r.dominated));
    if (r.rational_value) rep.add(prefix + ".exact", r.rational_value->str());
    if (r.surd_value) {
        rep.add(prefix + ".exact", r.surd_value->str());
        rep.add(prefix + ".exact.a", r.surd_value->rational_part().str());
        rep.add(prefix + ".exact.b", r.surd_value->radical_coeff().str());
        rep.add(prefix + ".exact.d", r.surd_value->radicand().str());
        rep.add(prefix + ".norm", r.surd_value->norm().str());
    }
    rep.add(prefix + ".interval.lo", r.lo.str());
    rep.add(prefix + ".interval.hi", r.hi.str());
    rep.add(prefix + ".approx", decimal_string(r.lo, 12));
    if (!r.achieving_factor.is_zero())
        rep.add(prefix + ".achieving_factor", machine_coeffs(r.achieving_factor));
    rep.add(prefix + ".from_negative_eigenvalue", bool_str(r.from_negative_eigenvalue));
    for (std::size_t i = 0; i < r.notes.size(); ++i)
        rep.add(prefix + ".note." + std::to_string(i + 1), r.notes[i]);
}

} // namespace detail

inline AnalysisResult run_analysis(const Config& cfg_in) {
    using detail::bool_str;
    using detail::machine_coeffs;
    using detail::machine_ints;
    using detail::machine_vec;

    AnalysisResult res;
    res.config = cfg_in;
    const Config& cfg = res.config;

    res.ambient.emplace(cfg.ambient_dims);
    CompleteIntersection ci{cfg.hypersurfaces};
    res.form.emplace(triple_form_from_ambient(*res.ambient, ci));
    std::size_t rho = res.form->rank();

    if (cfg.hypotheses.picard_number != 0 &&
        static_cast<std::size_t>(cfg.hypotheses.picard_number) != rho)
        throw DomainError("declared picard_number " +
                          std::to_string(cfg.hypotheses.picard_number) +
                          " contradicts the lattice rank " + std::to_string(rho));

    std::vector<EffectiveWitness> extra;
    for (std::size_t i = 0; i < cfg.extra_effective.size(); ++i)
        extra.push_back({DivisorClass{cfg.extra_effective[i]},
                         "declared witness " + std::to_string(i + 1)});
    res.ctx.emplace(*res.form, cfg.fibration_indices, extra);

    for (const MapDecl& decl : cfg.maps) {
        SynthesizedMap m = build_translation_matrix(*res.ctx, decl.spec);
        res.transports.push_back({decl.name, m.matrix});
        res.maps.emplace_back(decl.name, std::move(m));
    }

    if (!cfg.composition.empty()) {
        Mat prod = Mat::identity(rho);
        for (const std::string& name : cfg.composition) {
            const SynthesizedMap* m = res.find_map(name);
            internal_check(m != nullptr, "composition references an unbuilt map");
            prod = prod * m->matrix;
        }
        res.composite_pushforward = prod;
        res.pullback = inverse(prod);
        res.chi = char_poly(*res.pullback);
        res.chi_factors = factor_over_q(is_squarefree(*res.chi) ? *res.chi
                                                                : squarefree_part(*res.chi));
        res.d1 = spectral_radius_of_charpoly(*res.chi, cfg.width);
        if (res.d1->lo.sign() > 0) res.entropy = entropy_bound(*res.d1);
        res.d1_inverse = spectral_radius_of_charpoly(char_poly(prod), cfg.width);
        res.criterion = evaluate_criterion(*res.ctx, *res.pullback, res.transports,
                                           cfg.depth, cfg.hypotheses);
    }

    for (const ReferenceExpectation& ref : cfg.references) {
        ReferenceCheck chk;
        chk.subject = "pushforward_of_fixed." + ref.map_name;
        chk.expected = machine_vec(ref.expected_image);
        if (res.criterion && res.criterion->condition1.generator) {
            const SynthesizedMap* m = res.find_map(ref.map_name);
            internal_check(m != nullptr, "validated reference lost its map");
            auto image = mat_vec(m->matrix, res.criterion->condition1.generator->v);
            chk.computed = machine_vec(image);
            chk.evaluated = true;
            chk.matches = image == ref.expected_image;
        } else {
            chk.computed = "unevaluated";
        }
        res.reference_checks.push_back(std::move(chk));
    }

    // ---- report assembly (order fixed; this is the determinism contract) ----
    Report& rep = res.report;
    rep.add("schema_version", std::to_string(cfg.schema_version));
    rep.add("analysis.scope", cfg.composition.empty() ? "lattice-only" : "full");
    rep.add("options.depth", std::to_string(cfg.depth));
    rep.add("options.width", cfg.width.str());

    rep.add("ambient.dims", [&] {
        std::string s;
        for (std::size_t i = 0; i < cfg.ambient_dims.size(); ++i)
            s += (i ? " " : "") + std::to_string(cfg.ambient_dims[i]);
        return s;
    }());
    rep.add("variety.hypersurface.count", std::to_string(cfg.hypersurfaces.size()));
    for (std::size_t i = 0; i < cfg.hypersurfaces.size(); ++i)
        rep.add("variety.hypersurface." + std::to_string(i + 1),
                machine_ints(cfg.hypersurfaces[i]));

    rep.add("lattice.rank", std::to_string(rho));
    for (std::size_t i = 0; i < rho; ++i)
        for (std::size_t j = i; j < rho; ++j)
            for (std::size_t k = j; k < rho; ++k)
                rep.add("lattice.form." + std::to_string(i + 1) + "." +
                            std::to_string(j + 1) + "." + std::to_string(k + 1),
                        res.form->at(i, j, k).str());
    for (std::size_t idx : cfg.fibration_indices) {
        CurveClass f = fiber_curve_class(*res.form, idx);
        rep.add("lattice.fiber_curve." + std::to_string(idx), machine_vec(f.v));
    }
    for (std::size_t idx : cfg.fibration_indices)
        detail::emit_matrix(rep, "lattice.surface_form." + std::to_string(idx),
                            restrict_to_surface(*res.form, idx));
    rep.add("lattice.effective_witness.count",
            std::to_string(res.ctx->effective_witnesses().size()));
    for (std::size_t i = 0; i < res.ctx->effective_witnesses().size(); ++i) {
        const auto& w = res.ctx->effective_witnesses()[i];
        rep.add("lattice.effective_witness." + std::to_string(i + 1),
                machine_vec(w.cls.v) + "  # " + w.provenance);
    }

    for (const auto& [name, m] : res.maps) {
        std::string p = "map." + name;
        rep.add(p + ".indices", std::to_string(m.spec.i) + " " + std::to_string(m.spec.j) +
                                    " " + std::to_string(m.spec.k));
        Mat blk = quotient_action(res.form.value(), m.spec);
        detail::emit_matrix(rep, p + ".quotient_block", blk);
        rep.add(p + ".conjugation.kind",
                m.trace.conj_kind == ConjSolutionKind::Unique
                    ? "unique"
                    : (m.trace.conj_kind == ConjSolutionKind::Line ? "line" : "plane"));
        if (m.trace.conj_kind == ConjSolutionKind::Line)
            rep.add(p + ".conjugation.relation", m.trace.rel_m.str() + " " +
                                                     m.trace.rel_n.str() + " " +
                                                     m.trace.rel_0.str());
        rep.add(p + ".conjugation.pretty", m.trace.conj_pretty);
        rep.add(p + ".surface.lhs_quadratic", m.trace.surface_a.str() + " " +
                                                  m.trace.surface_b.str() + " " +
                                                  m.trace.surface_c.str());
        rep.add(p + ".surface.target", m.trace.surface_target.str());
        rep.add(p + ".surface.pretty", m.trace.surface_pretty);
        rep.add(p + ".surface.reduced", m.trace.surface_reduced_pretty);
        rep.add(p + ".solution", "m=" + m.m.str() + " n=" + m.n.str());
        detail::emit_matrix(rep, p + ".matrix", m.matrix);
        rep.add(p + ".det", m.determinant.str());
        rep.add(p + ".surface_form_invariant", bool_str(m.surface_form_invariant));
        rep.add(p + ".charpoly", machine_coeffs(char_poly(m.matrix)));
    }

    if (res.pullback) {
        rep.add("composite.order", [&] {
            std::string s;
            for (std::size_t i = 0; i < cfg.composition.size(); ++i)
                s += (i ? " " : "") + cfg.composition[i];
            return s;
        }());
        detail::emit_matrix(rep, "composite.pushforward", *res.composite_pushforward);
        detail::emit_matrix(rep, "composite.pullback", *res.pullback);
        rep.add("composite.pullback.det", det_bareiss(*res.pullback).str());

        rep.add("charpoly.coeffs", machine_coeffs(*res.chi));
        rep.add("charpoly.pretty", res.chi->str());
        rep.add("charpoly.squarefree", bool_str(is_squarefree(*res.chi)));
        rep.add("factorization.scalar", res.chi_factors->scalar.str());
        rep.add("factorization.count", std::to_string(res.chi_factors->parts.size()));
        for (std::size_t i = 0; i < res.chi_factors->parts.size(); ++i) {
            const auto& part = res.chi_factors->parts[i];
            rep.add("factorization.factor." + std::to_string(i + 1) + ".coeffs",
                    machine_coeffs(part.poly));
            rep.add("factorization.factor." + std::to_string(i + 1) + ".status",
                    part.status == FactorStatus::Irreducible ? "irreducible"
                                                             : "possibly-reducible");
        }

        EigenSummary eig = eigen_summary(*res.chi);
        rep.add("eigen.rational.count", std::to_string(eig.rational.size()));
        for (std::size_t i = 0; i < eig.rational.size(); ++i)
            rep.add("eigen.rational." + std::to_string(i + 1), eig.rational[i].str());
        rep.add("eigen.pair.count", std::to_string(eig.real_pairs.size()));
        for (std::size_t i = 0; i < eig.real_pairs.size(); ++i) {
            const auto& pr = eig.real_pairs[i];
            std::string p = "eigen.pair." + std::to_string(i + 1);
            rep.add(p + ".a", pr.a.str());
            rep.add(p + ".b", pr.b.str());
            rep.add(p + ".d", pr.d.str());
            rep.add(p + ".sum", pr.sum().str());
            rep.add(p + ".product", pr.product().str());
        }
        rep.add("eigen.complex_quadratic.count", std::to_string(eig.complex_quadratics.size()));
        rep.add("eigen.unresolved.count", std::to_string(eig.unresolved.size()));

        detail::emit_spectral(rep, "d1", *res.d1);
        if (res.entropy) {
            rep.add("entropy.log_d1.lo", res.entropy->lo.str());
            rep.add("entropy.log_d1.hi", res.entropy->hi.str());
            rep.add("entropy.log_d1.approx.lo", decimal_string(res.entropy->lo, 15));
            rep.add("entropy.log_d1.approx.hi", decimal_string(res.entropy->hi, 15));
        }
        detail::emit_spectral(rep, "inverse.d1", *res.d1_inverse);

        const CriterionOutcome& crit = *res.criterion;
        rep.add("criterion.irreducible_shortcut.status", crit.shortcut.status_str());
        rep.add("criterion.irreducible_shortcut.reason", crit.shortcut.reason);
        if (crit.shortcut.witness_factor)
            rep.add("criterion.irreducible_shortcut.witness",
                    machine_coeffs(*crit.shortcut.witness_factor));

        const FixedSubspaceCondition& c1 = crit.condition1;
        rep.add("condition1.status", c1.status_str());
        rep.add("condition1.reason", c1.reason);
        rep.add("condition1.fixed_dim", std::to_string(c1.fixed_basis.size()));
        for (std::size_t i = 0; i < c1.fixed_basis.size(); ++i)
            rep.add("condition1.fixed_basis." + std::to_string(i + 1),
                    machine_vec(c1.fixed_basis[i]));
        if (c1.generator) {
            rep.add("condition1.generator", machine_vec(c1.generator->v));
            rep.add("condition1.generator.pretty", basis_combo_str(c1.generator->v));
        }
        if (c1.plus_cert) detail::emit_exclusion(rep, "condition1.plus", *c1.plus_cert);
        if (c1.minus_cert) detail::emit_exclusion(rep, "condition1.minus", *c1.minus_cert);
        for (const auto& e : c1.transport_table) {
            std::string p = "condition1.transport_check." + e.transport +
                            (e.positive_sign ? ".plus" : ".minus");
            rep.add(p + ".status", e.cert ? "found" : "none");
            if (e.cert) detail::emit_exclusion(rep, p, *e.cert);
        }

        const StableFaceCondition& c2 = crit.condition2;
        rep.add("condition2.complete", bool_str(c2.complete));
        rep.add("condition2.completeness", c2.completeness_reason);
        rep.add("condition2.count", std::to_string(c2.records.size()));
        for (std::size_t i = 0; i < c2.records.size(); ++i) {
            const auto& rec = c2.records[i];
            std::string p = "condition2.subspace." + std::to_string(i + 1);
            rep.add(p + ".factors", [&] {
                std::string s;
                for (std::size_t b = 0; b < rec.factor_indices.size(); ++b)
                    s += (b ? " " : "") + std::to_string(rec.factor_indices[b] + 1);
                return s;
            }());
            rep.add(p + ".poly", machine_coeffs(rec.annihilating_poly));
            rep.add(p + ".dim", std::to_string(rec.dimension));
            rep.add(p + ".method", rec.method_str());
            rep.add(p + ".discharged", bool_str(rec.discharged));
            rep.add(p + ".note", rec.note);
            if (rec.generator) rep.add(p + ".generator", machine_vec(rec.generator->v));
            if (rec.ray_plus) detail::emit_exclusion(rep, p + ".plus", *rec.ray_plus);
            if (rec.ray_minus) detail::emit_exclusion(rep, p + ".minus", *rec.ray_minus);
            if (rec.annihilator) {
                rep.add(p + ".annihilator", machine_vec(rec.annihilator->v));
                rep.add(p + ".annihilator.eigenvalue", rec.annihilator_eigenvalue->str());
            }
            if (rec.nef_exclusion) {
                rep.add(p + ".nef.plus.witness", rec.nef_exclusion->plus.witness_provenance);
                rep.add(p + ".nef.plus.witness.coords",
                        machine_vec(rec.nef_exclusion->plus.witness.v));
                rep.add(p + ".nef.plus.pairing",
                        rec.nef_exclusion->plus.pairing_value.str());
                rep.add(p + ".nef.minus.witness", rec.nef_exclusion->minus.witness_provenance);
                rep.add(p + ".nef.minus.witness.coords",
                        machine_vec(rec.nef_exclusion->minus.witness.v));
                rep.add(p + ".nef.minus.pairing",
                        rec.nef_exclusion->minus.pairing_value.str());
            }
        }
        rep.add("condition2.discharged", bool_str(c2.all_discharged));
    }

    rep.add("hypotheses.minimal_calabi_yau", bool_str(cfg.hypotheses.minimal_cy));
    rep.add("hypotheses.dimension", std::to_string(cfg.hypotheses.dimension));
    rep.add("hypotheses.picard_number", std::to_string(cfg.hypotheses.picard_number));
    rep.add("hypotheses.m_abundant", bool_str(cfg.hypotheses.abundant));
    rep.add("hypotheses.declared_sufficient", bool_str(cfg.hypotheses.declared_sufficient()));

    if (res.criterion) {
        rep.add("verdict", res.criterion->verdict_str());
        rep.add("verdict.reasons.count", std::to_string(res.criterion->reasons.size()));
        for (std::size_t i = 0; i < res.criterion->reasons.size(); ++i)
            rep.add("verdict.reason." + std::to_string(i + 1), res.criterion->reasons[i]);
    } else {
        rep.add("verdict", "not-evaluated");
        rep.add("verdict.reasons.count", "1");
        rep.add("verdict.reason.1", "no composite map declared; lattice-only analysis");
    }

    rep.add("reference.count", std::to_string(res.reference_checks.size()));
    for (std::size_t i = 0; i < res.reference_checks.size(); ++i) {
        const auto& chk = res.reference_checks[i];
        std::string p = "reference." + std::to_string(i + 1);
        rep.add(p + ".subject", chk.subject);
        rep.add(p + ".expected", chk.expected);
        rep.add(p + ".computed", chk.computed);
        rep.add(p + ".status", chk.evaluated ? (chk.matches ? "confirmed" : "mismatch")
                                             : "unevaluated");
    }
    rep.add("discrepancy.count", std::to_string(res.discrepancy_count()));
    {
        std::size_t n = 0;
        for (const auto& chk : res.reference_checks) {
            if (!chk.evaluated || chk.matches) continue;
            std::string p = "discrepancy." + std::to_string(++n);
            rep.add(p + ".subject", chk.subject);
            rep.add(p + ".expected", chk.expected);
            rep.add(p + ".computed", chk.computed);
            rep.add(p + ".note", "computed value disagrees with the declared reference");
        }
    }
    return res;
}

/* Focused report for the char-poly subcommand: the named map's pushforward
 * (or the composite pullback for "composite") with factorization data.
 */
inline Report charpoly_report(const AnalysisResult& res, const std::string& which) {
    Report rep;
    Poly chi;
    if (which == "composite") {
        if (!res.pullback) throw DomainError("no composite map declared in the config");
        chi = *res.chi;
        rep.add("subject", "composite.pullback");
    } else {
        const SynthesizedMap* m = res.find_map(which);
        if (!m) throw DomainError("unknown map '" + which + "'");
        chi = char_poly(m->matrix);
        rep.add("subject", "map." + which);
    }
    rep.add("charpoly.coeffs", detail::machine_coeffs(chi));
    rep.add("charpoly.pretty", chi.str());
    rep.add("charpoly.squarefree", detail::bool_str(is_squarefree(chi)));
    Poly sf = is_squarefree(chi) ? chi : squarefree_part(chi);
    FactorizationQ fac = factor_over_q(sf);
    rep.add("factorization.scalar", fac.scalar.str());
    rep.add("factorization.count", std::to_string(fac.parts.size()));
    for (std::size_t i = 0; i < fac.parts.size(); ++i) {
        rep.add("factorization.factor." + std::to_string(i + 1) + ".coeffs",
                detail::machine_coeffs(fac.parts[i].poly));
        rep.add("factorization.factor." + std::to_string(i + 1) + ".status",
                fac.parts[i].status == FactorStatus::Irreducible ? "irreducible"
                                                                 : "possibly-reducible");
    }
    return rep;
}

// Focused report for the dyndeg subcommand.
inline Report dyndeg_report(const AnalysisResult& res) {
    if (!res.d1) throw DomainError("no composite map declared in the config");
    Report rep;
    rep.add("charpoly.coeffs", detail::machine_coeffs(*res.chi));
    detail::emit_spectral(rep, "d1", *res.d1);
    if (res.entropy) {
        rep.add("entropy.log_d1.lo", res.entropy->lo.str());
        rep.add("entropy.log_d1.hi", res.entropy->hi.str());
        rep.add("entropy.log_d1.approx.lo", decimal_string(res.entropy->lo, 15));
        rep.add("entropy.log_d1.approx.hi", decimal_string(res.entropy->hi, 15));
    }
    detail::emit_spectral(rep, "inverse.d1", *res.d1_inverse);
    return rep;
}

} // namespace cydyn

#endif
