#ifndef CYDYN_TRANSLATION_HPP
#define CYDYN_TRANSLATION_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cydyn/lattice.hpp"
#include "cydyn/matrix.hpp"

namespace cydyn {

/* Synthesis of the divisor-class pushforward of a fiberwise translation.
 *
 * Setup: a rank-3 lattice fibered three ways; the map translates along the
 * fibers of projection i and permutes nothing.  Its pushforward fixes L_i,
 * acts on the (L_j, L_k) quotient by an explicitly known unipotent-style
 * block, and lifts to the full lattice with two undetermined integers m, n
 * in the L_i row.  Two constraints pin them:
 *
 *   (a) conjugating by the basis swap j <-> k must invert the matrix
 *       (swapping the two section roles negates the translation), and
 *   (b) the self-intersection of the image of L_j on a general member of
 *       pencil i must equal that of L_j (the map is fiberwise an
 *       isomorphism of polarized surfaces).
 *
 * (a) is affine in (m, n); (b) is a quadratic in m alone.  The solver
 * intersects them and demands a unique integer solution; anything else
 * (none, two, an unconstrained direction) is a hard error, never a guess.
 * The derivation is recorded step by step in SolveTrace for the report.
 */

struct ConstraintError : Error {
    using Error::Error;
};

struct TranslationSpec {
    std::size_t i, j, k;    // 1-based fibration and quotient indices, all distinct

    void validate(std::size_t rank) const {
        auto in_range = [rank](std::size_t x) { return x >= 1 && x <= rank; };
        if (!in_range(i) || !in_range(j) || !in_range(k))
            throw DimensionError("translation indices out of range");
        if (i == j || i == k || j == k)
            throw DomainError("translation indices must be distinct");
    }

    std::string str() const {
        return std::to_string(i) + std::to_string(j) + std::to_string(k);
    }
};

/* Action on the rank-2 quotient by L_i, in the (L_j, L_k) basis:
 *   [ 1 + d    d  ]
 *   [  -d    1 - d ]
 * where d is the common pairing of L_j and L_k with the fiber curves of
 * projection i.  Unequal pairings would give the translation class a
 * nonzero vertical degree, which is not a translation at all; that input
 * is rejected rather than patched.
 */
inline Mat quotient_action(const TripleForm& form, const TranslationSpec& spec) {
    spec.validate(form.rank());
    Int dj = form.at(spec.j - 1, spec.i - 1, spec.i - 1);
    Int dk = form.at(spec.k - 1, spec.i - 1, spec.i - 1);
    if (dj != dk)
        throw DomainError("translation class must have vertical degree 0: pairings are " +
                          dj.str() + " and " + dk.str());
    Mat b(2, 2);
    b.at(0, 0) = Rat(1 + dj);
    b.at(0, 1) = Rat(dj);
    b.at(1, 0) = Rat(-dj);
    b.at(1, 1) = Rat(1 - dj);
    return b;
}

// How the affine conjugation constraint pinned (m, n) before the surface
// quadratic was brought in.
enum class ConjSolutionKind { Unique, Line, Plane };

struct SolveTrace {
    ConjSolutionKind conj_kind = ConjSolutionKind::Plane;
    // For Line: primitive integer relation cm*m + cn*n + c0 = 0.
    Int rel_m, rel_n, rel_0;
    std::string conj_pretty;        // "m = 2*n"

    Rat surface_a, surface_b, surface_c;    // lhs(m) = a m^2 + b m + c
    Rat surface_target;                     // = b(L_j, L_j) on the surface
    bool surface_vacuous = false;
    std::string surface_pretty;             // "(m*S1 + 4*S2 - 3*S3)^2 = 3"
    std::string surface_reduced_pretty;     // "6*m - 69 = 3"
    std::string solution_pretty;            // "m = 12, n = 6"
};

struct SynthesizedMap {
    TranslationSpec spec;
    Mat matrix;                 // the pushforward on divisor classes
    Int m, n;
    Rat determinant;
    bool surface_form_invariant;    // full bilinear invariance on pencil i's surface
    SolveTrace trace;
};

namespace detail {

// The matrix shape with the two unknowns plugged in.
inline Mat assemble_translation(const TranslationSpec& s, const Mat& blk,
                                const Rat& m, const Rat& n) {
    Mat out(3, 3);
    std::size_t i = s.i - 1, j = s.j - 1, k = s.k - 1;
    out.at(i, i) = Rat(1);
    out.at(i, j) = m;
    out.at(i, k) = n;
    out.at(j, j) = blk.at(0, 0);
    out.at(k, j) = blk.at(1, 0);
    out.at(j, k) = blk.at(0, 1);
    out.at(k, k) = blk.at(1, 1);
    return out;
}

struct AffineForm { Rat cm, cn, c0; };      // cm*m + cn*n + c0

// "m = 2*n" when the relation rearranges cleanly, else the raw equation.
inline std::string relation_pretty(const Int& cm, const Int& cn, const Int& c0) {
    if (cm == 1 && c0 == 0) {
        Rat rhs = Rat(-cn);
        return "m = " + (rhs == Rat(1) ? std::string("n") : rhs.str() + "*n");
    }
    std::string s;
    auto term = [&](const Int& c, const std::string& var) {
        if (c == 0) return;
        if (s.empty()) s += (c < 0 ? "-" : "");
        else s += (c < 0 ? " - " : " + ");
        Int mag = int_abs(c);
        if (var.empty()) { s += mag.str(); return; }
        if (mag != 1) s += mag.str() + "*";
        s += var;
    };
    term(cm, "m");
    term(cn, "n");
    term(c0, "");
    return (s.empty() ? "0" : s) + " = 0";
}

inline std::string rat_coeff_term(bool first, const Rat& c, const std::string& var) {
    std::string s;
    if (c.is_zero()) return s;
    if (first) s += (c.sign() < 0 ? "-" : "");
    else s += (c.sign() < 0 ? " - " : " + ");
    Rat mag = c.abs();
    if (mag != Rat(1) || var.empty()) s += mag.str();
    if (!var.empty()) {
        if (mag != Rat(1)) s += "*";
        s += var;
    }
    return s;
}

} // namespace detail

/* Builds the pushforward matrix for a rank-3 lattice, solving for the two
 * free integers.  See the file comment for the constraint system; every
 * reconstruction step is probe-verified and the final matrix is re-checked
 * against both constraints exactly.
 */
inline SynthesizedMap build_translation_matrix(const LatticeContext& ctx,
                                               const TranslationSpec& spec) {
    if (ctx.rank() != 3)
        throw DimensionError("translation synthesis implemented for rank 3 lattices only");
    spec.validate(3);
    const TripleForm& form = ctx.form();
    Mat blk = quotient_action(form, spec);
    std::size_t i = spec.i - 1, j = spec.j - 1, k = spec.k - 1;

    // --- constraint (a): swap-conjugation inverts the matrix -------------
    PermMat swap_jk = PermMat::transposition(3, j, k);
    Mat swap = swap_jk.to_mat();    // own inverse

    auto residual = [&](const Rat& m, const Rat& n) {
        Mat mat = detail::assemble_translation(spec, blk, m, n);
        return swap * mat * swap * mat - Mat::identity(3);
    };

    // Each entry of the residual is affine in (m, n); reconstruct the nine
    // forms from three probes and verify on two more.
    Mat r00 = residual(Rat(0), Rat(0));
    Mat r10 = residual(Rat(1), Rat(0));
    Mat r01 = residual(Rat(0), Rat(1));
    std::vector<detail::AffineForm> eqs;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            eqs.push_back({r10.at(r, c) - r00.at(r, c),
                           r01.at(r, c) - r00.at(r, c),
                           r00.at(r, c)});
    for (auto [pm, pn] : {std::pair<Rat, Rat>{Rat(1), Rat(1)}, {Rat(2), Rat(3)}}) {
        Mat probe = residual(pm, pn);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) {
                const auto& e = eqs[r * 3 + c];
                internal_check(e.cm * pm + e.cn * pn + e.c0 == probe.at(r, c),
                               "conjugation residual is not affine in (m, n)");
            }
    }

    // Reduce the nine affine equations over the two unknowns.
    // Solution set: point, line, everything, or empty.
    std::optional<detail::AffineForm> row1, row2;    // independent equations
    for (const auto& e : eqs) {
        if (e.cm.is_zero() && e.cn.is_zero()) {
            if (!e.c0.is_zero())
                throw ConstraintError("inverse-conjugation constraint unsatisfiable");
            continue;
        }
        if (!row1) { row1 = e; continue; }
        // Eliminate against row1; a dependent equation must vanish.
        detail::AffineForm r = e;
        Rat piv1 = !row1->cm.is_zero() ? row1->cm : row1->cn;
        bool on_m = !row1->cm.is_zero();
        Rat factor = (on_m ? r.cm : r.cn) / piv1;
        r.cm -= factor * row1->cm;
        r.cn -= factor * row1->cn;
        r.c0 -= factor * row1->c0;
        if (r.cm.is_zero() && r.cn.is_zero()) {
            if (!r.c0.is_zero())
                throw ConstraintError("inverse-conjugation constraint unsatisfiable");
            continue;
        }
        if (!row2) { row2 = r; continue; }
        Rat piv2 = !row2->cm.is_zero() ? row2->cm : row2->cn;
        bool on_m2 = !row2->cm.is_zero();
        Rat f2 = (on_m2 ? r.cm : r.cn) / piv2;
        r.cm -= f2 * row2->cm;
        r.cn -= f2 * row2->cn;
        r.c0 -= f2 * row2->c0;
        if (!(r.cm.is_zero() && r.cn.is_zero()))
            throw InternalError("rank > 2 in a two-unknown system");
        if (!r.c0.is_zero())
            throw ConstraintError("inverse-conjugation constraint unsatisfiable");
    }

    SolveTrace trace;
    std::optional<std::pair<Rat, Rat>> conj_unique;
    // Line parametrization: (m, n) = point + t * dir.
    Rat pt_m(0), pt_n(0), dir_m(0), dir_n(0);
    if (row1 && row2) {
        trace.conj_kind = ConjSolutionKind::Unique;
        // Two independent equations: solve the 2x2 system.
        Rat det = row1->cm * row2->cn - row1->cn * row2->cm;
        internal_check(!det.is_zero(), "independent equations with zero determinant");
        Rat m0 = (-row1->c0 * row2->cn + row1->cn * row2->c0) / det;
        Rat n0 = (-row1->cm * row2->c0 + row1->c0 * row2->cm) / det;
        conj_unique = {m0, n0};
        trace.conj_pretty = "m = " + m0.str() + ", n = " + n0.str();
    } else if (row1) {
        trace.conj_kind = ConjSolutionKind::Line;
        // cm*m + cn*n + c0 = 0: direction (cn, -cm), any particular point.
        dir_m = row1->cn;
        dir_n = -row1->cm;
        if (!row1->cm.is_zero()) { pt_m = -row1->c0 / row1->cm; pt_n = Rat(0); }
        else { pt_m = Rat(0); pt_n = -row1->c0 / row1->cn; }
        auto prim = primitive_integer_vector({row1->cm, row1->cn, row1->c0});
        trace.rel_m = prim[0].num();
        trace.rel_n = prim[1].num();
        trace.rel_0 = prim[2].num();
        trace.conj_pretty = detail::relation_pretty(trace.rel_m, trace.rel_n, trace.rel_0);
    } else {
        trace.conj_kind = ConjSolutionKind::Plane;
        trace.conj_pretty = "unconstrained";
    }

    // --- constraint (b): surface self-intersection of the image of L_j ---
    Mat bform = restrict_to_surface(form, spec.i);
    Rat target = bform.at(j, j);
    trace.surface_target = target;
    auto lhs = [&](const Rat& m) {
        std::vector<Rat> col(3, Rat(0));
        col[i] = m;
        col[j] = blk.at(0, 0);
        col[k] = blk.at(1, 0);
        return dot(col, mat_vec(bform, col));
    };
    // Quadratic reconstruction from m = 0, 1, 2; verified at m = 3.
    Rat f0 = lhs(Rat(0)), f1 = lhs(Rat(1)), f2 = lhs(Rat(2));
    Rat qa = (f2 - Rat(2) * f1 + f0) / Rat(2);
    Rat qb = f1 - f0 - qa;
    Rat qc = f0;
    internal_check(qa * Rat(9) + qb * Rat(3) + qc == lhs(Rat(3)),
                   "surface constraint is not quadratic in m");
    trace.surface_a = qa;
    trace.surface_b = qb;
    trace.surface_c = qc;
    {
        // "(m*S1 + 4*S2 - 3*S3)^2 = 3": the image column with m symbolic.
        std::vector<std::string> coeff(3);
        coeff[i] = "m";
        coeff[j] = blk.at(0, 0).str();
        coeff[k] = blk.at(1, 0).str();
        std::string combo;
        for (std::size_t pos = 0; pos < 3; ++pos) {
            std::string c = coeff[pos];
            bool neg = !c.empty() && c[0] == '-';
            if (neg) c = c.substr(1);
            if (c == "0") continue;
            if (combo.empty()) combo += neg ? "-" : "";
            else combo += neg ? " - " : " + ";
            if (c != "1") combo += c + "*";
            combo += "S" + std::to_string(pos + 1);
        }
        trace.surface_pretty = "(" + combo + ")^2 = " + target.str();
        std::string red = detail::rat_coeff_term(true, qa, "m^2");
        red += detail::rat_coeff_term(red.empty(), qb, "m");
        red += detail::rat_coeff_term(red.empty(), qc, "");
        if (red.empty()) red = "0";
        trace.surface_reduced_pretty = red + " = " + target.str();
    }

    // Solve lhs(m) = target over Q.
    Rat A = qa, B = qb, C = qc - target;
    std::vector<Rat> m_roots;
    bool vacuous = false;
    if (A.is_zero() && B.is_zero()) {
        if (C.is_zero()) vacuous = true;
        else throw ConstraintError("surface constraint unsatisfiable: " +
                                   trace.surface_reduced_pretty);
    } else if (A.is_zero()) {
        m_roots.push_back(-C / B);
    } else {
        Rat disc = B * B - Rat(4) * A * C;
        if (disc.sign() < 0)
            throw ConstraintError("surface constraint has no real solution");
        Int root;
        if (!is_perfect_square(disc.num() * disc.den(), &root))
            throw ConstraintError("surface constraint has no rational solution");
        Rat sq(root, disc.den());       // sqrt(disc) = sqrt(num*den)/den
        m_roots.push_back((-B + sq) / (Rat(2) * A));
        if (!sq.is_zero()) m_roots.push_back((-B - sq) / (Rat(2) * A));
    }
    trace.surface_vacuous = vacuous;

    // --- intersect (a) and (b), demanding a unique integer pair ----------
    std::vector<std::pair<Rat, Rat>> candidates;
    if (conj_unique) {
        const auto& [m0, n0] = *conj_unique;
        bool ok = vacuous;
        for (const Rat& r : m_roots) ok = ok || (r == m0);
        if (!ok)
            throw ConstraintError("conjugation solution m = " + m0.str() +
                                  " fails the surface constraint " +
                                  trace.surface_reduced_pretty);
        candidates.push_back(*conj_unique);
    } else if (trace.conj_kind == ConjSolutionKind::Line) {
        if (vacuous)
            throw ConstraintError("underdetermined: surface constraint vacuous along the "
                                  "conjugation solution line");
        for (const Rat& r : m_roots) {
            if (dir_m.is_zero()) {
                if (pt_m == r)
                    throw ConstraintError("underdetermined: n is unconstrained");
                continue;
            }
            Rat t = (r - pt_m) / dir_m;
            candidates.push_back({r, pt_n + t * dir_n});
        }
    } else {
        throw ConstraintError("underdetermined: conjugation constraint is vacuous");
    }

    std::vector<std::pair<Rat, Rat>> integral;
    for (const auto& c : candidates)
        if (c.first.is_integer() && c.second.is_integer()) integral.push_back(c);
    if (integral.empty())
        throw ConstraintError("no integer solution satisfies both constraints");
    if (integral.size() > 1) {
        std::string all;
        for (const auto& c : integral)
            all += " (m=" + c.first.str() + ", n=" + c.second.str() + ")";
        throw ConstraintError("ambiguous: multiple integer solutions:" + all);
    }

    Rat m_sol = integral[0].first, n_sol = integral[0].second;
    trace.solution_pretty = "m = " + m_sol.str() + ", n = " + n_sol.str();

    // --- assemble and re-verify everything from scratch ------------------
    SynthesizedMap out;
    out.spec = spec;
    out.m = m_sol.num();
    out.n = n_sol.num();
    out.matrix = detail::assemble_translation(spec, blk, m_sol, n_sol);
    out.determinant = det_bareiss(out.matrix);
    internal_check(out.determinant == Rat(1) || out.determinant == Rat(-1),
                   "synthesized matrix is not unimodular");
    Mat resid = residual(m_sol, n_sol);
    internal_check(resid == Mat(3, 3), "conjugation constraint fails on the solution");
    internal_check(lhs(m_sol) == target, "surface constraint fails on the solution");
    out.surface_form_invariant =
        (out.matrix.transpose() * bform * out.matrix) == bform;
    out.trace = std::move(trace);
    return out;
}

/* Pullback of the composite map: the pushforwards multiply in composition
 * order; the composite acts on cohomology by the inverse.
 */
inline Mat compose_pullback(const std::vector<Mat>& pushforwards, std::size_t rank) {
    Mat prod = Mat::identity(rank);
    for (const Mat& m : pushforwards) {
        if (!m.is_square() || m.rows() != rank)
            throw DimensionError("composition rank mismatch");
        prod = prod * m;
    }
    return inverse(prod);
}

} // namespace cydyn

#endif
