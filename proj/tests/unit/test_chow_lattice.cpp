#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cydyn/chow.hpp"
#include "cydyn/lattice.hpp"
#include "support/oracles.hpp"

using namespace cydyn;

namespace {

int rnd(std::mt19937& g, int lo, int hi) {
    return lo + static_cast<int>(g() % static_cast<unsigned>(hi - lo + 1));
}

Ambient triple_p2() { return Ambient({2, 2, 2}); }

CompleteIntersection three_ones() {
    return CompleteIntersection{{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}};
}

TripleForm standard_form() {
    return triple_form_from_ambient(triple_p2(), three_ones());
}

LatticeContext standard_context() {
    return LatticeContext(standard_form(), {1, 2, 3});
}

} // namespace

TEST_CASE("truncated polynomial ring drops overflowing powers") {
    Ambient amb = triple_p2();
    ChowPoly h1 = ChowPoly::hyperplane(amb, 1);
    ChowPoly sq = h1 * h1;
    CHECK(sq.coefficient({2, 0, 0}) == Int(1));
    CHECK((sq * h1).coefficient({3, 0, 0}) == Int(0));     // h^3 = 0 on P^2
    ChowPoly sum = ChowPoly::linear(amb, {1, 1, 1});
    ChowPoly cube = sum * sum * sum;
    CHECK(cube.coefficient({1, 1, 1}) == Int(6));
    CHECK(cube.coefficient({2, 1, 0}) == Int(3));
    CHECK(cube.coefficient({3, 0, 0}) == Int(0));
    CHECK((ChowPoly::one(amb) * h1).coefficient({1, 0, 0}) == Int(1));
}

TEST_CASE("intersection numbers match the untruncated multinomial oracle") {
    Ambient amb = triple_p2();
    CompleteIntersection ci = three_ones();
    for (unsigned i = 0; i < 3; ++i)
        for (unsigned j = i; j < 3; ++j)
            for (unsigned k = j; k < 3; ++k) {
                std::vector<unsigned> expo(3, 0);
                ++expo[i];
                ++expo[j];
                ++expo[k];
                std::vector<std::vector<Int>> factors(3, {Int(1), Int(1), Int(1)});
                for (unsigned t = 0; t < 3; ++t)
                    for (unsigned rep = 0; rep < expo[t]; ++rep) {
                        std::vector<Int> unit(3, Int(0));
                        unit[t] = 1;
                        factors.push_back(unit);
                    }
                CHECK(intersection_number(amb, ci, expo) ==
                      oracles::top_coefficient(amb.dims, factors));
            }

    // Same cross-check on a different geometry: a (2,4) divisor in P^1 x P^3.
    Ambient mixed({1, 3});
    CompleteIntersection one_surface{{{2, 4}}};
    std::mt19937 g(77001122);
    for (int c = 0; c < 50; ++c) {
        unsigned e1 = static_cast<unsigned>(rnd(g, 0, 2));
        unsigned e2 = 3 - std::min(3u, e1);
        if (e1 + e2 != 3) continue;
        std::vector<std::vector<Int>> factors{{Int(2), Int(4)}};
        for (unsigned rep = 0; rep < e1; ++rep) factors.push_back({Int(1), Int(0)});
        for (unsigned rep = 0; rep < e2; ++rep) factors.push_back({Int(0), Int(1)});
        CHECK(intersection_number(mixed, one_surface, {e1, e2}) ==
              oracles::top_coefficient(mixed.dims, factors));
    }
    CHECK(intersection_number(mixed, one_surface, {0, 3}) == Int(2));
    CHECK(intersection_number(mixed, one_surface, {1, 2}) == Int(4));
    CHECK(intersection_number(mixed, one_surface, {2, 1}) == Int(0));
}

TEST_CASE("intersection numbers validate the degree budget") {
    Ambient amb = triple_p2();
    CHECK_THROWS_AS(intersection_number(amb, three_ones(), {1, 1, 0}), DimensionError);
    CHECK_THROWS_AS((CompleteIntersection{{{1, 1}}}.validate(amb)), DimensionError);
}

TEST_CASE("triple form construction requires a threefold") {
    CHECK_THROWS_AS(triple_form_from_ambient(triple_p2(),
                                             CompleteIntersection{{{1, 1, 1}}}),
                    DimensionError);
    TripleForm form = standard_form();
    CHECK(form.rank() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(form.at(i, i, i) == Int(0));
    CHECK(form.at(0, 0, 1) == Int(3));
    CHECK(form.at(2, 2, 0) == Int(3));
    CHECK(form.at(0, 1, 2) == Int(6));
    // Trilinear evaluation: (L1+L2+L3)^3 sums every ordered triple.
    std::vector<Rat> ones(3, Rat(1));
    CHECK(form.eval(ones, ones, ones) == Rat(90));
}

TEST_CASE("triple form tables must be symmetric") {
    std::vector<Int> table(8, Int(0));
    table[1] = 5;                 // entry (0,0,1) without its mirror images
    CHECK_THROWS_AS(TripleForm(2, table), DomainError);
}

TEST_CASE("fiber classes and restricted surface forms") {
    TripleForm form = standard_form();
    CHECK(fiber_curve_class(form, 1).v == std::vector<Rat>{Rat(0), Rat(3), Rat(3)});
    CHECK(fiber_curve_class(form, 2).v == std::vector<Rat>{Rat(3), Rat(0), Rat(3)});
    CHECK(fiber_curve_class(form, 3).v == std::vector<Rat>{Rat(3), Rat(3), Rat(0)});
    Mat b1 = restrict_to_surface(form, 1);
    CHECK(b1 == Mat::from_rows({{0, 3, 3}, {3, 3, 6}, {3, 6, 3}}));
    CHECK(b1 == b1.transpose());
    CHECK_THROWS_AS(fiber_curve_class(form, 0), DimensionError);
    CHECK_THROWS_AS(fiber_curve_class(form, 4), DimensionError);
}

TEST_CASE("divisor curve pairing and pretty printing") {
    DivisorClass d{{Rat(1), Rat(-2), Rat(1)}};
    CurveClass f1{{Rat(0), Rat(3), Rat(3)}};
    CHECK(pairing(d, f1) == Rat(-3));
    CHECK(pairing(DivisorClass{{Rat(1), Rat(0), Rat(0)}}, f1) == Rat(0));
    CHECK(basis_combo_str(d.v) == "L1 - 2*L2 + L3");
    CHECK(basis_combo_str({Rat(0), Rat(0), Rat(0)}) == "0");
    CHECK(coords_str(d.v) == "(1, -2, 1)");
}

TEST_CASE("lattice context exposes witnesses and covering curves") {
    LatticeContext ctx = standard_context();
    CHECK(ctx.rank() == 3);
    REQUIRE(ctx.effective_witnesses().size() == 3);
    CHECK(ctx.effective_witnesses()[0].provenance == "basis divisor L1");
    REQUIRE(ctx.covering_curves().size() == 3);
    CHECK(ctx.covering_curves()[0].provenance == "fiber of projection 1");

    LatticeContext with_extra(standard_form(), {1, 2, 3},
                              {{DivisorClass{{Rat(1), Rat(1), Rat(0)}}, "declared witness 1"}});
    CHECK(with_extra.effective_witnesses().size() == 4);
}

TEST_CASE("effective cone exclusion finds direct certificates") {
    LatticeContext ctx = standard_context();
    DivisorClass d{{Rat(1), Rat(-2), Rat(1)}};

    auto cert = exclude_from_eff(ctx, d, {}, 3);
    REQUIRE(cert);
    CHECK(cert->kind == ExclusionKind::CoveringCurveKind);
    CHECK(cert->word.empty());
    CHECK(cert->curve_provenance == "fiber of projection 1");
    CHECK(cert->pairing_value == Rat(-3));
    CHECK(revalidate_certificate(ctx, {}, *cert));

    auto cert_neg = exclude_from_eff(ctx, d.negated(), {}, 3);
    REQUIRE(cert_neg);
    CHECK(cert_neg->pairing_value == Rat(-6));
    CHECK(cert_neg->curve_provenance == "fiber of projection 2");

    // Tampered certificates must fail revalidation.
    ExclusionCertificate bad = *cert;
    bad.pairing_value = Rat(-4);
    CHECK_FALSE(revalidate_certificate(ctx, {}, bad));
    ExclusionCertificate wrong_curve = *cert;
    wrong_curve.curve = ctx.covering_curves()[2].cls;
    CHECK_FALSE(revalidate_certificate(ctx, {}, wrong_curve));
}

TEST_CASE("exclusion is sound on random nonnegative witness combinations") {
    LatticeContext ctx = standard_context();
    std::mt19937 g(13571357);
    for (int c = 0; c < 500; ++c) {
        std::vector<Rat> v(3);
        for (auto& x : v) x = Rat(rnd(g, 0, 4));
        DivisorClass d{v};
        CHECK_FALSE(exclude_from_eff(ctx, d, {}, 3).has_value());
    }
}

TEST_CASE("nef curve exclusion needs both signs to fail membership") {
    LatticeContext ctx = standard_context();
    auto pair = exclude_nef_curve(ctx, {{Rat(1), Rat(-2), Rat(1)}});
    REQUIRE(pair);
    CHECK(pair->plus.pairing_value.sign() < 0);
    CHECK(pair->minus.pairing_value.sign() < 0);
    CHECK(pair->plus.witness_provenance == "basis divisor L2");
    CHECK(pair->minus.witness_provenance == "basis divisor L1");

    CHECK_FALSE(exclude_nef_curve(ctx, {{Rat(1), Rat(0), Rat(0)}}).has_value());
    CHECK_FALSE(exclude_nef_curve(ctx, {{Rat(1), Rat(1), Rat(1)}}).has_value());
    CHECK_THROWS_AS(exclude_nef_curve(ctx, {{Rat(0), Rat(0), Rat(0)}}), DomainError);
}
