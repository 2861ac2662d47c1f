#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cydyn/matrix.hpp"
#include "cydyn/poly.hpp"
#include "support/oracles.hpp"

using namespace cydyn;

namespace {

// Explicit modulo instead of uniform_int_distribution so the sequence is
// identical on every standard library.
int rnd(std::mt19937& g, int lo, int hi) {
    return lo + static_cast<int>(g() % static_cast<unsigned>(hi - lo + 1));
}

Mat random_rational(std::mt19937& g, std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.at(i, j) = Rat(Int(rnd(g, -9, 9)), Int(rnd(g, 1, 3)));
    return m;
}

// Random product of elementary integer row operations, so the determinant
// stays +-1 and the exact inverse must have integer entries.
Mat random_unimodular(std::mt19937& g, std::size_t n) {
    Mat m = Mat::identity(n);
    for (int step = 0; step < 12; ++step) {
        std::size_t i = static_cast<std::size_t>(rnd(g, 0, static_cast<int>(n) - 1));
        std::size_t j = static_cast<std::size_t>(rnd(g, 0, static_cast<int>(n) - 1));
        if (i == j) {
            for (std::size_t c = 0; c < n; ++c) m.at(i, c) = -m.at(i, c);
            continue;
        }
        Rat k(rnd(g, -3, 3));
        for (std::size_t c = 0; c < n; ++c) m.at(i, c) += k * m.at(j, c);
    }
    return m;
}

} // namespace

TEST_CASE("rationals normalize to lowest terms with positive denominator") {
    CHECK(Rat(6, -4) == Rat(-3, 2));
    CHECK(Rat(6, -4).num() == Int(-3));
    CHECK(Rat(6, -4).den() == Int(2));
    CHECK(Rat(0, 7) == Rat(0));
    CHECK(Rat(2, 3) + Rat(1, 6) == Rat(5, 6));
    CHECK(Rat(1, 3) * Rat(3) == Rat(1));
    CHECK(Rat(-7, 2).floor() == Int(-4));
    CHECK(Rat(-7, 2).ceil() == Int(-3));
    CHECK(Rat(2, 3).inverse() == Rat(3, 2));
    CHECK(Rat(-2, 3).pow(2) == Rat(4, 9));
    CHECK(Rat(-2, 3).pow(-2) == Rat(9, 4));
    CHECK(rat_min(Rat(1, 3), Rat(1, 4)) == Rat(1, 4));
    CHECK(parse_rat("-22/7") == Rat(-22, 7));
    CHECK(parse_rat("13") == Rat(13));
    CHECK_THROWS_AS(parse_rat("3.5"), Error);
    CHECK_THROWS_AS(Rat(1, 0), DomainError);
}

TEST_CASE("decimal rendering floors toward minus infinity") {
    CHECK(decimal_string(Rat(3, 2), 1) == "1.5");
    CHECK(decimal_string(Rat(2), 3) == "2.000");
    CHECK(decimal_string(Rat(1, 3), 4) == "0.3333");
    CHECK(decimal_string(Rat(-1, 3), 4) == "-0.3334");
    CHECK(decimal_string(Rat(-3, 2), 0) == "-2");
}

TEST_CASE("integer square roots and perfect square detection") {
    CHECK(isqrt(Int(0)) == Int(0));
    CHECK(isqrt(Int(15)) == Int(3));
    CHECK(isqrt(Int(16)) == Int(4));
    CHECK(isqrt(int_pow(Int(10), 30) * 3) == Int("1732050807568877"));
    CHECK_THROWS_AS(isqrt(Int(-1)), DomainError);
    Int root;
    CHECK(is_perfect_square(Int(49), &root));
    CHECK(root == Int(7));
    CHECK_FALSE(is_perfect_square(Int(48)));
    CHECK(floor_div(Int(-7), Int(2)) == Int(-4));
}

TEST_CASE("polynomial arithmetic, division and gcd") {
    Poly p({Rat(1), Rat(0), Rat(-2), Rat(1)});       // 1 - 2t^2 + t^3
    Poly q({Rat(-1), Rat(1)});                        // t - 1
    CHECK(p.degree() == 3);
    CHECK(Poly().degree() == -1);
    CHECK(p.eval(Rat(2)) == Rat(1));
    auto [quo, rem] = divrem(p, q);
    CHECK(quo * q + rem == p);
    CHECK(exact_div(p - rem, q) == quo);

    Poly a = Poly::linear_root(Rat(1)) * Poly::linear_root(Rat(1)) * Poly::linear_root(Rat(-2));
    Poly b = Poly::linear_root(Rat(1)) * Poly::linear_root(Rat(-3));
    CHECK(poly_gcd(a, b) == Poly::linear_root(Rat(1)));
    CHECK_FALSE(is_squarefree(a));
    CHECK(squarefree_part(a) == Poly::linear_root(Rat(1)) * Poly::linear_root(Rat(-2)));
    CHECK(is_squarefree(squarefree_part(a)));

    Poly r({Rat(1), Rat(-2), Rat(3)});
    CHECK(r.reflect() == Poly({Rat(1), Rat(2), Rat(3)}));
    CHECK(r.derivative() == Poly({Rat(-2), Rat(6)}));
    CHECK(Poly({Rat(1), Rat(-2703), Rat(2703), Rat(-1)}).str() ==
          "1 - 2703*t + 2703*t^2 - t^3");
}

TEST_CASE("primitive integer coefficient extraction") {
    Poly p({Rat(2, 3), Rat(-4, 3), Rat(2)});
    auto [coeffs, scale] = primitive_integer_coeffs(p);
    CHECK(coeffs == std::vector<Int>{Int(1), Int(-2), Int(3)});
    CHECK(Poly::constant(scale) * Poly({Rat(1), Rat(-2), Rat(3)}) == p);

    std::vector<Rat> v{Rat(-2, 3), Rat(4, 3), Rat(-2)};
    CHECK(primitive_integer_vector(v) == std::vector<Rat>{Rat(1), Rat(-2), Rat(3)});
}

TEST_CASE("determinant agrees with cofactor expansion") {
    Mat m = Mat::from_rows({{1, 12, 6}, {0, 4, 3}, {0, -3, -2}});
    CHECK(det_bareiss(m) == Rat(1));
    CHECK(det_bareiss(Mat::from_rows({{2, 0}, {0, 3}})) == Rat(6));

    std::mt19937 g(20240811);
    for (int c = 0; c < 200; ++c) {
        Mat r = random_rational(g, 3);
        CHECK(det_bareiss(r) == oracles::det_cofactor(r));
    }
}

TEST_CASE("exact inverses round-trip on random unimodular matrices") {
    std::mt19937 g(987123);
    for (int c = 0; c < 200; ++c) {
        std::size_t n = 2 + static_cast<std::size_t>(c % 3);
        Mat m = random_unimodular(g, n);
        CHECK(det_bareiss(m).abs() == Rat(1));
        Mat inv = inverse(m);
        CHECK(inv.is_integer());
        CHECK(m * inv == Mat::identity(n));
        CHECK(inv * m == Mat::identity(n));
        CHECK(inv == oracles::inverse_adjugate(m));
    }
}

TEST_CASE("singular matrices are rejected with a determinant witness") {
    Mat s = Mat::from_rows({{1, 2}, {2, 4}});
    CHECK(det_bareiss(s) == Rat(0));
    try {
        inverse(s);
        FAIL("inverse of a singular matrix must throw");
    } catch (const SingularError& e) {
        CHECK(e.determinant == Rat(0));
    }
}

TEST_CASE("characteristic polynomial matches Laplace expansion") {
    Mat m = Mat::from_rows({{-44, -330, -615}, {60, 451, 840}, {165, 1230, 2296}});
    Poly chi = char_poly(m);
    CHECK(chi == Poly({Rat(1), Rat(-2703), Rat(2703), Rat(-1)}));
    CHECK(chi == oracles::charpoly_laplace(m));
    CHECK(poly_eval_matrix(chi, m) == Mat(3, 3));   // Cayley-Hamilton

    std::mt19937 g(55667788);
    for (int c = 0; c < 200; ++c) {
        Mat r = random_rational(g, 3);
        CHECK(char_poly(r) == oracles::charpoly_laplace(r));
    }
}

TEST_CASE("kernel bases are canonical and annihilated") {
    Mat rank1 = Mat::from_rows({{1, 2, 3}, {2, 4, 6}, {3, 6, 9}});
    auto basis = kernel_basis(rank1);
    REQUIRE(basis.size() == 2);
    // Each basis vector puts a 1 in its own free slot and 0 in the others.
    CHECK(basis[0] == std::vector<Rat>{Rat(-2), Rat(1), Rat(0)});
    CHECK(basis[1] == std::vector<Rat>{Rat(-3), Rat(0), Rat(1)});
    for (const auto& v : basis)
        CHECK(mat_vec(rank1, v) == std::vector<Rat>(3, Rat(0)));

    Mat m123 = Mat::from_rows({{1, 12, 6}, {0, 4, 3}, {0, -3, -2}});
    auto fixed = kernel_basis(m123 - Mat::identity(3));
    REQUIRE(fixed.size() == 1);
    CHECK(fixed[0] == std::vector<Rat>{Rat(1), Rat(0), Rat(0)});

    CHECK(kernel_basis(Mat::identity(3)).empty());
}

TEST_CASE("permutation matrices compose and conjugate consistently") {
    PermMat swap12 = PermMat::transposition(3, 0, 1);
    Mat p = swap12.to_mat();
    CHECK(p * p == Mat::identity(3));
    CHECK(swap12.inverse().to_mat() == p.transpose());

    Mat m = Mat::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
    Mat conj = perm_conjugate(swap12, m);
    CHECK(conj.at(0, 0) == Rat(5));      // row and column 0 and 1 swapped
    CHECK(conj.at(2, 2) == Rat(9));
    CHECK(conj == p * m * p);
}

TEST_CASE("matrix shape mismatches are reported") {
    CHECK_THROWS_AS(Mat::from_rows({{1, 2}, {3, 4}}) * Mat::from_rows({{1, 2, 3}}),
                    DimensionError);
    CHECK_THROWS_AS(Mat::from_rows({{1, 2}}).at(0, 5), DimensionError);
    CHECK_THROWS_AS(char_poly(Mat::from_rows({{1, 2, 3}})), DimensionError);
}
