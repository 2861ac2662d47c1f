#ifndef CYDYN_TESTS_SUPPORT_ORACLES_HPP
#define CYDYN_TESTS_SUPPORT_ORACLES_HPP

/* Slow, independent reimplementations used only to cross-check the library.
 * Nothing here shares code paths with the implementations under test:
 * cofactor expansion instead of Bareiss, Laplace over polynomial entries
 * instead of Faddeev-LeVerrier, an untruncated multinomial expansion instead
 * of the truncated product ring, and the cubic discriminant instead of Sturm
 * chains.
 */

#include <map>
#include <vector>

#include "cydyn/matrix.hpp"
#include "cydyn/poly.hpp"

namespace oracles {

using cydyn::Int;
using cydyn::Mat;
using cydyn::Poly;
using cydyn::Rat;

inline Mat minor_of(const Mat& m, std::size_t row, std::size_t col) {
    std::size_t n = m.rows();
    Mat out(n - 1, n - 1);
    for (std::size_t i = 0, ti = 0; i < n; ++i) {
        if (i == row) continue;
        for (std::size_t j = 0, tj = 0; j < n; ++j) {
            if (j == col) continue;
            out.at(ti, tj) = m.at(i, j);
            ++tj;
        }
        ++ti;
    }
    return out;
}

inline Rat det_cofactor(const Mat& m) {
    std::size_t n = m.rows();
    if (n == 1) return m.at(0, 0);
    Rat acc;
    for (std::size_t j = 0; j < n; ++j) {
        Rat term = m.at(0, j) * det_cofactor(minor_of(m, 0, j));
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

inline Mat inverse_adjugate(const Mat& m) {
    std::size_t n = m.rows();
    Rat d = det_cofactor(m);
    Mat inv(n, n);
    if (n == 1) {
        inv.at(0, 0) = d.inverse();
        return inv;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rat cof = det_cofactor(minor_of(m, i, j));
            if ((i + j) % 2 == 1) cof = -cof;
            inv.at(j, i) = cof / d;      // adjugate transposes the cofactor grid
        }
    return inv;
}

// Determinant of (m - t*I) by Laplace expansion over polynomial entries.
namespace detail {

inline Poly det_poly(const std::vector<std::vector<Poly>>& a) {
    std::size_t n = a.size();
    if (n == 1) return a[0][0];
    Poly acc;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Poly>> sub;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Poly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            sub.push_back(std::move(row));
        }
        Poly term = a[0][j] * det_poly(sub);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

} // namespace detail

inline Poly charpoly_laplace(const Mat& m) {
    std::size_t n = m.rows();
    std::vector<std::vector<Poly>> a(n, std::vector<Poly>(n));
    Poly minus_t({Rat(0), Rat(-1)});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = Poly::constant(m.at(i, j));
            if (i == j) a[i][j] = a[i][j] + minus_t;
        }
    return detail::det_poly(a);
}

/* Coefficient of prod_i h_i^{dims[i]} in a product of linear forms
 * sum_i c_i h_i, multiplied out with no truncation at all.  Terms whose
 * exponents overshoot some factor dimension simply fail to match the top
 * monomial at the end.
 */
inline Int top_coefficient(const std::vector<unsigned>& dims,
                           const std::vector<std::vector<Int>>& linear_factors) {
    std::map<std::vector<unsigned>, Int> acc;
    acc[std::vector<unsigned>(dims.size(), 0)] = 1;
    for (const auto& f : linear_factors) {
        std::map<std::vector<unsigned>, Int> next;
        for (const auto& [expo, coeff] : acc)
            for (std::size_t i = 0; i < dims.size(); ++i) {
                if (f[i] == 0) continue;
                std::vector<unsigned> e2 = expo;
                ++e2[i];
                next[e2] += coeff * f[i];
            }
        acc = std::move(next);
    }
    auto it = acc.find(dims);
    return it == acc.end() ? Int(0) : it->second;
}

/* Number of distinct real roots of a squarefree cubic a3 t^3 + ... + a0 via
 * the discriminant: positive means three, negative means one.  Returns -1
 * when the discriminant vanishes, which a squarefree cubic never hits.
 */
inline int cubic_real_root_count(const Rat& a0, const Rat& a1, const Rat& a2, const Rat& a3) {
    const Rat &d = a0, &c = a1, &b = a2, &a = a3;
    Rat disc = Rat(18) * a * b * c * d - Rat(4) * b.pow(3) * d + b.pow(2) * c.pow(2) -
               Rat(4) * a * c.pow(3) - Rat(27) * a.pow(2) * d.pow(2);
    if (disc.sign() > 0) return 3;
    if (disc.sign() < 0) return 1;
    return -1;
}

} // namespace oracles

#endif
