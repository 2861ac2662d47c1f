#ifndef CYDYN_MATRIX_HPP
#define CYDYN_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "cydyn/poly.hpp"
#include "cydyn/rat.hpp"

namespace cydyn {

/* Dense exact matrices over Rat, sized for Picard-rank lattices (n <= ~10),
 * so clarity beats asymptotics throughout.  Determinants and inverses run
 * integer fraction-free elimination (Bareiss) after clearing denominators;
 * characteristic polynomials use Faddeev-LeVerrier with the det(a - t*I)
 * sign convention, leading coefficient (-1)^n.
 */

struct SingularError : Error {
    Rat determinant;
    explicit SingularError(Rat det)
        : Error("matrix is singular (determinant " + det.str() + ")"),
          determinant(std::move(det)) {}
};

class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rat(1);
        return m;
    }

    static Mat from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
        Mat m(rows.size(), rows.size() ? rows.begin()->size() : 0);
        std::size_t i = 0;
        for (const auto& r : rows) {
            internal_check(r.size() == m.cols_, "ragged row in from_rows");
            std::size_t j = 0;
            for (long long v : r) m.at(i, j++) = Rat(v);
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rat& at(std::size_t i, std::size_t j) {
        if (i >= rows_ || j >= cols_) throw DimensionError("matrix index out of range");
        return a_[i * cols_ + j];
    }
    const Rat& at(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw DimensionError("matrix index out of range");
        return a_[i * cols_ + j];
    }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

    friend Mat operator+(const Mat& x, const Mat& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw DimensionError("matrix sum shape mismatch");
        Mat r = x;
        for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += y.a_[k];
        return r;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw DimensionError("matrix difference shape mismatch");
        Mat r = x;
        for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= y.a_[k];
        return r;
    }
    friend Mat operator*(const Rat& s, const Mat& x) {
        Mat r = x;
        for (auto& v : r.a_) v *= s;
        return r;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.cols_ != y.rows_)
            throw DimensionError("matrix product shape mismatch: " +
                                 std::to_string(x.rows_) + "x" + std::to_string(x.cols_) +
                                 " * " + std::to_string(y.rows_) + "x" + std::to_string(y.cols_));
        Mat r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (x.at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    r.at(i, j) += x.at(i, k) * y.at(k, j);
            }
        return r;
    }

    Mat transpose() const {
        Mat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Rat trace() const {
        if (!is_square()) throw DimensionError("trace of non-square matrix");
        Rat t(0);
        for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
        return t;
    }

    bool is_integer() const {
        for (const auto& v : a_) if (!v.is_integer()) return false;
        return true;
    }

    std::vector<Rat> col(std::size_t j) const {
        std::vector<Rat> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    std::vector<Rat> row(std::size_t i) const {
        std::vector<Rat> r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
        return r;
    }

    // "[[1,12,6],[0,4,3],[0,-3,-2]]"
    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += (i ? ",[" : "[");
            for (std::size_t j = 0; j < cols_; ++j)
                s += (j ? "," : "") + at(i, j).str();
            s += "]";
        }
        return s + "]";
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

inline std::vector<Rat> mat_vec(const Mat& m, const std::vector<Rat>& v) {
    if (m.cols() != v.size()) throw DimensionError("matrix-vector shape mismatch");
    std::vector<Rat> r(m.rows(), Rat(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m.at(i, j) * v[j];
    return r;
}

inline Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.size() != b.size()) throw DimensionError("dot product length mismatch");
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

namespace detail {

// Clears denominators: returns (B, delta) with B integer and B = delta * m.
inline std::pair<std::vector<std::vector<Int>>, Int> integerize(const Mat& m) {
    Int delta = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            delta = int_lcm(delta, m.at(i, j).den());
    std::vector<std::vector<Int>> b(m.rows(), std::vector<Int>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rat& v = m.at(i, j);
            b[i][j] = v.num() * (delta / v.den());
        }
    return {std::move(b), std::move(delta)};
}

/* Fraction-free forward elimination (Bareiss) on an integer matrix with any
 * number of extra columns riding along.  Pivoting picks the first nonzero
 * entry in the column (deterministic); row swaps flip the determinant sign.
 * Returns false if some pivot column is all zero (singular left block).
 * On success b is upper triangular in its first n columns and b[n-1][n-1]
 * times the accumulated sign is det of the original left block.
 */
inline bool bareiss_forward(std::vector<std::vector<Int>>& b, std::size_t n, int& sign) {
    sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && b[piv][k] == 0) ++piv;
        if (piv == n) return false;
        if (piv != k) { std::swap(b[piv], b[k]); sign = -sign; }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < b[i].size(); ++j) {
                Int t = b[i][j] * b[k][k] - b[i][k] * b[k][j];
                internal_check(t % prev == 0, "Bareiss division not exact");
                b[i][j] = t / prev;
            }
            b[i][k] = 0;
        }
        prev = b[k][k];
    }
    return true;
}

} // namespace detail

inline Rat det_bareiss(const Mat& m) {
    if (!m.is_square()) throw DimensionError("determinant of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return Rat(1);
    auto [b, delta] = detail::integerize(m);
    int sign = 0;
    if (!detail::bareiss_forward(b, n, sign)) return Rat(0);
    // det(B) = delta^n det(m)
    return Rat(sign * b[n - 1][n - 1], int_pow(delta, unsigned(n)));
}

/* Exact inverse.  Forward-eliminates the integerized matrix augmented with
 * the identity, then back-substitutes over Q.  Throws SingularError (with
 * the zero determinant attached) when no inverse exists.
 */
inline Mat inverse(const Mat& m) {
    if (!m.is_square()) throw DimensionError("inverse of non-square matrix");
    std::size_t n = m.rows();
    auto [b, delta] = detail::integerize(m);
    for (std::size_t i = 0; i < n; ++i) {
        b[i].resize(2 * n, Int(0));
        b[i][n + i] = 1;
    }
    int sign = 0;
    if (!detail::bareiss_forward(b, n, sign)) throw SingularError(Rat(0));
    // Solve the triangular system for each augmented column; B^-1 = solution,
    // and m^-1 = delta * B^-1 since B = delta * m.
    Mat inv(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<Rat> x(n, Rat(0));
        for (std::size_t i = n; i-- > 0;) {
            Rat s = Rat(b[i][n + c]);
            for (std::size_t j = i + 1; j < n; ++j) s -= Rat(b[i][j]) * x[j];
            x[i] = s / Rat(b[i][i]);
        }
        for (std::size_t i = 0; i < n; ++i) inv.at(i, c) = Rat(delta) * x[i];
    }
    return inv;
}

/* Characteristic polynomial as det(m - t*I): degree n, leading coefficient
 * (-1)^n, returned ascending.  Faddeev-LeVerrier recurrence; the interior
 * trace divisions are exact in Rat.
 */
inline Poly char_poly(const Mat& m) {
    if (!m.is_square()) throw DimensionError("characteristic polynomial of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return Poly::constant(Rat(1));
    // det(t*I - m) = t^n + a[n-1] t^(n-1) + ... + a[0]
    std::vector<Rat> a(n, Rat(0));
    Mat acc = m;
    a[n - 1] = -acc.trace();
    for (std::size_t k = 2; k <= n; ++k) {
        Mat shifted = acc;
        for (std::size_t i = 0; i < n; ++i) shifted.at(i, i) += a[n - k + 1];
        acc = m * shifted;
        a[n - k] = -(acc.trace() / Rat(Int(k)));
    }
    std::vector<Rat> c(n + 1);
    Rat outer = (n % 2 == 0) ? Rat(1) : Rat(-1);   // det(m - tI) = (-1)^n det(tI - m)
    for (std::size_t k = 0; k < n; ++k) c[k] = outer * a[k];
    c[n] = outer;
    return Poly(std::move(c));
}

// p(m) by Horner over matrices.
inline Mat poly_eval_matrix(const Poly& p, const Mat& m) {
    if (!m.is_square()) throw DimensionError("polynomial of non-square matrix");
    std::size_t n = m.rows();
    Mat acc(n, n);
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        acc = m * acc;
        for (std::size_t d = 0; d < n; ++d) acc.at(d, d) += p.coeffs()[i];
    }
    return acc;
}

/* Kernel basis via reduced row echelon form.  One basis vector per free
 * column, in ascending free-column order, with a 1 in the free position and
 * the pivot entries back-substituted.  This normalization is canonical, so
 * the basis is deterministic.
 */
inline std::vector<std::vector<Rat>> kernel_basis(const Mat& m) {
    std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Rat>> a(rows);
    for (std::size_t i = 0; i < rows; ++i) a[i] = m.row(i);

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        Rat inv = a[r][c].inverse();
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Rat f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }

    std::vector<std::vector<Rat>> basis;
    std::size_t next_pivot = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        if (next_pivot < pivot_col.size() && pivot_col[next_pivot] == c) {
            ++next_pivot;
            continue;
        }
        std::vector<Rat> v(cols, Rat(0));
        v[c] = Rat(1);
        for (std::size_t p = 0; p < pivot_col.size(); ++p)
            v[pivot_col[p]] = -a[p][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

/* Scales a nonzero rational vector to integer coordinates with content 1 and
 * first nonzero coordinate positive.  Canonical representative of the ray
 * pair {+-v} up to the overall sign choice.
 */
inline std::vector<Rat> primitive_integer_vector(const std::vector<Rat>& v) {
    Int den = 1;
    for (const Rat& x : v) den = int_lcm(den, x.den());
    Int content = 0;
    int first_sign = 0;
    for (const Rat& x : v) {
        Int scaled = x.num() * (den / x.den());
        content = int_gcd(content, int_abs(scaled));
        if (first_sign == 0 && scaled != 0) first_sign = scaled < 0 ? -1 : 1;
    }
    if (first_sign == 0) throw DomainError("primitive scaling of zero vector");
    std::vector<Rat> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = Rat(v[i].num() * (den / v[i].den()) * first_sign / content);
    return out;
}

/* Permutations of basis indices, stored as images: p maps basis vector i to
 * basis vector image[i].  Used for the cyclic relabelings that turn one
 * fibration's translation matrix into another's.
 */
class PermMat {
public:
    explicit PermMat(std::size_t n) : img_(n) {
        std::iota(img_.begin(), img_.end(), std::size_t{0});
    }
    explicit PermMat(std::vector<std::size_t> images) : img_(std::move(images)) {
        std::vector<bool> seen(img_.size(), false);
        for (std::size_t v : img_) {
            if (v >= img_.size() || seen[v]) throw DomainError("not a permutation");
            seen[v] = true;
        }
    }

    static PermMat transposition(std::size_t n, std::size_t a, std::size_t b) {
        PermMat p(n);
        if (a >= n || b >= n) throw DimensionError("transposition index out of range");
        std::swap(p.img_[a], p.img_[b]);
        return p;
    }

    std::size_t size() const { return img_.size(); }
    std::size_t operator()(std::size_t i) const { return img_.at(i); }

    PermMat inverse() const {
        std::vector<std::size_t> inv(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i) inv[img_[i]] = i;
        return PermMat(std::move(inv));
    }

    // (p * q) sends i to p(q(i)).
    friend PermMat operator*(const PermMat& p, const PermMat& q) {
        if (p.size() != q.size()) throw DimensionError("permutation size mismatch");
        std::vector<std::size_t> img(p.size());
        for (std::size_t i = 0; i < img.size(); ++i) img[i] = p.img_[q.img_[i]];
        return PermMat(std::move(img));
    }

    Mat to_mat() const {
        Mat m(img_.size(), img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i) m.at(img_[i], i) = Rat(1);
        return m;
    }

private:
    std::vector<std::size_t> img_;
};

// p m p^-1: the matrix of the same map in the permuted basis.
inline Mat perm_conjugate(const PermMat& p, const Mat& m) {
    if (!m.is_square() || m.rows() != p.size())
        throw DimensionError("permutation conjugation shape mismatch");
    return p.to_mat() * m * p.inverse().to_mat();
}

} // namespace cydyn

#endif
