#pragma once

#include "gha/coeff.hpp"
#include "gha/numeric.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <vector>

namespace gha {

/******** Dense exact matrices ********/

struct QMat {
    int rows = 0, cols = 0;
    std::vector<Rational> a;

    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Rational& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rational& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static QMat identity(int n) {
        QMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool is_zero() const {
        return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x == 0; });
    }

    QMat mul(const QMat& o) const {
        assert(cols == o.rows);
        QMat r(rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                if (at(i, k) == 0) continue;
                for (int j = 0; j < o.cols; ++j)
                    if (o.at(k, j) != 0) r.at(i, j) += at(i, k) * o.at(k, j);
            }
        return r;
    }

    QMat transpose() const {
        QMat r(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    /* Columns of this followed by columns of o. */
    QMat hcat(const QMat& o) const {
        assert(rows == o.rows);
        QMat r(rows, cols + o.cols);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
            for (int j = 0; j < o.cols; ++j) r.at(i, cols + j) = o.at(i, j);
        }
        return r;
    }
};

struct IMat {
    int rows = 0, cols = 0;
    std::vector<Int> a;

    IMat() = default;
    IMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static IMat identity(int n) {
        IMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
};

/* Scale each row by the lcm of its entries' denominators. Row scalings by
 * coefficient-ring units leave kernels, solvability and cokernel structure
 * unchanged; the invariants on ring elements guarantee all denominators are
 * units. */
inline IMat clear_denominators(const QMat& m, const CoefficientRing& coeff) {
    IMat r(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i) {
        Int l = 1;
        for (int j = 0; j < m.cols; ++j) l = int_lcm(l, den(m.at(i, j)));
        if (!coeff.is_unit(Rational(l)))
            fail_input("ParseError", "matrix entry denominator is not a unit in " + coeff.describe());
        for (int j = 0; j < m.cols; ++j) {
            Rational v = m.at(i, j) * l;
            r.at(i, j) = num(v);
        }
    }
    return r;
}

/******** Gaussian elimination over Q ********/

inline int rank_q(QMat m) {
    int r = 0;
    for (int j = 0; j < m.cols && r < m.rows; ++j) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, j) != 0) { piv = i; break; }
        if (piv < 0) continue;
        for (int j2 = 0; j2 < m.cols; ++j2) std::swap(m.at(piv, j2), m.at(r, j2));
        Rational p = m.at(r, j);
        for (int i = r + 1; i < m.rows; ++i) {
            if (m.at(i, j) == 0) continue;
            Rational f = m.at(i, j) / p;
            for (int j2 = j; j2 < m.cols; ++j2) m.at(i, j2) -= f * m.at(r, j2);
        }
        ++r;
    }
    return r;
}

/* Solve A x = b over Q; nullopt when inconsistent. */
inline std::optional<std::vector<Rational>> solve_q(QMat m, std::vector<Rational> b) {
    assert(static_cast<int>(b.size()) == m.rows);
    std::vector<int> pivot_col;
    int r = 0;
    for (int j = 0; j < m.cols && r < m.rows; ++j) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, j) != 0) { piv = i; break; }
        if (piv < 0) continue;
        for (int j2 = 0; j2 < m.cols; ++j2) std::swap(m.at(piv, j2), m.at(r, j2));
        std::swap(b[piv], b[r]);
        Rational p = m.at(r, j);
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, j) == 0) continue;
            Rational f = m.at(i, j) / p;
            for (int j2 = j; j2 < m.cols; ++j2) m.at(i, j2) -= f * m.at(r, j2);
            b[i] -= f * b[r];
        }
        pivot_col.push_back(j);
        ++r;
    }
    for (int i = r; i < m.rows; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<Rational> x(m.cols);
    for (int t = 0; t < r; ++t) x[pivot_col[t]] = b[t] / m.at(t, pivot_col[t]);
    return x;
}

/* Rank of an integer matrix over F_p. */
inline int rank_mod_p(IMat m, const Int& p) {
    auto red = [&](Int v) { v %= p; if (v < 0) v += p; return v; };
    for (Int& v : m.a) v = red(v);
    int r = 0;
    for (int j = 0; j < m.cols && r < m.rows; ++j) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, j) != 0) { piv = i; break; }
        if (piv < 0) continue;
        for (int j2 = 0; j2 < m.cols; ++j2) std::swap(m.at(piv, j2), m.at(r, j2));
        Int pv = m.at(r, j);
        /* modular inverse by extended gcd */
        Int t0 = 0, t1 = 1, r0 = p, r1 = pv;
        while (r1 != 0) {
            Int q = r0 / r1;
            t0 -= q * t1; std::swap(t0, t1);
            r0 -= q * r1; std::swap(r0, r1);
        }
        Int inv = red(t0);
        for (int i = r + 1; i < m.rows; ++i) {
            if (m.at(i, j) == 0) continue;
            Int f = red(m.at(i, j) * inv);
            for (int j2 = j; j2 < m.cols; ++j2) m.at(i, j2) = red(m.at(i, j2) - f * m.at(r, j2));
        }
        ++r;
    }
    return r;
}

/******** Smith normal form ********/

struct SmithForm {
    std::vector<Int> divisors; // diagonal, d_i | d_{i+1}, zeros trimmed
    IMat U, V;                 // U * A * V = D, both unimodular
    int rows = 0, cols = 0;
};

inline SmithForm smith_normal_form(IMat A) {
    SmithForm s;
    s.rows = A.rows;
    s.cols = A.cols;
    s.U = IMat::identity(A.rows);
    s.V = IMat::identity(A.cols);

    auto row_op = [&](int i1, int i2, const Int& f) { // row i1 -= f * row i2
        for (int j = 0; j < A.cols; ++j) A.at(i1, j) -= f * A.at(i2, j);
        for (int j = 0; j < s.U.cols; ++j) s.U.at(i1, j) -= f * s.U.at(i2, j);
    };
    auto col_op = [&](int j1, int j2, const Int& f) { // col j1 -= f * col j2
        for (int i = 0; i < A.rows; ++i) A.at(i, j1) -= f * A.at(i, j2);
        for (int i = 0; i < s.V.rows; ++i) s.V.at(i, j1) -= f * s.V.at(i, j2);
    };
    auto swap_rows = [&](int i1, int i2) {
        for (int j = 0; j < A.cols; ++j) std::swap(A.at(i1, j), A.at(i2, j));
        for (int j = 0; j < s.U.cols; ++j) std::swap(s.U.at(i1, j), s.U.at(i2, j));
    };
    auto swap_cols = [&](int j1, int j2) {
        for (int i = 0; i < A.rows; ++i) std::swap(A.at(i, j1), A.at(i, j2));
        for (int i = 0; i < s.V.rows; ++i) std::swap(s.V.at(i, j1), s.V.at(i, j2));
    };

    int t = 0;
    int bound = std::min(A.rows, A.cols);
    while (t < bound) {
        /* pivot: nonzero entry of minimal absolute value in A[t.., t..] */
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < A.rows; ++i)
            for (int j = t; j < A.cols; ++j) {
                const Int& v = A.at(i, j);
                if (v == 0) continue;
                Int av = boost::multiprecision::abs(v);
                if (pi < 0 || av < best) { best = av; pi = i; pj = j; }
            }
        if (pi < 0) break;
        swap_rows(t, pi);
        swap_cols(t, pj);

        bool clean = true;
        for (int i = t + 1; i < A.rows; ++i) {
            if (A.at(i, t) == 0) continue;
            Int q = A.at(i, t) / A.at(t, t);
            row_op(i, t, q);
            if (A.at(i, t) != 0) clean = false;
        }
        for (int j = t + 1; j < A.cols; ++j) {
            if (A.at(t, j) == 0) continue;
            Int q = A.at(t, j) / A.at(t, t);
            col_op(j, t, q);
            if (A.at(t, j) != 0) clean = false;
        }
        if (!clean) continue; // pivot shrank; repeat with the smaller remainder

        /* enforce divisibility d_t | everything below-right */
        bool redo = false;
        for (int i = t + 1; i < A.rows && !redo; ++i)
            for (int j = t + 1; j < A.cols && !redo; ++j)
                if (A.at(i, j) % A.at(t, t) != 0) {
                    row_op(t, i, Int(-1)); // add row i to row t, creates a reducible entry
                    redo = true;
                }
        if (redo) continue;

        if (A.at(t, t) < 0) {
            for (int j = 0; j < A.cols; ++j) A.at(t, j) = -A.at(t, j);
            for (int j = 0; j < s.U.cols; ++j) s.U.at(t, j) = -s.U.at(t, j);
        }
        ++t;
    }
    for (int i = 0; i < t; ++i) s.divisors.push_back(A.at(i, i));
    return s;
}

/* Basis of {x : A x = 0} as columns; generates the full integer kernel
 * lattice (saturated), because it comes from the unimodular V. */
inline IMat kernel_lattice(const IMat& A) {
    SmithForm s = smith_normal_form(A);
    int r = static_cast<int>(s.divisors.size());
    IMat K(A.cols, A.cols - r);
    for (int j = r; j < A.cols; ++j)
        for (int i = 0; i < A.cols; ++i) K.at(i, j - r) = s.V.at(i, j);
    return K;
}

/* Finitely generated module over the coefficient ring:
 * R0^free_rank  (+)  sum R0/(d) over torsion divisors. */
struct SliceModule {
    int free_rank = 0;
    std::vector<Int> torsion;

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool is_free() const { return torsion.empty(); }
};

/* Structure of coker(A : R0^cols -> R0^rows). */
inline SliceModule coker_structure(const IMat& A, const CoefficientRing& coeff) {
    SmithForm s = smith_normal_form(A);
    SliceModule m;
    m.free_rank = A.rows - static_cast<int>(s.divisors.size());
    for (const Int& d : s.divisors)
        if (!coeff.is_unit_int(d)) m.torsion.push_back(d);
    return m;
}

/* Structure of ker(A) / im(B) over R0, assuming A*B = 0 (checked upstream).
 * Columns of B are expressed in the saturated kernel lattice of A; the
 * coordinates are integers because the lattice is saturated. */
inline SliceModule homology_structure(const QMat& Aq, const QMat& Bq, const CoefficientRing& coeff) {
    assert(Aq.cols == Bq.rows);
    IMat A = clear_denominators(Aq, coeff);
    IMat B = clear_denominators(Bq, coeff);
    IMat K = kernel_lattice(A);
    /* solve K * C = B over Q, entry by entry column */
    QMat Kq(K.rows, K.cols);
    for (int i = 0; i < K.rows; ++i)
        for (int j = 0; j < K.cols; ++j) Kq.at(i, j) = Rational(K.at(i, j));
    IMat C(K.cols, B.cols);
    for (int j = 0; j < B.cols; ++j) {
        std::vector<Rational> b(B.rows);
        for (int i = 0; i < B.rows; ++i) b[i] = Rational(B.at(i, j));
        auto x = solve_q(Kq, b);
        if (!x) fail_input("ParseError", "image does not lie in the kernel (d^2 != 0?)");
        for (int i = 0; i < K.cols; ++i) {
            if (den((*x)[i]) != 1)
                fail_input("ParseError", "non-integral kernel coordinates"); // unreachable for saturated lattices
            C.at(i, j) = num((*x)[i]);
        }
    }
    return coker_structure(C, coeff);
}

/* Solve A x = b with x over the coefficient ring R0 (not merely over Q). */
inline std::optional<std::vector<Rational>> solve_over(const QMat& Aq,
                                                       const std::vector<Rational>& bq,
                                                       const CoefficientRing& coeff) {
    QMat Ab = Aq.hcat(QMat(Aq.rows, 1));
    for (int i = 0; i < Aq.rows; ++i) Ab.at(i, Aq.cols) = bq[i];
    IMat M = clear_denominators(Ab, coeff);
    IMat A(Aq.rows, Aq.cols);
    std::vector<Int> b(Aq.rows);
    for (int i = 0; i < Aq.rows; ++i) {
        for (int j = 0; j < Aq.cols; ++j) A.at(i, j) = M.at(i, j);
        b[i] = M.at(i, Aq.cols);
    }
    SmithForm s = smith_normal_form(A);
    int r = static_cast<int>(s.divisors.size());
    std::vector<Rational> c(A.rows);
    for (int i = 0; i < A.rows; ++i) {
        Rational acc = 0;
        for (int j = 0; j < A.rows; ++j) acc += Rational(s.U.at(i, j)) * Rational(b[j]);
        c[i] = acc;
    }
    std::vector<Rational> y(A.cols);
    for (int i = 0; i < A.rows; ++i) {
        if (i < r) {
            Rational yi = c[i] / Rational(s.divisors[i]);
            if (!coeff.contains(yi)) return std::nullopt;
            y[i] = yi;
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Rational> x(A.cols);
    for (int i = 0; i < A.cols; ++i) {
        Rational acc = 0;
        for (int j = 0; j < A.cols; ++j)
            if (y[j] != 0) acc += Rational(s.V.at(i, j)) * y[j];
        x[i] = acc;
    }
    return x;
}

/* Surjectivity of A : R0^cols -> R0^rows. */
inline bool surjective_over(const QMat& Aq, const CoefficientRing& coeff) {
    IMat A = clear_denominators(Aq, coeff);
    SmithForm s = smith_normal_form(A);
    if (static_cast<int>(s.divisors.size()) < A.rows) return false;
    for (const Int& d : s.divisors)
        if (!coeff.is_unit_int(d)) return false;
    return true;
}

} // namespace gha
