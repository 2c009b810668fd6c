#pragma once

#include "gha/certify.hpp"
#include "gha/module.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gha {

/******** Bounded chain complexes of free modules ********/

/* terms[n] and diffs[n] : terms[n] -> terms[n-1]; homological degree carries
 * the Koszul parity (-1)^n under the default grading. */
struct ChainComplex {
    GradedRing ring;
    std::map<int, FreeGradedModule> terms;
    std::map<int, GradedMatrix> diffs;

    FreeGradedModule term(int n) const {
        auto it = terms.find(n);
        if (it != terms.end()) return it->second;
        return FreeGradedModule{ring, {}};
    }

    GradedMatrix diff(int n) const {
        auto it = diffs.find(n);
        if (it != diffs.end()) return it->second;
        return GradedMatrix(term(n), term(n - 1));
    }

    int lo() const {
        int v = 0;
        bool first = true;
        for (const auto& [n, t] : terms)
            if (t.rank() > 0) { v = first ? n : std::min(v, n); first = false; }
        return v;
    }
    int hi() const {
        int v = 0;
        bool first = true;
        for (const auto& [n, t] : terms)
            if (t.rank() > 0) { v = first ? n : std::max(v, n); first = false; }
        return v;
    }
    bool is_empty() const {
        for (const auto& [n, t] : terms)
            if (t.rank() > 0) return false;
        return true;
    }
};

inline ChainComplex unit_complex(const GradedRing& r) {
    ChainComplex x;
    x.ring = r;
    x.terms[0] = unit_module(r);
    return x;
}

inline ChainComplex module_in_degree(const FreeGradedModule& m, int n) {
    ChainComplex x;
    x.ring = m.ring;
    x.terms[n] = m;
    return x;
}

/* d^2 = 0 and entry homogeneity; throws DSquaredNonzero(n) at the first
 * failing degree. */
inline void validate(const ChainComplex& x) {
    for (const auto& [n, d] : x.diffs) {
        if (!module_equal(d.src, x.term(n)) || !module_equal(d.tgt, x.term(n - 1)))
            fail_input("GradingMismatch", "differential endpoints disagree with the terms");
        if (!(d.shift == Shift{0, 0}))
            fail_input("NonHomogeneousPresentation", "differentials carry no intrinsic shift");
        validate_matrix(d);
    }
    for (const auto& [n, d] : x.diffs) {
        auto up = x.diffs.find(n + 1);
        if (up == x.diffs.end()) continue;
        if (!matrix_is_zero(compose(d, up->second)))
            fail_math("DSquaredNonzero", "d^2 != 0 at degree " + std::to_string(n + 1));
    }
}

/******** Structural operations ********/

inline ChainComplex shift_complex(const ChainComplex& x, int k) {
    ChainComplex y;
    y.ring = x.ring;
    for (const auto& [n, t] : x.terms) y.terms[n + k] = t;
    for (const auto& [n, d] : x.diffs) {
        GradedMatrix m = (k % 2 == 0) ? d : scale_matrix(d, Rational(-1));
        y.diffs[n + k] = m;
    }
    return y;
}

/* (X^v)_{-n} = (X_n)^v with differential carrying the fixed sign convention;
 * tests assert ranks, which are convention-stable. */
inline ChainComplex dual_complex(const ChainComplex& x) {
    ChainComplex y;
    y.ring = x.ring;
    for (const auto& [n, t] : x.terms) y.terms[-n] = dual(t);
    for (const auto& [n, d] : x.diffs) {
        int m = -n + 1; // dual of d_n lands at position m
        GradedMatrix dm = dual_matrix(d);
        if (((m % 2) + 2) % 2 == 1) dm = scale_matrix(dm, Rational(-1));
        GradedMatrix placed(y.term(m), y.term(m - 1));
        placed.e = dm.e;
        y.diffs[m] = placed;
    }
    return y;
}

inline ChainComplex direct_sum_complex(const ChainComplex& a, const ChainComplex& b) {
    if (!ring_equal(a.ring, b.ring)) fail_input("RingMismatch", "sum over different rings");
    ChainComplex y;
    y.ring = a.ring;
    int lo = std::min(a.lo(), b.lo()) - 1, hi = std::max(a.hi(), b.hi()) + 1;
    for (int n = lo; n <= hi; ++n) {
        FreeGradedModule t = direct_sum(a.term(n), b.term(n));
        if (t.rank() > 0) y.terms[n] = t;
    }
    for (int n = lo; n <= hi; ++n) {
        if (y.term(n).rank() == 0 || y.term(n - 1).rank() == 0) continue;
        GradedMatrix d = direct_sum_matrix(a.diff(n), b.diff(n));
        GradedMatrix placed(y.term(n), y.term(n - 1));
        placed.e = d.e;
        if (!matrix_is_zero(placed)) y.diffs[n] = placed;
    }
    return y;
}

/******** Chain maps, cones, fibers ********/

struct ChainMap {
    ChainComplex src, tgt;
    std::map<int, GradedMatrix> components;

    GradedMatrix component(int n) const {
        auto it = components.find(n);
        if (it != components.end()) return it->second;
        return GradedMatrix(src.term(n), tgt.term(n));
    }
};

inline void validate(const ChainMap& f) {
    validate(f.src);
    validate(f.tgt);
    for (const auto& [n, c] : f.components) {
        if (!module_equal(c.src, f.src.term(n)) || !module_equal(c.tgt, f.tgt.term(n)))
            fail_input("GradingMismatch", "chain map component endpoints mismatch");
        validate_matrix(c);
    }
    int lo = std::min(f.src.lo(), f.tgt.lo()), hi = std::max(f.src.hi(), f.tgt.hi());
    for (int n = lo; n <= hi + 1; ++n) {
        GradedMatrix lhs = compose(f.tgt.diff(n), f.component(n));
        GradedMatrix rhs = compose(f.component(n - 1), f.src.diff(n));
        GradedMatrix diffm = add_matrices(lhs, scale_matrix(rhs, Rational(-1)));
        if (!matrix_is_zero(diffm))
            fail_input("GradingMismatch",
                       "chain map does not commute with differentials at " + std::to_string(n));
    }
}

inline ChainMap identity_chain_map(const ChainComplex& x) {
    ChainMap f{x, x, {}};
    for (const auto& [n, t] : x.terms)
        if (t.rank() > 0) f.components[n] = identity_matrix(t);
    return f;
}

/* cone(f)_n = X_{n-1} (+) Y_n,  d(x,y) = (-d x, f x + d y) */
inline ChainComplex cone(const ChainMap& f) {
    const ChainComplex &X = f.src, &Y = f.tgt;
    if (!ring_equal(X.ring, Y.ring)) fail_input("RingMismatch", "cone over different rings");
    ChainComplex c;
    c.ring = X.ring;
    int lo = std::min(X.lo(), Y.lo()), hi = std::max(X.hi() + 1, Y.hi());
    for (int n = lo; n <= hi; ++n) {
        FreeGradedModule t = direct_sum(X.term(n - 1), Y.term(n));
        if (t.rank() > 0) c.terms[n] = t;
    }
    for (int n = lo; n <= hi; ++n) {
        if (c.term(n).rank() == 0 || c.term(n - 1).rank() == 0) continue;
        GradedMatrix d(c.term(n), c.term(n - 1));
        GradedMatrix dx = X.diff(n - 1), dy = Y.diff(n), fc = f.component(n - 1);
        int xr = X.term(n - 2).rank();
        for (int i = 0; i < dx.rows(); ++i)
            for (int j = 0; j < dx.cols(); ++j) d.at(i, j) = negate(dx.at(i, j));
        for (int i = 0; i < fc.rows(); ++i)
            for (int j = 0; j < fc.cols(); ++j) d.at(xr + i, j) = fc.at(i, j);
        for (int i = 0; i < dy.rows(); ++i)
            for (int j = 0; j < dy.cols(); ++j)
                d.at(xr + i, X.term(n - 1).rank() + j) = dy.at(i, j);
        if (!matrix_is_zero(d)) c.diffs[n] = d;
    }
    return c;
}

inline ChainComplex fiber(const ChainMap& f) { return shift_complex(cone(f), -1); }

/* canonical inclusion Y -> cone(f) */
inline ChainMap cone_inclusion(const ChainMap& f, const ChainComplex& c) {
    ChainMap incl{f.tgt, c, {}};
    for (const auto& [n, t] : f.tgt.terms) {
        if (t.rank() == 0 || c.term(n).rank() == 0) continue;
        GradedMatrix m(t, c.term(n));
        int xr = f.src.term(n - 1).rank();
        for (int j = 0; j < t.rank(); ++j) m.at(xr + j, j) = ring_one(c.ring);
        incl.components[n] = m;
    }
    return incl;
}

/* canonical projection fiber(f) -> X */
inline ChainMap fiber_projection(const ChainMap& f, const ChainComplex& fib) {
    ChainMap proj{fib, f.src, {}};
    for (const auto& [n, t] : fib.terms) {
        if (t.rank() == 0 || f.src.term(n).rank() == 0) continue;
        GradedMatrix m(t, f.src.term(n));
        for (int i = 0; i < f.src.term(n).rank(); ++i) m.at(i, i) = ring_one(f.src.ring);
        proj.components[n] = m;
    }
    return proj;
}

/******** Chain map algebra ********/

inline ChainMap compose_chain_maps(const ChainMap& g, const ChainMap& f) {
    ChainMap out{f.src, g.tgt, {}};
    int lo = std::min(f.src.lo(), g.tgt.lo()), hi = std::max(f.src.hi(), g.tgt.hi());
    for (int n = lo; n <= hi; ++n) {
        if (out.src.term(n).rank() == 0 || out.tgt.term(n).rank() == 0) continue;
        GradedMatrix m = compose(g.component(n), f.component(n));
        if (!matrix_is_zero(m)) out.components[n] = m;
    }
    return out;
}

inline ChainMap shift_chain_map(const ChainMap& f, int k) {
    ChainMap out{shift_complex(f.src, k), shift_complex(f.tgt, k), {}};
    for (const auto& [n, c] : f.components) out.components[n + k] = c;
    return out;
}

inline ChainMap dual_chain_map(const ChainMap& f) {
    ChainMap out{dual_complex(f.tgt), dual_complex(f.src), {}};
    for (const auto& [n, c] : f.components) {
        GradedMatrix d = dual_matrix(c);
        GradedMatrix placed(out.src.term(-n), out.tgt.term(-n));
        placed.e = d.e;
        if (!matrix_is_zero(placed)) out.components[-n] = placed;
    }
    return out;
}

/* projections and inclusions for a direct sum built by direct_sum_complex */
inline ChainMap sum_projection(const ChainComplex& a, const ChainComplex& b,
                               const ChainComplex& sum, bool first) {
    const ChainComplex& part = first ? a : b;
    ChainMap out{sum, part, {}};
    for (const auto& [n, t] : sum.terms) {
        if (t.rank() == 0 || part.term(n).rank() == 0) continue;
        GradedMatrix m(t, part.term(n));
        int off = first ? 0 : a.term(n).rank();
        for (int i = 0; i < part.term(n).rank(); ++i) m.at(i, off + i) = ring_one(sum.ring);
        out.components[n] = m;
    }
    return out;
}

/* [p | q] : A (+) B -> C from p : A -> C and q : B -> C */
inline ChainMap sum_into(const ChainComplex& sum, const ChainMap& p, const ChainMap& q) {
    ChainMap out{sum, p.tgt, {}};
    for (const auto& [n, t] : sum.terms) {
        if (t.rank() == 0 || p.tgt.term(n).rank() == 0) continue;
        GradedMatrix m(t, p.tgt.term(n));
        GradedMatrix pc = p.component(n), qc = q.component(n);
        for (int i = 0; i < m.rows(); ++i) {
            for (int j = 0; j < pc.cols(); ++j) m.at(i, j) = pc.at(i, j);
            for (int j = 0; j < qc.cols(); ++j) m.at(i, pc.cols() + j) = qc.at(i, j);
        }
        if (!matrix_is_zero(m)) out.components[n] = m;
    }
    return out;
}

/******** Tensor product of complexes ********/

/* (X (x) Y)_n = (+)_{i+j=n} X_i (x) Y_j,  d = d_X (x) 1 + (-1)^i (x) d_Y */
inline ChainComplex tensor_complex(const ChainComplex& X, const ChainComplex& Y) {
    if (!ring_equal(X.ring, Y.ring)) fail_input("RingMismatch", "tensor over different rings");
    ChainComplex t;
    t.ring = X.ring;
    int lo = X.lo() + Y.lo(), hi = X.hi() + Y.hi();
    if (X.is_empty() || Y.is_empty()) return t;

    /* block layout per degree: pairs (i, j = n - i), i ascending, skipping
     * rank-0 blocks */
    auto blocks = [&](int n) {
        std::vector<std::pair<int, int>> out;
        for (int i = X.lo(); i <= X.hi(); ++i) {
            int j = n - i;
            if (j < Y.lo() || j > Y.hi()) continue;
            if (X.term(i).rank() == 0 || Y.term(j).rank() == 0) continue;
            out.push_back({i, j});
        }
        return out;
    };
    auto offsets = [&](const std::vector<std::pair<int, int>>& bl) {
        std::vector<int> off;
        int acc = 0;
        for (const auto& [i, j] : bl) {
            off.push_back(acc);
            acc += X.term(i).rank() * Y.term(j).rank();
        }
        off.push_back(acc);
        return off;
    };

    for (int n = lo; n <= hi; ++n) {
        FreeGradedModule term{t.ring, {}};
        for (const auto& [i, j] : blocks(n)) {
            FreeGradedModule b = tensor(X.term(i), Y.term(j));
            term.shifts.insert(term.shifts.end(), b.shifts.begin(), b.shifts.end());
        }
        if (term.rank() > 0) t.terms[n] = term;
    }
    for (int n = lo; n <= hi; ++n) {
        if (t.term(n).rank() == 0 || t.term(n - 1).rank() == 0) continue;
        auto src_bl = blocks(n), tgt_bl = blocks(n - 1);
        auto src_off = offsets(src_bl), tgt_off = offsets(tgt_bl);
        GradedMatrix d(t.term(n), t.term(n - 1));
        for (size_t sb = 0; sb < src_bl.size(); ++sb) {
            auto [i, j] = src_bl[sb];
            /* d_X (x) 1 : block (i-1, j) */
            for (size_t tb = 0; tb < tgt_bl.size(); ++tb) {
                GradedMatrix part;
                if (tgt_bl[tb] == std::make_pair(i - 1, j))
                    part = tensor_map(X.diff(i), identity_matrix(Y.term(j)));
                else if (tgt_bl[tb] == std::make_pair(i, j - 1)) {
                    part = tensor_map(identity_matrix(X.term(i)), Y.diff(j));
                    if (((i % 2) + 2) % 2 == 1) part = scale_matrix(part, Rational(-1));
                } else {
                    continue;
                }
                for (int r = 0; r < part.rows(); ++r)
                    for (int cidx = 0; cidx < part.cols(); ++cidx)
                        d.at(tgt_off[tb] + r, src_off[sb] + cidx) = part.at(r, cidx);
            }
        }
        if (!matrix_is_zero(d)) t.diffs[n] = d;
    }
    return t;
}

/******** Base change ********/

inline ChainComplex base_change(const AlgebraMap& f, const ChainComplex& x) {
    if (!ring_equal(x.ring, f.from)) fail_input("RingMismatch", "complex not over the source ring");
    ChainComplex y;
    y.ring = f.to;
    for (const auto& [n, t] : x.terms) y.terms[n] = FreeGradedModule{f.to, t.shifts};
    for (const auto& [n, d] : x.diffs) {
        GradedMatrix m(y.term(n), y.term(n - 1));
        for (int i = 0; i < d.rows(); ++i)
            for (int j = 0; j < d.cols(); ++j) m.at(i, j) = f.apply(d.at(i, j));
        if (!matrix_is_zero(m)) y.diffs[n] = m;
    }
    return y;
}

inline ChainMap base_change(const AlgebraMap& f, const ChainMap& g) {
    ChainMap out{base_change(f, g.src), base_change(f, g.tgt), {}};
    for (const auto& [n, c] : g.components) {
        GradedMatrix m(out.src.term(n), out.tgt.term(n));
        for (int i = 0; i < c.rows(); ++i)
            for (int j = 0; j < c.cols(); ++j) m.at(i, j) = f.apply(c.at(i, j));
        if (!matrix_is_zero(m)) out.components[n] = m;
    }
    return out;
}

/******** Slice homology ********/

inline long long max_generator_weight(const GradedRing& r) {
    long long w = 1;
    for (const SingleRing& c : r->comps)
        for (const Generator& g : c.gens) w = std::max(w, g.weight);
    return w;
}

/* weight window for slice reports: down to the lowest shift (minus one period
 * when a component is localized) */
inline long long complex_weight_floor(const ChainComplex& x) {
    long long lo = 0;
    for (const auto& [n, t] : x.terms)
        for (const Shift& s : t.shifts) lo = std::min(lo, s.weight);
    long long period = 0;
    for (const SingleRing& c : x.ring->comps)
        for (size_t i = 0; i < c.gens.size(); ++i)
            if (c.inverted[i]) period = std::max(period, c.gens[i].weight);
    return lo - period;
}

struct HomologyEntry {
    int n = 0;
    long long w_lo = 0, w_hi = 0;
    std::vector<SliceModule> slices; // indexed by w - w_lo

    const SliceModule& at_weight(long long w) const {
        static const SliceModule zero{};
        if (w < w_lo || w > w_hi) return zero;
        return slices[static_cast<size_t>(w - w_lo)];
    }
    bool all_zero() const {
        return std::all_of(slices.begin(), slices.end(),
                           [](const SliceModule& s) { return s.is_zero(); });
    }
};

inline HomologyEntry homology(const ChainComplex& x, int n, long long W) {
    if (W < max_generator_weight(x.ring))
        fail_input("TruncationTooSmall", "truncation below the largest generator weight");
    HomologyEntry h;
    h.n = n;
    h.w_lo = complex_weight_floor(x);
    h.w_hi = W;
    const CoefficientRing& coeff = x.ring->comps[0].coeff;
    GradedMatrix dn = x.diff(n), dn1 = x.diff(n + 1);
    for (long long w = h.w_lo; w <= W; ++w) {
        QMat A = matrix_slice(dn, w);
        QMat B = matrix_slice(dn1, w);
        h.slices.push_back(homology_structure(A, B, coeff));
    }
    return h;
}

} // namespace gha
