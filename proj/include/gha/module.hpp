#pragma once

#include "gha/linalg.hpp"
#include "gha/ring.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <string>
#include <vector>

namespace gha {

/******** Free graded modules ********/

struct Shift {
    Degree degree = 0;
    long long weight = 0;

    bool operator==(const Shift& o) const { return degree == o.degree && weight == o.weight; }
    bool operator<(const Shift& o) const {
        return degree != o.degree ? degree < o.degree : weight < o.weight;
    }
    Shift plus(const Shift& o) const { return {degree + o.degree, weight + o.weight}; }
    Shift negated() const { return {-degree, -weight}; }
};

struct FreeGradedModule {
    GradedRing ring;
    std::vector<Shift> shifts;

    FreeGradedModule() = default;
    FreeGradedModule(GradedRing r, std::vector<Shift> s) : ring(std::move(r)), shifts(std::move(s)) {}

    int rank() const { return static_cast<int>(shifts.size()); }
};

inline FreeGradedModule unit_module(const GradedRing& r) { return {r, {Shift{0, 0}}}; }

inline FreeGradedModule dual(const FreeGradedModule& m) {
    FreeGradedModule d{m.ring, {}};
    d.shifts.reserve(m.shifts.size());
    for (const Shift& s : m.shifts) d.shifts.push_back(s.negated());
    return d;
}

inline FreeGradedModule tensor(const FreeGradedModule& a, const FreeGradedModule& b) {
    if (!ring_equal(a.ring, b.ring)) fail_input("RingMismatch", "tensor over different rings");
    FreeGradedModule t{a.ring, {}};
    t.shifts.reserve(a.shifts.size() * b.shifts.size());
    for (const Shift& x : a.shifts)
        for (const Shift& y : b.shifts) t.shifts.push_back(x.plus(y));
    return t;
}

inline FreeGradedModule direct_sum(const FreeGradedModule& a, const FreeGradedModule& b) {
    if (!ring_equal(a.ring, b.ring)) fail_input("RingMismatch", "sum over different rings");
    FreeGradedModule s = a;
    s.shifts.insert(s.shifts.end(), b.shifts.begin(), b.shifts.end());
    return s;
}

inline bool module_equal(const FreeGradedModule& a, const FreeGradedModule& b) {
    return ring_equal(a.ring, b.ring) && a.shifts == b.shifts;
}

/******** Weight-homogeneous matrices ********/

/* Entry (i,j) maps source generator j to target generator i. `shift` is the
 * intrinsic (degree, weight) of the map; a plain module morphism has (0,0). */
struct GradedMatrix {
    FreeGradedModule src, tgt;
    Shift shift{0, 0};
    std::vector<RingElement> e;

    GradedMatrix() = default;
    GradedMatrix(FreeGradedModule s, FreeGradedModule t, Shift sh = {0, 0})
        : src(std::move(s)), tgt(std::move(t)), shift(sh) {
        e.assign(static_cast<size_t>(src.rank()) * tgt.rank(), ring_zero(src.ring));
    }

    RingElement& at(int i, int j) { return e[static_cast<size_t>(i) * src.rank() + j]; }
    const RingElement& at(int i, int j) const {
        return e[static_cast<size_t>(i) * src.rank() + j];
    }

    int rows() const { return tgt.rank(); }
    int cols() const { return src.rank(); }
};

inline void validate_matrix(const GradedMatrix& f) {
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j) {
            auto h = homogeneity(f.at(i, j));
            if (!h) fail_input("GradingMismatch", "non-homogeneous matrix entry");
            if (h->zero) continue;
            Degree want_d = f.src.ring->grading.reduce(f.src.shifts[j].degree + f.shift.degree -
                                                       f.tgt.shifts[i].degree);
            long long want_w = f.src.shifts[j].weight + f.shift.weight - f.tgt.shifts[i].weight;
            if (f.src.ring->grading.reduce(h->degree) != want_d || h->weight != want_w)
                fail_input("GradingMismatch", "matrix entry grading does not match shifts");
        }
}

inline GradedMatrix identity_matrix(const FreeGradedModule& m) {
    GradedMatrix f(m, m);
    for (int i = 0; i < m.rank(); ++i) f.at(i, i) = ring_one(m.ring);
    return f;
}

inline GradedMatrix zero_matrix(const FreeGradedModule& src, const FreeGradedModule& tgt,
                                Shift sh = {0, 0}) {
    return GradedMatrix(src, tgt, sh);
}

inline GradedMatrix compose(const GradedMatrix& f, const GradedMatrix& g) {
    if (!module_equal(f.src, g.tgt)) fail_input("GradingMismatch", "composition shape mismatch");
    GradedMatrix r(g.src, f.tgt, f.shift.plus(g.shift));
    for (int i = 0; i < f.rows(); ++i)
        for (int k = 0; k < g.cols(); ++k) {
            RingElement acc = ring_zero(f.src.ring);
            for (int j = 0; j < f.cols(); ++j) acc = add(acc, mul(f.at(i, j), g.at(j, k)));
            r.at(i, k) = acc;
        }
    return r;
}

inline GradedMatrix add_matrices(const GradedMatrix& f, const GradedMatrix& g) {
    if (!module_equal(f.src, g.src) || !module_equal(f.tgt, g.tgt) || !(f.shift == g.shift))
        fail_input("GradingMismatch", "sum shape mismatch");
    GradedMatrix r = f;
    for (size_t t = 0; t < r.e.size(); ++t) r.e[t] = add(r.e[t], g.e[t]);
    return r;
}

inline GradedMatrix scale_matrix(const GradedMatrix& f, const Rational& c) {
    GradedMatrix r = f;
    for (RingElement& x : r.e) x = scale(x, c);
    return r;
}

inline bool matrix_is_zero(const GradedMatrix& f) {
    return std::all_of(f.e.begin(), f.e.end(), [](const RingElement& x) { return x.is_zero(); });
}

inline bool matrix_equal(const GradedMatrix& f, const GradedMatrix& g) {
    if (!module_equal(f.src, g.src) || !module_equal(f.tgt, g.tgt)) return false;
    for (size_t t = 0; t < f.e.size(); ++t)
        if (!equal(f.e[t], g.e[t])) return false;
    return true;
}

/* f (x) g with the Koszul sign: the block belonging to source generator j of f
 * picks up -1 when the map g and the generator's degree are both odd. */
inline GradedMatrix tensor_map(const GradedMatrix& f, const GradedMatrix& g) {
    const GradingSpec& gr = f.src.ring->grading;
    GradedMatrix r(tensor(f.src, g.src), tensor(f.tgt, g.tgt), f.shift.plus(g.shift));
    int gs = g.cols(), gt = g.rows();
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j) {
            bool neg = gr.odd(g.shift.degree) && gr.odd(f.src.shifts[j].degree);
            for (int k = 0; k < g.rows(); ++k)
                for (int l = 0; l < g.cols(); ++l) {
                    RingElement v = mul(f.at(i, j), g.at(k, l));
                    if (neg) v = negate(v);
                    r.at(i * gt + k, j * gs + l) = v;
                }
        }
    return r;
}

/* Koszul symmetry M (x) N -> N (x) M. */
inline GradedMatrix koszul_swap(const FreeGradedModule& m, const FreeGradedModule& n) {
    const GradingSpec& gr = m.ring->grading;
    GradedMatrix s(tensor(m, n), tensor(n, m));
    for (int i = 0; i < m.rank(); ++i)
        for (int k = 0; k < n.rank(); ++k) {
            bool neg = gr.odd(m.shifts[i].degree) && gr.odd(n.shifts[k].degree);
            RingElement one = ring_one(m.ring);
            s.at(k * m.rank() + i, i * n.rank() + k) = neg ? negate(one) : one;
        }
    return s;
}

/* Transpose with the dual sign convention: row j of f^v at column i is
 * f_(i,j), negated when the map and the i-th target generator are both odd.
 * With this choice the double dual of an odd map is -f. */
inline GradedMatrix dual_matrix(const GradedMatrix& f) {
    const GradingSpec& gr = f.src.ring->grading;
    GradedMatrix r(dual(f.tgt), dual(f.src), f.shift);
    for (int i = 0; i < f.rows(); ++i) {
        bool neg = gr.odd(f.shift.degree) && gr.odd(f.tgt.shifts[i].degree);
        for (int j = 0; j < f.cols(); ++j)
            r.at(j, i) = neg ? negate(f.at(i, j)) : f.at(i, j);
    }
    return r;
}

inline GradedMatrix direct_sum_matrix(const GradedMatrix& f, const GradedMatrix& g) {
    if (!(f.shift == g.shift)) fail_input("GradingMismatch", "direct sum shift mismatch");
    GradedMatrix r(direct_sum(f.src, g.src), direct_sum(f.tgt, g.tgt), f.shift);
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j) r.at(i, j) = f.at(i, j);
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) r.at(f.rows() + i, f.cols() + j) = g.at(i, j);
    return r;
}

/* Build a matrix from per-entry expressions (one string per single ring, a
 * vector of component strings for product rings). */
inline GradedMatrix matrix_from_strings(const FreeGradedModule& src, const FreeGradedModule& tgt,
                                        const std::vector<std::vector<std::string>>& entries,
                                        Shift sh = {0, 0}) {
    GradedMatrix f(src, tgt, sh);
    if (static_cast<int>(entries.size()) != tgt.rank())
        fail_input("ParseError", "matrix row count mismatch");
    for (int i = 0; i < tgt.rank(); ++i) {
        if (static_cast<int>(entries[i].size()) != src.rank())
            fail_input("ParseError", "matrix column count mismatch");
        for (int j = 0; j < src.rank(); ++j) {
            if (src.ring->comps.size() == 1) {
                f.at(i, j) = normal_form(src.ring, entries[i][j]);
            } else {
                fail_input("ParseError", "product ring entries need component lists");
            }
        }
    }
    validate_matrix(f);
    return f;
}

/******** Weight slices ********/

struct SliceElem {
    int comp = 0;
    int gen = 0;
    Monomial m;
};

/* Basis of the weight-w slice of a free module, ordered by (component,
 * generator, monomial). */
inline std::vector<SliceElem> module_slice_basis(const FreeGradedModule& mod, long long w) {
    std::vector<SliceElem> out;
    for (size_t c = 0; c < mod.ring->comps.size(); ++c) {
        const SingleRing& s = mod.ring->comps[c];
        for (int g = 0; g < mod.rank(); ++g) {
            for (const Monomial& m : s.monomials_of_weight(w - mod.shifts[g].weight))
                out.push_back({static_cast<int>(c), g, m});
        }
    }
    return out;
}

inline std::string slice_elem_to_string(const FreeGradedModule& mod, const SliceElem& el) {
    const SingleRing& s = mod.ring->comps[el.comp];
    std::string base = s.monomial_to_string(el.m) + "*e" + std::to_string(el.gen);
    if (mod.ring->comps.size() > 1) base += "[" + std::to_string(el.comp) + "]";
    return base;
}

/* Matrix of f on the weight-w slice of the source (weight w + shift on the
 * target), over the coefficient ring. */
inline QMat matrix_slice(const GradedMatrix& f, long long w,
                         const std::vector<SliceElem>& src_basis,
                         const std::vector<SliceElem>& tgt_basis) {
    (void)w;
    QMat out(static_cast<int>(tgt_basis.size()), static_cast<int>(src_basis.size()));
    /* index of each target basis element for lookups */
    std::map<std::tuple<int, int, Monomial>, int> index;
    for (size_t t = 0; t < tgt_basis.size(); ++t)
        index[{tgt_basis[t].comp, tgt_basis[t].gen, tgt_basis[t].m}] = static_cast<int>(t);
    for (size_t jcol = 0; jcol < src_basis.size(); ++jcol) {
        const SliceElem& el = src_basis[jcol];
        const SingleRing& s = f.src.ring->comps[el.comp];
        for (int i = 0; i < f.rows(); ++i) {
            const Poly& p = f.at(i, el.gen).comps[el.comp];
            for (const auto& [mono, coef] : p) {
                auto prod = s.mul_monomials(mono, el.m);
                if (!prod) continue;
                auto it = index.find({el.comp, i, prod->first});
                if (it == index.end())
                    fail_input("GradingMismatch", "slice image outside the expected slice");
                out.at(it->second, static_cast<int>(jcol)) += coef * prod->second;
            }
        }
    }
    return out;
}

inline QMat matrix_slice(const GradedMatrix& f, long long w) {
    auto sb = module_slice_basis(f.src, w);
    auto tb = module_slice_basis(f.tgt, w + f.shift.weight);
    return matrix_slice(f, w, sb, tb);
}

/******** Presented modules ********/

/* A finitely presented module, the cokernel of its presentation matrix. */
struct PresentedModule {
    GradedMatrix presentation;

    const FreeGradedModule& ambient() const { return presentation.tgt; }
    const GradedRing& ring() const { return presentation.src.ring; }
};

inline PresentedModule free_module_as_presented(const FreeGradedModule& m) {
    return {GradedMatrix(FreeGradedModule{m.ring, {}}, m)};
}

struct ModuleSlice {
    QMat presentation; // cokernel of this over the coefficient ring
    std::vector<SliceElem> basis;
    SliceModule structure;
    std::vector<std::string> coker_basis_labels;
};

/* Exact weight-w slice of a presented module. */
inline ModuleSlice module_slice(const PresentedModule& m, long long w) {
    validate_matrix(m.presentation);
    if (!(m.presentation.shift == Shift{0, 0}))
        fail_input("NonHomogeneousPresentation", "presentations must have intrinsic shift 0");
    ModuleSlice out;
    out.basis = module_slice_basis(m.ambient(), w);
    auto src = module_slice_basis(m.presentation.src, w);
    out.presentation = matrix_slice(m.presentation, w, src, out.basis);

    const CoefficientRing& coeff = m.ring()->comps[0].coeff;
    IMat p = clear_denominators(out.presentation, coeff);
    out.structure = coker_structure(p, coeff);

    /* labels for a complement basis of the image (over Q this is a basis of
     * the cokernel): target elements not hit by pivots of the column space */
    QMat red = out.presentation;
    std::vector<char> pivot(out.basis.size(), 0);
    int r = 0;
    for (int j = 0; j < red.cols && r < red.rows; ++j) {
        int piv = -1;
        for (int i = 0; i < red.rows; ++i) {
            bool taken = false;
            for (size_t t = 0; t < out.basis.size(); ++t)
                if (pivot[t] && static_cast<int>(t) == i) taken = true;
            if (!taken && red.at(i, j) != 0) { piv = i; break; }
        }
        if (piv < 0) continue;
        pivot[piv] = 1;
        Rational pv = red.at(piv, j);
        for (int j2 = 0; j2 < red.cols; ++j2) {
            if (j2 == j || red.at(piv, j2) == 0) continue;
            Rational fscale = red.at(piv, j2) / pv;
            for (int i2 = 0; i2 < red.rows; ++i2) red.at(i2, j2) -= fscale * red.at(i2, j);
        }
        ++r;
    }
    for (size_t t = 0; t < out.basis.size(); ++t)
        if (!pivot[t])
            out.coker_basis_labels.push_back(slice_elem_to_string(m.ambient(), out.basis[t]));
    return out;
}

} // namespace gha
