#pragma once

#include "gha/grading.hpp"
#include "gha/numeric.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gha {

/******** Super vector spaces over Q ********/

struct SuperBasisElem {
    std::string label;
    bool odd = false;
    std::optional<Degree> degree; // optional attached G-degree
};

struct SuperSpace {
    std::vector<SuperBasisElem> basis;

    int dim() const { return static_cast<int>(basis.size()); }
    int even_count() const {
        int c = 0;
        for (const auto& b : basis) c += !b.odd;
        return c;
    }
    int odd_count() const { return dim() - even_count(); }
};

/* Q^{p|q}: p even lines then q odd lines. */
inline SuperSpace superspace_pq(int p, int q) {
    SuperSpace x;
    for (int i = 0; i < p; ++i) x.basis.push_back({"e" + std::to_string(i), false, 0});
    for (int i = 0; i < q; ++i) x.basis.push_back({"o" + std::to_string(i), true, 1});
    return x;
}

/* Attached degrees must push forward to the stored parities. */
inline void validate_superspace(const SuperSpace& x, const GradingSpec& g = GradingSpec::z_koszul()) {
    for (const auto& b : x.basis)
        if (b.degree && g.odd(*b.degree) != b.odd)
            fail_input("ParseError", "basis parity disagrees with its degree");
}

/******** Signed permutation operators ********/

using Perm = std::vector<int>; // perm[i] = image position of i

inline Perm perm_identity(int n) {
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

inline Perm perm_compose(const Perm& second, const Perm& first) {
    Perm r(first.size());
    for (size_t i = 0; i < first.size(); ++i) r[i] = second[first[i]];
    return r;
}

inline int perm_sign(const Perm& p) {
    int inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

/* The Koszul sign of sigma on a parity word: -1 per inversion whose two
 * crossed positions are both odd. */
inline int koszul_sign(const Perm& sigma, const std::vector<char>& odd) {
    if (sigma.size() != odd.size())
        fail_input("LengthMismatch", "parity word length must match the permutation degree");
    int count = 0;
    for (size_t i = 0; i < sigma.size(); ++i) {
        if (!odd[i]) continue;
        for (size_t j = i + 1; j < sigma.size(); ++j)
            if (odd[j] && sigma[i] > sigma[j]) ++count;
    }
    return count % 2 == 0 ? 1 : -1;
}

using Word = std::vector<int>;           // basis indices
using WordSum = std::map<Word, Rational>; // formal combination of words

struct SignedPermutationOperator {
    int length = 0;
    std::map<Perm, Int> terms;

    bool structurally_zero() const { return terms.empty(); }
};

struct SympowBounds {
    int max_sym_n = 6;
    int max_tensor_len = 8;
    long long max_words = 1000000;
};

inline Word permute_word(const Perm& sigma, const Word& w) {
    Word v(w.size());
    for (size_t i = 0; i < w.size(); ++i) v[sigma[i]] = w[i];
    return v;
}

inline std::vector<char> word_parities(const SuperSpace& x, const Word& w) {
    std::vector<char> odd(w.size());
    for (size_t i = 0; i < w.size(); ++i) {
        if (w[i] < 0 || w[i] >= x.dim()) fail_input("MalformedWord", "basis index out of range");
        odd[i] = x.basis[w[i]].odd;
    }
    return odd;
}

inline WordSum apply_operator(const SignedPermutationOperator& op, const SuperSpace& x,
                              const Word& w, const Rational& coeff = Rational(1)) {
    if (static_cast<int>(w.size()) != op.length)
        fail_input("LengthMismatch", "word length must match the operator");
    std::vector<char> odd = word_parities(x, w);
    WordSum out;
    for (const auto& [sigma, c] : op.terms) {
        int sign = koszul_sign(sigma, odd);
        Rational v = coeff * Rational(c) * sign;
        Word target = permute_word(sigma, w);
        auto it = out.find(target);
        if (it == out.end()) {
            if (v != 0) out[target] = v;
        } else {
            it->second += v;
            if (it->second == 0) out.erase(it);
        }
    }
    return out;
}

inline WordSum apply_operator(const SignedPermutationOperator& op, const SuperSpace& x,
                              const WordSum& ws) {
    WordSum out;
    for (const auto& [w, c] : ws)
        for (const auto& [v, d] : apply_operator(op, x, w, c)) {
            auto it = out.find(v);
            if (it == out.end()) {
                if (d != 0) out[v] = d;
            } else {
                it->second += d;
                if (it->second == 0) out.erase(it);
            }
        }
    return out;
}

/* Convolution product: (g . f)(w) = g(f(w)); the cocycle identity for Koszul
 * signs makes this an algebra map, so signs need no bookkeeping here. */
inline SignedPermutationOperator compose_operators(const SignedPermutationOperator& g,
                                                   const SignedPermutationOperator& f) {
    if (g.length != f.length) fail_input("LengthMismatch", "operator lengths differ");
    SignedPermutationOperator r;
    r.length = g.length;
    for (const auto& [sg, cg] : g.terms)
        for (const auto& [sf, cf] : f.terms) {
            Perm p = perm_compose(sg, sf);
            r.terms[p] += cg * cf;
            if (r.terms[p] == 0) r.terms.erase(p);
        }
    return r;
}

inline SignedPermutationOperator operator_identity(int n) {
    SignedPermutationOperator op;
    op.length = n;
    op.terms[perm_identity(n)] = 1;
    return op;
}

inline SignedPermutationOperator scale_operator(const SignedPermutationOperator& op, const Int& c) {
    SignedPermutationOperator r = op;
    if (c == 0) { r.terms.clear(); return r; }
    for (auto& [p, v] : r.terms) v *= c;
    return r;
}

namespace detail {

template <typename F>
void for_each_permutation(int n, F&& f) {
    Perm p = perm_identity(n);
    do {
        f(p);
    } while (std::next_permutation(p.begin(), p.end()));
}

} // namespace detail

inline SignedPermutationOperator symmetrizer(int n, const SympowBounds& b = {}) {
    if (n < 1 || n > b.max_sym_n) fail_bound("BoundExceeded", "symmetrizer degree out of range");
    SignedPermutationOperator op;
    op.length = n;
    detail::for_each_permutation(n, [&](const Perm& p) { op.terms[p] = 1; });
    return op;
}

inline SignedPermutationOperator antisymmetrizer(int n, const SympowBounds& b = {}) {
    if (n < 1 || n > b.max_sym_n) fail_bound("BoundExceeded", "antisymmetrizer degree out of range");
    SignedPermutationOperator op;
    op.length = n;
    detail::for_each_permutation(n, [&](const Perm& p) { op.terms[p] = perm_sign(p); });
    return op;
}

/******** Rectangular Young symmetrizers ********/

/* Boxes of the n-row, m-column rectangle are numbered row-major; the row
 * group preserves each row, the column group each column. The operator is
 * the column antisymmetrizer composed after the row symmetrizer. */
struct YoungShape {
    int columns = 0; // m
    int rows = 0;    // n

    int size() const { return columns * rows; }
    int box(int r, int c) const { return r * columns + c; }
    long long row_group_order() const {
        long long f = 1;
        for (int i = 2; i <= columns; ++i) f *= i;
        long long r = 1;
        for (int k = 0; k < rows; ++k) r *= f;
        return r;
    }
    long long column_group_order() const {
        long long f = 1;
        for (int i = 2; i <= rows; ++i) f *= i;
        long long r = 1;
        for (int k = 0; k < columns; ++k) r *= f;
        return r;
    }
};

namespace detail {

/* all permutations of {0..N-1} preserving the given blocks */
inline std::vector<Perm> block_permutations(int total, const std::vector<std::vector<int>>& blocks) {
    std::vector<Perm> out{perm_identity(total)};
    for (const auto& block : blocks) {
        std::vector<Perm> next;
        Perm inner(block.size());
        for (size_t i = 0; i < block.size(); ++i) inner[i] = static_cast<int>(i);
        do {
            for (const Perm& base : out) {
                Perm p = base;
                for (size_t i = 0; i < block.size(); ++i) p[block[i]] = block[inner[i]];
                next.push_back(p);
            }
        } while (std::next_permutation(inner.begin(), inner.end()));
        out = std::move(next);
    }
    return out;
}

} // namespace detail

inline SignedPermutationOperator young_symmetrizer_operator(const YoungShape& shape,
                                                            const SympowBounds& b = {}) {
    int N = shape.size();
    if (N > b.max_tensor_len) fail_bound("BoundExceeded", "tensor length exceeds the configured bound");
    SignedPermutationOperator op;
    op.length = N;
    if (N == 0) { op.terms[Perm{}] = 1; return op; } // empty tensor: identity of the unit
    std::vector<std::vector<int>> row_blocks(shape.rows), col_blocks(shape.columns);
    for (int r = 0; r < shape.rows; ++r)
        for (int c = 0; c < shape.columns; ++c) {
            row_blocks[r].push_back(shape.box(r, c));
            col_blocks[c].push_back(shape.box(r, c));
        }
    auto rowp = detail::block_permutations(N, row_blocks);
    auto colp = detail::block_permutations(N, col_blocks);
    /* tau o sigma is injective in (tau, sigma): R and C intersect trivially */
    for (const Perm& tau : colp) {
        int s = perm_sign(tau);
        for (const Perm& sigma : rowp) op.terms[perm_compose(tau, sigma)] += s;
    }
    return op;
}

inline SignedPermutationOperator young_symmetrizer(const SuperSpace& x, int m, int n,
                                                   const SympowBounds& b = {}) {
    YoungShape shape{m, n};
    int N = shape.size();
    if (N > 0) {
        double words = 1;
        for (int i = 0; i < N; ++i) words *= std::max(1, x.dim());
        if (words > static_cast<double>(b.max_words) * 64)
            fail_bound("BoundExceeded", "basis too large for this shape");
    }
    return young_symmetrizer_operator(shape, b);
}

/* Exact word-by-word test (the contract); bounded by max_words. */
inline bool operator_is_zero(const SignedPermutationOperator& op, const SuperSpace& x,
                             const SympowBounds& b = {}) {
    if (op.terms.empty()) return true;
    if (op.length == 0) return false; // identity of the unit object
    double total = 1;
    for (int i = 0; i < op.length; ++i) total *= x.dim();
    if (x.dim() == 0) return true;
    if (total > static_cast<double>(b.max_words))
        fail_bound("BoundExceeded", "word enumeration exceeds the configured bound");
    Word w(op.length, 0);
    for (;;) {
        if (!apply_operator(op, x, w).empty()) return false;
        int pos = op.length - 1;
        while (pos >= 0 && w[pos] == x.dim() - 1) w[pos--] = 0;
        if (pos < 0) break;
        ++w[pos];
    }
    return true;
}

/* Ordinary trace of the operator: sum over terms of the closed form
 * prod over cycles (E + (-1)^(len-1) O). */
inline Rational operator_trace(const SignedPermutationOperator& op, const SuperSpace& x) {
    Int E = x.even_count(), O = x.odd_count();
    Rational tr = 0;
    std::vector<char> seen;
    for (const auto& [p, c] : op.terms) {
        seen.assign(p.size(), 0);
        Int contrib = 1;
        for (size_t i = 0; i < p.size(); ++i) {
            if (seen[i]) continue;
            int len = 0;
            size_t j = i;
            while (!seen[j]) {
                seen[j] = 1;
                j = static_cast<size_t>(p[j]);
                ++len;
            }
            contrib *= (len % 2 == 1) ? Int(E + O) : Int(E - O);
        }
        tr += Rational(c) * Rational(contrib);
    }
    return tr;
}

/* Product of the hook lengths of the rectangle: the group-algebra scalar with
 * S o S = c S for the rectangular Young symmetrizer. */
inline Int young_hook_scalar(const YoungShape& shape) {
    Int c = 1;
    for (int r = 0; r < shape.rows; ++r)
        for (int col = 0; col < shape.columns; ++col)
            c *= Int((shape.columns - col) + (shape.rows - r) - 1);
    return c;
}

/* Vanishing of the rectangular Young symmetrizer via quasi-idempotence:
 * S/c is an idempotent matrix over Q, so S = 0 iff its ordinary trace is 0.
 * This stays exact far beyond the word-enumeration range. */
inline bool young_symmetrizer_is_zero(const SuperSpace& x, int m, int n,
                                      const SympowBounds& b = {}) {
    YoungShape shape{m, n};
    if (shape.size() == 0) return false; // identity of the unit object
    SympowBounds wide = b;
    wide.max_tensor_len = std::max(b.max_tensor_len, shape.size());
    SignedPermutationOperator op = young_symmetrizer_operator(shape, wide);
    return operator_trace(op, x) == 0;
}

/******** Identity factorization ********/

/* Coefficient of the designated word in op(word): the composite
 * proj o op o incl on the one-dimensional component spanned by the word. */
inline bool identity_factorization(const SuperSpace& x, const SignedPermutationOperator& op,
                                   const Word& word) {
    if (static_cast<int>(word.size()) != op.length)
        fail_input("MalformedWord", "word length must match the operator");
    word_parities(x, word); // range check
    WordSum image = apply_operator(op, x, word);
    auto it = image.find(word);
    return it != image.end() && it->second == 1;
}

/******** Symmetric power types ********/

struct SymType {
    bool zero = false;
    std::vector<Degree> degrees; // multiset, sorted

    int rank() const { return static_cast<int>(degrees.size()); }
};

/* Degree multiset of Sym^n of a free module of the given type: even lines
 * behave polynomially, odd lines exterior. Needs 2 invertible. */
inline SymType sym_type(const GradingSpec& g, const std::vector<Degree>& type, int n,
                        bool two_invertible = true) {
    if (!two_invertible)
        fail_math("TwoNotInvertible", "symmetric power formulas need 2 invertible");
    if (n < 0) fail_input("ParseError", "negative symmetric power");
    SymType out;
    if (n == 0) {
        out.degrees = {0};
        return out;
    }
    /* enumerate exponent tuples j_k summing to n, with j_k <= 1 on odd lines */
    std::vector<int> j(type.size(), 0);
    std::vector<Degree> acc;
    std::function<void(size_t, int, Degree)> rec = [&](size_t k, int rem, Degree d) {
        if (k == type.size()) {
            if (rem == 0) acc.push_back(g.reduce(d));
            return;
        }
        int cap = g.odd(type[k]) ? 1 : rem;
        for (int e = 0; e <= cap; ++e) rec(k + 1, rem - e, d + e * type[k]);
    };
    rec(0, n, 0);
    if (acc.empty()) {
        out.zero = true;
        return out;
    }
    std::sort(acc.begin(), acc.end());
    out.degrees = std::move(acc);
    return out;
}

struct AdamsStageTypes {
    struct Entry {
        int j;
        SymType sym;      // Sym^j(L_i^{-1} (x) M)
        SymType sym_dual; // Sym^j((L_i^{-1} (x) M)^v)
    };
    std::vector<Entry> entries;
};

inline AdamsStageTypes adams_stage_types(const GradingSpec& g, const std::vector<Degree>& m_type,
                                         Degree i, int J, bool two_invertible = true) {
    AdamsStageTypes out;
    std::vector<Degree> shifted, shifted_dual;
    for (Degree d : m_type) {
        shifted.push_back(g.reduce(d - i));
        shifted_dual.push_back(g.reduce(i - d));
    }
    for (int j = 0; j <= J; ++j)
        out.entries.push_back(
            {j, sym_type(g, shifted, j, two_invertible), sym_type(g, shifted_dual, j, two_invertible)});
    return out;
}

} // namespace gha
