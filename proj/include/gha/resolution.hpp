#pragma once

#include "gha/complex.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace gha {

/******** Free resolutions of cyclic monomial modules ********/

/* One column of a term-matrix differential: a monomial times a basis vector
 * of the previous step. */
struct TermColumn {
    int target = 0;
    Monomial mono;
};

struct Resolution {
    ChainComplex complex;                 // F_L -> ... -> F_1 -> F_0
    std::vector<Monomial> ideal;          // generators of the monomial ideal
    int length = 0;                       // resolution reached F_length
    bool kernel_exhausted = false;        // the last kernel was zero
    long long audit_W = 0;
    std::vector<std::string> audit_notes; // per-step syzygy choices
};

namespace detail {

/* minimal annihilator monomials of mu: r / gcd(r, mu) over the relations */
inline std::vector<Monomial> annihilators(const SingleRing& s, const Monomial& mu) {
    std::vector<Monomial> out;
    for (const Monomial& r : s.relations) out.push_back(r.divide(r.gcd_with(mu)));
    /* drop multiples of another annihilator and duplicates */
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::vector<Monomial> minimal;
    for (size_t i = 0; i < out.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < out.size() && !dominated; ++j)
            if (j != i && out[i].divisible_by(out[j]) && !(out[j] == out[i])) dominated = true;
        if (!dominated) minimal.push_back(out[i]);
    }
    return minimal;
}

} // namespace detail

/* Iterated monomial-syzygy resolution of R/I for a monomial ideal I: at each
 * step the kernel generators are the annihilator columns plus the pairwise
 * lcm syzygies whose lcm survives the relations (a dead lcm is generated by
 * the annihilator columns). Only single-term differential columns can be
 * iterated; a genuinely multi-term kernel generator stops the construction
 * with an explicit error instead of emitting unaudited data. The per-slice
 * exactness audit runs unconditionally. */
inline Resolution cyclic_resolution(const GradedRing& ring, const std::vector<Monomial>& ideal,
                                    int L, long long W) {
    const SingleRing& s = single(ring);
    if (s.inverted_count() > 0 && !s.has_finite_slices())
        fail_input("InfiniteSlice", "resolution audits need finite slices");
    if (L < 1 || L > 64) fail_bound("BoundExceeded", "resolution length out of range");

    Resolution res;
    res.ideal = ideal;
    res.audit_W = W;
    res.complex.ring = ring;
    res.complex.terms[0] = unit_module(ring);

    /* step 1: the ideal generators, pruned to the minimal ones */
    std::vector<TermColumn> cols;
    for (const Monomial& m : ideal) {
        if (m.size() != s.gens.size()) fail_input("ParseError", "ideal monomial arity mismatch");
        if (s.monomial_is_zero(m)) continue;
        cols.push_back({0, m});
    }
    std::sort(cols.begin(), cols.end(), [](const TermColumn& a, const TermColumn& b) {
        return std::tie(a.target, a.mono) < std::tie(b.target, b.mono);
    });
    {
        std::vector<TermColumn> minimal;
        for (size_t i = 0; i < cols.size(); ++i) {
            bool dominated = false;
            for (size_t j = 0; j < cols.size() && !dominated; ++j)
                if (j != i && cols[i].mono.divisible_by(cols[j].mono) &&
                    !(cols[j].mono == cols[i].mono && j > i))
                    dominated = true;
            if (!dominated) minimal.push_back(cols[i]);
        }
        cols = std::move(minimal);
    }

    bool multi_term_pending = false;
    std::vector<std::vector<std::pair<int, RingElement>>> pending_multi;

    for (int step = 1; step <= L; ++step) {
        const FreeGradedModule prev = res.complex.term(step - 1);
        if (cols.empty() && pending_multi.empty()) {
            res.kernel_exhausted = true;
            break;
        }
        /* build the term and the differential for this step */
        FreeGradedModule F{ring, {}};
        for (const TermColumn& c : cols) {
            Shift sh = prev.shifts[c.target];
            F.shifts.push_back({sh.degree + s.monomial_degree(c.mono),
                                sh.weight + s.monomial_weight(c.mono)});
        }
        std::vector<std::vector<std::pair<int, RingElement>>> sparse;
        for (const TermColumn& c : cols)
            sparse.push_back({{c.target, ring_monomial(ring, 0, c.mono)}});
        for (const auto& pm : pending_multi) {
            /* weight of a multi-term column is forced by any of its terms */
            const auto& [tgt0, el0] = pm.front();
            auto h = homogeneity(el0);
            F.shifts.push_back({prev.shifts[tgt0].degree + (h ? h->degree : 0),
                                prev.shifts[tgt0].weight + (h ? h->weight : 0)});
            sparse.push_back(pm);
        }
        GradedMatrix d(F, prev);
        for (size_t j = 0; j < sparse.size(); ++j)
            for (const auto& [tgt, el] : sparse[j])
                d.at(tgt, static_cast<int>(j)) = add(d.at(tgt, static_cast<int>(j)), el);
        validate_matrix(d);
        res.complex.terms[step] = F;
        res.complex.diffs[step] = d;
        res.length = step;

        if (multi_term_pending && step < L)
            fail_input("UnsupportedSyzygyShape",
                       "kernel generators with several terms cannot be iterated by the monomial recipe");

        /* syzygy candidates for the next step */
        std::vector<TermColumn> next;
        std::vector<std::vector<std::pair<int, RingElement>>> next_multi;
        for (size_t a = 0; a < cols.size(); ++a) {
            for (const Monomial& t : detail::annihilators(s, cols[a].mono))
                next.push_back({static_cast<int>(a), t});
            for (size_t b = a + 1; b < cols.size(); ++b) {
                if (cols[a].target != cols[b].target) continue;
                Monomial l = cols[a].mono.lcm_with(cols[b].mono);
                if (s.monomial_is_zero(l)) continue; // generated by annihilators
                Monomial ta = l.divide(cols[a].mono), tb = l.divide(cols[b].mono);
                next_multi.push_back(
                    {{static_cast<int>(a), ring_monomial(ring, 0, ta)},
                     {static_cast<int>(b), scale(ring_monomial(ring, 0, tb), Rational(-1))}});
            }
        }
        /* prune dominated single-term candidates (same target column) */
        std::sort(next.begin(), next.end(), [](const TermColumn& x, const TermColumn& y) {
            return std::tie(x.target, x.mono) < std::tie(y.target, y.mono);
        });
        next.erase(std::unique(next.begin(), next.end(),
                               [](const TermColumn& x, const TermColumn& y) {
                                   return x.target == y.target && x.mono == y.mono;
                               }),
                   next.end());
        std::vector<TermColumn> minimal;
        for (size_t i = 0; i < next.size(); ++i) {
            bool dominated = false;
            for (size_t j = 0; j < next.size() && !dominated; ++j)
                if (j != i && next[i].target == next[j].target &&
                    next[i].mono.divisible_by(next[j].mono) && !(next[j].mono == next[i].mono))
                    dominated = true;
            if (!dominated) minimal.push_back(next[i]);
        }
        cols = std::move(minimal);
        pending_multi = std::move(next_multi);
        multi_term_pending = !pending_multi.empty();
        if (multi_term_pending)
            res.audit_notes.push_back("step " + std::to_string(step + 1) +
                                      ": lcm syzygies with two terms");
    }

    validate(res.complex);
    /* exactness audit at degrees 1..length-1 on every slice <= W */
    for (int p = 1; p < res.length; ++p) {
        HomologyEntry h = homology(res.complex, p, W);
        if (!h.all_zero())
            fail_math("ExactnessAuditFailed",
                      "resolution not exact at degree " + std::to_string(p));
    }
    return res;
}

inline std::vector<Monomial> parse_ideal(const GradedRing& ring, const std::vector<std::string>& gens) {
    std::vector<Monomial> out;
    for (const std::string& g : gens) out.push_back(parse_monomial(ring, g));
    return out;
}

/******** Tor ********/

/* quotient of a single monomial ring by further monomials */
inline GradedRing quotient_ring(const GradedRing& r, const std::vector<Monomial>& extra,
                                const std::string& label = "") {
    const SingleRing& s = single(r);
    std::vector<Monomial> rels = s.relations;
    /* relations live on the full original generator list */
    rels.insert(rels.end(), extra.begin(), extra.end());
    std::vector<std::string> inverted;
    for (size_t i = 0; i < s.gens.size(); ++i)
        if (s.inverted[i]) inverted.push_back(s.gens[i].name);
    return make_single_ring(r->grading, s.coeff, s.gens, rels, inverted,
                            label.empty() ? r->label + "/I" : label);
}

struct TorResult {
    HomologyEntry entry;
    Resolution resolution;
    GradedRing coefficient_ring;
};

/* Tor_n(R/I, R/J): resolve R/I, base-change along R -> R/J, take slice
 * homology. */
inline TorResult tor(const GradedRing& ring, const std::vector<Monomial>& idealI,
                     const std::vector<Monomial>& idealJ, int n, long long W) {
    if (n < 0) fail_input("ParseError", "negative homological degree");
    Resolution res = cyclic_resolution(ring, idealI, n + 1, W);
    if (res.length < n + 1 && !res.kernel_exhausted)
        fail_input("TruncationTooSmall", "resolution too short for the requested degree");
    GradedRing N = quotient_ring(ring, idealJ);
    AlgebraMap q = canonical_map(ring, N);
    ChainComplex tensored = base_change(q, res.complex);
    return {homology(tensored, n, W), std::move(res), N};
}

} // namespace gha
