#pragma once

#include "gha/module.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace gha {

/******** Weight-graded local structure ********/

/* "Local" means the weight-0 slice is the coefficient ring (a field or a
 * local subring of Q). Rings with every generator inverted over Q are graded
 * fields; every graded module over those is free. */
enum class LocalKind { NotLocal, WeightLocal, GradedField };

inline LocalKind classify_local(const GradedRing& r) {
    if (r->product || r->comps.size() != 1) return LocalKind::NotLocal;
    const SingleRing& s = r->comps[0];
    if (s.zero_ring) return LocalKind::GradedField; // modules over 0 are all zero
    if (s.is_graded_field()) return LocalKind::GradedField;
    if (s.inverted_count() > 0) {
        /* localized with residual generators: local only if the weight-0
         * slice is still just the coefficient ring */
        if (!s.has_finite_slices()) return LocalKind::NotLocal;
        if (s.monomials_of_weight(0).size() != 1) return LocalKind::NotLocal;
        return s.coeff.is_local() ? LocalKind::WeightLocal : LocalKind::NotLocal;
    }
    return s.coeff.is_local() ? LocalKind::WeightLocal : LocalKind::NotLocal;
}

/* Constant coefficients of a matrix (the entries' weight-0 parts). */
inline QMat scalar_part(const GradedMatrix& f) {
    QMat s(f.rows(), f.cols());
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j) {
            const Poly& p = f.at(i, j).comps[0];
            for (const auto& [m, c] : p)
                if (m.is_one()) s.at(i, j) = c;
        }
    return s;
}

/* Rows hit by pivots of the column space over the residue field: over Q
 * directly, over Z_(p) after reduction mod p. */
inline std::vector<char> residue_pivot_rows(const QMat& S, const CoefficientRing& coeff) {
    std::vector<char> pivot(S.rows, 0);
    if (coeff.kind() == CoeffKind::ZLocalAt) {
        const Int& p = coeff.local_prime();
        IMat m = clear_denominators(S, coeff);
        auto red = [&](Int v) { v %= p; if (v < 0) v += p; return v; };
        for (Int& v : m.a) v = red(v);
        for (int j = 0; j < m.cols; ++j) {
            int piv = -1;
            for (int i = 0; i < m.rows; ++i)
                if (!pivot[i] && m.at(i, j) != 0) { piv = i; break; }
            if (piv < 0) continue;
            pivot[piv] = 1;
            Int pv = m.at(piv, j);
            Int t0 = 0, t1 = 1, r0 = p, r1 = pv;
            while (r1 != 0) {
                Int q = r0 / r1;
                t0 -= q * t1; std::swap(t0, t1);
                r0 -= q * r1; std::swap(r0, r1);
            }
            Int inv = red(t0);
            for (int j2 = 0; j2 < m.cols; ++j2) {
                if (j2 == j) continue;
                Int f = red(m.at(piv, j2) * inv);
                if (f == 0) continue;
                for (int i = 0; i < m.rows; ++i) m.at(i, j2) = red(m.at(i, j2) - f * m.at(i, j));
            }
        }
        return pivot;
    }
    QMat m = S;
    for (int j = 0; j < m.cols; ++j) {
        int piv = -1;
        for (int i = 0; i < m.rows; ++i)
            if (!pivot[i] && m.at(i, j) != 0) { piv = i; break; }
        if (piv < 0) continue;
        pivot[piv] = 1;
        Rational pv = m.at(piv, j);
        for (int j2 = 0; j2 < m.cols; ++j2) {
            if (j2 == j || m.at(piv, j2) == 0) continue;
            Rational f = m.at(piv, j2) / pv;
            for (int i = 0; i < m.rows; ++i) m.at(i, j2) -= f * m.at(i, j);
        }
    }
    return pivot;
}

/******** Nakayama ********/

struct NakayamaResult {
    bool zero = false;
    int residue_dimension = 0;
};

/* Decide M = 0 via M/mM = 0 over the weight-graded local ring. */
inline NakayamaResult nakayama_is_zero(const PresentedModule& m) {
    LocalKind k = classify_local(m.ring());
    if (k == LocalKind::NotLocal)
        fail_math("NotLocal", "base ring is not weight-graded local");
    validate_matrix(m.presentation);
    const SingleRing& s = m.ring()->comps[0];
    if (k == LocalKind::GradedField) {
        if (s.zero_ring) return {true, 0};
        /* m = 0, so M/mM = M; slices are periodic under the inverted unit */
        long long wt = 1;
        for (size_t i = 0; i < s.gens.size(); ++i)
            if (s.inverted[i]) wt = s.gens[i].weight;
        std::vector<long long> reps;
        for (const Shift& sh : m.ambient().shifts) {
            long long r = ((sh.weight % wt) + wt) % wt;
            bool seen = false;
            for (long long existing : reps)
                if (((existing % wt) + wt) % wt == r) seen = true;
            if (!seen) reps.push_back(sh.weight);
        }
        int dim = 0;
        for (long long w : reps) {
            ModuleSlice sl = module_slice(m, w);
            dim += sl.structure.free_rank + static_cast<int>(sl.structure.torsion.size());
        }
        return {dim == 0, dim};
    }
    QMat S = scalar_part(m.presentation);
    auto pivot = residue_pivot_rows(S, s.coeff);
    int dim = 0;
    for (char p : pivot) dim += (p == 0);
    return {dim == 0, dim};
}

/******** Freeness certification ********/

struct FreenessCertificate {
    enum class Verdict { Free, NotProjective, Unknown };
    Verdict verdict = Verdict::Unknown;
    std::vector<Shift> type;     // Free: shifts of the free module
    long long witness_slice = 0; // NotProjective: first nonzero kernel slice
    long long truncation = 0;
    bool exact = false; // Free upgraded past the truncation by the span rule
    std::vector<int> generator_rows;
    std::vector<std::vector<std::string>> section; // section matrix entries (Free)
    int verified_slices = 0;

    bool is_free() const { return verdict == Verdict::Free; }
};

namespace detail {

/* kernel dimension over the fraction field of  v |-> phi(v) mod im(P)  on the
 * weight-w slice; sound for vanishing over every supported coefficient ring */
inline int lift_kernel_dim(const QMat& phi, const QMat& pres) {
    QMat aug = phi.hcat(pres);
    return phi.cols - (rank_q(aug) - rank_q(pres));
}

} // namespace detail

/* Certify coker(P) free over a weight-graded local (or graded-field) ring:
 * lift a residue basis, decide surjectivity exactly, audit kernel slices up
 * to W. Negative verdicts are exact; Free is exact when W clears the
 * presentation span plus a margin, per the truncation rule. */
inline FreenessCertificate free_rank_type(const PresentedModule& m, long long W) {
    LocalKind k = classify_local(m.ring());
    if (k == LocalKind::NotLocal)
        fail_math("NotLocal", "base ring is not weight-graded local");
    validate_matrix(m.presentation);
    const SingleRing& s = m.ring()->comps[0];
    FreenessCertificate cert;
    cert.truncation = W;

    if (k == LocalKind::GradedField) {
        cert.verdict = FreenessCertificate::Verdict::Free;
        cert.exact = true;
        if (s.zero_ring || m.ambient().rank() == 0) return cert;
        long long wt = 1;
        for (size_t i = 0; i < s.gens.size(); ++i)
            if (s.inverted[i]) wt = s.gens[i].weight;
        std::vector<long long> reps;
        for (const Shift& sh : m.ambient().shifts) {
            long long r = ((sh.weight % wt) + wt) % wt;
            bool seen = false;
            for (long long existing : reps)
                if (((existing % wt) + wt) % wt == r) seen = true;
            if (!seen) reps.push_back(sh.weight);
        }
        std::sort(reps.begin(), reps.end());
        for (long long w : reps) {
            ModuleSlice sl = module_slice(m, w);
            QMat red = sl.presentation;
            auto pivot = residue_pivot_rows(red, s.coeff);
            for (size_t t = 0; t < sl.basis.size(); ++t) {
                if (pivot[t]) continue;
                const SliceElem& el = sl.basis[t];
                Degree d = m.ambient().shifts[el.gen].degree + s.monomial_degree(el.m);
                cert.type.push_back({m.ring()->grading.reduce(d), w});
            }
        }
        std::sort(cert.type.begin(), cert.type.end());
        return cert;
    }

    /* residue basis of M/mM */
    QMat S = scalar_part(m.presentation);
    auto pivot = residue_pivot_rows(S, s.coeff);
    for (int i = 0; i < m.ambient().rank(); ++i)
        if (!pivot[i]) cert.generator_rows.push_back(i);

    FreeGradedModule lift_src{m.ring(), {}};
    for (int i : cert.generator_rows) lift_src.shifts.push_back(m.ambient().shifts[i]);
    GradedMatrix phi(lift_src, m.ambient());
    for (size_t b = 0; b < cert.generator_rows.size(); ++b)
        phi.at(cert.generator_rows[b], static_cast<int>(b)) = ring_one(m.ring());

    /* kernel audit */
    long long floor_w = W + 1;
    for (const Shift& sh : lift_src.shifts) floor_w = std::min(floor_w, sh.weight);
    for (long long w = floor_w; w <= W; ++w) {
        QMat phi_w = matrix_slice(phi, w);
        QMat pres_w = matrix_slice(m.presentation, w);
        int kd = detail::lift_kernel_dim(phi_w, pres_w);
        if (kd > 0) {
            cert.verdict = FreenessCertificate::Verdict::NotProjective;
            cert.witness_slice = w;
            return cert;
        }
        ++cert.verified_slices;
    }

    cert.type = lift_src.shifts;
    std::sort(cert.type.begin(), cert.type.end());

    /* section: express each ambient generator through the lift, modulo im(P) */
    cert.section.assign(m.ambient().rank(),
                        std::vector<std::string>(cert.generator_rows.size(), "0"));
    for (int i = 0; i < m.ambient().rank(); ++i) {
        long long w = m.ambient().shifts[i].weight;
        auto tgt_basis = module_slice_basis(m.ambient(), w);
        auto phi_basis = module_slice_basis(lift_src, w);
        QMat phi_w = matrix_slice(phi, w, phi_basis, tgt_basis);
        QMat pres_w = matrix_slice(m.presentation, w, module_slice_basis(m.presentation.src, w),
                                   tgt_basis);
        QMat aug = phi_w.hcat(pres_w);
        std::vector<Rational> b(tgt_basis.size());
        for (size_t t = 0; t < tgt_basis.size(); ++t)
            if (tgt_basis[t].gen == i && tgt_basis[t].m.is_one()) b[t] = 1;
        auto x = solve_over(aug, b, s.coeff);
        if (!x) { // surjectivity failure cannot happen for a residue basis
            cert.verdict = FreenessCertificate::Verdict::Unknown;
            return cert;
        }
        std::vector<RingElement> row(cert.generator_rows.size(), ring_zero(m.ring()));
        for (size_t col = 0; col < phi_basis.size(); ++col) {
            if ((*x)[col] == 0) continue;
            row[phi_basis[col].gen] =
                add(row[phi_basis[col].gen], ring_monomial(m.ring(), 0, phi_basis[col].m, (*x)[col]));
        }
        for (size_t bcol = 0; bcol < row.size(); ++bcol)
            cert.section[i][bcol] = element_to_string(row[bcol]);
    }

    long long span_lo = floor_w, span_hi = floor_w;
    for (const Shift& sh : m.presentation.src.shifts) span_hi = std::max(span_hi, sh.weight);
    for (const Shift& sh : m.presentation.tgt.shifts) {
        span_hi = std::max(span_hi, sh.weight);
        span_lo = std::min(span_lo, sh.weight);
    }
    long long maxgw = 1;
    for (const Generator& g : s.gens) maxgw = std::max(maxgw, g.weight);
    cert.exact = W >= (span_hi - span_lo) + maxgw + 1;
    cert.verdict = FreenessCertificate::Verdict::Free;
    return cert;
}

/******** Spread-out and locally free witnesses ********/

inline PresentedModule base_change_presentation(const PresentedModule& m, const AlgebraMap& f) {
    FreeGradedModule src{f.to, m.presentation.src.shifts};
    FreeGradedModule tgt{f.to, m.presentation.tgt.shifts};
    GradedMatrix p(src, tgt, m.presentation.shift);
    for (int i = 0; i < p.rows(); ++i)
        for (int j = 0; j < p.cols(); ++j) p.at(i, j) = f.apply(m.presentation.at(i, j));
    return {p};
}

struct SpreadOutResult {
    std::string f;                       // monomial in the base ring, "1" when none inverted
    std::vector<std::string> inverted;   // generators inverted to get the splitting
    FreenessCertificate certificate;
    GradedRing localized;
};

/* A basic open D(f) on which M becomes free, at the given monomial prime:
 * invert the generators outside p and certify. Rank-0 freeness is a valid
 * outcome (Free with empty type). */
inline SpreadOutResult spread_out(const PresentedModule& m, const MonomialPrime& p, long long W) {
    const GradedRing& B = m.ring();
    const SingleRing& s = single(B);

    FreenessCertificate global = free_rank_type(m, W);
    if (global.is_free()) return {"1", {}, global, B};

    std::vector<std::string> to_invert;
    for (size_t i = 0; i < s.gens.size(); ++i) {
        if (s.inverted[i]) continue;
        if (std::find(p.vars.begin(), p.vars.end(), static_cast<int>(i)) == p.vars.end())
            to_invert.push_back(s.gens[i].name);
    }
    GradedRing Bf = localize_many(B, to_invert);
    FreenessCertificate cert;
    if (Bf->comps[0].zero_ring) {
        cert.verdict = FreenessCertificate::Verdict::Free;
        cert.exact = true;
        cert.truncation = W;
    } else {
        AlgebraMap loc = canonical_map(B, Bf);
        cert = free_rank_type(base_change_presentation(m, loc), W);
    }
    if (cert.verdict == FreenessCertificate::Verdict::NotProjective)
        fail_math("NotLocallyFreeAtP", "localization at the prime is not free (kernel slice " +
                                           std::to_string(cert.witness_slice) + ")");
    std::string f = "1";
    if (!to_invert.empty()) {
        f.clear();
        for (size_t i = 0; i < to_invert.size(); ++i) {
            if (i) f += "*";
            f += to_invert[i];
        }
    }
    return {f, to_invert, cert, Bf};
}

struct LocallyFreeWitness {
    enum class Verdict { Witness, Unknown };
    Verdict verdict = Verdict::Unknown;
    std::vector<std::string> cover;
    std::string combination;
    std::vector<Shift> type;
    int even_count = 0, odd_count = 0;
    std::vector<std::pair<std::string, std::vector<Shift>>> local_types;
    std::string witness_algebra;
    long long truncation = 0;
};

inline std::string prime_to_string(const GradedRing& r, const MonomialPrime& p) {
    const SingleRing& s = single(r);
    std::string out = "(";
    for (size_t i = 0; i < p.vars.size(); ++i) {
        if (i) out += ",";
        out += s.gens[p.vars[i]].name;
    }
    return out + (p.vars.empty() ? "0)" : ")");
}

/* Zariski cover on which M is free of constant parity type. */
inline LocallyFreeWitness locally_free_witness(const PresentedModule& m, long long W) {
    const GradedRing& B = m.ring();
    Connectedness conn = is_connected(B);
    if (!conn.connected) fail_math("NotConnected", conn.reason);
    LocallyFreeWitness out;
    out.truncation = W;

    auto collapse = [&](const std::vector<Shift>& type) {
        int even = 0, odd = 0;
        for (const Shift& sh : type)
            (B->grading.odd(sh.degree) ? odd : even) += 1;
        return std::make_pair(even, odd);
    };

    FreenessCertificate global = free_rank_type(m, W);
    if (global.verdict == FreenessCertificate::Verdict::Unknown) return out;

    /* local analysis at every minimal monomial prime */
    auto primes = spec_monomial_primes(B);
    bool any_unknown = false;
    std::optional<std::pair<int, int>> parity_type;
    std::string mismatch;
    for (const auto& p : primes) {
        if (!p.minimal) continue;
        SpreadOutResult so = [&] {
            try {
                return spread_out(m, p, W);
            } catch (const Error& e) {
                if (e.code == "NotLocallyFreeAtP")
                    fail_math("NotProjectiveSomewhere",
                              "not locally free at prime " + prime_to_string(B, p));
                throw;
            }
        }();
        if (!so.certificate.is_free()) { any_unknown = true; continue; }
        out.cover.push_back(so.f);
        out.local_types.push_back({prime_to_string(B, p), so.certificate.type});
        auto pq = collapse(so.certificate.type);
        if (parity_type && *parity_type != pq && mismatch.empty())
            mismatch = "parity-collapsed types differ between primes (" +
                       out.local_types.front().first + " vs " + prime_to_string(B, p) + ")";
        parity_type = pq;
    }
    if (any_unknown) return out;

    if (global.is_free()) {
        if (!mismatch.empty()) fail_math("HypothesisFailed", mismatch);
        out.verdict = LocallyFreeWitness::Verdict::Witness;
        out.cover = {"1"};
        out.combination = "1 = 1*1";
        out.type = global.type;
        std::tie(out.even_count, out.odd_count) = collapse(global.type);
        out.witness_algebra = "B x (parity collapse algebra, reported symbolically)";
        return out;
    }

    /* the base is itself weight-graded local: a global kernel witness rules
     * out projectivity, and so does rank jumping between primes */
    if (!mismatch.empty()) fail_math("NotProjectiveSomewhere", mismatch);
    if (global.verdict == FreenessCertificate::Verdict::NotProjective &&
        classify_local(B) != LocalKind::NotLocal)
        fail_math("NotProjectiveSomewhere",
                  "not projective at the weight-maximal ideal (kernel slice " +
                      std::to_string(global.witness_slice) + ")");

    if (parity_type) std::tie(out.even_count, out.odd_count) = *parity_type;

    /* unit-ideal combination: some cover element must be a unit monomial */
    const SingleRing& s = single(B);
    for (const std::string& f : out.cover) {
        Monomial fm = parse_monomial(B, f);
        if (s.monomial_is_unit(fm)) {
            out.combination = "1 = (" + f + ")^-1*" + f;
            out.verdict = LocallyFreeWitness::Verdict::Witness;
            out.type = out.local_types.front().second;
            out.witness_algebra = "product of the B_f_i x (parity collapse algebra, symbolic)";
            return out;
        }
    }
    fail_math("NotProjectiveSomewhere",
              "cover elements generate a proper ideal over the graded-local base");
}

/******** Adams stage check ********/

/* Finite Adams stage: eta_j dualizes to an epimorphism A_j^v -> unit. The
 * unit has its single generator in weight 0, so the decision is the solve
 * for 1 in the weight-0 slice of the image. */
inline bool adams_stage_check(const GradedMatrix& eta) {
    if (eta.src.rank() != 1 || !(eta.src.shifts[0] == Shift{0, 0}))
        fail_input("GradingMismatch", "eta must start at the unit module");
    validate_matrix(eta);
    GradedMatrix etad = dual_matrix(eta);
    const GradedRing& r = eta.src.ring;
    auto tgt_basis = module_slice_basis(etad.tgt, 0);
    auto src_basis = module_slice_basis(etad.src, 0);
    QMat sl = matrix_slice(etad, 0, src_basis, tgt_basis);
    std::vector<Rational> one(tgt_basis.size());
    bool found = false;
    for (size_t t = 0; t < tgt_basis.size(); ++t)
        if (tgt_basis[t].m.is_one()) { one[t] = 1; found = true; }
    if (!found) return false;
    for (size_t c = 0; c < r->comps.size(); ++c)
        if (r->comps[c].zero_ring) return true;
    return solve_over(sl, one, r->comps[0].coeff).has_value();
}

} // namespace gha
