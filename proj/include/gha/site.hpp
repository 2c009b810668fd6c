#pragma once

#include "gha/homology_module.hpp"
#include "gha/resolution.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gha {

/******** Base-change homology theories ********/

struct HomologyTheory {
    std::string name;
    GradedRing base;
    GradedRing A;
    AlgebraMap to_A;
    long long W = 10;
    std::string flatness_note; // user-declared, informational

    ChainComplex apply(const ChainComplex& x) const { return base_change(to_A, x); }
    ChainMap apply(const ChainMap& f) const { return base_change(to_A, f); }
};

/* sanity: H of the unit complex is A concentrated in degree 0 */
inline HomologyTheory make_theory(std::string name, const GradedRing& base, const GradedRing& A,
                                  AlgebraMap to_A, long long W, std::string flatness_note = "") {
    HomologyTheory h{std::move(name), base, A, std::move(to_A), W, std::move(flatness_note)};
    ChainComplex u = h.apply(unit_complex(base));
    long long cap = std::min<long long>(W, 4);
    HomologyEntry h0 = homology(u, 0, cap);
    for (long long w = h0.w_lo; w <= cap; ++w) {
        int expect = 0;
        for (size_t c = 0; c < A->comps.size(); ++c)
            expect += static_cast<int>(A->comps[c].monomials_of_weight(w).size());
        if (h0.at_weight(w).free_rank != expect || !h0.at_weight(w).torsion.empty())
            fail_input("IllFormedAlgebraMap", "H(unit) is not A in degree 0");
    }
    if (!homology(u, 1, cap).all_zero() || !homology(u, -1, cap).all_zero())
        fail_input("IllFormedAlgebraMap", "H(unit) is not concentrated in degree 0");
    return h;
}

inline long long complex_weight_span(const ChainComplex& x) {
    long long lo = 0, hi = 0;
    for (const auto& [n, t] : x.terms)
        for (const Shift& s : t.shifts) {
            lo = std::min(lo, s.weight);
            hi = std::max(hi, s.weight);
        }
    return hi - lo;
}

/******** Dual certificates ********/

struct DegreeCertificate {
    int n = 0;
    std::vector<ComponentCert> comps;

    bool all_free() const {
        return std::all_of(comps.begin(), comps.end(), [](const ComponentCert& c) {
            return c.verdict == ComponentCert::Verdict::Free;
        });
    }
    bool any_not_projective() const {
        return std::any_of(comps.begin(), comps.end(), [](const ComponentCert& c) {
            return c.verdict == ComponentCert::Verdict::NotProjective;
        });
    }
};

struct DualCertificate {
    std::string id;
    enum class Verdict { HDual, NotHDual, Unknown };
    Verdict verdict = Verdict::Unknown;
    std::vector<DegreeCertificate> degrees;
    int witness_degree = 0;
    std::string reason;
    long long truncation = 0;

    bool is_dual() const { return verdict == Verdict::HDual; }
};

/* internal: homology modules of a complex over A for one degree */
struct DegreeHomology {
    int n = 0;
    std::vector<ComponentHomology> comps;
    std::vector<SliceModuleData> data;
};

inline DegreeHomology degree_homology(const ChainComplex& ax, int n, long long w_lo, long long W) {
    DegreeHomology d;
    d.n = n;
    for (size_t c = 0; c < ax.ring->comps.size(); ++c) {
        d.comps.push_back(component_homology(ax, static_cast<int>(c), n, w_lo, W));
        d.data.push_back(homology_module_data(ax, d.comps.back()));
    }
    return d;
}

inline DualCertificate classify_dual(const HomologyTheory& H, const ChainComplex& x,
                                     const std::string& id = "") {
    validate(x);
    if (!ring_equal(x.ring, H.base)) fail_input("RingMismatch", "complex not over the base ring");
    DualCertificate cert;
    cert.id = id;
    cert.truncation = H.W;
    ChainComplex ax = H.apply(x);
    validate(ax);
    long long w_lo = complex_weight_floor(ax);
    long long span = complex_weight_span(ax);
    bool any_unknown = false;
    for (int n = ax.lo(); n <= ax.hi() && !ax.is_empty(); ++n) {
        DegreeCertificate dc;
        dc.n = n;
        DegreeHomology dh = degree_homology(ax, n, w_lo, H.W);
        for (size_t c = 0; c < dh.data.size(); ++c)
            dc.comps.push_back(
                certify_component(dh.data[c], ax.ring, static_cast<int>(c), n, H.W, span));
        if (dc.any_not_projective()) {
            cert.verdict = DualCertificate::Verdict::NotHDual;
            cert.witness_degree = n;
            for (const ComponentCert& cc : dc.comps)
                if (cc.verdict == ComponentCert::Verdict::NotProjective)
                    cert.reason = "H_" + std::to_string(n) + " has a kernel witness at weight " +
                                  std::to_string(cc.witness_slice) + " (component " +
                                  std::to_string(cc.comp) + ")";
            cert.degrees.push_back(std::move(dc));
            return cert;
        }
        if (!dc.all_free()) any_unknown = true;
        cert.degrees.push_back(std::move(dc));
    }
    cert.verdict = any_unknown ? DualCertificate::Verdict::Unknown : DualCertificate::Verdict::HDual;
    return cert;
}

/******** Epi certificates ********/

struct EpiDegree {
    int n = 0;
    bool surjective = true;
    bool exact = true;
    long long witness_w = 0;
    int witness_comp = 0;
};

struct EpiCertificate {
    std::string id;
    enum class Verdict { Epi, NotEpi, Unknown };
    Verdict verdict = Verdict::Unknown;
    std::vector<EpiDegree> degrees;
    long long truncation = 0;

    bool is_epi() const { return verdict == Verdict::Epi; }
};

inline EpiCertificate classify_epi(const HomologyTheory& H, const ChainMap& f,
                                   const std::string& id = "") {
    validate(f);
    if (!ring_equal(f.src.ring, H.base)) fail_input("RingMismatch", "map not over the base ring");
    EpiCertificate cert;
    cert.id = id;
    cert.truncation = H.W;
    ChainMap af = H.apply(f);
    validate(af); // base change preserves the chain condition for algebra maps
    const ChainComplex &AX = af.src, &AY = af.tgt;
    long long w_lo = std::min(complex_weight_floor(AX), complex_weight_floor(AY));
    long long span = std::max(complex_weight_span(AX), complex_weight_span(AY));
    int lo = std::min(AX.lo(), AY.lo()), hi = std::max(AX.hi(), AY.hi());
    bool all_exact = true, any_unknown = false;
    for (int n = lo; n <= hi; ++n) {
        if (AY.term(n).rank() == 0 && AY.term(n + 1).rank() == 0 && AY.term(n - 1).rank() == 0)
            continue; // target homology is zero here
        EpiDegree ed;
        ed.n = n;
        DegreeHomology src = degree_homology(AX, n, w_lo, H.W);
        DegreeHomology tgt = degree_homology(AY, n, w_lo, H.W);
        for (size_t c = 0; c < tgt.data.size() && ed.surjective; ++c) {
            const SingleRing& s = AY.ring->comps[c];
            ComponentCert tcert =
                certify_component(tgt.data[c], AY.ring, static_cast<int>(c), n, H.W, span);
            if (tcert.verdict == ComponentCert::Verdict::Unknown) { any_unknown = true; }
            if (!tcert.exact) ed.exact = false;
            bool graded_field = s.is_graded_field() || s.zero_ring;
            std::vector<QuotientCoords> reducers;
            if (!graded_field) reducers = residue_reducers(tgt.data[c], AY.ring, static_cast<int>(c));
            for (long long w = w_lo; w <= H.W && ed.surjective; ++w) {
                const SliceSpace* ss = src.comps[c].space_at(w);
                const SliceSpace* ts = tgt.comps[c].space_at(w);
                int tdim = ts ? ts->dim() : 0;
                if (tdim == 0) continue;
                QMat F = induced_slice_map(af, static_cast<int>(c), n, w, *ss, *ts);
                if (graded_field) {
                    if (rank_q(F) != tdim) {
                        ed.surjective = false;
                        ed.witness_w = w;
                        ed.witness_comp = static_cast<int>(c);
                    }
                    continue;
                }
                const QuotientCoords& red = reducers[static_cast<size_t>(w - w_lo)];
                if (red.dim() == 0) continue;
                QMat reduced(red.dim(), F.cols);
                for (int j = 0; j < F.cols; ++j) {
                    std::vector<Rational> col(F.rows);
                    for (int i = 0; i < F.rows; ++i) col[i] = F.at(i, j);
                    auto r = red.reduce(col);
                    for (int i = 0; i < red.dim(); ++i) reduced.at(i, j) = r[i];
                }
                if (rank_q(reduced) != red.dim()) {
                    ed.surjective = false;
                    ed.witness_w = w;
                    ed.witness_comp = static_cast<int>(c);
                }
            }
        }
        if (!ed.exact) all_exact = false;
        cert.degrees.push_back(ed);
        if (!ed.surjective) {
            cert.verdict = EpiCertificate::Verdict::NotEpi;
            return cert;
        }
    }
    cert.verdict = (any_unknown && !all_exact) ? EpiCertificate::Verdict::Unknown
                                               : EpiCertificate::Verdict::Epi;
    return cert;
}

/******** Cofiber closure ********/

struct CofiberClosureReport {
    DualCertificate source, target, cone_cert, fiber_cert;
    bool coker_projective = false;
    bool split_mono = false;
    int retraction_slices = 0;
    bool ok = false;
};

namespace detail {

/* cokernel of the induced map in homology coordinates: dims, actions, and the
 * per-slice quotient coordinates */
struct CokerData {
    SliceModuleData data;
    std::vector<QuotientCoords> quots; // per w: H_tgt coords mod im(F_w)
};

inline CokerData coker_of_induced(const ChainMap& af, int comp, int n,
                                  const ComponentHomology& src, const ComponentHomology& tgt,
                                  const SliceModuleData& tgt_data) {
    CokerData out;
    out.data.comp = comp;
    out.data.w_lo = tgt.w_lo;
    out.data.w_hi = tgt.w_hi;
    std::vector<QMat> fmats;
    for (long long w = tgt.w_lo; w <= tgt.w_hi; ++w) {
        const SliceSpace* ss = src.space_at(w);
        const SliceSpace* ts = tgt.space_at(w);
        QMat F = induced_slice_map(af, comp, n, w, *ss, *ts);
        fmats.push_back(F);
        out.quots.push_back(QuotientCoords::make(F));
        out.data.dims.push_back(out.quots.back().dim());
    }
    /* induced actions on the quotient */
    const SingleRing& s = af.tgt.ring->comps[comp];
    for (size_t gi = 0; gi < s.gens.size(); ++gi) {
        long long wt = s.gens[gi].weight;
        std::vector<QMat> mats;
        for (long long w = tgt.w_lo; w <= tgt.w_hi; ++w) {
            size_t wi = static_cast<size_t>(w - tgt.w_lo);
            const QMat* act = tgt_data.action_at(gi, w);
            if (w + wt > tgt.w_hi || !act) {
                mats.push_back(QMat(0, out.data.dims[wi]));
                continue;
            }
            size_t wj = static_cast<size_t>(w + wt - tgt.w_lo);
            QMat m(out.data.dims[wj], out.data.dims[wi]);
            for (int j = 0; j < out.data.dims[wi]; ++j) {
                /* lift the j-th coker basis vector to H coords */
                std::vector<Rational> v(act->cols);
                v[out.quots[wi].basis_rows[j]] = 1;
                std::vector<Rational> img(act->rows);
                for (int i = 0; i < act->rows; ++i) {
                    Rational acc = 0;
                    for (int k = 0; k < act->cols; ++k)
                        if (act->at(i, k) != 0) acc += act->at(i, k) * v[k];
                    img[i] = acc;
                }
                auto r = out.quots[wj].reduce(img);
                for (int i = 0; i < out.data.dims[wj]; ++i) m.at(i, j) = r[i];
            }
            mats.push_back(std::move(m));
        }
        out.data.actions[gi] = std::move(mats);
    }
    return out;
}

} // namespace detail

/* Closure of H-duals under cofibers: for f between H-duals with projective
 * coker(Hf), the cone and fiber are H-duals and coker(Hf) -> H(cone f) splits.
 * The splitting is certified by the residue criterion and exhibited by
 * per-slice left inverses. */
inline CofiberClosureReport cofiber_closure_check(const HomologyTheory& H, const ChainMap& f,
                                                  const std::string& id = "") {
    validate(f);
    CofiberClosureReport rep;
    rep.source = classify_dual(H, f.src, id + ":src");
    rep.target = classify_dual(H, f.tgt, id + ":tgt");
    if (!rep.source.is_dual() || !rep.target.is_dual())
        fail_math("HypothesisFailed", "cofiber closure needs H-duals at both ends");

    ChainMap af = H.apply(f);
    ChainComplex coneX = cone(f);
    ChainComplex coneA = H.apply(coneX);
    ChainMap inclA = cone_inclusion(af, coneA);

    long long w_lo = std::min(complex_weight_floor(coneA),
                              std::min(complex_weight_floor(af.src), complex_weight_floor(af.tgt)));
    long long span = std::max(complex_weight_span(coneA),
                              std::max(complex_weight_span(af.src), complex_weight_span(af.tgt)));

    rep.coker_projective = true;
    rep.split_mono = true;
    int lo = coneA.lo(), hi = coneA.hi();
    for (int n = lo; n <= hi; ++n) {
        DegreeHomology hs = degree_homology(af.src, n, w_lo, H.W);
        DegreeHomology ht = degree_homology(af.tgt, n, w_lo, H.W);
        DegreeHomology hc = degree_homology(coneA, n, w_lo, H.W);
        for (size_t c = 0; c < ht.data.size(); ++c) {
            detail::CokerData ck = detail::coker_of_induced(af, static_cast<int>(c), n, hs.comps[c],
                                                            ht.comps[c], ht.data[c]);
            ComponentCert ccert =
                certify_component(ck.data, af.tgt.ring, static_cast<int>(c), n, H.W, span);
            if (ccert.verdict != ComponentCert::Verdict::Free) rep.coker_projective = false;

            /* split monomorphism coker(Hf) -> H(cone): residue criterion */
            const SingleRing& s = af.tgt.ring->comps[c];
            bool graded_field = s.is_graded_field() || s.zero_ring;
            auto coker_reducers = residue_reducers(ck.data, af.tgt.ring, static_cast<int>(c));
            auto cone_reducers = residue_reducers(hc.data[c], coneA.ring, static_cast<int>(c));
            for (long long w = ck.data.w_lo; w <= ck.data.w_hi; ++w) {
                size_t wi = static_cast<size_t>(w - ck.data.w_lo);
                int cdim = ck.data.dims[wi];
                if (cdim == 0) continue;
                const SliceSpace* ys = ht.comps[c].space_at(w);
                const SliceSpace* cs = hc.comps[c].space_at(w);
                QMat I = induced_slice_map(inclA, static_cast<int>(c), n, w, *ys, *cs);
                /* columns at the coker basis rows */
                QMat Ibar(I.rows, cdim);
                for (int j = 0; j < cdim; ++j) {
                    int src_row = ck.quots[wi].basis_rows[j];
                    for (int i = 0; i < I.rows; ++i) Ibar.at(i, j) = I.at(i, src_row);
                }
                /* per-slice left inverse exists iff Ibar is injective */
                if (rank_q(Ibar) == cdim) ++rep.retraction_slices;
                else rep.split_mono = false;
                if (!graded_field) {
                    /* residue injectivity: coker residue basis vs cone mod m */
                    const QuotientCoords& cr = coker_reducers[wi];
                    const QuotientCoords& kr = cone_reducers[wi];
                    if (cr.dim() == 0) continue;
                    QMat resm(kr.dim(), cr.dim());
                    for (int j = 0; j < cr.dim(); ++j) {
                        std::vector<Rational> v(I.rows);
                        for (int i = 0; i < I.rows; ++i) v[i] = Ibar.at(i, cr.basis_rows[j]);
                        auto r = kr.reduce(v);
                        for (int i = 0; i < kr.dim(); ++i) resm.at(i, j) = r[i];
                    }
                    if (rank_q(resm) != cr.dim()) rep.split_mono = false;
                }
            }
        }
    }
    if (!rep.coker_projective)
        fail_math("HypothesisFailed", "coker(Hf) is not projective");

    rep.cone_cert = classify_dual(H, coneX, id + ":cone");
    rep.fiber_cert = classify_dual(H, fiber(f), id + ":fiber");
    rep.ok = rep.cone_cert.is_dual() && rep.fiber_cert.is_dual() && rep.split_mono;
    return rep;
}

/******** Cover pullbacks and exactness ********/

struct CoverPullback {
    ChainComplex pullback;   // A'
    ChainMap cover;          // p' : A' -> B'
    ChainMap comparison;     // f' : A' -> A
    EpiCertificate cover_epi;
    bool square_commutes = false;
};

/* Pull the cover p : A -> B back along f : B' -> B through the fiber of
 * (p  -f) : A (+) B' -> B; in the triangulated picture the square commutes,
 * which the cone model realizes up to homotopy, so commutativity is verified
 * on homology. */
inline CoverPullback cover_pullback(const HomologyTheory& H, const ChainMap& p, const ChainMap& f,
                                    const std::string& id = "") {
    validate(p);
    validate(f);
    EpiCertificate pe = classify_epi(H, p, id + ":p");
    if (!pe.is_epi()) fail_math("NotAnEpi", "p is not an H-epimorphism");

    ChainComplex S = direct_sum_complex(p.src, f.src);
    ChainMap minus_f = f;
    for (auto& [n, c] : minus_f.components) c = scale_matrix(c, Rational(-1));
    ChainMap q = sum_into(S, p, minus_f);
    validate(q);
    ChainComplex Aprime = fiber(q);
    ChainMap to_S = fiber_projection(q, Aprime);

    CoverPullback out;
    out.pullback = Aprime;
    out.comparison = compose_chain_maps(sum_projection(p.src, f.src, S, true), to_S);
    out.cover = compose_chain_maps(sum_projection(p.src, f.src, S, false), to_S);
    validate(out.cover);
    validate(out.comparison);
    out.cover_epi = classify_epi(H, out.cover, id + ":p'");

    /* H(f o p') = H(p o f') per slice */
    ChainMap c1 = H.apply(compose_chain_maps(f, out.cover));
    ChainMap c2 = H.apply(compose_chain_maps(p, out.comparison));
    ChainComplex srcA = c1.src, tgtA = c1.tgt;
    long long w_lo = std::min(complex_weight_floor(srcA), complex_weight_floor(tgtA));
    out.square_commutes = true;
    for (int n = std::min(srcA.lo(), tgtA.lo()); n <= std::max(srcA.hi(), tgtA.hi()); ++n) {
        DegreeHomology hs = degree_homology(srcA, n, w_lo, H.W);
        DegreeHomology ht = degree_homology(tgtA, n, w_lo, H.W);
        for (size_t c = 0; c < ht.data.size(); ++c)
            for (long long w = w_lo; w <= H.W; ++w) {
                const SliceSpace* ss = hs.comps[c].space_at(w);
                const SliceSpace* ts = ht.comps[c].space_at(w);
                if (!ss || !ts || ts->dim() == 0 || ss->dim() == 0) continue;
                QMat m1 = induced_slice_map(c1, static_cast<int>(c), n, w, *ss, *ts);
                QMat m2 = induced_slice_map(c2, static_cast<int>(c), n, w, *ss, *ts);
                for (size_t t = 0; t < m1.a.size(); ++t)
                    if (m1.a[t] != m2.a[t]) out.square_commutes = false;
            }
    }
    return out;
}

struct CoverExactness {
    bool exact = true;
    std::vector<std::string> failures;
};

/* slice exactness of 0 -> H(fiber p) -> H(src) -> H(tgt) -> 0 */
inline CoverExactness exactness_of_cover(const HomologyTheory& H, const ChainMap& p,
                                         const std::string& id = "") {
    validate(p);
    CoverExactness out;
    ChainComplex F = fiber(p);
    ChainMap j = fiber_projection(p, F);
    ChainMap aj = H.apply(j), ap = H.apply(p);
    ChainComplex FA = aj.src, XA = aj.tgt, YA = ap.tgt;
    long long w_lo = std::min({complex_weight_floor(FA), complex_weight_floor(XA),
                               complex_weight_floor(YA)});
    int lo = std::min({FA.lo(), XA.lo(), YA.lo()});
    int hi = std::max({FA.hi(), XA.hi(), YA.hi()});
    auto note = [&](int n, int c, long long w, const std::string& what) {
        out.exact = false;
        out.failures.push_back(id + ": degree " + std::to_string(n) + ", component " +
                               std::to_string(c) + ", weight " + std::to_string(w) + ": " + what);
    };
    for (int n = lo; n <= hi; ++n) {
        DegreeHomology hf = degree_homology(FA, n, w_lo, H.W);
        DegreeHomology hx = degree_homology(XA, n, w_lo, H.W);
        DegreeHomology hy = degree_homology(YA, n, w_lo, H.W);
        for (size_t c = 0; c < hx.data.size(); ++c)
            for (long long w = w_lo; w <= H.W; ++w) {
                const SliceSpace* fs = hf.comps[c].space_at(w);
                const SliceSpace* xs = hx.comps[c].space_at(w);
                const SliceSpace* ys = hy.comps[c].space_at(w);
                int df = fs ? fs->dim() : 0, dx = xs ? xs->dim() : 0, dy = ys ? ys->dim() : 0;
                if (df + dx + dy == 0) continue;
                QMat J = induced_slice_map(aj, static_cast<int>(c), n, w, *fs, *xs);
                QMat P = induced_slice_map(ap, static_cast<int>(c), n, w, *xs, *ys);
                if (rank_q(J) != df) note(n, static_cast<int>(c), w, "H(fiber) -> H(src) not injective");
                if (rank_q(P) != dy) note(n, static_cast<int>(c), w, "H(src) -> H(tgt) not surjective");
                if (!P.mul(J).is_zero()) note(n, static_cast<int>(c), w, "composite nonzero");
                if (dx - rank_q(P) != rank_q(J))
                    note(n, static_cast<int>(c), w, "middle homology nonzero");
            }
    }
    return out;
}

/******** Catalogs and theory comparison ********/

struct Catalog {
    std::vector<std::pair<std::string, ChainComplex>> objects;
    struct MapEntry {
        std::string id;
        ChainMap map;
    };
    std::vector<MapEntry> maps;
};

inline std::string complex_key(const ChainComplex& x) {
    std::string key;
    for (const auto& [n, t] : x.terms) {
        if (t.rank() == 0) continue;
        key += std::to_string(n) + ":";
        for (const Shift& s : t.shifts)
            key += "(" + std::to_string(s.degree) + "," + std::to_string(s.weight) + ")";
        key += ";";
    }
    key += "|";
    for (const auto& [n, d] : x.diffs) {
        if (matrix_is_zero(d)) continue;
        key += std::to_string(n) + ":";
        for (const RingElement& e : d.e) key += element_to_string(e) + ",";
        key += ";";
    }
    return key;
}

/* Close the seeds under shift, dual, binary direct sums, and cones of the
 * listed maps; deduplicate by normalized presentation. Retracts are only
 * added through explicit idempotents, which the seed format does not carry. */
inline Catalog catalog_closure(const Catalog& seeds, int depth, size_t max_objects = 128) {
    if (depth < 0 || depth > 4) fail_bound("BoundExceeded", "catalog depth out of range");
    Catalog out = seeds;
    std::set<std::string> keys;
    for (const auto& [id, x] : out.objects) keys.insert(complex_key(x));

    /* maps: include shifts and duals of the seed maps */
    std::vector<Catalog::MapEntry> maps = seeds.maps;
    for (const auto& me : seeds.maps) {
        maps.push_back({me.id + "[1]", shift_chain_map(me.map, 1)});
        maps.push_back({me.id + "[-1]", shift_chain_map(me.map, -1)});
        maps.push_back({"dual(" + me.id + ")", dual_chain_map(me.map)});
    }
    out.maps = maps;

    auto try_add = [&](const std::string& id, const ChainComplex& x) {
        if (out.objects.size() >= max_objects)
            fail_bound("BoundExceeded", "catalog closure exceeded the object bound");
        std::string k = complex_key(x);
        if (keys.count(k)) return;
        keys.insert(k);
        out.objects.push_back({id, x});
    };

    for (int round = 0; round < depth; ++round) {
        std::vector<std::pair<std::string, ChainComplex>> snapshot = out.objects;
        for (const auto& [id, x] : snapshot) {
            try_add(id + "[1]", shift_complex(x, 1));
            try_add(id + "[-1]", shift_complex(x, -1));
            try_add("dual(" + id + ")", dual_complex(x));
        }
        for (size_t i = 0; i < snapshot.size(); ++i)
            for (size_t j = i; j < snapshot.size(); ++j)
                try_add(snapshot[i].first + "(+)" + snapshot[j].first,
                        direct_sum_complex(snapshot[i].second, snapshot[j].second));
        for (const auto& me : maps) try_add("cone(" + me.id + ")", cone(me.map));
    }
    return out;
}

struct TheoryComparison {
    struct ObjectRow {
        std::string id;
        DualCertificate::Verdict v1, v2;
    };
    struct MapRow {
        std::string id;
        bool both_dual = false;
        EpiCertificate::Verdict v1 = EpiCertificate::Verdict::Unknown;
        EpiCertificate::Verdict v2 = EpiCertificate::Verdict::Unknown;
    };
    std::vector<ObjectRow> objects;
    std::vector<MapRow> maps;
    std::vector<std::string> dual_discrepancies;
    std::vector<std::string> epi_discrepancies;
    bool violates_condition_i = false;
};

/* Flat-replacement agreement: a replacement theory must classify duals and
 * epimorphisms between common duals identically; any epi discrepancy violates
 * condition (i). */
inline TheoryComparison compare_theories(const HomologyTheory& H1, const HomologyTheory& H2,
                                         const Catalog& catalog) {
    TheoryComparison out;
    std::map<std::string, std::pair<bool, bool>> dual_status;
    for (const auto& [id, x] : catalog.objects) {
        DualCertificate c1 = classify_dual(H1, x, id);
        DualCertificate c2 = classify_dual(H2, x, id);
        out.objects.push_back({id, c1.verdict, c2.verdict});
        dual_status[complex_key(x)] = {c1.is_dual(), c2.is_dual()};
        bool d1 = c1.verdict == DualCertificate::Verdict::HDual;
        bool n1 = c1.verdict == DualCertificate::Verdict::NotHDual;
        bool d2 = c2.verdict == DualCertificate::Verdict::HDual;
        bool n2 = c2.verdict == DualCertificate::Verdict::NotHDual;
        if ((d1 && n2) || (n1 && d2))
            out.dual_discrepancies.push_back(id + ": " + H1.name + (d1 ? "-dual" : "-non-dual") +
                                             " vs " + H2.name + (d2 ? "-dual" : "-non-dual"));
    }
    for (const auto& me : catalog.maps) {
        TheoryComparison::MapRow row;
        row.id = me.id;
        auto s1 = dual_status.find(complex_key(me.map.src));
        auto s2 = dual_status.find(complex_key(me.map.tgt));
        bool src_both = false, tgt_both = false;
        if (s1 != dual_status.end()) src_both = s1->second.first && s1->second.second;
        else {
            src_both = classify_dual(H1, me.map.src).is_dual() &&
                       classify_dual(H2, me.map.src).is_dual();
        }
        if (s2 != dual_status.end()) tgt_both = s2->second.first && s2->second.second;
        else {
            tgt_both = classify_dual(H1, me.map.tgt).is_dual() &&
                       classify_dual(H2, me.map.tgt).is_dual();
        }
        row.both_dual = src_both && tgt_both;
        if (row.both_dual) {
            row.v1 = classify_epi(H1, me.map, me.id).verdict;
            row.v2 = classify_epi(H2, me.map, me.id).verdict;
            bool e1 = row.v1 == EpiCertificate::Verdict::Epi;
            bool x1 = row.v1 == EpiCertificate::Verdict::NotEpi;
            bool e2 = row.v2 == EpiCertificate::Verdict::Epi;
            bool x2 = row.v2 == EpiCertificate::Verdict::NotEpi;
            if ((e1 && x2) || (x1 && e2)) {
                out.epi_discrepancies.push_back(me.id + ": " + H1.name +
                                                (e1 ? "-epi" : "-non-epi") + " vs " + H2.name +
                                                (e2 ? "-epi" : "-non-epi"));
                out.violates_condition_i = true;
            }
        }
        out.maps.push_back(row);
    }
    return out;
}

} // namespace gha
