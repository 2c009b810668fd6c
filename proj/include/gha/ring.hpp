#pragma once

#include "gha/coeff.hpp"
#include "gha/grading.hpp"
#include "gha/monomial.hpp"
#include "gha/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gha {

/******** Presented graded rings ********/

struct Generator {
    std::string name;
    Degree degree = 0;
    long long weight = 1;
};

/* One monomial quotient of a (free graded-commutative) polynomial algebra,
 * with a subset of generators inverted. Relations are monomials in the
 * non-inverted generators, in localization normal form. */
struct SingleRing {
    GradingSpec grading;
    CoefficientRing coeff;
    std::vector<Generator> gens;
    std::vector<char> inverted;
    std::vector<Monomial> relations;
    bool zero_ring = false;

    int gen_index(const std::string& name) const {
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens[i].name == name) return static_cast<int>(i);
        return -1;
    }

    long long monomial_weight(const Monomial& m) const {
        long long w = 0;
        for (size_t i = 0; i < gens.size(); ++i) w += m.exps[i] * gens[i].weight;
        return w;
    }

    Degree monomial_degree(const Monomial& m) const {
        Degree d = 0;
        for (size_t i = 0; i < gens.size(); ++i) d += m.exps[i] * gens[i].degree;
        return grading.reduce(d);
    }

    bool monomial_is_unit(const Monomial& m) const {
        for (size_t i = 0; i < gens.size(); ++i)
            if (m.exps[i] != 0 && !inverted[i]) return false;
        return true;
    }

    /* killed by the ideal? */
    bool monomial_is_zero(const Monomial& m) const {
        if (zero_ring) return true;
        for (const Monomial& r : relations)
            if (m.divisible_by(r)) return true;
        return false;
    }

    /* Product of normal-form monomials: the combined exponent vector plus the
     * Koszul sign from reordering odd generators; the square of an odd
     * generator dies. Returns nullopt when the product is zero. */
    std::optional<std::pair<Monomial, int>> mul_monomials(const Monomial& a, const Monomial& b) const {
        if (zero_ring) return std::nullopt;
        int sgn = 1;
        long long cross = 0;
        for (size_t i = 0; i < gens.size(); ++i) {
            if (!grading.odd(gens[i].degree)) continue;
            if (a.exps[i] != 0 && b.exps[i] != 0) return std::nullopt; // odd square
            for (size_t j = 0; j < i; ++j)
                if (grading.odd(gens[j].degree)) cross += a.exps[i] * b.exps[j];
        }
        if (cross % 2 != 0) sgn = -1;
        Monomial m = a.times(b);
        if (monomial_is_zero(m)) return std::nullopt;
        return std::make_pair(m, sgn);
    }

    int inverted_count() const {
        int c = 0;
        for (char f : inverted) c += (f != 0);
        return c;
    }

    bool has_odd_generator() const {
        for (const Generator& g : gens)
            if (grading.odd(g.degree)) return true;
        return false;
    }

    /* nilpotency exponent of a non-inverted generator from pure-power
     * relations, or 0 if none */
    long long nilpotency_bound(size_t gi) const {
        long long best = 0;
        for (const Monomial& r : relations) {
            bool pure = r.exps[gi] > 0;
            for (size_t j = 0; pure && j < gens.size(); ++j)
                if (j != gi && r.exps[j] != 0) pure = false;
            if (pure && (best == 0 || r.exps[gi] < best)) best = r.exps[gi];
        }
        return best;
    }

    /* Every weight slice finitely generated: no inverted generators, or one
     * inverted generator with all others nilpotent. */
    bool has_finite_slices() const {
        if (zero_ring) return true;
        int inv = inverted_count();
        if (inv == 0) return true;
        if (inv > 1) return false;
        for (size_t i = 0; i < gens.size(); ++i)
            if (!inverted[i] && nilpotency_bound(i) == 0) return false;
        return true;
    }

    /* every nonzero homogeneous element invertible */
    bool is_graded_field() const {
        if (zero_ring || !coeff.is_field()) return false;
        for (size_t i = 0; i < gens.size(); ++i)
            if (!inverted[i]) return false;
        return inverted_count() <= 1;
    }

    /* All normal-form monomials of the given weight, sorted. */
    std::vector<Monomial> monomials_of_weight(long long w) const {
        std::vector<Monomial> out;
        if (zero_ring) return out;
        int inv = inverted_count();
        if (inv == 0) {
            if (w < 0) return out;
            Monomial cur(gens.size());
            enumerate_plain(0, w, cur, out);
        } else {
            if (!has_finite_slices())
                fail_input("InfiniteSlice", "weight slices of this localization are not finitely generated");
            size_t ti = 0;
            while (!inverted[ti]) ++ti;
            std::vector<Monomial> nilpart;
            Monomial cur(gens.size());
            enumerate_nilpotent(0, ti, cur, nilpart);
            for (const Monomial& m : nilpart) {
                long long rem = w - monomial_weight(m);
                if (rem % gens[ti].weight != 0) continue;
                Monomial full = m;
                full.exps[ti] = rem / gens[ti].weight;
                out.push_back(full);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string monomial_to_string(const Monomial& m) const {
        if (m.is_one()) return "1";
        std::string s;
        for (size_t i = 0; i < gens.size(); ++i) {
            if (m.exps[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += gens[i].name;
            if (m.exps[i] != 1) s += "^" + std::to_string(m.exps[i]);
        }
        return s;
    }

private:
    void enumerate_plain(size_t gi, long long rem, Monomial& cur, std::vector<Monomial>& out) const {
        if (monomial_is_zero(cur)) return;
        if (gi == gens.size()) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        if (inverted[gi]) { // unreachable in the inv==0 path, kept for safety
            enumerate_plain(gi + 1, rem, cur, out);
            return;
        }
        long long maxe = rem / gens[gi].weight;
        for (long long e = 0; e <= maxe; ++e) {
            cur.exps[gi] = e;
            enumerate_plain(gi + 1, rem - e * gens[gi].weight, cur, out);
        }
        cur.exps[gi] = 0;
    }

    void enumerate_nilpotent(size_t gi, size_t skip, Monomial& cur, std::vector<Monomial>& out) const {
        if (monomial_is_zero(cur)) return;
        if (gi == gens.size()) {
            out.push_back(cur);
            return;
        }
        if (gi == skip || inverted[gi]) {
            enumerate_nilpotent(gi + 1, skip, cur, out);
            return;
        }
        long long bound = nilpotency_bound(gi);
        for (long long e = 0; e < bound; ++e) {
            cur.exps[gi] = e;
            enumerate_nilpotent(gi + 1, skip, cur, out);
        }
        cur.exps[gi] = 0;
    }
};

struct RingData;
using GradedRing = std::shared_ptr<const RingData>;

struct RingData {
    GradingSpec grading;
    bool product = false;
    std::vector<SingleRing> comps;
    std::string label; // cosmetic, carried through serialization
};

inline const SingleRing& single(const GradedRing& r) {
    if (r->product || r->comps.size() != 1)
        fail_input("ProductRingUnsupported", "operation needs a single-component ring");
    return r->comps[0];
}

inline bool ring_equal(const GradedRing& a, const GradedRing& b) {
    if (a == b) return true;
    if (!(a->grading == b->grading) || a->product != b->product ||
        a->comps.size() != b->comps.size())
        return false;
    for (size_t c = 0; c < a->comps.size(); ++c) {
        const SingleRing &x = a->comps[c], &y = b->comps[c];
        if (!(x.coeff == y.coeff) || x.zero_ring != y.zero_ring ||
            x.gens.size() != y.gens.size() || !(x.relations == y.relations) ||
            x.inverted != y.inverted)
            return false;
        for (size_t i = 0; i < x.gens.size(); ++i)
            if (x.gens[i].name != y.gens[i].name || x.gens[i].degree != y.gens[i].degree ||
                x.gens[i].weight != y.gens[i].weight)
                return false;
    }
    return true;
}

/* Normalization: strip inverted factors from relations, kill generators whose
 * stripped relation is the bare generator, drop relations that became
 * redundant, iterate to a fixed point. */
inline void normalize_single(SingleRing& s) {
    for (;;) {
        for (Monomial& r : s.relations)
            for (size_t i = 0; i < s.gens.size(); ++i)
                if (s.inverted[i]) r.exps[i] = 0;

        bool changed = false;
        int killed = -1;
        for (const Monomial& r : s.relations) {
            if (r.is_one()) { s.zero_ring = true; break; }
            int supp = -1;
            bool single_var = true;
            for (size_t i = 0; i < s.gens.size(); ++i) {
                if (r.exps[i] == 0) continue;
                if (supp >= 0) { single_var = false; break; }
                supp = static_cast<int>(i);
            }
            if (single_var && supp >= 0 && r.exps[supp] == 1) { killed = supp; break; }
        }
        if (s.zero_ring) {
            s.gens.clear();
            s.inverted.clear();
            s.relations.clear();
            return;
        }
        if (killed >= 0) {
            std::vector<Monomial> keep;
            for (const Monomial& r : s.relations)
                if (r.exps[killed] == 0) keep.push_back(r);
            for (Monomial& r : keep) r.exps.erase(r.exps.begin() + killed);
            s.relations = std::move(keep);
            s.gens.erase(s.gens.begin() + killed);
            s.inverted.erase(s.inverted.begin() + killed);
            changed = true;
        }
        if (!changed) break;
    }

    /* odd generators square to zero; the monomial basis needs 2 invertible */
    for (size_t i = 0; i < s.gens.size(); ++i) {
        if (!s.grading.odd(s.gens[i].degree) || s.inverted[i]) continue;
        if (!s.coeff.two_is_unit())
            fail_input("ParseError", "odd generators need 2 invertible in " + s.coeff.describe());
        Monomial sq(s.gens.size());
        sq.exps[i] = 2;
        s.relations.push_back(sq);
    }

    std::sort(s.relations.begin(), s.relations.end());
    s.relations.erase(std::unique(s.relations.begin(), s.relations.end()), s.relations.end());
    std::vector<Monomial> minimal;
    for (size_t i = 0; i < s.relations.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < s.relations.size() && !dominated; ++j)
            if (j != i && s.relations[i].divisible_by(s.relations[j]) &&
                !(s.relations[j].divisible_by(s.relations[i]) && j > i))
                dominated = true;
        if (!dominated) minimal.push_back(s.relations[i]);
    }
    s.relations = std::move(minimal);
}

inline GradedRing make_single_ring(GradingSpec grading, CoefficientRing coeff,
                                   std::vector<Generator> gens,
                                   std::vector<Monomial> relations,
                                   std::vector<std::string> inverted_names = {},
                                   std::string label = "") {
    SingleRing s;
    s.grading = grading;
    s.coeff = std::move(coeff);
    s.gens = std::move(gens);
    s.inverted.assign(s.gens.size(), 0);
    for (size_t i = 0; i < s.gens.size(); ++i) {
        if (s.gens[i].weight < 1) fail_input("ParseError", "generator weight must be >= 1");
        for (size_t j = 0; j < i; ++j)
            if (s.gens[i].name == s.gens[j].name)
                fail_input("ParseError", "duplicate generator '" + s.gens[i].name + "'");
    }
    for (const std::string& n : inverted_names) {
        int gi = s.gen_index(n);
        if (gi < 0) fail_input("UnknownGenerator", "inverted generator '" + n + "' not declared");
        s.inverted[gi] = 1;
    }
    for (const Monomial& r : relations) {
        if (r.size() != s.gens.size()) fail_input("ParseError", "relation arity mismatch");
        for (long long e : r.exps)
            if (e < 0) fail_input("NegativeExponentOfNonInverted", "relation with negative exponent");
    }
    s.relations = std::move(relations);
    normalize_single(s);
    auto data = std::make_shared<RingData>();
    data->grading = grading;
    data->product = false;
    data->comps.push_back(std::move(s));
    data->label = std::move(label);
    return data;
}

inline GradedRing make_product_ring(const std::vector<GradedRing>& factors, std::string label = "") {
    if (factors.empty()) fail_input("ParseError", "empty product ring");
    auto data = std::make_shared<RingData>();
    data->grading = factors[0]->grading;
    data->product = true;
    data->label = std::move(label);
    for (const GradedRing& f : factors) {
        if (!(f->grading == data->grading))
            fail_input("GradingMismatch", "product components must share the grading");
        for (const SingleRing& c : f->comps) data->comps.push_back(c);
    }
    return data;
}

/******** Ring elements ********/

using Poly = std::map<Monomial, Rational>;

struct RingElement {
    GradedRing ring;
    std::vector<Poly> comps;

    RingElement() = default;
    explicit RingElement(GradedRing r) : ring(std::move(r)), comps(ring->comps.size()) {}

    bool is_zero() const {
        for (const Poly& p : comps)
            if (!p.empty()) return false;
        return true;
    }
};

inline RingElement ring_zero(const GradedRing& r) { return RingElement(r); }

inline RingElement ring_one(const GradedRing& r) {
    RingElement e(r);
    for (size_t c = 0; c < r->comps.size(); ++c) {
        if (r->comps[c].zero_ring) continue;
        e.comps[c][Monomial(r->comps[c].gens.size())] = 1;
    }
    return e;
}

inline RingElement ring_scalar(const GradedRing& r, const Rational& q) {
    RingElement e = ring_one(r);
    for (Poly& p : e.comps)
        for (auto& kv : p) kv.second *= q;
    if (q == 0) e = RingElement(r);
    return e;
}

inline RingElement ring_monomial(const GradedRing& r, size_t comp, const Monomial& m,
                                 const Rational& c = Rational(1)) {
    RingElement e(r);
    if (c != 0 && !r->comps[comp].monomial_is_zero(m)) e.comps[comp][m] = c;
    return e;
}

inline void check_same_ring(const RingElement& a, const RingElement& b) {
    if (!ring_equal(a.ring, b.ring)) fail_input("RingMismatch", "elements over different rings");
}

inline RingElement add(const RingElement& a, const RingElement& b) {
    check_same_ring(a, b);
    RingElement r = a;
    for (size_t c = 0; c < r.comps.size(); ++c)
        for (const auto& [m, q] : b.comps[c]) {
            auto it = r.comps[c].find(m);
            if (it == r.comps[c].end()) {
                r.comps[c][m] = q;
            } else {
                it->second += q;
                if (it->second == 0) r.comps[c].erase(it);
            }
        }
    return r;
}

inline RingElement negate(const RingElement& a) {
    RingElement r = a;
    for (Poly& p : r.comps)
        for (auto& kv : p) kv.second = -kv.second;
    return r;
}

inline RingElement sub(const RingElement& a, const RingElement& b) { return add(a, negate(b)); }

inline RingElement scale(const RingElement& a, const Rational& q) {
    if (q == 0) return RingElement(a.ring);
    RingElement r = a;
    for (Poly& p : r.comps)
        for (auto& kv : p) kv.second *= q;
    return r;
}

inline RingElement mul(const RingElement& a, const RingElement& b) {
    check_same_ring(a, b);
    RingElement r(a.ring);
    for (size_t c = 0; c < r.comps.size(); ++c) {
        const SingleRing& s = a.ring->comps[c];
        for (const auto& [ma, qa] : a.comps[c])
            for (const auto& [mb, qb] : b.comps[c]) {
                auto prod = s.mul_monomials(ma, mb);
                if (!prod) continue;
                Rational q = qa * qb * prod->second;
                auto it = r.comps[c].find(prod->first);
                if (it == r.comps[c].end()) {
                    if (q != 0) r.comps[c][prod->first] = q;
                } else {
                    it->second += q;
                    if (it->second == 0) r.comps[c].erase(it);
                }
            }
    }
    return r;
}

inline RingElement ring_pow(const RingElement& a, long long e) {
    if (e < 0) fail_input("NegativeExponentOfNonInverted", "cannot invert a general element");
    RingElement r = ring_one(a.ring);
    for (long long i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

inline bool equal(const RingElement& a, const RingElement& b) {
    check_same_ring(a, b);
    return a.comps == b.comps;
}

struct Homogeneity {
    bool zero = true;
    Degree degree = 0;
    long long weight = 0;
};

/* (degree, weight) when the element is bihomogeneous; nullopt otherwise. */
inline std::optional<Homogeneity> homogeneity(const RingElement& e) {
    Homogeneity h;
    for (size_t c = 0; c < e.comps.size(); ++c) {
        const SingleRing& s = e.ring->comps[c];
        for (const auto& [m, q] : e.comps[c]) {
            (void)q;
            Degree d = s.monomial_degree(m);
            long long w = s.monomial_weight(m);
            if (h.zero) {
                h.zero = false;
                h.degree = d;
                h.weight = w;
            } else if (h.degree != d || h.weight != w) {
                return std::nullopt;
            }
        }
    }
    return h;
}

inline std::string element_to_string(const RingElement& e) {
    auto poly_str = [&](size_t c) {
        const SingleRing& s = e.ring->comps[c];
        if (e.comps[c].empty()) return std::string("0");
        std::string out;
        for (auto it = e.comps[c].rbegin(); it != e.comps[c].rend(); ++it) {
            const auto& [m, q] = *it;
            std::string term;
            if (m.is_one()) {
                term = rat_to_string(q);
            } else if (q == 1) {
                term = s.monomial_to_string(m);
            } else if (q == -1) {
                term = "-" + s.monomial_to_string(m);
            } else {
                term = rat_to_string(q) + "*" + s.monomial_to_string(m);
            }
            if (out.empty()) {
                out = term;
            } else if (!term.empty() && term[0] == '-') {
                out += " - " + term.substr(1);
            } else {
                out += " + " + term;
            }
        }
        return out;
    };
    if (e.ring->comps.size() == 1) return poly_str(0);
    std::string out = "(";
    for (size_t c = 0; c < e.ring->comps.size(); ++c) {
        if (c) out += ", ";
        out += poly_str(c);
    }
    return out + ")";
}

/******** Polynomial expression parser ********/

namespace detail {

class ElementParser {
public:
    ElementParser(const GradedRing& ring, size_t comp, std::string_view src)
        : ring_(ring), comp_(comp), src_(src) {}

    RingElement parse() {
        RingElement e = expr();
        skip_ws();
        if (pos_ != src_.size()) fail_input("ParseError", "trailing input in '" + std::string(src_) + "'");
        return e;
    }

private:
    const GradedRing& ring_;
    size_t comp_;
    std::string_view src_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    RingElement expr() {
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        RingElement acc = term();
        if (neg) acc = negate(acc);
        for (;;) {
            if (eat('+')) acc = add(acc, term());
            else if (eat('-')) acc = sub(acc, term());
            else break;
        }
        return acc;
    }

    RingElement term() {
        RingElement acc = factor();
        while (eat('*')) acc = mul(acc, factor());
        return acc;
    }

    RingElement factor() {
        RingElement b = base();
        if (eat('^')) {
            long long e = integer();
            if (e < 0) {
                /* only an inverted generator may carry a negative exponent */
                auto inv = invert_monomial(b);
                if (!inv) fail_input("NegativeExponentOfNonInverted",
                                     "negative exponent on a non-invertible factor");
                return ring_pow(*inv, -e);
            }
            return ring_pow(b, e);
        }
        return b;
    }

    std::optional<RingElement> invert_monomial(const RingElement& b) {
        RingElement r(b.ring);
        for (size_t c = 0; c < b.comps.size(); ++c) {
            const SingleRing& s = b.ring->comps[c];
            if (b.comps[c].empty()) return std::nullopt;
            if (b.comps[c].size() != 1) return std::nullopt;
            const auto& [m, q] = *b.comps[c].begin();
            if (!s.monomial_is_unit(m) || !s.coeff.is_unit(q)) return std::nullopt;
            Monomial mi(m.size());
            for (size_t i = 0; i < m.size(); ++i) mi.exps[i] = -m.exps[i];
            r.comps[c][mi] = Rational(1) / q;
        }
        return r;
    }

    long long integer() {
        skip_ws();
        bool neg = false;
        if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
            neg = src_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            fail_input("ParseError", "expected integer exponent");
        long long v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            v = v * 10 + (src_[pos_++] - '0');
        return neg ? -v : v;
    }

    RingElement base() {
        skip_ws();
        if (pos_ >= src_.size()) fail_input("ParseError", "unexpected end of expression");
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            RingElement e = expr();
            if (!eat(')')) fail_input("ParseError", "missing ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '/'))
                ++pos_;
            return component_scalar(rat_from_string(std::string(src_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            std::string name(src_.substr(start, pos_ - start));
            const SingleRing& s = ring_->comps[comp_];
            int gi = s.gen_index(name);
            if (gi < 0) fail_input("UnknownGenerator", "'" + name + "' is not a generator");
            Monomial m(s.gens.size());
            m.exps[gi] = 1;
            return ring_monomial(ring_, comp_, m);
        }
        fail_input("ParseError", std::string("unexpected character '") + c + "'");
    }

    RingElement component_scalar(const Rational& q) {
        RingElement e(ring_);
        const SingleRing& s = ring_->comps[comp_];
        if (q != 0 && !s.zero_ring) e.comps[comp_][Monomial(s.gens.size())] = q;
        return e;
    }
};

} // namespace detail

/* Parse a polynomial expression in the generators of one component. */
inline RingElement parse_component_element(const GradedRing& r, size_t comp, const std::string& s) {
    return detail::ElementParser(r, comp, s).parse();
}

/* normal_form: parse a formal polynomial (single-component rings) and return
 * its reduced representative. */
inline RingElement normal_form(const GradedRing& r, const std::string& s) {
    if (r->comps.size() != 1)
        fail_input("ProductRingUnsupported", "normal_form parses single-component expressions");
    return parse_component_element(r, 0, s);
}

/* Structural monomial parser ("x^2*y"): no reduction against relations, so it
 * also serves for relation lists and D(f) inputs in quotients where the
 * monomial itself reduces to zero. */
inline Monomial parse_monomial_raw(const std::vector<Generator>& gens,
                                   const std::vector<char>& inverted, const std::string& str) {
    Monomial m(gens.size());
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < str.size() && std::isspace(static_cast<unsigned char>(str[pos]))) ++pos;
    };
    skip_ws();
    if (pos < str.size() && str[pos] == '1' && pos + 1 >= str.size()) return m;
    while (pos < str.size()) {
        skip_ws();
        size_t start = pos;
        while (pos < str.size() &&
               (std::isalnum(static_cast<unsigned char>(str[pos])) || str[pos] == '_'))
            ++pos;
        std::string name = str.substr(start, pos - start);
        int gi = -1;
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens[i].name == name) gi = static_cast<int>(i);
        if (gi < 0) fail_input("UnknownGenerator", "'" + name + "' is not a generator");
        long long e = 1;
        skip_ws();
        if (pos < str.size() && str[pos] == '^') {
            ++pos;
            skip_ws();
            bool neg = false;
            if (pos < str.size() && str[pos] == '-') { neg = true; ++pos; }
            long long v = 0;
            if (pos >= str.size() || !std::isdigit(static_cast<unsigned char>(str[pos])))
                fail_input("ParseError", "expected exponent in monomial '" + str + "'");
            while (pos < str.size() && std::isdigit(static_cast<unsigned char>(str[pos])))
                v = v * 10 + (str[pos++] - '0');
            e = neg ? -v : v;
        }
        if (e < 0 && !inverted[gi])
            fail_input("NegativeExponentOfNonInverted",
                       "negative exponent on non-inverted '" + name + "'");
        m.exps[gi] += e;
        skip_ws();
        if (pos < str.size()) {
            if (str[pos] != '*') fail_input("ParseError", "expected '*' in monomial '" + str + "'");
            ++pos;
        }
    }
    return m;
}

inline Monomial parse_monomial(const GradedRing& r, const std::string& str) {
    const SingleRing& s = single(r);
    return parse_monomial_raw(s.gens, s.inverted, str);
}

/* Parse per-component expressions for a (possibly product) ring. */
inline RingElement parse_element(const GradedRing& r, const std::vector<std::string>& comps) {
    if (comps.size() != r->comps.size())
        fail_input("ParseError", "component count mismatch in element");
    RingElement e(r);
    for (size_t c = 0; c < comps.size(); ++c) {
        RingElement part = parse_component_element(r, c, comps[c]);
        e.comps[c] = part.comps[c];
    }
    return e;
}

/******** Localization ********/

inline GradedRing make_zero_ring(GradingSpec grading, CoefficientRing coeff, std::string label = "0") {
    return make_single_ring(grading, std::move(coeff), {}, {Monomial(0)}, {}, std::move(label));
}

struct Localization {
    GradedRing ring;
    std::vector<std::string> killed; // generators forced to zero
};

inline Localization localize(const GradedRing& r, const std::string& gen_name) {
    const SingleRing& s = single(r);
    int gi = s.gen_index(gen_name);
    if (gi < 0) fail_input("UnknownGenerator", "'" + gen_name + "' is not a generator");
    if (s.inverted[gi]) fail_input("AlreadyInverted", "'" + gen_name + "' is already inverted");
    SingleRing t = s;
    t.inverted[gi] = 1;
    normalize_single(t);
    Localization out;
    auto data = std::make_shared<RingData>();
    data->grading = r->grading;
    data->product = false;
    data->comps.push_back(std::move(t));
    out.ring = data;
    for (const Generator& g : s.gens)
        if (out.ring->comps[0].gen_index(g.name) < 0) out.killed.push_back(g.name);
    return out;
}

/* Iterated localization. Inverting a generator that an earlier step forced to
 * zero collapses the ring (a zero divisor became a unit). */
inline GradedRing localize_many(const GradedRing& r, const std::vector<std::string>& names) {
    GradedRing cur = r;
    std::set<std::string> killed;
    for (const std::string& n : names) {
        const SingleRing& s = single(cur);
        int gi = s.gen_index(n);
        if (gi < 0) {
            if (killed.count(n))
                return make_zero_ring(cur->grading, s.coeff, cur->label + "[1/" + n + "=0]");
            fail_input("UnknownGenerator", "'" + n + "' is not a generator");
        }
        if (s.inverted[gi]) continue;
        Localization loc = localize(cur, n);
        killed.insert(loc.killed.begin(), loc.killed.end());
        cur = loc.ring;
    }
    return cur;
}

/******** Algebra maps ********/

/* A map of graded rings out of a single-component ring, given by generator
 * images. Images must match degree and weight (or vanish). */
struct AlgebraMap {
    GradedRing from;
    GradedRing to;
    std::vector<RingElement> images; // indexed by generators of `from`

    RingElement apply(const RingElement& x) const {
        if (!ring_equal(x.ring, from)) fail_input("RingMismatch", "element not over the source ring");
        const SingleRing& s = from->comps[0];
        RingElement acc(to);
        for (const auto& [m, q] : x.comps[0]) {
            RingElement t = ring_scalar(to, q);
            for (size_t i = 0; i < s.gens.size(); ++i) {
                long long e = m.exps[i];
                if (e == 0) continue;
                if (e > 0) {
                    for (long long k = 0; k < e; ++k) t = mul(t, images[i]);
                } else {
                    RingElement inv = invert(images[i]);
                    for (long long k = 0; k < -e; ++k) t = mul(t, inv);
                }
            }
            acc = add(acc, t);
        }
        return acc;
    }

private:
    static RingElement invert(const RingElement& u) {
        RingElement r(u.ring);
        for (size_t c = 0; c < u.comps.size(); ++c) {
            const SingleRing& s = u.ring->comps[c];
            if (u.comps[c].empty())
                fail_input("IllFormedAlgebraMap", "inverted generator maps to a non-unit");
            if (u.comps[c].size() != 1)
                fail_input("IllFormedAlgebraMap", "inverted generator maps to a non-monomial");
            const auto& [m, q] = *u.comps[c].begin();
            if (!s.monomial_is_unit(m) || !s.coeff.is_unit(q))
                fail_input("IllFormedAlgebraMap", "inverted generator maps to a non-unit");
            Monomial mi(m.size());
            for (size_t i = 0; i < m.size(); ++i) mi.exps[i] = -m.exps[i];
            r.comps[c][mi] = Rational(1) / q;
        }
        return r;
    }
};

inline AlgebraMap make_algebra_map(const GradedRing& from, const GradedRing& to,
                                   std::vector<RingElement> images) {
    const SingleRing& s = single(from);
    if (images.size() != s.gens.size())
        fail_input("IllFormedAlgebraMap", "one image per generator required");
    for (size_t i = 0; i < images.size(); ++i) {
        if (!ring_equal(images[i].ring, to))
            fail_input("IllFormedAlgebraMap", "image over the wrong ring");
        auto h = homogeneity(images[i]);
        if (!h) fail_input("IllFormedAlgebraMap", "generator image is not weight-homogeneous");
        if (!h->zero && (h->degree != from->grading.reduce(s.gens[i].degree) ||
                         h->weight != s.gens[i].weight))
            fail_input("IllFormedAlgebraMap", "generator image changes degree or weight");
    }
    return AlgebraMap{from, to, std::move(images)};
}

/* Canonical map into a localization / quotient-style ring: a generator goes
 * to its namesake if still present, else to zero. */
inline AlgebraMap canonical_map(const GradedRing& from, const GradedRing& to) {
    const SingleRing& s = single(from);
    std::vector<RingElement> images;
    for (const Generator& g : s.gens) {
        RingElement img(to);
        for (size_t c = 0; c < to->comps.size(); ++c) {
            const SingleRing& t = to->comps[c];
            int gi = t.gen_index(g.name);
            if (gi < 0) continue;
            if (to->grading.reduce(t.gens[gi].degree) != from->grading.reduce(g.degree) ||
                t.gens[gi].weight != g.weight)
                fail_input("IllFormedAlgebraMap", "generator '" + g.name + "' changes grading");
            Monomial m(t.gens.size());
            m.exps[gi] = 1;
            if (!t.monomial_is_zero(m)) img.comps[c][m] = 1;
        }
        images.push_back(std::move(img));
    }
    return make_algebra_map(from, to, std::move(images));
}

/******** Spectrum, connectedness, parity collapse ********/

struct MonomialPrime {
    std::vector<int> vars; // indices of non-inverted generators
    bool minimal = false;
};

inline std::vector<MonomialPrime> spec_monomial_primes(const GradedRing& r) {
    const SingleRing& s = single(r);
    std::vector<int> free_vars;
    for (size_t i = 0; i < s.gens.size(); ++i)
        if (!s.inverted[i]) free_vars.push_back(static_cast<int>(i));
    if (free_vars.size() > 20) fail_bound("BoundExceeded", "too many generators for spectrum enumeration");
    std::vector<MonomialPrime> out;
    if (s.zero_ring) return out;
    unsigned total = 1u << free_vars.size();
    for (unsigned mask = 0; mask < total; ++mask) {
        std::vector<char> in(s.gens.size(), 0);
        MonomialPrime p;
        for (size_t k = 0; k < free_vars.size(); ++k)
            if (mask & (1u << k)) {
                in[free_vars[k]] = 1;
                p.vars.push_back(free_vars[k]);
            }
        bool covers = true;
        for (const Monomial& rel : s.relations) {
            bool hit = false;
            for (size_t i = 0; i < s.gens.size() && !hit; ++i)
                if (rel.exps[i] > 0 && in[i]) hit = true;
            if (!hit) { covers = false; break; }
        }
        if (covers) out.push_back(std::move(p));
    }
    for (auto& p : out) {
        p.minimal = true;
        for (const auto& q : out) {
            if (q.vars.size() >= p.vars.size() || q.vars == p.vars) continue;
            if (std::includes(p.vars.begin(), p.vars.end(), q.vars.begin(), q.vars.end())) {
                p.minimal = false;
                break;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const MonomialPrime& a, const MonomialPrime& b) {
        if (a.vars.size() != b.vars.size()) return a.vars.size() < b.vars.size();
        return a.vars < b.vars;
    });
    return out;
}

/* f not in p, i.e. p lies in the basic open D(f). */
inline bool basic_open_contains(const GradedRing& r, const Monomial& m, const MonomialPrime& p) {
    single(r);
    for (int v : p.vars)
        if (m.exps[v] > 0) return false;
    return true;
}

inline bool basic_open_contains(const GradedRing& r, const RingElement& f, const MonomialPrime& p) {
    if (f.comps[0].size() != 1) fail_input("NonMonomial", "D(f) needs a monomial f");
    return basic_open_contains(r, f.comps[0].begin()->first, p);
}

struct Connectedness {
    bool connected = false;
    std::string reason;
};

inline Connectedness is_connected(const GradedRing& r) {
    int nonzero = 0;
    for (const SingleRing& c : r->comps)
        if (!c.zero_ring) ++nonzero;
    if (nonzero >= 2)
        return {false, "product ring with " + std::to_string(nonzero) +
                           " nonzero components has the idempotent (1,0,...)"};
    /* single monomial quotient over a connected coefficient ring: idempotents
     * have no positive-weight part (weight argument), so they lie in the
     * coefficient ring, which has only 0 and 1 */
    return {true, "weight-0 slice is the coefficient ring; subrings of Q have no nontrivial idempotents"};
}

inline bool two_is_unit(const GradedRing& r) {
    for (const SingleRing& c : r->comps)
        if (!c.zero_ring && !c.coeff.two_is_unit()) return false;
    return true;
}

} // namespace gha
