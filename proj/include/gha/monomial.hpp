#pragma once

#include "gha/numeric.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace gha {

/* Exponent vector over a fixed generator list. Negative exponents are only
 * legal on inverted generators; the ring layer enforces that. */
struct Monomial {
    std::vector<long long> exps;

    Monomial() = default;
    explicit Monomial(size_t n) : exps(n, 0) {}
    explicit Monomial(std::vector<long long> e) : exps(std::move(e)) {}

    size_t size() const { return exps.size(); }
    bool is_one() const {
        return std::all_of(exps.begin(), exps.end(), [](long long e) { return e == 0; });
    }

    bool operator==(const Monomial& o) const { return exps == o.exps; }
    bool operator<(const Monomial& o) const { return exps < o.exps; }

    Monomial times(const Monomial& o) const {
        Monomial r(*this);
        for (size_t i = 0; i < exps.size(); ++i) r.exps[i] += o.exps[i];
        return r;
    }

    /* componentwise: this_i >= o_i on the support of o (o has no negative exponents) */
    bool divisible_by(const Monomial& o) const {
        for (size_t i = 0; i < exps.size(); ++i)
            if (o.exps[i] > 0 && exps[i] < o.exps[i]) return false;
        return true;
    }

    Monomial divide(const Monomial& o) const {
        Monomial r(*this);
        for (size_t i = 0; i < exps.size(); ++i) r.exps[i] -= o.exps[i];
        return r;
    }

    Monomial lcm_with(const Monomial& o) const {
        Monomial r(*this);
        for (size_t i = 0; i < exps.size(); ++i) r.exps[i] = std::max(exps[i], o.exps[i]);
        return r;
    }

    Monomial gcd_with(const Monomial& o) const {
        Monomial r(*this);
        for (size_t i = 0; i < exps.size(); ++i) r.exps[i] = std::min(exps[i], o.exps[i]);
        return r;
    }
};

} // namespace gha
