#pragma once

#include "gha/numeric.hpp"

#include <string>
#include <vector>

namespace gha {

using Degree = long long;

/* The grading pair: the degree group (Z or Z/2) together with the parity
 * homomorphism into {+1,-1}. For Z the parity is either (-1)^n or trivial;
 * for Z/2 it is the canonical isomorphism. */
enum class DegreeGroup { Z, Z2 };
enum class ParityRule { Koszul, Trivial, Alpha };

struct GradingSpec {
    DegreeGroup group = DegreeGroup::Z;
    ParityRule parity = ParityRule::Koszul;

    static GradingSpec z_koszul() { return {DegreeGroup::Z, ParityRule::Koszul}; }
    static GradingSpec z_trivial() { return {DegreeGroup::Z, ParityRule::Trivial}; }
    static GradingSpec z2() { return {DegreeGroup::Z2, ParityRule::Alpha}; }

    Degree reduce(Degree d) const {
        if (group == DegreeGroup::Z2) return ((d % 2) + 2) % 2;
        return d;
    }

    /* epsilon(d) as +1 / -1 */
    int sign(Degree d) const {
        if (parity == ParityRule::Trivial) return 1;
        return (((d % 2) + 2) % 2 == 0) ? 1 : -1;
    }

    bool odd(Degree d) const { return sign(d) < 0; }
    bool surjective_parity() const { return parity != ParityRule::Trivial; }

    bool operator==(const GradingSpec& o) const {
        return group == o.group && parity == o.parity;
    }
};

/* Push a multiset of G-degrees forward along alpha^{-1} o epsilon to Z/2.
 * Requires epsilon surjective. */
inline std::vector<Degree> parity_pushforward(const GradingSpec& g, const std::vector<Degree>& degrees) {
    if (!g.surjective_parity())
        fail_math("TrivialParity", "parity pushforward needs a surjective parity homomorphism");
    std::vector<Degree> out;
    out.reserve(degrees.size());
    for (Degree d : degrees) out.push_back(g.odd(d) ? 1 : 0);
    return out;
}

} // namespace gha
