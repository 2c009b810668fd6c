#pragma once

#include "gha/numeric.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace gha {

/* Exact coefficient rings: Q, Z localized at a finite multiplicative set
 * (stored by the primes dividing it), and Z localized at a prime p. */
enum class CoeffKind { Rationals, ZInverted, ZLocalAt };

class CoefficientRing {
public:
    CoefficientRing() : kind_(CoeffKind::Rationals) {}

    static CoefficientRing rationals() { return CoefficientRing(); }

    static CoefficientRing z_inverted(const std::vector<Int>& mult_set) {
        CoefficientRing c;
        c.kind_ = CoeffKind::ZInverted;
        for (const Int& s : mult_set) {
            Int v = boost::multiprecision::abs(s);
            if (v <= 1) {
                if (v == 0) fail_input("ParseError", "0 in a multiplicative set");
                continue;
            }
            for (const Int& p : factor(v)) c.inverted_primes_.insert(p);
        }
        return c;
    }

    static CoefficientRing z_local_at(const Int& p) {
        if (p < 2 || !is_prime(p)) fail_input("ParseError", "Z_(p) needs a prime p");
        CoefficientRing c;
        c.kind_ = CoeffKind::ZLocalAt;
        c.p_ = p;
        return c;
    }

    CoeffKind kind() const { return kind_; }
    const Int& local_prime() const { return p_; }
    const std::set<Int>& inverted_primes() const { return inverted_primes_; }

    bool is_field() const { return kind_ == CoeffKind::Rationals; }
    bool is_local() const { return kind_ != CoeffKind::ZInverted; }

    /* Membership of a rational number in the subring. */
    bool contains(const Rational& q) const {
        switch (kind_) {
            case CoeffKind::Rationals: return true;
            case CoeffKind::ZInverted: return smooth(den(q));
            case CoeffKind::ZLocalAt: return den(q) % p_ != 0;
        }
        return false;
    }

    bool is_unit(const Rational& q) const {
        if (q == 0) return false;
        switch (kind_) {
            case CoeffKind::Rationals: return true;
            case CoeffKind::ZInverted: return smooth(num(q)) && smooth(den(q));
            case CoeffKind::ZLocalAt: return num(q) % p_ != 0 && den(q) % p_ != 0;
        }
        return false;
    }

    bool is_unit_int(const Int& n) const { return is_unit(Rational(n)); }

    bool two_is_unit() const { return is_unit(Rational(2)); }

    std::string describe() const {
        switch (kind_) {
            case CoeffKind::Rationals: return "Q";
            case CoeffKind::ZInverted: {
                std::string s = "Z[1/{";
                bool first = true;
                for (const Int& p : inverted_primes_) {
                    if (!first) s += ",";
                    s += p.str();
                    first = false;
                }
                return s + "}]";
            }
            case CoeffKind::ZLocalAt: return "Z_(" + p_.str() + ")";
        }
        return "?";
    }

    bool operator==(const CoefficientRing& o) const {
        return kind_ == o.kind_ && p_ == o.p_ && inverted_primes_ == o.inverted_primes_;
    }

private:
    CoeffKind kind_;
    Int p_ = 0;
    std::set<Int> inverted_primes_;

    bool smooth(Int n) const {
        n = boost::multiprecision::abs(n);
        for (const Int& p : inverted_primes_)
            while (n % p == 0) n /= p;
        return n == 1;
    }

    static bool is_prime(const Int& n) {
        if (n < 2) return false;
        for (Int d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    static std::vector<Int> factor(Int n) {
        std::vector<Int> ps;
        for (Int d = 2; d * d <= n; ++d) {
            if (n % d == 0) {
                ps.push_back(d);
                while (n % d == 0) n /= d;
            }
        }
        if (n > 1) ps.push_back(n);
        return ps;
    }
};

} // namespace gha
