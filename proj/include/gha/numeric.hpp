#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gha {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/* Error taxonomy. Codes follow the operation contracts; the category decides
 * the CLI exit code (input misuse vs. a mathematical finding). */
enum class ErrorKind { Input, Math, Bound };

struct Error : std::runtime_error {
    std::string code;
    ErrorKind kind;
    Error(std::string c, ErrorKind k, const std::string& msg)
        : std::runtime_error(c + ": " + msg), code(std::move(c)), kind(k) {}
};

[[noreturn]] inline void fail_input(const std::string& code, const std::string& msg) {
    throw Error(code, ErrorKind::Input, msg);
}
[[noreturn]] inline void fail_math(const std::string& code, const std::string& msg) {
    throw Error(code, ErrorKind::Math, msg);
}
[[noreturn]] inline void fail_bound(const std::string& code, const std::string& msg) {
    throw Error(code, ErrorKind::Bound, msg);
}

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

/* "num/den" with the slash omitted for integers; used everywhere rationals
 * are serialized so reports stay byte-stable. */
inline std::string rat_to_string(const Rational& q) {
    if (den(q) == 1) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

inline Rational rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int n(s.substr(0, slash));
        Int d(s.substr(slash + 1));
        if (d == 0) fail_input("ParseError", "zero denominator in rational '" + s + "'");
        return Rational(n, d);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail_input("ParseError", "bad rational literal '" + s + "'");
    }
}

inline Int int_gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(Int a, Int b) { return boost::multiprecision::lcm(a, b); }

} // namespace gha
