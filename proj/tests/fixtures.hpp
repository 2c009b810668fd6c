#pragma once

#include "gha/ring.hpp"
#include "gha/site.hpp"

#include <string>
#include <vector>

/* Shared ring builders for the test suites. */
namespace fx {

using namespace gha;

inline Monomial mono(const GradedRing& r, const std::string& expr) {
    RingElement e = parse_component_element(r, 0, expr);
    if (e.comps[0].size() != 1) fail_input("NonMonomial", "expected a monomial");
    return e.comps[0].begin()->first;
}

/* R = Q[x,y]/(xy), degree-0 generators of weight 1 */
inline GradedRing R_xy() {
    auto tmp = make_single_ring(GradingSpec::z_koszul(), CoefficientRing::rationals(),
                                {{"x", 0, 1}, {"y", 0, 1}}, {}, {}, "R");
    Monomial xy(2);
    xy.exps[0] = 1;
    xy.exps[1] = 1;
    return make_single_ring(GradingSpec::z_koszul(), CoefficientRing::rationals(),
                            {{"x", 0, 1}, {"y", 0, 1}}, {xy}, {}, "R");
}

inline GradedRing Q_x() {
    return make_single_ring(GradingSpec::z_koszul(), CoefficientRing::rationals(),
                            {{"x", 0, 1}}, {}, {}, "Q[x]");
}

inline GradedRing Q_xy() {
    return make_single_ring(GradingSpec::z_koszul(), CoefficientRing::rationals(),
                            {{"x", 0, 1}, {"y", 0, 1}}, {}, {}, "Q[x,y]");
}

inline GradedRing R_x() { return localize(R_xy(), "x").ring; }
inline GradedRing R_y() { return localize(R_xy(), "y").ring; }

inline GradedRing Rx_times_Ry() { return make_product_ring({R_x(), R_y()}, "R_x x R_y"); }

/* A = R/y = Q[x] presented as a quotient of R (keeps the generator list of R) */
inline GradedRing R_mod_y() {
    Monomial xy(2);
    xy.exps[0] = 1; xy.exps[1] = 1;
    Monomial y(2);
    y.exps[1] = 1;
    return make_single_ring(GradingSpec::z_koszul(), CoefficientRing::rationals(),
                            {{"x", 0, 1}, {"y", 0, 1}}, {xy, y}, {}, "A");
}

} // namespace fx
