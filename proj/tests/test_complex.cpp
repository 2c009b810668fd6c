#include "fixtures.hpp"
#include "gha/complex.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace gha;

namespace {

/* 0 -> R --m--> R -> 0 in degrees 1, 0 */
ChainComplex two_term(const GradedRing& r, const std::string& entry, long long wt) {
    ChainComplex x;
    x.ring = r;
    x.terms[0] = unit_module(r);
    x.terms[1] = FreeGradedModule{r, {Shift{0, wt}}};
    GradedMatrix d(x.terms[1], x.terms[0]);
    d.at(0, 0) = normal_form(r, entry);
    x.diffs[1] = d;
    return x;
}

/* periodic ... -> R -x-> R -y-> R -> 0 with `len` differentials */
ChainComplex periodic_xy(const GradedRing& r, int len) {
    ChainComplex x;
    x.ring = r;
    x.terms[0] = unit_module(r);
    for (int n = 1; n <= len; ++n) {
        x.terms[n] = FreeGradedModule{r, {Shift{0, n}}};
        GradedMatrix d(x.terms[n], x.terms[n - 1]);
        d.at(0, 0) = normal_form(r, n % 2 == 1 ? "y" : "x");
        x.diffs[n] = d;
    }
    return x;
}

std::vector<int> slice_dims(const HomologyEntry& h, long long from, long long to) {
    std::vector<int> out;
    for (long long w = from; w <= to; ++w) out.push_back(h.at_weight(w).free_rank);
    return out;
}

} // namespace

TEST_CASE("validate catches d squared") {
    auto R = fx::R_xy();
    CHECK_NOTHROW(validate(two_term(R, "y", 1)));

    auto Qx = fx::Q_x();
    ChainComplex bad;
    bad.ring = Qx;
    bad.terms[0] = unit_module(Qx);
    bad.terms[1] = FreeGradedModule{Qx, {Shift{0, 1}}};
    bad.terms[2] = FreeGradedModule{Qx, {Shift{0, 2}}};
    GradedMatrix d1(bad.terms[1], bad.terms[0]), d2(bad.terms[2], bad.terms[1]);
    d1.at(0, 0) = normal_form(Qx, "x");
    d2.at(0, 0) = normal_form(Qx, "x");
    bad.diffs[1] = d1;
    bad.diffs[2] = d2;
    CHECK_THROWS_MATCHES(validate(bad), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code == "DSquaredNonzero";
                         }));

    /* the periodic complex over R validates because xy = 0 */
    CHECK_NOTHROW(validate(periodic_xy(fx::R_xy(), 2)));
}

TEST_CASE("homology of the unit complex") {
    auto R = fx::R_xy();
    auto u = unit_complex(R);
    auto h0 = homology(u, 0, 6);
    CHECK(slice_dims(h0, 0, 6) == std::vector<int>{1, 2, 2, 2, 2, 2, 2});
    CHECK(homology(u, 1, 6).all_zero());
    CHECK(homology(u, -1, 6).all_zero());

    auto Qx = fx::Q_x();
    auto hx = homology(unit_complex(Qx), 0, 5);
    CHECK(slice_dims(hx, 0, 5) == std::vector<int>{1, 1, 1, 1, 1, 1});
}

TEST_CASE("shift compatibility of homology") {
    auto R = fx::R_xy();
    auto X = two_term(R, "y", 1);
    for (int k = -2; k <= 2; ++k) {
        auto Xs = shift_complex(X, k);
        validate(Xs);
        for (int n = -2; n <= 3; ++n) {
            auto a = homology(Xs, n, 5);
            auto b = homology(X, n - k, 5);
            for (long long w = 0; w <= 5; ++w)
                CHECK(a.at_weight(w).free_rank == b.at_weight(w).free_rank);
        }
    }
}

TEST_CASE("dual complex is an involution up to sign") {
    auto R = fx::R_xy();
    auto X = periodic_xy(R, 2);
    auto D = dual_complex(X);
    validate(D);
    auto DD = dual_complex(D);
    validate(DD);
    for (int n = X.lo(); n <= X.hi(); ++n) CHECK(module_equal(DD.term(n), X.term(n)));
    for (const auto& [n, d] : X.diffs) {
        GradedMatrix dd = DD.diff(n);
        bool same = matrix_equal(dd, d);
        bool neg = matrix_equal(dd, scale_matrix(d, Rational(-1)));
        CHECK((same || neg));
    }
    for (int n = -3; n <= 3; ++n) {
        auto a = homology(DD, n, 5);
        auto b = homology(X, n, 5);
        for (long long w = a.w_lo; w <= 5; ++w)
            CHECK(a.at_weight(w).free_rank == b.at_weight(w).free_rank);
    }
}

TEST_CASE("cone of the identity is acyclic") {
    auto R = fx::R_xy();
    std::vector<ChainComplex> catalog = {unit_complex(R), two_term(R, "y", 1), periodic_xy(R, 3)};
    for (const auto& X : catalog) {
        auto c = cone(identity_chain_map(X));
        validate(c);
        for (int n = c.lo() - 1; n <= c.hi() + 1; ++n) CHECK(homology(c, n, 6).all_zero());
    }
}

TEST_CASE("fiber of (x y) computes the kernel") {
    auto R = fx::R_xy();
    ChainComplex src = module_in_degree(FreeGradedModule{R, {Shift{0, 1}, Shift{0, 1}}}, 0);
    ChainComplex tgt = unit_complex(R);
    ChainMap p{src, tgt, {}};
    GradedMatrix c0(src.term(0), tgt.term(0));
    c0.at(0, 0) = normal_form(R, "x");
    c0.at(0, 1) = normal_form(R, "y");
    p.components[0] = c0;
    validate(p);

    auto F = fiber(p);
    validate(F);
    auto h0 = homology(F, 0, 6);
    /* oracle: slice kernels of (x y) computed directly */
    for (long long w = 0; w <= 6; ++w) {
        QMat sl = matrix_slice(c0, w);
        int ker = sl.cols - rank_q(sl);
        CHECK(h0.at_weight(w).free_rank == ker);
    }
}

TEST_CASE("cone euler characteristic per slice") {
    auto R = fx::R_xy();
    auto X = two_term(R, "y", 1);
    ChainMap f{X, X, {}};
    GradedMatrix c0(X.term(0), X.term(0)), c1(X.term(1), X.term(1));
    c0.at(0, 0) = normal_form(R, "x^2");
    c1.at(0, 0) = normal_form(R, "x^2");
    /* x^2 has weight 2: as a self-map it needs matching shifts, so scale to a
     * genuine chain map: use multiplication by a scalar instead */
    c0.at(0, 0) = ring_scalar(R, 3);
    c1.at(0, 0) = ring_scalar(R, 3);
    f.components[0] = c0;
    f.components[1] = c1;
    validate(f);
    auto C = cone(f);
    validate(C);
    for (long long w = 0; w <= 5; ++w) {
        long long chiX = 0, chiY = 0, chiC = 0;
        for (int n = -3; n <= 4; ++n) {
            int sign = (n % 2 == 0) ? 1 : -1;
            chiX += sign * homology(X, n, 5).at_weight(w).free_rank;
            chiY += sign * homology(X, n, 5).at_weight(w).free_rank;
            chiC += sign * homology(C, n, 5).at_weight(w).free_rank;
        }
        CHECK(chiC == chiY - chiX);
    }
}

TEST_CASE("tensor with the unit is the identity") {
    auto R = fx::R_xy();
    auto X = periodic_xy(R, 2);
    auto T = tensor_complex(X, unit_complex(R));
    validate(T);
    for (int n = X.lo(); n <= X.hi(); ++n) {
        CHECK(module_equal(T.term(n), X.term(n)));
        CHECK(matrix_equal(T.diff(n), X.diff(n)));
    }
}

TEST_CASE("koszul-type tensor: K(x) tensor K(y)") {
    auto R = fx::R_xy();
    auto Kx = two_term(R, "x", 1), Ky = two_term(R, "y", 1);
    auto T = tensor_complex(Kx, Ky);
    validate(T); // d^2 = 0 with the sign rule
    auto h0 = homology(T, 0, 6);
    CHECK(slice_dims(h0, 0, 6) == std::vector<int>{1, 0, 0, 0, 0, 0, 0}); // R/(x,y) = Q
}

TEST_CASE("tensor d-squared vanishes on random pairs") {
    auto R = fx::R_xy();
    std::vector<ChainComplex> catalog = {two_term(R, "x", 1), two_term(R, "y", 1),
                                         periodic_xy(R, 2), shift_complex(two_term(R, "y", 1), 1)};
    for (const auto& A : catalog)
        for (const auto& B : catalog) CHECK_NOTHROW(validate(tensor_complex(A, B)));
}

TEST_CASE("base change of complexes") {
    auto R = fx::R_xy();
    auto A = fx::R_mod_y();
    auto Ky = two_term(R, "y", 1);
    auto q = canonical_map(R, A);
    auto KA = base_change(q, Ky);
    validate(KA);
    CHECK(KA.diffs.empty()); // y maps to 0, the zero differential is dropped
    auto h0 = homology(KA, 0, 5);
    auto h1 = homology(KA, 1, 5);
    CHECK(slice_dims(h0, 0, 5) == std::vector<int>{1, 1, 1, 1, 1, 1});
    CHECK(slice_dims(h1, 0, 5) == std::vector<int>{0, 1, 1, 1, 1, 1}); // A shifted by weight 1

    auto idm = canonical_map(R, R);
    auto same = base_change(idm, Ky);
    CHECK(matrix_equal(same.diff(1), Ky.diff(1)));

    auto P = fx::Rx_times_Ry();
    auto qp = canonical_map(R, P);
    auto KP = base_change(qp, Ky);
    validate(KP);
    /* differential is (0, y) componentwise */
    GradedMatrix dKP = KP.diff(1);
    CHECK(dKP.at(0, 0).comps[0].empty());
    CHECK(element_to_string(dKP.at(0, 0)) == "(0, y)");
}
