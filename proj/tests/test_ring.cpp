#include "fixtures.hpp"
#include "gha/ring.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace gha;

TEST_CASE("normal form kills relation multiples") {
    auto R = fx::R_xy();
    CHECK(normal_form(R, "x*y").is_zero());
    CHECK(element_to_string(normal_form(R, "(x+y)^2")) == "x^2 + y^2");
    auto Qx = fx::Q_x();
    CHECK(element_to_string(normal_form(Qx, "x^2 + 0*x")) == "x^2");
}

TEST_CASE("normal form oracle: term-by-term divisibility") {
    /* (x+y)^2 expanded formally, then each monomial tested for divisibility
     * by the relation xy — independent of the reduction path */
    auto R = fx::R_xy();
    Monomial xy = parse_monomial(R, "x*y");
    struct Term { long long ex, ey; Rational c; };
    std::vector<Term> expansion = {{2, 0, 1}, {1, 1, 2}, {0, 2, 1}};
    RingElement expect(R);
    for (const auto& t : expansion) {
        Monomial m(2);
        m.exps[0] = t.ex;
        m.exps[1] = t.ey;
        if (!m.divisible_by(xy)) expect.comps[0][m] += t.c;
    }
    CHECK(equal(normal_form(R, "(x+y)^2"), expect));
}

TEST_CASE("normal form is a ring homomorphism on random polynomials") {
    auto R = make_single_ring(GradingSpec::z_koszul(), CoefficientRing::rationals(),
                              {{"a", 0, 1}, {"b", 0, 1}, {"c", 0, 2}},
                              {Monomial{{1, 2, 0}}, Monomial{{0, 0, 3}}});
    std::mt19937 rng(7);
    auto random_elem = [&]() {
        RingElement e(R);
        for (int t = 0; t < 4; ++t) {
            Monomial m(3);
            m.exps[0] = rng() % 3;
            m.exps[1] = rng() % 3;
            m.exps[2] = rng() % 2;
            Rational c = static_cast<int>(rng() % 7) - 3;
            if (c == 0 || R->comps[0].monomial_is_zero(m)) continue;
            auto it = e.comps[0].find(m);
            if (it == e.comps[0].end()) e.comps[0][m] = c;
            else {
                it->second += c;
                if (it->second == 0) e.comps[0].erase(it);
            }
        }
        return e;
    };
    for (int trial = 0; trial < 40; ++trial) {
        RingElement a = random_elem(), b = random_elem();
        CHECK(equal(mul(a, b), mul(b, a)));
        CHECK(equal(mul(add(a, b), a), add(mul(a, a), mul(b, a))));
    }
}

TEST_CASE("localize forces kills") {
    auto R = fx::R_xy();
    auto loc = localize(R, "x");
    CHECK(loc.killed == std::vector<std::string>{"y"});
    const SingleRing& s = loc.ring->comps[0];
    CHECK(s.gens.size() == 1);
    CHECK(s.gens[0].name == "x");
    CHECK(s.inverted[0] == 1);
    CHECK(s.relations.empty());

    auto Qx = fx::Q_x();
    auto lq = localize(Qx, "x");
    CHECK(lq.killed.empty());
    CHECK(lq.ring->comps[0].inverted[0] == 1);
    CHECK_THROWS_AS(localize(lq.ring, "x"), Error); // AlreadyInverted

    /* localize(Q[x,y,z]/(xyz), z) = Q[x,y,z,1/z]/(xy) */
    Monomial xyz(3);
    xyz.exps = {1, 1, 1};
    auto R3 = make_single_ring(GradingSpec::z_koszul(), CoefficientRing::rationals(),
                               {{"x", 0, 1}, {"y", 0, 1}, {"z", 0, 1}}, {xyz});
    auto lz = localize(R3, "z");
    CHECK(lz.killed.empty());
    REQUIRE(lz.ring->comps[0].relations.size() == 1);
    CHECK(lz.ring->comps[0].monomial_to_string(lz.ring->comps[0].relations[0]) == "x*y");
    /* universal-property oracle: xy maps to zero under the canonical map */
    auto cmap = canonical_map(R3, lz.ring);
    CHECK(cmap.apply(normal_form(R3, "x*y")).is_zero());
}

TEST_CASE("localization composites commute") {
    /* structural equality of (B_g)_h and (B_h)_g */
    Monomial xyz(3);
    xyz.exps = {1, 1, 1};
    auto R3 = make_single_ring(GradingSpec::z_koszul(), CoefficientRing::rationals(),
                               {{"x", 0, 1}, {"y", 0, 1}, {"z", 0, 1}}, {xyz});
    auto a = localize_many(R3, {"x", "z"});
    auto b = localize_many(R3, {"z", "x"});
    CHECK(ring_equal(a, b));
    CHECK(a->comps[0].gens.size() == 2); // y killed by the stripped relation

    /* inverting a generator killed earlier collapses the ring, either order */
    auto R = fx::R_xy();
    auto za = localize_many(R, {"x", "y"});
    auto zb = localize_many(R, {"y", "x"});
    CHECK(za->comps[0].zero_ring);
    CHECK(zb->comps[0].zero_ring);

    /* slice-level comparison where both composites stay in the finite class */
    Monomial x2y2(2);
    x2y2.exps = {2, 2};
    auto B = make_single_ring(GradingSpec::z_koszul(), CoefficientRing::rationals(),
                              {{"x", 0, 1}, {"y", 0, 1}}, {x2y2});
    auto lx = localize(B, "x").ring; // Q[x,1/x,y]/(y^2)
    for (long long w = -4; w <= 8; ++w) {
        auto ms = lx->comps[0].monomials_of_weight(w);
        CHECK(ms.size() == 2); // x^w and x^(w-1) y
    }
}

TEST_CASE("connectedness") {
    CHECK(is_connected(fx::R_xy()).connected);
    CHECK(is_connected(fx::Q_x()).connected);
    CHECK_FALSE(is_connected(fx::Rx_times_Ry()).connected);
}

TEST_CASE("monomial spectrum") {
    auto R = fx::R_xy();
    auto primes = spec_monomial_primes(R);
    /* subsets containing x or y: {x},{y},{x,y}; minimal: (x),(y) */
    REQUIRE(primes.size() == 3);
    CHECK(primes[0].vars == std::vector<int>{0});
    CHECK(primes[0].minimal);
    CHECK(primes[1].vars == std::vector<int>{1});
    CHECK(primes[1].minimal);
    CHECK(primes[2].vars == std::vector<int>{0, 1});
    CHECK_FALSE(primes[2].minimal);

    /* oracle: independent divisibility re-check of every returned subset */
    for (const auto& p : primes) {
        for (const Monomial& rel : R->comps[0].relations) {
            bool hit = false;
            for (int v : p.vars) hit = hit || rel.exps[v] > 0;
            CHECK(hit);
        }
    }

    auto qx = spec_monomial_primes(fx::Q_x());
    REQUIRE(qx.size() == 2);
    CHECK(qx[0].vars.empty()); // (0)
    CHECK(qx[1].vars == std::vector<int>{0});

    auto rx = spec_monomial_primes(fx::R_x());
    REQUIRE(rx.size() == 1);
    CHECK(rx[0].vars.empty());

    CHECK_THROWS_AS(spec_monomial_primes(fx::Rx_times_Ry()), Error);
}

TEST_CASE("basic opens") {
    auto R = fx::R_xy();
    auto primes = spec_monomial_primes(R);
    const auto& px = primes[0]; // (x)
    const auto& py = primes[1]; // (y)
    CHECK(basic_open_contains(R, normal_form(R, "x"), py));
    CHECK_FALSE(basic_open_contains(R, normal_form(R, "x"), px));
    CHECK_FALSE(basic_open_contains(R, parse_monomial(R, "x^2*y^3"), py));
    CHECK_THROWS_AS(basic_open_contains(R, normal_form(R, "x+y"), py), Error);
}

TEST_CASE("spec covering by unit-combination opens") {
    /* f generating the unit ideal: over R_x the unit monomial x; every
     * minimal prime of R_x lies in D(x) */
    auto Rx = fx::R_x();
    auto primes = spec_monomial_primes(Rx);
    auto f = normal_form(Rx, "x");
    for (const auto& p : primes)
        if (p.minimal) CHECK(basic_open_contains(Rx, f, p));
}

TEST_CASE("parity pushforward") {
    GradingSpec z = GradingSpec::z_koszul();
    CHECK(parity_pushforward(z, {0, 3, 4}) == std::vector<Degree>{0, 1, 0});
    CHECK(parity_pushforward(z, {}).empty());
    GradingSpec z2 = GradingSpec::z2();
    CHECK(parity_pushforward(z2, {1, 1}) == std::vector<Degree>{1, 1});
    CHECK_THROWS_AS(parity_pushforward(GradingSpec::z_trivial(), {1}), Error);

    /* monoidal on degree multisets: pushforward of a sum-multiset equals the
     * Z/2 sum of pushforwards */
    std::mt19937 rng(3);
    for (int t = 0; t < 20; ++t) {
        std::vector<Degree> a, b;
        for (int i = 0; i < 3; ++i) {
            a.push_back(static_cast<Degree>(rng() % 7) - 3);
            b.push_back(static_cast<Degree>(rng() % 7) - 3);
        }
        std::vector<Degree> sums;
        for (Degree da : a)
            for (Degree db : b) sums.push_back(da + db);
        auto lhs = parity_pushforward(z, sums);
        std::vector<Degree> rhs;
        auto pa = parity_pushforward(z, a), pb = parity_pushforward(z, b);
        for (Degree da : pa)
            for (Degree db : pb) rhs.push_back((da + db) % 2);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("grading spec is a homomorphism") {
    GradingSpec z = GradingSpec::z_koszul();
    for (Degree a = -4; a <= 4; ++a)
        for (Degree b = -4; b <= 4; ++b) CHECK(z.sign(a + b) == z.sign(a) * z.sign(b));
}

TEST_CASE("ring slices") {
    auto R = fx::R_xy();
    auto w2 = R->comps[0].monomials_of_weight(2);
    REQUIRE(w2.size() == 2); // x^2, y^2
    CHECK(R->comps[0].monomial_to_string(w2[0]) == "y^2");
    CHECK(R->comps[0].monomial_to_string(w2[1]) == "x^2");

    auto Rx = fx::R_x();
    auto wm1 = Rx->comps[0].monomials_of_weight(-1);
    REQUIRE(wm1.size() == 1);
    CHECK(Rx->comps[0].monomial_to_string(wm1[0]) == "x^-1");

    /* Q[x,1/x,y]/(y^2): one inverted generator, nilpotent rest */
    Monomial y2(2);
    y2.exps = {0, 2};
    auto L = make_single_ring(GradingSpec::z_koszul(), CoefficientRing::rationals(),
                              {{"x", 0, 1}, {"y", 0, 1}}, {y2}, {"x"});
    auto w0 = L->comps[0].monomials_of_weight(0);
    CHECK(w0.size() == 2); // 1 and x^-1 y

    /* Q[x,1/x,y] free: infinite slices rejected */
    auto Linf = make_single_ring(GradingSpec::z_koszul(), CoefficientRing::rationals(),
                                 {{"x", 0, 1}, {"y", 0, 1}}, {}, {"x"});
    CHECK_FALSE(Linf->comps[0].has_finite_slices());
    CHECK_THROWS_AS(Linf->comps[0].monomials_of_weight(0), Error);
}

TEST_CASE("odd generators square to zero") {
    auto E = make_single_ring(GradingSpec::z_koszul(), CoefficientRing::rationals(),
                              {{"e", 1, 1}, {"f", 1, 1}}, {});
    CHECK(normal_form(E, "e*e").is_zero());
    CHECK(element_to_string(normal_form(E, "e*f + f*e")) == "0");
    CHECK(element_to_string(normal_form(E, "e*f")) == "e*f");
    CHECK(element_to_string(normal_form(E, "f*e")) == "-e*f");
}

TEST_CASE("algebra maps validate grading") {
    auto R = fx::R_xy();
    auto A = fx::R_mod_y();
    auto m = canonical_map(R, A);
    CHECK(m.apply(normal_form(R, "y")).is_zero());
    CHECK(element_to_string(m.apply(normal_form(R, "x^2+y^2"))) == "x^2");
    /* x maps to an element of the wrong weight */
    CHECK_THROWS_AS(make_algebra_map(R, A, {normal_form(A, "x^2"), normal_form(A, "y")}), Error);
}
