#include "svv/rng.hpp"
#include "svv/schatten.hpp"

#include <doctest.h>

using namespace svv;

TEST_CASE("schatten norm closed forms") {
    for (double p : {1.0, 1.5, 2.0, 4.0}) {
        CHECK(schatten_norm(identity(5), SchattenOrder::finite(p)) ==
              doctest::Approx(std::pow(5.0, 1.0 / p)));
    }
    CHECK(schatten_norm(identity(5), SchattenOrder::infinity()) == doctest::Approx(1.0));

    // rank-1 projector has norm 1 for every p
    Rng rng(2);
    CVec v(4);
    for (int i = 0; i < 4; ++i) v[i] = rng.cgaussian();
    v /= v.norm();
    const CMat proj = v * v.adjoint();
    for (double p : {1.0, 2.0, 7.0})
        CHECK(schatten_norm(proj, SchattenOrder::finite(p)) == doctest::Approx(1.0));
    CHECK(schatten_norm(proj, SchattenOrder::infinity()) == doctest::Approx(1.0));

    CMat d34 = CMat::Zero(2, 2);
    d34(0, 0) = 3.0;
    d34(1, 1) = 4.0;
    CHECK(schatten_norm(d34, SchattenOrder::finite(2.0)) == doctest::Approx(5.0));

    CHECK_THROWS_AS(SchattenOrder::finite(0.5), InvalidInput);
}

TEST_CASE("holder inequality") {
    // equality witness: x = y = I_2, p = q = 2 -> r = 1, both sides 2
    CHECK(holder_check(identity(2), identity(2), SchattenOrder::finite(2.0),
                       SchattenOrder::finite(2.0)) == doctest::Approx(0.0));

    Rng rng(10);
    for (int t = 0; t < 50; ++t) {
        const CMat x = rng.ginibre(4, 4), y = rng.ginibre(4, 4);
        const double p = 1.0 + 4.0 * rng.uniform();
        const double q = 1.0 + 4.0 * rng.uniform();
        REQUIRE(holder_check(x, y, SchattenOrder::finite(p), SchattenOrder::finite(q)) >=
                -1e-9 * (schatten_norm(x, SchattenOrder::finite(p)) *
                         schatten_norm(y, SchattenOrder::finite(q))));
    }

    // diagonal pair: classical Holder on the diagonal entries
    for (int t = 0; t < 20; ++t) {
        RVec a(3), b(3);
        for (int i = 0; i < 3; ++i) {
            a[i] = rng.uniform(0.1, 2.0);
            b[i] = rng.uniform(0.1, 2.0);
        }
        CMat x = CMat::Zero(3, 3), y = CMat::Zero(3, 3);
        for (int i = 0; i < 3; ++i) {
            x(i, i) = a[i];
            y(i, i) = b[i];
        }
        const double p = 2.0, q = 3.0, r = 1.0 / (1.0 / p + 1.0 / q);
        double sp = 0, sq = 0, sr = 0;
        for (int i = 0; i < 3; ++i) {
            sp += std::pow(a[i], p);
            sq += std::pow(b[i], q);
            sr += std::pow(a[i] * b[i], r);
        }
        const double margin_scalar =
            std::pow(sp, 1 / p) * std::pow(sq, 1 / q) - std::pow(sr, 1 / r);
        const double margin = holder_check(x, y, SchattenOrder::finite(p),
                                           SchattenOrder::finite(q));
        REQUIRE(margin == doctest::Approx(margin_scalar).epsilon(1e-9));
    }
}

TEST_CASE("schatten interpolation inequality") {
    Rng rng(3);
    const CMat x = rng.ginibre(4, 4);
    // theta = 0 -> equality
    CHECK(schatten_interp_check(x, SchattenOrder::finite(1.0), SchattenOrder::finite(3.0),
                                0.0) == doctest::Approx(0.0));

    // unitary input -> equality at every theta
    const CMat u = haar_unitary(4, 8);
    CHECK(schatten_interp_check(u, SchattenOrder::finite(2.0), SchattenOrder::infinity(),
                                0.3) == doctest::Approx(0.0).epsilon(1e-12));

    for (int t = 0; t < 1000; ++t) {
        Rng r2(4000 + t);
        const CMat m = r2.ginibre(6, 6);
        const double theta = r2.uniform();
        const double p0 = 1.0 + 3.0 * r2.uniform();
        const double p1 = 1.0 + 5.0 * r2.uniform();
        REQUIRE(schatten_interp_check(m, SchattenOrder::finite(p0),
                                      SchattenOrder::finite(p1), theta) >= -1e-9);
    }
}

TEST_CASE("norm properties") {
    Rng rng(5);
    for (int t = 0; t < 30; ++t) {
        const CMat x = rng.ginibre(5, 5);
        // monotone in p
        const double n1 = schatten_norm(x, SchattenOrder::finite(1.0));
        const double n2 = schatten_norm(x, SchattenOrder::finite(2.0));
        const double n4 = schatten_norm(x, SchattenOrder::finite(4.0));
        const double ni = schatten_norm(x, SchattenOrder::infinity());
        REQUIRE(n1 + 1e-12 >= n2);
        REQUIRE(n2 + 1e-12 >= n4);
        REQUIRE(n4 + 1e-12 >= ni);

        // unitary invariance
        const CMat u = haar_unitary(5, 600 + t), v = haar_unitary(5, 700 + t);
        REQUIRE(std::abs(schatten_norm(CMat(u * x * v), SchattenOrder::finite(3.0)) -
                         schatten_norm(x, SchattenOrder::finite(3.0))) <= 1e-10 * n1);

        // triangle inequality
        const CMat y = rng.ginibre(5, 5);
        for (double p : {1.0, 1.7, 3.0}) {
            const SchattenOrder o = SchattenOrder::finite(p);
            REQUIRE(schatten_norm(CMat(x + y), o) <=
                    schatten_norm(x, o) + schatten_norm(y, o) + 1e-10);
        }
    }
}

TEST_CASE("conjugate order") {
    CHECK(conjugate_order(SchattenOrder::finite(1.0)).is_inf());
    CHECK(conjugate_order(SchattenOrder::infinity()).value() == doctest::Approx(1.0));
    CHECK(conjugate_order(SchattenOrder::finite(2.0)).value() == doctest::Approx(2.0));
    CHECK(conjugate_order(SchattenOrder::finite(4.0)).value() == doctest::Approx(4.0 / 3.0));
}
