#include "oracles.hpp"
#include "planevar/onedim.hpp"
#include "planevar/variation.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace planevar;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

Function1D<Rational> identity_on(std::vector<Rational> t) {
    return Function1D<Rational>::tabulate(RealSample(std::move(t)), [](const Rational& x) { return x; });
}

Function1D<Rational> random_function(Rng& rng, std::size_t size) {
    std::vector<Rational> t;
    while (t.size() < size) t.push_back(rng.rational(5, 6));
    auto s = RealSample::from_unsorted(t);
    return Function1D<Rational>::tabulate(s, [&](const Rational&) { return rng.rational(3, 4); });
}

}  // namespace

TEST(RealSample, Validation) {
    EXPECT_THROW(RealSample(std::vector<Rational>{}), Error);
    EXPECT_THROW(RealSample({q(1), q(0)}), Error);
    EXPECT_THROW(RealSample({q(1), q(1)}), Error);
    RealSample s({q(0), q(1, 3), q(1)});
    EXPECT_EQ(s.gaps().size(), 2u);
}

TEST(Var1d, Examples) {
    EXPECT_EQ(var_1d(identity_on({q(0), q(1, 2), q(1)})), 1);

    auto recip = make_example({ExampleKind::ReciprocalAlternating, 4, false});
    EXPECT_EQ(var_1d(recip), q(35, 12));

    EXPECT_EQ(var_1d(cantor_level(3)), 1);
}

TEST(Var1d, MatchesPlanarCvarOfMonotoneList) {
    Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_function(rng, 6);
        auto g = embed_on_axis(f);
        std::vector<Point2> list;
        for (const auto& t : f.sample.points()) list.emplace_back(t, Rational(0));
        EXPECT_EQ(vf_exact(list).vf, 1u);
        EXPECT_EQ(cvar(g, list), var_1d(f));
        EXPECT_EQ(var_exact_small(g, 6).value, var_1d(f));
    }
}

TEST(Iota, Examples) {
    auto f = identity_on({q(0), q(1)});
    auto g = iota_extend(f, {q(1, 2)});
    EXPECT_EQ(g.at(q(1, 2)), q(1, 2));

    auto c = Function1D<Rational>::tabulate(RealSample({q(0), q(1)}), [](const Rational&) { return q(3); });
    auto cg = iota_extend(c, {q(1, 5), q(2, 7), q(9, 10)});
    for (const auto& v : cg.values) EXPECT_EQ(v, 3);

    auto cantor = cantor_level(2);
    std::vector<Rational> dyadic;
    for (long k = 0; k <= 16; ++k) dyadic.push_back(q(k, 16));
    EXPECT_EQ(var_1d(iota_extend(cantor, dyadic)), 1);
}

TEST(Iota, OutsideHull) {
    auto f = identity_on({q(0), q(1)});
    try {
        iota_extend(f, {q(2)});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::GridOutsideJ);
    }
}

TEST(Iota, IsometryOnRandomInstances) {
    Rng rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        auto f = random_function(rng, 2 + rng.below(8));
        std::vector<Rational> grid;
        for (std::size_t k = 0, m = rng.below(10); k < m; ++k) {
            Rational w = make_rational(static_cast<long>(rng.below(101)), 100);
            grid.push_back(f.sample.min() + w * (f.sample.max() - f.sample.min()));
        }
        auto g = iota_extend(f, grid);
        EXPECT_EQ(var_1d(g), var_1d(f));
        for (const auto& t : f.sample.points()) EXPECT_EQ(g.at(t), f.at(t));
    }
}

TEST(Iota, ComplexValues) {
    Function1D<Complex> f(RealSample({q(0), q(1)}), {Complex(0, 0), Complex(0, 2)});
    auto g = iota_extend(f, {q(1, 4)});
    EXPECT_NEAR(std::abs(g.at(q(1, 4)) - Complex(0, 0.5)), 0.0, 1e-15);
    EXPECT_NEAR(var_1d(g), 2.0, 1e-15);
}

TEST(AcModulus, Examples) {
    auto f = identity_on({q(0), q(1)});
    auto r = ac_modulus(f, q(1, 2));
    EXPECT_EQ(r.value, 0);
    EXPECT_TRUE(r.witness.empty());

    auto g = identity_on({q(0), q(2, 5), q(1)});
    auto s = ac_modulus(g, q(1, 2));
    EXPECT_EQ(s.value, q(2, 5));
    ASSERT_EQ(s.witness.size(), 1u);
    EXPECT_EQ(s.witness[0], std::make_pair(q(0), q(2, 5)));
    EXPECT_EQ(oracle::ac_modulus_bruteforce(g.sample.points(), g.values, q(1, 2)), q(2, 5));
}

TEST(AcModulus, AgreesWithBruteForce) {
    Rng rng(6);
    for (int trial = 0; trial < 150; ++trial) {
        auto f = random_function(rng, 2 + rng.below(6));
        Rational delta = make_rational(static_cast<long>(1 + rng.below(40)), 4);
        auto r = ac_modulus(f, delta);
        EXPECT_EQ(r.value, oracle::ac_modulus_bruteforce(f.sample.points(), f.values, delta));
        // the witness is admissible and attains the value
        Rational used = 0, total = 0;
        for (const auto& [a, b] : r.witness) {
            used += b - a;
            total += rabs(Rational(f.at(b) - f.at(a)));
        }
        EXPECT_LE(used, delta);
        EXPECT_EQ(total, r.value);
    }
}

TEST(AcModulus, MonotoneInBudgetAndBoundedByVariation) {
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = random_function(rng, 3 + rng.below(10));
        Rational prev = 0;
        for (long k = 1; k <= 24; ++k) {
            auto r = ac_modulus(f, q(k, 2));
            EXPECT_GE(r.value, prev);
            EXPECT_LE(r.value, var_1d(f));
            prev = r.value;
        }
    }
    auto id = identity_on({q(0), q(1, 7), q(1, 3), q(1, 2), q(4, 5), q(1)});
    for (long k = 1; k <= 10; ++k) EXPECT_LE(ac_modulus(id, q(k, 10)).value, q(k, 10));
}

TEST(AcModulus, LargeInstances) {
    auto cantor = cantor_level(4);  // 32 points
    try {
        ac_modulus(cantor, q(1, 10));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InstanceTooLarge);
    }
    auto r = ac_modulus(cantor, q(16, 81), AcMode::Auto);
    EXPECT_FALSE(r.exact);
    EXPECT_EQ(r.value, 1);
}

TEST(AcModulus, CantorSmallLevels) {
    for (std::size_t k = 1; k <= 3; ++k) {
        auto f = cantor_level(k);
        Rational step = 1;
        for (std::size_t i = 0; i < k; ++i) step /= 3;
        auto r = ac_modulus(f, step);
        EXPECT_GE(r.value, Rational(Rational(1) / Rational(Integer(1) << static_cast<unsigned>(k))));
        EXPECT_EQ(r.value, oracle::ac_modulus_bruteforce(f.sample.points(), f.values, step));
    }
}

TEST(Examples, Generators) {
    auto r = make_example({ExampleKind::ReciprocalAlternating, 4});
    EXPECT_EQ(r.sample.points(), (std::vector<Rational>{q(0), q(1, 4), q(1, 3), q(1, 2), q(1)}));
    EXPECT_EQ(r.at(q(1, 2)), q(1, 2));
    EXPECT_EQ(r.at(q(1, 3)), q(-1, 3));
    EXPECT_EQ(r.at(q(0)), 0);

    auto c = cantor_level(1);
    EXPECT_EQ(c.sample.points(), (std::vector<Rational>{q(0), q(1, 3), q(2, 3), q(1)}));
    EXPECT_EQ(c.values, (std::vector<Rational>{q(0), q(1, 2), q(1, 2), q(1)}));

    auto o = make_example({ExampleKind::OneOverN, 3});
    EXPECT_EQ(o.sample.points(), (std::vector<Rational>{q(0), q(1, 3), q(1, 2), q(1)}));

    auto odd = make_example({ExampleKind::ReciprocalOdd, 6});
    EXPECT_EQ(odd.sample.points(), (std::vector<Rational>{q(0), q(1, 5), q(1, 3), q(1)}));
    auto even = make_example({ExampleKind::ReciprocalEven, 6});
    EXPECT_EQ(even.sample.points(), (std::vector<Rational>{q(0), q(1, 6), q(1, 4), q(1, 2)}));
    EXPECT_THROW(cantor_level(11), Error);
}

TEST(Examples, ReciprocalDivergence) {
    for (std::size_t n : {10u, 100u, 1000u}) {
        auto f = make_example({ExampleKind::ReciprocalAlternating, n, false});
        Rational v = var_1d(f);
        // independent closed form 2 H_N - 1 - 1/N
        Rational h = 0;
        for (std::size_t k = 1; k <= n; ++k) h += make_rational(1, static_cast<long>(k));
        EXPECT_EQ(v, Rational(2 * h - 1 - make_rational(1, static_cast<long>(n))));
        EXPECT_GE(v.get_d(), 2 * std::log(static_cast<double>(n)) - 2);
    }
    // the odd and even halves separately stay bounded
    auto odd = make_example({ExampleKind::ReciprocalOdd, 1000});
    auto even = make_example({ExampleKind::ReciprocalEven, 1000});
    EXPECT_LE(var_1d(odd), 2);
    EXPECT_LE(var_1d(even), 1);
}

TEST(Examples, CantorVariationIsOne) {
    for (std::size_t k = 0; k <= 6; ++k) EXPECT_EQ(var_1d(cantor_level(k)), 1);
}

TEST(Clamp, Trace) {
    auto qf = Function1D<Rational>::tabulate(RealSample({q(0), q(1, 2), q(1)}),
                                             [](const Rational& x) { return x == q(1, 2) ? q(1) : q(0); });
    EXPECT_EQ(clamp_trace(qf, q(0), q(1), q(-3)), 0);
    EXPECT_EQ(clamp_trace(qf, q(0), q(1), q(5)), 0);
    EXPECT_EQ(clamp_trace(qf, q(0), q(1), q(1, 4)), q(1, 2));
}

TEST(AcModulus, ComplexValues) {
    Function1D<Complex> f(RealSample({q(0), q(1, 4), q(1)}), {Complex(0, 0), Complex(0, 1), Complex(3, 1)});
    auto exact = ac_modulus(f, q(1, 4));
    EXPECT_NEAR(exact.value, 1.0, 1e-12);
    // the long gap does not fit in 1/2, so the best is the short one either way
    EXPECT_NEAR(ac_modulus(f, q(1, 2)).value, 1.0, 1e-12);
    EXPECT_NEAR(ac_modulus(f, q(1, 2), AcMode::Auto).value, 1.0, 1e-12);
    EXPECT_NEAR(ac_modulus(f, q(1)).value, 4.0, 1e-12);
}
