#include "oracles.hpp"
#include "planevar/variation.hpp"

#include <gtest/gtest.h>

using namespace planevar;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

SampledFunction<Rational> f_x(std::vector<Point2> pts) {
    return SampledFunction<Rational>::tabulate(std::move(pts), [](const Point2& p) { return p.x; });
}

std::vector<Point2> random_list(Rng& rng, std::size_t len, long span = 4, long den = 2) {
    std::vector<Point2> s;
    for (std::size_t i = 0; i < len; ++i) {
        if (!s.empty() && rng.below(4) == 0)
            s.push_back(s[rng.below(s.size())]);  // repeats make degenerate cases likely
        else
            s.emplace_back(rng.rational(span, den), rng.rational(span, den));
    }
    return s;
}

std::vector<Point2> random_set(Rng& rng, std::size_t size, long span = 3, long den = 1) {
    std::vector<Point2> s;
    while (s.size() < size) {
        Point2 p(rng.rational(span, den), rng.rational(span, den));
        if (std::find(s.begin(), s.end(), p) == s.end()) s.push_back(p);
    }
    return s;
}

}  // namespace

TEST(Cvar, Examples) {
    std::vector<Point2> sq{Point2(0, 0), Point2(1, 0), Point2(0, 1), Point2(1, 1)};
    auto c = SampledFunction<Rational>::tabulate(sq, [](const Point2&) { return Rational(5); });
    EXPECT_EQ(cvar(c, std::vector<Point2>{Point2(0, 0), Point2(1, 1), Point2(0, 1)}), 0);

    auto fx = f_x({Point2(0, 0), Point2(1, 0)});
    EXPECT_EQ(cvar(fx, std::vector<Point2>{Point2(0, 0), Point2(1, 0), Point2(0, 0), Point2(1, 0)}), 3);
    EXPECT_EQ(cvar(fx, std::vector<Point2>{Point2(1, 0)}), 0);

    std::vector<Point2> recip;
    std::vector<Rational> vals;
    for (long k = 1; k <= 4; ++k) {
        recip.emplace_back(q(1, k), Rational(0));
        vals.push_back(q(k % 2 == 0 ? 1 : -1, k));
    }
    SampledFunction<Rational> f(recip, vals);
    Rational oracle = 0;
    for (std::size_t i = 1; i < vals.size(); ++i) oracle += rabs(Rational(vals[i] - vals[i - 1]));
    EXPECT_EQ(oracle, q(35, 12));
    EXPECT_EQ(cvar(f, recip), oracle);
}

TEST(Cvar, OutsideDomain) {
    auto fx = f_x({Point2(0, 0), Point2(1, 0)});
    try {
        cvar(fx, std::vector<Point2>{Point2(0, 0), Point2(2, 0)});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PointOutsideDomain);
    }
}

TEST(VfLine, Examples) {
    std::vector<Point2> seg{Point2(0, 0), Point2(1, 0)};
    EXPECT_EQ(vf_line(seg, Line::from_coefficients(1, 0, q(1, 2))).count, 1u);
    auto on_axis = vf_line(seg, Line::from_coefficients(0, 1, 0));
    EXPECT_EQ(on_axis.count, 1u);
    EXPECT_EQ(on_axis.crossing_indices, std::vector<std::size_t>{0});

    std::vector<Point2> tent{Point2(0, 0), Point2(1, 1), Point2(2, 0)};
    auto r = vf_line(tent, Line::from_coefficients(0, 1, 0));
    EXPECT_EQ(r.count, 2u);
    EXPECT_EQ(r.crossing_indices, (std::vector<std::size_t>{0, 1}));

    EXPECT_EQ(vf_line(std::vector<Point2>{Point2(3, 4)}, Line::from_coefficients(1, 0, 3)).count, 1u);
    EXPECT_EQ(vf_line(std::vector<Point2>{Point2(3, 4)}, Line::from_coefficients(1, 0, 2)).count, 0u);
}

TEST(VfExact, Examples) {
    EXPECT_EQ(vf_exact(std::vector<Point2>{Point2(0, 0)}).vf, 1u);

    std::vector<Point2> zigzag{Point2(0, 0), Point2(1, 0), Point2(0, 0), Point2(1, 0)};
    auto z = vf_exact(zigzag);
    EXPECT_EQ(z.vf, 3u);
    EXPECT_EQ(vf_line(zigzag, z.witness).count, 3u);
    EXPECT_EQ(vf_line(zigzag, Line::from_coefficients(2, 0, 1)).count, 3u);

    std::vector<Point2> mono{Point2(-1, 0), Point2(0, 0), Point2(1, 0)};
    EXPECT_EQ(vf_exact(mono).vf, 1u);
}

TEST(VfExact, WitnessAttainsAndDominatesLines) {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        auto s = random_list(rng, 1 + rng.below(8));
        auto r = vf_exact(s);
        EXPECT_EQ(vf_line(s, r.witness).count, r.vf);
        const std::size_t n = s.size() - 1;
        EXPECT_GE(r.vf, 1u);
        EXPECT_LE(r.vf, std::max<std::size_t>(n, 1));
        EXPECT_EQ(vf_value(s), r.vf);
        for (int k = 0; k < 30; ++k) {
            Point2 a(rng.rational(4, 2), rng.rational(4, 2)), b(rng.rational(4, 2), rng.rational(4, 2));
            if (a == b) continue;
            EXPECT_LE(vf_line(s, line_through(a, b)).count, r.vf);
        }
        // lines through pairs of list points hit the degenerate cases
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = 0; j < s.size(); ++j)
                if (s[i] != s[j]) EXPECT_LE(vf_line(s, line_through(s[i], s[j])).count, r.vf);
    }
}

TEST(VfExact, AgreesWithBruteForce) {
    Rng rng(9);
    for (int trial = 0; trial < 150; ++trial) {
        auto s = random_list(rng, 1 + rng.below(9), 3, 1);
        EXPECT_EQ(vf_exact(s).vf, oracle::vf_bruteforce(s)) << "trial " << trial;
    }
}

TEST(VfExact, LargeCoordinatesUseBigKernel) {
    Rational big(Integer("123456789012345678901234567890"));
    std::vector<Point2> s{Point2(Rational(0), Rational(0)), Point2(big, Rational(0)), Point2(Rational(0), Rational(0)),
                          Point2(big, Rational(0))};
    EXPECT_EQ(vf_exact(s).vf, 3u);
    std::vector<Point2> t{Point2(Rational(0), Rational(0)), Point2(big, big), Point2(Rational(2) * big, Rational(0))};
    EXPECT_EQ(vf_exact(t).vf, oracle::vf_bruteforce(t));
}

TEST(VfExact, InsertionNeverDecreases) {
    Rng rng(13);
    for (int trial = 0; trial < 1000; ++trial) {
        auto s = random_list(rng, 1 + rng.below(8), 3, 1);
        auto plus = s;
        Point2 w = rng.below(3) == 0 ? s[rng.below(s.size())] : Point2(rng.rational(3, 1), rng.rational(3, 1));
        plus.insert(plus.begin() + static_cast<long>(rng.below(s.size() + 1)), w);
        EXPECT_LE(vf_value(s), vf_value(plus));
    }
}

TEST(CrossingTable, MatchesVfOnSubLists) {
    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        auto pts = random_set(rng, 2 + rng.below(5));
        CrossingTable table(pts);
        for (int k = 0; k < 20; ++k) {
            std::vector<std::size_t> idx;
            std::vector<Point2> list;
            for (std::size_t m = 0, len = 1 + rng.below(6); m < len; ++m) {
                idx.push_back(rng.below(pts.size()));
                list.push_back(pts[idx.back()]);
            }
            EXPECT_EQ(table.vf(idx), vf_value(list));
        }
    }
}

TEST(VarExactSmall, Examples) {
    SampledFunction<Complex> two({Point2(0, 0), Point2(1, 0)}, {Complex(0, 0), Complex(3, 4)});
    EXPECT_NEAR(var_exact_small(two).value, 5.0, 1e-12);

    auto fx = f_x({Point2(0, 0), Point2(1, 0)});
    auto e = var_exact_small(fx, 4);
    EXPECT_EQ(e.value, 1);
    EXPECT_TRUE(e.exact);
    EXPECT_EQ(e.method, VarMethod::ExhaustiveSmall);

    std::vector<Point2> recip;
    std::vector<Rational> vals;
    for (long k = 1; k <= 4; ++k) {
        recip.emplace_back(q(1, k), Rational(0));
        vals.push_back(q(k % 2 == 0 ? 1 : -1, k));
    }
    auto r = var_exact_small(SampledFunction<Rational>(recip, vals));
    EXPECT_EQ(r.value, q(35, 12));
    EXPECT_EQ(r.witness_vf, 1u);
}

TEST(VarExactSmall, Guards) {
    Rng rng(1);
    auto f = f_x(random_set(rng, 8));
    try {
        var_exact_small(f);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InstanceTooLarge);
    }
    EXPECT_THROW(var_exact_small(f_x(random_set(rng, 3)), 7), Error);
}

TEST(VarExactSmall, SingletonIsZero) {
    auto f = f_x({Point2(2, 3)});
    EXPECT_EQ(var_exact_small(f).value, 0);
    EXPECT_EQ(var_search(f).value, 0);
}

TEST(VarExactSmall, AffineInvariance) {
    Rng rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        auto pts = random_set(rng, 5);
        std::vector<Rational> vals;
        for (std::size_t i = 0; i < pts.size(); ++i) vals.push_back(rng.rational(3, 3));
        SampledFunction<Rational> f(pts, vals);
        AffineMap phi;
        phi.m11 = rng.rational(2, 2);
        phi.m12 = rng.rational(2, 2);
        phi.m21 = rng.rational(2, 2);
        phi.m22 = rng.rational(2, 2);
        phi.t1 = rng.rational(2, 3);
        phi.t2 = rng.rational(2, 3);
        if (phi.determinant() == 0) continue;
        EXPECT_EQ(var_exact_small(f, 5).value, var_exact_small(affine_pushforward(f, phi), 5).value);
    }
    auto pts = random_set(rng, 5);
    auto f = SampledFunction<Rational>::tabulate(pts, [](const Point2& p) { return Rational(p.x * p.y); });
    EXPECT_EQ(var_exact_small(f, 5).value, var_exact_small(affine_pushforward(f, AffineMap::rotation90()), 5).value);
}

TEST(VarExactSmall, RestrictionMonotone) {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        auto pts = random_set(rng, 6);
        std::vector<Rational> vals;
        for (std::size_t i = 0; i < pts.size(); ++i) vals.push_back(rng.rational(2, 2));
        SampledFunction<Rational> f(pts, vals);
        std::vector<Point2> sub(pts.begin(), pts.begin() + 4);
        EXPECT_LE(var_exact_small(f.restrict_to(sub), 5).value, var_exact_small(f, 5).value);
    }
}

TEST(VarPlanar, Examples) {
    std::vector<Point2> sq{Point2(0, 0), Point2(1, 0), Point2(0, 1), Point2(1, 1)};
    EXPECT_EQ(var_planar(PlanarCoeffs<Rational>{1, 0, 0}, sq), 1);
    EXPECT_EQ(var_planar(PlanarCoeffs<Rational>{0, 0, 7}, sq), 0);
    EXPECT_EQ(var_planar(PlanarCoeffs<Rational>{2, 3, 0}, std::vector<Point2>{Point2(0, 0), Point2(1, 1)}), 5);
    try {
        var_planar(PlanarCoeffs<Complex>{Complex(1, 1), 0, 0}, sq);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonRealCoefficients);
    }
}

TEST(VarPlanar, ExhaustiveMatchesFormula) {
    Rng rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        auto pts = random_set(rng, 2 + rng.below(5));
        PlanarCoeffs<Rational> F{rng.rational(3, 2), rng.rational(3, 2), rng.rational(3, 2)};
        auto f = SampledFunction<Rational>::tabulate(pts, F);
        EXPECT_EQ(var_exact_small(f, 4).value, var_planar(F, pts));
        EXPECT_LE(var_search(f, {.iters = 500, .restarts = 2}).value, var_planar(F, pts));
        EXPECT_EQ(var_planar_estimate(f, F).value, var_planar(F, pts));
    }
}

TEST(VarSearch, Examples) {
    std::vector<Point2> sq{Point2(0, 0), Point2(1, 0), Point2(0, 1), Point2(1, 1)};
    auto est = var_search(f_x(sq));
    EXPECT_EQ(est.value, 1);
    EXPECT_FALSE(est.exact);
    EXPECT_EQ(est.method, VarMethod::Anneal);

    std::vector<Point2> grid;
    for (long y = -1; y <= 1; ++y)
        for (long x = -1; x <= 1; ++x) grid.emplace_back(x, y);
    auto pyramid = SampledFunction<Rational>::tabulate(grid, [](const Point2& p) {
        Rational m = min_rational(Rational(1 - rabs(p.x)), Rational(1 - rabs(p.y)));
        return max_rational(m, 0);
    });
    auto b = var_search(pyramid);
    EXPECT_GE(b.value, 2);
    std::vector<Point2> w{Point2(-1, 0), Point2(0, 0), Point2(1, 0)};
    EXPECT_EQ(cvar(pyramid, w), 2);
    EXPECT_EQ(vf_exact(w).vf, 1u);
}

TEST(VarSearch, DeterministicForSeed) {
    Rng rng(31);
    auto pts = random_set(rng, 12);
    auto f = SampledFunction<Rational>::tabulate(pts, [](const Point2& p) { return Rational(p.x * p.x - p.y); });
    SearchConfig cfg{.iters = 3000, .restarts = 3, .seed = 42};
    auto a = var_search(f, cfg);
    auto b = var_search(f, cfg);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_EQ(a.seed, std::optional<std::uint64_t>(42));
}

TEST(VarSearch, ValueRecomputesFromWitness) {
    Rng rng(37);
    auto pts = random_set(rng, 10);
    auto f = SampledFunction<Rational>::tabulate(pts, [](const Point2& p) { return Rational(p.x * p.y); });
    auto est = var_search(f, {.iters = 2000, .restarts = 2});
    EXPECT_EQ(est.value, cvar(f, est.witness) / Rational(static_cast<long>(vf_exact(est.witness).vf)));
    // Lipschitz bound on variation
    EXPECT_LE(est.value.get_d(), diameter(pts) * lipschitz_constant(f) + 1e-12);
}

TEST(BvNorm, Examples) {
    std::vector<Point2> sq{Point2(0, 0), Point2(1, 0), Point2(0, 1), Point2(1, 1)};
    auto c = SampledFunction<Rational>::tabulate(sq, [](const Point2&) { return Rational(5); });
    EXPECT_EQ(bv_norm(c, var_search(c)).value, 5);

    auto fx = f_x(sq);
    auto n = bv_norm(fx, var_planar_estimate(fx, PlanarCoeffs<Rational>{1, 0, 0}));
    EXPECT_EQ(n.value, 2);
    EXPECT_TRUE(n.exact);

    auto est = var_search(fx);
    est.value += 1;
    try {
        bv_norm(fx, est);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MismatchedEstimate);
    }
    est = var_search(fx);
    est.witness.push_back(Point2(9, 9));
    EXPECT_THROW(bv_norm(fx, est), Error);
}

TEST(Lipschitz, Examples) {
    std::vector<Point2> sq{Point2(0, 0), Point2(1, 0), Point2(0, 1), Point2(1, 1)};
    auto c = SampledFunction<Rational>::tabulate(sq, [](const Point2&) { return Rational(5); });
    EXPECT_EQ(lipschitz_constant(c), 0.0);
    EXPECT_EQ(lipschitz_constant(f_x({Point2(0, 0), Point2(1, 0)})), 1.0);
    try {
        lipschitz_constant(f_x({Point2(0, 0)}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DomainTooSmall);
    }
    // planar 3x + 4y: gradient norm 5, attained along (3,4)
    std::vector<Point2> pts{Point2(0, 0), Point2(3, 4), Point2(1, 0)};
    auto F = SampledFunction<Rational>::tabulate(pts, [](const Point2& p) { return Rational(3 * p.x + 4 * p.y); });
    EXPECT_EQ(lipschitz_squared(F), 25);
}

TEST(AffinePushforward, IdentityTranslationSingular) {
    Rng rng(41);
    auto pts = random_set(rng, 5);
    auto f = f_x(pts);
    auto same = affine_pushforward(f, AffineMap{});
    EXPECT_EQ(same.domain(), f.domain());
    EXPECT_EQ(same.values(), f.values());

    auto moved = affine_pushforward(f, AffineMap::translation(1, 1));
    std::vector<Point2> w{pts[0], pts[1], pts[2], pts[0]};
    std::vector<Point2> w2;
    for (const auto& p : w) w2.push_back(AffineMap::translation(1, 1)(p));
    EXPECT_EQ(vf_exact(w).vf, vf_exact(w2).vf);
    EXPECT_EQ(moved.at(w2[1]), f.at(w[1]));

    AffineMap singular;
    singular.m22 = 0;
    try {
        affine_pushforward(f, singular);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularMap);
    }
}

TEST(BanachAlgebra, ProductBoundOnPlanarFactors) {
    Rng rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        auto pts = random_set(rng, 8);
        PlanarCoeffs<Rational> F{rng.rational(2, 2), rng.rational(2, 2), rng.rational(2, 2)};
        PlanarCoeffs<Rational> G{rng.rational(2, 2), rng.rational(2, 2), rng.rational(2, 2)};
        auto f = SampledFunction<Rational>::tabulate(pts, F);
        auto g = SampledFunction<Rational>::tabulate(pts, G);
        auto fg = multiply(f, g);
        auto lower = var_search(fg, {.iters = 2000, .restarts = 2});
        Rational bound = bv_norm(f, var_planar_estimate(f, F)).value * bv_norm(g, var_planar_estimate(g, G)).value;
        EXPECT_LE(Rational(fg.sup_norm() + lower.value), bound);
    }
}
