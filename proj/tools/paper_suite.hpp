#pragma once

// The acceptance criteria as one runnable suite, shared by `planevar suite
// paper` and the acceptance test binary.
//
// Randomness: criterion k draws from Rng(seed).split("criterion", k) and
// nothing else, so criteria can be reordered or skipped without changing
// each other's instances.

#include "oracles.hpp"
#include "planevar/planevar.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace planevar::suite {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;  // not written to the CSV, which must be reproducible
};

struct Context {
    Rng root;
    // every CTPP function the suite constructs, for the triangle-bound check
    std::vector<CtppFunction<Rational>> built;

    Rng stream(int id) const { return root.split("criterion", static_cast<std::uint64_t>(id)); }
};

namespace detail {

inline Rational q(long n, long d = 1) { return make_rational(n, d); }

template <class... Args>
std::string str(const Args&... args) {
    std::ostringstream os;
    ((os << args), ...);
    return os.str();
}

inline std::string num(double d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", d);
    return buf;
}

inline PointList random_list(Rng& rng, std::size_t n) {
    PointList s;
    while (s.size() < n) {
        // a third of the entries repeat an earlier point
        if (!s.empty() && rng.below(3) == 0) s.push_back(s[rng.below(s.size())]);
        else s.emplace_back(rng.rational(3, 4), rng.rational(3, 4));
    }
    return s;
}

inline PointList random_set(Rng& rng, std::size_t n) {
    std::set<Point2> seen;
    PointList s;
    while (s.size() < n) {
        Point2 p(rng.rational(3, 4), rng.rational(3, 4));
        if (seen.insert(p).second) s.push_back(p);
    }
    return s;
}

// sigma1 on x < 0, sigma2 on x > 0, and shared points on x = 0 placed where
// every cross segment meets the axis, so the pair joins convexly on the sample.
struct JoinInstance {
    PointList s1, s2, all;
};

inline JoinInstance random_join(Rng& rng) {
    for (;;) {
        PointList left, right;
        std::size_t nl = 1 + rng.below(2), nr = 1 + rng.below(3);
        while (left.size() < nl) left.emplace_back(-Rational(1 + rng.below(3)), rng.rational(2, 3));
        while (right.size() < nr) right.emplace_back(Rational(1 + rng.below(3)), rng.rational(2, 3));
        std::set<Point2> shared;
        for (const auto& a : left)
            for (const auto& b : right) {
                Rational t = -a.x / (b.x - a.x);
                shared.insert(Point2(0, Rational(a.y + t * (b.y - a.y))));
            }
        if (rng.below(2)) shared.insert(Point2(Rational(0), rng.rational(2, 3)));
        std::set<Point2> all(left.begin(), left.end());
        all.insert(right.begin(), right.end());
        all.insert(shared.begin(), shared.end());
        if (all.size() > kExactMaxDomain || all.size() != left.size() + right.size() + shared.size()) continue;
        JoinInstance inst;
        inst.s1 = left;
        inst.s2 = right;
        for (const auto& p : shared) {
            inst.s1.push_back(p);
            inst.s2.push_back(p);
        }
        inst.all.assign(all.begin(), all.end());
        return inst;
    }
}

inline std::vector<Point2> unit_grid_points(long m) {
    std::vector<Point2> pts;
    for (long i = 0; i <= m; ++i)
        for (long j = 0; j <= m; ++j) pts.emplace_back(q(i, m), q(j, m));
    return pts;
}

}  // namespace detail

// 1. Inserting a point never lowers vf, and 1 <= vf <= n.
inline CriterionResult vf_monotonicity(Context& ctx) {
    Rng rng = ctx.stream(1);
    std::size_t violations = 0, bound_failures = 0;
    const std::size_t trials = 10000;
    for (std::size_t t = 0; t < trials; ++t) {
        auto s = detail::random_list(rng, 1 + rng.below(8));
        auto plus = s;
        Point2 w = rng.below(3) == 0 ? s[rng.below(s.size())] : Point2(rng.rational(3, 4), rng.rational(3, 4));
        plus.insert(plus.begin() + static_cast<long>(rng.below(s.size() + 1)), w);
        std::size_t a = vf_value(s), b = vf_value(plus);
        if (a > b) ++violations;
        if (a < 1 || a > s.size() || b < 1 || b > plus.size()) ++bound_failures;
    }
    return {1, "vf monotonicity", violations == 0 && bound_failures == 0,
            detail::str("insertions=", trials, " violations=", violations, " bound_failures=", bound_failures)};
}

// 2. vf_exact against random lines and against the brute-force oracle.
inline CriterionResult vf_oracle_agreement(Context& ctx) {
    Rng rng = ctx.stream(2);
    const std::size_t lists = 500, lines = 100000;
    std::size_t below_lines = 0, oracle_mismatch = 0, witness_mismatch = 0;
    for (std::size_t t = 0; t < lists; ++t) {
        auto s = detail::random_list(rng, 1 + rng.below(8));
        auto r = vf_exact(s);
        if (r.vf < oracle::vf_random_lines(s, rng, lines)) ++below_lines;
        if (r.vf != oracle::vf_bruteforce(s)) ++oracle_mismatch;
        if (vf_line(s, r.witness).count != r.vf) ++witness_mismatch;
    }
    return {2, "vf oracle agreement", below_lines == 0 && oracle_mismatch == 0 && witness_mismatch == 0,
            detail::str("lists=", lists, " lines_per_list=", lines, " below_random_lines=", below_lines,
                        " oracle_mismatches=", oracle_mismatch, " witness_mismatches=", witness_mismatch)};
}

// 3. var of a planar function is max - min over the sample.
inline CriterionResult planar_formula(Context& ctx) {
    Rng rng = ctx.stream(3);
    std::size_t mismatches = 0;
    const std::size_t instances = 100;
    for (std::size_t t = 0; t < instances; ++t) {
        auto pts = detail::random_set(rng, 1 + rng.below(7));
        PlanarCoeffs<Rational> F{rng.rational(3, 4), rng.rational(3, 4), rng.rational(3, 4)};
        auto f = SampledFunction<Rational>::tabulate(pts, [&](const Point2& p) { return F(p); });
        if (var_exact_small(f).value != var_planar(F, pts)) ++mismatches;
    }
    return {3, "planar formula", mismatches == 0, detail::str("instances=", instances, " mismatches=", mismatches)};
}

// 4. max(var1, var2) <= var <= var1 + var2 on convexly joining samples.
inline CriterionResult variation_join(Context& ctx) {
    Rng rng = ctx.stream(4);
    std::size_t lower = 0, upper = 0, not_verified = 0, inexact = 0;
    const std::size_t instances = 200;
    for (std::size_t t = 0; t < instances; ++t) {
        auto inst = detail::random_join(rng);
        auto f = SampledFunction<Rational>::tabulate(inst.all, [&](const Point2&) { return rng.rational(3, 4); });
        auto r = join_report(f, inst.s1, inst.s2);
        if (r.status != JoinStatus::Verified) ++not_verified;
        if (!r.exact()) ++inexact;
        if (!r.lower_ok || !*r.lower_ok) ++lower;
        if (!r.upper_ok || !*r.upper_ok) ++upper;
    }
    return {4, "variation join", lower == 0 && upper == 0 && not_verified == 0 && inexact == 0,
            detail::str("instances=", instances, " lower_violations=", lower, " upper_violations=", upper,
                        " unverified=", not_verified, " inexact=", inexact)};
}

// 5. The linear-interpolation extension preserves var and sup exactly.
inline CriterionResult iota_isometry(Context& ctx) {
    Rng rng = ctx.stream(5);
    std::size_t mismatches = 0;
    const std::size_t instances = 200;
    for (std::size_t t = 0; t < instances; ++t) {
        std::vector<Rational> ts;
        for (std::size_t k = 0, n = 2 + rng.below(9); k < n; ++k) ts.push_back(rng.rational(4, 6));
        auto s = RealSample::from_unsorted(ts);
        if (s.size() < 2) {
            --t;
            continue;
        }
        auto f = Function1D<Rational>::tabulate(s, [&](const Rational&) { return rng.rational(3, 5); });
        std::vector<Rational> grid;
        for (std::size_t k = 0, m = 1 + rng.below(12); k < m; ++k)
            grid.push_back(s.min() + make_rational(static_cast<long>(rng.below(97)), 96) * (s.max() - s.min()));
        auto g = iota_extend(f, grid);
        if (var_1d(g) != var_1d(f) || sup_norm(g) != sup_norm(f)) ++mismatches;
    }
    return {5, "iota isometry", mismatches == 0, detail::str("instances=", instances, " mismatches=", mismatches)};
}

// 6. f(x, |x|) = |x| on five knots: var on the graph 1, var of the pullback 2.
inline CriterionResult graph_fill_remark(Context&) {
    std::vector<Point2> pts;
    for (long k = -2; k <= 2; ++k) pts.emplace_back(detail::q(k, 2), rabs(detail::q(k, 2)));
    auto f = SampledFunction<Rational>::tabulate(pts, [](const Point2& p) { return p.y; });
    auto pb = psi_pullback(f, ConvexCurve::abs_curve(1, -1, 1));
    bool ok = pb.var_graph && *pb.var_graph == 1 && pb.var_fhat == 2;
    return {6, "graph-fill remark", ok,
            detail::str("var_graph=", pb.var_graph ? pb.var_graph->get_str() : std::string("none"),
                        " var_pullback=", pb.var_fhat.get_str())};
}

// 7. ||g_s||_BV = 3, and the pyramid's variation found by annealing lies in [2, 4].
inline CriterionResult bumps(Context& ctx) {
    bool g_ok = true;
    for (auto [s, delta] : {std::pair{detail::q(1, 2), detail::q(1)}, std::pair{detail::q(1, 10), detail::q(1, 3)},
                            std::pair{detail::q(1), detail::q(1)}}) {
        auto smp = GBump(s, delta).sample(16);
        if (var_1d(smp) + sup_norm(smp) != 3) g_ok = false;
    }
    auto b = pyramid_ctpp();
    ctx.built.push_back(b);
    std::vector<Point2> pts;
    for (long i = -4; i <= 4; ++i)
        for (long j = -4; j <= 4; ++j) pts.emplace_back(detail::q(i, 4), detail::q(j, 4));
    auto f = sample_ctpp(b, pts);
    SearchConfig cfg;
    cfg.iters = 125000;
    cfg.restarts = 8;
    cfg.seed = ctx.stream(7)();
    auto est = var_search(f, cfg);
    bool p_ok = est.value >= 2 && est.value <= 4;
    return {7, "bumps", g_ok && p_ok,
            detail::str("g_s_bv_is_3=", g_ok ? "yes" : "no", " pyramid_lower=", est.value.get_str(),
                        " proposals=", cfg.iters * cfg.restarts)};
}

// 8. Alternating reciprocals: var over the first N points grows like 2 ln N.
inline CriterionResult reciprocal_divergence(Context&) {
    bool ok = true;
    std::string text;
    for (std::size_t n : {10u, 100u, 1000u}) {
        auto f = make_example({ExampleKind::ReciprocalAlternating, n, false});
        double v = var_1d(f).get_d(), floor = 2 * std::log(static_cast<double>(n)) - 2;
        if (!(v >= floor)) ok = false;
        text += detail::str("N=", n, ":", detail::num(v), ">=", detail::num(floor), " ");
    }
    // consecutive differences of (-1)^k / k at t = 1/k, written out directly
    Rational oracle = 0;
    for (long k = 1; k < 4; ++k) {
        Rational a = detail::q(k % 2 == 0 ? 1 : -1, k), b = detail::q((k + 1) % 2 == 0 ? 1 : -1, k + 1);
        oracle += rabs(Rational(a - b));
    }
    Rational at4 = var_1d(make_example({ExampleKind::ReciprocalAlternating, 4, false}));
    if (at4 != oracle || at4 != detail::q(35, 12)) ok = false;
    return {8, "reciprocal divergence", ok, text + "N=4:" + at4.get_str()};
}

// 9. Grid interpolation of sin x cos y, n = 16.
inline CriterionResult grid_interpolation(Context& ctx) {
    C2Oracle o{from_double([](double x, double y) { return std::sin(x) * std::cos(y); }),
               from_double([](double x, double y) { return std::cos(x) * std::cos(y); }),
               from_double([](double x, double y) { return -std::sin(x) * std::sin(y); }),
               {}, {}, {}};
    auto gi = c1_grid_interpolation(o, 16);
    ctx.built.push_back(gi.g);
    const auto& r = gi.report;
    bool ok = r.sup_err <= r.eps_meas && r.lip_err <= std::sqrt(2.0) * r.eps_meas * 1.01;
    return {9, "grid interpolation", ok,
            detail::str("eps_meas=", detail::num(r.eps_meas), " sup_err=", detail::num(r.sup_err),
                        " lip_err=", detail::num(r.lip_err), " bound=", detail::num(std::sqrt(2.0) * r.eps_meas))};
}

// 10. The C^2 pipeline on sin(x) e^y at degree 12, and exact cubics.
inline CriterionResult c2_pipeline(Context&) {
    C2Oracle o{from_double([](double x, double y) { return std::sin(x) * std::exp(y); }),
               from_double([](double x, double y) { return std::cos(x) * std::exp(y); }),
               from_double([](double x, double y) { return std::sin(x) * std::exp(y); }),
               from_double([](double x, double y) { return -std::sin(x) * std::exp(y); }),
               from_double([](double x, double y) { return std::cos(x) * std::exp(y); }),
               from_double([](double x, double y) { return std::sin(x) * std::exp(y); })};
    auto a = c2_to_poly(o, 12, 41);
    const auto& r = a.report;
    bool smooth_ok = r.lip_norm_err() <= r.bound() * 1.01;

    // f = x^3 - 2 x^2 y + x y / 3 + y^3 / 5 - y + 1/7 with exact derivatives
    using detail::q;
    Poly2 f(Poly2::Table{{q(1, 7), q(-1), q(0), q(1, 5)}, {q(0), q(1, 3)}, {q(0), q(-2)}, {q(1)}});
    auto exact = [](Poly2 p) -> RealOracle { return [p](const Point2& x) { return p(x); }; };
    C2Oracle c{exact(f), exact(f.dx()), exact(f.dy()), exact(f.dx().dx()), exact(f.dx().dy()), exact(f.dy().dy())};
    bool cubic_ok = true;
    for (std::size_t d : {3u, 12u})
        if (!(c2_to_poly(c, d, 9).p == f)) cubic_ok = false;
    return {10, "C2 pipeline", smooth_ok && cubic_ok,
            detail::str("eps_meas=", detail::num(r.eps_meas), " lip_norm_err=", detail::num(r.lip_norm_err()),
                        " bound=", detail::num(r.bound()), " cubic_exact=", cubic_ok ? "yes" : "no")};
}

// 11. Point matching: exact at the matched points, with the norm bookkeeping.
inline CriterionResult point_matching(Context& ctx) {
    Rng rng = ctx.stream(11);
    const std::size_t instances = 50;
    std::size_t not_exact = 0, bookkeeping = 0, var_above = 0;
    auto sample = detail::unit_grid_points(6);
    auto fine = detail::unit_grid_points(24);
    const Rational delta = detail::q(1, 13);  // squares of side 2/13 around points 1/6 apart never meet
    for (std::size_t t = 0; t < instances; ++t) {
        auto f = SampledFunction<Rational>::tabulate(sample, [&](const Point2&) { return rng.rational(2, 9); });
        VertexOracle<Rational> vo = [&](const Point2&) -> std::optional<Rational> { return rng.rational(2, 9); };
        auto g0 = interpolate_grid(vo, Rectangle::unit(), 3);
        ctx.built.push_back(g0);
        std::vector<Point2> pts;
        std::set<Point2> used;
        for (std::size_t k = 0, n = 1 + rng.below(4); k < n; ++k) {
            const Point2& p = sample[rng.below(sample.size())];
            if (used.insert(p).second) pts.push_back(p);
        }
        // eps from a BV-norm estimate of f - g0 on the sample
        auto diff = SampledFunction<Rational>::tabulate(sample, [&](const Point2& p) { return Rational(f.at(p) - g0(p)); });
        SearchConfig cfg;
        cfg.iters = 2000;
        cfg.restarts = 2;
        cfg.seed = rng();
        double bv = diff.sup_norm().get_d() + var_search(diff, cfg).value.get_d();
        double eps = static_cast<double>(4 * pts.size() + 2) * bv * (1 + 1e-9);
        auto m = match_points(f, g0, pts, delta, eps);
        for (const auto& p : pts)
            if (m.g(p) != f.at(p)) ++not_exact;
        if (!m.report.holds || !*m.report.holds) ++bookkeeping;
        cfg.seed = rng();
        if (var_search(m.h.sample(fine), cfg).value > m.report.var_bound) ++var_above;
    }
    return {11, "point matching", not_exact == 0 && bookkeeping == 0 && var_above == 0,
            detail::str("instances=", instances, " interpolation_failures=", not_exact, " bound_failures=", bookkeeping,
                        " var_above_bound=", var_above)};
}

// 12. Cantor levels: var 1, and the modulus at budget (2/3)^k stays >= 1/2.
inline CriterionResult cantor_diagnostic(Context&) {
    bool ok = true;
    std::string text;
    for (std::size_t k = 0; k <= 6; ++k) {
        auto f = cantor_level(k);
        Rational budget = 1;
        for (std::size_t i = 0; i < k; ++i) budget *= detail::q(2, 3);
        auto full = ac_modulus(f, budget, AcMode::Auto);
        if (var_1d(f) != 1 || full.value < detail::q(1, 2)) ok = false;
        text += detail::str("k=", k, ":", full.value.get_str());
        if (k >= 1) {
            auto half = ac_modulus(f, Rational(budget / 2), AcMode::Auto);
            if (half.value < detail::q(1, 2)) ok = false;
            text += detail::str("/", half.value.get_str());
        }
        text += " ";
    }
    text.pop_back();
    return {12, "cantor diagnostic", ok, text};
}

// 13. |grad F| <= (2 / r_A) sup |F| on every piece of every CTPP function
// built above, plus extensions of some of them to a larger polygon.
inline CriterionResult triangle_bound(Context& ctx) {
    Rng rng = ctx.stream(13);
    Polygon target({Point2(-1, -1), Point2(3, -1), Point2(3, 3), Point2(1, detail::q(5, 2)), Point2(-1, 3)});
    std::size_t base = ctx.built.size();
    for (std::size_t i = 0; i < 5 && i < base; ++i) {
        const auto& g = ctx.built[rng.below(base)];
        if (g.triangulation().grid() && g.triangulation().size() <= 32)
            ctx.built.push_back(extend_to_polygon(g, target));
    }
    std::size_t functions = 0, pieces = 0, violations = 0, undecided = 0;
    for (const auto& g : ctx.built) {
        auto r = check_triangle_bound(g);
        ++functions;
        pieces += r.checked;
        violations += r.violations;
        undecided += r.undecided;
    }
    return {13, "triangle bound", violations == 0 && functions > 0,
            detail::str("functions=", functions, " pieces=", pieces, " violations=", violations,
                        " undecided=", undecided)};
}

inline std::vector<CriterionResult> run_paper_suite(std::uint64_t seed,
                                                    const std::function<void(const CriterionResult&)>& progress = {}) {
    Context ctx{Rng(seed), {}};
    using Fn = CriterionResult (*)(Context&);
    const Fn all[] = {vf_monotonicity, vf_oracle_agreement, planar_formula,  variation_join,   iota_isometry,
                      graph_fill_remark, bumps,             reciprocal_divergence, grid_interpolation, c2_pipeline,
                      point_matching,  cantor_diagnostic,  triangle_bound};
    std::vector<CriterionResult> out;
    for (Fn fn : all) {
        auto start = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = fn(ctx);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
            r.id = static_cast<int>(out.size()) + 1;
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (progress) progress(r);
        out.push_back(std::move(r));
    }
    return out;
}

inline std::string suite_csv(const std::vector<CriterionResult>& results) {
    std::string out = "criterion,name,result,detail\n";
    for (const auto& r : results) {
        std::string detail = r.detail;
        if (detail.find_first_of(",\"") != std::string::npos) {
            std::string quoted = "\"";
            for (char c : detail) {
                if (c == '"') quoted += '"';
                quoted += c;
            }
            detail = quoted + "\"";
        }
        out += std::to_string(r.id) + "," + r.name + "," + (r.pass ? "pass" : "fail") + "," + detail + "\n";
    }
    return out;
}

}  // namespace planevar::suite
