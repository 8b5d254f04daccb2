#pragma once

// Extensions across curves and sectors, the pasting construction, and the
// join-convexly report comparing variation on a union with its two parts.

#include "planevar/onedim.hpp"
#include "planevar/variation.hpp"

#include <optional>
#include <set>
#include <vector>

namespace planevar {

// Piecewise-linear convex phi through the knots (x_i, phi_i).
class ConvexCurve {
public:
    ConvexCurve(std::vector<Rational> xs, std::vector<Rational> phis) : xs_(std::move(xs)), phis_(std::move(phis)) {
        if (xs_.size() < 2 || xs_.size() != phis_.size())
            throw Error(ErrorCode::BadSpec, "convex curve needs at least two knots with one value each");
        for (std::size_t i = 1; i < xs_.size(); ++i)
            if (!(xs_[i - 1] < xs_[i])) throw Error(ErrorCode::BadSpec, "knots must be strictly increasing");
        // slopes of consecutive pieces must not decrease
        for (std::size_t i = 2; i < xs_.size(); ++i)
            if (slope(i - 1) > slope(i)) throw Error(ErrorCode::BadSpec, "knot values are not convex");
    }

    const std::vector<Rational>& knots() const { return xs_; }
    const std::vector<Rational>& values() const { return phis_; }
    const Rational& x_min() const { return xs_.front(); }
    const Rational& x_max() const { return xs_.back(); }

    bool covers(const Rational& x) const { return x_min() <= x && x <= x_max(); }

    Rational operator()(const Rational& x) const {
        if (!covers(x)) throw Error(ErrorCode::DomainNotOnGraph, "x = " + to_string(x) + " is outside the curve's interval");
        auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - xs_.begin());
        if (xs_[i] == x) return phis_[i];
        return Rational(phis_[i - 1] + slope(i) * (x - xs_[i - 1]));
    }

    bool on_graph(const Point2& p) const { return covers(p.x) && (*this)(p.x) == p.y; }

    std::vector<Point2> graph_points() const {
        std::vector<Point2> out;
        for (std::size_t i = 0; i < xs_.size(); ++i) out.emplace_back(xs_[i], phis_[i]);
        return out;
    }

    // phi(x) = alpha |x| on [lo, hi], lo < 0 < hi
    static ConvexCurve abs_curve(const Rational& alpha, const Rational& lo, const Rational& hi) {
        return ConvexCurve({lo, 0, hi}, {Rational(-alpha * lo), 0, Rational(alpha * hi)});
    }

private:
    // slope of the piece ending at knot i
    Rational slope(std::size_t i) const { return (phis_[i] - phis_[i - 1]) / (xs_[i] - xs_[i - 1]); }

    std::vector<Rational> xs_;
    std::vector<Rational> phis_;
};

namespace detail {

// Exact var when available: collinear samples reduce to the 1-D variation
// along the line, small samples to the exhaustive search.
template <FunctionValue V>
std::optional<magnitude_t<V>> exact_variation(const SampledFunction<V>& f) {
    const auto& d = f.domain();
    if (d.size() == 1) return value_traits<V>::zero();
    bool collinear = true;
    for (std::size_t i = 2; i < d.size() && collinear; ++i) collinear = orient(d[0], d[1], d[i]) == 0;
    if (collinear) {
        Point2 dir = d[1] - d[0];
        std::vector<std::pair<Rational, V>> rows;
        for (std::size_t i = 0; i < d.size(); ++i) rows.emplace_back(dot(d[i] - d[0], dir), f.values()[i]);
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        magnitude_t<V> total = value_traits<V>::zero();
        for (std::size_t i = 1; i < rows.size(); ++i) total += value_traits<V>::abs(V(rows[i].second - rows[i - 1].second));
        return total;
    }
    if (d.size() <= kExactMaxDomain) return var_exact_small(f).value;
    return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Pullback along a convex graph

template <FunctionValue V>
struct Pullback {
    Function1D<V> fhat;                            // fhat(x) = f(x, phi(x))
    magnitude_t<V> var_fhat{};
    std::optional<magnitude_t<V>> var_graph;       // exact var of f on the graph sample
    std::optional<bool> factor2_ok;                // var_fhat <= 2 var_graph
};

template <FunctionValue V>
Pullback<V> psi_pullback(const SampledFunction<V>& f, const ConvexCurve& phi) {
    std::vector<std::pair<Rational, V>> rows;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Point2& p = f.domain()[i];
        if (!phi.on_graph(p)) {
            std::ostringstream os;
            os << "point " << p << " is not on the graph";
            throw Error(ErrorCode::DomainNotOnGraph, os.str());
        }
        rows.emplace_back(p.x, f.values()[i]);
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Rational> t;
    std::vector<V> v;
    for (auto& [x, y] : rows) {
        t.push_back(x);
        v.push_back(y);
    }
    Pullback<V> out{Function1D<V>(RealSample(std::move(t)), std::move(v)), {}, std::nullopt, std::nullopt};
    out.var_fhat = var_1d(out.fhat);
    out.var_graph = detail::exact_variation(f);
    if (out.var_graph) out.factor2_ok = !(2 * *out.var_graph < out.var_fhat);
    return out;
}

namespace detail {

// n + 1 evenly spaced values on [lo, hi] together with `extra`.
inline std::vector<Rational> axis_values(const Rational& lo, const Rational& hi, std::size_t n, std::vector<Rational> extra) {
    for (std::size_t k = 0; k <= n && n > 0; ++k)
        extra.push_back(Rational(lo + (hi - lo) * make_rational(static_cast<long>(k), static_cast<long>(n))));
    extra.push_back(lo);
    extra.push_back(hi);
    std::sort(extra.begin(), extra.end());
    extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
    return extra;
}

}  // namespace detail

template <FunctionValue V>
struct GraphFill {
    SampledFunction<V> g;
    Pullback<V> pullback;
};

// g(x, y) = fhat(x), sampled at the columns of fhat's sample (plus n evenly
// spaced columns, filled by linear interpolation) and at rows through every
// graph point (plus n evenly spaced rows).
template <FunctionValue V>
GraphFill<V> graph_fill(const SampledFunction<V>& f, const ConvexCurve& phi, const Rectangle& r, std::size_t n = 0) {
    for (const auto& p : f.domain())
        if (!r.contains(p)) {
            std::ostringstream os;
            os << "graph point " << p << " lies outside the rectangle";
            throw Error(ErrorCode::GraphOutsideRectangle, os.str());
        }
    auto pb = psi_pullback(f, phi);
    const auto& s = pb.fhat.sample;
    std::vector<Rational> cols = s.points();
    if (n > 0) {
        auto extra = detail::axis_values(s.min(), s.max(), n, {});
        cols = iota_extend(pb.fhat, extra).sample.points();
    }
    std::vector<Rational> ys;
    for (const auto& p : f.domain()) ys.push_back(p.y);
    ys = detail::axis_values(r.y_min, r.y_max, n, std::move(ys));
    std::vector<Point2> pts;
    std::vector<V> vals;
    for (const auto& y : ys)
        for (const auto& x : cols) {
            pts.emplace_back(x, y);
            vals.push_back(iota_value(pb.fhat, x));
        }
    return {SampledFunction<V>(std::move(pts), std::move(vals)), std::move(pb)};
}

// ---------------------------------------------------------------------------
// Pasting across the x-axis

template <FunctionValue V>
struct Pasting {
    SampledFunction<V> h;
    Function1D<V> trace;  // f on the sample points of [a, b] x {0}
    Rational a, b;        // hull of the trace
};

// h(x, y) = f(a, 0) for x < a, f(x, 0) on [a, b], f(b, 0) for x > b, on the
// sample of f. The band is shrunk to the hull of the sampled axis points;
// between them the trace is interpolated linearly.
template <FunctionValue V>
Pasting<V> pasting_extend(const SampledFunction<V>& f, const Rational& a, const Rational& b) {
    if (b < a) throw Error(ErrorCode::BadInput, "band needs a <= b");
    std::vector<std::pair<Rational, V>> rows;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Point2& p = f.domain()[i];
        if (p.y == 0 && a <= p.x && p.x <= b) rows.emplace_back(p.x, f.values()[i]);
    }
    if (rows.empty()) throw Error(ErrorCode::NoAxisPoints, "no sample points on the band of the x-axis");
    std::sort(rows.begin(), rows.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    std::vector<Rational> t;
    std::vector<V> v;
    for (auto& [x, y] : rows) {
        t.push_back(x);
        v.push_back(y);
    }
    Function1D<V> trace(RealSample(std::move(t)), std::move(v));
    Rational lo = trace.sample.min(), hi = trace.sample.max();
    auto h = SampledFunction<V>::tabulate(f.domain(), [&](const Point2& p) { return clamp_trace(trace, lo, hi, p.x); });
    return {std::move(h), std::move(trace), lo, hi};
}

// g(x, y) = q(clamp(x, a, b)) on the given points.
template <FunctionValue V>
SampledFunction<V> clamp_extension(const Function1D<V>& q, const Rational& a, const Rational& b, std::vector<Point2> pts) {
    return SampledFunction<V>::tabulate(std::move(pts), [&](const Point2& p) { return clamp_trace(q, a, b, p.x); });
}

// ---------------------------------------------------------------------------
// Sector fill

struct SectorSpec {
    Rectangle r;
    Point2 d1, d2;  // directions of the two sides from the centre

    Point2 centre() const { return r.centre(); }
};

template <FunctionValue V>
struct SectorFill {
    SampledFunction<V> g;
    Function1D<V> fhat;  // pullback along the normalized sides
    AffineMap normalize;  // sends the centre to 0 and the sides onto y = alpha |x|
    Rational alpha;
    std::optional<magnitude_t<V>> var_sides;  // exact var of f on the sides, when available
    magnitude_t<V> var_fhat{};
};

// Extension of f from the two sides to an n x n grid of the rectangle (plus
// the sample itself). The sides are mapped linearly onto y = |x| (or y = 0
// when they are opposite); f is held constant past its last sample on each
// side, pulled back to x, and filled constant in the normalized y.
template <FunctionValue V>
SectorFill<V> sector_fill(const SampledFunction<V>& f, const SectorSpec& spec, std::size_t n = 8) {
    const Point2 c = spec.centre();
    if (spec.d1 == Point2(0, 0) || spec.d2 == Point2(0, 0)) throw Error(ErrorCode::BadSpec, "ray direction is zero");
    Rational det = cross(spec.d1, spec.d2);
    if (det == 0 && dot(spec.d1, spec.d2) > 0) throw Error(ErrorCode::BadSpec, "the two rays coincide");

    // M d1 = (-1, alpha), M d2 = (1, alpha)
    AffineMap m;
    Rational alpha = det == 0 ? 0 : 1;
    {
        // columns: images of a basis; for opposite rays use d1 and its normal
        Point2 u = spec.d1;
        Point2 w = det == 0 ? Point2(-spec.d1.y, spec.d1.x) : spec.d2;
        Point2 mu(-1, alpha);
        Point2 mw = det == 0 ? Point2(0, 1) : Point2(1, alpha);
        // M [u w] = [mu mw]  =>  M = [mu mw] [u w]^-1
        Rational dd = cross(u, w);
        Rational i11 = w.y / dd, i12 = -w.x / dd, i21 = -u.y / dd, i22 = u.x / dd;
        m.m11 = mu.x * i11 + mw.x * i21;
        m.m12 = mu.x * i12 + mw.x * i22;
        m.m21 = mu.y * i11 + mw.y * i21;
        m.m22 = mu.y * i12 + mw.y * i22;
        m.t1 = -(m.m11 * c.x + m.m12 * c.y);
        m.t2 = -(m.m21 * c.x + m.m22 * c.y);
    }

    // the sides inside the rectangle, and f's normalized abscissae
    auto on_ray = [&](const Point2& p, const Point2& d) {
        Point2 v = p - c;
        return cross(v, d) == 0 && dot(v, d) >= 0;
    };
    std::vector<std::pair<Rational, V>> rows;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Point2& p = f.domain()[i];
        if (!spec.r.contains(p) || !(on_ray(p, spec.d1) || on_ray(p, spec.d2))) {
            std::ostringstream os;
            os << "sample point " << p << " is not on a side of the sector inside the rectangle";
            throw Error(ErrorCode::RaysNotInRectangle, os.str());
        }
        rows.emplace_back(m(p).x, f.values()[i]);
    }
    if (rows.empty()) throw Error(ErrorCode::BadInput, "no samples on the sides");
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Rational> t;
    std::vector<V> v;
    for (auto& [x, y] : rows) {
        t.push_back(x);
        v.push_back(y);
    }
    Function1D<V> fhat(RealSample(std::move(t)), std::move(v));
    Rational lo = fhat.sample.min(), hi = fhat.sample.max();

    std::vector<Point2> pts = f.domain();
    std::set<Point2> seen(pts.begin(), pts.end());
    long nl = static_cast<long>(std::max<std::size_t>(n, 1));
    for (long j = 0; j <= nl; ++j)
        for (long i = 0; i <= nl; ++i) {
            Point2 p(spec.r.x_min + spec.r.width() * make_rational(i, nl), spec.r.y_min + spec.r.height() * make_rational(j, nl));
            if (seen.insert(p).second) pts.push_back(p);
        }
    auto g = SampledFunction<V>::tabulate(std::move(pts), [&](const Point2& p) { return clamp_trace(fhat, lo, hi, m(p).x); });
    SectorFill<V> out{std::move(g), fhat, m, alpha, detail::exact_variation(f), var_1d(fhat)};
    return out;
}

// ---------------------------------------------------------------------------
// Join report

enum class JoinStatus { Verified, Indeterminate, Disjoint };

inline std::string_view to_string(JoinStatus s) {
    switch (s) {
    case JoinStatus::Verified: return "verified";
    case JoinStatus::Indeterminate: return "indeterminate";
    case JoinStatus::Disjoint: return "disjoint";
    }
    return "unknown";
}

// Every segment from sigma1 to sigma2 meets a point of the intersection.
inline JoinStatus joins_convexly(std::span<const Point2> s1, std::span<const Point2> s2) {
    std::set<Point2> a(s1.begin(), s1.end());
    std::vector<Point2> shared;
    for (const auto& p : s2)
        if (a.count(p)) shared.push_back(p);
    if (shared.empty()) return JoinStatus::Disjoint;
    for (const auto& x : s1)
        for (const auto& y : s2) {
            bool met = false;
            for (const auto& w : shared)
                if (on_segment(w, x, y) && orient(x, y, w) == 0) {
                    met = true;
                    break;
                }
            if (!met) return JoinStatus::Indeterminate;
        }
    return JoinStatus::Verified;
}

template <FunctionValue V>
struct JoinReport {
    JoinStatus status = JoinStatus::Indeterminate;
    magnitude_t<V> var1{}, var2{}, var_union{};
    bool exact1 = false, exact2 = false, exact_union = false;
    std::optional<bool> lower_ok;  // max(var1, var2) <= var_union
    std::optional<bool> upper_ok;  // var_union <= var1 + var2, only asserted for verified joins

    bool exact() const { return exact1 && exact2 && exact_union; }
};

// Exact values where the sample allows (collinear or at most 7 points);
// otherwise annealing lower bounds, and only sound comparisons are made.
template <FunctionValue V>
JoinReport<V> join_report(const SampledFunction<V>& f, const std::vector<Point2>& s1, const std::vector<Point2>& s2,
                          const SearchConfig& cfg = {}) {
    std::set<Point2> uni(s1.begin(), s1.end());
    uni.insert(s2.begin(), s2.end());
    std::set<Point2> dom(f.domain().begin(), f.domain().end());
    if (uni != dom || s1.empty() || s2.empty())
        throw Error(ErrorCode::DomainMismatch, "the two parts must be nonempty and cover exactly the sample");
    auto dedup = [](const std::vector<Point2>& s) {
        std::vector<Point2> out;
        std::set<Point2> seen;
        for (const auto& p : s)
            if (seen.insert(p).second) out.push_back(p);
        return out;
    };
    auto f1 = f.restrict_to(dedup(s1));
    auto f2 = f.restrict_to(dedup(s2));

    JoinReport<V> rep;
    rep.status = joins_convexly(f1.domain(), f2.domain());
    auto eval = [&](const SampledFunction<V>& g, magnitude_t<V>& out, bool& exact) {
        if (auto v = detail::exact_variation(g)) {
            out = *v;
            exact = true;
        } else {
            out = var_search(g, cfg).value;
            exact = false;
        }
    };
    eval(f1, rep.var1, rep.exact1);
    eval(f2, rep.var2, rep.exact2);
    eval(f, rep.var_union, rep.exact_union);
    magnitude_t<V> mx = rep.var1 < rep.var2 ? rep.var2 : rep.var1;
    // lower bounds on the left are sound against an exact right-hand side
    if (rep.exact_union) rep.lower_ok = !(rep.var_union < mx);
    if (rep.status == JoinStatus::Verified && rep.exact1 && rep.exact2)
        rep.upper_ok = !(rep.var1 + rep.var2 < rep.var_union);
    return rep;
}

}  // namespace planevar
