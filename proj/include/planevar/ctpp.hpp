#pragma once

// Continuous triangularly piecewise planar (CTPP) functions: a triangulation
// with one planar piece per triangle, agreeing along shared edges.

#include "planevar/onedim.hpp"
#include "planevar/sampled.hpp"

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace planevar {

template <FunctionValue V>
class CtppFunction {
public:
    CtppFunction() = default;

    CtppFunction(Triangulation tri, std::vector<PlanarCoeffs<V>> coeffs)
        : tri_(std::move(tri)), coeffs_(std::move(coeffs)) {
        if (tri_.size() != coeffs_.size()) throw Error(ErrorCode::BadInput, "one planar piece per triangle required");
    }

    // The unique CTPP function with the given values at the vertices.
    static CtppFunction from_vertex_values(Triangulation tri, const std::vector<V>& values) {
        if (values.size() != tri.vertices().size()) throw Error(ErrorCode::BadInput, "one value per vertex required");
        std::vector<PlanarCoeffs<V>> coeffs;
        coeffs.reserve(tri.size());
        for (const auto& t : tri.triangles())
            coeffs.push_back(plane_through<V>({tri.vertices()[t[0]], tri.vertices()[t[1]], tri.vertices()[t[2]]},
                                              {values[t[0]], values[t[1]], values[t[2]]}));
        return CtppFunction(std::move(tri), std::move(coeffs));
    }

    const Triangulation& triangulation() const { return tri_; }
    const std::vector<PlanarCoeffs<V>>& coeffs() const { return coeffs_; }

    std::optional<V> try_eval(const Point2& p) const {
        auto t = tri_.locate(p);
        if (!t) return std::nullopt;
        return coeffs_[*t](p);
    }

    V operator()(const Point2& p) const {
        auto v = try_eval(p);
        if (!v) {
            std::ostringstream os;
            os << "point " << p << " is outside the triangulated polygon";
            throw Error(ErrorCode::PointOutsidePolygon, os.str());
        }
        return *v;
    }

    // Value at each vertex, read from the first triangle using it.
    std::vector<V> vertex_values() const {
        std::vector<std::optional<V>> vals(tri_.vertices().size());
        for (std::size_t i = 0; i < tri_.size(); ++i)
            for (auto k : tri_.triangles()[i])
                if (!vals[k]) vals[k] = coeffs_[i](tri_.vertices()[k]);
        std::vector<V> out;
        for (auto& v : vals) out.push_back(v.value_or(V{}));
        return out;
    }

    magnitude_t<V> sup_norm() const {
        magnitude_t<V> best = value_traits<V>::zero();
        for (const auto& v : vertex_values()) {
            magnitude_t<V> m = value_traits<V>::abs(v);
            if (best < m) best = m;
        }
        return best;
    }

private:
    Triangulation tri_;
    std::vector<PlanarCoeffs<V>> coeffs_;
};

template <FunctionValue V>
V eval_ctpp(const CtppFunction<V>& g, const Point2& p) {
    return g(p);
}

template <FunctionValue V>
SampledFunction<V> sample_ctpp(const CtppFunction<V>& g, std::vector<Point2> pts) {
    return SampledFunction<V>::tabulate(std::move(pts), [&](const Point2& p) { return g(p); });
}

template <FunctionValue V>
struct EdgeViolation {
    EdgeKey edge;
    std::size_t first_triangle;
    std::size_t second_triangle;
    Point2 at;
    V first_value;
    V second_value;
};

// Endpoint agreement on every shared edge; empty result means valid.
template <FunctionValue V>
std::vector<EdgeViolation<V>> validate_ctpp(const CtppFunction<V>& g) {
    std::vector<EdgeViolation<V>> out;
    const auto& tri = g.triangulation();
    for (const auto& [key, nb] : tri.adjacency()) {
        if (!nb.second) continue;
        for (std::size_t end : {key.first, key.second}) {
            const Point2& p = tri.vertices()[end];
            V a = g.coeffs()[nb.first](p);
            V b = g.coeffs()[*nb.second](p);
            if (!value_traits<V>::equal(a, b)) out.push_back({key, nb.first, *nb.second, p, a, b});
        }
    }
    return out;
}

enum class PointTag { Planar, Edge, Vertex };

inline std::string_view to_string(PointTag t) {
    switch (t) {
    case PointTag::Planar: return "Planar";
    case PointTag::Edge: return "Edge";
    case PointTag::Vertex: return "Vertex";
    }
    return "Unknown";
}

struct PointClass {
    PointTag tag;
    std::size_t triangle_count;
};

template <FunctionValue V>
PointClass classify_point(const CtppFunction<V>& g, const Point2& p) {
    std::size_t n = g.triangulation().containing(p).size();
    if (n == 0) throw Error(ErrorCode::PointOutsidePolygon, "point is outside the triangulated polygon");
    PointTag tag = n == 1 ? PointTag::Planar : (n == 2 ? PointTag::Edge : PointTag::Vertex);
    return {tag, n};
}

template <FunctionValue V>
using VertexOracle = std::function<std::optional<V>(const Point2&)>;

// The CTPP function on the grid triangulation agreeing with the oracle at
// every grid vertex.
template <FunctionValue V>
CtppFunction<V> interpolate_grid(const VertexOracle<V>& oracle, const Rectangle& r, std::size_t n) {
    auto tri = grid_triangulation(r, n);
    std::vector<V> values;
    for (const auto& v : tri.vertices()) {
        auto val = oracle(v);
        if (!val) {
            std::ostringstream os;
            os << "oracle has no value at grid vertex " << v;
            throw Error(ErrorCode::OracleMissingVertex, os.str());
        }
        values.push_back(*val);
    }
    return CtppFunction<V>::from_vertex_values(std::move(tri), values);
}

// ---------------------------------------------------------------------------
// Lipschitz constant of a planar piece and the inradius bound

// Squared operator norm of (x, y) -> a x + b y as a map into R^2 (complex
// values) or R (real values).
template <FunctionValue V>
magnitude_t<V> gradient_norm_squared(const PlanarCoeffs<V>& c) {
    if constexpr (value_traits<V>::exact) {
        return Rational(c.a * c.a + c.b * c.b);
    } else {
        // largest eigenvalue of M^T M for M = [[Re a, Re b], [Im a, Im b]]
        double p = std::norm(c.a), s = std::norm(c.b);
        double r = c.a.real() * c.b.real() + c.a.imag() * c.b.imag();
        double tr = p + s, det = p * s - r * r;
        return tr / 2 + std::sqrt(std::max(0.0, tr * tr / 4 - det));
    }
}

struct TriangleBoundReport {
    std::size_t checked = 0;
    std::size_t violations = 0;
    std::size_t undecided = 0;  // inradius interval too wide to decide
};

// |grad F| <= (2 / r_A) max |F| on A for every piece.
template <FunctionValue V>
TriangleBoundReport check_triangle_bound(const CtppFunction<V>& g) {
    TriangleBoundReport rep;
    const auto& tri = g.triangulation();
    for (std::size_t i = 0; i < tri.size(); ++i) {
        Triangle t = tri.triangle(i);
        const auto& c = g.coeffs()[i];
        magnitude_t<V> m = value_traits<V>::zero();
        for (const auto& v : t.vertices()) {
            magnitude_t<V> a = value_traits<V>::abs(c(v));
            if (m < a) m = a;
        }
        auto r = inradius(t);
        magnitude_t<V> g2 = gradient_norm_squared(c);
        ++rep.checked;
        if constexpr (value_traits<V>::exact) {
            // |grad|^2 r^2 <= 4 m^2, decided with each end of the inradius interval
            bool holds_hi = Rational(g2 * r.hi * r.hi) <= Rational(4 * m * m);
            bool holds_lo = Rational(g2 * r.lo * r.lo) <= Rational(4 * m * m);
            if (!holds_lo) ++rep.violations;
            else if (!holds_hi) ++rep.undecided;
        } else {
            double lhs = std::sqrt(g2) * r.hi.get_d();
            if (lhs > 2 * m * (1 + 1e-12) + 1e-12) ++rep.violations;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Extension to a larger polygon

namespace detail {

// Convex polygon (counter-clockwise) clipped to the closed half-plane left of a->b.
inline std::vector<Point2> clip_half_plane(const std::vector<Point2>& poly, const Point2& a, const Point2& b) {
    std::vector<Point2> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& p = poly[i];
        const Point2& q = poly[(i + 1) % n];
        Rational sp = orient(a, b, p), sq = orient(a, b, q);
        if (sp >= 0) out.push_back(p);
        if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
            Rational t = sp / (sp - sq);
            out.emplace_back(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y));
        }
    }
    std::vector<Point2> dedup;
    for (const auto& p : out)
        if (dedup.empty() || dedup.back() != p) dedup.push_back(p);
    while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
    return dedup;
}

inline std::vector<Point2> clip_to_triangle(std::vector<Point2> poly, const Triangle& t) {
    std::array<Point2, 3> v = t.vertices();
    if (orient(v[0], v[1], v[2]) < 0) std::swap(v[1], v[2]);
    for (int e = 0; e < 3 && poly.size() >= 3; ++e) poly = clip_half_plane(poly, v[e], v[(e + 1) % 3]);
    return poly;
}

// Convex pieces carrying a planar function, assembled into a conforming
// triangulation: edges are split at every piece vertex lying on them and each
// piece is fanned from its vertex centroid.
template <FunctionValue V>
CtppFunction<V> assemble_pieces(const std::vector<std::pair<std::vector<Point2>, PlanarCoeffs<V>>>& pieces) {
    std::map<Point2, std::size_t> index;
    std::vector<Point2> verts;
    auto id = [&](const Point2& p) {
        auto [it, fresh] = index.emplace(p, verts.size());
        if (fresh) verts.push_back(p);
        return it->second;
    };
    for (const auto& [poly, c] : pieces)
        for (const auto& p : poly) id(p);
    const std::vector<Point2> corners = verts;

    std::vector<TriangleIndices> tris;
    std::vector<PlanarCoeffs<V>> coeffs;
    for (const auto& [poly, c] : pieces) {
        std::vector<Point2> ring;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Point2& a = poly[i];
            const Point2& b = poly[(i + 1) % poly.size()];
            ring.push_back(a);
            std::vector<Point2> inner;
            for (const auto& p : corners)
                if (p != a && p != b && orient(a, b, p) == 0 && on_segment(p, a, b)) inner.push_back(p);
            std::sort(inner.begin(), inner.end(),
                      [&](const Point2& u, const Point2& v) { return distance_squared(a, u) < distance_squared(a, v); });
            ring.insert(ring.end(), inner.begin(), inner.end());
        }
        Rational cx = 0, cy = 0;
        for (const auto& p : poly) {
            cx += p.x;
            cy += p.y;
        }
        Point2 centre(cx / static_cast<long>(poly.size()), cy / static_cast<long>(poly.size()));
        std::size_t ci = id(centre);
        for (std::size_t i = 0; i < ring.size(); ++i) {
            tris.push_back({ci, id(ring[i]), id(ring[(i + 1) % ring.size()])});
            coeffs.push_back(c);
        }
    }
    return CtppFunction<V>(Triangulation(std::move(verts), std::move(tris)), std::move(coeffs));
}

}  // namespace detail

// Extends g from the polygon P it triangulates to a CTPP function on P0.
// A rectangle R containing P in its interior and P0 is triangulated outside P
// by ear clipping two simple pieces (R minus P cut along horizontal segments
// through P's leftmost and rightmost vertices). Values at new vertices are
// fixed triangle by triangle: a triangle with two known corners gets the
// least-gradient plane through them, one with a single known corner is
// constant. The result is restricted to P0 by clipping.
template <FunctionValue V>
CtppFunction<V> extend_to_polygon(const CtppFunction<V>& g, const Polygon& p0,
                                  std::optional<Rectangle> rect = std::nullopt) {
    using T = value_traits<V>;
    const auto& tri = g.triangulation();
    auto cycle = tri.boundary_cycle();
    std::vector<Point2> ring;
    for (auto k : cycle) ring.push_back(tri.vertices()[k]);

    Rational x0 = ring[0].x, x1 = ring[0].x, y0 = ring[0].y, y1 = ring[0].y;
    for (const auto& pts : {std::cref(ring), std::cref(p0.vertices())})
        for (const auto& p : pts.get()) {
            x0 = min_rational(x0, p.x);
            x1 = max_rational(x1, p.x);
            y0 = min_rational(y0, p.y);
            y1 = max_rational(y1, p.y);
        }
    Rectangle r = rect ? *rect : Rectangle(x0 - 1, x1 + 1, y0 - 1, y1 + 1);
    for (const auto& p : ring)
        if (!r.contains_in_interior(p))
            throw Error(ErrorCode::NotContainable, "rectangle must contain the triangulated polygon in its interior");
    for (const auto& p : p0.vertices())
        if (!r.contains(p)) throw Error(ErrorCode::NotContainable, "rectangle must contain the target polygon");

    // leftmost (then lowest) and rightmost (then highest) boundary vertices
    std::size_t il = 0, ir = 0;
    for (std::size_t i = 1; i < ring.size(); ++i) {
        if (ring[i].x < ring[il].x || (ring[i].x == ring[il].x && ring[i].y < ring[il].y)) il = i;
        if (ring[ir].x < ring[i].x || (ring[i].x == ring[ir].x && ring[ir].y < ring[i].y)) ir = i;
    }
    // ring is counter-clockwise: from the rightmost vertex it runs over the top to the leftmost
    std::vector<Point2> upper_chain, lower_chain;
    for (std::size_t k = ir;; k = (k + 1) % ring.size()) {
        upper_chain.push_back(ring[k]);
        if (k == il) break;
    }
    for (std::size_t k = il;; k = (k + 1) % ring.size()) {
        lower_chain.push_back(ring[k]);
        if (k == ir) break;
    }
    Point2 a(r.x_min, ring[il].y), b(r.x_max, ring[ir].y);
    std::vector<Point2> upper{a};
    if (a.y != r.y_max) upper.emplace_back(r.x_min, r.y_max);
    if (b.y != r.y_max) upper.emplace_back(r.x_max, r.y_max);
    upper.push_back(b);
    upper.insert(upper.end(), upper_chain.begin(), upper_chain.end());
    std::vector<Point2> lower{a};
    lower.insert(lower.end(), lower_chain.begin(), lower_chain.end());
    lower.push_back(b);
    if (b.y != r.y_min) lower.emplace_back(r.x_max, r.y_min);
    if (a.y != r.y_min) lower.emplace_back(r.x_min, r.y_min);

    // outer triangles over a shared vertex table
    std::map<Point2, std::size_t> index;
    std::vector<Point2> verts;
    std::vector<std::optional<V>> value;
    auto id = [&](const Point2& p) {
        auto [it, fresh] = index.emplace(p, verts.size());
        if (fresh) {
            verts.push_back(p);
            value.emplace_back();
        }
        return it->second;
    };
    auto gv = g.vertex_values();
    for (auto k : cycle) value[id(tri.vertices()[k])] = gv[k];
    std::vector<TriangleIndices> outer;
    for (const auto* piece : {&upper, &lower}) {
        auto t = ear_clip(Polygon(*piece));
        for (const auto& tr : t.triangles()) outer.push_back({id(t.vertices()[tr[0]]), id(t.vertices()[tr[1]]), id(t.vertices()[tr[2]])});
    }

    std::vector<bool> done(outer.size(), false);
    for (std::size_t remaining = outer.size(); remaining > 0;) {
        bool progressed = false;
        for (int need : {2, 1, 0}) {
            for (std::size_t i = 0; i < outer.size(); ++i) {
                if (done[i]) continue;
                int known = 0;
                for (auto k : outer[i]) known += value[k] ? 1 : 0;
                if (known < need) continue;
                std::vector<std::size_t> fixed, free;
                for (auto k : outer[i]) (value[k] ? fixed : free).push_back(k);
                if (fixed.size() >= 2 && !free.empty()) {
                    const Point2& p1 = verts[fixed[0]];
                    const Point2& p2 = verts[fixed[1]];
                    Point2 d = p2 - p1;
                    Rational len2 = dot(d, d);
                    // gradient along p2 - p1 with the prescribed difference
                    V dv = V(*value[fixed[1]] - *value[fixed[0]]);
                    Rational s = dot(d, verts[free[0]] - p1) / len2;
                    value[free[0]] = V(*value[fixed[0]] + dv * T::from_rational(s));
                } else if (fixed.size() == 1) {
                    for (auto k : free) value[k] = *value[fixed[0]];
                } else if (fixed.empty()) {
                    for (auto k : free) value[k] = V{};
                }
                done[i] = true;
                --remaining;
                progressed = true;
                break;
            }
            if (progressed) break;
        }
        if (!progressed) break;
    }

    std::vector<std::pair<std::vector<Point2>, PlanarCoeffs<V>>> sources;
    for (std::size_t i = 0; i < tri.size(); ++i) {
        auto t = tri.triangle(i);
        sources.push_back({{t[0], t[1], t[2]}, g.coeffs()[i]});
    }
    for (const auto& t : outer) {
        std::array<Point2, 3> p{verts[t[0]], verts[t[1]], verts[t[2]]};
        sources.push_back({{p[0], p[1], p[2]}, plane_through<V>(p, {*value[t[0]], *value[t[1]], *value[t[2]]})});
    }
    for (auto& [poly, c] : sources)
        if (orient(poly[0], poly[1], poly[2]) < 0) std::swap(poly[1], poly[2]);

    auto target = ear_clip(p0);
    std::vector<std::pair<std::vector<Point2>, PlanarCoeffs<V>>> pieces;
    for (const auto& [poly, c] : sources)
        for (std::size_t j = 0; j < target.size(); ++j) {
            auto clipped = detail::clip_to_triangle(poly, target.triangle(j));
            if (clipped.size() >= 3 && twice_signed_area(clipped) != 0) pieces.push_back({std::move(clipped), c});
        }
    return detail::assemble_pieces(pieces);
}

// ---------------------------------------------------------------------------
// Star-planar functions

namespace detail {

// Closed sector swept counter-clockwise from direction u to direction v.
inline bool in_sector(const Point2& d, const Point2& u, const Point2& v) {
    if (d.x == 0 && d.y == 0) return true;
    if (cross(u, v) > 0) return cross(u, d) >= 0 && cross(d, v) >= 0;
    if (cross(u, v) == 0 && dot(u, v) > 0) return true;  // a single ray sweeping the full turn
    return !(cross(u, d) < 0 && cross(d, v) < 0);
}

}  // namespace detail

// 2 n sup |f(x) - f(w)| for f planar on each of the n closed sectors cut out
// by rays from the centre (rays in counter-clockwise order; sector k runs from
// ray k to ray k+1).
template <FunctionValue V>
magnitude_t<V> star_planar_bound(const SampledFunction<V>& f, const Point2& centre, const std::vector<Point2>& rays,
                                 const std::vector<PlanarCoeffs<V>>& sector_coeffs) {
    using T = value_traits<V>;
    const std::size_t n = rays.size();
    if (n < 2 || sector_coeffs.size() != n) throw Error(ErrorCode::BadInput, "need n >= 2 rays and one planar piece per sector");
    for (std::size_t i = 0; i < f.size(); ++i) {
        Point2 d = f.domain()[i] - centre;
        bool covered = false;
        for (std::size_t k = 0; k < n; ++k) {
            if (!detail::in_sector(d, rays[k], rays[(k + 1) % n])) continue;
            covered = true;
            if (!T::equal(sector_coeffs[k](f.domain()[i]), f.values()[i])) {
                std::ostringstream os;
                os << "sector " << k << " does not reproduce the value at " << f.domain()[i];
                throw Error(ErrorCode::NotStarPlanar, os.str());
            }
        }
        if (!covered) throw Error(ErrorCode::NotStarPlanar, "sample point lies in no sector");
    }
    magnitude_t<V> spread = T::zero();
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) {
            magnitude_t<V> d = T::abs(V(f.values()[i] - f.values()[j]));
            if (spread < d) spread = d;
        }
    return magnitude_t<V>(spread * static_cast<long>(2 * n));
}

// ---------------------------------------------------------------------------
// Bumps

// 1 on [s, delta] and [-delta, -s], 0 on [-s/2, s/2], linear in between.
struct GBump {
    Rational s;
    Rational delta;

    GBump(Rational s_, Rational delta_) : s(std::move(s_)), delta(std::move(delta_)) {
        if (!(s > 0) || !(delta > 0)) throw Error(ErrorCode::BadSpec, "bump parameters must be positive");
        if (delta < s) throw Error(ErrorCode::BadSpec, "bump needs s <= delta");
    }

    Rational operator()(const Rational& t) const {
        Rational a = rabs(t);
        if (a * 2 <= s) return 0;
        if (a >= s) return 1;
        return Rational(2 * a / s - 1);
    }

    // Samples on [-delta, delta] including every breakpoint, plus `extra`
    // evenly spaced points.
    Function1D<Rational> sample(std::size_t extra = 8) const {
        std::vector<Rational> t{-delta, -s, Rational(-s / 2), Rational(s / 2), s, delta, Rational(0)};
        for (std::size_t k = 0; k <= extra; ++k)
            t.push_back(-delta + 2 * delta * make_rational(static_cast<long>(k), static_cast<long>(std::max<std::size_t>(extra, 1))));
        auto rs = RealSample::from_unsorted(std::move(t));
        return Function1D<Rational>::tabulate(rs, *this);
    }

    Rational chi(const Point2& p) const { return (*this)(p.x) * (*this)(p.y); }
};

inline Rational pyramid(const Point2& p) {
    Rational m = min_rational(Rational(1 - rabs(p.x)), Rational(1 - rabs(p.y)));
    return max_rational(m, 0);
}

// The pyramid on [-1, 1]^2 as four triangles meeting at the origin.
inline CtppFunction<Rational> pyramid_ctpp() {
    std::vector<Point2> v{Point2(-1, -1), Point2(1, -1), Point2(1, 1), Point2(-1, 1), Point2(0, 0)};
    std::vector<TriangleIndices> t{{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
    return CtppFunction<Rational>::from_vertex_values(Triangulation(v, t), {0, 0, 0, 0, 1});
}

// Sum of CTPP functions (possibly on different triangulations) and scaled,
// shifted pyramids c * b((x - centre) / delta), evaluated pointwise.
template <FunctionValue V>
class LazyCtppSum {
public:
    struct Bump {
        V coef;
        Point2 centre;
        Rational delta;
    };

    void add(CtppFunction<V> g) { terms_.push_back(std::move(g)); }
    void add_bump(V coef, Point2 centre, Rational delta) { bumps_.push_back({std::move(coef), std::move(centre), std::move(delta)}); }

    const std::vector<CtppFunction<V>>& terms() const { return terms_; }
    const std::vector<Bump>& bumps() const { return bumps_; }

    V operator()(const Point2& p) const {
        V total{};
        for (const auto& g : terms_) total = V(total + g(p));
        for (const auto& b : bumps_) {
            Point2 u((p.x - b.centre.x) / b.delta, (p.y - b.centre.y) / b.delta);
            total = V(total + b.coef * value_traits<V>::from_rational(pyramid(u)));
        }
        return total;
    }

    SampledFunction<V> sample(std::vector<Point2> pts) const {
        return SampledFunction<V>::tabulate(std::move(pts), [&](const Point2& p) { return (*this)(p); });
    }

private:
    std::vector<CtppFunction<V>> terms_;
    std::vector<Bump> bumps_;
};

}  // namespace planevar
