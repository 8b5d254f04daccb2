#pragma once

// Exact plane primitives: points, canonical lines, side predicates,
// triangles, simple polygons, rectangles and triangulations.

#include "planevar/core.hpp"

#include <array>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

namespace planevar {

struct Point2 {
    Rational x;
    Rational y;

    Point2() = default;
    Point2(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {}
    Point2(long px, long py) : x(px), y(py) {}

    friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point2& a, const Point2& b) { return !(a == b); }
    friend bool operator<(const Point2& a, const Point2& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
    friend Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator*(const Rational& s, const Point2& a) { return {s * a.x, s * a.y}; }
    friend std::ostream& operator<<(std::ostream& os, const Point2& p) {
        return os << '(' << p.x.get_str() << ',' << p.y.get_str() << ')';
    }
};

using PointList = std::vector<Point2>;

inline Rational cross(const Point2& u, const Point2& v) { return u.x * v.y - u.y * v.x; }
inline Rational dot(const Point2& u, const Point2& v) { return u.x * v.x + u.y * v.y; }

// Twice the signed area of (a, b, c); positive when counter-clockwise.
inline Rational orient(const Point2& a, const Point2& b, const Point2& c) { return cross(b - a, c - a); }

inline int sign(const Rational& q) { return sgn(q); }

inline Rational distance_squared(const Point2& a, const Point2& b) {
    Point2 d = a - b;
    return dot(d, d);
}

inline double distance(const Point2& a, const Point2& b) { return std::sqrt(distance_squared(a, b).get_d()); }

// Closed segment membership for a point already known to be collinear.
inline bool within_box(const Point2& p, const Point2& a, const Point2& b) {
    return min_rational(a.x, b.x) <= p.x && p.x <= max_rational(a.x, b.x) && min_rational(a.y, b.y) <= p.y &&
           p.y <= max_rational(a.y, b.y);
}

inline bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
    return orient(a, b, p) == 0 && within_box(p, a, b);
}

inline bool segments_intersect(const Point2& p1, const Point2& p2, const Point2& q1, const Point2& q2) {
    int d1 = sign(orient(q1, q2, p1));
    int d2 = sign(orient(q1, q2, p2));
    int d3 = sign(orient(p1, p2, q1));
    int d4 = sign(orient(p1, p2, q2));
    if (d1 * d2 < 0 && d3 * d4 < 0) return true;
    if (d1 == 0 && within_box(p1, q1, q2)) return true;
    if (d2 == 0 && within_box(p2, q1, q2)) return true;
    if (d3 == 0 && within_box(q1, p1, p2)) return true;
    if (d4 == 0 && within_box(q2, p1, p2)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Lines

enum class Side { Left, On, Right };

inline std::string_view to_string(Side s) {
    switch (s) {
    case Side::Left: return "Left";
    case Side::On: return "On";
    case Side::Right: return "Right";
    }
    return "?";
}

// { (x,y) : a*x + b*y = c } with coprime integer coefficients and the first
// nonzero of (a, b) positive, so equal point sets compare equal.
class Line {
public:
    static Line from_coefficients(Rational a, Rational b, Rational c) {
        if (a == 0 && b == 0) throw Error(ErrorCode::BadInput, "line needs (a,b) != (0,0)");
        Integer l = 1;
        for (const Rational* q : {&a, &b, &c}) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q->get_den().get_mpz_t());
        Integer ia = a.get_num() * (l / a.get_den());
        Integer ib = b.get_num() * (l / b.get_den());
        Integer ic = c.get_num() * (l / c.get_den());
        Integer g = 0;
        for (const Integer* z : {&ia, &ib, &ic}) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z->get_mpz_t());
        ia /= g;
        ib /= g;
        ic /= g;
        if (ia < 0 || (ia == 0 && ib < 0)) {
            ia = -ia;
            ib = -ib;
            ic = -ic;
        }
        return Line(Rational(ia), Rational(ib), Rational(ic));
    }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& c() const { return c_; }

    Rational residual(const Point2& p) const { return a_ * p.x + b_ * p.y - c_; }

    friend bool operator==(const Line& l, const Line& m) { return l.a_ == m.a_ && l.b_ == m.b_ && l.c_ == m.c_; }
    friend bool operator<(const Line& l, const Line& m) {
        if (l.a_ != m.a_) return l.a_ < m.a_;
        if (l.b_ != m.b_) return l.b_ < m.b_;
        return l.c_ < m.c_;
    }
    friend std::ostream& operator<<(std::ostream& os, const Line& l) {
        return os << l.a_.get_str() << "*x + " << l.b_.get_str() << "*y = " << l.c_.get_str();
    }

private:
    Line(Rational a, Rational b, Rational c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}

    Rational a_, b_, c_;
};

// Negative residual is Left, positive is Right.
inline Side side_of(const Line& l, const Point2& p) {
    int s = sign(l.residual(p));
    return s < 0 ? Side::Left : (s == 0 ? Side::On : Side::Right);
}

inline Line line_through(const Point2& p, const Point2& q) {
    if (p == q) throw Error(ErrorCode::CoincidentPoints, "line_through needs distinct points");
    Point2 d = q - p;
    Rational a = d.y;
    Rational b = -d.x;
    return Line::from_coefficients(a, b, a * p.x + b * p.y);
}

// ---------------------------------------------------------------------------
// Triangles

class Triangle {
public:
    Triangle(Point2 v0, Point2 v1, Point2 v2) : v_{std::move(v0), std::move(v1), std::move(v2)} {
        if (orient(v_[0], v_[1], v_[2]) == 0) throw Error(ErrorCode::DegenerateTriangle, "collinear vertices");
    }

    const Point2& operator[](std::size_t i) const { return v_[i]; }
    const std::array<Point2, 3>& vertices() const { return v_; }

    Rational area() const { return rabs(orient(v_[0], v_[1], v_[2])) / 2; }

    Rational max_edge_squared() const {
        return max_rational(max_rational(distance_squared(v_[0], v_[1]), distance_squared(v_[1], v_[2])),
                            distance_squared(v_[2], v_[0]));
    }

    CertifiedReal diameter() const { return certified_sqrt(max_edge_squared()); }

    // Closed containment.
    bool contains(const Point2& p) const {
        int s0 = sign(orient(v_[0], v_[1], p));
        int s1 = sign(orient(v_[1], v_[2], p));
        int s2 = sign(orient(v_[2], v_[0], p));
        bool has_neg = s0 < 0 || s1 < 0 || s2 < 0;
        bool has_pos = s0 > 0 || s1 > 0 || s2 > 0;
        return !(has_neg && has_pos);
    }

private:
    std::array<Point2, 3> v_;
};

// Area divided by the semiperimeter, as a certified interval.
inline CertifiedReal inradius(const Triangle& t) {
    CertifiedReal perimeter = certified_sqrt(distance_squared(t[0], t[1]), 80) +
                              certified_sqrt(distance_squared(t[1], t[2]), 80) +
                              certified_sqrt(distance_squared(t[2], t[0]), 80);
    Rational twice_area = 2 * t.area();
    Rational lo = twice_area / perimeter.hi;
    Rational hi = twice_area / perimeter.lo;
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

// ---------------------------------------------------------------------------
// Rectangles and polygons

struct Rectangle {
    Rational x_min, x_max, y_min, y_max;

    Rectangle() = default;
    Rectangle(Rational x0, Rational x1, Rational y0, Rational y1)
        : x_min(std::move(x0)), x_max(std::move(x1)), y_min(std::move(y0)), y_max(std::move(y1)) {
        if (!(x_min < x_max) || !(y_min < y_max)) throw Error(ErrorCode::BadInput, "rectangle needs min < max");
    }

    static Rectangle unit() { return Rectangle(0, 1, 0, 1); }

    Rational width() const { return x_max - x_min; }
    Rational height() const { return y_max - y_min; }
    Point2 centre() const { return {(x_min + x_max) / 2, (y_min + y_max) / 2}; }

    bool contains(const Point2& p) const { return x_min <= p.x && p.x <= x_max && y_min <= p.y && p.y <= y_max; }
    bool contains_in_interior(const Point2& p) const {
        return x_min < p.x && p.x < x_max && y_min < p.y && p.y < y_max;
    }

    std::array<Point2, 4> corners() const {
        return {Point2{x_min, y_min}, Point2{x_max, y_min}, Point2{x_max, y_max}, Point2{x_min, y_max}};
    }

    double diameter() const { return std::sqrt(Rational(width() * width() + height() * height()).get_d()); }
};

// Twice the signed shoelace area.
inline Rational twice_signed_area(std::span<const Point2> ring) {
    Rational s = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) s += cross(ring[i], ring[(i + 1) % ring.size()]);
    return s;
}

inline Rational shoelace_area(std::span<const Point2> ring) { return rabs(twice_signed_area(ring)) / 2; }

// A simple polygon stored counter-clockwise.
class Polygon {
public:
    explicit Polygon(std::vector<Point2> vertices) : v_(std::move(vertices)) {
        if (v_.size() < 3) throw Error(ErrorCode::NotSimple, "polygon needs at least 3 vertices");
        Rational a2 = twice_signed_area(v_);
        if (a2 == 0) throw Error(ErrorCode::NotSimple, "polygon has zero area");
        if (a2 < 0) std::reverse(v_.begin(), v_.end());
        check_simple();
    }

    static Polygon from_rectangle(const Rectangle& r) {
        auto c = r.corners();
        return Polygon({c.begin(), c.end()});
    }

    const std::vector<Point2>& vertices() const { return v_; }
    std::size_t size() const { return v_.size(); }
    Rational area() const { return shoelace_area(v_); }

    bool is_convex() const {
        for (std::size_t i = 0; i < v_.size(); ++i)
            if (orient(v_[i], v_[(i + 1) % v_.size()], v_[(i + 2) % v_.size()]) < 0) return false;
        return true;
    }

    // Closed containment (boundary included), by crossing parity.
    bool contains(const Point2& p) const {
        const std::size_t n = v_.size();
        for (std::size_t i = 0; i < n; ++i)
            if (on_segment(p, v_[i], v_[(i + 1) % n])) return true;
        bool inside = false;
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            const Point2& a = v_[i];
            const Point2& b = v_[j];
            if ((a.y > p.y) != (b.y > p.y)) {
                // x-coordinate of the edge at height p.y compared with p.x
                Rational t = (p.y - a.y) / (b.y - a.y);
                if (p.x < a.x + t * (b.x - a.x)) inside = !inside;
            }
        }
        return inside;
    }

private:
    void check_simple() const {
        const std::size_t n = v_.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (v_[i] == v_[j]) throw Error(ErrorCode::NotSimple, "repeated vertex");
        for (std::size_t i = 0; i < n; ++i) {
            const Point2& a = v_[i];
            const Point2& b = v_[(i + 1) % n];
            for (std::size_t j = i + 1; j < n; ++j) {
                const Point2& c = v_[j];
                const Point2& d = v_[(j + 1) % n];
                bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
                if (!adjacent) {
                    if (segments_intersect(a, b, c, d)) throw Error(ErrorCode::NotSimple, "edges intersect");
                    continue;
                }
                // Adjacent edges may only share their common endpoint.
                const Point2& shared = (j == i + 1) ? b : a;
                const Point2& other_i = (j == i + 1) ? a : b;
                const Point2& other_j = (j == i + 1) ? d : c;
                if (orient(other_i, shared, other_j) == 0 && dot(other_i - shared, other_j - shared) > 0)
                    throw Error(ErrorCode::NotSimple, "adjacent edges overlap");
            }
        }
    }

    std::vector<Point2> v_;
};

// ---------------------------------------------------------------------------
// Triangulations

using TriangleIndices = std::array<std::size_t, 3>;
using EdgeKey = std::pair<std::size_t, std::size_t>;  // (min, max) vertex index

inline EdgeKey edge_key(std::size_t i, std::size_t j) { return i < j ? EdgeKey{i, j} : EdgeKey{j, i}; }

struct EdgeNeighbours {
    std::size_t first;
    std::optional<std::size_t> second;
};

struct GridInfo {
    Rectangle rect;
    std::size_t n;
};

class Triangulation {
public:
    Triangulation() = default;

    // Triangles are stored counter-clockwise in the order given.
    Triangulation(std::vector<Point2> vertices, std::vector<TriangleIndices> triangles,
                  std::optional<GridInfo> grid = std::nullopt)
        : vertices_(std::move(vertices)), triangles_(std::move(triangles)), grid_(std::move(grid)) {
        for (auto& t : triangles_) {
            for (std::size_t k : t)
                if (k >= vertices_.size()) throw Error(ErrorCode::BadInput, "triangle index out of range");
            Rational o = orient(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]);
            if (o == 0) throw Error(ErrorCode::DegenerateTriangle, "zero-area triangle in triangulation");
            if (o < 0) std::swap(t[1], t[2]);
        }
        for (std::size_t ti = 0; ti < triangles_.size(); ++ti) {
            const auto& t = triangles_[ti];
            for (int e = 0; e < 3; ++e) {
                EdgeKey key = edge_key(t[e], t[(e + 1) % 3]);
                auto it = adjacency_.find(key);
                if (it == adjacency_.end()) {
                    adjacency_.emplace(key, EdgeNeighbours{ti, std::nullopt});
                } else {
                    if (it->second.second) throw Error(ErrorCode::BadInput, "edge shared by more than two triangles");
                    it->second.second = ti;
                }
            }
        }
    }

    const std::vector<Point2>& vertices() const { return vertices_; }
    const std::vector<TriangleIndices>& triangles() const { return triangles_; }
    const std::map<EdgeKey, EdgeNeighbours>& adjacency() const { return adjacency_; }
    const std::optional<GridInfo>& grid() const { return grid_; }
    std::size_t size() const { return triangles_.size(); }

    Triangle triangle(std::size_t i) const {
        const auto& t = triangles_[i];
        return Triangle(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]);
    }

    Rational total_area() const {
        Rational s = 0;
        for (std::size_t i = 0; i < size(); ++i) s += triangle(i).area();
        return s;
    }

    // Indices of every triangle containing p (boundary inclusive).
    std::vector<std::size_t> containing(const Point2& p) const {
        std::vector<std::size_t> out;
        for (std::size_t i : candidates(p))
            if (triangle(i).contains(p)) out.push_back(i);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::optional<std::size_t> locate(const Point2& p) const {
        for (std::size_t i : candidates(p))
            if (triangle(i).contains(p)) return i;
        return std::nullopt;
    }

    // Boundary edges (those with one neighbour) chained into a counter-clockwise
    // cycle of vertex indices. Requires a single boundary component.
    std::vector<std::size_t> boundary_cycle() const {
        std::map<std::size_t, std::size_t> next;
        for (const auto& t : triangles_)
            for (int e = 0; e < 3; ++e) {
                std::size_t a = t[e], b = t[(e + 1) % 3];
                if (!adjacency_.at(edge_key(a, b)).second) {
                    if (next.count(a)) throw Error(ErrorCode::NotSimple, "boundary is not a simple cycle");
                    next[a] = b;
                }
            }
        if (next.empty()) return {};
        std::vector<std::size_t> cycle;
        std::size_t start = next.begin()->first, cur = start;
        do {
            cycle.push_back(cur);
            auto it = next.find(cur);
            if (it == next.end() || cycle.size() > next.size())
                throw Error(ErrorCode::NotSimple, "boundary is not a simple cycle");
            cur = it->second;
        } while (cur != start);
        if (cycle.size() != next.size()) throw Error(ErrorCode::NotSimple, "boundary has several components");
        return cycle;
    }

private:
    std::vector<std::size_t> candidates(const Point2& p) const {
        std::vector<std::size_t> out;
        if (grid_ && grid_->rect.contains(p)) {
            const auto& r = grid_->rect;
            const Rational n(static_cast<long>(grid_->n));
            Rational fx = (p.x - r.x_min) / r.width() * n;
            Rational fy = (p.y - r.y_min) / r.height() * n;
            auto cell_range = [&](const Rational& f) {
                Integer fl = f.get_num() / f.get_den();  // f >= 0, so truncation is floor
                long lo = fl.get_si();
                long hi = lo;
                if (is_integer(f)) lo -= 1;
                lo = std::max(lo, 0L);
                hi = std::min(hi, static_cast<long>(grid_->n) - 1);
                return std::pair<long, long>{lo, hi};
            };
            auto [ix0, ix1] = cell_range(fx);
            auto [iy0, iy1] = cell_range(fy);
            for (long j = iy0; j <= iy1; ++j)
                for (long i = ix0; i <= ix1; ++i) {
                    std::size_t cell = static_cast<std::size_t>(j) * grid_->n + static_cast<std::size_t>(i);
                    out.push_back(2 * cell);
                    out.push_back(2 * cell + 1);
                }
            return out;
        }
        out.resize(triangles_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
        return out;
    }

    std::vector<Point2> vertices_;
    std::vector<TriangleIndices> triangles_;
    std::map<EdgeKey, EdgeNeighbours> adjacency_;
    std::optional<GridInfo> grid_;
};

// Ear clipping over a simple polygon. Triangles are emitted in clip order;
// every clipped ear shares its closing diagonal with the polygon that remains,
// so the reversed order grows a connected region one adjoining triangle at a
// time. Straight (collinear) vertices are never ear tips; they stay as
// triangle corners. If only collinear vertices remain they are dropped as a
// zero-area ear.
inline Triangulation ear_clip(const Polygon& polygon) {
    const auto& pts = polygon.vertices();
    std::vector<std::size_t> ring(pts.size());
    for (std::size_t i = 0; i < ring.size(); ++i) ring[i] = i;
    std::vector<TriangleIndices> tris;

    auto is_ear = [&](std::size_t k) {
        const std::size_t m = ring.size();
        const Point2& a = pts[ring[(k + m - 1) % m]];
        const Point2& b = pts[ring[k]];
        const Point2& c = pts[ring[(k + 1) % m]];
        if (orient(a, b, c) <= 0) return false;
        Triangle t(a, b, c);
        for (std::size_t j = 0; j < m; ++j) {
            if (j == k || j == (k + 1) % m || j == (k + m - 1) % m) continue;
            const Point2& p = pts[ring[j]];
            if (p == a || p == b || p == c) continue;
            if (t.contains(p)) return false;
        }
        return true;
    };

    while (ring.size() > 3) {
        bool clipped = false;
        for (std::size_t k = 0; k < ring.size(); ++k) {
            if (!is_ear(k)) continue;
            const std::size_t m = ring.size();
            tris.push_back({ring[(k + m - 1) % m], ring[k], ring[(k + 1) % m]});
            ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(k));
            clipped = true;
            break;
        }
        if (clipped) continue;
        bool all_collinear = true;
        for (std::size_t k = 0; k < ring.size() && all_collinear; ++k)
            if (orient(pts[ring[0]], pts[ring[1 % ring.size()]], pts[ring[k]]) != 0) all_collinear = false;
        if (all_collinear) break;
        throw Error(ErrorCode::NotSimple, "no ear found; polygon is not simple");
    }
    if (ring.size() == 3 && orient(pts[ring[0]], pts[ring[1]], pts[ring[2]]) != 0)
        tris.push_back({ring[0], ring[1], ring[2]});
    return Triangulation(pts, std::move(tris));
}

// Grid lines at multiples of side/n; each cell split by its lower-left to
// upper-right diagonal. Cell (i, j) yields triangles 2*(j*n+i) (below the
// diagonal) and 2*(j*n+i)+1 (above it).
inline Triangulation grid_triangulation(const Rectangle& r, std::size_t n) {
    if (n == 0) throw Error(ErrorCode::BadInput, "grid needs n >= 1");
    const Rational nn(static_cast<long>(n));
    std::vector<Point2> verts;
    verts.reserve((n + 1) * (n + 1));
    for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t i = 0; i <= n; ++i)
            verts.emplace_back(r.x_min + r.width() * Rational(static_cast<long>(i)) / nn,
                               r.y_min + r.height() * Rational(static_cast<long>(j)) / nn);
    auto id = [n](std::size_t i, std::size_t j) { return j * (n + 1) + i; };
    std::vector<TriangleIndices> tris;
    tris.reserve(2 * n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    return Triangulation(std::move(verts), std::move(tris), GridInfo{r, n});
}

}  // namespace planevar
