#pragma once

// Bivariate polynomials with exact coefficients, tensor Bernstein
// approximants, the C^2 -> polynomial construction with its measured error
// report, the grid-interpolation report for C^1 functions, and the CTPP
// corrections that match prescribed point values.

#include "planevar/ctpp.hpp"
#include "planevar/variation.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

namespace planevar {

// p(x, y) = sum c[m][n] x^m y^n. Trailing zero rows and columns are trimmed so
// equal polynomials have equal tables; the zero polynomial has an empty table.
class Poly2 {
public:
    using Table = std::vector<std::vector<Rational>>;

    Poly2() = default;

    explicit Poly2(Table c) : c_(std::move(c)) { normalize(); }

    static Poly2 constant(const Rational& k) { return Poly2(Table{{k}}); }

    static Poly2 monomial(std::size_t m, std::size_t n, const Rational& coef = 1) {
        Table t(m + 1, std::vector<Rational>(n + 1));
        t[m][n] = coef;
        return Poly2(std::move(t));
    }

    const Table& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    // -1 for the zero polynomial
    long degree_x() const { return static_cast<long>(c_.size()) - 1; }
    long degree_y() const { return c_.empty() ? -1 : static_cast<long>(c_[0].size()) - 1; }

    Rational coeff(std::size_t m, std::size_t n) const {
        if (m >= c_.size() || n >= c_[m].size()) return 0;
        return c_[m][n];
    }

    // Exact value; integer Horner over a common denominator.
    Rational operator()(const Rational& x, const Rational& y) const {
        if (c_.empty()) return 0;
        const Integer& a = x.get_num();
        const Integer& b = x.get_den();
        const Integer& c = y.get_num();
        const Integer& e = y.get_den();
        std::size_t dx = c_.size() - 1, dy = c_[0].size() - 1;
        std::vector<Integer> bpow(dx + 1, 1), epow(dy + 1, 1);
        for (std::size_t i = 1; i <= dx; ++i) bpow[i] = bpow[i - 1] * b;
        for (std::size_t i = 1; i <= dy; ++i) epow[i] = epow[i - 1] * e;
        Integer total = 0;
        for (std::size_t m = dx + 1; m-- > 0;) {
            Integer row = ints_[m][dy];
            for (std::size_t n = dy; n-- > 0;) row = row * c + ints_[m][n] * epow[dy - n];
            total = total * a + row * bpow[dx - m];
        }
        Rational r(total, den_ * bpow[dx] * epow[dy]);
        r.canonicalize();
        return r;
    }

    Rational operator()(const Point2& p) const { return (*this)(p.x, p.y); }

    Poly2 dx() const {
        Table t;
        for (std::size_t m = 1; m < c_.size(); ++m) {
            t.emplace_back();
            for (const auto& v : c_[m]) t.back().push_back(Rational(v * static_cast<long>(m)));
        }
        return Poly2(std::move(t));
    }

    Poly2 dy() const {
        Table t;
        for (const auto& row : c_) {
            t.emplace_back();
            for (std::size_t n = 1; n < row.size(); ++n) t.back().push_back(Rational(row[n] * static_cast<long>(n)));
        }
        return Poly2(std::move(t));
    }

    // (x, y) -> integral of p(t, y) dt over [0, x]
    Poly2 integrate_x() const {
        if (c_.empty()) return {};
        Table t(c_.size() + 1, std::vector<Rational>(c_[0].size()));
        for (std::size_t m = 0; m < c_.size(); ++m)
            for (std::size_t n = 0; n < c_[m].size(); ++n) t[m + 1][n] = c_[m][n] / static_cast<long>(m + 1);
        return Poly2(std::move(t));
    }

    // (x, y) -> integral of p(x, s) ds over [0, y]
    Poly2 integrate_y() const {
        Table t;
        for (const auto& row : c_) {
            t.emplace_back(1, Rational(0));
            for (std::size_t n = 0; n < row.size(); ++n) t.back().push_back(Rational(row[n] / static_cast<long>(n + 1)));
        }
        return Poly2(std::move(t));
    }

    // p(x, y0) as a polynomial in x alone.
    Poly2 at_y(const Rational& y0) const {
        Table t;
        for (const auto& row : c_) {
            Rational v = 0, pw = 1;
            for (const auto& k : row) {
                v += k * pw;
                pw *= y0;
            }
            t.push_back({v});
        }
        return Poly2(std::move(t));
    }

    // p(x0, y) as a polynomial in y alone.
    Poly2 at_x(const Rational& x0) const {
        if (c_.empty()) return {};
        std::vector<Rational> row(c_[0].size());
        Rational pw = 1;
        for (const auto& r : c_) {
            for (std::size_t n = 0; n < r.size(); ++n) row[n] += r[n] * pw;
            pw *= x0;
        }
        return Poly2(Table{row});
    }

    // Coefficients in t of p(origin + t * dir).
    std::vector<Rational> restrict_to_line(const Point2& origin, const Point2& dir) const {
        auto mul = [](const std::vector<Rational>& u, const std::vector<Rational>& v) {
            std::vector<Rational> w(u.size() + v.size() - 1);
            for (std::size_t i = 0; i < u.size(); ++i)
                for (std::size_t j = 0; j < v.size(); ++j) w[i + j] += u[i] * v[j];
            return w;
        };
        std::vector<Rational> out{0};
        std::vector<Rational> lx{origin.x, dir.x}, ly{origin.y, dir.y};
        std::vector<Rational> xm{1};
        for (const auto& row : c_) {
            std::vector<Rational> yn{1};
            for (const auto& k : row) {
                auto term = mul(xm, yn);
                if (out.size() < term.size()) out.resize(term.size());
                for (std::size_t i = 0; i < term.size(); ++i) out[i] += k * term[i];
                yn = mul(yn, ly);
            }
            xm = mul(xm, lx);
        }
        while (out.size() > 1 && out.back() == 0) out.pop_back();
        return out;
    }

    friend Poly2 operator+(const Poly2& p, const Poly2& q) { return combine(p, q, 1); }
    friend Poly2 operator-(const Poly2& p, const Poly2& q) { return combine(p, q, -1); }

    friend Poly2 operator*(const Rational& k, const Poly2& p) {
        Table t = p.c_;
        for (auto& row : t)
            for (auto& v : row) v *= k;
        return Poly2(std::move(t));
    }

    friend bool operator==(const Poly2& p, const Poly2& q) { return p.c_ == q.c_; }

private:
    static Poly2 combine(const Poly2& p, const Poly2& q, int s) {
        std::size_t rows = std::max(p.c_.size(), q.c_.size());
        std::size_t cols = std::max(p.c_.empty() ? 0 : p.c_[0].size(), q.c_.empty() ? 0 : q.c_[0].size());
        Table t(rows, std::vector<Rational>(cols));
        for (std::size_t m = 0; m < rows; ++m)
            for (std::size_t n = 0; n < cols; ++n) t[m][n] = p.coeff(m, n) + s * q.coeff(m, n);
        return Poly2(std::move(t));
    }

    void normalize() {
        std::size_t cols = 0;
        for (const auto& row : c_) cols = std::max(cols, row.size());
        for (auto& row : c_) row.resize(cols);
        for (auto& row : c_)
            for (auto& v : row) v.canonicalize();
        // trim trailing zero columns, then trailing zero rows
        while (cols > 0) {
            bool zero = true;
            for (const auto& row : c_) zero = zero && row[cols - 1] == 0;
            if (!zero) break;
            --cols;
            for (auto& row : c_) row.pop_back();
        }
        while (!c_.empty() && std::all_of(c_.back().begin(), c_.back().end(), [](const Rational& v) { return v == 0; }))
            c_.pop_back();
        if (cols == 0) c_.clear();

        den_ = 1;
        for (const auto& row : c_)
            for (const auto& v : row) mpz_lcm(den_.get_mpz_t(), den_.get_mpz_t(), v.get_den_mpz_t());
        ints_.assign(c_.size(), std::vector<Integer>(cols));
        for (std::size_t m = 0; m < c_.size(); ++m)
            for (std::size_t n = 0; n < cols; ++n) ints_[m][n] = c_[m][n].get_num() * (den_ / c_[m][n].get_den());
    }

    Table c_;
    std::vector<std::vector<Integer>> ints_;
    Integer den_ = 1;
};

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

using RealOracle = std::function<Rational(const Point2&)>;

// Wraps a double-valued function; each sample is taken exactly as the
// double it returns.
inline RealOracle from_double(std::function<double(double, double)> fn) {
    return [fn = std::move(fn)](const Point2& p) { return Rational(fn(p.x.get_d(), p.y.get_d())); };
}

// Degree (d, d) tensor Bernstein polynomial of g on [0,1]^2, in monomial form.
inline Poly2 bernstein2(const RealOracle& g, std::size_t d) {
    if (d < 1) throw Error(ErrorCode::BadInput, "Bernstein degree must be at least 1");
    // beta[i][m]: coefficient of x^m in C(d,i) x^i (1-x)^(d-i)
    std::vector<std::vector<Integer>> beta(d + 1, std::vector<Integer>(d + 1, 0));
    for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t m = i; m <= d; ++m) {
            Integer v = binomial(d, i) * binomial(d - i, m - i);
            beta[i][m] = (m - i) % 2 ? Integer(-v) : v;
        }
    std::vector<std::vector<Rational>> samples(d + 1, std::vector<Rational>(d + 1));
    long dl = static_cast<long>(d);
    for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t j = 0; j <= d; ++j)
            samples[i][j] = g(Point2(make_rational(static_cast<long>(i), dl), make_rational(static_cast<long>(j), dl)));
    // c = beta^T samples beta
    std::vector<std::vector<Rational>> half(d + 1, std::vector<Rational>(d + 1));
    for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t n = 0; n <= d; ++n)
            for (std::size_t j = 0; j <= n; ++j)
                if (beta[j][n] != 0) half[i][n] += samples[i][j] * beta[j][n];
    Poly2::Table c(d + 1, std::vector<Rational>(d + 1));
    for (std::size_t m = 0; m <= d; ++m)
        for (std::size_t n = 0; n <= d; ++n)
            for (std::size_t i = 0; i <= m; ++i) c[m][n] += beta[i][m] * half[i][n];
    return Poly2(std::move(c));
}

// ---------------------------------------------------------------------------
// C^2 functions on the unit square

struct C2Oracle {
    RealOracle f, fx, fy, fxx, fxy, fyy;
};

namespace detail {

inline double oracle_d(const RealOracle& g, double x, double y) { return g(Point2(Rational(x), Rational(y))).get_d(); }

// Derivative along one axis by central differences, switched to a
// second-order one-sided stencil at the square's edges.
inline double finite_difference(const RealOracle& g, double x, double y, bool along_x, double h) {
    auto at = [&](double s) { return along_x ? oracle_d(g, x + s, y) : oracle_d(g, x, y + s); };
    double pos = along_x ? x : y;
    if (pos - h < 0) return (-3 * at(0) + 4 * at(h) - at(2 * h)) / (2 * h);
    if (pos + h > 1) return (3 * at(0) - 4 * at(-h) + at(-2 * h)) / (2 * h);
    return (at(h) - at(-h)) / (2 * h);
}

inline std::vector<Point2> unit_grid(std::size_t n) {
    std::vector<Point2> pts;
    long nl = static_cast<long>(n) - 1;
    for (long j = 0; j <= nl; ++j)
        for (long i = 0; i <= nl; ++i) pts.emplace_back(make_rational(i, nl), make_rational(j, nl));
    return pts;
}

// Largest |d(p) - d(q)| / |p - q| over pairs of points.
inline double grid_lipschitz(const std::vector<Point2>& pts, const std::vector<double>& d) {
    std::vector<double> xs, ys;
    for (const auto& p : pts) {
        xs.push_back(p.x.get_d());
        ys.push_back(p.y.get_d());
    }
    double best = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double dist = std::hypot(xs[i] - xs[j], ys[i] - ys[j]);
            best = std::max(best, std::abs(d[i] - d[j]) / dist);
        }
    return best;
}

}  // namespace detail

// Spot check of the oracle's derivatives against finite differences of the
// lower-order callables on a 9x9 grid.
inline void check_oracle(const C2Oracle& o, double h = 1e-4, double tol = 1e-4) {
    struct Pair {
        const RealOracle* base;
        const RealOracle* deriv;
        bool along_x;
        const char* name;
    };
    const Pair pairs[] = {{&o.f, &o.fx, true, "f_x"},     {&o.f, &o.fy, false, "f_y"},
                          {&o.fx, &o.fxx, true, "f_xx"},  {&o.fx, &o.fxy, false, "f_xy"},
                          {&o.fy, &o.fyy, false, "f_yy"}};
    for (const auto& p : detail::unit_grid(9)) {
        double x = p.x.get_d(), y = p.y.get_d();
        for (const auto& pr : pairs) {
            double fd = detail::finite_difference(*pr.base, x, y, pr.along_x, h);
            double given = detail::oracle_d(*pr.deriv, x, y);
            if (std::abs(fd - given) > tol * (1 + std::abs(given)))
                throw Error(ErrorCode::InconsistentOracle, std::string(pr.name) + " disagrees with finite differences at (" +
                                                               std::to_string(x) + ", " + std::to_string(y) + ")");
        }
    }
}

struct C2Report {
    std::size_t degree = 0;
    std::size_t grid = 41;
    double eps_meas = 0;  // max of the three second-derivative errors
    double hx_err = 0;    // |f_x - h^x|
    double hy_err = 0;    // |f_y - h^y|
    double px_err = 0;    // |f_x - dp/dx|
    double py_err = 0;    // |f_y - dp/dy|
    double sup_err = 0;   // |f - p|
    double lip_err = 0;   // grid Lipschitz constant of f - p
    double tol = 0;

    double bound() const { return (4 + std::sqrt(13.0)) * eps_meas; }
    double lip_norm_err() const { return sup_err + lip_err; }

    bool pass() const {
        double e = eps_meas;
        return hx_err < 2 * e + tol && hy_err < 2 * e + tol && px_err <= 3 * e + tol && py_err <= 2 * e + tol &&
               sup_err < 4 * e + tol && lip_err <= std::sqrt(13.0) * e + tol && lip_norm_err() < bound() + tol;
    }
};

struct C2Approximation {
    Poly2 p;
    Poly2 hx, hy;
    Poly2 gxx, gxy, gyy;
    C2Report report;
};

// The polynomial p built from Bernstein approximants of the second partials,
// with every error of the construction measured on a grid x grid mesh.
inline C2Approximation c2_to_poly(const C2Oracle& o, std::size_t degree, std::size_t grid = 41) {
    if (grid < 2) throw Error(ErrorCode::BadInput, "measurement grid needs at least 2 points per side");
    check_oracle(o);
    C2Approximation out;
    out.gxx = bernstein2(o.fxx, degree);
    out.gxy = bernstein2(o.fxy, degree);
    out.gyy = bernstein2(o.fyy, degree);
    Point2 origin(0, 0);
    out.hx = Poly2::constant(o.fx(origin)) + out.gxx.at_y(0).integrate_x() + out.gxy.integrate_y();
    out.hy = Poly2::constant(o.fy(origin)) + out.gxy.integrate_x() + out.gyy.at_x(0).integrate_y();
    out.p = Poly2::constant(o.f(origin)) + out.hx.at_y(0).integrate_x() + out.hy.integrate_y();

    Poly2 px = out.p.dx(), py = out.p.dy();
    auto& r = out.report;
    r.degree = degree;
    r.grid = grid;
    auto pts = detail::unit_grid(grid);
    std::vector<double> diff;
    double f_sup = 0;
    auto gap = [](const Rational& a, const Rational& b) { return std::abs(Rational(a - b).get_d()); };
    for (const auto& pt : pts) {
        Rational fv = o.f(pt), fxv = o.fx(pt), fyv = o.fy(pt);
        r.eps_meas = std::max({r.eps_meas, gap(o.fxx(pt), out.gxx(pt)), gap(o.fxy(pt), out.gxy(pt)),
                               gap(o.fyy(pt), out.gyy(pt))});
        r.hx_err = std::max(r.hx_err, gap(fxv, out.hx(pt)));
        r.hy_err = std::max(r.hy_err, gap(fyv, out.hy(pt)));
        r.px_err = std::max(r.px_err, gap(fxv, px(pt)));
        r.py_err = std::max(r.py_err, gap(fyv, py(pt)));
        Rational d = fv - out.p(pt);
        diff.push_back(d.get_d());
        r.sup_err = std::max(r.sup_err, std::abs(diff.back()));
        f_sup = std::max(f_sup, std::abs(fv.get_d()));
    }
    r.lip_err = detail::grid_lipschitz(pts, diff);
    r.tol = 1e-6 * (1 + f_sup);
    return out;
}

// Doubles the degree from 4 until the measured second-derivative error is at
// most eps_target, stopping at 64.
inline C2Approximation c2_to_poly_auto(const C2Oracle& o, double eps_target, std::size_t grid = 41) {
    std::size_t d = 4;
    for (;;) {
        auto a = c2_to_poly(o, d, grid);
        if (a.report.eps_meas <= eps_target || d >= 64) return a;
        d *= 2;
    }
}

// ---------------------------------------------------------------------------
// Grid interpolation of a C^1 function on the unit square

struct GridInterpolationReport {
    std::size_t n = 0;       // triangulation grid
    std::size_t fine = 0;    // measurement points per side
    double eps_meas = 0;     // modulus of f and grad f over pairs closer than the cell diameter
    double sup_err = 0;      // |f - g|
    double lip_err = 0;      // grid Lipschitz constant of f - g
    std::size_t pieces = 0;  // triangles of g
};

struct GridInterpolation {
    CtppFunction<Rational> g;
    GridInterpolationReport report;
};

// g agrees with f at the vertices of the n x n grid triangulation; errors are
// measured on a mesh refining it `refine` times.
inline GridInterpolation c1_grid_interpolation(const C2Oracle& o, std::size_t n, std::size_t refine = 4) {
    if (n < 1 || refine < 1) throw Error(ErrorCode::BadInput, "grid sizes must be positive");
    VertexOracle<Rational> vo = [&](const Point2& p) -> std::optional<Rational> { return o.f(p); };
    GridInterpolation out{interpolate_grid(vo, Rectangle::unit(), n), {}};
    auto& r = out.report;
    r.n = n;
    r.pieces = out.g.triangulation().size();
    std::size_t m = n * refine;
    r.fine = m + 1;
    auto pts = detail::unit_grid(m + 1);
    std::vector<double> fv, fxv, fyv, diff;
    for (const auto& p : pts) {
        Rational v = o.f(p);
        fv.push_back(v.get_d());
        fxv.push_back(o.fx(p).get_d());
        fyv.push_back(o.fy(p).get_d());
        diff.push_back(Rational(v - out.g(p)).get_d());
        r.sup_err = std::max(r.sup_err, std::abs(diff.back()));
    }
    // pairs at most one cell diameter apart: offsets (i, j) with i^2 + j^2 <= 2 refine^2
    long k = static_cast<long>(refine), side = static_cast<long>(m + 1);
    for (long y = 0; y < side; ++y)
        for (long x = 0; x < side; ++x)
            for (long dy = 0; dy <= k; ++dy)
                for (long dx = -k; dx <= k; ++dx) {
                    if (dy == 0 && dx <= 0) continue;
                    if (dx * dx + dy * dy > 2 * k * k) continue;
                    long x2 = x + dx, y2 = y + dy;
                    if (x2 < 0 || x2 >= side || y2 >= side) continue;
                    std::size_t a = static_cast<std::size_t>(y * side + x), b = static_cast<std::size_t>(y2 * side + x2);
                    r.eps_meas = std::max({r.eps_meas, std::abs(fv[a] - fv[b]),
                                           std::hypot(fxv[a] - fxv[b], fyv[a] - fyv[b])});
                }
    r.lip_err = detail::grid_lipschitz(pts, diff);
    return out;
}

// ---------------------------------------------------------------------------
// Matching prescribed values

template <FunctionValue V>
struct TriangleMatch {
    CtppFunction<V> h;                          // planar correction on the triangle
    magnitude_t<V> sup{};                       // max vertex |h|
    std::optional<magnitude_t<V>> bv;           // sup + (max - min); real values only
    magnitude_t<V> bound{};                     // 3 * sup
};

// The planar h on A with h = f - g0 at the vertices.
template <FunctionValue V>
TriangleMatch<V> match_triangle(const Triangle& a, const std::array<V, 3>& f_vals, const std::array<V, 3>& g0_vals) {
    using T = value_traits<V>;
    std::array<V, 3> d{V(f_vals[0] - g0_vals[0]), V(f_vals[1] - g0_vals[1]), V(f_vals[2] - g0_vals[2])};
    Triangulation tri(std::vector<Point2>(a.vertices().begin(), a.vertices().end()), {{0, 1, 2}});
    TriangleMatch<V> out{CtppFunction<V>::from_vertex_values(std::move(tri), {d[0], d[1], d[2]}), T::zero(), {}, T::zero()};
    for (const auto& v : d)
        if (out.sup < T::abs(v)) out.sup = T::abs(v);
    out.bound = out.sup * 3;
    if constexpr (T::exact) {
        auto [lo, hi] = std::minmax({d[0], d[1], d[2]});
        out.bv = out.sup + (hi - lo);
    }
    return out;
}

template <FunctionValue V>
TriangleMatch<V> match_triangle(const Triangle& a, const std::array<V, 3>& f_vals, const CtppFunction<V>& g0) {
    return match_triangle(a, f_vals, {g0(a[0]), g0(a[1]), g0(a[2])});
}

template <FunctionValue V>
struct PointMatchReport {
    std::size_t n = 0;
    std::vector<V> coefs;           // f(x_i) - g0(x_i)
    magnitude_t<V> coef_max{};      // equals sup |h| since the bump supports are disjoint
    magnitude_t<V> var_bound{};     // sum of 4 |c_i|
    magnitude_t<V> bv_bound{};      // coef_max + var_bound
    std::optional<double> eps;
    std::optional<double> paper_bound;  // (4n+1)/(4n+2) eps
    std::optional<bool> holds;          // bv_bound < paper_bound
};

template <FunctionValue V>
struct PointMatch {
    LazyCtppSum<V> g;  // g0 + h
    LazyCtppSum<V> h;
    PointMatchReport<V> report;
};

// g = g0 + sum (f(x_i) - g0(x_i)) b((x - x_i) / delta), exact at every x_i.
template <FunctionValue V>
PointMatch<V> match_points(const SampledFunction<V>& f, const CtppFunction<V>& g0, const std::vector<Point2>& pts,
                           const Rational& delta, std::optional<double> eps = std::nullopt) {
    using T = value_traits<V>;
    if (!(delta > 0)) throw Error(ErrorCode::BadInput, "delta must be positive");
    for (const auto& p : pts)
        if (!f.contains(p)) {
            std::ostringstream os;
            os << "point " << p << " is not in the sample";
            throw Error(ErrorCode::PointNotInDomain, os.str());
        }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (max_rational(rabs(Rational(pts[i].x - pts[j].x)), rabs(Rational(pts[i].y - pts[j].y))) <= 2 * delta) {
                std::ostringstream os;
                os << "squares of side 2*delta around " << pts[i] << " and " << pts[j] << " meet";
                throw Error(ErrorCode::OverlappingSquares, os.str());
            }
    PointMatch<V> out;
    out.g.add(g0);
    auto& r = out.report;
    r.n = pts.size();
    r.coef_max = T::zero();
    r.var_bound = T::zero();
    for (const auto& p : pts) {
        V c = V(f.at(p) - g0(p));
        r.coefs.push_back(c);
        out.h.add_bump(c, p, delta);
        out.g.add_bump(c, p, delta);
        if (r.coef_max < T::abs(c)) r.coef_max = T::abs(c);
        r.var_bound += T::abs(c) * 4;
    }
    r.bv_bound = r.coef_max + r.var_bound;
    if (eps) {
        double n = static_cast<double>(r.n);
        r.eps = eps;
        r.paper_bound = (4 * n + 1) / (4 * n + 2) * *eps;
        r.holds = to_double(r.bv_bound) < *r.paper_bound;
    }
    return out;
}

}  // namespace planevar
