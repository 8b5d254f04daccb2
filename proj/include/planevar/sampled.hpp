#pragma once

// Finite samples of plane sets with function values attached, and the planar
// (affine) functions a*x + b*y + c.

#include "planevar/geom.hpp"

#include <map>
#include <span>
#include <sstream>
#include <vector>

namespace planevar {

template <FunctionValue V>
class SampledFunction {
public:
    SampledFunction() = default;

    SampledFunction(std::vector<Point2> domain, std::vector<V> values)
        : domain_(std::move(domain)), values_(std::move(values)) {
        if (domain_.empty()) throw Error(ErrorCode::BadInput, "sampled function needs a nonempty domain");
        if (domain_.size() != values_.size()) throw Error(ErrorCode::BadInput, "points and values differ in length");
        for (std::size_t i = 0; i < domain_.size(); ++i)
            if (!index_.emplace(domain_[i], i).second)
                throw Error(ErrorCode::BadInput, "duplicate domain point");
    }

    template <class Fn>
    static SampledFunction tabulate(std::vector<Point2> domain, Fn&& fn) {
        std::vector<V> values;
        values.reserve(domain.size());
        for (const auto& p : domain) values.push_back(fn(p));
        return SampledFunction(std::move(domain), std::move(values));
    }

    const std::vector<Point2>& domain() const { return domain_; }
    const std::vector<V>& values() const { return values_; }
    std::size_t size() const { return domain_.size(); }

    std::optional<std::size_t> index_of(const Point2& p) const {
        auto it = index_.find(p);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool contains(const Point2& p) const { return index_.count(p) != 0; }

    const V& at(const Point2& p) const {
        auto it = index_.find(p);
        if (it == index_.end()) {
            std::ostringstream os;
            os << "point " << p << " is not in the sample";
            throw Error(ErrorCode::PointOutsideDomain, os.str());
        }
        return values_[it->second];
    }

    SampledFunction restrict_to(std::span<const Point2> subset) const {
        std::vector<Point2> pts;
        std::vector<V> vals;
        for (const auto& p : subset) {
            pts.push_back(p);
            vals.push_back(at(p));
        }
        return SampledFunction(std::move(pts), std::move(vals));
    }

    magnitude_t<V> sup_norm() const {
        magnitude_t<V> best = value_traits<V>::zero();
        for (const auto& v : values_) {
            auto m = value_traits<V>::abs(v);
            if (best < m) best = m;
        }
        return best;
    }

private:
    std::vector<Point2> domain_;
    std::vector<V> values_;
    std::map<Point2, std::size_t> index_;
};

// F(x, y) = a*x + b*y + c
template <FunctionValue V>
struct PlanarCoeffs {
    V a{};
    V b{};
    V c{};

    V operator()(const Point2& p) const {
        return a * value_traits<V>::from_rational(p.x) + b * value_traits<V>::from_rational(p.y) + c;
    }

    PlanarCoeffs& operator+=(const PlanarCoeffs& o) {
        a += o.a;
        b += o.b;
        c += o.c;
        return *this;
    }

    friend bool operator==(const PlanarCoeffs& l, const PlanarCoeffs& r) {
        return value_traits<V>::equal(l.a, r.a) && value_traits<V>::equal(l.b, r.b) &&
               value_traits<V>::equal(l.c, r.c);
    }
};

// The plane through three non-collinear points with prescribed values.
template <FunctionValue V>
PlanarCoeffs<V> plane_through(const std::array<Point2, 3>& p, const std::array<V, 3>& v) {
    Rational det = orient(p[0], p[1], p[2]);
    if (det == 0) throw Error(ErrorCode::DegenerateTriangle, "plane through collinear points");
    using T = value_traits<V>;
    // Cramer on (x1-x0, y1-y0; x2-x0, y2-y0) [a b]^T = (v1-v0, v2-v0)
    V d1 = v[1] - v[0];
    V d2 = v[2] - v[0];
    Point2 e1 = p[1] - p[0];
    Point2 e2 = p[2] - p[0];
    V inv_det = T::from_rational(Rational(1) / det);
    V a = (d1 * T::from_rational(e2.y) - d2 * T::from_rational(e1.y)) * inv_det;
    V b = (d2 * T::from_rational(e1.x) - d1 * T::from_rational(e2.x)) * inv_det;
    V c = v[0] - a * T::from_rational(p[0].x) - b * T::from_rational(p[0].y);
    return {a, b, c};
}

inline Rational diameter_squared(std::span<const Point2> pts) {
    Rational best = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) best = max_rational(best, distance_squared(pts[i], pts[j]));
    return best;
}

inline double diameter(std::span<const Point2> pts) { return std::sqrt(diameter_squared(pts).get_d()); }

}  // namespace planevar
