#pragma once

// Functions on finite subsets of the real line: variation, extension across
// gaps by linear interpolation, the absolute-continuity modulus, and example
// generators.

#include "planevar/sampled.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace planevar {

// Strictly increasing nonempty list of rationals.
class RealSample {
public:
    RealSample() = default;

    explicit RealSample(std::vector<Rational> points) : points_(std::move(points)) {
        if (points_.empty()) throw Error(ErrorCode::BadInput, "real sample needs at least one point");
        for (std::size_t i = 1; i < points_.size(); ++i)
            if (!(points_[i - 1] < points_[i])) throw Error(ErrorCode::BadInput, "real sample must be strictly increasing");
    }

    // Sorts and removes duplicates first.
    static RealSample from_unsorted(std::vector<Rational> points) {
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());
        return RealSample(std::move(points));
    }

    const std::vector<Rational>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    const Rational& min() const { return points_.front(); }
    const Rational& max() const { return points_.back(); }

    // Maximal open intervals of [min, max] missing the sample.
    std::vector<std::pair<Rational, Rational>> gaps() const {
        std::vector<std::pair<Rational, Rational>> out;
        for (std::size_t i = 1; i < points_.size(); ++i) out.emplace_back(points_[i - 1], points_[i]);
        return out;
    }

    std::optional<std::size_t> index_of(const Rational& t) const {
        auto it = std::lower_bound(points_.begin(), points_.end(), t);
        if (it == points_.end() || *it != t) return std::nullopt;
        return static_cast<std::size_t>(it - points_.begin());
    }

private:
    std::vector<Rational> points_;
};

template <FunctionValue V>
struct Function1D {
    RealSample sample;
    std::vector<V> values;

    Function1D() = default;
    Function1D(RealSample s, std::vector<V> v) : sample(std::move(s)), values(std::move(v)) {
        if (sample.size() != values.size()) throw Error(ErrorCode::BadInput, "sample and values differ in length");
    }

    template <class Fn>
    static Function1D tabulate(RealSample s, Fn&& fn) {
        std::vector<V> v;
        for (const auto& t : s.points()) v.push_back(fn(t));
        return Function1D(std::move(s), std::move(v));
    }

    const V& at(const Rational& t) const {
        auto i = sample.index_of(t);
        if (!i) throw Error(ErrorCode::PointOutsideDomain, "point " + to_string(t) + " is not in the sample");
        return values[*i];
    }
};

// The same function on the points (t, 0) of the plane.
template <FunctionValue V>
SampledFunction<V> embed_on_axis(const Function1D<V>& f) {
    std::vector<Point2> pts;
    for (const auto& t : f.sample.points()) pts.emplace_back(t, Rational(0));
    return SampledFunction<V>(std::move(pts), f.values);
}

template <FunctionValue V>
Function1D<V> from_axis(const SampledFunction<V>& f) {
    std::vector<std::pair<Rational, V>> rows;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.domain()[i].y != 0) throw Error(ErrorCode::BadInput, "one-dimensional data must lie on the x-axis");
        rows.emplace_back(f.domain()[i].x, f.values()[i]);
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Rational> t;
    std::vector<V> v;
    for (auto& [x, y] : rows) {
        t.push_back(x);
        v.push_back(y);
    }
    return Function1D<V>(RealSample(std::move(t)), std::move(v));
}

// For a finite sample the increasing list through every point is optimal.
template <FunctionValue V>
magnitude_t<V> var_1d(const Function1D<V>& f) {
    using T = value_traits<V>;
    magnitude_t<V> total = T::zero();
    for (std::size_t i = 1; i < f.values.size(); ++i) total += T::abs(V(f.values[i] - f.values[i - 1]));
    return total;
}

template <FunctionValue V>
magnitude_t<V> sup_norm(const Function1D<V>& f) {
    using T = value_traits<V>;
    magnitude_t<V> best = T::zero();
    for (const auto& v : f.values) {
        magnitude_t<V> m = T::abs(v);
        if (best < m) best = m;
    }
    return best;
}

// Values of the linear-interpolation extension at arbitrary points of
// [min, max]; points of the sample keep their values.
template <FunctionValue V>
V iota_value(const Function1D<V>& f, const Rational& t) {
    using T = value_traits<V>;
    const auto& pts = f.sample.points();
    if (t < pts.front() || pts.back() < t)
        throw Error(ErrorCode::GridOutsideJ, "point " + to_string(t) + " lies outside the sample's hull");
    auto it = std::lower_bound(pts.begin(), pts.end(), t);
    std::size_t i = static_cast<std::size_t>(it - pts.begin());
    if (pts[i] == t) return f.values[i];
    const Rational& a = pts[i - 1];
    const Rational& b = pts[i];
    Rational w = (t - a) / (b - a);
    return V(f.values[i - 1] + T::from_rational(w) * V(f.values[i] - f.values[i - 1]));
}

template <FunctionValue V>
Function1D<V> iota_extend(const Function1D<V>& f, const std::vector<Rational>& grid) {
    std::vector<Rational> all = f.sample.points();
    for (const auto& g : grid) {
        if (g < f.sample.min() || f.sample.max() < g)
            throw Error(ErrorCode::GridOutsideJ, "grid point " + to_string(g) + " lies outside the sample's hull");
        all.push_back(g);
    }
    auto s = RealSample::from_unsorted(std::move(all));
    std::vector<V> v;
    for (const auto& t : s.points()) v.push_back(iota_value(f, t));
    return Function1D<V>(std::move(s), std::move(v));
}

// Clamp of a trace to [a, b]: q(a) to the left, q(b) to the right, and the
// interpolated trace in between.
template <FunctionValue V>
V clamp_trace(const Function1D<V>& q, const Rational& a, const Rational& b, const Rational& x) {
    if (x <= a) return iota_value(q, a);
    if (b <= x) return iota_value(q, b);
    return iota_value(q, x);
}

enum class AcMode { Exact, Auto };

template <FunctionValue V>
struct AcModulus {
    magnitude_t<V> value{};
    std::vector<std::pair<Rational, Rational>> witness;
    bool exact = true;
};

inline constexpr std::size_t kAcExactMax = 24;

// Largest sum of |f(t) - f(s)| over non-overlapping intervals (s, t) with
// endpoints in the sample and total length at most delta.
//
// Any such interval can be replaced by the elementary gaps it spans: same
// total length, and by the triangle inequality no smaller sum. Every set of
// elementary gaps is itself an admissible family, so the problem is a 0/1
// knapsack over the gaps.
template <FunctionValue V>
AcModulus<V> ac_modulus(const Function1D<V>& f, const Rational& delta, AcMode mode = AcMode::Exact) {
    using T = value_traits<V>;
    using M = magnitude_t<V>;
    if (!(delta > 0)) throw Error(ErrorCode::BadInput, "budget must be positive");
    const auto& pts = f.sample.points();
    const bool exact = pts.size() <= kAcExactMax;
    if (!exact && mode == AcMode::Exact)
        throw Error(ErrorCode::InstanceTooLarge, "exact modulus supports at most 24 sample points");

    struct Item {
        std::size_t gap;
        Rational weight;
        M value;
    };
    std::vector<Item> items;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        Item it{i - 1, pts[i] - pts[i - 1], T::abs(V(f.values[i] - f.values[i - 1]))};
        if (it.weight <= delta && T::zero() < it.value) items.push_back(std::move(it));
    }
    // value/weight descending, then by position for determinism
    auto ratio_ge = [](const Item& a, const Item& b) {
        if constexpr (T::exact) {
            Rational l = a.value * b.weight, r = b.value * a.weight;
            if (l != r) return l > r;
        } else {
            double l = a.value * b.weight.get_d(), r = b.value * a.weight.get_d();
            if (l != r) return l > r;
        }
        return a.gap < b.gap;
    };
    std::sort(items.begin(), items.end(), ratio_ge);

    AcModulus<V> res;
    res.exact = exact;
    res.value = T::zero();
    std::vector<std::size_t> chosen;

    if (!exact) {
        Rational used = 0;
        M total = T::zero();
        for (const auto& it : items)
            if (used + it.weight <= delta) {
                used += it.weight;
                total += it.value;
                chosen.push_back(it.gap);
            }
        res.value = total;
    } else {
        // depth-first branch and bound with the fractional relaxation as bound
        std::vector<bool> take(items.size(), false), best_take;
        M best = T::zero();
        auto bound = [&](std::size_t k, const Rational& room, const M& acc) {
            M b = acc;
            Rational left = room;
            for (std::size_t i = k; i < items.size(); ++i) {
                if (items[i].weight <= left) {
                    left -= items[i].weight;
                    b += items[i].value;
                } else {
                    if constexpr (T::exact)
                        b += items[i].value * left / items[i].weight;
                    else
                        b += items[i].value * Rational(left / items[i].weight).get_d();
                    break;
                }
            }
            return b;
        };
        std::function<void(std::size_t, Rational, M)> dfs = [&](std::size_t k, Rational room, M acc) {
            if (best < acc) {
                best = acc;
                best_take = take;
            }
            if (k == items.size()) return;
            if (!(best < bound(k, room, acc))) return;
            if (items[k].weight <= room) {
                take[k] = true;
                dfs(k + 1, Rational(room - items[k].weight), M(acc + items[k].value));
                take[k] = false;
            }
            dfs(k + 1, room, acc);
        };
        dfs(0, delta, T::zero());
        res.value = best;
        for (std::size_t i = 0; i < best_take.size(); ++i)
            if (best_take[i]) chosen.push_back(items[i].gap);
    }
    std::sort(chosen.begin(), chosen.end());
    for (auto g : chosen) res.witness.emplace_back(pts[g], pts[g + 1]);
    return res;
}

enum class ExampleKind { ReciprocalAlternating, ReciprocalOdd, ReciprocalEven, CantorLevel, OneOverN };

struct ExampleSpec {
    ExampleKind kind = ExampleKind::ReciprocalAlternating;
    std::size_t n = 4;  // truncation N, or the level k for CantorLevel
    bool include_zero = true;
};

// Endpoints of the 2^k intervals left at level k of the middle-thirds
// construction, with the Cantor function's dyadic values.
inline Function1D<Rational> cantor_level(std::size_t k) {
    if (k > 10) throw Error(ErrorCode::BadInput, "Cantor level is capped at 10");
    std::vector<std::pair<Rational, Rational>> intervals{{Rational(0), Rational(1)}};
    for (std::size_t level = 0; level < k; ++level) {
        std::vector<std::pair<Rational, Rational>> next;
        for (const auto& [a, b] : intervals) {
            Rational third = (b - a) / 3;
            next.emplace_back(a, Rational(a + third));
            next.emplace_back(Rational(b - third), b);
        }
        intervals.swap(next);
    }
    std::vector<Rational> t;
    std::vector<Rational> v;
    const std::size_t m = intervals.size();  // 2^k
    for (std::size_t i = 0; i < m; ++i) {
        // F(a_i) = i/2^k and F(b_i) = (i+1)/2^k
        t.push_back(intervals[i].first);
        t.push_back(intervals[i].second);
        v.push_back(Rational(Integer(i), Integer(m)));
        v.push_back(Rational(Integer(i + 1), Integer(m)));
    }
    for (auto& x : v) x.canonicalize();
    return Function1D<Rational>(RealSample(std::move(t)), std::move(v));
}

inline Function1D<Rational> make_example(const ExampleSpec& spec) {
    auto reciprocals = [&](auto keep, auto value) {
        std::vector<std::pair<Rational, Rational>> rows;
        if (spec.include_zero) rows.emplace_back(Rational(0), Rational(0));
        for (std::size_t k = 1; k <= spec.n; ++k)
            if (keep(k)) rows.emplace_back(make_rational(1, static_cast<long>(k)), value(k));
        std::sort(rows.begin(), rows.end());
        std::vector<Rational> t, v;
        for (auto& [a, b] : rows) {
            t.push_back(a);
            v.push_back(b);
        }
        return Function1D<Rational>(RealSample(std::move(t)), std::move(v));
    };
    auto alternating = [](std::size_t k) { return make_rational(k % 2 == 0 ? 1 : -1, static_cast<long>(k)); };
    switch (spec.kind) {
    case ExampleKind::ReciprocalAlternating:
        return reciprocals([](std::size_t) { return true; }, alternating);
    case ExampleKind::ReciprocalOdd:
        return reciprocals([](std::size_t k) { return k % 2 == 1; }, alternating);
    case ExampleKind::ReciprocalEven:
        return reciprocals([](std::size_t k) { return k % 2 == 0; }, alternating);
    case ExampleKind::OneOverN:
        return reciprocals([](std::size_t) { return true; },
                           [](std::size_t k) { return make_rational(1, static_cast<long>(k)); });
    case ExampleKind::CantorLevel:
        return cantor_level(spec.n);
    }
    throw Error(ErrorCode::BadInput, "unknown example kind");
}

inline std::optional<ExampleKind> parse_example_kind(std::string_view name) {
    if (name == "ReciprocalAlternating") return ExampleKind::ReciprocalAlternating;
    if (name == "ReciprocalOdd") return ExampleKind::ReciprocalOdd;
    if (name == "ReciprocalEven") return ExampleKind::ReciprocalEven;
    if (name == "CantorLevel") return ExampleKind::CantorLevel;
    if (name == "OneOverN") return ExampleKind::OneOverN;
    return std::nullopt;
}

}  // namespace planevar
