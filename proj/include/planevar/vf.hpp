#pragma once

// Crossing segments and the exact variation factor of a point list.
//
// Completeness of the candidate family. Fix a line by its normal n and offset
// c. Whether a given segment of S counts as a crossing segment depends only on
// the sign pattern (sign(n.p - c))_p over the points of S. For a fixed normal
// the pattern only changes when c passes one of the projections n.p, so the
// projections themselves plus one offset strictly between each consecutive
// pair realise every pattern (offsets outside the projection range give an
// all-one-sided pattern with no crossing segments). As n turns, the order of
// the projections only changes at normals perpendicular to some p_j - p_i; on
// each open arc between two such critical normals the order, and hence the set
// of reachable patterns, is constant. Enumerating every critical normal and
// one normal inside each arc therefore visits every reachable pattern, so the
// maximum over the family equals the maximum over all lines. Interior normals
// are formed as positive combinations of the two neighbouring critical
// normals, which keeps everything rational.

#include "planevar/geom.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <vector>

namespace planevar {

struct VfLineResult {
    std::size_t count = 0;
    std::vector<std::size_t> crossing_indices;  // segment j joins S[j] and S[j+1]
};

namespace detail {

// Number of crossing segments given the side (-1, 0, +1) of every list entry.
template <class SideAt>
std::size_t crossing_count(std::size_t len, SideAt&& side, std::vector<std::size_t>* indices = nullptr) {
    if (len == 0) return 0;
    if (len == 1) {
        bool on = side(0) == 0;
        if (on && indices) indices->push_back(0);
        return on ? 1 : 0;
    }
    const std::size_t n = len - 1;  // segments
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const int sj = side(j);
        const int sk = side(j + 1);
        bool crossing = (sj * sk < 0)                                  // strictly opposite sides
                        || (j == 0 && sj == 0)                         // starts on the line
                        || (j > 0 && sj == 0 && side(j - 1) != 0)      // arrives on the line
                        || (j == n - 1 && sj != 0 && sk == 0);         // ends on the line
        if (crossing) {
            ++count;
            if (indices) indices->push_back(j);
        }
    }
    return count;
}

inline Integer gcd_of(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline __int128 gcd_of(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline Integer to_integer(const Integer& v) { return v; }

inline Integer to_integer(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    Integer hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    Integer lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    Integer r = hi;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), 64);
    r += lo;
    return neg ? Integer(-r) : r;
}

template <class T>
int sign_of(const T& v) {
    return v < 0 ? -1 : (v > 0 ? 1 : 0);
}

template <class T>
T abs_of(const T& v) {
    return v < 0 ? T(-v) : v;
}

template <class T>
struct IntPoint {
    T x;
    T y;
};

template <class T>
struct Normal {
    T a;
    T b;
};

template <class T>
Normal<T> reduce_normal(T a, T b) {
    T g = gcd_of(a, b);
    if (g != 0) {
        a /= g;
        b /= g;
    }
    if (b < 0 || (b == 0 && a < 0)) {
        a = -a;
        b = -b;
    }
    return {a, b};
}

// Critical normals sorted by angle in [0, pi), followed by one interior normal
// per open arc.
template <class T>
std::vector<Normal<T>> candidate_normals(std::span<const IntPoint<T>> pts) {
    std::vector<Normal<T>> crit;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            T dx = pts[j].x - pts[i].x;
            T dy = pts[j].y - pts[i].y;
            if (dx == 0 && dy == 0) continue;
            crit.push_back(reduce_normal<T>(dy, T(-dx)));
        }
    auto before = [](const Normal<T>& u, const Normal<T>& v) { return u.a * v.b - u.b * v.a > 0; };
    std::sort(crit.begin(), crit.end(), before);
    crit.erase(std::unique(crit.begin(), crit.end(),
                           [](const Normal<T>& u, const Normal<T>& v) { return u.a == v.a && u.b == v.b; }),
               crit.end());
    std::vector<Normal<T>> out = crit;
    if (crit.empty()) {
        out.push_back({T(1), T(0)});
        return out;
    }
    if (crit.size() == 1) {
        out.push_back(reduce_normal<T>(T(-crit[0].b), crit[0].a));
        return out;
    }
    auto l1 = [](const Normal<T>& u) -> T { return abs_of(u.a) + abs_of(u.b); };
    for (std::size_t k = 0; k + 1 < crit.size(); ++k) {
        const auto& u = crit[k];
        const auto& v = crit[k + 1];
        out.push_back(reduce_normal<T>(u.a * l1(v) + v.a * l1(u), u.b * l1(v) + v.b * l1(u)));
    }
    // arc from the last critical normal round to the first one, reversed
    const auto& u = crit.back();
    const auto& v = crit.front();
    out.push_back(reduce_normal<T>(u.a * l1(v) - v.a * l1(u), u.b * l1(v) - v.b * l1(u)));
    return out;
}

// Calls visit(normal, doubled_offset, sides) for every candidate line, where
// sides[i] is the side of pts[i] and the line is a*x + b*y = doubled_offset/2.
template <class T, class Visit>
void for_each_candidate_line(std::span<const IntPoint<T>> pts, Visit&& visit) {
    std::vector<T> proj(pts.size());
    std::vector<T> levels;
    std::vector<std::int8_t> sides(pts.size());
    for (const auto& n : candidate_normals(pts)) {
        for (std::size_t i = 0; i < pts.size(); ++i) proj[i] = n.a * pts[i].x + n.b * pts[i].y;
        levels = proj;
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        auto emit = [&](const T& c2) {
            for (std::size_t i = 0; i < pts.size(); ++i)
                sides[i] = static_cast<std::int8_t>(sign_of(T(2 * proj[i] - c2)));
            visit(n, c2, std::span<const std::int8_t>(sides));
        };
        for (std::size_t k = 0; k < levels.size(); ++k) {
            emit(T(2 * levels[k]));
            if (k + 1 < levels.size()) emit(T(levels[k] + levels[k + 1]));
        }
    }
}

// Points rescaled by a common denominator so every coordinate is an integer.
struct ScaledPoints {
    std::vector<Integer> xs;
    std::vector<Integer> ys;
    Integer scale = 1;
    std::size_t max_bits = 0;
};

inline ScaledPoints scale_to_integers(std::span<const Point2> pts) {
    ScaledPoints out;
    for (const auto& p : pts) {
        mpz_lcm(out.scale.get_mpz_t(), out.scale.get_mpz_t(), p.x.get_den().get_mpz_t());
        mpz_lcm(out.scale.get_mpz_t(), out.scale.get_mpz_t(), p.y.get_den().get_mpz_t());
    }
    for (const auto& p : pts) {
        out.xs.push_back(p.x.get_num() * (out.scale / p.x.get_den()));
        out.ys.push_back(p.y.get_num() * (out.scale / p.y.get_den()));
        out.max_bits = std::max({out.max_bits, mpz_sizeinbase(out.xs.back().get_mpz_t(), 2),
                                 mpz_sizeinbase(out.ys.back().get_mpz_t(), 2)});
    }
    return out;
}

// Coordinates up to this many bits keep every kernel quantity inside 127 bits.
inline constexpr std::size_t kNativeBits = 36;

inline __int128 to_int128(const Integer& z) {
    // caller guarantees |z| < 2^kNativeBits
    return static_cast<__int128>(z.get_si());
}

struct VfSearch {
    std::size_t best = 0;
    std::vector<std::pair<Normal<Integer>, Integer>> argmax;  // only filled when witnesses are wanted
};

template <class T>
VfSearch vf_kernel(std::span<const IntPoint<T>> distinct, std::span<const std::size_t> list, bool want_witness) {
    VfSearch res;
    for_each_candidate_line<T>(distinct, [&](const Normal<T>& n, const T& c2, std::span<const std::int8_t> sides) {
        std::size_t c = crossing_count(list.size(), [&](std::size_t k) { return int(sides[list[k]]); });
        if (c > res.best) {
            res.best = c;
            res.argmax.clear();
        }
        if (want_witness && c == res.best)
            res.argmax.push_back({Normal<Integer>{to_integer(n.a), to_integer(n.b)}, to_integer(c2)});
    });
    return res;
}

// Distinct points of a list plus the list rewritten as indices into them.
struct IndexedList {
    std::vector<Point2> distinct;
    std::vector<std::size_t> list;
};

inline IndexedList index_list(std::span<const Point2> s) {
    IndexedList out;
    out.distinct.assign(s.begin(), s.end());
    std::sort(out.distinct.begin(), out.distinct.end());
    out.distinct.erase(std::unique(out.distinct.begin(), out.distinct.end()), out.distinct.end());
    for (const auto& p : s)
        out.list.push_back(static_cast<std::size_t>(
            std::lower_bound(out.distinct.begin(), out.distinct.end(), p) - out.distinct.begin()));
    return out;
}

template <class T>
std::vector<IntPoint<T>> convert_points(const ScaledPoints& sp) {
    std::vector<IntPoint<T>> out(sp.xs.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if constexpr (std::is_same_v<T, Integer>) {
            out[i] = {sp.xs[i], sp.ys[i]};
        } else {
            out[i] = {to_int128(sp.xs[i]), to_int128(sp.ys[i])};
        }
    }
    return out;
}

inline VfSearch vf_search(const ScaledPoints& sp, std::span<const std::size_t> list, bool want_witness) {
    if (sp.max_bits <= kNativeBits) {
        auto pts = convert_points<__int128>(sp);
        return vf_kernel<__int128>(pts, list, want_witness);
    }
    auto pts = convert_points<Integer>(sp);
    return vf_kernel<Integer>(pts, list, want_witness);
}

}  // namespace detail

// Crossing segments of S on the line, per the four crossing cases. For a
// single-point list the count is 1 exactly when the point is on the line.
inline VfLineResult vf_line(std::span<const Point2> s, const Line& line) {
    VfLineResult res;
    std::vector<int> sides(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) sides[i] = sign(line.residual(s[i]));
    res.count = detail::crossing_count(s.size(), [&](std::size_t k) { return sides[k]; }, &res.crossing_indices);
    return res;
}

struct VfResult {
    std::size_t vf = 0;
    Line witness = Line::from_coefficients(1, 0, 0);
};

// Exact maximum of vf_line over all lines, with the lexicographically smallest
// canonical line attaining it.
inline VfResult vf_exact(std::span<const Point2> s) {
    if (s.empty()) throw Error(ErrorCode::BadInput, "vf_exact needs a nonempty list");
    auto idx = detail::index_list(s);
    auto sp = detail::scale_to_integers(idx.distinct);
    auto search = detail::vf_search(sp, idx.list, true);
    VfResult res;
    res.vf = search.best;
    bool first = true;
    for (const auto& [n, c2] : search.argmax) {
        // a*X + b*Y = c2/2 with X = scale*x
        Line l = Line::from_coefficients(Rational(Integer(n.a * sp.scale)), Rational(Integer(n.b * sp.scale)),
                                         Rational(c2) / 2);
        if (first || l < res.witness) res.witness = l;
        first = false;
    }
    return res;
}

// vf only, without constructing the witness.
inline std::size_t vf_value(std::span<const Point2> s) {
    if (s.empty()) throw Error(ErrorCode::BadInput, "vf needs a nonempty list");
    auto idx = detail::index_list(s);
    auto sp = detail::scale_to_integers(idx.distinct);
    return detail::vf_search(sp, idx.list, false).best;
}

// Every sign vector over a fixed point set that some line realises. The vf of
// any list drawn from the set is the maximum crossing count over the table.
class CrossingTable {
public:
    explicit CrossingTable(std::span<const Point2> pts) : size_(pts.size()) {
        auto sp = detail::scale_to_integers(pts);
        std::set<std::vector<std::int8_t>> seen;
        auto collect = [&](const auto&, const auto&, std::span<const std::int8_t> sides) {
            seen.emplace(sides.begin(), sides.end());
        };
        if (sp.max_bits <= detail::kNativeBits) {
            auto ip = detail::convert_points<__int128>(sp);
            detail::for_each_candidate_line<__int128>(ip, collect);
        } else {
            auto ip = detail::convert_points<Integer>(sp);
            detail::for_each_candidate_line<Integer>(ip, collect);
        }
        patterns_.reserve(seen.size() * size_);
        for (const auto& v : seen) patterns_.insert(patterns_.end(), v.begin(), v.end());
        count_ = seen.size();
    }

    std::size_t pattern_count() const { return count_; }
    std::size_t point_count() const { return size_; }
    std::span<const std::int8_t> pattern(std::size_t k) const { return {patterns_.data() + k * size_, size_}; }

    std::size_t vf(std::span<const std::size_t> list) const {
        std::size_t best = 0;
        for (std::size_t k = 0; k < count_; ++k) {
            auto pat = pattern(k);
            best = std::max(best, detail::crossing_count(list.size(), [&](std::size_t i) { return int(pat[list[i]]); }));
        }
        return best;
    }

private:
    std::size_t size_;
    std::size_t count_ = 0;
    std::vector<std::int8_t> patterns_;
};

}  // namespace planevar
