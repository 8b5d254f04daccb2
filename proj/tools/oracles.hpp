#pragma once

// Reference implementations used to cross-check the library. They are
// deliberately written along different lines from the production code:
// plain rational arithmetic, no integer rescaling, different candidate sets.

#include "planevar/geom.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <vector>

namespace planevar::oracle {

// Crossing segments of a list given the side of each entry, one case at a time.
inline std::size_t crossing_segments(const std::vector<int>& side) {
    const std::size_t m = side.size();
    if (m == 1) return side[0] == 0 ? 1 : 0;
    const std::size_t n = m - 1;
    std::size_t total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        bool on_j = side[j] == 0;
        bool on_next = side[j + 1] == 0;
        bool case1 = !on_j && !on_next && side[j] != side[j + 1];
        bool case2 = j == 0 && on_j;
        bool case3 = j > 0 && on_j && side[j - 1] != 0;
        bool case4 = j == n - 1 && !on_j && on_next;
        total += (case1 || case2 || case3 || case4) ? 1 : 0;
    }
    return total;
}

// Exhaustive vf: each critical normal, plus that normal turned slightly each
// way (turn size halved until no other critical normal lies in between), with
// offsets at every projection and just above and below each.
inline std::size_t vf_bruteforce(const std::vector<Point2>& s) {
    std::vector<Point2> normals;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            if (s[i] != s[j]) normals.emplace_back(s[j].y - s[i].y, s[i].x - s[j].x);
    if (normals.empty()) {
        normals.emplace_back(1, 0);
        normals.emplace_back(0, 1);
    }
    std::vector<Point2> dirs;
    for (const auto& n : normals) {
        dirs.push_back(n);
        Point2 turn(-n.y, n.x);
        for (int sgn : {1, -1}) {
            Rational eps(1);
            for (;;) {
                Point2 cand(n.x + sgn * eps * turn.x, n.y + sgn * eps * turn.y);
                // cand must not be parallel to a critical normal, and no critical
                // normal (up to sign) may lie strictly inside the wedge from n to cand
                const int w = sign(cross(n, cand));
                bool clear = true;
                for (const auto& o : normals) {
                    if (cross(o, cand) == 0) clear = false;
                    for (int flip : {1, -1}) {
                        Point2 oo(flip * o.x, flip * o.y);
                        if (dot(n, oo) > 0 && sign(cross(n, oo)) == w && sign(cross(oo, cand)) == w) clear = false;
                    }
                    if (!clear) break;
                }
                if (clear) {
                    dirs.push_back(cand);
                    break;
                }
                eps /= 2;
            }
        }
    }
    std::size_t best = 0;
    for (const auto& d : dirs) {
        std::vector<Rational> proj;
        for (const auto& p : s) proj.push_back(d.x * p.x + d.y * p.y);
        std::vector<Rational> levels = proj;
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        Rational eta = 1;
        for (std::size_t k = 1; k < levels.size(); ++k) eta = min_rational(eta, Rational((levels[k] - levels[k - 1]) / 3));
        std::vector<Rational> offsets;
        for (const auto& c : levels) {
            offsets.push_back(c);
            offsets.push_back(c + eta);
            offsets.push_back(c - eta);
        }
        for (const auto& c : offsets) {
            std::vector<int> side;
            for (const auto& v : proj) side.push_back(sign(Rational(v - c)));
            best = std::max(best, crossing_segments(side));
        }
    }
    return best;
}

// Largest crossing count over random lines with uniform angle and uniform
// offset across the projection range; lines passing within 1e-9 of a point
// are skipped since their sides are not reliable in doubles.
template <class Gen>
std::size_t vf_random_lines(const std::vector<Point2>& s, Gen& rng, std::size_t count) {
    std::vector<double> xs, ys;
    double span = 1;
    for (const auto& p : s) {
        xs.push_back(p.x.get_d());
        ys.push_back(p.y.get_d());
        span = std::max({span, std::abs(xs.back()), std::abs(ys.back())});
    }
    std::uniform_real_distribution<double> angle(0.0, M_PI);
    std::uniform_real_distribution<double> offset(-1.5 * span, 1.5 * span);
    std::size_t best = 0;
    std::vector<int> side(s.size());
    for (std::size_t k = 0; k < count; ++k) {
        double t = angle(rng);
        double a = std::cos(t), b = std::sin(t), c = offset(rng);
        bool ok = true;
        for (std::size_t i = 0; i < s.size(); ++i) {
            double r = a * xs[i] + b * ys[i] - c;
            if (std::abs(r) < 1e-9) ok = false;
            side[i] = r < 0 ? -1 : 1;
        }
        if (ok) best = std::max(best, crossing_segments(side));
    }
    return best;
}

// Best non-overlapping interval family with endpoints in the sample and total
// length at most delta, by enumerating every family directly (any interval
// (s_i, s_j), not just consecutive gaps). Small samples only.
inline Rational ac_modulus_bruteforce(const std::vector<Rational>& t, const std::vector<Rational>& v,
                                      const Rational& delta) {
    Rational best = 0;
    // families are chains i0 < j0 <= i1 < j1 <= ... ; recurse on the next start
    std::function<void(std::size_t, Rational, Rational)> go = [&](std::size_t from, Rational used, Rational acc) {
        best = max_rational(best, acc);
        for (std::size_t i = from; i < t.size(); ++i)
            for (std::size_t j = i + 1; j < t.size(); ++j) {
                Rational len = t[j] - t[i];
                if (used + len > delta) break;
                go(j, Rational(used + len), Rational(acc + rabs(Rational(v[j] - v[i]))));
            }
    };
    go(0, 0, 0);
    return best;
}

}  // namespace planevar::oracle
