#pragma once

// Curve variation, the two-dimensional variation of sampled functions (exact
// for short lists, annealed lower bounds otherwise), BV and Lipschitz norms,
// and affine pushforwards.

#include "planevar/sampled.hpp"
#include "planevar/vf.hpp"

#include <functional>
#include <future>
#include <map>
#include <optional>
#include <span>
#include <thread>
#include <vector>

namespace planevar {

using PointList = std::vector<Point2>;

template <FunctionValue V>
magnitude_t<V> cvar(const SampledFunction<V>& f, std::span<const Point2> s) {
    using T = value_traits<V>;
    magnitude_t<V> total = T::zero();
    for (std::size_t i = 1; i < s.size(); ++i) total += T::abs(V(f.at(s[i]) - f.at(s[i - 1])));
    if (s.size() == 1) f.at(s[0]);  // still validates membership
    return total;
}

enum class VarMethod { ExhaustiveSmall, Anneal, PlanarFormula, OneDim };

inline std::string_view to_string(VarMethod m) {
    switch (m) {
    case VarMethod::ExhaustiveSmall: return "ExhaustiveSmall";
    case VarMethod::Anneal: return "Anneal";
    case VarMethod::PlanarFormula: return "PlanarFormula";
    case VarMethod::OneDim: return "OneDim";
    }
    return "Unknown";
}

template <FunctionValue V>
struct VarEstimate {
    magnitude_t<V> value{};
    PointList witness;
    std::size_t witness_vf = 1;
    bool exact = false;
    VarMethod method = VarMethod::Anneal;
    std::optional<std::uint64_t> seed;
};

// Builds an estimate whose value is recomputed from the witness.
template <FunctionValue V>
VarEstimate<V> estimate_from_witness(const SampledFunction<V>& f, PointList witness, VarMethod method, bool exact,
                                     std::optional<std::uint64_t> seed = std::nullopt) {
    VarEstimate<V> est;
    est.witness_vf = vf_value(witness);
    est.value = cvar(f, witness) / static_cast<magnitude_t<V>>(static_cast<long>(est.witness_vf));
    est.witness = std::move(witness);
    est.exact = exact;
    est.method = method;
    est.seed = seed;
    return est;
}

// vf of lists drawn from a fixed point set, with the integer rescaling done
// once for the whole set.
class VfOracle {
public:
    explicit VfOracle(std::span<const Point2> domain) {
        auto sp = detail::scale_to_integers(domain);
        native_ = sp.max_bits <= detail::kNativeBits;
        if (native_)
            small_ = detail::convert_points<__int128>(sp);
        else
            big_ = detail::convert_points<Integer>(sp);
    }

    std::size_t operator()(std::span<const std::size_t> list) const {
        std::vector<std::size_t> uniq(list.begin(), list.end());
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        std::vector<std::size_t> local(list.size());
        for (std::size_t i = 0; i < list.size(); ++i)
            local[i] = static_cast<std::size_t>(std::lower_bound(uniq.begin(), uniq.end(), list[i]) - uniq.begin());
        if (native_) return run(small_, uniq, local);
        return run(big_, uniq, local);
    }

private:
    template <class T>
    static std::size_t run(const std::vector<detail::IntPoint<T>>& all, const std::vector<std::size_t>& uniq,
                           const std::vector<std::size_t>& local) {
        std::vector<detail::IntPoint<T>> pts;
        pts.reserve(uniq.size());
        for (auto i : uniq) pts.push_back(all[i]);
        return detail::vf_kernel<T>(pts, local, false).best;
    }

    bool native_ = true;
    std::vector<detail::IntPoint<__int128>> small_;
    std::vector<detail::IntPoint<Integer>> big_;
};

namespace detail {

template <FunctionValue V>
std::vector<std::size_t> lexicographic_order(const SampledFunction<V>& f) {
    std::vector<std::size_t> order(f.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f.domain()[a] < f.domain()[b]; });
    return order;
}

// a/b > c/d for nonnegative magnitudes and positive b, d
template <class M>
bool ratio_greater(const M& a, std::size_t b, const M& c, std::size_t d) {
    return M(a * static_cast<long>(d)) > M(c * static_cast<long>(b));
}

inline bool list_less(std::span<const Point2> a, std::span<const Point2> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

inline constexpr std::size_t kExactMaxDomain = 7;
inline constexpr std::size_t kExactMaxLen = 6;

// Exact maximum of cvar/vf over all lists of at most max_len points without
// consecutive repeats. Exact relative to the length bound only; the supremum
// over unbounded lists may be larger.
template <FunctionValue V>
VarEstimate<V> var_exact_small(const SampledFunction<V>& f, std::size_t max_len = kExactMaxLen) {
    if (f.size() > kExactMaxDomain || max_len > kExactMaxLen || max_len == 0)
        throw Error(ErrorCode::InstanceTooLarge, "exhaustive variation needs at most 7 points and lists of at most 6");
    using M = magnitude_t<V>;
    using T = value_traits<V>;
    const std::size_t n = f.size();
    auto order = detail::lexicographic_order(f);
    std::vector<Point2> pts;
    std::vector<V> vals;
    for (auto i : order) {
        pts.push_back(f.domain()[i]);
        vals.push_back(f.values()[i]);
    }
    CrossingTable table(pts);
    const std::size_t np = table.pattern_count();
    std::vector<M> jump(n * n, T::zero());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) jump[i * n + j] = T::abs(V(vals[i] - vals[j]));

    struct Best {
        M cv{};
        std::size_t vf = 1;
        std::vector<std::size_t> list;
    };

    // Lists starting with a fixed first point, in lexicographic order.
    auto explore = [&](std::size_t first) {
        Best best;
        best.cv = T::zero();
        best.list = {first};
        std::vector<std::size_t> list{first};
        // counts[d] = crossing counts (cases 1-3) of each pattern for the prefix of length d+1
        std::vector<std::vector<std::uint16_t>> counts(max_len, std::vector<std::uint16_t>(np, 0));
        std::vector<M> cv(max_len, T::zero());
        std::function<void()> recurse = [&]() {
            const std::size_t len = list.size();
            if (len >= 2) {
                std::size_t vf = 0;
                const auto& base = counts[len - 1];
                for (std::size_t k = 0; k < np; ++k) {
                    auto pat = table.pattern(k);
                    std::size_t c = base[k] + ((pat[list[len - 2]] != 0 && pat[list[len - 1]] == 0) ? 1 : 0);
                    vf = std::max(vf, c);
                }
                if (detail::ratio_greater(cv[len - 1], vf, best.cv, best.vf)) {
                    best.cv = cv[len - 1];
                    best.vf = vf;
                    best.list = list;
                }
            }
            if (len == max_len) return;
            for (std::size_t next = 0; next < n; ++next) {
                if (next == list.back()) continue;
                const std::size_t j = len - 1;  // new segment index
                auto& cur = counts[len];
                const auto& prev = counts[len - 1];
                for (std::size_t k = 0; k < np; ++k) {
                    auto pat = table.pattern(k);
                    int sj = pat[list[j]];
                    int sk = pat[next];
                    bool crossing = sj * sk < 0 || (j == 0 && sj == 0) || (j > 0 && sj == 0 && pat[list[j - 1]] != 0);
                    cur[k] = static_cast<std::uint16_t>(prev[k] + (crossing ? 1 : 0));
                }
                cv[len] = cv[len - 1] + jump[list.back() * n + next];
                list.push_back(next);
                recurse();
                list.pop_back();
            }
        };
        recurse();
        return best;
    };

    std::vector<Best> per_first(n);
    {
        std::vector<std::future<Best>> jobs;
        const unsigned cap = thread_cap();
        for (std::size_t start = 0; start < n; start += cap) {
            jobs.clear();
            for (std::size_t i = start; i < std::min<std::size_t>(n, start + cap); ++i)
                jobs.push_back(std::async(cap > 1 ? std::launch::async : std::launch::deferred, explore, i));
            for (std::size_t i = start; i < std::min<std::size_t>(n, start + cap); ++i)
                per_first[i] = jobs[i - start].get();
        }
    }
    Best best = per_first[0];
    for (std::size_t i = 1; i < n; ++i)
        if (detail::ratio_greater(per_first[i].cv, per_first[i].vf, best.cv, best.vf)) best = per_first[i];

    PointList witness;
    for (auto i : best.list) witness.push_back(pts[i]);
    return estimate_from_witness(f, std::move(witness), VarMethod::ExhaustiveSmall, true);
}

struct SearchConfig {
    std::size_t iters = 20000;  // proposals per restart
    std::size_t restarts = 8;
    std::uint64_t seed = 0;
    std::size_t max_len = 8;
    double cooling = 0.995;
    std::optional<double> initial_temperature;  // default: largest pairwise |df|
};

inline void strip_consecutive_duplicates(std::vector<std::size_t>& list) {
    list.erase(std::unique(list.begin(), list.end()), list.end());
}

// Certified lower bound for var(f) by simulated annealing over point lists.
// The returned value is recomputed exactly from the best witness found.
template <FunctionValue V>
VarEstimate<V> var_search(const SampledFunction<V>& f, const SearchConfig& cfg = {}) {
    const std::size_t n = f.size();
    const std::size_t max_len = std::max<std::size_t>(cfg.max_len, 1);
    if (n == 1) {
        auto est = estimate_from_witness(f, PointList{f.domain()[0]}, VarMethod::Anneal, false, cfg.seed);
        return est;
    }
    std::vector<double> dv(n);
    std::vector<Complex> cvals(n);
    for (std::size_t i = 0; i < n; ++i) cvals[i] = value_traits<V>::to_complex(f.values()[i]);
    auto jump = [&](std::size_t i, std::size_t j) { return std::abs(cvals[i] - cvals[j]); };

    std::size_t bi = 0, bj = 1;
    double top = -1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && jump(i, j) > top) {
                top = jump(i, j);
                bi = i;
                bj = j;
            }
    const double t0 = cfg.initial_temperature.value_or(top > 0 ? top : 1.0);
    VfOracle oracle(f.domain());
    Rng root(cfg.seed);

    auto run = [&](std::size_t r) {
        Rng rng = root.split("anneal", r);
        std::map<std::vector<std::size_t>, std::size_t> memo;
        auto score = [&](const std::vector<std::size_t>& list) {
            double cv = 0;
            for (std::size_t i = 1; i < list.size(); ++i) cv += jump(list[i - 1], list[i]);
            if (cv == 0) return 0.0;
            auto it = memo.find(list);
            std::size_t vf;
            if (it != memo.end()) {
                vf = it->second;
            } else {
                vf = oracle(list);
                if (memo.size() > 200000) memo.clear();
                memo.emplace(list, vf);
            }
            return cv / static_cast<double>(vf);
        };
        std::vector<std::size_t> cur;
        if (r == 0) {
            cur = {bi, bj};
        } else {
            std::size_t a = rng.below(n);
            std::size_t b = rng.below(n - 1);
            if (b >= a) ++b;
            cur = {a, b};
        }
        if (max_len == 1) cur.resize(1);
        double cur_score = score(cur);
        auto best = cur;
        double best_score = cur_score;
        double temp = t0;
        std::vector<std::size_t> cand;
        for (std::size_t it = 0; it < cfg.iters; ++it, temp *= cfg.cooling) {
            cand = cur;
            const std::size_t len = cand.size();
            switch (rng.below(5)) {
            case 0:  // insert
                if (len < max_len) cand.insert(cand.begin() + static_cast<long>(rng.below(len + 1)), rng.below(n));
                break;
            case 1:  // delete
                if (len > 1) cand.erase(cand.begin() + static_cast<long>(rng.below(len)));
                break;
            case 2:  // replace
                cand[rng.below(len)] = rng.below(n);
                break;
            case 3:  // swap
                if (len > 1) std::swap(cand[rng.below(len)], cand[rng.below(len)]);
                break;
            default:  // reverse a segment
                if (len > 1) {
                    std::size_t a = rng.below(len), b = rng.below(len);
                    if (a > b) std::swap(a, b);
                    std::reverse(cand.begin() + static_cast<long>(a), cand.begin() + static_cast<long>(b) + 1);
                }
            }
            strip_consecutive_duplicates(cand);
            double s = score(cand);
            bool accept = s >= cur_score || (temp > 1e-300 && rng.uniform() < std::exp((s - cur_score) / temp));
            if (accept) {
                cur.swap(cand);
                cur_score = s;
                if (cur_score > best_score) {
                    best = cur;
                    best_score = cur_score;
                }
            }
        }
        return best;
    };

    std::vector<std::vector<std::size_t>> results(std::max<std::size_t>(cfg.restarts, 1));
    {
        const unsigned cap = thread_cap();
        for (std::size_t start = 0; start < results.size(); start += cap) {
            std::vector<std::future<std::vector<std::size_t>>> jobs;
            const std::size_t stop = std::min<std::size_t>(results.size(), start + cap);
            for (std::size_t r = start; r < stop; ++r)
                jobs.push_back(std::async(cap > 1 ? std::launch::async : std::launch::deferred, run, r));
            for (std::size_t r = start; r < stop; ++r) results[r] = jobs[r - start].get();
        }
    }

    std::optional<VarEstimate<V>> best;
    for (const auto& list : results) {
        PointList w;
        for (auto i : list) w.push_back(f.domain()[i]);
        auto est = estimate_from_witness(f, std::move(w), VarMethod::Anneal, false, cfg.seed);
        if (!best || est.value > best->value || (est.value == best->value && detail::list_less(est.witness, best->witness)))
            best = std::move(est);
    }
    return *best;
}

// max - min of a real planar function over a point set.
template <FunctionValue V>
magnitude_t<V> var_planar(const PlanarCoeffs<V>& F, std::span<const Point2> sigma) {
    using T = value_traits<V>;
    if (!T::is_real(F.a) || !T::is_real(F.b) || !T::is_real(F.c))
        throw Error(ErrorCode::NonRealCoefficients, "planar variation formula needs real coefficients");
    if (sigma.empty()) throw Error(ErrorCode::BadInput, "empty point set");
    magnitude_t<V> lo = T::real_part(F(sigma[0]));
    magnitude_t<V> hi = lo;
    for (const auto& p : sigma) {
        magnitude_t<V> v = T::real_part(F(p));
        if (v < lo) lo = v;
        if (hi < v) hi = v;
    }
    return hi - lo;
}

// Exact estimate for a real planar function, witnessed by a two-point list
// from an argmin to an argmax.
template <FunctionValue V>
VarEstimate<V> var_planar_estimate(const SampledFunction<V>& f, const PlanarCoeffs<V>& F) {
    using T = value_traits<V>;
    var_planar(F, f.domain());  // validates realness
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!T::equal(F(f.domain()[i]), f.values()[i]))
            throw Error(ErrorCode::MismatchedEstimate, "sample values are not those of the planar function");
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < f.size(); ++i) {
        if (T::real_part(f.values()[i]) < T::real_part(f.values()[lo])) lo = i;
        if (T::real_part(f.values()[hi]) < T::real_part(f.values()[i])) hi = i;
    }
    PointList w{f.domain()[lo]};
    if (hi != lo) w.push_back(f.domain()[hi]);
    return estimate_from_witness(f, std::move(w), VarMethod::PlanarFormula, true);
}

template <FunctionValue V>
struct BvNorm {
    magnitude_t<V> value{};
    bool exact = false;
};

template <FunctionValue V>
BvNorm<V> bv_norm(const SampledFunction<V>& f, const VarEstimate<V>& est) {
    using T = value_traits<V>;
    for (const auto& p : est.witness)
        if (!f.contains(p)) throw Error(ErrorCode::MismatchedEstimate, "estimate witness is not in the domain");
    if (est.witness.empty()) throw Error(ErrorCode::MismatchedEstimate, "estimate has no witness");
    magnitude_t<V> again =
        cvar(f, est.witness) / static_cast<magnitude_t<V>>(static_cast<long>(vf_value(est.witness)));
    bool same;
    if constexpr (T::exact)
        same = again == est.value;
    else
        same = std::abs(again - est.value) <= T::tolerance;
    if (!same) throw Error(ErrorCode::MismatchedEstimate, "estimate value does not recompute from its witness");
    return {f.sup_norm() + est.value, est.exact};
}

// Largest |f(x) - f(x')|^2 / |x - x'|^2 over pairs; exact for rational values.
template <FunctionValue V>
magnitude_t<V> lipschitz_squared(const SampledFunction<V>& f) {
    using T = value_traits<V>;
    if (f.size() < 2) throw Error(ErrorCode::DomainTooSmall, "Lipschitz constant needs two points");
    magnitude_t<V> best = T::zero();
    const auto& d = f.domain();
    const auto& v = f.values();
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            magnitude_t<V> dv = T::abs(V(v[i] - v[j]));
            magnitude_t<V> q;
            if constexpr (T::exact)
                q = dv * dv / distance_squared(d[i], d[j]);
            else
                q = dv * dv / distance_squared(d[i], d[j]).get_d();
            if (best < q) best = q;
        }
    return best;
}

template <FunctionValue V>
double lipschitz_constant(const SampledFunction<V>& f) {
    return std::sqrt(to_double(lipschitz_squared(f)));
}

// x -> M x + t with rational entries.
struct AffineMap {
    Rational m11 = 1, m12 = 0, m21 = 0, m22 = 1;
    Rational t1 = 0, t2 = 0;

    Rational determinant() const { return m11 * m22 - m12 * m21; }
    Point2 operator()(const Point2& p) const { return {m11 * p.x + m12 * p.y + t1, m21 * p.x + m22 * p.y + t2}; }

    static AffineMap translation(Rational dx, Rational dy) {
        AffineMap m;
        m.t1 = std::move(dx);
        m.t2 = std::move(dy);
        return m;
    }
    static AffineMap rotation90() {
        AffineMap m;
        m.m11 = 0;
        m.m12 = -1;
        m.m21 = 1;
        m.m22 = 0;
        return m;
    }
};

template <FunctionValue V>
SampledFunction<V> affine_pushforward(const SampledFunction<V>& f, const AffineMap& phi) {
    if (phi.determinant() == 0) throw Error(ErrorCode::SingularMap, "affine map is not invertible");
    std::vector<Point2> pts;
    pts.reserve(f.size());
    for (const auto& p : f.domain()) pts.push_back(phi(p));
    return SampledFunction<V>(std::move(pts), f.values());
}

// Pointwise product of two functions on the same sample.
template <FunctionValue V>
SampledFunction<V> multiply(const SampledFunction<V>& f, const SampledFunction<V>& g) {
    std::vector<V> vals;
    for (const auto& p : f.domain()) vals.push_back(V(f.at(p) * g.at(p)));
    return SampledFunction<V>(f.domain(), std::move(vals));
}

}  // namespace planevar
