#pragma once

// Shared vocabulary for the planevar library: exact rationals, the two value
// kinds functions may take (exact rational reals or floating complex), the
// error type, certified real intervals, and the seeded random streams.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>

namespace planevar {

using Rational = mpq_class;
using Integer = mpz_class;
using Complex = std::complex<double>;

enum class ErrorCode {
    CoincidentPoints,
    DegenerateTriangle,
    NotSimple,
    PointOutsideDomain,
    InstanceTooLarge,
    NonRealCoefficients,
    MismatchedEstimate,
    DomainTooSmall,
    SingularMap,
    GridOutsideJ,
    BadSpec,
    PointOutsidePolygon,
    OracleMissingVertex,
    NotContainable,
    NotStarPlanar,
    InconsistentOracle,
    OverlappingSquares,
    PointNotInDomain,
    DomainNotOnGraph,
    GraphOutsideRectangle,
    NoAxisPoints,
    RaysNotInRectangle,
    DomainMismatch,
    BadInput,
    UnknownSubcommand,
    BadInputFile,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::NonRealCoefficients: return "NonRealCoefficients";
    case ErrorCode::MismatchedEstimate: return "MismatchedEstimate";
    case ErrorCode::DomainTooSmall: return "DomainTooSmall";
    case ErrorCode::SingularMap: return "SingularMap";
    case ErrorCode::GridOutsideJ: return "GridOutsideJ";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::PointOutsidePolygon: return "PointOutsidePolygon";
    case ErrorCode::OracleMissingVertex: return "OracleMissingVertex";
    case ErrorCode::NotContainable: return "NotContainable";
    case ErrorCode::NotStarPlanar: return "NotStarPlanar";
    case ErrorCode::InconsistentOracle: return "InconsistentOracle";
    case ErrorCode::OverlappingSquares: return "OverlappingSquares";
    case ErrorCode::PointNotInDomain: return "PointNotInDomain";
    case ErrorCode::DomainNotOnGraph: return "DomainNotOnGraph";
    case ErrorCode::GraphOutsideRectangle: return "GraphOutsideRectangle";
    case ErrorCode::NoAxisPoints: return "NoAxisPoints";
    case ErrorCode::RaysNotInRectangle: return "RaysNotInRectangle";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::UnknownSubcommand: return "UnknownSubcommand";
    case ErrorCode::BadInputFile: return "BadInputFile";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// ---------------------------------------------------------------------------
// Rationals

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p", "-p", "p/q" and finite decimal literals such as "0.25".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw Error(ErrorCode::BadInput, "empty rational literal");
    if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
        s.find('E') != std::string::npos) {
        char* end = nullptr;
        double d = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0' || !std::isfinite(d))
            throw Error(ErrorCode::BadInput, "bad rational literal '" + s + "'");
        return Rational(d);
    }
    Rational q;
    if (q.set_str(s, 10) != 0) throw Error(ErrorCode::BadInput, "bad rational literal '" + s + "'");
    if (q.get_den() == 0) throw Error(ErrorCode::BadInput, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Rational rabs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Rational min_rational(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max_rational(const Rational& a, const Rational& b) { return a < b ? b : a; }

// ---------------------------------------------------------------------------
// Certified reals: a closed rational interval known to contain the true value.

struct CertifiedReal {
    Rational lo;
    Rational hi;

    bool exact() const { return lo == hi; }
    double approx() const { return Rational((lo + hi) / 2).get_d(); }
    Rational width() const { return hi - lo; }
};

inline CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

// Rational bounds on sqrt(q) with width at most 2^-bits relative to the
// denominator; exact when q is the square of a rational.
inline CertifiedReal certified_sqrt(const Rational& q, unsigned bits = 64) {
    if (q < 0) throw Error(ErrorCode::BadInput, "sqrt of negative rational");
    Integer num = q.get_num();
    Integer den = q.get_den();
    Integer rn, rd;
    if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        Rational r(rn, rd);
        r.canonicalize();
        return {r, r};
    }
    // sqrt(num/den) = sqrt(num*den) / den, scaled by 2^bits.
    Integer scaled = num * den;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * bits);
    Integer root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    Integer scale = den;
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
    Rational lo(root, scale);
    Rational hi(root + 1, scale);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

// ---------------------------------------------------------------------------
// Value kinds. A function on a sample takes either exact rational real values
// or floating complex values; magnitudes follow the same split.

template <class V>
struct value_traits;

template <>
struct value_traits<Rational> {
    using magnitude = Rational;
    static constexpr bool exact = true;
    static magnitude abs(const Rational& v) { return rabs(v); }
    static Rational from_rational(const Rational& q) { return q; }
    static Complex to_complex(const Rational& v) { return {v.get_d(), 0.0}; }
    static double to_double(const magnitude& m) { return m.get_d(); }
    static bool is_real(const Rational&) { return true; }
    static Rational real_part(const Rational& v) { return v; }
    static bool equal(const Rational& a, const Rational& b) { return a == b; }
    static magnitude zero() { return 0; }
};

template <>
struct value_traits<Complex> {
    using magnitude = double;
    static constexpr bool exact = false;
    static constexpr double tolerance = 1e-9;
    static magnitude abs(const Complex& v) { return std::abs(v); }
    static Complex from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
    static Complex to_complex(const Complex& v) { return v; }
    static double to_double(const magnitude& m) { return m; }
    static bool is_real(const Complex& v) { return v.imag() == 0.0; }
    static double real_part(const Complex& v) { return v.real(); }
    static bool equal(const Complex& a, const Complex& b) { return std::abs(a - b) <= tolerance; }
    static magnitude zero() { return 0.0; }
};

template <class V>
using magnitude_t = typename value_traits<V>::magnitude;

template <class V>
concept FunctionValue = std::is_same_v<V, Rational> || std::is_same_v<V, Complex>;

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double d) { return d; }

// ---------------------------------------------------------------------------
// Random streams. Every random decision derives from one 64-bit seed; named
// sub-streams are obtained by hashing the stream name into the state.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() { return splitmix64(state_); }

    // Independent child stream keyed by a name and an index.
    Rng split(std::string_view name, std::uint64_t index = 0) const {
        std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
        for (char c : name) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001B3ULL;
        }
        std::uint64_t s = state_ ^ h;
        s ^= splitmix64(s) + index * 0xD1B54A32D192ED03ULL;
        return Rng(splitmix64(s));
    }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = max() - max() % n;
        std::uint64_t r;
        do {
            r = (*this)();
        } while (r >= limit);
        return r % n;
    }

    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // Rational num/den with |num| <= span*den, den drawn from [1, max_den].
    Rational rational(std::int64_t span, std::int64_t max_den) {
        std::int64_t den = range(1, max_den);
        std::int64_t num = range(-span * den, span * den);
        return make_rational(num, den);
    }

private:
    std::uint64_t state_;
};

// Upper bound on worker threads; PLANEVAR_THREADS overrides the hardware count.
inline unsigned thread_cap() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PLANEVAR_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
    }
    return hw;
}

}  // namespace planevar
