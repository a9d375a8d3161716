#ifndef SMCURVE_COMMON_HPP
#define SMCURVE_COMMON_HPP

#include <cfenv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace smcurve {

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double neg_inf() { return -std::numeric_limits<double>::infinity(); }
inline constexpr double pos_inf() { return std::numeric_limits<double>::infinity(); }

// x ln x with the continuous extension x ln x -> 0 at x = 0.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Natural-log binary entropy H(x) = -x ln x - (1-x) ln(1-x), H(0) = H(1) = 0.
inline double binary_entropy(double x) { return -xlogx(x) - xlogx(1.0 - x); }

// +1/-1 decision with ties resolved to +1.
inline int sign_pm(double x) { return x < 0.0 ? -1 : +1; }

// Round-half-even (used wherever the artifact converts alpha*n to a sample count).
inline long round_half_even(double x) {
    return static_cast<long>(std::nearbyint(x));
}

// Clamps values within `slack` outside [lo, hi]; anything further out is a domain error.
inline double clamp_or_throw(double x, double lo, double hi, double slack, const char* what) {
    if (x < lo - slack || x > hi + slack)
        throw std::domain_error(std::string(what) + " out of range: " + std::to_string(x));
    return x < lo ? lo : (x > hi ? hi : x);
}

// ---------------------------------------------------------------------------
// Seed streams. Every trial / grid cell derives its own engine from the master
// seed and its indices, so results do not depend on scheduling or thread count.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a = 0, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    std::uint64_t s = splitmix64(base);
    s = splitmix64(s ^ (a + 0x517cc1b727220a95ULL));
    s = splitmix64(s ^ (b + 0x2545f4914f6cdd1dULL));
    s = splitmix64(s ^ (c + 0x9e3779b97f4a7c15ULL));
    return s;
}

inline std::mt19937_64 make_engine(std::uint64_t base, std::uint64_t a = 0, std::uint64_t b = 0,
                                    std::uint64_t c = 0) {
    return std::mt19937_64(derive_seed(base, a, b, c));
}

// ---------------------------------------------------------------------------
// Deterministic parallel map: item i is a pure function of i (plus derived
// seeds), results land in slot i, so any thread budget gives identical output.
// ---------------------------------------------------------------------------

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    int nt = resolve_threads(threads);
    if (nt <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    nt = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(nt), count));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = static_cast<std::size_t>(t); i < count;
                 i += static_cast<std::size_t>(nt))
                fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// Inclusive arithmetic grid lo, lo+step, ... as long as v < hi + step/2.
// ---------------------------------------------------------------------------

struct Grid {
    double lo = 0.0;
    double hi = 0.0;
    double step = 1.0;

    std::vector<double> values() const {
        if (step <= 0.0) throw std::invalid_argument("grid step must be positive");
        if (hi < lo) throw std::invalid_argument("grid must increase");
        std::vector<double> out;
        for (std::size_t k = 0;; ++k) {
            double v = lo + static_cast<double>(k) * step;
            if (v >= hi + step / 2.0) break;
            out.push_back(v);
        }
        return out;
    }
};

// Parses "lo:hi:step" or a comma-separated list of values.
inline std::vector<double> parse_grid(const std::string& text) {
    auto parse_num = [](const std::string& s) {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("bad number in grid: '" + s + "'");
        return v;
    };
    std::vector<std::string> parts;
    char sep = text.find(':') != std::string::npos ? ':' : ',';
    std::size_t start = 0;
    while (true) {
        std::size_t p = text.find(sep, start);
        parts.push_back(text.substr(start, p == std::string::npos ? p : p - start));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    if (sep == ':') {
        if (parts.size() != 3) throw std::invalid_argument("grid must be lo:hi:step");
        return Grid{parse_num(parts[0]), parse_num(parts[1]), parse_num(parts[2])}.values();
    }
    std::vector<double> out;
    out.reserve(parts.size());
    for (const auto& p : parts) out.push_back(parse_num(p));
    return out;
}

// Mean / standard-error accumulator (merge order fixed by the caller).
struct RunningStats {
    std::size_t n = 0;
    double sum = 0.0;
    double sumsq = 0.0;

    void add(double x) {
        ++n;
        sum += x;
        sumsq += x * x;
    }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
    double variance() const {
        if (n < 2) return 0.0;
        double m = mean();
        double v = (sumsq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
        return v > 0.0 ? v : 0.0;
    }
    double stderr_mean() const {
        return n < 2 ? 0.0 : std::sqrt(variance() / static_cast<double>(n));
    }
};

}  // namespace smcurve

#endif
