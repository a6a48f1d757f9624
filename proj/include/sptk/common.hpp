#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace sptk {

// Points and vectors in R^n are plain coordinate vectors.
using Vec = std::vector<double>;

constexpr double kGeomTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Uniform (max) norm; all distances in this library use it.
inline double norm_inf(const Vec& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

inline double dist_inf(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline bool lex_less(const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Chunked parallel loop. Runs serial when the machine has a single core or
// the range is small; chunks write disjoint state so results do not depend
// on the thread count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw <= 1 || n < 1024) {
        body(0, n);
        return;
    }
    std::size_t nthreads = std::min<std::size_t>(hw, (n + 1023) / 1024);
    std::vector<std::thread> pool;
    std::size_t chunk = (n + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t) {
        std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

// Seeded RNG used by every randomized search; never seeded from the clock.
using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double a, double b) {
    return a + (b - a) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline int uniform_int(Rng& rng, int a, int b) {
    return std::uniform_int_distribution<int>(a, b)(rng);
}

}  // namespace sptk
