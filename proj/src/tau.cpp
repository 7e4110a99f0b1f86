#include "aet/tau.hpp"

#include "aet/errors.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace aet {

std::string int128_to_string(int128 x) {
    if (x == 0) return "0";
    bool neg = x < 0;
    __uint128_t v = neg ? -(__uint128_t)x : (__uint128_t)x;
    std::string s;
    while (v) {
        s += char('0' + int(v % 10));
        v /= 10;
    }
    if (neg) s += '-';
    std::reverse(s.begin(), s.end());
    return s;
}

namespace {

// c[n] = sum_{i+j=n} a[i] a[j], truncated at a.size() terms.
std::vector<int128> square_series(const std::vector<int128>& a, int threads) {
    const int64_t len = static_cast<int64_t>(a.size());

    // Width check: |c[n]| <= (n/2+1) * max|a|^2 must stay below 2^126.
    long double amax = 0.0L;
    for (int128 v : a) {
        long double av = fabsl((long double)v);
        if (av > amax) amax = av;
    }
    if (amax * amax * (long double)len >= ldexpl(1.0L, 125))
        throw domain_error("square_series: coefficients would overflow 128-bit integers");

    std::vector<int128> c(a.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 256) num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
    for (int64_t n = 0; n < len; ++n) {
        int128 acc = 0;
        int64_t half = n / 2;
        for (int64_t i = 0; i < half + (n & 1); ++i) {
            if (a[i] == 0 || a[n - i] == 0) continue;
            acc += a[i] * a[n - i];
        }
        acc *= 2;
        if ((n & 1) == 0) acc += a[half] * a[half];
        c[n] = acc;
    }
    return c;
}

} // namespace

TauSeries tau_qexpansion(uint32_t N, uint32_t cap, int threads) {
    if (N < 1) throw domain_error("tau_qexpansion: N must be >= 1");
    if (N > cap)
        throw domain_error("tau_qexpansion: N=" + std::to_string(N) + " exceeds the cap " +
                           std::to_string(cap) +
                           " (three dense squarings need O(N^2) work and O(N) 128-bit storage; "
                           "raise the cap only with the memory to match)");

    // Jacobi: prod (1-q^n)^3 = sum_k (-1)^k (2k+1) q^{k(k+1)/2}
    std::vector<int128> p3(N, 0);
    for (uint64_t k = 0;; ++k) {
        uint64_t t = k * (k + 1) / 2;
        if (t >= N) break;
        int128 v = (int128)(2 * k + 1);
        p3[t] = (k & 1) ? -v : v;
    }

    auto p6 = square_series(p3, threads);
    auto p12 = square_series(p6, threads);
    auto p24 = square_series(p12, threads);

    TauSeries s;
    s.N = N;
    s.tau.assign(size_t(N) + 1, 0);
    for (uint32_t n = 1; n <= N; ++n) s.tau[n] = p24[n - 1];
    return s;
}

} // namespace aet
