#include "aet/primes.hpp"

#include "aet/errors.hpp"

#include <string>

namespace aet {

std::vector<uint32_t> primes_up_to(uint64_t n) {
    std::vector<uint32_t> out;
    if (n < 2) return out;
    std::vector<uint8_t> composite(n + 1, 0);
    for (uint64_t i = 2; i * i <= n; ++i)
        if (!composite[i])
            for (uint64_t j = i * i; j <= n; j += i) composite[j] = 1;
    for (uint64_t i = 2; i <= n; ++i)
        if (!composite[i]) out.push_back(static_cast<uint32_t>(i));
    return out;
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

uint64_t next_prime_after(uint64_t n) {
    uint64_t p = n + 1;
    while (!is_prime_u64(p)) ++p;
    return p;
}

std::vector<std::pair<uint64_t, uint32_t>> factorize_u64(uint64_t n) {
    std::vector<std::pair<uint64_t, uint32_t>> f;
    for (uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        uint32_t k = 0;
        while (n % p == 0) { n /= p; ++k; }
        f.emplace_back(p, k);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

SpfTable build_spf(uint64_t X, uint64_t memory_cap_bytes) {
    if (X < 2) throw domain_error("build_spf: X must be >= 2");
    if (X > 0xFFFFFFFFull) throw domain_error("build_spf: X above 2^32 is not supported");
    uint64_t need = 4 * (X + 1) + 4 * (X / 10 + 16); // table + prime list estimate
    if (need > memory_cap_bytes)
        throw domain_error("build_spf: required allocation " + std::to_string(need) +
                           " bytes exceeds memory cap " + std::to_string(memory_cap_bytes));

    SpfTable t;
    t.X = X;
    t.spf.assign(X + 1, 0);
    std::vector<uint32_t> primes;
    for (uint64_t i = 2; i <= X; ++i) {
        if (t.spf[i] == 0) {
            t.spf[i] = static_cast<uint32_t>(i);
            primes.push_back(static_cast<uint32_t>(i));
        }
        for (uint32_t p : primes) {
            if (p > t.spf[i] || i * p > X) break;
            t.spf[i * p] = p;
        }
    }
    return t;
}

uint64_t radical(const SpfTable& t, uint64_t n) {
    uint64_t r = 1;
    while (n > 1) {
        uint64_t p = t.spf[n];
        r *= p;
        while (n % p == 0) n /= p;
    }
    return r;
}

bool is_squarefree(const SpfTable& t, uint64_t n) {
    while (n > 1) {
        uint64_t p = t.spf[n];
        n /= p;
        if (n % p == 0) return false;
    }
    return true;
}

} // namespace aet
