#pragma once

#include <cstdint>
#include <vector>

namespace aet {

// Primes <= n, plain sieve of Eratosthenes.  Intended for n up to ~10^8.
std::vector<uint32_t> primes_up_to(uint64_t n);

bool is_prime_u64(uint64_t n);

uint64_t next_prime_after(uint64_t n);

// Trial-division factorization, ascending primes with exponents.
std::vector<std::pair<uint64_t, uint32_t>> factorize_u64(uint64_t n);

// Smallest-prime-factor table for 2..X (linear sieve).
struct SpfTable {
    uint64_t X = 0;
    std::vector<uint32_t> spf; // spf[n] for n in [0, X]; spf[0] = spf[1] = 0

    uint32_t operator()(uint64_t n) const { return spf[n]; }
};

// Throws domain_error naming the required allocation when 4*(X+1) bytes
// would exceed memory_cap_bytes.
SpfTable build_spf(uint64_t X, uint64_t memory_cap_bytes = uint64_t(2) << 30);

uint64_t radical(const SpfTable& t, uint64_t n);
bool is_squarefree(const SpfTable& t, uint64_t n);

} // namespace aet
