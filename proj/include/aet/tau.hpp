#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace aet {

using int128 = __int128_t;

std::string int128_to_string(int128 x);

inline constexpr uint32_t kDefaultTauCap = uint32_t(1) << 16;

// Exact Ramanujan tau values tau(1..N).
struct TauSeries {
    uint32_t N = 0;
    std::vector<int128> tau; // tau[n] for n in [1, N]; tau[0] unused

    int128 operator()(uint32_t n) const { return tau[n]; }
};

// q-expansion of the discriminant form through three exact series squarings:
// the cube of Euler's product (Jacobi's identity gives its sparse
// coefficients (-1)^k (2k+1) at triangular numbers) is squared to the 6th,
// 12th and 24th power, and tau(n) is the (n-1)st coefficient of the last.
// All arithmetic is exact in 128-bit integers; a width check before each
// squaring rejects N where an intermediate could overflow.  The result is
// identical for every thread count.
TauSeries tau_qexpansion(uint32_t N, uint32_t cap = kDefaultTauCap, int threads = 0);

} // namespace aet
