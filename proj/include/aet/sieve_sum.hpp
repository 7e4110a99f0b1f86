#pragma once

#include "aet/euler_product.hpp"
#include "aet/primes.hpp"

#include <string>
#include <vector>

namespace aet {

struct SummationCheckpoint {
    uint64_t x = 0;
    cdouble S;        // sum_{n<=x} phi(n,F)
    cdouble S0;       // sum_{n<=x} phi(n,F)/n
    cdouble E;        // S - C x^2
    cdouble E0;       // S0 - 2 C x
    cdouble smoothed; // sum_{n<=x} (1 - n/x) phi(n,F)/n = S0 - S/x
};

struct ScanResult {
    std::vector<SummationCheckpoint> checkpoints;
    cdouble constant;
    double constant_tail_bound = 0.0;
};

// Single pass over n = 1..X with compensated accumulation of S and S0.
//
// Determinism contract: n is consumed in increasing order inside fixed
// 2^16-size segments and segment partial sums fold into the running prefix
// in segment order.  Worker threads only ever compute whole segments, so the
// output is bit-identical for every thread count, and checkpoint values do
// not depend on which other checkpoints were requested.
ScanResult scan(const EulerProductSpec& spec, uint64_t X, const std::vector<uint64_t>& checkpoints,
                const ConstantResult& C, int threads = 0);

// Literal evaluation of sum_{n<=x} (1 - n/x) phi(n,F)/n; oracle for the
// scan's smoothed field.
cdouble smoothed_sum_direct(const EulerProductSpec& spec, uint64_t x);

// phi(n,F)/n for n = 1..X, materialized (the scan itself streams).
std::vector<cdouble> bulk_phi_ratio(const EulerProductSpec& spec, const SpfTable& table,
                                    uint64_t memory_cap_bytes = uint64_t(2) << 30, int threads = 0);

// Default checkpoint schedule: round(10^(k/4)) for k = 4..4*log10(X), deduplicated.
std::vector<uint64_t> geometric_checkpoints(uint64_t X);

// CSV with the fixed header
// x,S_re,S_im,S0_re,S0_im,E_re,E_im,E0_re,E0_im,smoothed_re,smoothed_im
// and 17-significant-digit values.
std::string checkpoints_csv(const std::vector<SummationCheckpoint>& rows);

} // namespace aet
