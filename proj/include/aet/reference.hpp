#pragma once

#include "aet/sieve_sum.hpp"

namespace aet {

// Serial reference for scan(): one plain loop over n with SPF factorization
// and uncompensated long-double accumulation.  Kept as an independent check
// of the segmented kernel (values agree to ~1e-12 relative, not bitwise) and
// as the baseline of the benchmark target.  Practical up to X ~ 10^7.
ScanResult scan_reference(const EulerProductSpec& spec, uint64_t X,
                          const std::vector<uint64_t>& checkpoints, const ConstantResult& C);

// Serial reference for h_values(): per-n divisor enumeration, O(N sqrt N).
std::vector<cdouble> h_values_reference(const EulerProductSpec& spec, uint64_t N);

} // namespace aet
