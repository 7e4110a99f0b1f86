#pragma once

#include "aet/sieve_sum.hpp"

#include <string>
#include <utility>
#include <vector>

namespace aet {

inline constexpr double kResidualFloor = 1e-14; // |R| at or below this is excluded from fits

// R(x) = E0(x) - E(x)/x per checkpoint.
std::vector<std::pair<uint64_t, cdouble>>
residual_series(const std::vector<SummationCheckpoint>& checkpoints);

struct DecayFit {
    double slope = 0.0;     // of log|R| against sqrt(log x)
    double intercept = 0.0;
    size_t used_points = 0;
    size_t excluded_near_zero = 0;
};

// Ordinary least squares of log|R| against sqrt(log x); points with
// |R| <= 1e-14 are excluded (and counted).  Fewer than 3 usable points is a
// domain_error.
DecayFit decay_fit(const std::vector<std::pair<uint64_t, cdouble>>& series);

struct ResidualReport {
    std::string spec_description;
    std::vector<std::pair<uint64_t, cdouble>> residuals;
    bool fit_valid = false; // false when fewer than 3 points carried |R| > 1e-14
    DecayFit fit;
    double max_abs_R = 0.0;
    size_t monotonicity_violations = 0; // consecutive |R| increases
    // max over checkpoints of |R - (smoothed - C x)| / (1 + |smoothed|);
    // algebraically zero, so this is a pure rounding diagnostic
    double max_identity_gap = 0.0;
    // uncertainty bookkeeping: E inherits C.tail_bound * |C| * x^2 of
    // uncertainty from the truncated constant
    double constant_tail_bound = 0.0;
};

ResidualReport make_residual_report(const EulerProductSpec& spec, const ScanResult& scan);

// For products whose Dirichlet series is finite and nonzero at s = 1 (the
// twisted degree-2 kind, or a non-principal degree-1 L), the residual
// R(x) = E0 - E/x approaches the constant -H(1)/(2 L(1)) instead of zero:
// shifting the smoothed-sum contour past s = 0 picks up the residue
// zeta(0) H(1)/L(1) there.  (For the zeta kind 1/zeta(1) = 0 kills it, which
// is why the classical relation carries no constant.)  The limit is
// estimated from the series themselves - H(1) by truncation, L(1) with a
// Cesaro factor - and the decay of |R - limit| is fitted like decay_fit.
struct ResidualOffsetFit {
    cdouble limit;        // -H(1)/(2 L(1)) estimate
    bool fit_valid = false;
    DecayFit fit;         // log|R - limit| against sqrt(log x)
    double last_gap = 0;  // |R - limit| at the largest checkpoint
};

bool has_residual_offset(const EulerProductSpec& spec);
ResidualOffsetFit residual_offset_fit(const EulerProductSpec& spec,
                                      const std::vector<std::pair<uint64_t, cdouble>>& residuals,
                                      uint64_t series_N, int threads = 0);

// sum over squarefree n <= N of alpha(n)/n^2, compensated.
cdouble alpha_series_partial(const EulerProductSpec& spec, uint64_t N);

// h = a_F * alpha (Dirichlet convolution), h(1..N).  Parallel strips over
// the output range combine per-owner in ascending d order, so the result is
// thread-count independent.
std::vector<cdouble> h_values(const EulerProductSpec& spec, uint64_t N, int threads = 0);

// (max |h(n)| over squarefree n, smallest n attaining it)
std::pair<double, uint64_t> h_boundedness_report(const std::vector<cdouble>& h,
                                                 const SpfTable& table);

struct ConstantIdentityGaps {
    double ratio_gap; // |(sum h/n^2)/(sum a_F/n^2) - 2C|
    double alpha_gap; // |sum alpha/n^2 - 2C|
};

ConstantIdentityGaps verify_constant_identity(const EulerProductSpec& spec, uint64_t N,
                                              const ConstantResult& C);

struct SeriesReport {
    std::string spec_description;
    uint64_t N = 0;
    cdouble partial;     // sum_{n<=N} alpha(n)/n^2
    cdouble target;      // 2 C(F)
    double gap = 0.0;    // |partial - target|
    double h_max_squarefree = 0.0;
    uint64_t h_argmax = 0;
    std::vector<cdouble> h_table; // h(1..min(N,100))
    double constant_identity_gap = 0.0;
};

SeriesReport make_series_report(const EulerProductSpec& spec, uint64_t N, const ConstantResult& C,
                                int threads = 0);

enum class ReportFormat { csv, json, plot_data };

// Deterministic serialization; numbers carry 17 significant digits.
// plot-data for a residual report is "sqrt_log_x log_abs_R" rows over the
// fitted points; for a series report it is "n abs_h" rows over the h table.
std::string emit_report(const ResidualReport& report, ReportFormat format);
std::string emit_report(const SeriesReport& report, ReportFormat format);

} // namespace aet
