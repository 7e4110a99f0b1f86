#pragma once

#include "aet/tau.hpp"

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace aet {

inline constexpr double kRamanujanSlack = 1e-8; // table entries must satisfy |lambda| <= 2 + slack

// Supplier of normalized Hecke eigenvalues lambda_f(p).
//
// delta kind: lambda(p) = tau(p) / p^(11/2) with tau exact; the Deligne
// bound |lambda| <= 2 holds unconditionally.
// table kind: entries are validated against |lambda| <= 2 + 1e-8 unless
// violations are explicitly allowed, in which case they are counted.
//
// coverage_bound() is the largest P such that every prime <= P has a value;
// queries beyond it raise data_gap_error.
class EigenvalueSource {
public:
    enum class Kind { delta, table };

    static std::shared_ptr<const EigenvalueSource> delta(uint32_t N = 10000, int threads = 0);
    static std::shared_ptr<const EigenvalueSource>
    from_table(const std::vector<std::pair<uint64_t, double>>& entries,
               bool allow_ramanujan_violations = false);

    Kind kind() const { return kind_; }
    uint64_t coverage_bound() const { return coverage_bound_; }
    double normalized_lambda(uint64_t p) const;
    uint64_t ramanujan_violations() const { return violations_; }
    double lambda_sup() const { return lambda_sup_; } // max |lambda| seen (2 for delta)
    const TauSeries* tau() const { return tau_ ? &*tau_ : nullptr; }

private:
    Kind kind_ = Kind::delta;
    uint64_t coverage_bound_ = 0;
    std::vector<double> by_prime_; // indexed by prime value, NaN elsewhere
    uint64_t violations_ = 0;
    double lambda_sup_ = 2.0;
    std::shared_ptr<TauSeries> tau_;
};

// Plain-text eigenvalue table: one "<prime>,<lambda>" record per line,
// '#' comments and blank lines allowed, LF or CRLF.
std::shared_ptr<const EigenvalueSource> load_eigenvalues(const std::string& path,
                                                         bool allow_ramanujan_violations = false);

// Roots of x^2 - lambda*chi_p*x + chi_p^2 (diagnostic only; evaluation never
// uses roots).  chi_p = 0 degenerates to (0, 0).
std::pair<std::complex<double>, std::complex<double>> gl2_local_roots(double lambda_p,
                                                                      std::complex<double> chi_p);

} // namespace aet
