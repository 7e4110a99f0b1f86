#include "aet/eigenvalues.hpp"

#include "aet/errors.hpp"
#include "aet/primes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace aet {

namespace {

double tau_to_lambda(int128 tau, uint64_t p) {
    // tau / (p^5 sqrt(p)), evaluated in extended precision
    long double denom = 1.0L;
    for (int i = 0; i < 5; ++i) denom *= (long double)p;
    denom *= sqrtl((long double)p);
    return static_cast<double>((long double)tau / denom);
}

} // namespace

std::shared_ptr<const EigenvalueSource> EigenvalueSource::delta(uint32_t N, int threads) {
    auto src = std::make_shared<EigenvalueSource>();
    src->kind_ = Kind::delta;
    src->tau_ = std::make_shared<TauSeries>(tau_qexpansion(N, kDefaultTauCap, threads));
    src->by_prime_.assign(size_t(N) + 1, std::numeric_limits<double>::quiet_NaN());
    uint64_t last = 0;
    for (uint32_t p : primes_up_to(N)) {
        src->by_prime_[p] = tau_to_lambda(src->tau_->tau[p], p);
        last = p;
    }
    src->coverage_bound_ = last ? last : 1; // largest covered prime
    src->lambda_sup_ = 2.0;
    return src;
}

std::shared_ptr<const EigenvalueSource>
EigenvalueSource::from_table(const std::vector<std::pair<uint64_t, double>>& entries,
                             bool allow_ramanujan_violations) {
    auto src = std::make_shared<EigenvalueSource>();
    src->kind_ = Kind::table;

    uint64_t max_p = 0;
    for (auto& [p, lam] : entries) {
        (void)lam;
        if (!is_prime_u64(p))
            throw data_gap_error("eigenvalue table: " + std::to_string(p) + " is not prime");
        max_p = std::max(max_p, p);
    }
    if (max_p > (uint64_t(1) << 31))
        throw domain_error("eigenvalue table: primes above 2^31 are not supported");

    src->by_prime_.assign(max_p + 1, std::numeric_limits<double>::quiet_NaN());
    std::string violators;
    for (auto& [p, lam] : entries) {
        if (!std::isnan(src->by_prime_[p]))
            throw data_gap_error("eigenvalue table: duplicate prime " + std::to_string(p));
        if (std::fabs(lam) > 2.0 + kRamanujanSlack) {
            ++src->violations_;
            if (!violators.empty()) violators += ", ";
            violators += "p=" + std::to_string(p) + " lambda=" + std::to_string(lam);
        }
        src->lambda_sup_ = std::max(src->lambda_sup_, std::fabs(lam));
        src->by_prime_[p] = lam;
    }
    if (src->violations_ && !allow_ramanujan_violations)
        throw data_gap_error("eigenvalue table violates |lambda| <= 2 + 1e-8 at " + violators +
                             " (pass --allow-ramanujan-violations to accept)");

    // contiguous-prime coverage
    uint64_t cover = 1;
    for (uint64_t p = 2; p <= max_p; p = (p == 2 ? 3 : p + 2)) {
        if (!is_prime_u64(p)) continue;
        if (std::isnan(src->by_prime_[p])) break;
        cover = p;
    }
    src->coverage_bound_ = cover;
    return src;
}

double EigenvalueSource::normalized_lambda(uint64_t p) const {
    if (p > coverage_bound_ || p >= by_prime_.size() || std::isnan(by_prime_[p]))
        throw data_gap_error("no eigenvalue for p=" + std::to_string(p) +
                             " (contiguous coverage ends at " + std::to_string(coverage_bound_) + ")");
    return by_prime_[p];
}

std::shared_ptr<const EigenvalueSource> load_eigenvalues(const std::string& path,
                                                         bool allow_ramanujan_violations) {
    std::ifstream in(path);
    if (!in) throw data_gap_error("cannot open eigenvalue file '" + path + "'");

    std::vector<std::pair<uint64_t, double>> entries;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw data_gap_error(path + ":" + std::to_string(lineno) +
                                 ": expected <prime>,<lambda>");
        try {
            size_t pos = 0;
            uint64_t p = std::stoull(line.substr(first, comma - first), &pos);
            std::string rest = line.substr(comma + 1);
            size_t pos2 = 0;
            double lam = std::stod(rest, &pos2);
            while (pos2 < rest.size() && (rest[pos2] == ' ' || rest[pos2] == '\t')) ++pos2;
            if (pos2 != rest.size())
                throw data_gap_error(path + ":" + std::to_string(lineno) + ": trailing junk");
            entries.emplace_back(p, lam);
        } catch (const data_gap_error&) {
            throw;
        } catch (const std::exception&) {
            throw data_gap_error(path + ":" + std::to_string(lineno) + ": malformed record '" +
                                 line + "'");
        }
    }
    try {
        return EigenvalueSource::from_table(entries, allow_ramanujan_violations);
    } catch (const data_gap_error& e) {
        throw data_gap_error(path + ": " + e.what());
    }
}

std::pair<std::complex<double>, std::complex<double>> gl2_local_roots(double lambda_p,
                                                                      std::complex<double> chi_p) {
    const std::complex<double> b = lambda_p * chi_p;
    const std::complex<double> c = chi_p * chi_p;
    if (std::abs(chi_p) == 0.0 && std::abs(b) == 0.0) return {{0.0, 0.0}, {0.0, 0.0}};
    std::complex<double> sq = std::sqrt(b * b - 4.0 * c);
    // pick the larger root first so the product form for the second is stable
    std::complex<double> r1 = 0.5 * (b + sq);
    std::complex<double> r2 = 0.5 * (b - sq);
    if (std::abs(r1) < std::abs(r2)) std::swap(r1, r2);
    if (std::abs(r1) > 0.0) r2 = c / r1;
    return {r1, r2};
}

} // namespace aet
