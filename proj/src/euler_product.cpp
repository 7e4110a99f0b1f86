#include "aet/euler_product.hpp"

#include "aet/kahan.hpp"
#include "aet/primes.hpp"
#include "aet/zetas.hpp"

#include <cmath>

namespace aet {

EulerProductSpec::EulerProductSpec(ProductKind kind, DirichletCharacter chi,
                                   std::shared_ptr<const EigenvalueSource> eigen,
                                   std::string label)
    : kind_(kind), chi_(std::move(chi)), eigen_(std::move(eigen)),
      source_label_(std::move(label)), cache_(std::make_shared<Cache>()) {}

EulerProductSpec EulerProductSpec::zeta() {
    return EulerProductSpec(ProductKind::zeta, DirichletCharacter::principal(1), nullptr, "");
}

EulerProductSpec EulerProductSpec::dirichlet(DirichletCharacter chi) {
    return EulerProductSpec(ProductKind::dirichlet_l, std::move(chi), nullptr, "");
}

EulerProductSpec EulerProductSpec::gl2_twisted(std::shared_ptr<const EigenvalueSource> eigen,
                                               DirichletCharacter chi, std::string source_label) {
    if (!eigen) throw domain_error("gl2_twisted: eigenvalue source required");
    if (!chi.is_primitive())
        throw spec_parse_error("gl2_twisted: character " + chi.to_string() +
                               " is not primitive (conductor " + std::to_string(chi.conductor()) +
                               ")");
    return EulerProductSpec(ProductKind::gl2_twisted, std::move(chi), std::move(eigen),
                            std::move(source_label));
}

std::string EulerProductSpec::description() const {
    switch (kind_) {
    case ProductKind::zeta:
        return "zeta";
    case ProductKind::dirichlet_l:
        return "dirichlet:" + chi_.to_string();
    case ProductKind::gl2_twisted:
        return "gl2:source=" + source_label_ + ",chi=" + chi_.to_string();
    }
    return "";
}

uint64_t EulerProductSpec::coverage_bound() const {
    return kind_ == ProductKind::gl2_twisted ? eigen_->coverage_bound() : UINT64_MAX;
}

LocalData EulerProductSpec::compute_local(uint64_t p) const {
    LocalData d;
    d.p = p;
    const double pd = double(p);
    switch (kind_) {
    case ProductKind::zeta:
        d.inv_local = 1.0 - 1.0 / pd;
        d.gamma = 1.0; // p (1 - (1 - 1/p)) exactly
        break;
    case ProductKind::dirichlet_l: {
        cdouble x = chi_(p);
        d.inv_local = 1.0 - x / pd;
        d.gamma = x;
        break;
    }
    case ProductKind::gl2_twisted: {
        cdouble x = chi_(p);
        if (x == cdouble(0.0, 0.0)) {
            d.inv_local = 1.0;
            d.gamma = 0.0;
        } else {
            double lam = eigen_->normalized_lambda(p);
            cdouble lx = lam * x;
            cdouble x2 = x * x;
            d.inv_local = 1.0 - lx / pd + x2 / (pd * pd);
            d.gamma = lx - x2 / pd;
        }
        break;
    }
    }
    // |gamma(p)| <= 2^d whenever the coefficient data satisfies the
    // Ramanujan bound; only explicitly allowed violations may exceed it.
    double limit = double(1 << degree()) + 1e-6;
    if (eigen_ && eigen_->ramanujan_violations() > 0) limit = eigen_->lambda_sup() + 1.0;
    if (std::abs(d.gamma) > limit)
        throw domain_error("local gamma out of range at p=" + std::to_string(p));
    return d;
}

LocalData EulerProductSpec::local_data(uint64_t p) const {
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->map.find(p);
        if (it != cache_->map.end()) return it->second;
    }
    LocalData d = compute_local(p);
    std::lock_guard<std::mutex> lock(cache_->mu);
    return cache_->map.emplace(p, d).first->second;
}

void EulerProductSpec::local_poly(uint64_t p, cdouble& e1, cdouble& e2) const {
    switch (kind_) {
    case ProductKind::zeta:
        e1 = -1.0;
        e2 = 0.0;
        break;
    case ProductKind::dirichlet_l:
        e1 = -chi_(p);
        e2 = 0.0;
        break;
    case ProductKind::gl2_twisted: {
        cdouble x = chi_(p);
        if (x == cdouble(0.0, 0.0)) {
            e1 = 0.0;
            e2 = 0.0;
        } else {
            e1 = -eigen_->normalized_lambda(p) * x;
            e2 = x * x;
        }
        break;
    }
    }
}

cdouble EulerProductSpec::alpha(uint64_t n) const {
    if (n == 0) throw domain_error("alpha: n must be positive");
    cdouble prod = 1.0;
    int omega = 0;
    for (auto& [p, k] : factorize_u64(n)) {
        if (k >= 2) return 0.0; // mu(n) = 0
        prod *= local_gamma(p);
        ++omega;
    }
    return (omega & 1) ? -prod : prod;
}

cdouble EulerProductSpec::totient(uint64_t n) const {
    if (n == 0) throw domain_error("totient: n must be positive");
    cdouble prod = double(n);
    for (auto& [p, k] : factorize_u64(n)) {
        (void)k;
        prod *= local_inverse_at_one(p);
    }
    return prod;
}

cdouble EulerProductSpec::totient_via_divisors(uint64_t n) const {
    if (n == 0) throw domain_error("totient_via_divisors: n must be positive");
    auto fac = factorize_u64(n);
    // enumerate all divisors and sum alpha(m)/m literally
    std::vector<uint64_t> divisors{1};
    for (auto& [p, k] : fac) {
        size_t base = divisors.size();
        uint64_t pe = 1;
        for (uint32_t e = 1; e <= k; ++e) {
            pe *= p;
            for (size_t i = 0; i < base; ++i) divisors.push_back(divisors[i] * pe);
        }
    }
    cdouble sum = 0.0;
    for (uint64_t m : divisors) sum += alpha(m) / double(m);
    return double(n) * sum;
}

cdouble EulerProductSpec::coeff_prime_power(uint64_t p, uint32_t k) const {
    cdouble e1, e2;
    local_poly(p, e1, e2);
    cdouble a0 = 1.0, a1 = 0.0; // a(p^{j}), a(p^{j-1})
    for (uint32_t j = 1; j <= k; ++j) {
        cdouble next = -(e1 * a0) - (j >= 2 ? e2 * a1 : cdouble(0.0));
        a1 = a0;
        a0 = next;
    }
    return a0;
}

cdouble EulerProductSpec::coeff(uint64_t n) const {
    if (n == 0) throw domain_error("coeff: n must be positive");
    cdouble prod = 1.0;
    for (auto& [p, k] : factorize_u64(n)) prod *= coeff_prime_power(p, k);
    return prod;
}

namespace {

// error budget of the analytic degree-1 tail (Euler-Maclaurin evaluations,
// Moebius/log truncations, product roundoff)
constexpr double kDegree1Floor = 2e-13;

} // namespace

ConstantResult EulerProductSpec::constant(double tol) const {
    if (!(tol > 0.0)) throw domain_error("constant: tol must be positive");

    const int d = degree();
    if (d == 1 && tol < kDegree1Floor)
        throw domain_error("constant: tol=" + std::to_string(tol) +
                           " is below the attainable tail bound " + std::to_string(kDegree1Floor));
    const uint64_t coverage = coverage_bound();
    uint64_t P = uint64_t(1) << (d + 4);
    if (P > coverage) P = coverage;

    for (;;) {
        auto primes = primes_up_to(P);
        double bound;
        cdouble tail_log = 0.0;

        if (d == 1) {
            // gamma(p) = chi(p): sum_{p>P} log(1 - chi(p)/p^2) is a
            // convergent series of computable prime character sums.
            for (int k = 1;; ++k) {
                cdouble t = prime_char_tail(2.0 * k, chi_.power(uint64_t(k)), P, primes);
                tail_log -= t / double(k);
                double scale = std::pow(double(P), -2.0 * k);
                if (scale < 1e-18 || k >= 16) break;
            }
            bound = kDegree1Floor;
        } else {
            // |gamma(p)| <= lambda_sup + 1/p for p > P; only an absolute
            // bound is available for the eigenvalue part.
            double g = std::max(2.0 + kRamanujanSlack, eigen_->lambda_sup()) + 1.0 / double(P);
            double T = prime_zeta_tail(2.0, P, primes);
            double log_bound = g * T;
            double scale = 1.0;
            for (int k = 2; k <= 8; ++k) {
                scale /= double(P) * double(P);
                log_bound += std::pow(g, k) / k * T * scale;
            }
            bound = std::expm1(log_bound) * 1.01 + kDegree1Floor;
        }

        if (bound <= tol) {
            KbnComplex log_prod; // sum of log(1 - gamma/p^2), then exponentiate
            for (uint32_t p : primes) {
                cdouble g = local_gamma(p);
                log_prod.add(std::log(cdouble(1.0) - g / (double(p) * double(p))));
            }
            cdouble value = 0.5 * std::exp(log_prod.result() + tail_log);
            return {value, P, bound};
        }

        if (P >= coverage)
            throw data_gap_error("constant: tol=" + std::to_string(tol) +
                                 " needs eigenvalues at p=" +
                                 std::to_string(next_prime_after(coverage)) +
                                 " and beyond (coverage ends at " + std::to_string(coverage) +
                                 "; reachable bound " + std::to_string(bound) + ")");
        if (P > (uint64_t(1) << 26))
            throw domain_error("constant: tol=" + std::to_string(tol) +
                               " is below the attainable tail bound");
        P = std::min(P * 2, coverage);
    }
}

double EulerProductSpec::best_constant_tol() const {
    if (degree() == 1) return kDegree1Floor;
    const uint64_t P = coverage_bound();
    auto primes = primes_up_to(P);
    double g = std::max(2.0 + kRamanujanSlack, eigen_->lambda_sup()) + 1.0 / double(P);
    double T = prime_zeta_tail(2.0, P, primes);
    double log_bound = g * T;
    double scale = 1.0;
    for (int k = 2; k <= 8; ++k) {
        scale /= double(P) * double(P);
        log_bound += std::pow(g, k) / k * T * scale;
    }
    return std::expm1(log_bound) * 1.01 + kDegree1Floor;
}

} // namespace aet
