#include "aet/sieve_sum.hpp"

#include "aet/kahan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace aet {

namespace {

constexpr uint64_t kSegment = uint64_t(1) << 16;

void require_coverage(const EulerProductSpec& spec, uint64_t X, const char* who) {
    // coverage_bound is the largest covered prime; the range is fine as long
    // as the first uncovered prime lies beyond X
    uint64_t cov = spec.coverage_bound();
    if (cov < X && next_prime_after(cov) <= X)
        throw data_gap_error(std::string(who) + ": no eigenvalue for p=" +
                             std::to_string(next_prime_after(cov)) +
                             " (need all primes <= " + std::to_string(X) + ")");
}

// Uncached per-prime evaluation of 1/F_p(1), cheap enough for the one large
// prime factor left per n after the small-prime strides.
struct InvLocalEval {
    ProductKind kind;
    const DirichletCharacter* chi;
    const EigenvalueSource* eig;

    explicit InvLocalEval(const EulerProductSpec& spec)
        : kind(spec.kind()), chi(&spec.character()), eig(spec.eigenvalues()) {}

    cdouble operator()(uint64_t p) const {
        double pd = double(p);
        switch (kind) {
        case ProductKind::zeta:
            return 1.0 - 1.0 / pd;
        case ProductKind::dirichlet_l:
            return 1.0 - (*chi)(p) / pd;
        case ProductKind::gl2_twisted: {
            cdouble x = (*chi)(p);
            if (x == cdouble(0.0, 0.0)) return 1.0;
            return 1.0 - eig->normalized_lambda(p) * x / pd + x * x / (pd * pd);
        }
        }
        return 1.0;
    }
};

struct SegmentSums {
    KbnComplex S, S0;
};

} // namespace

std::vector<uint64_t> geometric_checkpoints(uint64_t X) {
    std::vector<uint64_t> cps;
    if (X < 10) return cps;
    int kmax = int(std::floor(4.0 * std::log10(double(X)) + 1e-9));
    for (int k = 4; k <= kmax; ++k) {
        uint64_t x = uint64_t(std::llround(std::pow(10.0, k / 4.0)));
        if (x > X) break;
        if (cps.empty() || cps.back() != x) cps.push_back(x);
    }
    return cps;
}

ScanResult scan(const EulerProductSpec& spec, uint64_t X, const std::vector<uint64_t>& checkpoints,
                const ConstantResult& C, int threads) {
    if (X < 1) throw domain_error("scan: X must be >= 1");
    if (X > (uint64_t(4) << 30))
        throw domain_error("scan: X above 2^32 is not supported (per-segment bookkeeping "
                           "and 32-bit prime sieving assume desk scale)");
    for (size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 1 || checkpoints[i] > X)
            throw domain_error("scan: checkpoint " + std::to_string(checkpoints[i]) +
                               " out of range [1, " + std::to_string(X) + "]");
        if (i && checkpoints[i] <= checkpoints[i - 1])
            throw domain_error("scan: checkpoints must be strictly ascending");
    }
    require_coverage(spec, X, "scan");

    const uint64_t sq = uint64_t(std::sqrt(double(X)));
    auto small_primes = primes_up_to(sq + 1 < X ? sq + 1 : sq);
    while (!small_primes.empty() &&
           uint64_t(small_primes.back()) * small_primes.back() > X)
        small_primes.pop_back();

    std::vector<cdouble> inv_small(small_primes.size());
    const InvLocalEval inv_eval(spec);
    for (size_t i = 0; i < small_primes.size(); ++i) inv_small[i] = inv_eval(small_primes[i]);

    const uint64_t nseg = (X + kSegment - 1) / kSegment;
    std::vector<SegmentSums> seg_totals(nseg);
    // checkpoint index range per segment (checkpoints are sorted)
    std::vector<std::pair<size_t, size_t>> seg_cps(nseg, {0, 0});
    {
        size_t ci = 0;
        for (uint64_t s = 0; s < nseg && ci < checkpoints.size(); ++s) {
            uint64_t hi = std::min((s + 1) * kSegment, X);
            size_t lo = ci;
            while (ci < checkpoints.size() && checkpoints[ci] <= hi) ++ci;
            seg_cps[s] = {lo, ci};
        }
    }
    std::vector<SegmentSums> snapshots(checkpoints.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
    for (int64_t s = 0; s < int64_t(nseg); ++s) {
        const uint64_t l = uint64_t(s) * kSegment + 1;
        const uint64_t r = std::min(l + kSegment - 1, X);
        const size_t len = size_t(r - l + 1);

        std::vector<cdouble> val(len, cdouble(1.0, 0.0));
        std::vector<uint64_t> rem(len);
        for (size_t i = 0; i < len; ++i) rem[i] = l + i;

        for (size_t pi = 0; pi < small_primes.size(); ++pi) {
            const uint64_t p = small_primes[pi];
            const cdouble inv = inv_small[pi];
            for (uint64_t m = (l + p - 1) / p * p; m <= r; m += p) {
                size_t i = size_t(m - l);
                val[i] *= inv;
                rem[i] /= p;
            }
            // strip the remaining p-power part one stride level at a time
            for (uint64_t pk = p * p; pk <= r; pk *= p)
                for (uint64_t m = (l + pk - 1) / pk * pk; m <= r; m += pk) rem[size_t(m - l)] /= p;
        }

        SegmentSums sums;
        size_t ci = seg_cps[s].first;
        const size_t ce = seg_cps[s].second;
        for (uint64_t n = l; n <= r; ++n) {
            size_t i = size_t(n - l);
            cdouble v = val[i];
            if (rem[i] > 1) v *= inv_eval(rem[i]);
            sums.S0.add(v);
            sums.S.add(double(n) * v);
            while (ci < ce && checkpoints[ci] == n) {
                snapshots[ci] = sums;
                ++ci;
            }
        }
        seg_totals[s] = sums;
    }

    // serial combine in fixed segment order
    ScanResult out;
    out.constant = C.value;
    out.constant_tail_bound = C.tail_bound;
    out.checkpoints.reserve(checkpoints.size());
    KbnComplex S, S0;
    size_t ci = 0;
    for (uint64_t s = 0; s < nseg; ++s) {
        for (; ci < seg_cps[s].second; ++ci) {
            KbnComplex cs = S, cs0 = S0;
            cs.combine(snapshots[ci].S);
            cs0.combine(snapshots[ci].S0);
            SummationCheckpoint cp;
            cp.x = checkpoints[ci];
            cp.S = cs.result();
            cp.S0 = cs0.result();
            const double x = double(cp.x);
            cp.E = cp.S - C.value * (x * x);
            cp.E0 = cp.S0 - 2.0 * C.value * x;
            cp.smoothed = cp.S0 - cp.S / x;
            out.checkpoints.push_back(cp);
        }
        S.combine(seg_totals[s].S);
        S0.combine(seg_totals[s].S0);
    }
    return out;
}

cdouble smoothed_sum_direct(const EulerProductSpec& spec, uint64_t x) {
    if (x < 1) throw domain_error("smoothed_sum_direct: x must be >= 1");
    require_coverage(spec, x, "smoothed_sum_direct");
    if (x == 1) return 0.0; // the n = 1 term has weight zero

    auto table = build_spf(x);
    const InvLocalEval inv_eval(spec);
    std::complex<long double> acc = 0.0L;
    for (uint64_t n = 1; n <= x; ++n) {
        cdouble v(1.0, 0.0);
        uint64_t m = n;
        while (m > 1) {
            uint64_t p = table.spf[m];
            v *= inv_eval(p);
            do { m /= p; } while (m % p == 0);
        }
        long double w = 1.0L - (long double)n / (long double)x;
        acc += std::complex<long double>(w * v.real(), w * v.imag());
    }
    return {double(acc.real()), double(acc.imag())};
}

std::vector<cdouble> bulk_phi_ratio(const EulerProductSpec& spec, const SpfTable& table,
                                    uint64_t memory_cap_bytes, int threads) {
    const uint64_t X = table.X;
    require_coverage(spec, X, "bulk_phi_ratio");
    uint64_t need = 32 * (X + 1);
    if (need > memory_cap_bytes)
        throw domain_error("bulk_phi_ratio: required allocation " + std::to_string(need) +
                           " bytes exceeds memory cap " + std::to_string(memory_cap_bytes));

    // prime-indexed cache of 1/F_p(1)
    std::vector<cdouble> inv_by_prime(X + 1, cdouble(1.0, 0.0));
    const InvLocalEval inv_eval(spec);
    for (uint64_t p = 2; p <= X; ++p)
        if (table.spf[p] == p) inv_by_prime[p] = inv_eval(p);

    std::vector<cdouble> out(X + 1, cdouble(1.0, 0.0));
    out[0] = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
    for (int64_t n = 2; n <= int64_t(X); ++n) {
        cdouble v(1.0, 0.0);
        uint64_t m = uint64_t(n);
        while (m > 1) {
            uint64_t p = table.spf[m];
            v *= inv_by_prime[p];
            do { m /= p; } while (m % p == 0);
        }
        out[n] = v;
    }
    return out;
}

std::string checkpoints_csv(const std::vector<SummationCheckpoint>& rows) {
    std::string out = "x,S_re,S_im,S0_re,S0_im,E_re,E_im,E0_re,E0_im,smoothed_re,smoothed_im\n";
    char buf[400];
    for (const auto& c : rows) {
        std::snprintf(buf, sizeof(buf),
                      "%llu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      static_cast<unsigned long long>(c.x), c.S.real(), c.S.imag(), c.S0.real(),
                      c.S0.imag(), c.E.real(), c.E.imag(), c.E0.real(), c.E0.imag(),
                      c.smoothed.real(), c.smoothed.imag());
        out += buf;
    }
    return out;
}

} // namespace aet
