#include "aet/reference.hpp"

#include <complex>

namespace aet {

ScanResult scan_reference(const EulerProductSpec& spec, uint64_t X,
                          const std::vector<uint64_t>& checkpoints, const ConstantResult& C) {
    if (X < 1) throw domain_error("scan_reference: X must be >= 1");
    for (uint64_t cp : checkpoints)
        if (cp < 1 || cp > X)
            throw domain_error("scan_reference: checkpoint out of range");

    SpfTable table = build_spf(std::max<uint64_t>(X, 2));
    ScanResult out;
    out.constant = C.value;
    out.constant_tail_bound = C.tail_bound;

    std::complex<long double> S = 0.0L, S0 = 0.0L;
    size_t ci = 0;
    for (uint64_t n = 1; n <= X; ++n) {
        cdouble v(1.0, 0.0);
        uint64_t m = n;
        while (m > 1) {
            uint64_t p = table.spf[m];
            v *= spec.local_inverse_at_one(p);
            do { m /= p; } while (m % p == 0);
        }
        S0 += std::complex<long double>(v.real(), v.imag());
        S += std::complex<long double>((long double)n * v.real(), (long double)n * v.imag());
        while (ci < checkpoints.size() && checkpoints[ci] == n) {
            SummationCheckpoint cp;
            cp.x = n;
            cp.S = {double(S.real()), double(S.imag())};
            cp.S0 = {double(S0.real()), double(S0.imag())};
            double x = double(n);
            cp.E = cp.S - C.value * (x * x);
            cp.E0 = cp.S0 - 2.0 * C.value * x;
            cp.smoothed = cp.S0 - cp.S / x;
            out.checkpoints.push_back(cp);
            ++ci;
        }
    }
    return out;
}

std::vector<cdouble> h_values_reference(const EulerProductSpec& spec, uint64_t N) {
    std::vector<cdouble> h(N + 1, cdouble(0.0, 0.0));
    for (uint64_t n = 1; n <= N; ++n) {
        cdouble acc = 0.0;
        for (uint64_t d = 1; d * d <= n; ++d) {
            if (n % d) continue;
            acc += spec.alpha(d) * spec.coeff(n / d);
            if (d != n / d) acc += spec.alpha(n / d) * spec.coeff(d);
        }
        h[n] = acc;
    }
    return h;
}

} // namespace aet
