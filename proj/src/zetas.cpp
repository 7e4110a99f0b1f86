#include "aet/zetas.hpp"

#include "aet/errors.hpp"
#include "aet/kahan.hpp"

#include <cmath>

namespace aet {

namespace {

// B_2, B_4, ..., B_14
constexpr double kBernoulli[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30,
                                 5.0 / 66, -691.0 / 2730, 7.0 / 6};
constexpr int kEmTerms = 7;
constexpr int kEmN = 48; // cutoff of the direct part

// mu(1..30); Moebius inversion of log L never needs more (2^-60 tail).
constexpr int kMu[] = {0, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0, -1, 1, 1,
                       0, -1, 0, -1, 0, 1, 1, -1, 0, 0, 1, 0, 0, -1, 0};

} // namespace

double hurwitz_zeta(double s, double x) {
    if (!(s >= 2.0)) throw domain_error("hurwitz_zeta: s must be >= 2");
    if (!(x > 0.0 && x <= 1.0)) throw domain_error("hurwitz_zeta: x must be in (0, 1]");

    double sum = 0.0;
    for (int k = 0; k < kEmN; ++k) sum += std::pow(k + x, -s);

    const double a = kEmN + x;
    const double ainv2 = 1.0 / (a * a);
    sum += std::pow(a, 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(a, -s);

    // Euler-Maclaurin correction:  B_{2j}/(2j)! * (s)_{2j-1} * a^{-s-2j+1}
    double poch = s;                      // (s)_{2j-1} running product
    double apow = std::pow(a, -s - 1.0);  // a^{-s-2j+1}
    double factinv = 0.5;                 // 1/(2j)!
    for (int j = 1; j <= kEmTerms; ++j) {
        sum += kBernoulli[j - 1] * factinv * poch * apow;
        poch *= (s + 2 * j - 1) * (s + 2 * j);
        apow *= ainv2;
        factinv /= (2 * j + 1) * (2 * j + 2);
    }
    // remainder < |B_16/(16)! (s)_15 a^{-s-15}|, far below 1e-16*sum for a >= 48
    return sum;
}

double zeta_em(double s) { return hurwitz_zeta(s, 1.0); }

std::complex<double> dirichlet_l(double s, const DirichletCharacter& chi) {
    const uint64_t q = chi.modulus();
    std::complex<double> sum = 0.0;
    const double qs = std::pow(double(q), -s);
    for (uint64_t a = 1; a <= q; ++a) {
        if (chi.is_zero_at(a)) continue;
        sum += chi(a) * (qs * hurwitz_zeta(s, double(a) / double(q)));
    }
    return sum;
}

namespace {

// P(s, chi) = sum_p chi(p) p^(-s) = sum_m mu(m)/m log L(ms, chi^m).
std::complex<double> prime_char_full(double s, const DirichletCharacter& chi) {
    std::complex<double> total = 0.0;
    for (int m = 1; m <= 30 && m * s <= 64.0; ++m) {
        if (kMu[m] == 0) continue;
        std::complex<double> L = dirichlet_l(m * s, chi.power(static_cast<uint64_t>(m)));
        total += (double(kMu[m]) / double(m)) * std::log(L); // |L-1| < 1, principal branch
    }
    return total;
}

} // namespace

double prime_zeta_tail(double s, uint64_t P, const std::vector<uint32_t>& primes) {
    double total = 0.0;
    for (int m = 1; m <= 30 && m * s <= 64.0; ++m) {
        if (kMu[m] == 0) continue;
        total += double(kMu[m]) / double(m) * std::log(zeta_em(m * s));
    }
    Kbn partial;
    for (uint32_t p : primes) {
        if (p > P) break;
        partial.add(std::pow(double(p), -s));
    }
    return total - partial.result();
}

std::complex<double> prime_char_tail(double s, const DirichletCharacter& chi, uint64_t P,
                                     const std::vector<uint32_t>& primes) {
    std::complex<double> total = prime_char_full(s, chi);
    KbnComplex partial;
    for (uint32_t p : primes) {
        if (p > P) break;
        partial.add(chi(p) * std::pow(double(p), -s));
    }
    return total - partial.result();
}

} // namespace aet
