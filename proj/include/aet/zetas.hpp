#pragma once

#include "aet/characters.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace aet {

// Hurwitz zeta(s, x) for real s >= 2 and 0 < x <= 1, Euler-Maclaurin with a
// rigorous remainder below 1e-16 relative.
double hurwitz_zeta(double s, double x);

// zeta(s) for real s >= 2, same method (no closed forms involved).
double zeta_em(double s);

// L(s, chi) for real s >= 2 via the Hurwitz decomposition over residues.
std::complex<double> dirichlet_l(double s, const DirichletCharacter& chi);

// sum over primes p > P of p^(-s), s >= 2; primes must list every prime <= P.
double prime_zeta_tail(double s, uint64_t P, const std::vector<uint32_t>& primes);

// sum over primes p > P of chi(p) p^(-s), via the Moebius inversion of
// log L(ms, chi^m).
std::complex<double> prime_char_tail(double s, const DirichletCharacter& chi, uint64_t P,
                                     const std::vector<uint32_t>& primes);

} // namespace aet
