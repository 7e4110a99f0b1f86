#include "aet/euler_product.hpp"
#include "aet/spec_string.hpp"

#include "doctest.h"
#include "oracle_helpers.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

using namespace aet;

namespace {

EulerProductSpec make_gl2_chi5(uint32_t tau_n = 2000) {
    return EulerProductSpec::gl2_twisted(EigenvalueSource::delta(tau_n),
                                         DirichletCharacter(5, {1}));
}

} // namespace

TEST_SUITE("euler-core") {

TEST_CASE("local inverse at one") {
    auto zeta = EulerProductSpec::zeta();
    CHECK(zeta.local_inverse_at_one(2) == cdouble(0.5, 0.0));

    auto chi4 = EulerProductSpec::dirichlet(DirichletCharacter(4, {1}));
    CHECK(std::abs(chi4.local_inverse_at_one(3) - cdouble(4.0 / 3.0, 0.0)) < 1e-15);

    auto gl2 = make_gl2_chi5();
    CHECK(gl2.local_inverse_at_one(5) == cdouble(1.0, 0.0)); // chi(5) = 0
}

TEST_CASE("gamma at primes") {
    auto zeta = EulerProductSpec::zeta();
    for (uint64_t p : {2ull, 3ull, 97ull}) CHECK(zeta.local_gamma(p) == cdouble(1.0, 0.0));

    auto chi4 = EulerProductSpec::dirichlet(DirichletCharacter(4, {1}));
    CHECK(chi4.local_gamma(3) == cdouble(-1.0, 0.0));

    auto gl2 = make_gl2_chi5();
    CHECK(gl2.local_gamma(5) == cdouble(0.0, 0.0)); // p | q

    // gamma = p (1 - inv_local) holds across kinds to rounding
    for (uint64_t p : {2ull, 3ull, 7ull, 11ull, 101ull}) {
        for (const auto* s : {&zeta, &chi4, &gl2}) {
            cdouble lhs = s->local_gamma(p);
            cdouble rhs = double(p) * (cdouble(1.0) - s->local_inverse_at_one(p));
            CHECK(std::abs(lhs - rhs) <= 1e-12);
        }
    }

    // |gamma(p)| <= 2^d for every prime consumed
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 997ull}) {
        CHECK(std::abs(zeta.local_gamma(p)) <= 2.0 + 1e-12);
        CHECK(std::abs(chi4.local_gamma(p)) <= 2.0 + 1e-12);
        CHECK(std::abs(gl2.local_gamma(p)) <= 4.0 + 1e-12);
    }
}

TEST_CASE("local inverse stays inside the (1 -/+ 1/p)^d envelope") {
    auto zeta = EulerProductSpec::zeta();
    auto chi4 = EulerProductSpec::dirichlet(DirichletCharacter(4, {1}));
    auto chi7 = EulerProductSpec::dirichlet(DirichletCharacter(7, {1}));
    auto gl2 = make_gl2_chi5();
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 97ull, 997ull}) {
        for (const auto* s : {&zeta, &chi4, &chi7, &gl2}) {
            double lo = std::pow(1.0 - 1.0 / double(p), s->degree());
            double hi = std::pow(1.0 + 1.0 / double(p), s->degree());
            double v = std::abs(s->local_inverse_at_one(p));
            CHECK(v >= lo - 1e-12);
            CHECK(v <= hi + 1e-12);
        }
    }
}

TEST_CASE("alpha basics") {
    auto zeta = EulerProductSpec::zeta();
    CHECK(zeta.alpha(1) == cdouble(1.0, 0.0));
    CHECK(zeta.alpha(6) == cdouble(1.0, 0.0));  // mu(6) * 1 * 1
    CHECK(zeta.alpha(4) == cdouble(0.0, 0.0));  // mu(4) = 0
    auto gl2 = make_gl2_chi5();
    CHECK(gl2.alpha(1) == cdouble(1.0, 0.0));
    CHECK(gl2.alpha(4) == cdouble(0.0, 0.0));
}

TEST_CASE("alpha reduces to mu for zeta, exactly") {
    auto zeta = EulerProductSpec::zeta();
    auto mu = oracles::mu_sieve(3000);
    for (uint64_t n = 1; n <= 3000; ++n) {
        cdouble a = zeta.alpha(n);
        CHECK(a.real() == double(mu[n]));
        CHECK(a.imag() == 0.0);
    }
}

TEST_CASE("totient and the divisor-sum path") {
    auto zeta = EulerProductSpec::zeta();
    CHECK(std::abs(zeta.totient(12) - cdouble(4.0, 0.0)) < 1e-12);
    CHECK(zeta.totient(1) == cdouble(1.0, 0.0));
    CHECK(std::abs(zeta.totient_via_divisors(12) - cdouble(4.0, 0.0)) < 1e-12);
    CHECK(zeta.totient_via_divisors(1) == cdouble(1.0, 0.0));

    auto chi4 = EulerProductSpec::dirichlet(DirichletCharacter(4, {1}));
    CHECK(std::abs(chi4.totient(3) - cdouble(4.0, 0.0)) < 1e-12);

    auto gl2 = make_gl2_chi5();
    CHECK(std::abs(gl2.totient(2) - gl2.totient_via_divisors(2)) <= 1e-12);
}

TEST_CASE("totient reduces to the classical totient for zeta") {
    auto zeta = EulerProductSpec::zeta();
    auto phi = oracles::phi_sieve(10000);
    for (uint64_t n = 1; n <= 10000; ++n) {
        cdouble v = zeta.totient(n);
        CHECK(std::llround(v.real()) == phi[n]);
        CHECK(v.imag() == 0.0);
    }
}

TEST_CASE("two-path equivalence across kinds, n <= 2000") {
    auto zeta = EulerProductSpec::zeta();
    auto chi4 = EulerProductSpec::dirichlet(DirichletCharacter(4, {1}));
    auto gl2 = make_gl2_chi5();
    for (const auto* s : {&zeta, &chi4, &gl2})
        for (uint64_t n = 1; n <= 2000; ++n)
            CHECK(std::abs(s->totient(n) - s->totient_via_divisors(n)) <= 1e-9 * double(n));
}

TEST_CASE("alpha and coeff are multiplicative over all coprime pairs m, n <= 1e3") {
    auto gl2 = make_gl2_chi5();
    const uint64_t M = 1000;
    std::vector<cdouble> a(M + 1), c(M + 1);
    for (uint64_t k = 1; k <= M; ++k) {
        a[k] = gl2.alpha(k);
        c[k] = gl2.coeff(k);
    }
    double worst_a = 0.0, worst_c = 0.0;
    for (uint64_t m = 1; m <= M; ++m)
        for (uint64_t n = m; n <= M; ++n) {
            if (std::gcd(m, n) != 1) continue;
            worst_a = std::max(worst_a, std::abs(gl2.alpha(m * n) - a[m] * a[n]));
            worst_c = std::max(worst_c, std::abs(gl2.coeff(m * n) - c[m] * c[n]));
        }
    CHECK(worst_a <= 1e-12);
    CHECK(worst_c <= 1e-12);
}

TEST_CASE("prime-power coefficients") {
    auto zeta = EulerProductSpec::zeta();
    CHECK(zeta.coeff_prime_power(2, 3) == cdouble(1.0, 0.0));
    CHECK(zeta.coeff(360) == cdouble(1.0, 0.0));
    CHECK(zeta.coeff(1) == cdouble(1.0, 0.0));

    auto gl2 = make_gl2_chi5();
    auto eig = gl2.eigenvalues();
    for (uint64_t p : {2ull, 3ull, 7ull}) {
        auto chi = gl2.character()(p);
        double lam = eig->normalized_lambda(p);
        CHECK(std::abs(gl2.coeff_prime_power(p, 1) - lam * chi) <= 1e-14);
        auto a2 = lam * lam * chi * chi - chi * chi; // Hecke relation
        CHECK(std::abs(gl2.coeff_prime_power(p, 2) - a2) <= 1e-13);
    }

    // untwisted-equivalent: trivial chi mod 1, a(6) = lambda(2) lambda(3)
    auto plain = EulerProductSpec::gl2_twisted(EigenvalueSource::delta(100),
                                               DirichletCharacter::principal(1));
    double l2 = plain.eigenvalues()->normalized_lambda(2);
    double l3 = plain.eigenvalues()->normalized_lambda(3);
    CHECK(std::abs(plain.coeff(6) - cdouble(l2 * l3, 0.0)) <= 1e-14);
}

TEST_CASE("dirichlet coefficients are completely multiplicative") {
    auto chi5 = EulerProductSpec::dirichlet(DirichletCharacter(5, {1}));
    for (uint64_t p : {2ull, 3ull, 7ull})
        for (uint32_t k = 0; k <= 4; ++k) {
            cdouble expect = 1.0;
            for (uint32_t i = 0; i < k; ++i) expect *= chi5.character()(p);
            CHECK(std::abs(chi5.coeff_prime_power(p, k) - expect) <= 1e-13);
        }
}

TEST_CASE("constant for zeta matches 3/pi^2") {
    auto zeta = EulerProductSpec::zeta();
    auto c = zeta.constant(1e-12);
    double target = 3.0 / (std::numbers::pi * std::numbers::pi);
    CHECK(std::abs(c.value.real() - target) / target < 1e-12);
    CHECK(std::abs(c.value.imag()) < 1e-15);
    CHECK(c.tail_bound <= 1e-12);

    auto loose = zeta.constant(0.5);
    CHECK(std::abs(loose.value.real() - target) / target < 0.5);
    CHECK(loose.tail_bound <= 0.5);
    CHECK(c.cutoff >= 32);
    CHECK(c.tail_bound <= 4.0 / double(c.cutoff)); // 2^(d+1)/P coarse bound
}

TEST_CASE("constant for the mod-4 character matches 1/(2 Catalan)") {
    auto spec = EulerProductSpec::dirichlet(DirichletCharacter(4, {1}));
    auto c = spec.constant(1e-9);
    double target = double(1.0L / (2.0L * oracles::catalan(200000)));
    CHECK(std::abs(c.value - cdouble(target, 0.0)) < 1e-9);
}

TEST_CASE("constant honesty: tightening tol moves the value at most tail_bound") {
    auto gl2 = make_gl2_chi5();
    double tol = 2e-3;
    auto c1 = gl2.constant(tol);
    auto c2 = gl2.constant(tol / 10.0);
    CHECK(std::abs(c1.value - c2.value) <= c1.tail_bound * std::abs(c1.value) + 1e-15);
    CHECK(c2.tail_bound <= c1.tail_bound);

    auto zeta = EulerProductSpec::zeta();
    auto z1 = zeta.constant(1e-6);
    auto z2 = zeta.constant(1e-7);
    CHECK(std::abs(z1.value - z2.value) <= z1.tail_bound * std::abs(z1.value) + 1e-15);
}

TEST_CASE("constant tail bound invariant versus the coarse bound") {
    auto gl2 = make_gl2_chi5();
    auto c = gl2.constant(1e-3);
    CHECK(c.cutoff >= 64);
    CHECK(c.tail_bound <= std::pow(2.0, gl2.degree() + 1) / double(c.cutoff));
}

TEST_CASE("constant errors") {
    auto gl2 = make_gl2_chi5(200); // coverage only to 200
    CHECK_THROWS_AS(gl2.constant(1e-9), data_gap_error);
    auto zeta = EulerProductSpec::zeta();
    CHECK_THROWS_AS(zeta.constant(0.0), domain_error);
    CHECK_THROWS_AS(zeta.constant(1e-15), domain_error);
}

TEST_CASE("data gap errors name the prime") {
    auto src = EigenvalueSource::from_table({{2, 0.5}, {3, -0.2}});
    auto spec = EulerProductSpec::gl2_twisted(src, DirichletCharacter::principal(1), "table");
    try {
        spec.totient(25); // needs lambda(5)
        FAIL("expected data_gap_error");
    } catch (const data_gap_error& e) {
        CHECK(std::string(e.what()).find("p=5") != std::string::npos);
    }
}

TEST_CASE("gl2 requires a primitive character") {
    auto src = EigenvalueSource::delta(100);
    CHECK_THROWS_AS(
        EulerProductSpec::gl2_twisted(src, DirichletCharacter::principal(4)),
        spec_parse_error);
    // principal mod 1 is primitive: allowed
    CHECK_NOTHROW(EulerProductSpec::gl2_twisted(src, DirichletCharacter::principal(1)));
}

TEST_CASE("local data cache is consistent under concurrent access") {
    auto gl2 = make_gl2_chi5();
    std::vector<std::thread> workers;
    std::vector<cdouble> seen(8);
    for (int t = 0; t < 8; ++t)
        workers.emplace_back([&, t] {
            cdouble acc = 0.0;
            for (uint64_t p : {2ull, 3ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull})
                acc += gl2.local_gamma(p);
            seen[t] = acc;
        });
    for (auto& w : workers) w.join();
    for (int t = 1; t < 8; ++t) CHECK(seen[t] == seen[0]);
}

TEST_CASE("canonical description round-trips through the parser") {
    for (const char* s :
         {"zeta", "dirichlet:q=4,index=1", "dirichlet:q=8,index=1.1",
          "gl2:source=delta,chi=q=5,index=1"}) {
        SpecParseOptions opt;
        opt.tau_n = 200;
        auto spec = parse_product_spec(s, opt);
        CHECK(canonical_spec_string(spec) == s);
    }
    // non-canonical index reduces
    SpecParseOptions opt;
    opt.tau_n = 200;
    CHECK(canonical_spec_string(parse_product_spec("dirichlet:q=5,index=9", opt)) ==
          "dirichlet:q=5,index=1");
    // gl2 without chi defaults to the trivial character mod 1
    auto plain = parse_product_spec("gl2:source=delta", opt);
    CHECK(canonical_spec_string(plain) == "gl2:source=delta,chi=q=1,index=0");

    CHECK_THROWS_AS(parse_product_spec("zeta2", opt), spec_parse_error);
    CHECK_THROWS_AS(parse_product_spec("gl2:source=magic", opt), spec_parse_error);
    CHECK_THROWS_AS(parse_product_spec("gl2:source=delta,chi=q=4,index=0", opt),
                    spec_parse_error); // non-primitive
}

} // TEST_SUITE
