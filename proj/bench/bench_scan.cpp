// Benchmark of the OpenMP kernels against their serial references.
//
//   bench_scan [Xmax] [tauN] [hN]     defaults: 1e7 16384 300000
//
// Also asserts the determinism contract (parallel output bit-identical to
// one thread) and cross-checks the parallel kernels against the reference
// implementations, so a speedup here is never bought with a wrong answer.

#include "aet/analysis.hpp"
#include "aet/reference.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace aet;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename F> double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return seconds_since(t0);
}

} // namespace

int main(int argc, char** argv) {
    uint64_t X = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 10000000ull;
    uint32_t tau_n = argc > 2 ? uint32_t(std::strtoul(argv[2], nullptr, 10)) : 16384u;
    uint64_t h_n = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 300000ull;
#ifdef _OPENMP
    int max_threads = omp_get_max_threads();
#else
    int max_threads = 1;
#endif
    std::printf("bench: X=%llu tauN=%u hN=%llu threads=%d\n\n", (unsigned long long)X, tau_n,
                (unsigned long long)h_n, max_threads);

    auto zeta = EulerProductSpec::zeta();
    auto C = zeta.constant(1e-12);
    auto cps = geometric_checkpoints(X);

    // ---- scan ----
    ScanResult r1, rp, rref;
    double t1 = timed([&] { r1 = scan(zeta, X, cps, C, 1); });
    double tp = timed([&] { rp = scan(zeta, X, cps, C, max_threads); });
    bool identical = checkpoints_csv(r1.checkpoints) == checkpoints_csv(rp.checkpoints);

    uint64_t Xref = std::min<uint64_t>(X, 2000000);
    auto cps_ref = geometric_checkpoints(Xref);
    ScanResult r1b = scan(zeta, Xref, cps_ref, C, max_threads);
    double tref = timed([&] { rref = scan_reference(zeta, Xref, cps_ref, C); });
    double worst = 0.0;
    for (size_t i = 0; i < rref.checkpoints.size(); ++i)
        worst = std::max(worst, std::abs(r1b.checkpoints[i].S0 - rref.checkpoints[i].S0) /
                                    std::abs(rref.checkpoints[i].S0));

    std::printf("scan zeta X=%llu:\n", (unsigned long long)X);
    std::printf("  %-28s %8.3f s\n", "segmented, 1 thread", t1);
    std::printf("  %-28s %8.3f s   speedup x%.2f   bit-identical: %s\n", "segmented, all threads",
                tp, t1 / tp, identical ? "yes" : "NO");
    std::printf("  %-28s %8.3f s   (X=%llu; max rel dev %.2e)\n\n", "serial reference", tref,
                (unsigned long long)Xref, worst);

    // ---- tau ----
    TauSeries s1, sp;
    double tt1 = timed([&] { s1 = tau_qexpansion(tau_n, kDefaultTauCap, 1); });
    double ttp = timed([&] { sp = tau_qexpansion(tau_n, kDefaultTauCap, max_threads); });
    bool tau_same = true;
    for (uint32_t n = 1; n <= tau_n; ++n) tau_same = tau_same && s1(n) == sp(n);
    std::printf("tau q-expansion N=%u:\n", tau_n);
    std::printf("  %-28s %8.3f s\n", "1 thread", tt1);
    std::printf("  %-28s %8.3f s   speedup x%.2f   identical: %s\n\n", "all threads", ttp,
                tt1 / ttp, tau_same ? "yes" : "NO");

    // ---- h convolution ----
    auto gl2 = EulerProductSpec::gl2_twisted(EigenvalueSource::delta(10000),
                                             DirichletCharacter(5, {1}));
    uint64_t hN = std::min<uint64_t>(h_n, 10000); // library coverage bound for the builtin delta
    std::vector<cdouble> h1, hp, href;
    double th1 = timed([&] { h1 = h_values(gl2, hN, 1); });
    double thp = timed([&] { hp = h_values(gl2, hN, max_threads); });
    bool h_same = h1 == hp;
    uint64_t href_n = std::min<uint64_t>(hN, 2000);
    double thref = timed([&] { href = h_values_reference(gl2, href_n); });
    double hworst = 0.0;
    for (uint64_t n = 1; n <= href_n; ++n) hworst = std::max(hworst, std::abs(h1[n] - href[n]));
    std::printf("h convolution N=%llu:\n", (unsigned long long)hN);
    std::printf("  %-28s %8.3f s\n", "1 thread", th1);
    std::printf("  %-28s %8.3f s   speedup x%.2f   identical: %s\n", "all threads", thp, th1 / thp,
                h_same ? "yes" : "NO");
    std::printf("  %-28s %8.3f s   (N=%llu; max abs dev %.2e)\n", "per-n reference", thref,
                (unsigned long long)href_n, hworst);

    bool ok = identical && tau_same && h_same && worst < 1e-9 && hworst < 1e-10;
    std::printf("\n%s\n", ok ? "all determinism and agreement checks passed"
                             : "DETERMINISM OR AGREEMENT FAILURE");
    return ok ? 0 : 1;
}
