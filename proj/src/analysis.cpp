#include "aet/analysis.hpp"

#include "aet/kahan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace aet {

std::vector<std::pair<uint64_t, cdouble>>
residual_series(const std::vector<SummationCheckpoint>& checkpoints) {
    std::vector<std::pair<uint64_t, cdouble>> out;
    out.reserve(checkpoints.size());
    for (const auto& c : checkpoints) out.emplace_back(c.x, c.E0 - c.E / double(c.x));
    return out;
}

DecayFit decay_fit(const std::vector<std::pair<uint64_t, cdouble>>& series) {
    DecayFit fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, R] : series) {
        double r = std::abs(R);
        if (r <= kResidualFloor) {
            ++fit.excluded_near_zero;
            continue;
        }
        double u = std::sqrt(std::log(double(x)));
        double v = std::log(r);
        sx += u;
        sy += v;
        sxx += u * u;
        sxy += u * v;
        ++fit.used_points;
    }
    if (fit.used_points < 3)
        throw domain_error("decay_fit: needs at least 3 points with |R| > 1e-14, have " +
                           std::to_string(fit.used_points));
    double n = double(fit.used_points);
    double det = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    return fit;
}

ResidualReport make_residual_report(const EulerProductSpec& spec, const ScanResult& scan) {
    ResidualReport rep;
    rep.spec_description = spec.description();
    rep.constant_tail_bound = scan.constant_tail_bound;
    rep.residuals = residual_series(scan.checkpoints);
    try {
        rep.fit = decay_fit(rep.residuals);
        rep.fit_valid = true;
    } catch (const domain_error&) {
        rep.fit_valid = false; // fewer than 3 usable points; CSV output is still meaningful
    }
    double prev = -1.0;
    for (size_t i = 0; i < rep.residuals.size(); ++i) {
        double r = std::abs(rep.residuals[i].second);
        rep.max_abs_R = std::max(rep.max_abs_R, r);
        if (i && r > prev) ++rep.monotonicity_violations;
        prev = r;

        const auto& c = scan.checkpoints[i];
        cdouble lhs = rep.residuals[i].second;
        cdouble rhs = c.smoothed - scan.constant * double(c.x);
        double gap = std::abs(lhs - rhs) / (1.0 + std::abs(c.smoothed));
        rep.max_identity_gap = std::max(rep.max_identity_gap, gap);
    }
    return rep;
}

namespace {

// gamma(p) for every prime p <= N, prime-indexed.
std::vector<cdouble> gamma_by_prime(const EulerProductSpec& spec, const SpfTable& table) {
    std::vector<cdouble> g(table.X + 1, cdouble(0.0, 0.0));
    for (uint64_t p = 2; p <= table.X; ++p)
        if (table.spf[p] == p) g[p] = spec.local_gamma(p);
    return g;
}

// alpha(1..N) via the SPF recursion alpha(p m) = -gamma(p) alpha(m).
std::vector<cdouble> alpha_bulk(const EulerProductSpec& spec, const SpfTable& table) {
    auto gamma = gamma_by_prime(spec, table);
    std::vector<cdouble> a(table.X + 1, cdouble(0.0, 0.0));
    a[1] = 1.0;
    for (uint64_t n = 2; n <= table.X; ++n) {
        uint64_t p = table.spf[n];
        uint64_t m = n / p;
        if (m % p == 0) continue; // not squarefree
        a[n] = -gamma[p] * a[m];
    }
    return a;
}

// a_F(1..N) multiplicatively from the prime-power recurrence.
std::vector<cdouble> coeff_bulk(const EulerProductSpec& spec, const SpfTable& table) {
    std::vector<cdouble> a(table.X + 1, cdouble(0.0, 0.0));
    a[1] = 1.0;
    for (uint64_t n = 2; n <= table.X; ++n) {
        uint64_t p = table.spf[n];
        uint64_t m = n / p;
        uint32_t k = 1;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        a[n] = a[m] * spec.coeff_prime_power(p, k);
    }
    return a;
}

void require_coverage(const EulerProductSpec& spec, uint64_t N, const char* who) {
    uint64_t cov = spec.coverage_bound();
    if (cov < N && next_prime_after(cov) <= N)
        throw data_gap_error(std::string(who) + ": no eigenvalue for p=" +
                             std::to_string(next_prime_after(cov)) +
                             " (need all primes <= " + std::to_string(N) + ")");
}

} // namespace

bool has_residual_offset(const EulerProductSpec& spec) {
    if (spec.kind() == ProductKind::gl2_twisted) return true;
    if (spec.kind() == ProductKind::dirichlet_l) return !spec.character().is_principal();
    return false; // zeta kind: the pole of F at s=1 kills the s=0 residue
}

ResidualOffsetFit residual_offset_fit(const EulerProductSpec& spec,
                                      const std::vector<std::pair<uint64_t, cdouble>>& residuals,
                                      uint64_t series_N, int threads) {
    if (!has_residual_offset(spec))
        throw domain_error("residual_offset_fit: F(1) is not finite and nonzero for this kind");
    require_coverage(spec, series_N, "residual_offset_fit");

    auto h = h_values(spec, series_N, threads);
    auto table = build_spf(std::max<uint64_t>(series_N, 2));
    auto aF = coeff_bulk(spec, table);
    KbnComplex H1, L1;
    for (uint64_t n = 1; n <= series_N; ++n) {
        H1.add(h[n] / double(n));
        // Cesaro weight tames the conditional convergence of L at s = 1
        L1.add(aF[n] * ((1.0 - double(n) / double(series_N + 1)) / double(n)));
    }
    cdouble L = L1.result();
    if (std::abs(L) < 1e-3)
        throw domain_error("residual_offset_fit: |L(1)| estimate below 1e-3, limit unreliable");

    ResidualOffsetFit out;
    out.limit = -0.5 * H1.result() / L;
    std::vector<std::pair<uint64_t, cdouble>> shifted;
    shifted.reserve(residuals.size());
    for (const auto& [x, R] : residuals) shifted.emplace_back(x, R - out.limit);
    if (!shifted.empty()) out.last_gap = std::abs(shifted.back().second);
    try {
        out.fit = decay_fit(shifted);
        out.fit_valid = true;
    } catch (const domain_error&) {
        out.fit_valid = false;
    }
    return out;
}

cdouble alpha_series_partial(const EulerProductSpec& spec, uint64_t N) {
    if (N < 1) throw domain_error("alpha_series_partial: N must be >= 1");
    require_coverage(spec, N, "alpha_series_partial");
    auto table = build_spf(std::max<uint64_t>(N, 2));
    auto a = alpha_bulk(spec, table);
    KbnComplex acc;
    for (uint64_t n = 1; n <= N; ++n) {
        if (a[n] == cdouble(0.0, 0.0) && n > 1) continue;
        acc.add(a[n] / (double(n) * double(n)));
    }
    return acc.result();
}

std::vector<cdouble> h_values(const EulerProductSpec& spec, uint64_t N, int threads) {
    if (N < 1) throw domain_error("h_values: N must be >= 1");
    require_coverage(spec, N, "h_values");
    auto table = build_spf(std::max<uint64_t>(N, 2));
    auto alpha = alpha_bulk(spec, table);
    auto aF = coeff_bulk(spec, table);

    std::vector<cdouble> h(N + 1, cdouble(0.0, 0.0));
#ifdef _OPENMP
    int nt = threads > 0 ? threads : omp_get_max_threads();
#else
    int nt = 1;
#endif
#ifdef _OPENMP
#pragma omp parallel num_threads(nt)
#endif
    {
#ifdef _OPENMP
        int t = omp_get_thread_num();
        int T = omp_get_num_threads();
#else
        int t = 0, T = 1;
#endif
        // strip of output indices owned by this thread
        uint64_t lo = 1 + (N * uint64_t(t)) / uint64_t(T);
        uint64_t hi = (N * (uint64_t(t) + 1)) / uint64_t(T);
        for (uint64_t d = 1; d <= hi; ++d) {
            if (alpha[d] == cdouble(0.0, 0.0) && d > 1) continue;
            uint64_t m = (lo + d - 1) / d * d;
            for (; m <= hi; m += d) h[m] += alpha[d] * aF[m / d];
        }
    }
    return h;
}

std::pair<double, uint64_t> h_boundedness_report(const std::vector<cdouble>& h,
                                                 const SpfTable& table) {
    double best = 0.0;
    uint64_t arg = 0;
    for (uint64_t n = 1; n < h.size() && n <= table.X; ++n) {
        if (n > 1 && !is_squarefree(table, n)) continue;
        double v = std::abs(h[n]);
        if (v > best) {
            best = v;
            arg = n;
        }
    }
    return {best, arg};
}

ConstantIdentityGaps verify_constant_identity(const EulerProductSpec& spec, uint64_t N,
                                              const ConstantResult& C) {
    if (N < 1) throw domain_error("verify_constant_identity: N must be >= 1");
    require_coverage(spec, N, "verify_constant_identity");
    auto h = h_values(spec, N);
    auto table = build_spf(std::max<uint64_t>(N, 2));
    auto aF = coeff_bulk(spec, table);
    KbnComplex num, den;
    for (uint64_t n = 1; n <= N; ++n) {
        double n2 = double(n) * double(n);
        num.add(h[n] / n2);
        den.add(aF[n] / n2);
    }
    cdouble d = den.result();
    if (std::abs(d) < 1e-6)
        throw domain_error("verify_constant_identity: |sum a_F(n)/n^2| < 1e-6 at N=" +
                           std::to_string(N) + ", truncation far too short");
    cdouble two_c = 2.0 * C.value;
    ConstantIdentityGaps gaps;
    gaps.ratio_gap = std::abs(num.result() / d - two_c);
    gaps.alpha_gap = std::abs(alpha_series_partial(spec, N) - two_c);
    return gaps;
}

SeriesReport make_series_report(const EulerProductSpec& spec, uint64_t N, const ConstantResult& C,
                                int threads) {
    SeriesReport rep;
    rep.spec_description = spec.description();
    rep.N = N;
    rep.partial = alpha_series_partial(spec, N);
    rep.target = 2.0 * C.value;
    rep.gap = std::abs(rep.partial - rep.target);
    auto h = h_values(spec, N, threads);
    auto table = build_spf(std::max<uint64_t>(N, 2));
    auto [hmax, harg] = h_boundedness_report(h, table);
    rep.h_max_squarefree = hmax;
    rep.h_argmax = harg;
    rep.h_table.assign(h.begin() + 1, h.begin() + 1 + std::min<uint64_t>(N, 100));
    rep.constant_identity_gap = verify_constant_identity(spec, N, C).ratio_gap;
    return rep;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

} // namespace

std::string emit_report(const ResidualReport& report, ReportFormat format) {
    std::string out;
    switch (format) {
    case ReportFormat::csv: {
        out = "x,R_re,R_im,abs_R\n";
        for (const auto& [x, R] : report.residuals)
            out += std::to_string(x) + "," + fmt17(R.real()) + "," + fmt17(R.imag()) + "," +
                   fmt17(std::abs(R)) + "\n";
        break;
    }
    case ReportFormat::json: {
        out = "{\n  \"schema\": 1,\n  \"type\": \"residual_report\",\n";
        out += "  \"spec\": \"" + json_escape(report.spec_description) + "\",\n";
        if (report.fit_valid)
            out += "  \"fit\": {\"slope\": " + fmt17(report.fit.slope) +
                   ", \"intercept\": " + fmt17(report.fit.intercept) +
                   ", \"used_points\": " + std::to_string(report.fit.used_points) +
                   ", \"excluded_near_zero\": " + std::to_string(report.fit.excluded_near_zero) +
                   "},\n";
        else
            out += "  \"fit\": null,\n";
        out += "  \"max_abs_R\": " + fmt17(report.max_abs_R) + ",\n";
        out += "  \"monotonicity_violations\": " + std::to_string(report.monotonicity_violations) +
               ",\n";
        out += "  \"max_identity_gap\": " + fmt17(report.max_identity_gap) + ",\n";
        out += "  \"constant_tail_bound\": " + fmt17(report.constant_tail_bound) + ",\n";
        out += "  \"residuals\": [";
        for (size_t i = 0; i < report.residuals.size(); ++i) {
            if (i) out += ",";
            out += "\n    {\"x\": " + std::to_string(report.residuals[i].first) +
                   ", \"R_re\": " + fmt17(report.residuals[i].second.real()) +
                   ", \"R_im\": " + fmt17(report.residuals[i].second.imag()) + "}";
        }
        out += "\n  ]\n}\n";
        break;
    }
    case ReportFormat::plot_data: {
        for (const auto& [x, R] : report.residuals) {
            double r = std::abs(R);
            if (r <= kResidualFloor) continue;
            out += fmt17(std::sqrt(std::log(double(x)))) + " " + fmt17(std::log(r)) + "\n";
        }
        break;
    }
    }
    return out;
}

std::string emit_report(const SeriesReport& report, ReportFormat format) {
    std::string out;
    switch (format) {
    case ReportFormat::csv: {
        out = "n,h_re,h_im\n";
        for (size_t i = 0; i < report.h_table.size(); ++i)
            out += std::to_string(i + 1) + "," + fmt17(report.h_table[i].real()) + "," +
                   fmt17(report.h_table[i].imag()) + "\n";
        break;
    }
    case ReportFormat::json: {
        out = "{\n  \"schema\": 1,\n  \"type\": \"series_report\",\n";
        out += "  \"spec\": \"" + json_escape(report.spec_description) + "\",\n";
        out += "  \"N\": " + std::to_string(report.N) + ",\n";
        out += "  \"partial_re\": " + fmt17(report.partial.real()) +
               ",\n  \"partial_im\": " + fmt17(report.partial.imag()) + ",\n";
        out += "  \"target_re\": " + fmt17(report.target.real()) +
               ",\n  \"target_im\": " + fmt17(report.target.imag()) + ",\n";
        out += "  \"gap\": " + fmt17(report.gap) + ",\n";
        out += "  \"h_max_squarefree\": " + fmt17(report.h_max_squarefree) +
               ",\n  \"h_argmax\": " + std::to_string(report.h_argmax) + ",\n";
        out += "  \"constant_identity_gap\": " + fmt17(report.constant_identity_gap) + ",\n";
        out += "  \"h_table\": [";
        for (size_t i = 0; i < report.h_table.size(); ++i) {
            if (i) out += ",";
            out += "\n    {\"n\": " + std::to_string(i + 1) +
                   ", \"h_re\": " + fmt17(report.h_table[i].real()) +
                   ", \"h_im\": " + fmt17(report.h_table[i].imag()) + "}";
        }
        out += "\n  ]\n}\n";
        break;
    }
    case ReportFormat::plot_data: {
        for (size_t i = 0; i < report.h_table.size(); ++i)
            out += std::to_string(i + 1) + " " + fmt17(std::abs(report.h_table[i])) + "\n";
        break;
    }
    }
    return out;
}

} // namespace aet
