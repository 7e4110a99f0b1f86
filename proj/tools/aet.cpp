// aet - associated Euler totient toolkit
//
// Subcommands: const, phi, scan, series, dump, selftest.
// Exit codes: 0 success, 1 internal error, 2 data gap, 3 spec parse error,
// 4 argument domain error.

#include "aet/acceptance.hpp"
#include "aet/analysis.hpp"
#include "aet/spec_string.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace aet;

namespace {

const char* kUsage = R"(aet - associated Euler totient toolkit

usage: aet <command> [arguments] [flags]

commands:
  const <spec>                  print C(F) with its rigorous tail bound
  phi <spec> <n>                print phi(n,F) and the divisor-sum cross-check
  scan <spec> --xmax <X>        sieved scan: checkpoint CSV + residual report
  series <spec> --nmax <N>      alpha series, h table, boundedness, constant identity
  dump <spec> --xmax <X>        materialize phi(n,F)/n as CSV
  selftest [--quick]            run the embedded acceptance suite

product specs:
  zeta
  dirichlet:q=<Q>,index=<e1.e2...>
  gl2:source=delta[,chi=q=<Q>,index=<tuple>]
  gl2:source=file:<path>[,chi=q=<Q>,index=<tuple>]

flags:
  --tol <t>            tolerance for C(F) (default: tightest reachable)
  --xmax <X>, --nmax <N>       ranges; scientific notation accepted (1e6)
  --checkpoints <list>         comma-separated ascending list, or 'geometric'
  --format csv|json|plot-data  report format (default csv)
  --out <path>         write the primary output to a file instead of stdout
  --threads <n>        worker threads (default: all cores; never changes output bytes)
  --memory-cap <bytes> allocation cap for tables (default 2147483648)
  --tau-n <N>          coverage of the built-in delta eigenvalues (default 10000)
  --allow-ramanujan-violations  accept table entries with |lambda| > 2 + 1e-8
  --eigen-file <path>  selftest only: validate a user eigenvalue table
  --config <path>      key=value file supplying defaults for the flags above
  --quick              selftest only: skip the two long-running criteria
  --help

exit codes: 0 ok, 1 internal error, 2 data gap, 3 spec parse error, 4 domain error
)";

struct Cli {
    std::string command;
    std::vector<std::string> positional;
    std::map<std::string, std::string> flags; // without leading --

    bool has(const std::string& k) const { return flags.count(k) > 0; }
    std::string get(const std::string& k, const std::string& dflt = "") const {
        auto it = flags.find(k);
        return it == flags.end() ? dflt : it->second;
    }
};

const char* kValueFlags[] = {"tol",     "xmax",       "nmax",   "checkpoints", "format",
                             "out",     "threads",    "memory-cap", "tau-n",   "config",
                             "eigen-file"};
const char* kBoolFlags[] = {"allow-ramanujan-violations", "quick", "help"};

bool is_value_flag(const std::string& f) {
    for (const char* v : kValueFlags)
        if (f == v) return true;
    return false;
}

bool is_bool_flag(const std::string& f) {
    for (const char* v : kBoolFlags)
        if (f == v) return true;
    return false;
}

Cli parse_cli(int argc, char** argv) {
    Cli cli;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a.rfind("--", 0) == 0) {
            std::string f = a.substr(2);
            std::string val;
            size_t eq = f.find('=');
            if (eq != std::string::npos) {
                val = f.substr(eq + 1);
                f = f.substr(0, eq);
                if (!is_value_flag(f)) throw domain_error("flag --" + f + " takes no value");
                cli.flags[f] = val;
                continue;
            }
            if (is_bool_flag(f)) {
                cli.flags[f] = "1";
            } else if (is_value_flag(f)) {
                if (i + 1 >= argc) throw domain_error("flag --" + f + " needs a value");
                cli.flags[f] = argv[++i];
            } else {
                throw domain_error("unknown flag --" + f);
            }
        } else if (cli.command.empty()) {
            cli.command = a;
        } else {
            cli.positional.push_back(a);
        }
    }
    // config file supplies defaults; explicit flags win
    if (cli.has("config")) {
        std::ifstream in(cli.get("config"));
        if (!in) throw domain_error("cannot open config file '" + cli.get("config") + "'");
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            size_t first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == '#') continue;
            size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw domain_error("config: expected key=value, got '" + line + "'");
            std::string k = line.substr(first, eq - first);
            std::string v = line.substr(eq + 1);
            if (!is_value_flag(k) && !is_bool_flag(k))
                throw domain_error("config: unknown key '" + k + "'");
            if (!cli.flags.count(k)) cli.flags[k] = v;
        }
    }
    return cli;
}

uint64_t parse_count(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        if (!(v >= 1) || v > 9e18 || v != std::floor(v))
            throw domain_error(what + " must be a positive integer, got '" + s + "'");
        return uint64_t(v);
    } catch (const domain_error&) {
        throw;
    } catch (const std::exception&) {
        throw domain_error(what + " must be a positive integer, got '" + s + "'");
    }
}

int threads_of(const Cli& cli) {
    if (!cli.has("threads")) return 0;
    return int(parse_count(cli.get("threads"), "--threads"));
}

uint64_t memory_cap_of(const Cli& cli) {
    if (!cli.has("memory-cap")) return uint64_t(2) << 30;
    return parse_count(cli.get("memory-cap"), "--memory-cap");
}

SpecParseOptions spec_options(const Cli& cli) {
    SpecParseOptions opt;
    if (cli.has("tau-n")) opt.tau_n = uint32_t(parse_count(cli.get("tau-n"), "--tau-n"));
    opt.allow_ramanujan_violations = cli.has("allow-ramanujan-violations");
    opt.threads = threads_of(cli);
    return opt;
}

ReportFormat format_of(const Cli& cli) {
    std::string f = cli.get("format", "csv");
    if (f == "csv") return ReportFormat::csv;
    if (f == "json") return ReportFormat::json;
    if (f == "plot-data") return ReportFormat::plot_data;
    throw domain_error("unknown --format '" + f + "' (csv|json|plot-data)");
}

void write_output(const Cli& cli, const std::string& bytes) {
    if (cli.has("out")) {
        std::ofstream out(cli.get("out"), std::ios::binary);
        if (!out) throw domain_error("cannot open output file '" + cli.get("out") + "'");
        out << bytes;
    } else {
        std::cout << bytes;
    }
}

ConstantResult constant_for(const EulerProductSpec& spec, const Cli& cli) {
    if (cli.has("tol")) return spec.constant(std::stod(cli.get("tol")));
    // default: the tightest tolerance the spec's data coverage supports
    double tol = std::max(spec.best_constant_tol(), 1e-12);
    return spec.constant(tol);
}

int cmd_const(const Cli& cli) {
    if (cli.positional.empty()) throw domain_error("const: missing product spec");
    auto spec = parse_product_spec(cli.positional[0], spec_options(cli));
    ConstantResult c = constant_for(spec, cli);
    std::printf("spec: %s\n", canonical_spec_string(spec).c_str());
    if (c.value.imag() == 0.0)
        std::printf("C(F) = %.17g\n", c.value.real());
    else
        std::printf("C(F) = %.17g %+.17gi\n", c.value.real(), c.value.imag());
    std::printf("cutoff P = %llu\ntail bound (relative) = %.3g\n",
                (unsigned long long)c.cutoff, c.tail_bound);
    return 0;
}

int cmd_phi(const Cli& cli) {
    if (cli.positional.size() < 2) throw domain_error("phi: usage: phi <spec> <n>");
    auto spec = parse_product_spec(cli.positional[0], spec_options(cli));
    uint64_t n = parse_count(cli.positional[1], "n");
    cdouble v = spec.totient(n);
    cdouble w = spec.totient_via_divisors(n);
    std::printf("spec: %s\n", canonical_spec_string(spec).c_str());
    std::printf("phi(%llu,F)              = %.17g %+.17gi\n", (unsigned long long)n, v.real(),
                v.imag());
    std::printf("divisor-sum cross-check = %.17g %+.17gi\n", w.real(), w.imag());
    std::printf("|difference| = %.3g\n", std::abs(v - w));
    return 0;
}

std::vector<uint64_t> checkpoints_of(const Cli& cli, uint64_t X) {
    std::string s = cli.get("checkpoints", "geometric");
    if (s == "geometric") return geometric_checkpoints(X);
    std::vector<uint64_t> cps;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) cps.push_back(parse_count(tok, "--checkpoints entry"));
    return cps;
}

int cmd_scan(const Cli& cli) {
    if (cli.positional.empty()) throw domain_error("scan: missing product spec");
    if (!cli.has("xmax")) throw domain_error("scan: --xmax is required");
    auto spec = parse_product_spec(cli.positional[0], spec_options(cli));
    uint64_t X = parse_count(cli.get("xmax"), "--xmax");
    auto cps = checkpoints_of(cli, X);
    ConstantResult c = constant_for(spec, cli);
    auto result = scan(spec, X, cps, c, threads_of(cli));
    auto report = make_residual_report(spec, result);

    ReportFormat fmt = format_of(cli);
    if (fmt == ReportFormat::csv)
        write_output(cli, checkpoints_csv(result.checkpoints));
    else
        write_output(cli, emit_report(report, fmt));

    std::ostream& info = cli.has("out") ? std::cout : std::cerr;
    info << "spec: " << canonical_spec_string(spec) << "\n"
         << "C(F) = " << c.value.real() << (c.value.imag() ? " (+imag)" : "")
         << ", tail bound " << c.tail_bound << " (adds " << c.tail_bound
         << "*|C|*x^2 of uncertainty to E)\n"
         << "checkpoints: " << result.checkpoints.size() << "\n";
    if (report.fit_valid)
        info << "decay fit: slope " << report.fit.slope << ", intercept " << report.fit.intercept
             << " (" << report.fit.used_points << " points, " << report.fit.excluded_near_zero
             << " excluded)\n";
    else
        info << "decay fit: n/a (fewer than 3 points with |R| > 1e-14)\n";
    info << "max |R| = " << report.max_abs_R
         << ", monotonicity violations = " << report.monotonicity_violations << "\n";
    if (has_residual_offset(spec) && !result.checkpoints.empty()) {
        // R(x) tends to -H(1)/(2L(1)) when F(1) is finite and nonzero; report
        // the constant and the decay of the corrected residual
        try {
            uint64_t series_n = std::min<uint64_t>(X, 30000);
            auto off = residual_offset_fit(spec, report.residuals, series_n, threads_of(cli));
            info << "limiting residual -H(1)/(2L(1)) ~ (" << off.limit.real() << ", "
                 << off.limit.imag() << "); |R - limit| at x=" << result.checkpoints.back().x
                 << " is " << off.last_gap;
            if (off.fit_valid) info << ", corrected decay slope " << off.fit.slope;
            info << "\n";
        } catch (const std::exception&) {
            // series estimate unavailable (coverage or degeneracy); the scan output stands
        }
    }
    return 0;
}

int cmd_series(const Cli& cli) {
    if (cli.positional.empty()) throw domain_error("series: missing product spec");
    auto spec = parse_product_spec(cli.positional[0], spec_options(cli));
    uint64_t N = cli.has("nmax") ? parse_count(cli.get("nmax"), "--nmax") : 10000;
    ConstantResult c = constant_for(spec, cli);
    auto report = make_series_report(spec, N, c, threads_of(cli));

    ReportFormat fmt = format_of(cli);
    if (fmt != ReportFormat::csv) {
        write_output(cli, emit_report(report, fmt));
        return 0;
    }
    std::ostringstream out;
    out << "spec: " << canonical_spec_string(spec) << "\n"
        << "N = " << N << "\n";
    char buf[256];
    std::snprintf(buf, sizeof(buf), "sum alpha(n)/n^2 = %.17g %+.17gi\n", report.partial.real(),
                  report.partial.imag());
    out << buf;
    std::snprintf(buf, sizeof(buf), "2 C(F)           = %.17g %+.17gi\n", report.target.real(),
                  report.target.imag());
    out << buf;
    std::snprintf(buf, sizeof(buf), "gap = %.6g\n", report.gap);
    out << buf;
    std::snprintf(buf, sizeof(buf), "max |h(n)| over squarefree n = %.17g at n=%llu\n",
                  report.h_max_squarefree, (unsigned long long)report.h_argmax);
    out << buf;
    std::snprintf(buf, sizeof(buf), "constant identity gap |(sum h/n^2)/(sum a_F/n^2) - 2C| = %.6g\n",
                  report.constant_identity_gap);
    out << buf;
    out << emit_report(report, ReportFormat::csv);
    write_output(cli, out.str());
    return 0;
}

int cmd_dump(const Cli& cli) {
    if (cli.positional.empty()) throw domain_error("dump: missing product spec");
    if (!cli.has("xmax")) throw domain_error("dump: --xmax is required");
    auto spec = parse_product_spec(cli.positional[0], spec_options(cli));
    uint64_t X = parse_count(cli.get("xmax"), "--xmax");
    auto table = build_spf(X, memory_cap_of(cli));
    auto values = bulk_phi_ratio(spec, table, memory_cap_of(cli), threads_of(cli));
    std::string out = "n,phi_over_n_re,phi_over_n_im\n";
    char buf[128];
    for (uint64_t n = 1; n <= X; ++n) {
        std::snprintf(buf, sizeof(buf), "%llu,%.17g,%.17g\n", (unsigned long long)n,
                      values[n].real(), values[n].imag());
        out += buf;
    }
    write_output(cli, out);
    return 0;
}

int cmd_selftest(const Cli& cli) {
    acceptance::Options opt;
    opt.quick = cli.has("quick");
    opt.threads = threads_of(cli);
    opt.eigen_file = cli.get("eigen-file");
    auto results = acceptance::run(opt, std::cout);
    int pass = 0, fail = 0, skip = 0;
    for (const auto& r : results) (r.status == 0 ? pass : r.status == 1 ? fail : skip)++;
    std::printf("\n%d passed, %d failed, %d skipped\n", pass, fail, skip);
    return fail ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        Cli cli = parse_cli(argc, argv);
        if (cli.command.empty() || cli.has("help")) {
            std::fputs(kUsage, cli.command.empty() && !cli.has("help") ? stderr : stdout);
            return cli.command.empty() && !cli.has("help") ? 4 : 0;
        }
#ifdef _OPENMP
        if (int t = threads_of(cli); t > 0) omp_set_num_threads(t);
#endif
        if (cli.command == "const") return cmd_const(cli);
        if (cli.command == "phi") return cmd_phi(cli);
        if (cli.command == "scan") return cmd_scan(cli);
        if (cli.command == "series") return cmd_series(cli);
        if (cli.command == "dump") return cmd_dump(cli);
        if (cli.command == "selftest") return cmd_selftest(cli);
        std::fprintf(stderr, "error: unknown command '%s' (see --help)\n", cli.command.c_str());
        return 4;
    } catch (const data_gap_error& e) {
        std::fprintf(stderr, "error (data gap): %s\n", e.what());
        return 2;
    } catch (const spec_parse_error& e) {
        std::fprintf(stderr, "error (spec parse): %s\n", e.what());
        return 3;
    } catch (const domain_error& e) {
        std::fprintf(stderr, "error (domain): %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
