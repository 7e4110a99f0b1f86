// End-to-end tests of the aet binary; the path comes from $AET_BIN.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("AET_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "AET_BIN must point at the aet binary");
    std::string so = "/tmp/aet_cli_stdout.txt";
    std::string se = "/tmp/aet_cli_stderr.txt";
    std::string cmd = std::string(bin) + " " + args + " >" + so + " 2>" + se;
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(so);
    r.err = slurp(se);
    return r;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("const zeta prints 3/pi^2") {
    auto r = run_cli("const zeta");
    CHECK(r.code == 0);
    CHECK(r.out.find("0.303963550927013") != std::string::npos);
    CHECK(r.out.find("tail bound") != std::string::npos);
}

TEST_CASE("const for the mod-4 character") {
    auto r = run_cli("const dirichlet:q=4,index=1");
    CHECK(r.code == 0);
    CHECK(r.out.find("0.54587203") != std::string::npos);
}

TEST_CASE("const with a loose tolerance still reports a bound") {
    auto r = run_cli("const zeta --tol 0.5");
    CHECK(r.code == 0);
    CHECK(r.out.find("tail bound") != std::string::npos);
}

TEST_CASE("exit code 3 on spec parse errors") {
    CHECK(run_cli("const bogus").code == 3);
    CHECK(run_cli("scan dirichlet:q=0,index=1 --xmax 100").code == 3);
    CHECK(run_cli("const gl2:source=delta,chi=q=4,index=0 --tau-n 100").code == 3);
}

TEST_CASE("exit code 2 on data gaps") {
    CHECK(run_cli("const gl2:source=file:/nonexistent_aet.txt,chi=q=5,index=1").code == 2);
    auto r = run_cli("scan gl2:source=delta,chi=q=5,index=1 --tau-n 200 --xmax 1000");
    CHECK(r.code == 2);
    CHECK(r.err.find("p=211") != std::string::npos);
}

TEST_CASE("exit code 4 on domain errors") {
    auto r = run_cli("scan zeta --xmax 5 --checkpoints 7");
    CHECK(r.code == 4);
    CHECK(run_cli("scan zeta").code == 4);          // missing --xmax
    CHECK(run_cli("frobnicate").code == 4);         // unknown command
    CHECK(run_cli("const zeta --tol 0").code == 4);
    CHECK(run_cli("").code == 4);                   // no command: usage + 4
}

TEST_CASE("phi prints both paths") {
    auto one = run_cli("phi zeta 1");
    CHECK(one.code == 0);
    CHECK(one.out.find("phi(1,F)              = 1 ") != std::string::npos);
    CHECK(one.out.find("divisor-sum cross-check = 1 ") != std::string::npos);

    auto r = run_cli("phi zeta 12");
    CHECK(r.code == 0);
    CHECK(r.out.find("phi(12,F)") != std::string::npos);
    CHECK(r.out.find("= 4") != std::string::npos); // phi(12) = 4 up to rendering noise
    CHECK(r.out.find("divisor-sum cross-check = 4") != std::string::npos);

    auto g = run_cli("phi gl2:source=delta,chi=q=5,index=1 10 --tau-n 100");
    CHECK(g.code == 0);
    CHECK(g.out.find("|difference|") != std::string::npos);
}

TEST_CASE("scan writes the checkpoint CSV") {
    auto r = run_cli("scan zeta --xmax 10 --checkpoints 10");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("x,S_re,S_im", 0) == 0);
    CHECK(r.out.find("\n10,32") != std::string::npos); // S(10) = 32
    CHECK(r.err.find("decay fit: n/a") != std::string::npos);

    auto w = run_cli("scan zeta --xmax 1000 --checkpoints 10,100,1000 --out /tmp/aet_cli_scan.csv");
    CHECK(w.code == 0);
    auto csv = slurp("/tmp/aet_cli_scan.csv");
    CHECK(csv.rfind("x,S_re,S_im", 0) == 0);
    CHECK(csv.find("\n1000,30419") != std::string::npos); // sum phi(n <= 1000) = 304192
}

TEST_CASE("scan CSV bytes are identical across thread counts") {
    auto a = run_cli("scan zeta --xmax 1e5 --threads 1 --out /tmp/aet_cli_t1.csv");
    auto b = run_cli("scan zeta --xmax 1e5 --threads 4 --out /tmp/aet_cli_t4.csv");
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    CHECK(slurp("/tmp/aet_cli_t1.csv") == slurp("/tmp/aet_cli_t4.csv"));
}

TEST_CASE("series command") {
    auto r = run_cli("series zeta --nmax 1000");
    CHECK(r.code == 0);
    CHECK(r.out.find("sum alpha(n)/n^2") != std::string::npos);
    CHECK(r.out.find("max |h(n)| over squarefree n = 1 at n=1") != std::string::npos);

    auto j = run_cli("series zeta --nmax 1 --format json");
    CHECK(j.code == 0);
    CHECK(j.out.find("\"partial_re\": 1") != std::string::npos);
    CHECK(j.out.find("\"schema\": 1") != std::string::npos);
}

TEST_CASE("scan json and plot-data formats") {
    auto j = run_cli("scan zeta --xmax 1e4 --format json");
    CHECK(j.code == 0);
    CHECK(j.out.find("\"type\": \"residual_report\"") != std::string::npos);
    auto p = run_cli("scan zeta --xmax 1e4 --format plot-data");
    CHECK(p.code == 0);
    CHECK(p.out.find(" ") != std::string::npos); // two-column rows
}

TEST_CASE("dump materializes phi ratios") {
    auto r = run_cli("dump zeta --xmax 10");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("n,phi_over_n_re,phi_over_n_im\n", 0) == 0);
    CHECK(r.out.find("\n8,0.5,") != std::string::npos);
}

TEST_CASE("config file supplies defaults, flags win") {
    write_file("/tmp/aet_cli_cfg.txt", "# defaults\nxmax=1000\nthreads=2\n");
    auto r = run_cli("scan zeta --config /tmp/aet_cli_cfg.txt --checkpoints 10,100");
    CHECK(r.code == 0);
    auto s = run_cli("scan zeta --config /tmp/aet_cli_cfg.txt --xmax 100 --checkpoints 10,100");
    CHECK(s.code == 0); // flag overrides the config's 1000
    auto bad = run_cli("scan zeta --config /tmp/aet_does_not_exist.cfg --xmax 10");
    CHECK(bad.code == 4);
}

TEST_CASE("eigenvalue table end to end") {
    write_file("/tmp/aet_cli_eigen.txt", "# table\n2,-0.5\n3,0.1\n5,1.9\n7,0.3\n11,-1.2\n13,0.4\n");
    auto r = run_cli("const gl2:source=file:/tmp/aet_cli_eigen.txt,chi=q=5,index=1 --tol 0.1");
    CHECK(r.code == 0);
    auto v = run_cli("phi gl2:source=file:/tmp/aet_cli_eigen.txt,chi=q=5,index=1 6");
    CHECK(v.code == 0);

    write_file("/tmp/aet_cli_eigen_bad.txt", "2,2.5\n3,0.1\n5,1.9\n7,0.3\n11,-1.2\n13,0.4\n");
    auto bad = run_cli("const gl2:source=file:/tmp/aet_cli_eigen_bad.txt,chi=q=5,index=1 --tol 0.1");
    CHECK(bad.code == 2);
    auto ok = run_cli("const gl2:source=file:/tmp/aet_cli_eigen_bad.txt,chi=q=5,index=1 --tol 0.9 "
                      "--allow-ramanujan-violations");
    CHECK(ok.code == 0);
}

TEST_CASE("scan to 1e6 reports a negative decay slope for zeta") {
    auto r = run_cli("scan zeta --xmax 1e6 --out /tmp/aet_cli_slope.csv");
    CHECK(r.code == 0);
    CHECK(r.out.find("decay fit: slope -") != std::string::npos);
}

TEST_CASE("selftest quick; corrupted eigenvalue file is reported by name") {
    write_file("/tmp/aet_cli_corrupt.txt", "2,-0.5\ngarbage line\n");
    auto r = run_cli("selftest --quick --eigen-file /tmp/aet_cli_corrupt.txt");
    CHECK(r.code == 1); // the eigen-file check fails, everything else passes
    CHECK(r.out.find("[FAIL] 13 eigen-file-check") != std::string::npos);
    CHECK(r.out.find("/tmp/aet_cli_corrupt.txt") != std::string::npos);
    CHECK(r.out.find("[PASS] 01 constant-zeta") != std::string::npos);
}

TEST_CASE("help") {
    auto r = run_cli("--help");
    CHECK(r.code == 0);
    CHECK(r.out.find("usage: aet") != std::string::npos);
    for (const char* cmd : {"const", "phi", "scan", "series", "dump", "selftest"})
        CHECK(r.out.find(cmd) != std::string::npos);
}

} // TEST_SUITE
