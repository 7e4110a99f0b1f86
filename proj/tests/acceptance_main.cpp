// Acceptance suite runner: one pass/fail line per criterion, exit nonzero on
// any failure.  The same checks back the CLI's `selftest` subcommand.

#include "aet/acceptance.hpp"

#include <cstdio>
#include <cstring>
#include <iostream>

int main(int argc, char** argv) {
    aet::acceptance::Options opt;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--quick")) {
            opt.quick = true;
        } else if (!std::strcmp(argv[i], "--threads") && i + 1 < argc) {
            opt.threads = std::atoi(argv[++i]);
        } else if (!std::strcmp(argv[i], "--eigen-file") && i + 1 < argc) {
            opt.eigen_file = argv[++i];
        } else {
            std::fprintf(stderr, "usage: %s [--quick] [--threads N] [--eigen-file PATH]\n",
                         argv[0]);
            return 2;
        }
    }

    auto results = aet::acceptance::run(opt, std::cout);

    std::puts("\nsummary:");
    int pass = 0, fail = 0, skip = 0;
    for (const auto& r : results) {
        const char* tag = r.status == 0 ? "PASS" : r.status == 1 ? "FAIL" : "SKIP";
        std::printf("  %-4s %02d %s\n", tag, r.id, r.name.c_str());
        (r.status == 0 ? pass : r.status == 1 ? fail : skip)++;
    }
    std::printf("%d passed, %d failed, %d skipped\n", pass, fail, skip);
    return fail ? 1 : 0;
}
