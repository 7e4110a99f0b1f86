#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aet::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    int status = 0; // 0 pass, 1 fail, 2 skipped
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    bool quick = false;     // skip the two long-running criteria
    int threads = 0;        // 0: all cores
    std::string eigen_file; // optional user table to validate alongside the suite
};

// Runs the acceptance criteria, printing one [PASS]/[FAIL]/[SKIP] line per
// criterion to log.  Returns all results; callers exit nonzero on any fail.
std::vector<CriterionResult> run(const Options& opt, std::ostream& log);

inline int failures(const std::vector<CriterionResult>& rs) {
    int n = 0;
    for (const auto& r : rs) n += (r.status == 1);
    return n;
}

} // namespace aet::acceptance
