// Runs every acceptance criterion once and prints one line per criterion.
// Exit status is nonzero if any criterion fails.
//
//   acceptance [seed]

#include "paper_suite.hpp"

#include <cstdio>
#include <cstdlib>

int main(int argc, char** argv) {
    std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 0;
    std::size_t failed = 0;
    planevar::suite::run_paper_suite(seed, [&](const planevar::suite::CriterionResult& r) {
        if (!r.pass) ++failed;
        std::printf("[%s] criterion %2d  %-24s %6.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                    r.detail.c_str());
        std::fflush(stdout);
    });
    std::printf("%zu of 13 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
