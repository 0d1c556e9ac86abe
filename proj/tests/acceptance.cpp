// Acceptance gate: runs the ten bundled checks and prints one line each.
// Exits 0 only if every check passes.

#include <cstdio>
#include <string>
#include <vector>

#include "k3mono/checks.hpp"

int main() {
    using namespace k3mono;
    std::vector<CheckResult> results;
    try {
        results = run_all_checks();
    } catch (const std::exception& e) {
        std::printf("acceptance suite aborted: %s\n", e.what());
        return 1;
    }

    int failed = 0;
    for (std::size_t k = 0; k < results.size(); ++k) {
        const CheckResult& r = results[k];
        if (!r.pass) ++failed;
        std::printf("[%2zu/%zu] %-14s %s  (%lld ms)  %s\n", k + 1, results.size(),
                    r.id.c_str(), r.pass ? "PASS" : "FAIL", r.ms, r.detail.c_str());
    }
    std::printf("%zu/%zu checks passed\n", results.size() - std::size_t(failed),
                results.size());
    return failed == 0 ? 0 : 1;
}
