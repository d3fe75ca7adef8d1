// Runs the eight acceptance criteria and prints one PASS/FAIL line each.
// Exit status is nonzero if any criterion fails.
#include <iostream>

#include "gaussym/verify/acceptance.hpp"

int main() {
    using namespace gaussym::verify;
    bool ok = true;
    const auto results = run_suite("all", AcceptanceOptions{}, [](const CriterionResult& c) {
        std::cout << format_line(c) << std::endl;
    });
    for (const auto& c : results) {
        ok = ok && c.passed;
        if (!c.passed)
            for (const auto& m : c.measurements)
                if (!m.passed) std::cout << "    failed: " << m.label << " = " << m.value << " (threshold " << m.threshold << ")\n";
    }
    std::cout << (ok ? "all 8 criteria passed" : "acceptance FAILED") << std::endl;
    return ok ? 0 : 1;
}
