#include <iostream>

#include "qxsort/verify.hpp"

int main() {
    const auto results = qxsort::verify::run({}, 0, [](const qxsort::verify::CriterionResult& r) {
        std::cout << qxsort::verify::format_line(r) << std::endl;
    });
    int failed = 0;
    for (const auto& r : results) failed += r.pass ? 0 : 1;
    std::cout << results.size() - failed << " of " << results.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
