// Runs the acceptance criteria and prints one line per criterion.

#include <iostream>

#include "ivp/acceptance.hpp"

int main() {
    auto results = ivp::run_suite({}, [](const ivp::CriterionResult& r) { std::cout << ivp::format_line(r) << std::endl; });
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.pass ? 1 : 0;
    std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
    return passed == results.size() ? 0 : 1;
}
