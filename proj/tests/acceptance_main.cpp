// Acceptance runner: one line per criterion, exit 0 only when all pass.

#include "lqt/acceptance.hpp"

#include <iostream>

int main()
{
    bool ok = true;
    for (int id = 1; id <= lqt::kCriteria; ++id) {
        const auto r = lqt::run_criterion(id);
        std::cout << lqt::format_result(r) << std::endl;
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}
