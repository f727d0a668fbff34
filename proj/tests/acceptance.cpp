#include "suites.hpp"

#include <cstdio>
#include <map>

// Runs every acceptance criterion once and prints one line each. Exit status 0 iff all pass.
int main()
{
    using namespace mg::suites;
    // how each criterion compares Novikov/Laurent data; the checks themselves enforce it
    const std::map<int, const char*> tolerance{{10, "exact up to unit sign"}, {11, "exact up to unit sign"}};
    Options opt{7, 2};
    int failed = 0;
    double total = 0;
    for (auto& s : all()) {
        auto r = run(s.id, opt);
        total += r.seconds;
        auto tol = tolerance.count(s.criterion) ? tolerance.at(s.criterion) : "exact";
        std::printf("criterion %2d %s  %-38s [%s, %zu checks, %.2fs]", s.criterion, r.ok() ? "PASS" : "FAIL",
                    s.title.c_str(), tol, r.lines.size(), r.seconds);
        if (!r.ok()) {
            ++failed;
            std::string why = r.first_failure();
            if (why.size() > 240) why = why.substr(0, 240) + "...";
            std::printf("  first failure: %s", why.c_str());
        }
        std::printf("\n");
    }
    std::printf("%d of %zu criteria pass (%.1fs)\n", static_cast<int>(all().size()) - failed, all().size(), total);
    return failed == 0 ? 0 : 1;
}
