#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mg::suites {

struct Line {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct Result {
    int criterion = 0;
    std::string id, title;
    std::vector<Line> lines;
    double seconds = 0;
    bool ok() const;
    std::string first_failure() const;
};

struct Options {
    std::uint64_t seed = 7;
    int arity = 2;
};

struct Suite {
    int criterion;
    std::string id, title;
};
const std::vector<Suite>& all();

// throws std::invalid_argument on an unknown id
Result run(const std::string& id, const Options& opt);

} // namespace mg::suites
