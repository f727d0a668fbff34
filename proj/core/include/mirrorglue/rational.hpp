#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace mg {

using Q = mpq_class;

Q parse_q(std::string_view s);
std::string to_string(const Q& q);
Q q_of(long num, long den = 1);
bool is_integer(const Q& q);
long to_long(const Q& q); // throws unless integral and in range

// rational extended by +inf; used for valuations
struct ExtQ {
    bool inf = false;
    Q v = 0;

    static ExtQ infinity() { return {true, 0}; }
    static ExtQ of(const Q& q) { return {false, q}; }

    bool operator==(const ExtQ& o) const { return inf == o.inf && (inf || v == o.v); }
    std::strong_ordering operator<=>(const ExtQ& o) const;
};

ExtQ operator+(const ExtQ& a, const ExtQ& b);
std::string to_string(const ExtQ& e);

struct QHash {
    std::size_t operator()(const Q& q) const;
};

} // namespace mg
