#include "mirrorglue/rational.hpp"

#include <limits>
#include <stdexcept>

namespace mg {

Q parse_q(std::string_view s)
{
    std::string t;
    for (char c : s)
        if (c != ' ' && c != '+' ) t.push_back(c);
        else if (c == '+' && !t.empty()) throw std::invalid_argument("bad rational: " + std::string(s));
    if (t.empty()) throw std::invalid_argument("empty rational");
    Q q;
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + std::string(s));
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
    q.canonicalize();
    return q;
}

std::string to_string(const Q& q) { return q.get_str(); }

Q q_of(long num, long den)
{
    Q q(num, den);
    q.canonicalize();
    return q;
}

bool is_integer(const Q& q) { return q.get_den() == 1; }

long to_long(const Q& q)
{
    if (!is_integer(q) || !q.get_num().fits_slong_p())
        throw std::domain_error("not a machine integer: " + q.get_str());
    return q.get_num().get_si();
}

std::strong_ordering ExtQ::operator<=>(const ExtQ& o) const
{
    if (inf || o.inf) {
        if (inf && o.inf) return std::strong_ordering::equal;
        return inf ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    int c = cmp(v, o.v);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

ExtQ operator+(const ExtQ& a, const ExtQ& b)
{
    if (a.inf || b.inf) return ExtQ::infinity();
    return ExtQ::of(a.v + b.v);
}

std::string to_string(const ExtQ& e) { return e.inf ? "+inf" : e.v.get_str(); }

std::size_t QHash::operator()(const Q& q) const
{
    std::hash<std::string> h;
    return h(q.get_str());
}

} // namespace mg
