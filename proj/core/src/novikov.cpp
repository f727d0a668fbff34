#include "mirrorglue/novikov.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace mg {

Scalar Scalar::inverse() const
{
    if (is_zero()) throw std::domain_error("division by zero scalar");
    Q n = re * re + im * im;
    return {re / n, -im / n};
}

std::string to_string(const Scalar& s)
{
    if (s.is_real()) return s.re.get_str();
    std::string out = "(";
    if (sgn(s.re) != 0) out += s.re.get_str();
    if (sgn(s.im) >= 0 && sgn(s.re) != 0) out += "+";
    out += s.im.get_str() + "i)";
    return out;
}

Series::Series(const Scalar& c)
{
    if (!c.is_zero()) terms_.push_back({Q(0), c});
}

Series Series::monomial(const Q& exponent, const Scalar& coeff)
{
    Series s;
    if (!coeff.is_zero()) s.terms_.push_back({exponent, coeff});
    return s;
}

Series Series::from_terms(std::vector<Term> terms, ExtQ trunc)
{
    Series s;
    s.terms_ = std::move(terms);
    s.trunc_ = trunc;
    s.normalize();
    return s;
}

void Series::normalize()
{
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second = out.back().second + t.second;
        else
            out.push_back(std::move(t));
        if (out.back().second.is_zero()) out.pop_back();
    }
    terms_ = std::move(out);
    if (!trunc_.inf) {
        auto cut = std::find_if(terms_.begin(), terms_.end(),
                                [&](const Term& t) { return t.first > trunc_.v; });
        if (cut != terms_.end()) {
            terms_.erase(cut, terms_.end());
            inexact_ = true;
        }
    }
}

bool Series::is_real() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second.is_real(); });
}

ExtQ Series::val() const
{
    if (terms_.empty()) return ExtQ::infinity();
    return ExtQ::of(terms_.front().first);
}

Scalar Series::leading_coeff() const
{
    if (terms_.empty()) throw std::domain_error("leading coefficient of zero series");
    return terms_.front().second;
}

Scalar Series::coeff(const Q& e) const
{
    for (auto& t : terms_)
        if (t.first == e) return t.second;
    return {};
}

Series Series::truncated(const ExtQ& order) const
{
    Series s = *this;
    if (order < s.trunc_) s.trunc_ = order;
    s.normalize();
    return s;
}

Series Series::operator-() const
{
    Series s = *this;
    for (auto& t : s.terms_) t.second = -t.second;
    return s;
}

Series Series::operator+(const Series& o) const
{
    Series s;
    s.terms_ = terms_;
    s.terms_.insert(s.terms_.end(), o.terms_.begin(), o.terms_.end());
    s.trunc_ = std::min(trunc_, o.trunc_);
    s.inexact_ = inexact_ || o.inexact_;
    s.normalize();
    return s;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator*(const Series& o) const
{
    Series s;
    std::map<Q, Scalar> acc;
    for (auto& a : terms_)
        for (auto& b : o.terms_) {
            auto& c = acc[a.first + b.first];
            c = c + a.second * b.second;
        }
    for (auto& [e, c] : acc) s.terms_.push_back({e, c});
    // an unknown tail of one factor pollutes the product from trunc + val(other) on
    s.trunc_ = std::min(trunc_ + o.val(), o.trunc_ + val());
    s.inexact_ = inexact_ || o.inexact_;
    s.normalize();
    return s;
}

Series Series::scaled(const Scalar& c) const
{
    return *this * Series(c);
}

Series Series::shifted(const Q& e) const
{
    Series s = *this;
    for (auto& t : s.terms_) t.first += e;
    if (!s.trunc_.inf) s.trunc_.v += e;
    return s;
}

Series Series::inverse(const ExtQ& order) const
{
    if (is_zero()) throw std::domain_error("inverse of zero series");
    const Q v = terms_.front().first;
    const Scalar c0inv = terms_.front().second.inverse();
    if (terms_.size() == 1) {
        Series s = monomial(-v, c0inv);
        if (!trunc_.inf) s.trunc_ = ExtQ::of(trunc_.v - 2 * v);
        s.inexact_ = inexact_;
        return s;
    }
    // a = c0 T^v (1 + u), val(u) > 0
    ExtQ budget = std::min(order, trunc_.inf ? ExtQ::infinity() : ExtQ::of(trunc_.v - 2 * v));
    if (budget.inf)
        throw std::domain_error("inverse of a non-monomial series needs a finite truncation order");
    // expansion in the normalized variable runs to budget + v
    ExtQ ubudget = ExtQ::of(budget.v + v);
    Series u = shifted(-v).scaled(c0inv) - Series(1);
    u = u.truncated(ubudget);
    Series acc(1), power(1);
    const Q step = u.val().v;
    for (Q reached = 0; reached <= ubudget.v; reached += step) {
        power = (power * -u).truncated(ubudget);
        if (power.is_zero()) break;
        acc = acc + power;
    }
    acc.trunc_ = ubudget;
    acc.inexact_ = true;
    acc.normalize();
    Series s = acc.shifted(-v).scaled(c0inv);
    return s;
}

Series Series::pow(long n, const ExtQ& order) const
{
    if (n < 0) return inverse(order).pow(-n, order);
    Series r(1), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
        if (!order.inf) { r = r.truncated(order); b = b.truncated(order); }
    }
    return r;
}

bool Series::in(Subring r) const
{
    ExtQ v = val();
    switch (r) {
    case Subring::Lambda: return true;
    case Subring::Lambda0: return v >= ExtQ::of(0);
    case Subring::LambdaPlus: return v > ExtQ::of(0);
    case Subring::Lambda0Units: return !v.inf && v.v == 0;
    }
    return false;
}

bool Series::exactly_equals(const Series& o) const
{
    if (inexact_ || o.inexact_)
        throw std::logic_error("exact comparison of truncated series; use equals_up_to");
    return terms_ == o.terms_;
}

bool Series::equals_up_to(const Series& o, const ExtQ& order) const
{
    return truncated(order).terms_ == o.truncated(order).terms_;
}

std::string Series::str() const
{
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [e, c] : terms_) {
        Scalar cc = c;
        if (c.is_real()) {
            if (sgn(c.re) < 0) {
                out += first ? "-" : " - ";
                cc = -c;
            } else if (!first) {
                out += " + ";
            }
        } else if (!first) {
            out += " + ";
        }
        first = false;
        bool one = cc == Scalar(1);
        if (sgn(e) == 0) {
            out += to_string(cc);
        } else {
            if (!one) out += to_string(cc) + "*";
            out += "T^{" + e.get_str() + "}";
        }
    }
    if (inexact_) out += " + O(T^{>" + to_string(trunc_) + "})";
    return out;
}

namespace {

Scalar parse_scalar(std::string_view s)
{
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) return Scalar(1);
    if (t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
    if (!t.empty() && t.back() == 'i') {
        // a+bi, a-bi, bi, i
        std::string body = t.substr(0, t.size() - 1);
        std::size_t split = std::string::npos;
        for (std::size_t k = body.size(); k-- > 1;)
            if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '/') { split = k; break; }
        Q re = 0;
        std::string ims = body;
        if (split != std::string::npos) {
            re = parse_q(body.substr(0, split));
            ims = body.substr(split);
        }
        Q im;
        if (ims.empty() || ims == "+") im = 1;
        else if (ims == "-") im = -1;
        else im = parse_q(ims.front() == '+' ? ims.substr(1) : ims);
        return {re, im};
    }
    return Scalar(parse_q(t));
}

} // namespace

Series Series::parse(std::string_view text)
{
    std::vector<std::pair<int, std::string>> pieces;
    int depth = 0;
    std::string cur;
    int sign = 1;
    for (char c : text) {
        if (c == '{' || c == '(') depth++;
        if (c == '}' || c == ')') depth--;
        if (depth == 0 && (c == '+' || c == '-')) {
            std::string trimmed;
            for (char d : cur) if (!std::isspace(static_cast<unsigned char>(d))) trimmed.push_back(d);
            if (!trimmed.empty()) pieces.push_back({sign, trimmed});
            else if (c == '-') { sign = -sign; cur.clear(); continue; }
            sign = (c == '-') ? -1 : 1;
            cur.clear();
            continue;
        }
        cur.push_back(c);
    }
    std::string trimmed;
    for (char d : cur) if (!std::isspace(static_cast<unsigned char>(d))) trimmed.push_back(d);
    if (!trimmed.empty()) pieces.push_back({sign, trimmed});

    std::vector<Term> terms;
    for (auto& [sg, p] : pieces) {
        if (p == "0") continue;
        auto tpos = p.find('T');
        Scalar c;
        Q e = 0;
        if (tpos == std::string::npos) {
            c = parse_scalar(p);
        } else {
            std::string cs = p.substr(0, tpos);
            if (!cs.empty() && cs.back() == '*') cs.pop_back();
            c = parse_scalar(cs);
            std::string es = p.substr(tpos + 1);
            if (es.empty()) e = 1;
            else {
                if (es.front() != '^') throw std::invalid_argument("bad series term: " + p);
                es = es.substr(1);
                if (!es.empty() && es.front() == '{') {
                    if (es.back() != '}') throw std::invalid_argument("bad exponent: " + p);
                    es = es.substr(1, es.size() - 2);
                }
                e = parse_q(es);
            }
        }
        if (sg < 0) c = -c;
        terms.push_back({e, c});
    }
    return from_terms(std::move(terms));
}

ExtQ val(const Series& s) { return s.val(); }
bool subring_check(const Series& s, Subring r) { return s.in(r); }

} // namespace mg
