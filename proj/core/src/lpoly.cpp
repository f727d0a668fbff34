#include "mirrorglue/lpoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace mg {

bool GrLex::operator()(const Exps& a, const Exps& b) const
{
    long da = std::accumulate(a.begin(), a.end(), 0L);
    long db = std::accumulate(b.begin(), b.end(), 0L);
    if (da != db) return da > db;
    return a > b;
}

LaurentPoly LaurentPoly::constant(std::vector<std::string> vars, const Series& c)
{
    LaurentPoly p(std::move(vars));
    p.add_term(Exps(p.nvars(), 0), c);
    return p;
}

LaurentPoly LaurentPoly::monomial(std::vector<std::string> vars, const Exps& e, const Series& c)
{
    LaurentPoly p(std::move(vars));
    if (e.size() != p.nvars()) throw std::invalid_argument("exponent length mismatch");
    p.add_term(e, c);
    return p;
}

LaurentPoly LaurentPoly::variable(std::vector<std::string> vars, const std::string& name, int power)
{
    LaurentPoly p(std::move(vars));
    int i = p.var_index(name);
    if (i < 0) throw std::invalid_argument("unknown variable " + name);
    Exps e(p.nvars(), 0);
    e[i] = power;
    p.add_term(e, Series(1));
    return p;
}

int LaurentPoly::var_index(const std::string& name) const
{
    auto it = std::find(vars_.begin(), vars_.end(), name);
    return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

bool LaurentPoly::has_nonnegative_exponents() const
{
    for (auto& [e, c] : terms_)
        for (int k : e)
            if (k < 0) return false;
    return true;
}

Series LaurentPoly::coeff(const Exps& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Series() : it->second;
}

void LaurentPoly::add_term(const Exps& e, const Series& c)
{
    if (e.size() != vars_.size()) throw std::invalid_argument("exponent length mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero() && !it->second.inexact()) terms_.erase(it);
}

void LaurentPoly::cleanup()
{
    for (auto it = terms_.begin(); it != terms_.end();)
        if (it->second.is_zero()) it = terms_.erase(it);
        else ++it;
}

std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b)
{
    std::vector<std::string> out = a;
    for (auto& v : b)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    return out;
}

LaurentPoly LaurentPoly::with_vars(const std::vector<std::string>& vars) const
{
    if (vars == vars_) return *this;
    std::vector<int> pos(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(vars.begin(), vars.end(), vars_[i]);
        if (it == vars.end()) {
            // a variable may be dropped only if it never occurs
            bool used = std::any_of(terms_.begin(), terms_.end(), [&](auto& t) { return t.first[i] != 0; });
            if (used) throw std::invalid_argument("variable " + vars_[i] + " not in target list");
            pos[i] = -1;
        } else {
            pos[i] = static_cast<int>(it - vars.begin());
        }
    }
    LaurentPoly p(vars);
    for (auto& [e, c] : terms_) {
        Exps f(vars.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (pos[i] >= 0) f[pos[i]] = e[i];
        p.add_term(f, c);
    }
    return p;
}

LaurentPoly LaurentPoly::operator-() const
{
    LaurentPoly p = *this;
    for (auto& [e, c] : p.terms_) c = -c;
    return p;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const
{
    if (vars_ != o.vars_) {
        auto v = merge_vars(vars_, o.vars_);
        return with_vars(v) + o.with_vars(v);
    }
    LaurentPoly p = *this;
    for (auto& [e, c] : o.terms_) p.add_term(e, c);
    return p;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const
{
    if (vars_ != o.vars_) {
        auto v = merge_vars(vars_, o.vars_);
        return with_vars(v) * o.with_vars(v);
    }
    LaurentPoly p(vars_);
    Exps e(vars_.size());
    for (auto& [ea, ca] : terms_)
        for (auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            p.add_term(e, ca * cb);
        }
    return p;
}

LaurentPoly LaurentPoly::scaled(const Series& c) const
{
    LaurentPoly p(vars_);
    for (auto& [e, k] : terms_) p.add_term(e, k * c);
    return p;
}

LaurentPoly LaurentPoly::pow(int n) const
{
    if (n < 0) {
        if (!is_monomial()) throw std::domain_error("negative power of a non-monomial");
        auto& [e, c] = *terms_.begin();
        Exps f(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) f[i] = e[i] * n;
        return monomial(vars_, f, c.pow(n));
    }
    LaurentPoly r = constant(vars_, Series(1)), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

bool LaurentPoly::t_free() const
{
    for (auto& [e, c] : terms_)
        for (auto& t : c.terms())
            if (sgn(t.first) != 0) return false;
    return true;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const
{
    auto v = merge_vars(vars_, o.vars_);
    LaurentPoly a = with_vars(v), b = o.with_vars(v);
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
        if (ia->first != ib->first || !ia->second.exactly_equals(ib->second)) return false;
    return true;
}

bool LaurentPoly::same_as(const LaurentPoly& o) const
{
    if (vars_ != o.vars_ || terms_.size() != o.terms_.size()) return false;
    for (auto ia = terms_.begin(), ib = o.terms_.begin(); ia != terms_.end(); ++ia, ++ib)
        if (ia->first != ib->first || !ia->second.same_as(ib->second)) return false;
    return true;
}

std::string monomial_str(const std::vector<std::string>& vars, const Exps& e)
{
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += vars[i];
        if (e[i] != 1) out += "^{" + std::to_string(e[i]) + "}";
    }
    return out;
}

std::string LaurentPoly::str() const
{
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [e, c] : terms_) {
        std::string mono = monomial_str(vars_, e);
        std::string cs;
        bool negative = false;
        if (c.is_monomial() && c.is_real() && !c.inexact()) {
            Series cc = c;
            if (sgn(c.leading_coeff().re) < 0) { negative = true; cc = -c; }
            cs = cc.str();
            if (!mono.empty() && cs == "1") cs.clear();
        } else {
            cs = "(" + c.str() + ")";
        }
        if (first) out += negative ? "-" : "";
        else out += negative ? " - " : " + ";
        first = false;
        if (cs.empty()) out += mono;
        else if (mono.empty()) out += cs;
        else out += cs + "*" + mono;
    }
    return out;
}

namespace {

std::string strip(const std::string& s)
{
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    return t;
}

std::vector<std::string> split_top(const std::string& s, char sep)
{
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '{' || c == '(') depth++;
        if (c == '}' || c == ')') depth--;
        if (depth == 0 && c == sep) {
            out.push_back(cur);
            cur.clear();
            continue;
        }
        cur.push_back(c);
    }
    out.push_back(cur);
    return out;
}

int parse_power(const std::string& rest, const std::string& whole)
{
    if (rest.empty()) return 1;
    if (rest[0] != '^') throw std::invalid_argument("bad factor: " + whole);
    std::string p = rest.substr(1);
    if (!p.empty() && p.front() == '{') p = p.substr(1, p.size() - 2);
    return std::stoi(p);
}

} // namespace

LaurentPoly LaurentPoly::parse(const std::vector<std::string>& vars, const std::string& text)
{
    std::string s = strip(text);
    LaurentPoly result(vars);
    // split into signed terms at top level
    std::vector<std::pair<int, std::string>> terms;
    int depth = 0, sign = 1;
    std::string cur;
    for (std::size_t k = 0; k < s.size(); ++k) {
        char c = s[k];
        if (c == '{' || c == '(') depth++;
        if (c == '}' || c == ')') depth--;
        bool after_caret = k > 0 && s[k - 1] == '^';
        if (depth == 0 && (c == '+' || c == '-') && !after_caret) {
            if (!cur.empty()) terms.push_back({sign, cur});
            else if (c == '-') { sign = -sign; continue; }
            sign = (c == '-') ? -1 : 1;
            if (!cur.empty()) cur.clear();
            continue;
        }
        cur.push_back(c);
    }
    if (!cur.empty()) terms.push_back({sign, cur});

    std::vector<std::string> by_len = vars;
    std::sort(by_len.begin(), by_len.end(), [](auto& a, auto& b) { return a.size() > b.size(); });

    for (auto& [sg, t] : terms) {
        Series c(sg);
        Exps e(vars.size(), 0);
        for (auto& f : split_top(t, '*')) {
            if (f.empty()) throw std::invalid_argument("empty factor in " + text);
            if (f.front() == '(') {
                auto close = f.rfind(')');
                c *= Series::parse(f.substr(1, close - 1));
                if (close + 1 < f.size()) {
                    // (poly)^n is not supported; only (series)
                    throw std::invalid_argument("power of parenthesized factor: " + f);
                }
                continue;
            }
            if (f[0] == 'T' && (f.size() == 1 || f[1] == '^')) {
                c *= Series::parse(f);
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(f[0]))) {
                c *= Series(parse_q(f));
                continue;
            }
            bool matched = false;
            for (auto& v : by_len) {
                if (f.compare(0, v.size(), v) == 0 && (f.size() == v.size() || f[v.size()] == '^')) {
                    int idx = std::find(vars.begin(), vars.end(), v) - vars.begin();
                    e[idx] += parse_power(f.substr(v.size()), f);
                    matched = true;
                    break;
                }
            }
            if (!matched) throw std::invalid_argument("unbound variable or bad factor '" + f + "'");
        }
        result.add_term(e, c);
    }
    return result;
}

MonomialMap::MonomialMap(std::vector<std::string> src, std::vector<std::string> tgt)
    : src_(std::move(src)), tgt_(std::move(tgt))
{
    images_.assign(src_.size(), Image{Series(1), Exps(tgt_.size(), 0)});
}

MonomialMap MonomialMap::identity(const std::vector<std::string>& vars)
{
    MonomialMap m(vars, vars);
    for (std::size_t i = 0; i < vars.size(); ++i) m.images_[i].exps[i] = 1;
    return m;
}

const MonomialMap::Image& MonomialMap::image(const std::string& var) const
{
    auto it = std::find(src_.begin(), src_.end(), var);
    if (it == src_.end()) throw std::invalid_argument("unknown source variable " + var);
    return images_[it - src_.begin()];
}

void MonomialMap::set(const std::string& v, const Series& unit, const Exps& exps)
{
    auto it = std::find(src_.begin(), src_.end(), v);
    if (it == src_.end()) throw std::invalid_argument("unknown source variable " + v);
    if (exps.size() != tgt_.size()) throw std::invalid_argument("image exponent length mismatch");
    if (unit.is_zero()) throw std::invalid_argument("zero unit in monomial map");
    images_[it - src_.begin()] = Image{unit, exps};
}

MonomialMap MonomialMap::then(const MonomialMap& g) const
{
    if (tgt_ != g.src_) throw std::invalid_argument("monomial maps not composable");
    MonomialMap r(src_, g.tgt_);
    for (std::size_t i = 0; i < src_.size(); ++i) {
        Series u = images_[i].unit;
        Exps e(g.tgt_.size(), 0);
        for (std::size_t j = 0; j < tgt_.size(); ++j) {
            int k = images_[i].exps[j];
            if (k == 0) continue;
            u *= g.images_[j].unit.pow(k);
            for (std::size_t l = 0; l < e.size(); ++l) e[l] += k * g.images_[j].exps[l];
        }
        r.images_[i] = Image{u, e};
    }
    return r;
}

MonomialMap MonomialMap::inverse() const
{
    const std::size_t n = src_.size();
    if (tgt_.size() != n) throw std::domain_error("non-square monomial map");
    // solve E * L = I over Q, with E[i][j] = exponent of y_j in x_i
    std::vector<std::vector<Q>> a(n, std::vector<Q>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = images_[i].exps[j];
        a[i][n + i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(a[piv][col]) == 0) ++piv;
        if (piv == n) throw std::domain_error("monomial map not invertible");
        std::swap(a[piv], a[col]);
        Q inv = 1 / a[col][col];
        for (auto& v : a[col]) v *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || sgn(a[r][col]) == 0) continue;
            Q f = a[r][col];
            for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[col][k];
        }
    }
    // y_j = prod_i (x_i / u_i)^{L[j][i]} where L = E^{-1}
    MonomialMap r(tgt_, src_);
    for (std::size_t j = 0; j < n; ++j) {
        Exps e(n);
        Series u(1);
        for (std::size_t i = 0; i < n; ++i) {
            const Q& l = a[j][n + i];
            if (!is_integer(l)) throw std::domain_error("monomial map not unimodular");
            e[i] = static_cast<int>(to_long(l));
            if (e[i] != 0) u *= images_[i].unit.pow(-e[i]);
        }
        r.images_[j] = Image{u, e};
    }
    return r;
}

MonomialMap MonomialMap::renamed(const std::vector<std::string>& src, const std::vector<std::string>& tgt) const
{
    if (src.size() != src_.size() || tgt.size() != tgt_.size()) throw std::invalid_argument("rename arity");
    MonomialMap r = *this;
    r.src_ = src;
    r.tgt_ = tgt;
    return r;
}

bool MonomialMap::is_identity() const
{
    if (src_ != tgt_) return false;
    for (std::size_t i = 0; i < src_.size(); ++i) {
        if (!images_[i].unit.exactly_equals(Series(1))) return false;
        for (std::size_t j = 0; j < tgt_.size(); ++j)
            if (images_[i].exps[j] != (i == j ? 1 : 0)) return false;
    }
    return true;
}

bool MonomialMap::operator==(const MonomialMap& o) const
{
    if (src_ != o.src_ || tgt_ != o.tgt_) return false;
    for (std::size_t i = 0; i < src_.size(); ++i)
        if (images_[i].exps != o.images_[i].exps || !images_[i].unit.exactly_equals(o.images_[i].unit))
            return false;
    return true;
}

std::string MonomialMap::table() const
{
    std::string out;
    for (std::size_t i = 0; i < src_.size(); ++i) {
        out += src_[i] + " <- ";
        const auto& im = images_[i];
        std::string mono = monomial_str(tgt_, im.exps);
        std::string u = im.unit.str();
        if (!im.unit.is_monomial()) u = "(" + u + ")";
        if (mono.empty()) out += u;
        else if (u == "1") out += mono;
        else out += u + " * " + mono;
        out += "\n";
    }
    return out;
}

LaurentPoly substitute(const LaurentPoly& p, const MonomialMap& m)
{
    std::vector<int> idx(p.nvars());
    for (std::size_t i = 0; i < p.nvars(); ++i) {
        auto it = std::find(m.source().begin(), m.source().end(), p.vars()[i]);
        if (it == m.source().end()) {
            bool used = std::any_of(p.terms().begin(), p.terms().end(), [&](auto& t) { return t.first[i] != 0; });
            if (used) throw std::invalid_argument("unbound variable " + p.vars()[i]);
            idx[i] = -1;
        } else {
            idx[i] = static_cast<int>(it - m.source().begin());
        }
    }
    LaurentPoly out(m.target());
    for (auto& [e, c] : p.terms()) {
        Series u = c;
        Exps f(m.target().size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            const auto& im = m.image(idx[i]);
            u *= im.unit.pow(e[i]);
            for (std::size_t l = 0; l < f.size(); ++l) f[l] += e[i] * im.exps[l];
        }
        out.add_term(f, u);
    }
    return out;
}

ExtQ monomial_val(const LaurentPoly& p, const std::vector<ExtQ>& point)
{
    if (point.size() != p.nvars()) throw std::invalid_argument("point dimension mismatch");
    ExtQ best = ExtQ::infinity();
    for (auto& [e, c] : p.terms()) {
        ExtQ v = c.val();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (point[i].inf) {
                if (e[i] < 0) throw std::domain_error("negative exponent of " + p.vars()[i] + " at valuation +inf");
                v = ExtQ::infinity();
            } else {
                v = v + ExtQ::of(point[i].v * e[i]);
            }
        }
        if (v < best) best = v;
    }
    return best;
}

// member iff the monomial has nonnegative valuation on the whole box
bool monoid_member(const Exps& e, const Series& coeff, const MonoidSpec& spec)
{
    if (coeff.is_zero()) return false;
    if (e.size() != spec.box.size()) throw std::invalid_argument("monoid dimension mismatch");
    ExtQ v = coeff.val();
    Q worst = v.v;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] > 0) {
            if (!spec.box[i].lo) return false;
            worst += *spec.box[i].lo * e[i];
        } else if (e[i] < 0) {
            if (!spec.box[i].hi) return false;
            worst += *spec.box[i].hi * e[i];
        }
    }
    return sgn(worst) >= 0;
}

} // namespace mg
