#include "mirrorglue/ainf.hpp"

#include <algorithm>
#include <stdexcept>

namespace mg {

namespace {

struct Relation {
    std::string output;
    Exps diff; // exponents of M1 / M2
    Series ratio;
};

Series monomial_power(const Series& s, const Q& p)
{
    if (!s.is_monomial()) throw std::domain_error("relation constant is not a monomial: " + s.str());
    auto [e, c] = s.terms().front();
    if (is_integer(p)) return s.pow(to_long(p));
    if (!(c.re == 1 && sgn(c.im) == 0)) throw std::domain_error("fractional power of a non-unit constant " + s.str());
    return Series::T(e * p);
}

std::string box_line(const std::string& v, const MonomialMap::Image& im, const std::vector<std::string>& tgt)
{
    std::string out = "val(" + v + ") = ";
    bool first = true;
    for (std::size_t i = 0; i < tgt.size(); ++i) {
        int e = im.exps[i];
        if (!e) continue;
        if (!first) out += e < 0 ? " - " : " + ";
        else if (e < 0) out += "-";
        first = false;
        if (std::abs(e) != 1) out += std::to_string(std::abs(e)) + "*";
        out += "val(" + tgt[i] + ")";
    }
    Q c = im.unit.val().v;
    if (first) out += to_string(c);
    else if (sgn(c) != 0) out += (sgn(c) < 0 ? " - " : " + ") + to_string(Q(abs(c)));
    return out + " >= 0";
}

} // namespace

MonomialMap extend_to_vars(const MonomialMap& m, const std::vector<std::string>& vars)
{
    MonomialMap full = MonomialMap::identity(vars);
    for (std::size_t i = 0; i < m.source().size(); ++i) {
        const auto& im = m.image(i);
        Exps e(vars.size(), 0);
        for (std::size_t j = 0; j < m.target().size(); ++j) {
            auto it = std::find(vars.begin(), vars.end(), m.target()[j]);
            if (it == vars.end()) throw std::invalid_argument("map target " + m.target()[j] + " outside variable list");
            e[it - vars.begin()] += im.exps[j];
        }
        full.set(m.source()[i], im.unit, e);
    }
    return full;
}

CoordinateChange solve_isomorphism(const AInfInstance& inst, const Vec& b0, const Vec& b1, const Vec& alpha,
                                   const std::vector<std::string>& solve_for)
{
    const auto& vars = inst.vars();
    Vec d = inst.mk({b0, b1}, {alpha});

    std::vector<Relation> rels;
    for (auto& [g, p] : d) {
        if (p.is_zero()) continue;
        if (p.terms().size() == 1)
            throw std::runtime_error("inconsistent system: " + g + " coefficient " + p.str() + " cannot vanish");
        if (p.terms().size() > 2) throw std::runtime_error("non-monomial relation at " + g + ": " + p.str());
        auto it = p.terms().begin();
        auto [e1, c1] = *it++;
        auto [e2, c2] = *it;
        Exps diff(e1.size());
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = e1[i] - e2[i];
        if (!c1.is_monomial()) throw std::runtime_error("non-monomial coefficient at " + g);
        rels.push_back({g, diff, -(c2 * c1.inverse())});
    }

    std::vector<std::size_t> sidx, oidx;
    for (auto& v : solve_for) {
        auto it = std::find(vars.begin(), vars.end(), v);
        if (it == vars.end()) throw std::invalid_argument("unknown variable " + v);
        sidx.push_back(it - vars.begin());
    }
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (std::find(sidx.begin(), sidx.end(), i) == sidx.end()) oidx.push_back(i);
    const std::size_t n = sidx.size();

    // greedy choice of independent relations in the solved columns
    std::vector<std::size_t> chosen;
    std::vector<std::vector<Q>> basis; // row-reduced copies
    std::vector<std::size_t> pivots;
    for (std::size_t r = 0; r < rels.size() && chosen.size() < n; ++r) {
        std::vector<Q> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = rels[r].diff[sidx[j]];
        for (std::size_t b = 0; b < basis.size(); ++b) {
            Q f = row[pivots[b]];
            if (sgn(f) == 0) continue;
            for (std::size_t j = 0; j < n; ++j) row[j] -= f * basis[b][j];
        }
        std::size_t p = 0;
        while (p < n && sgn(row[p]) == 0) ++p;
        if (p == n) continue;
        Q inv = 1 / row[p];
        for (auto& v : row) v *= inv;
        for (std::size_t b = 0; b < basis.size(); ++b) {
            Q f = basis[b][p];
            if (sgn(f) == 0) continue;
            for (std::size_t j = 0; j < n; ++j) basis[b][j] -= f * row[j];
        }
        basis.push_back(row);
        pivots.push_back(p);
        chosen.push_back(r);
    }
    if (chosen.size() < n) throw std::runtime_error("underdetermined: relations do not fix every requested variable");

    // invert the chosen square block
    std::vector<std::vector<Q>> a(n, std::vector<Q>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = rels[chosen[i]].diff[sidx[j]];
        a[i][n + i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (sgn(a[piv][col]) == 0) ++piv;
        std::swap(a[piv], a[col]);
        Q inv = 1 / a[col][col];
        for (auto& v : a[col]) v *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || sgn(a[r][col]) == 0) continue;
            Q f = a[r][col];
            for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[col][k];
        }
    }
    // L[j][i] = a[j][n+i]; D_S u + D_O w = log r  =>  u = L log r - L D_O w
    std::vector<std::string> others;
    for (auto i : oidx) others.push_back(vars[i]);
    CoordinateChange cc;
    cc.map = MonomialMap(solve_for, others);
    for (std::size_t j = 0; j < n; ++j) {
        Series unit(1);
        Exps e(others.size(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const Q& l = a[j][n + i];
            if (sgn(l) == 0) continue;
            unit *= monomial_power(rels[chosen[i]].ratio, l);
        }
        for (std::size_t o = 0; o < oidx.size(); ++o) {
            Q v = 0;
            for (std::size_t i = 0; i < n; ++i) v -= a[j][n + i] * rels[chosen[i]].diff[oidx[o]];
            if (!is_integer(v)) throw std::runtime_error("solution needs a fractional power of " + others[o]);
            e[o] = static_cast<int>(to_long(v));
        }
        cc.map.set(solve_for[j], unit, e);
    }

    // every relation, chosen or redundant, must now vanish
    MonomialMap full = extend_to_vars(cc.map, vars);
    Vec check = inst.mk({vec_substitute(b0, full), vec_substitute(b1, full)}, {vec_substitute(alpha, full)});
    if (!vec_is_zero(check)) throw std::runtime_error("inconsistent system, residual " + vec_str(check));

    std::string table = cc.map.table();
    std::size_t pos = 0;
    while (pos < table.size()) {
        auto nl = table.find('\n', pos);
        cc.relations.push_back(table.substr(pos, nl - pos));
        pos = nl + 1;
    }
    for (std::size_t j = 0; j < n; ++j) cc.valuation_box.push_back(box_line(solve_for[j], cc.map.image(j), others));
    return cc;
}

bool IsoReport::ok() const
{
    return std::none_of(checks.begin(), checks.end(), [](auto& c) { return c.status == Status::Fail; });
}

namespace {

std::string endpoint_object(const AInfInstance& inst, const Vec& v, bool source)
{
    if (v.empty()) throw std::invalid_argument("empty morphism");
    std::string o;
    for (auto& [g, c] : v) {
        const auto& gen = inst.model().gen(g);
        const std::string& e = source ? gen.src : gen.tgt;
        if (!o.empty() && o != e) throw std::invalid_argument("morphism mixes Hom spaces");
        o = e;
    }
    return o;
}

bool touches_incomplete(const AInfInstance& inst, const Vec& v)
{
    return std::any_of(v.begin(), v.end(), [&](auto& kv) { return inst.model().gen(kv.first).incomplete; });
}

IsoCheck closed_check(const AInfInstance& inst, const std::string& name, const Vec& l, const Vec& r, const Vec& x)
{
    IsoCheck c{name, Status::Pass, ""};
    Vec d = inst.mk({l, r}, {x});
    if (touches_incomplete(inst, x)) {
        c.status = Status::Undetermined;
        c.detail = "differential not shipped in the model data; listed part gives " + vec_str(d);
    } else if (!vec_is_zero(d)) {
        c.status = Status::Fail;
        c.detail = "residual " + vec_str(d);
    }
    return c;
}

IsoCheck unit_check(const AInfInstance& inst, const std::string& name, const std::vector<Vec>& bs, const Vec& x,
                    const Vec& y, const std::string& obj, std::optional<LaurentPoly>& out)
{
    IsoCheck c{name, Status::Pass, ""};
    auto uit = inst.model().units.find(obj);
    if (uit == inst.model().units.end()) throw std::invalid_argument("object " + obj + " has no unit");
    Vec m = inst.mk(bs, {x, y});
    Vec rest = m;
    rest.erase(uit->second);
    auto it = m.find(uit->second);
    if (!vec_is_zero(rest) || it == m.end()) {
        c.status = Status::Fail;
        c.detail = "not a multiple of the unit: " + vec_str(m);
        return c;
    }
    out = it->second;
    c.detail = it->second.str();
    return c;
}

} // namespace

IsoReport verify_isomorphism(const AInfInstance& inst, const Vec& b0, const Vec& b1, const Vec& alpha, const Vec& beta)
{
    IsoReport rep;
    std::string o0 = endpoint_object(inst, alpha, true), o1 = endpoint_object(inst, alpha, false);
    if (endpoint_object(inst, beta, true) != o1 || endpoint_object(inst, beta, false) != o0)
        throw std::invalid_argument("beta must go back from " + o1 + " to " + o0);
    rep.checks.push_back(closed_check(inst, "m1(alpha) = 0", b0, b1, alpha));
    rep.checks.push_back(closed_check(inst, "m1(beta) = 0", b1, b0, beta));
    rep.checks.push_back(unit_check(inst, "m2(alpha,beta) = c*1", {b0, b1, b0}, alpha, beta, o0, rep.unit_left));
    rep.checks.push_back(unit_check(inst, "m2(beta,alpha) = c*1", {b1, b0, b1}, beta, alpha, o1, rep.unit_right));
    return rep;
}

bool matches_expected(const AInfInstance& inst, const MonomialMap& m, const std::map<std::string, std::string>& exp,
                      std::string* why)
{
    for (std::size_t i = 0; i < m.source().size(); ++i) {
        const auto& v = m.source()[i];
        auto it = exp.find(v);
        if (it == exp.end()) {
            if (why) *why = "no expectation for " + v;
            return false;
        }
        LaurentPoly want = inst.poly(it->second);
        LaurentPoly got = LaurentPoly::monomial(m.target(), m.image(i).exps, m.image(i).unit);
        if (!(want == got)) {
            if (why) *why = v + ": expected " + want.str() + ", solved " + got.with_vars(inst.vars()).str();
            return false;
        }
    }
    return true;
}

CoordinateChange variant_isomorphism(const AInfInstance& inst, int a)
{
    Vec b0 = inst.deformation("b0"), b1 = inst.deformation("b1");
    LaurentPoly xa = LaurentPoly::variable(inst.vars(), "x", a - 1);
    Vec alpha = vec_add(Vec{{"P4", xa}}, Vec{{"Q4", -LaurentPoly::constant(inst.vars(), Series(1))}});
    return solve_isomorphism(inst, b0, b1, alpha, {"x'", "y'", "z'"});
}

} // namespace mg
