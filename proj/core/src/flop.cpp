#include "mirrorglue/dgcat.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mg {

namespace {

const std::vector<std::string> chart0{"x0", "y0", "z0"}, chart0p{"x0'", "y0'", "z0'"};
const std::vector<std::string> chart1{"y1", "x1", "x1'"}, chart1p{"z1", "xt1", "xt1'"};

MonomialMap make_map(const std::vector<std::string>& src, const std::vector<std::string>& tgt,
                     const std::vector<Exps>& rows)
{
    MonomialMap m(src, tgt);
    for (std::size_t i = 0; i < src.size(); ++i) m.set(src[i], Series(1), rows[i]);
    return m;
}

using Locus = std::set<std::set<std::string>>; // union of coordinate subspaces {v = 0 for v in S}

// where a monomial map src <- tgt fails to be defined: some target variable with a negative exponent vanishes
std::set<std::string> poles(const MonomialMap& m)
{
    std::set<std::string> r;
    for (std::size_t i = 0; i < m.source().size(); ++i)
        for (std::size_t j = 0; j < m.target().size(); ++j)
            if (m.image(i).exps[j] < 0) r.insert(m.target()[j]);
    return r;
}

// points where none of the maps is defined
Locus undefined_locus(const std::vector<MonomialMap>& maps)
{
    Locus acc{{}};
    for (auto& m : maps) {
        Locus next;
        for (auto& comp : acc)
            for (auto& v : poles(m)) {
                auto c = comp;
                c.insert(v);
                next.insert(c);
            }
        acc = std::move(next);
    }
    // keep the maximal components only
    Locus out;
    for (auto& c : acc)
        if (std::none_of(acc.begin(), acc.end(), [&](auto& d) {
                return d != c && std::includes(c.begin(), c.end(), d.begin(), d.end());
            }))
            out.insert(c);
    return out;
}

std::string locus_str(const Locus& l)
{
    std::string s;
    for (auto& c : l) {
        if (!s.empty()) s += " u ";
        std::string t;
        for (auto& v : c) t += (t.empty() ? "" : "=") + v;
        s += "{" + t + "=0}";
    }
    return s.empty() ? "empty" : s;
}

IsoCheck check(const std::string& name, bool ok, const std::string& detail)
{
    return IsoCheck{name, ok ? Status::Pass : Status::Fail, detail};
}

LaurentPoly xyz(const std::vector<std::string>& v) { return LaurentPoly::monomial(v, {1, 1, 1}); }

// a = u b with u = +-T^q; nullopt otherwise
std::optional<Series> monomial_ratio(const Vec& a, const Vec& b)
{
    std::optional<Series> u;
    std::set<std::string> keys;
    for (auto& [g, c] : a) keys.insert(g);
    for (auto& [g, c] : b) keys.insert(g);
    for (auto& g : keys) {
        auto ia = a.find(g), ib = b.find(g);
        if (ia == a.end() || ib == b.end()) return std::nullopt;
        const auto& pa = ia->second;
        const auto& pb = ib->second;
        if (pa.terms().size() != pb.terms().size()) return std::nullopt;
        auto& [e, c] = *pb.terms().begin();
        Series cand = pa.coeff(e) * c.inverse();
        if (!cand.is_monomial()) return std::nullopt;
        if (!(pa == pb.scaled(cand))) return std::nullopt;
        if (u && !u->same_as(cand)) return std::nullopt;
        u = cand;
    }
    return u;
}

} // namespace

bool FlopReport::ok() const
{
    return std::none_of(checks.begin(), checks.end(), [](auto& c) { return c.status == Status::Fail; });
}

std::string FlopReport::str() const
{
    std::ostringstream os;
    for (auto& c : checks) os << to_string(c.status) << "  " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    return os.str();
}

FlopReport flop_check(const AInfInstance& inst)
{
    FlopReport rep;
    const auto& vars = inst.vars();
    LaurentPoly one = LaurentPoly::constant(vars, Series(1));

    // ---- the pair of circles: Floer differential of the smoothed corners
    Vec b = inst.deformation("b"), bp = inst.deformation("b'");
    const auto& expected = inst.model().expected;
    for (auto& [key, text] : expected) {
        if (key.rfind("d(", 0) != 0) continue;
        std::string g = key.substr(2, key.size() - 3);
        // an expected "(p)*G" entry reads as a single generator with coefficient p
        Vec want;
        std::string s = text;
        auto star = s.rfind('*');
        if (s.front() == '(' && star != std::string::npos) {
            want[s.substr(star + 1)] = inst.poly(s.substr(1, star - 2));
        } else {
            // sum of coefficient*generator terms
            std::size_t pos = 0;
            while (pos < s.size()) {
                std::size_t next = pos + 1;
                int depth = 0;
                for (; next < s.size(); ++next) {
                    if (s[next] == '{' || s[next] == '(') ++depth;
                    if (s[next] == '}' || s[next] == ')') --depth;
                    if (depth == 0 && (s[next] == '+' || s[next] == '-') && s[next - 1] == ' ') break;
                }
                std::string term = s.substr(pos, next - pos);
                term.erase(std::remove(term.begin(), term.end(), ' '), term.end());
                bool neg = term.front() == '-';
                if (term.front() == '-' || term.front() == '+') term = term.substr(1);
                auto st = term.rfind('*');
                std::string gen = st == std::string::npos ? term : term.substr(st + 1);
                LaurentPoly c = st == std::string::npos ? one : inst.poly(term.substr(0, st));
                want = vec_add(want, Vec{{gen, neg ? -c : c}});
                pos = next;
            }
        }
        Vec got = vec_clean(inst.mk({b, bp}, {Vec{{g, one}}}));
        want = vec_clean(want);
        auto u = monomial_ratio(got, want);
        // the rectangles through Y and Z carry their area T^alpha on top of the printed differential
        bool ok = false;
        std::string why;
        if (u) {
            auto [e, c] = u->terms().front();
            bool sign = c == Scalar(1) || c == Scalar(-1);
            bool area = sgn(e) == 0 || (inst.model().has_gen(g) && e == inst.value("alpha") &&
                                         (g == "Y" || g == "Z"));
            ok = sign && area;
            why = "factor " + u->str();
        } else {
            why = "got " + vec_str(got) + ", expected " + vec_str(want);
        }
        rep.checks.push_back(check("m1^{b,b'}(" + g + ") = " + text + " up to sign", ok, why));
    }

    // ---- the gluing of the two charts the pair of circles sees
    Vec alpha = inst.named_element("alpha"), beta = inst.named_element("beta");
    CoordinateChange cc = solve_isomorphism(inst, b, bp, alpha, {"x'"});
    std::string why;
    bool matched = matches_expected(inst, cc.map, {{"x'", expected.at("x'")}}, &why);
    rep.checks.push_back(check("m1(alpha) = 0 solves x'", matched, matched ? cc.map.table() : why));
    MonomialMap full = extend_to_vars(cc.map, vars);
    Vec b0 = vec_substitute(b, full), b1 = vec_substitute(bp, full);
    Vec a = vec_substitute(alpha, full), be = vec_substitute(beta, full);
    // the unit of the union of the two circles is e1 + e2
    Vec unit{{"e1", one}, {"e2", one}};
    auto zero = [](const Vec& v) { return vec_is_zero(vec_clean(v)); };
    auto minus = [&](const Vec& x, const Vec& y) { return vec_add(x, vec_scale(y, -one)); };
    Vec d_alpha = inst.mk({b0, b1}, {a}), d_beta = inst.mk({b1, b0}, {be});
    rep.checks.push_back(check("m1(alpha) = 0", zero(d_alpha), vec_str(vec_clean(d_alpha))));
    rep.checks.push_back(check("m1(beta) = 0", zero(d_beta), vec_str(vec_clean(d_beta))));
    Vec ab = inst.mk({b0, b1, b0}, {a, be}), ba = inst.mk({b1, b0, b1}, {be, a});
    rep.checks.push_back(check("m2(alpha, beta) = e1 + e2", zero(minus(ab, unit)), vec_str(vec_clean(ab))));
    rep.checks.push_back(check("m2(beta, alpha) = e1 + e2", zero(minus(ba, unit)), vec_str(vec_clean(ba))));

    // ---- exact charts before and after the flop
    MonomialMap before = make_map(chart0p, chart0, {{-1, 0, 0}, {1, 1, 0}, {1, 0, 1}});
    MonomialMap after = make_map(chart1p, chart1, {{-1, 0, 0}, {1, 1, 0}, {1, 0, 1}});
    MonomialMap f = make_map(chart1, chart0, {{0, 1, -1}, {1, 0, 1}, {0, 0, 1}});
    // the flop read on the primed charts: (z1, xt1, xt1') = (z0'/y0', y0', x0'y0')
    MonomialMap fp = make_map(chart1p, chart0p, {{0, -1, 1}, {0, 1, 0}, {1, 1, 0}});

    bool inter = after.then(f) == fp.then(before);
    rep.checks.push_back(check("flop intertwines the gluings", inter,
                               "after o f = " + after.then(f).table() + "; f' o before = " + fp.then(before).table()));

    LaurentPoly w0 = xyz(chart0), w0p = xyz(chart0p);
    LaurentPoly w1 = xyz(chart1);
    LaurentPoly w1p = xyz(chart1p);
    struct Wcase {
        std::string name;
        LaurentPoly lhs, rhs;
    };
    for (auto& w : std::vector<Wcase>{{"W0' = W0", substitute(w0p, before), w0},
                                      {"W1' = W1", substitute(w1p, after), w1},
                                      {"f*W1 = W0", substitute(w1, f), w0},
                                      {"f'*W1' = W0'", substitute(w1p, fp), w0p}})
        rep.checks.push_back(check("potential: " + w.name, w.lhs == w.rhs, w.lhs.str() + " vs " + w.rhs.str()));

    Locus dom = undefined_locus({f, after.then(f)});
    rep.checks.push_back(check("flop undefined exactly on {y0=z0=0}", dom == Locus{{"y0", "z0"}}, locus_str(dom)));
    Locus domp = undefined_locus({fp, after.inverse().then(fp)});
    rep.checks.push_back(
        check("flop undefined exactly on {y0'=z0'=0}", domp == Locus{{"y0'", "z0'"}}, locus_str(domp)));
    MonomialMap finv = f.inverse();
    Locus inv = undefined_locus({finv, before.then(finv)});
    rep.checks.push_back(check("inverse undefined exactly on {x1=x1'=0}", inv == Locus{{"x1", "x1'"}}, locus_str(inv)));
    rep.checks.push_back(check("f^-1 o f = id", f.then(finv).is_identity(), f.then(finv).table()));
    return rep;
}

} // namespace mg
