#include "mirrorglue/mf.hpp"

#include <algorithm>
#include <stdexcept>

namespace mg {

namespace {

Vec unit_vec(const std::vector<std::string>& vars, const std::string& g)
{
    return Vec{{g, LaurentPoly::constant(vars, Series(1))}};
}

bool is_unit(const LaurentPoly& p)
{
    if (!p.is_monomial()) return false;
    auto& [e, c] = *p.terms().begin();
    return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; }) && c.is_monomial();
}

// p / u inside the polynomial ring, u a monomial with invertible coefficient
std::optional<LaurentPoly> divide(const LaurentPoly& p, const LaurentPoly& u)
{
    if (!u.is_monomial()) return std::nullopt;
    auto& [ue, uc] = *u.terms().begin();
    if (!uc.is_monomial()) return std::nullopt;
    Series inv = uc.inverse();
    LaurentPoly q(p.vars());
    for (auto& [e, c] : p.terms()) {
        Exps d(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            d[i] = e[i] - ue[i];
            if (d[i] < 0) return std::nullopt;
        }
        q.add_term(d, c * inv);
    }
    return q;
}

LaurentPoly normalized(const LaurentPoly& p)
{
    if (p.is_zero()) return p;
    const Series& lead = p.terms().begin()->second;
    if (!lead.is_monomial()) return p;
    return p.scaled(lead.inverse());
}

// remove the terms lying in a monomial ideal
LaurentPoly reduce_mod(const LaurentPoly& p, const std::vector<LaurentPoly>& ideal)
{
    LaurentPoly out(p.vars());
    for (auto& [e, c] : p.terms()) {
        bool in = false;
        for (auto& g : ideal) {
            if (!g.is_monomial()) continue;
            auto& ge = g.terms().begin()->first;
            bool div = true;
            for (std::size_t i = 0; i < e.size(); ++i) div = div && e[i] >= ge[i];
            in = in || div;
        }
        if (!in) out.add_term(e, c);
    }
    return out;
}

Vec without(const Vec& v, const std::string& g)
{
    Vec r = v;
    r.erase(g);
    return r;
}

} // namespace

bool MatrixFactorization::is_odd(const std::string& g) const
{
    return std::find(odd.begin(), odd.end(), g) != odd.end();
}

std::vector<std::string> MatrixFactorization::generators() const
{
    auto g = even;
    g.insert(g.end(), odd.begin(), odd.end());
    return g;
}

Vec MatrixFactorization::apply(const Vec& v) const
{
    Vec out;
    for (auto& [g, c] : v) {
        auto it = delta.find(g);
        if (it == delta.end()) throw std::invalid_argument("generator " + g + " not in " + name);
        out = vec_add(out, vec_scale(it->second, c));
    }
    return vec_clean(out);
}

std::string MatrixFactorization::str() const
{
    std::string s;
    for (auto& g : generators()) {
        auto it = delta.find(g);
        s += g + " -> " + (it == delta.end() ? std::string("0") : vec_str(it->second)) + "\n";
    }
    return s;
}

MFCheck check_mf(const MatrixFactorization& mf)
{
    MFCheck r;
    for (auto& g : mf.generators()) {
        Vec once = mf.apply(unit_vec(mf.vars, g));
        for (auto& [h, c] : once)
            if (mf.is_odd(h) == mf.is_odd(g)) r.residual[g] = vec_add(r.residual[g], Vec{{h, c}});
        Vec res = vec_add(mf.apply(once), vec_scale(unit_vec(mf.vars, g), -mf.W));
        if (!vec_is_zero(res)) r.residual[g] = vec_add(r.residual[g], res);
    }
    r.ok = r.residual.empty();
    return r;
}

MatrixFactorization transform_object(const AInfInstance& inst, const std::string& object, const std::string& reference,
                                     const std::string& deformation)
{
    const Model& m = inst.model();
    MatrixFactorization mf;
    mf.name = object + " against " + reference;
    mf.vars = inst.vars();
    Vec b = inst.deformation(deformation);
    for (auto& g : m.generators) {
        if (g.src != object || g.tgt != reference) continue;
        (g.deg % 2 ? mf.odd : mf.even).push_back(g.name);
    }
    if (mf.even.empty() && mf.odd.empty()) throw std::invalid_argument("no generators of Hom(" + object + ", " + reference + ")");
    for (auto& g : mf.generators()) mf.delta[g] = vec_scale(inst.mk({Vec{}, b}, {unit_vec(mf.vars, g)}), -LaurentPoly::constant(mf.vars, Series(1)));
    auto w = weak_mc_check(inst, reference, b);
    if (!w.ok) throw std::runtime_error("reference " + reference + " is not weakly unobstructed for " + deformation);
    mf.W = w.potential;
    mf.exact = mf.W.t_free();
    auto chk = check_mf(mf);
    if (!chk.ok) {
        std::string msg = "model " + m.name + ": " + mf.name + " is not a matrix factorization of " + mf.W.str();
        for (auto& [g, v] : chk.residual) msg += "\n  " + g + ": " + vec_str(v);
        throw std::runtime_error(msg);
    }
    return mf;
}

Model mf_s1_model(int m)
{
    if (m < 0) throw std::invalid_argument("winding number must be nonnegative");
    auto C = [](int i) { return "C" + std::to_string(i); };
    auto D = [](int i) { return "D" + std::to_string(i); };
    std::string json = R"({"name": "mf_s1_)" + std::to_string(m) + R"(",
  "note": "path winding )" + std::to_string(m) +
                       R"( times around the edge cylinder against the deformed Seidel chart S1",
  "objects": ["S1", "L"], "units": {"S1": "1"},
  "symbols": ["A"], "constraints": ["A >= 0"],
  "variables": ["x1", "y1", "z1"], "spin": "trivial",
  "strings": {"reference": "S1", "deformation": "b"},
  "deformations": {"b": {"X1": "x1", "Y1": "y1", "Z1": "z1"}},
  "generators": [
    {"name": "1", "object": "S1", "deg": 0},
    {"name": "X1", "object": "S1", "deg": 1}, {"name": "Y1", "object": "S1", "deg": 1}, {"name": "Z1", "object": "S1", "deg": 1})";
    for (int i = 0; i <= 2 * m; ++i)
        json += R"(,
    {"name": ")" + C(i) + R"(", "src": "L", "tgt": "S1", "deg": 1}, {"name": ")" + D(i) +
                R"(", "src": "L", "tgt": "S1", "deg": 0})";
    json += R"(
  ],
  "entries": [
    {"m": ["X1", "Y1", "Z1"], "out": "1", "coeff": "T^{A}", "open": true})";
    // delta = -m1^{0,b}, so each strip enters with the opposite sign
    auto strip = [&](const std::string& from, std::vector<std::string> ins, const std::string& to, const std::string& coeff) {
        std::string in = "\"" + from + "\"";
        for (auto& v : ins) in += ", \"" + v + "\"";
        json += ",\n    {\"m\": [" + in + "], \"out\": \"" + to + "\", \"coeff\": \"" + coeff + "\", \"open\": true}";
    };
    strip(C(0), {"Z1"}, D(0), "-1");
    strip(D(0), {"X1", "Y1"}, C(0), "-T^{A}");
    if (m >= 1) {
        strip(C(1), {}, D(1), "-T^{A}");
        strip(C(1), {}, D(0), "1");
        strip(D(1), {"X1", "Y1", "Z1"}, C(1), "-1");
        strip(D(1), {"X1", "Y1"}, C(0), "-1");
    }
    for (int k = 1; k <= m; ++k) {
        strip(C(2 * k), {"X1", "Y1", "Z1"}, D(2 * k), "1");
        strip(C(2 * k), {"X1", "Z1"}, D(2 * k - 1), "-1");
        strip(D(2 * k), {}, C(2 * k), "T^{A}");
        strip(D(2 * k), {"X1", "Z1"}, C(2 * k - 1), "-1");
        strip(D(2 * k), {"X1"}, C(2 * k - 2), "-1");
    }
    for (int k = 1; k <= m - 1; ++k) {
        strip(C(2 * k + 1), {}, D(2 * k + 1), "-T^{A}");
        strip(C(2 * k + 1), {"X1", "Y1"}, D(2 * k), "-1");
        strip(C(2 * k + 1), {"X1"}, D(2 * k - 1), "1");
        strip(D(2 * k + 1), {"X1", "Y1", "Z1"}, C(2 * k + 1), "-1");
        strip(D(2 * k + 1), {"X1", "Y1"}, C(2 * k), "-1");
    }
    json += "\n  ]\n}";
    return parse_model(json);
}

Model load_morphism_model() { return load_shipped_model("morphisms"); }

Vec DSingClass::reduce(const Vec& v, bool drop_trivial) const
{
    Vec r = v;
    for (auto it = eliminated.rbegin(); it != eliminated.rend(); ++it) {
        auto f = r.find(it->first);
        if (f == r.end()) continue;
        LaurentPoly c = f->second;
        r.erase(f);
        r = vec_add(r, vec_scale(it->second, c));
    }
    Vec out;
    for (auto& s : summands) {
        auto f = r.find(s.label);
        if (f == r.end() || (drop_trivial && s.trivial)) continue;
        LaurentPoly c = reduce_mod(f->second, s.ideal);
        if (!c.is_zero()) out.emplace(s.label, c);
    }
    return out;
}

std::string DSingClass::str() const
{
    std::string s;
    for (auto& c : summands) {
        if (!s.empty()) s += " + ";
        std::string ideal;
        for (auto& g : c.ideal) ideal += (ideal.empty() ? "" : ", ") + g.str();
        s += "R/<" + ideal + ">*" + c.label + (c.trivial ? " (trivial)" : "");
    }
    return s.empty() ? "0" : s;
}

DSingClass cokernel_dsing(const MatrixFactorization& mf)
{
    DSingClass out;
    out.vars = mf.vars;
    std::vector<std::string> rows = mf.even;
    std::vector<Vec> cols;
    for (auto& o : mf.odd) {
        Vec c = vec_clean(mf.delta.at(o));
        for (auto& [g, p] : c)
            if (mf.is_odd(g)) throw std::runtime_error("delta of " + o + " is not odd");
        if (!c.empty()) cols.push_back(c);
    }
    auto row_index = [&](const std::string& g) { return std::find(rows.begin(), rows.end(), g) - rows.begin(); };

    // unit pivots: drop the latest even generator carrying a unit
    for (bool again = true; again;) {
        again = false;
        for (std::size_t j = 0; j < cols.size() && !again; ++j) {
            std::string pivot;
            for (auto& [g, p] : cols[j])
                if (is_unit(p) && (pivot.empty() || row_index(g) > row_index(pivot))) pivot = g;
            if (pivot.empty()) continue;
            LaurentPoly u = cols[j].at(pivot);
            Vec expr = vec_scale(without(cols[j], pivot), -LaurentPoly::constant(mf.vars, u.terms().begin()->second.inverse()));
            cols.erase(cols.begin() + j);
            for (auto& c : cols) {
                auto f = c.find(pivot);
                if (f == c.end()) continue;
                LaurentPoly k = f->second;
                c.erase(f);
                c = vec_add(c, vec_scale(expr, k));
            }
            for (auto& [g, e] : out.eliminated) {
                auto f = e.find(pivot);
                if (f == e.end()) continue;
                LaurentPoly k = f->second;
                e.erase(f);
                e = vec_add(e, vec_scale(expr, k));
            }
            out.eliminated.push_back({pivot, expr});
            rows.erase(rows.begin() + row_index(pivot));
            cols.erase(std::remove_if(cols.begin(), cols.end(), [](auto& c) { return c.empty(); }), cols.end());
            again = true;
        }
    }
    // column clearing against single-entry monomial columns
    for (bool again = true; again;) {
        again = false;
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != 1) continue;
            auto [r, u] = *cols[j].begin();
            if (!u.is_monomial()) continue;
            for (std::size_t k = 0; k < cols.size(); ++k) {
                if (k == j || cols[k].size() < 2) continue;
                auto f = cols[k].find(r);
                if (f == cols[k].end()) continue;
                auto q = divide(f->second, u);
                if (!q) continue;
                cols[k] = vec_add(cols[k], vec_scale(cols[j], -*q));
                again = true;
            }
        }
        cols.erase(std::remove_if(cols.begin(), cols.end(), [](auto& c) { return c.empty(); }), cols.end());
    }
    std::map<std::string, std::vector<LaurentPoly>> ideals;
    for (auto& c : cols) {
        if (c.size() != 1) throw std::runtime_error("cokernel of " + mf.name + " does not split into cyclic summands: " + vec_str(c));
        ideals[c.begin()->first].push_back(normalized(c.begin()->second));
    }
    LaurentPoly full = LaurentPoly::monomial(mf.vars, Exps(mf.vars.size(), 1));
    for (auto& r : rows) {
        // R/<xyz> is free over R/<W>, so it vanishes in D_Sing; a proper divisor such as <z> does not
        CyclicSummand s{r, ideals[r], false};
        bool has_full = false, all_multiples = !s.ideal.empty();
        for (auto& g : s.ideal) {
            has_full = has_full || (g.is_monomial() && divide(g, full) && divide(full, g));
            all_multiples = all_multiples && divide(g, full);
        }
        s.trivial = has_full && all_multiples;
        out.summands.push_back(s);
    }
    return out;
}

Vec MFMorphism::apply(const Vec& v) const
{
    Vec out;
    for (auto& [g, c] : v) {
        auto it = map.find(g);
        if (it != map.end()) out = vec_add(out, vec_scale(it->second, c));
    }
    return vec_clean(out);
}

std::string MFMorphism::str() const
{
    std::string s;
    for (auto& [g, v] : map) s += (s.empty() ? "" : ", ") + g + " -> " + (v.empty() ? std::string("0") : vec_str(v));
    return s;
}

std::map<std::string, Vec> chain_residual(const MFMorphism& phi, const MatrixFactorization& src,
                                          const MatrixFactorization& tgt)
{
    std::map<std::string, Vec> res;
    LaurentPoly sign = LaurentPoly::constant(src.vars, Series(phi.parity % 2 ? -1 : 1));
    for (auto& g : src.generators()) {
        Vec e = unit_vec(src.vars, g);
        Vec r = vec_add(tgt.apply(phi.apply(e)), vec_scale(phi.apply(src.apply(e)), -sign));
        if (!vec_is_zero(r)) res[g] = r;
    }
    return res;
}

MFMorphism compose(const MFMorphism& f, const MFMorphism& g)
{
    MFMorphism h{f.name + "*" + g.name, (f.parity + g.parity) % 2, {}};
    for (auto& [s, v] : g.map) h.map[s] = f.apply(v);
    return h;
}

MFMorphism transform_morphism(const AInfInstance& inst, const std::string& name, const Vec& morphism,
                              const MatrixFactorization& src, const MatrixFactorization& tgt,
                              const std::string& deformation)
{
    MFMorphism phi;
    phi.name = name;
    std::optional<int> parity;
    for (auto& [g, c] : morphism) {
        int p = inst.deg(g) % 2;
        if (parity && *parity != p) throw std::invalid_argument("morphism " + name + " mixes parities");
        parity = p;
    }
    phi.parity = parity.value_or(0);
    Vec b = inst.deformation(deformation);
    for (auto& g : src.generators()) {
        Vec img = inst.mk({Vec{}, Vec{}, b}, {morphism, unit_vec(src.vars, g)});
        for (auto& [h, c] : img)
            if (!tgt.delta.count(h)) throw std::runtime_error(name + " sends " + g + " outside " + tgt.name);
        phi.map[g] = img;
    }
    return phi;
}

Comparison compare_up_to_sign(const MFMorphism& phi, const MFMorphism& psi, const MatrixFactorization& mf)
{
    Comparison c;
    auto diff = [&](int s) {
        std::map<std::string, Vec> d;
        for (auto& g : mf.generators()) {
            Vec e = unit_vec(mf.vars, g);
            Vec r = vec_add(phi.apply(e), vec_scale(psi.apply(e), LaurentPoly::constant(mf.vars, Series(-s))));
            if (!vec_is_zero(r)) d[g] = r;
        }
        return d;
    };
    for (int s : {1, -1}) {
        if (diff(s).empty()) {
            c.ok = true;
            c.sign = s;
            c.detail = "equal" + std::string(s < 0 ? " up to sign" : "");
            return c;
        }
    }
    // a multiple r of the identity on (A -f-> B -g-> A) is dh + hd with h(A) = u B, h(B) = v A whenever r = u g + v f
    if (mf.even.size() == 1 && mf.odd.size() == 1 && phi.parity == 0 && psi.parity == 0) {
        const std::string &a = mf.odd[0], &b = mf.even[0];
        auto fv = mf.delta.at(a), gv = mf.delta.at(b);
        if (fv.size() == 1 && gv.size() == 1 && fv.count(b) && gv.count(a)) {
            LaurentPoly f = fv.at(b), g = gv.at(a);
            for (int s : {1, -1}) {
                auto d = diff(s);
                if (!d.count(a) || !d.count(b)) continue;
                if (d.at(a).size() != 1 || d.at(b).size() != 1 || !d.at(a).count(a) || !d.at(b).count(b)) continue;
                LaurentPoly r = d.at(a).at(a);
                if (!(r == d.at(b).at(b))) continue;
                LaurentPoly u(mf.vars), v(mf.vars);
                bool ok = true;
                for (auto& [e, k] : r.terms()) {
                    LaurentPoly t = LaurentPoly::monomial(mf.vars, e, k);
                    if (auto q = divide(t, g)) u += *q;
                    else if (auto q2 = divide(t, f)) v += *q2;
                    else ok = false;
                }
                if (!ok) continue;
                MFMorphism h{"h", 1, {{a, Vec{{b, u}}}, {b, Vec{{a, v}}}}};
                h.map[a] = vec_clean(h.map[a]);
                h.map[b] = vec_clean(h.map[b]);
                bool exact = true;
                for (auto& gen : {a, b}) {
                    Vec e = unit_vec(mf.vars, gen);
                    Vec dh = vec_add(mf.apply(h.apply(e)), h.apply(mf.apply(e)));
                    exact = exact && vec_is_zero(vec_add(dh, vec_scale(d.at(gen), -LaurentPoly::constant(mf.vars, Series(1)))));
                }
                if (!exact) continue;
                c.ok = c.homotopic = true;
                c.sign = s;
                c.detail = "differ by " + r.str() + " * Id, null-homotopic";
                return c;
            }
        }
    }
    c.detail = "phi = " + phi.str() + "; psi = " + psi.str();
    return c;
}

MatrixFactorization path_mf(const AInfInstance& inst, const std::string& object)
{
    const auto& s = inst.model().strings;
    return transform_object(inst, object, s.at("reference"), s.at("deformation"));
}

MFMorphism path_morphism(const AInfInstance& inst, int i)
{
    std::string p = "P" + std::to_string(i);
    if (!inst.model().has_gen(p)) throw std::out_of_range("morphism table has no " + p);
    auto mf = path_mf(inst, "L");
    return transform_morphism(inst, p, unit_vec(inst.vars(), p), mf, mf, inst.model().strings.at("deformation"));
}

CompositionReport composition_check(const AInfInstance& inst, int i, int j)
{
    CompositionReport r{i, j, {}, ""};
    std::string pi = "P" + std::to_string(i), pj = "P" + std::to_string(j);
    Vec prod = inst.mk({Vec{}, Vec{}, Vec{}}, {unit_vec(inst.vars(), pi), unit_vec(inst.vars(), pj)});
    r.product = prod.empty() ? "0" : vec_str(prod);
    auto mf = path_mf(inst, "L");
    const std::string& def = inst.model().strings.at("deformation");
    MFMorphism lhs = transform_morphism(inst, "m2(" + pi + "," + pj + ")", prod, mf, mf, def);
    MFMorphism rhs = compose(path_morphism(inst, i), path_morphism(inst, j));
    r.cmp = compare_up_to_sign(lhs, rhs, mf);
    return r;
}

} // namespace mg
