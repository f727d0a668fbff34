#include "mirrorglue/ainf.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace mg {

// ---- LinExpr -------------------------------------------------------------

LinExpr LinExpr::symbol(const std::string& s)
{
    LinExpr e;
    e.terms[s] = 1;
    return e;
}

void LinExpr::prune()
{
    for (auto it = terms.begin(); it != terms.end();)
        if (sgn(it->second) == 0) it = terms.erase(it);
        else ++it;
}

LinExpr LinExpr::operator+(const LinExpr& o) const
{
    LinExpr r = *this;
    r.c += o.c;
    for (auto& [s, q] : o.terms) r.terms[s] += q;
    r.prune();
    return r;
}

LinExpr LinExpr::operator-(const LinExpr& o) const { return *this + o * Q(-1); }

LinExpr LinExpr::operator*(const Q& k) const
{
    LinExpr r;
    r.c = c * k;
    for (auto& [s, q] : terms) r.terms[s] = q * k;
    r.prune();
    return r;
}

Q LinExpr::eval(const Assignment& a) const
{
    Q v = c;
    for (auto& [s, q] : terms) {
        auto it = a.find(s);
        if (it == a.end()) throw std::invalid_argument("area symbol '" + s + "' has no value");
        v += q * it->second;
    }
    return v;
}

std::string LinExpr::str() const
{
    std::string out;
    for (auto& [s, q] : terms) {
        Q a = abs(q);
        if (out.empty()) out += sgn(q) < 0 ? "-" : "";
        else out += sgn(q) < 0 ? " - " : " + ";
        if (a != 1) out += to_string(a) + "*";
        out += s;
    }
    if (sgn(c) != 0 || out.empty()) {
        if (out.empty()) out = to_string(c);
        else out += (sgn(c) < 0 ? " - " : " + ") + to_string(Q(abs(c)));
    }
    return out;
}

namespace {

struct LinParser {
    const std::string& s;
    const std::map<std::string, LinExpr>* defs;
    std::size_t i = 0;

    void ws()
    {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("linear expression '" + s + "': " + what);
    }
    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

    LinExpr expr()
    {
        ws();
        LinExpr r;
        bool first = true;
        while (true) {
            ws();
            int sign = 1;
            if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
                sign = s[i] == '-' ? -1 : 1;
                ++i;
            } else if (!first) {
                break;
            }
            r = r + term() * Q(sign);
            first = false;
            ws();
            if (i >= s.size() || s[i] == ')') break;
        }
        return r;
    }

    LinExpr term()
    {
        LinExpr r = factor();
        while (true) {
            ws();
            if (i < s.size() && s[i] == '*') {
                ++i;
                r = mul(r, factor());
            } else if (i < s.size() && s[i] == '/') {
                ++i;
                LinExpr d = factor();
                if (!d.is_constant() || sgn(d.c) == 0) fail("division by a non-constant");
                r = r * (Q(1) / d.c);
            } else if (i < s.size() && (ident_start(s[i]) || s[i] == '(')) {
                r = mul(r, factor()); // implicit product such as 2k1
            } else {
                break;
            }
        }
        return r;
    }

    LinExpr mul(const LinExpr& a, const LinExpr& b)
    {
        if (a.is_constant()) return b * a.c;
        if (b.is_constant()) return a * b.c;
        fail("nonlinear product");
    }

    LinExpr factor()
    {
        ws();
        if (i >= s.size()) fail("unexpected end");
        char c = s[i];
        if (c == '(') {
            ++i;
            LinExpr r = expr();
            ws();
            if (i >= s.size() || s[i] != ')') fail("missing )");
            ++i;
            return r;
        }
        if (c == '-') {
            ++i;
            return factor() * Q(-1);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            Q v = parse_q(s.substr(i, j - i));
            i = j;
            return LinExpr::constant(v);
        }
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < s.size() && ident_char(s[j])) ++j;
            std::string name = s.substr(i, j - i);
            i = j;
            if (defs) {
                auto it = defs->find(name);
                if (it != defs->end()) return it->second;
            }
            return LinExpr::symbol(name);
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

} // namespace

LinExpr LinExpr::parse(const std::string& text, const std::map<std::string, LinExpr>* defs)
{
    LinParser p{text, defs};
    LinExpr r = p.expr();
    p.ws();
    if (p.i != text.size()) p.fail("trailing input");
    return r;
}

Constraint Constraint::parse(const std::string& text, const std::map<std::string, LinExpr>* defs)
{
    struct Op {
        const char* tok;
        Rel rel;
        bool flip;
    };
    static const Op ops[] = {{">=", Rel::Ge, false}, {"<=", Rel::Ge, true}, {">", Rel::Gt, false},
                             {"<", Rel::Gt, true},   {"=", Rel::Eq, false}};
    for (auto& op : ops) {
        auto pos = text.find(op.tok);
        if (pos == std::string::npos) continue;
        LinExpr l = LinExpr::parse(text.substr(0, pos), defs);
        LinExpr r = LinExpr::parse(text.substr(pos + std::string(op.tok).size()), defs);
        Constraint c;
        c.rel = op.rel;
        c.expr = op.flip ? r - l : l - r;
        c.text = text;
        return c;
    }
    throw std::invalid_argument("constraint without relation: " + text);
}

bool Constraint::holds(const Assignment& a) const
{
    Q v = expr.eval(a);
    switch (rel) {
    case Rel::Eq: return sgn(v) == 0;
    case Rel::Ge: return sgn(v) >= 0;
    case Rel::Gt: return sgn(v) > 0;
    }
    return false;
}

// ---- Model ---------------------------------------------------------------

const Generator& Model::gen(const std::string& n) const
{
    for (auto& g : generators)
        if (g.name == n) return g;
    throw std::invalid_argument("model " + name + ": unknown generator " + n);
}

bool Model::has_gen(const std::string& n) const
{
    return std::any_of(generators.begin(), generators.end(), [&](auto& g) { return g.name == n; });
}

std::vector<std::string> Model::validate() const
{
    std::vector<std::string> errs;
    std::set<std::string> names;
    for (auto& g : generators) {
        if (!names.insert(g.name).second) errs.push_back("duplicate generator " + g.name);
        if (std::find(objects.begin(), objects.end(), g.src) == objects.end() ||
            std::find(objects.begin(), objects.end(), g.tgt) == objects.end())
            errs.push_back("generator " + g.name + " between unknown objects");
    }
    for (auto& [o, u] : units) {
        if (!has_gen(u)) {
            errs.push_back("unit " + u + " of " + o + " is not a generator");
            continue;
        }
        auto& g = gen(u);
        if (g.deg % 2 != 0 || g.src != o || g.tgt != o) errs.push_back("unit " + u + " must be even on " + o);
    }
    for (auto& e : entries) {
        std::string label = "m" + std::to_string(e.inputs.size()) + "(";
        for (std::size_t i = 0; i < e.inputs.size(); ++i) label += (i ? "," : "") + e.inputs[i];
        label += ")";
        bool known = has_gen(e.output);
        for (auto& x : e.inputs) known = known && has_gen(x);
        if (!known) {
            errs.push_back(label + ": unknown generator");
            continue;
        }
        int rhs = 1;
        for (auto& x : e.inputs) rhs += shifted(gen(x).deg);
        if (shifted(gen(e.output).deg) != ((rhs % 2) + 2) % 2) errs.push_back(label + " -> " + e.output + ": degree mismatch");
        // composability left to right
        std::string at = e.inputs.empty() ? gen(e.output).src : gen(e.inputs.front()).src;
        for (auto& x : e.inputs) {
            if (gen(x).src != at) errs.push_back(label + ": inputs not composable");
            at = gen(x).tgt;
        }
        auto& out = gen(e.output);
        std::string start = e.inputs.empty() ? out.src : gen(e.inputs.front()).src;
        if (out.src != start || out.tgt != at) errs.push_back(label + " -> " + e.output + ": endpoints mismatch");
    }
    return errs;
}

// ---- sampling ------------------------------------------------------------

Assignment sample_assignment(const Model& m, std::mt19937_64& rng, int max_tries)
{
    return sample_assignment(m, rng, {}, max_tries);
}

Assignment sample_assignment(const Model& m, std::mt19937_64& rng, const Assignment& pinned, int max_tries)
{
    // reduce equalities to pivot form: pivot = rhs-free leading symbol
    std::vector<std::pair<std::string, LinExpr>> solved; // symbol = expr
    std::set<std::string> dependent;
    for (auto& c : m.constraints) {
        if (c.rel != Constraint::Rel::Eq) continue;
        LinExpr e = c.expr;
        for (auto& [s, ex] : solved) {
            auto it = e.terms.find(s);
            if (it == e.terms.end()) continue;
            Q k = it->second;
            e.terms.erase(it);
            e = e + ex * k;
        }
        if (e.terms.empty()) {
            if (sgn(e.c) != 0) throw std::invalid_argument("model " + m.name + ": inconsistent equalities");
            continue;
        }
        // prefer the symbol written alone on the left of the constraint
        std::string piv;
        auto eqpos = c.text.find('=');
        std::string lhs = c.text.substr(0, eqpos);
        lhs.erase(std::remove_if(lhs.begin(), lhs.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); }), lhs.end());
        if (e.terms.count(lhs) && !pinned.count(lhs)) piv = lhs;
        if (piv.empty())
            for (auto& [s, q] : e.terms)
                if (!pinned.count(s)) { piv = s; break; }
        if (piv.empty()) throw std::invalid_argument("model " + m.name + ": equality fully pinned: " + c.text);
        Q k = e.terms[piv];
        e.terms.erase(piv);
        LinExpr ex = e * (Q(-1) / k);
        for (auto& [s, prev] : solved) {
            auto it = prev.terms.find(piv);
            if (it == prev.terms.end()) continue;
            Q kk = it->second;
            prev.terms.erase(it);
            prev = prev + ex * kk;
        }
        solved.push_back({piv, ex});
        dependent.insert(piv);
    }
    std::uniform_int_distribution<int> num(1, 48), den(1, 6);
    for (int tries = 0; tries < max_tries; ++tries) {
        Assignment a = pinned;
        for (auto& s : m.symbols) {
            if (dependent.count(s) || a.count(s)) continue;
            Q v(num(rng), den(rng));
            v.canonicalize();
            a[s] = v;
        }
        for (auto& [s, ex] : solved) a[s] = ex.eval(a);
        bool ok = true;
        for (auto& c : m.constraints)
            if (!c.holds(a)) { ok = false; break; }
        if (ok) return a;
    }
    throw std::runtime_error("model " + m.name + ": could not sample an area assignment satisfying the constraints");
}

std::string instantiate_text(const std::string& text, const Assignment& a, const std::map<std::string, LinExpr>& params)
{
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text.compare(i, 3, "T^{") == 0) {
            std::size_t j = i + 3;
            int depth = 1;
            while (j < text.size() && depth) {
                if (text[j] == '{') depth++;
                if (text[j] == '}') depth--;
                ++j;
            }
            if (depth) throw std::invalid_argument("unbalanced braces in " + text);
            std::string inner = text.substr(i + 3, j - i - 4);
            Q v = LinExpr::parse(inner, &params).eval(a);
            out += "T^{" + to_string(v) + "}";
            i = j;
        } else {
            out.push_back(text[i++]);
        }
    }
    return out;
}

// ---- vectors -------------------------------------------------------------

Vec vec_add(const Vec& a, const Vec& b)
{
    Vec r = a;
    for (auto& [g, c] : b) {
        auto it = r.find(g);
        if (it == r.end()) r.emplace(g, c);
        else it->second += c;
    }
    return vec_clean(r);
}

Vec vec_scale(const Vec& a, const LaurentPoly& c)
{
    Vec r;
    for (auto& [g, k] : a) r.emplace(g, k * c);
    return vec_clean(r);
}

Vec vec_clean(const Vec& a)
{
    Vec r;
    for (auto& [g, c] : a)
        if (!c.is_zero()) r.emplace(g, c);
    return r;
}

bool vec_is_zero(const Vec& a)
{
    return std::all_of(a.begin(), a.end(), [](auto& kv) { return kv.second.is_zero(); });
}

std::string vec_str(const Vec& a)
{
    std::string out;
    for (auto& [g, c] : a) {
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")*" + g;
    }
    return out.empty() ? "0" : out;
}

Vec vec_substitute(const Vec& a, const MonomialMap& m)
{
    Vec r;
    for (auto& [g, c] : a) r.emplace(g, substitute(c, m));
    return vec_clean(r);
}

// ---- instance ------------------------------------------------------------

AInfInstance::AInfInstance(const Model& m, Assignment a) : model_(&m), assign_(std::move(a)), vars_(m.variables)
{
    for (auto& c : m.constraints)
        if (!c.holds(assign_)) throw std::invalid_argument("model " + m.name + ": assignment violates " + c.text);
    for (auto& e : m.entries) {
        Term t{e.inputs, e.output, poly(e.coeff), e.sign_unknown, false, e.open};
        if (e.spin_flip && m.nontrivial_spin) t.coeff = -t.coeff;
        terms_.push_back(std::move(t));
    }
    LaurentPoly one = LaurentPoly::constant(vars_, Series(1));
    for (auto& [obj, u] : m.units) {
        for (auto& g : m.generators) {
            if (g.src == obj) terms_.push_back({{u, g.name}, g.name, one, false, true, false});
            if (g.tgt == obj && g.name != u)
                terms_.push_back({{g.name, u}, g.name, koszul_sign(g.deg) > 0 ? one : -one, false, true, false});
        }
    }
    for (std::size_t i = 0; i < terms_.size(); ++i)
        by_first_[terms_[i].inputs.empty() ? std::string() : terms_[i].inputs.front()].push_back(i);
}

Q AInfInstance::value(const std::string& expr) const { return LinExpr::parse(expr, &model_->params).eval(assign_); }

LaurentPoly AInfInstance::poly(const std::string& tmpl) const
{
    return LaurentPoly::parse(vars_, instantiate_text(tmpl, assign_, model_->params));
}

Vec AInfInstance::element(const ElementSpec& spec) const
{
    Vec v;
    for (auto& [g, c] : spec) {
        model_->gen(g); // existence check
        v.emplace(g, poly(c));
    }
    return vec_clean(v);
}

Vec AInfInstance::deformation(const std::string& name) const
{
    auto it = model_->deformations.find(name);
    if (it == model_->deformations.end()) throw std::invalid_argument("model " + model_->name + ": no deformation " + name);
    Vec v = element(it->second);
    for (auto& [g, c] : v)
        if (model_->gen(g).deg % 2 == 0) throw std::invalid_argument("deformation " + name + " uses even generator " + g);
    return v;
}

Vec AInfInstance::named_element(const std::string& name) const
{
    auto it = model_->elements.find(name);
    if (it == model_->elements.end()) throw std::invalid_argument("model " + model_->name + ": no element " + name);
    return element(it->second);
}

namespace {

struct Matcher {
    const std::vector<std::string>& in;
    const std::vector<Vec>& bs;
    const std::vector<std::string>& xs;
    int max_ins;
    std::vector<LaurentPoly> found;

    void go(std::size_t pos, std::size_t k, int ins, const LaurentPoly& acc)
    {
        if (pos == in.size()) {
            if (k == xs.size()) {
                if (ins > max_ins) throw std::runtime_error("b-insertion bound exceeded");
                found.push_back(acc);
            }
            return;
        }
        // remaining entry slots must be able to host the remaining inputs
        if (in.size() - pos < xs.size() - k) return;
        if (k < xs.size() && in[pos] == xs[k]) go(pos + 1, k + 1, ins, acc);
        auto it = bs[k].find(in[pos]);
        if (it != bs[k].end()) go(pos + 1, k, ins + 1, acc * it->second);
    }
};

} // namespace

Vec AInfInstance::mk_basis(const std::vector<Vec>& bs, const std::vector<std::string>& xs) const
{
    if (bs.size() != xs.size() + 1) throw std::invalid_argument("mk: need one deformation per gap");
    for (auto& b : bs)
        for (auto& [g, c] : b)
            if (model_->gen(g).deg % 2 == 0) throw std::invalid_argument("mk: deformation uses even generator " + g);
    Vec out;
    for (auto& t : terms_) {
        if (t.inputs.size() < xs.size()) continue;
        Matcher mt{t.inputs, bs, xs, model_->max_insertions, {}};
        mt.go(0, 0, 0, t.coeff);
        for (auto& c : mt.found) {
            auto it = out.find(t.output);
            if (it == out.end()) out.emplace(t.output, c);
            else it->second += c;
        }
    }
    return vec_clean(out);
}

Vec AInfInstance::mk(const std::vector<Vec>& bs, const std::vector<Vec>& xs) const
{
    Vec out;
    std::vector<std::string> basis(xs.size());
    // expand multilinearly over the inputs
    std::function<void(std::size_t, const LaurentPoly&)> rec = [&](std::size_t i, const LaurentPoly& c) {
        if (i == xs.size()) {
            Vec r = mk_basis(bs, basis);
            out = vec_add(out, vec_scale(r, c));
            return;
        }
        for (auto& [g, k] : xs[i]) {
            basis[i] = g;
            rec(i + 1, c * k);
        }
    };
    rec(0, LaurentPoly::constant(vars_, Series(1)));
    return vec_clean(out);
}

AInfInstance::RelationReport AInfInstance::check_relations(std::size_t max_arity) const
{
    RelationReport rep;
    std::map<std::vector<std::string>, Vec> acc;
    std::map<std::string, std::vector<const Term*>> by_output;
    for (auto& t : terms_) by_output[t.output].push_back(&t);

    for (auto& outer : terms_) {
        int shift = 0;
        for (std::size_t j = 0; j < outer.inputs.size(); ++j) {
            auto it = by_output.find(outer.inputs[j]);
            if (it != by_output.end()) {
                for (auto* inner : it->second) {
                    std::vector<std::string> tup(outer.inputs.begin(), outer.inputs.begin() + j);
                    tup.insert(tup.end(), inner->inputs.begin(), inner->inputs.end());
                    tup.insert(tup.end(), outer.inputs.begin() + j + 1, outer.inputs.end());
                    if (tup.size() > max_arity) continue;
                    LaurentPoly c = outer.coeff * inner->coeff;
                    if (koszul_sign(shift) < 0) c = -c;
                    acc[tup] = vec_add(acc[tup], Vec{{outer.output, c}});
                }
            }
            shift += shifted(deg(outer.inputs[j]));
        }
    }

    std::set<std::vector<std::string>> open_blocks;
    for (auto& t : terms_)
        if (t.open || model_->gen(t.output).open) open_blocks.insert(t.inputs);
    auto skipped = [&](const std::vector<std::string>& tup) {
        for (auto& g : tup)
            if (model_->gen(g).incomplete) return true;
        for (std::size_t i = 0; i <= tup.size(); ++i)
            for (std::size_t j = i; j <= tup.size(); ++j)
                if (open_blocks.count(std::vector<std::string>(tup.begin() + i, tup.begin() + j))) return true;
        return false;
    };

    for (auto& [tup, v] : acc) {
        if (skipped(tup)) {
            rep.tuples_skipped++;
            continue;
        }
        rep.tuples_checked++;
        if (!vec_is_zero(v)) {
            std::string label = "(";
            for (std::size_t i = 0; i < tup.size(); ++i) label += (i ? "," : "") + tup[i];
            rep.failures.push_back(label + "): " + vec_str(v));
        }
    }
    return rep;
}

WeakMCResult weak_mc_check(const AInfInstance& inst, const std::string& object, const Vec& b)
{
    WeakMCResult r;
    auto uit = inst.model().units.find(object);
    if (uit == inst.model().units.end()) throw std::invalid_argument("object " + object + " has no unit");
    Vec m0 = inst.m0(b);
    r.potential = LaurentPoly(inst.vars());
    for (auto& [g, c] : m0) {
        if (g == uit->second) r.potential = c;
        else r.obstructions.push_back({g, c});
    }
    r.ok = r.obstructions.empty();
    return r;
}

std::string to_string(Status s)
{
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Undetermined: return "undetermined";
    }
    return "?";
}

} // namespace mg
