#include "mirrorglue/dgcat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mg {

namespace {

int parity(int d) { return ((d % 2) + 2) % 2; }

LaurentPoly constant(const std::vector<std::string>& vars, long c) { return LaurentPoly::constant(vars, Series(c)); }

// shifted degree of a homogeneous element; nullopt for zero
std::optional<int> shifted_deg(const AInfCategory& c, const Vec& v)
{
    for (auto& [g, x] : v)
        if (!x.is_zero()) return shifted(c.deg(g));
    return std::nullopt;
}

// sum of |a_i|'; nullopt when some input vanishes
std::optional<int> shifted_sum(const AInfCategory& c, const Inputs& a, std::size_t from, std::size_t to)
{
    int s = 0;
    for (std::size_t i = from; i < to; ++i) {
        auto d = shifted_deg(c, a[i]);
        if (!d) return std::nullopt;
        s += *d;
    }
    return s;
}

Objs slice(const Objs& o, std::size_t from, std::size_t to) { return Objs(o.begin() + from, o.begin() + to); }
Inputs slice(const Inputs& a, std::size_t from, std::size_t to) { return Inputs(a.begin() + from, a.begin() + to); }

// m2 of the dg category read with reversed directions
DgMor m2D(const DgMor& phi, const DgMor& psi, const std::vector<std::string>& vars)
{
    DgMor r = mor_compose(phi, psi);
    return phi.deg % 2 ? mor_scale(r, constant(vars, -1)) : r;
}

DgMor signed_mor(const DgMor& f, int exponent, const std::vector<std::string>& vars)
{
    return exponent % 2 ? mor_scale(f, constant(vars, -1)) : f;
}

Vec signed_vec(const Vec& v, int exponent, const std::vector<std::string>& vars)
{
    return exponent % 2 ? vec_scale(v, constant(vars, -1)) : v;
}

DgMor accumulate(DgMor acc, const DgMor& term)
{
    if (term.is_zero()) return acc;
    if (acc.is_zero()) {
        DgMor r = term;
        r.src = acc.src, r.tgt = acc.tgt;
        return r;
    }
    if (acc.deg != term.deg) throw std::logic_error("inhomogeneous sum of dg maps: " + acc.str() + " + " + term.str());
    return mor_add(acc, term);
}

// every way to insert one m into a: (i, j) with a2 = a[i..j)
template <class F> void for_each_insertion(const AInfCategory& c, const Objs& objs, const Inputs& a, F&& f)
{
    std::size_t k = a.size();
    for (std::size_t i = 0; i <= k; ++i)
        for (std::size_t j = i; j <= k; ++j) {
            Vec inner = c.m(slice(objs, i, j + 1), slice(a, i, j));
            if (vec_is_zero(inner)) continue;
            Inputs b = slice(a, 0, i);
            b.push_back(inner);
            for (std::size_t l = j; l < k; ++l) b.push_back(a[l]);
            Objs o = slice(objs, 0, i + 1);
            for (std::size_t l = j; l <= k; ++l) o.push_back(objs[l]);
            f(i, o, b);
        }
}

} // namespace

// ---------------------------------------------------------------- model category

ModelCategory::ModelCategory(const AInfInstance& inst, std::map<std::string, Obj> objects)
    : inst_(&inst), objects_(std::move(objects))
{
    for (auto& [n, o] : objects_)
        if (std::find(inst.model().objects.begin(), inst.model().objects.end(), o.model_object) ==
            inst.model().objects.end())
            throw std::invalid_argument(n + ": no model object " + o.model_object);
}

const ModelCategory::Obj& ModelCategory::object(const std::string& x) const
{
    auto it = objects_.find(x);
    if (it == objects_.end()) throw std::out_of_range("no object " + x);
    return it->second;
}

std::vector<std::string> ModelCategory::objects() const
{
    std::vector<std::string> r;
    for (auto& [n, o] : objects_) r.push_back(n);
    return r;
}

std::vector<std::string> ModelCategory::basis(const std::string& x, const std::string& y) const
{
    std::vector<std::string> r;
    for (auto& g : inst_->model().generators)
        if (g.src == object(x).model_object && g.tgt == object(y).model_object) r.push_back(g.name);
    return r;
}

Vec ModelCategory::m(const Objs& objs, const Inputs& a) const
{
    if (objs.size() != a.size() + 1) throw std::invalid_argument("m: need one more object than inputs");
    std::vector<Vec> bs;
    for (auto& o : objs) bs.push_back(object(o).b);
    return inst_->mk(bs, a);
}

LaurentPoly ModelCategory::potential(const std::string& x) const
{
    auto it = potentials_.find(x);
    if (it != potentials_.end()) return it->second;
    auto r = weak_mc_check(*inst_, object(x).model_object, object(x).b);
    if (!r.ok) throw std::runtime_error(x + " is not weakly unobstructed");
    return potentials_[x] = r.potential;
}

Vec ModelCategory::unit(const std::string& x) const
{
    return Vec{{inst_->model().units.at(object(x).model_object), constant(vars(), 1)}};
}

// ---------------------------------------------------------------- a dg piece as an A-infinity category

namespace {

std::pair<std::string, std::string> split_at(const std::string& s, char c)
{
    auto p = s.find(c);
    if (p == std::string::npos) throw std::invalid_argument("malformed basis name " + s);
    return {s.substr(0, p), s.substr(p + 1)};
}

} // namespace

std::vector<std::string> DgCategoryView::basis(const std::string& x, const std::string& y) const
{
    std::vector<std::string> r;
    for (auto& g : p_->object(y).generators())
        for (auto& h : p_->object(x).generators()) r.push_back(g + "@" + y + ">" + h + "@" + x);
    return r;
}

int DgCategoryView::deg(const std::string& name) const
{
    auto [from, to] = split_at(name, '>');
    auto [g, y] = split_at(from, '@');
    auto [h, x] = split_at(to, '@');
    return parity(p_->object(y).is_odd(g) + p_->object(x).is_odd(h));
}

DgMor DgCategoryView::to_mor(const std::string& x, const std::string& y, const Vec& v) const
{
    DgMor f{y, x, 0, {}};
    bool first = true;
    for (auto& [name, c] : v) {
        if (c.is_zero()) continue;
        auto [from, to] = split_at(name, '>');
        auto [g, yy] = split_at(from, '@');
        auto [h, xx] = split_at(to, '@');
        if (yy != y || xx != x) throw std::invalid_argument(name + " is not in Hom(" + x + ", " + y + ")");
        if (first) f.deg = deg(name), first = false;
        f.map[g] = vec_add(f.map[g], Vec{{h, c}});
    }
    return f;
}

Vec DgCategoryView::from_mor(const DgMor& f) const
{
    Vec r;
    for (auto& [g, img] : f.map)
        for (auto& [h, c] : img)
            if (!c.is_zero()) r[g + "@" + f.src + ">" + h + "@" + f.tgt] = c;
    return r;
}

Vec DgCategoryView::m(const Objs& objs, const Inputs& a) const
{
    if (objs.size() != a.size() + 1) throw std::invalid_argument("m: need one more object than inputs");
    DgAInf ainf(*p_);
    if (a.size() == 1) return from_mor(ainf.m1(to_mor(objs[0], objs[1], a[0])));
    if (a.size() == 2) return from_mor(ainf.m2(to_mor(objs[0], objs[1], a[0]), to_mor(objs[1], objs[2], a[1])));
    return {};
}

Vec DgCategoryView::unit(const std::string& x) const { return from_mor(p_->identity(x)); }

// ---------------------------------------------------------------- Yoneda

MatrixFactorization YonedaFunctor::object(const std::string& c) const
{
    MatrixFactorization mf;
    mf.name = name() + "(" + c + ")";
    mf.vars = c_->vars();
    mf.W = c_->potential(t_) - c_->potential(c);
    mf.exact = mf.W.t_free();
    for (auto& g : c_->basis(c, t_)) {
        (c_->deg(g) % 2 ? mf.odd : mf.even).push_back(g);
        Vec d = c_->m({c, t_}, {Vec{{g, constant(mf.vars, 1)}}});
        mf.delta[g] = vec_clean(vec_scale(d, constant(mf.vars, -1)));
    }
    return mf;
}

DgMor YonedaFunctor::map(const Objs& objs, const Inputs& a) const
{
    if (a.empty() || objs.size() != a.size() + 1) throw std::invalid_argument("Yoneda map needs arity >= 1");
    const auto& C0 = objs.front();
    const auto& Ck = objs.back();
    DgMor r{name() + "(" + Ck + ")", name() + "(" + C0 + ")", 0, {}};
    auto s = shifted_sum(*c_, a, 0, a.size());
    if (!s) return r;
    r.deg = parity(*s + 1);
    Objs o = objs;
    o.push_back(t_);
    for (auto& g : c_->basis(Ck, t_)) {
        Inputs in = a;
        in.push_back(Vec{{g, constant(c_->vars(), 1)}});
        Vec img = vec_clean(c_->m(o, in));
        if (!img.empty()) r.map[g] = img;
    }
    return r;
}

// ---------------------------------------------------------------- pre-natural transformations

namespace {

DgMor zero_component(const PreNat& n, const Objs& objs)
{
    return DgMor{n.to->name() + "(" + objs.back() + ")", n.from->name() + "(" + objs.front() + ")", 0, {}};
}

} // namespace

PreNat nat_identity(const DgValuedFunctor& f)
{
    PreNat n{"id", &f, &f, 0, {}};
    const DgValuedFunctor* fp = &f;
    n.at = [fp](const Objs& objs, const Inputs& a) {
        if (a.empty()) return mor_identity(fp->object(objs.front()));
        return DgMor{fp->name() + "(" + objs.back() + ")", fp->name() + "(" + objs.front() + ")", 0, {}};
    };
    return n;
}

PreNat nat_zero(const DgValuedFunctor& f1, const DgValuedFunctor& f2, int norm)
{
    PreNat n{"0", &f1, &f2, norm, {}};
    n.at = [n](const Objs& objs, const Inputs&) { return zero_component(n, objs); };
    return n;
}

PreNat nat_M1(const AInfCategory& c, const PreNat& n)
{
    PreNat r{"M1(" + n.name + ")", n.from, n.to, n.norm + 1, {}};
    const AInfCategory* cp = &c;
    r.at = [cp, n, r](const Objs& objs, const Inputs& a) {
        const auto& vars = cp->vars();
        std::size_t k = a.size();
        DgMor acc = zero_component(r, objs);
        auto s = shifted_sum(*cp, a, 0, k);
        if (!s) return acc;
        acc.deg = parity(r.norm + *s);
        int np = n.norm - 1; // ||N||'
        acc = accumulate(acc, mor_d(n.at(objs, a), n.to->object(objs.back()), n.from->object(objs.front())));
        for (std::size_t i = 1; i <= k; ++i) {
            int a1 = *shifted_sum(*cp, a, 0, i);
            DgMor t = m2D(n.from->map(slice(objs, 0, i + 1), slice(a, 0, i)), n.at(slice(objs, i, k + 1), slice(a, i, k)),
                          vars);
            acc = accumulate(acc, signed_mor(t, parity(np * a1), vars));
        }
        for (std::size_t i = 0; i < k; ++i) {
            DgMor t = m2D(n.at(slice(objs, 0, i + 1), slice(a, 0, i)), n.to->map(slice(objs, i, k + 1), slice(a, i, k)),
                          vars);
            acc = accumulate(acc, t);
        }
        for_each_insertion(*cp, objs, a, [&](std::size_t i, const Objs& o, const Inputs& b) {
            int a1 = *shifted_sum(*cp, a, 0, i);
            acc = accumulate(acc, signed_mor(n.at(o, b), 1 + parity(np + a1), vars));
        });
        return acc;
    };
    return r;
}

PreNat nat_M2(const PreNat& n1, const PreNat& n2)
{
    if (n1.to != n2.from) throw std::invalid_argument("M2: " + n1.name + " and " + n2.name + " are not composable");
    PreNat r{"M2(" + n1.name + ", " + n2.name + ")", n1.from, n2.to, n1.norm + n2.norm, {}};
    r.at = [n1, n2, r](const Objs& objs, const Inputs& a) {
        std::size_t k = a.size();
        DgMor acc = zero_component(r, objs);
        std::vector<std::string> vars;
        for (std::size_t i = 0; i <= k; ++i) {
            DgMor x = n1.at(slice(objs, 0, i + 1), slice(a, 0, i));
            DgMor y = n2.at(slice(objs, i, k + 1), slice(a, i, k));
            if (x.is_zero() || y.is_zero()) continue;
            for (auto& [g, v] : x.map)
                for (auto& [h, p] : v)
                    if (vars.empty()) vars = p.vars();
            // |a1|' read off the degree of N1(a1) = ||N1|| + |a1|'
            int a1 = parity(x.deg - n1.norm);
            acc = accumulate(acc, signed_mor(m2D(x, y, vars), parity((n2.norm - 1) * a1), vars));
        }
        return acc;
    };
    return r;
}

PreNat nat_sub(const PreNat& a, const PreNat& b)
{
    PreNat r{a.name + " - " + b.name, a.from, a.to, a.norm, {}};
    r.at = [a, b, r](const Objs& objs, const Inputs& in) {
        DgMor x = a.at(objs, in), y = b.at(objs, in);
        if (y.is_zero()) return x;
        if (x.is_zero()) {
            DgMor z = zero_component(r, objs);
            z.deg = y.deg;
            return mor_sub(z, y);
        }
        return mor_sub(x, y);
    };
    return r;
}

PreNat nat_sign(const PreNat& a, int s)
{
    PreNat r = a;
    r.name = (s < 0 ? "-" : "") + a.name;
    r.at = [a, s](const Objs& objs, const Inputs& in) {
        DgMor x = a.at(objs, in);
        if (s > 0 || x.is_zero()) return x;
        std::vector<std::string> vars;
        for (auto& [g, v] : x.map)
            for (auto& [h, p] : v)
                if (vars.empty()) vars = p.vars();
        return mor_scale(x, constant(vars, -1));
    };
    return r;
}

// ---------------------------------------------------------------- tuples and checks

Inputs Tuple::inputs(const std::vector<std::string>& vars) const
{
    Inputs r;
    for (auto& g : gens) r.push_back(Vec{{g, constant(vars, 1)}});
    return r;
}

std::string Tuple::str() const
{
    std::string s = "[" + objs.front();
    for (std::size_t i = 0; i < gens.size(); ++i) s += " -" + gens[i] + "-> " + objs[i + 1];
    return s + "]";
}

std::vector<Tuple> composable_tuples(const AInfCategory& c, int arity, const std::vector<std::string>& objects)
{
    auto objs = objects.empty() ? c.objects() : objects;
    std::vector<Tuple> out, layer;
    for (auto& o : objs) layer.push_back(Tuple{{o}, {}});
    for (int k = 0; k <= arity; ++k) {
        out.insert(out.end(), layer.begin(), layer.end());
        if (k == arity) break;
        std::vector<Tuple> next;
        for (auto& t : layer)
            for (auto& o : objs)
                for (auto& g : c.basis(t.objs.back(), o)) {
                    Tuple u = t;
                    u.objs.push_back(o);
                    u.gens.push_back(g);
                    next.push_back(std::move(u));
                }
        layer = std::move(next);
    }
    return out;
}

NatCheck nat_equal(const std::string& name, const AInfCategory& c, const PreNat& a, const PreNat& b, int arity,
                   const std::vector<std::string>& objects)
{
    return nat_vanishes(name, c, nat_sub(a, b), arity, objects);
}

NatCheck nat_vanishes(const std::string& name, const AInfCategory& c, const PreNat& a, int arity,
                      const std::vector<std::string>& objects)
{
    NatCheck r{name, 0, {}};
    for (auto& t : composable_tuples(c, arity, objects)) {
        ++r.tuples;
        DgMor x = a.at(t.objs, t.inputs(c.vars()));
        if (!x.is_zero()) r.residuals.push_back(t.str() + ": " + x.str());
    }
    return r;
}

NatCheck functor_equation(const AInfCategory& c, const DgValuedFunctor& f, int arity,
                          const std::vector<std::string>& objects)
{
    NatCheck r{f.name() + " functor equation", 0, {}};
    const auto& vars = c.vars();
    for (auto& t : composable_tuples(c, arity, objects)) {
        std::size_t k = t.gens.size();
        if (k == 0) continue;
        ++r.tuples;
        Inputs a = t.inputs(vars);
        DgMor fa = f.map(t.objs, a);
        DgMor acc = mor_d(fa, f.object(t.objs.back()), f.object(t.objs.front()));
        acc.deg = parity(fa.deg + 1);
        for (std::size_t i = 1; i < k; ++i)
            acc = accumulate(acc, m2D(f.map(slice(t.objs, 0, i + 1), slice(a, 0, i)),
                                      f.map(slice(t.objs, i, k + 1), slice(a, i, k)), vars));
        for_each_insertion(c, t.objs, a, [&](std::size_t i, const Objs& o, const Inputs& b) {
            int a1 = *shifted_sum(c, a, 0, i);
            acc = accumulate(acc, signed_mor(f.map(o, b), 1 + a1, vars));
        });
        if (!acc.is_zero()) r.residuals.push_back(t.str() + ": " + acc.str());
    }
    return r;
}

// ---------------------------------------------------------------- natural transformations between Yoneda functors

PreNat yoneda_nat(const AInfCategory& c, const YonedaFunctor& y0, const YonedaFunctor& y1, const Vec& beta)
{
    PreNat n{"N(" + y0.target() + "," + y1.target() + ")", &y0, &y1, 0, {}};
    const AInfCategory* cp = &c;
    std::string t0 = y0.target(), t1 = y1.target();
    n.at = [cp, n, t0, t1, beta](const Objs& objs, const Inputs& a) {
        DgMor r = zero_component(n, objs);
        auto s = shifted_sum(*cp, a, 0, a.size());
        if (!s) return r;
        r.deg = parity(*s);
        Objs o = objs;
        o.push_back(t1);
        o.push_back(t0);
        for (auto& g : cp->basis(objs.back(), t1)) {
            Inputs in = a;
            in.push_back(Vec{{g, constant(cp->vars(), 1)}});
            in.push_back(beta);
            Vec img = vec_clean(signed_vec(cp->m(o, in), *s + cp->deg(g), cp->vars()));
            if (!img.empty()) r.map[g] = img;
        }
        return r;
    };
    return n;
}

PreNat yoneda_homotopy(const AInfCategory& c, const YonedaFunctor& y0, const std::string& t1, const Vec& alpha,
                       const Vec& beta, const Vec& h)
{
    PreNat n{"H", &y0, &y0, 1, {}};
    const AInfCategory* cp = &c;
    std::string t0 = y0.target();
    n.at = [cp, n, t0, t1, alpha, beta, h](const Objs& objs, const Inputs& a) {
        DgMor r = zero_component(n, objs);
        auto s = shifted_sum(*cp, a, 0, a.size());
        if (!s) return r;
        r.deg = parity(1 + *s);
        const auto& vars = cp->vars();
        Objs o3 = objs, o2 = objs;
        o3.insert(o3.end(), {t0, t1, t0});
        o2.insert(o2.end(), {t0, t0});
        for (auto& g : cp->basis(objs.back(), t0)) {
            Vec x{{g, constant(vars, 1)}};
            Inputs in3 = a, in2 = a;
            in3.insert(in3.end(), {x, alpha, beta});
            in2.insert(in2.end(), {x, h});
            Vec img = vec_clean(vec_add(cp->m(o3, in3), h.empty() ? Vec{} : vec_scale(cp->m(o2, in2), constant(vars, -1))));
            if (!img.empty()) r.map[g] = img;
        }
        return r;
    };
    return n;
}

namespace {

LaurentPoly unit_coefficient(const AInfCategory& c, const std::string& t, const Vec& v)
{
    auto u = c.unit(t);
    auto it = v.find(u.begin()->first);
    return it == v.end() ? LaurentPoly(c.vars()) : it->second;
}

NatCheck element_check(const std::string& name, const Vec& residual)
{
    NatCheck r{name, 1, {}};
    if (!vec_is_zero(residual)) r.residuals.push_back(vec_str(vec_clean(residual)));
    return r;
}

} // namespace

bool YonedaReport::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](auto& c) { return c.ok(); });
}

std::string YonedaReport::str() const
{
    std::ostringstream os;
    os << "m2(alpha, beta) unit coefficient: " << unit_left.str() << "\n";
    os << "m2(beta, alpha) unit coefficient: " << unit_right.str() << "\n";
    for (auto& c : checks) {
        os << (c.ok() ? "PASS " : "FAIL ") << c.name << " (" << c.tuples << " tuples)\n";
        for (std::size_t i = 0; i < std::min<std::size_t>(c.residuals.size(), 5); ++i) os << "  " << c.residuals[i] << "\n";
        if (c.residuals.size() > 5) os << "  ... " << c.residuals.size() - 5 << " more\n";
    }
    return os.str();
}

YonedaReport yoneda_equivalence_check(const AInfCategory& c, const std::string& t0, const std::string& t1,
                                      const Vec& alpha, const Vec& beta, const Vec& x, const Vec& xp, int arity,
                                      const std::vector<std::string>& test_objects)
{
    YonedaReport rep;
    const auto& vars = c.vars();
    Vec ab = vec_clean(c.m({t0, t1, t0}, {alpha, beta}));
    Vec ba = vec_clean(c.m({t1, t0, t1}, {beta, alpha}));
    auto primitive = [&](const std::string& t, const Vec& h) { return h.empty() ? Vec{} : c.m({t, t}, {h}); };
    // read c off m2(alpha, beta) - m1(x): m1(x) may itself have components along the unit
    Vec ab0 = vec_add(ab, vec_scale(primitive(t0, x), constant(vars, -1)));
    Vec ba0 = vec_add(ba, vec_scale(primitive(t1, xp), constant(vars, -1)));
    rep.unit_left = unit_coefficient(c, t0, ab0);
    rep.unit_right = unit_coefficient(c, t1, ba0);
    Vec rl = vec_add(ab0, vec_scale(c.unit(t0), -rep.unit_left));
    Vec rr = vec_add(ba0, vec_scale(c.unit(t1), -rep.unit_right));
    rep.checks.push_back(element_check("m2(alpha, beta) = c 1 + m1(x)", rl));
    rep.checks.push_back(element_check("m2(beta, alpha) = c' 1 + m1(x')", rr));
    if (!rep.unit_left.is_monomial() || !rep.unit_right.is_monomial()) {
        rep.checks.push_back(NatCheck{"unit coefficients invertible", 1, {"not a monomial"}});
        return rep;
    }

    LaurentPoly cinv = rep.unit_left.pow(-1), cpinv = rep.unit_right.pow(-1);
    Vec alpha_n = vec_scale(alpha, cinv), x_n = vec_scale(x, cinv);
    Vec beta_n = vec_scale(beta, cpinv), xp_n = vec_scale(xp, cpinv);

    YonedaFunctor y0(c, t0), y1(c, t1);
    PreNat n01 = yoneda_nat(c, y0, y1, beta), n10 = yoneda_nat(c, y1, y0, alpha);
    rep.checks.push_back(nat_vanishes("M1(N01) = 0", c, nat_M1(c, n01), arity, test_objects));
    rep.checks.push_back(nat_vanishes("M1(N10) = 0", c, nat_M1(c, n10), arity, test_objects));

    PreNat left = nat_sub(nat_M2(n01, yoneda_nat(c, y1, y0, alpha_n)), nat_identity(y0));
    PreNat h = yoneda_homotopy(c, y0, t1, alpha_n, beta, x_n);
    rep.checks.push_back(nat_equal("M2(N01, N10) - id = M1(H)", c, left, nat_M1(c, h), arity, test_objects));

    PreNat right = nat_sub(nat_M2(n10, yoneda_nat(c, y0, y1, beta_n)), nat_identity(y1));
    PreNat hp = yoneda_homotopy(c, y1, t0, beta_n, alpha, xp_n);
    rep.checks.push_back(nat_equal("M2(N10, N01) - id = M1(H')", c, right, nat_M1(c, hp), arity, test_objects));
    return rep;
}

// ---------------------------------------------------------------- global functor

bool GlobalFunctorReport::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](auto& c) { return c.ok(); });
}

std::string GlobalFunctorReport::str() const
{
    std::ostringstream os;
    for (auto& o : objects) {
        auto it = connecting.find(o);
        os << "object " << o << ": N01 = " << (it == connecting.end() ? "?" : it->second.str()) << "\n";
    }
    for (auto& c : checks) {
        os << (c.ok() ? "PASS " : "FAIL ") << c.name << " (" << c.tuples << " tuples)\n";
        for (std::size_t i = 0; i < std::min<std::size_t>(c.residuals.size(), 5); ++i) os << "  " << c.residuals[i] << "\n";
        if (c.residuals.size() > 5) os << "  ... " << c.residuals.size() - 5 << " more\n";
    }
    return os.str();
}

GlobalFunctorReport global_functor(const AInfCategory& c, const std::string& t0, const std::string& t1,
                                   const Vec& alpha, const Vec& beta, const std::vector<std::string>& test_objects,
                                   int arity)
{
    GlobalFunctorReport rep;
    rep.objects = test_objects.empty() ? c.objects() : test_objects;
    const auto& vars = c.vars();
    YonedaFunctor y0(c, t0), y1(c, t1);
    PreNat n = yoneda_nat(c, y0, y1, beta);
    for (auto& o : rep.objects) rep.connecting[o] = n.at({o}, {});

    rep.checks.push_back(functor_equation(c, y0, arity, rep.objects));
    rep.checks.push_back(functor_equation(c, y1, arity, rep.objects));

    // third component of the functor equation into the fiber product, with mu <-> Y^{T1} and nu <-> Y^{T0}:
    // -d N(a) - sum m2(N(a1), Y1(a2)) + sum (-1)^{|Y0(a1)|} m2(Y0(a1), N(a2)) - sum (-1)^{|a1|'} N(a1, m(a2), a3)
    NatCheck third{"fiber-product component of the functor equation", 0, {}};
    for (auto& t : composable_tuples(c, arity, rep.objects)) {
        ++third.tuples;
        std::size_t k = t.gens.size();
        Inputs a = t.inputs(vars);
        DgMor na = n.at(t.objs, a);
        DgMor acc = mor_scale(mor_d(na, y1.object(t.objs.back()), y0.object(t.objs.front())), constant(vars, -1));
        acc.deg = parity(na.deg + 1);
        for (std::size_t i = 0; i < k; ++i) {
            DgMor nl = n.at(slice(t.objs, 0, i + 1), slice(a, 0, i));
            DgMor yr = y1.map(slice(t.objs, i, k + 1), slice(a, i, k));
            acc = accumulate(acc, signed_mor(m2D(nl, yr, vars), 1, vars));
        }
        for (std::size_t i = 1; i <= k; ++i) {
            DgMor yl = y0.map(slice(t.objs, 0, i + 1), slice(a, 0, i));
            DgMor nr = n.at(slice(t.objs, i, k + 1), slice(a, i, k));
            acc = accumulate(acc, signed_mor(m2D(yl, nr, vars), yl.deg, vars));
        }
        for_each_insertion(c, t.objs, a, [&](std::size_t i, const Objs& o, const Inputs& b) {
            int a1 = *shifted_sum(c, a, 0, i);
            acc = accumulate(acc, signed_mor(n.at(o, b), 1 + a1, vars));
        });
        if (!acc.is_zero()) third.residuals.push_back(t.str() + ": " + acc.str());
    }
    rep.checks.push_back(third);

    // the connecting maps are homotopy invertible: the arity-0 part of the Yoneda comparison
    auto y = yoneda_equivalence_check(c, t0, t1, alpha, beta, {}, {}, 0, rep.objects);
    for (auto& ch : y.checks) {
        ch.name = "connecting map: " + ch.name;
        rep.checks.push_back(ch);
    }
    return rep;
}

} // namespace mg
