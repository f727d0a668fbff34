#include "mirrorglue/dgcat.hpp"

#include <algorithm>
#include <stdexcept>

namespace mg {

namespace {

LaurentPoly one(const std::vector<std::string>& vars) { return LaurentPoly::constant(vars, Series(1)); }

int parity(int d) { return ((d % 2) + 2) % 2; }

std::vector<std::string> vars_of(const DgMor& f)
{
    for (auto& [g, v] : f.map)
        for (auto& [h, c] : v) return c.vars();
    return {};
}

} // namespace

// ---------------------------------------------------------------- DgMor

Vec DgMor::apply(const Vec& v) const
{
    Vec out;
    for (auto& [g, c] : v) {
        auto it = map.find(g);
        if (it == map.end()) continue;
        out = vec_add(out, vec_scale(it->second, c));
    }
    return vec_clean(out);
}

bool DgMor::is_zero() const
{
    return std::all_of(map.begin(), map.end(), [](auto& kv) { return vec_is_zero(kv.second); });
}

std::string DgMor::str() const
{
    std::string s;
    for (auto& [g, v] : map) {
        if (vec_is_zero(v)) continue;
        if (!s.empty()) s += ", ";
        s += g + " -> " + vec_str(v);
    }
    return s.empty() ? "0" : s;
}

DgMor mor_zero(const std::string& src, const std::string& tgt, int deg) { return DgMor{src, tgt, parity(deg), {}}; }

DgMor mor_identity(const MatrixFactorization& x)
{
    DgMor f{x.name, x.name, 0, {}};
    for (auto& g : x.generators()) f.map[g] = Vec{{g, one(x.vars)}};
    return f;
}

DgMor mor_add(const DgMor& a, const DgMor& b)
{
    if (a.is_zero()) return DgMor{b.src, b.tgt, b.deg, b.map};
    if (b.is_zero()) return a;
    if (a.deg != b.deg) throw std::invalid_argument("adding maps of different parity");
    DgMor r = a;
    for (auto& [g, v] : b.map) r.map[g] = vec_clean(vec_add(r.map[g], v));
    return r;
}

DgMor mor_scale(const DgMor& a, const LaurentPoly& c)
{
    DgMor r = a;
    for (auto& [g, v] : r.map) v = vec_clean(vec_scale(v, c));
    return r;
}

DgMor mor_sub(const DgMor& a, const DgMor& b)
{
    auto v = vars_of(b);
    if (v.empty()) return a;
    return mor_add(a, mor_scale(b, -one(v)));
}

DgMor mor_compose(const DgMor& f, const DgMor& g)
{
    if (!f.src.empty() && !g.tgt.empty() && f.src != g.tgt)
        throw std::invalid_argument("cannot compose " + f.src + " -> " + f.tgt + " after " + g.src + " -> " + g.tgt);
    DgMor r{g.src, f.tgt, parity(f.deg + g.deg), {}};
    for (auto& [s, v] : g.map) {
        Vec img = f.apply(v);
        if (!img.empty()) r.map[s] = img;
    }
    return r;
}

bool mor_equal(const DgMor& a, const DgMor& b)
{
    std::set<std::string> keys;
    for (auto& [g, v] : a.map) keys.insert(g);
    for (auto& [g, v] : b.map) keys.insert(g);
    for (auto& g : keys) {
        auto ia = a.map.find(g), ib = b.map.find(g);
        Vec va = ia == a.map.end() ? Vec{} : vec_clean(ia->second);
        Vec vb = ib == b.map.end() ? Vec{} : vec_clean(ib->second);
        if (!(va == vb)) return false;
    }
    return true;
}

DgMor mor_d(const DgMor& f, const MatrixFactorization& src, const MatrixFactorization& tgt)
{
    DgMor r{src.name, tgt.name, parity(f.deg + 1), {}};
    LaurentPoly s = LaurentPoly::constant(src.vars, Series(f.deg % 2 ? -1 : 1));
    for (auto& g : src.generators()) {
        Vec unit{{g, one(src.vars)}};
        Vec a = f.apply(unit);
        Vec img = a.empty() ? Vec{} : tgt.apply(a);
        auto it = src.delta.find(g);
        if (it != src.delta.end()) img = vec_add(img, vec_scale(f.apply(it->second), -s));
        img = vec_clean(img);
        if (!img.empty()) r.map[g] = img;
    }
    return r;
}

DgMor mor_substitute(const DgMor& f, const MonomialMap& m)
{
    DgMor r = f;
    for (auto& [g, v] : r.map) v = vec_clean(vec_substitute(v, m));
    return r;
}

// ---------------------------------------------------------------- DgPiece

DgPiece::DgPiece(std::vector<std::string> vars, LaurentPoly W, std::vector<std::string> units)
    : vars_(std::move(vars)), units_(std::move(units)), W_(std::move(W))
{
    for (auto& u : units_)
        if (std::find(vars_.begin(), vars_.end(), u) == vars_.end())
            throw std::invalid_argument("unit " + u + " is not a chart variable");
}

void DgPiece::add_object(const std::string& name, MatrixFactorization mf)
{
    mf.name = name;
    if (mf.vars != vars_) throw std::invalid_argument(name + ": variables differ from the piece");
    if (!(mf.W == W_)) throw std::invalid_argument(name + " factorizes " + mf.W.str() + ", not " + W_.str());
    if (!check_mf(mf).ok) throw std::invalid_argument(name + ": delta^2 != W Id");
    objects_[name] = std::move(mf);
}

const MatrixFactorization& DgPiece::object(const std::string& name) const
{
    auto it = objects_.find(name);
    if (it == objects_.end()) throw std::out_of_range("no object " + name);
    return it->second;
}

std::vector<std::string> DgPiece::objects() const
{
    std::vector<std::string> r;
    for (auto& [n, o] : objects_) r.push_back(n);
    return r;
}

DgMor DgPiece::d(const DgMor& f) const { return mor_d(f, object(f.src), object(f.tgt)); }

DgMor DgPiece::compose(const DgMor& f, const DgMor& g) const
{
    if (f.src != g.tgt) throw std::invalid_argument("endpoints do not match: " + g.tgt + " vs " + f.src);
    return mor_compose(f, g);
}

std::vector<DgMor> DgPiece::basis(const std::string& x, const std::string& y, int deg) const
{
    const auto& X = object(x);
    const auto& Y = object(y);
    std::vector<DgMor> r;
    for (auto& g : X.generators())
        for (auto& h : Y.generators())
            if (parity(X.is_odd(g) + Y.is_odd(h)) == parity(deg))
                r.push_back(DgMor{x, y, parity(deg), {{g, Vec{{h, one(vars_)}}}}});
    return r;
}

DgMor DgPiece::random(const std::string& x, const std::string& y, int deg, std::mt19937_64& rng, int max_terms) const
{
    auto b = basis(x, y, deg);
    DgMor r = mor_zero(x, y, deg);
    if (b.empty()) return r;
    std::uniform_int_distribution<int> nterms(1, max_terms), pick(0, static_cast<int>(b.size()) - 1), coef(-3, 3),
        ex(0, 2), uex(-1, 2), tq(0, 3);
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Exps e(vars_.size());
        for (std::size_t k = 0; k < vars_.size(); ++k) {
            bool unit = std::find(units_.begin(), units_.end(), vars_[k]) != units_.end();
            e[k] = unit ? uex(rng) : ex(rng);
        }
        int c = coef(rng);
        if (c == 0) c = 1;
        LaurentPoly m = LaurentPoly::monomial(vars_, e, Series::monomial(Q(tq(rng)) / 2, Scalar(c)));
        r = mor_add(r, mor_scale(b[pick(rng)], m));
    }
    return r;
}

std::optional<DgMor> DgPiece::strict_inverse(const DgMor& f) const
{
    if (f.deg != 0) return std::nullopt;
    const auto& X = object(f.src);
    const auto& Y = object(f.tgt);
    auto gx = X.generators(), gy = Y.generators();
    if (gx.size() != gy.size()) return std::nullopt;
    std::size_t n = gx.size();
    // rows: target generators, columns: source generators; augmented with the identity on Y
    std::vector<std::vector<LaurentPoly>> a(n, std::vector<LaurentPoly>(2 * n, LaurentPoly(vars_)));
    for (std::size_t j = 0; j < n; ++j) {
        Vec img = f.apply(Vec{{gx[j], one(vars_)}});
        for (std::size_t i = 0; i < n; ++i) {
            auto it = img.find(gy[i]);
            if (it != img.end()) a[i][j] = it->second;
        }
        a[j][n + j] = one(vars_);
    }
    auto unit_inverse = [&](const LaurentPoly& p) -> std::optional<LaurentPoly> {
        if (!p.is_monomial()) return std::nullopt;
        auto& [e, c] = *p.terms().begin();
        if (!c.is_monomial()) return std::nullopt;
        Exps inv(e.size());
        for (std::size_t k = 0; k < e.size(); ++k) {
            bool unit = std::find(units_.begin(), units_.end(), vars_[k]) != units_.end();
            if (e[k] != 0 && !unit) return std::nullopt;
            inv[k] = -e[k];
        }
        return LaurentPoly::monomial(vars_, inv, c.inverse());
    };
    for (std::size_t col = 0; col < n; ++col) {
        std::optional<LaurentPoly> pinv;
        std::size_t piv = col;
        for (; piv < n; ++piv)
            if ((pinv = unit_inverse(a[piv][col]))) break;
        if (!pinv) return std::nullopt;
        std::swap(a[piv], a[col]);
        for (auto& e : a[col]) e = e * *pinv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            LaurentPoly k = a[i][col];
            for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= k * a[col][j];
        }
    }
    // the left block is now the identity, so the right block sends gy[j] to sum_i a[i][n+j] gx[i]
    DgMor inv{f.tgt, f.src, 0, {}};
    for (std::size_t j = 0; j < n; ++j) {
        Vec img;
        for (std::size_t i = 0; i < n; ++i)
            if (!a[i][n + j].is_zero()) img[gx[i]] = a[i][n + j];
        inv.map[gy[j]] = img;
    }
    if (!mor_equal(mor_compose(f, inv), mor_identity(Y)) || !mor_equal(mor_compose(inv, f), mor_identity(X)))
        return std::nullopt;
    return inv;
}

// ---------------------------------------------------------------- functors

MatrixFactorization DgFunctor::object(const MatrixFactorization& x) const
{
    MatrixFactorization r = x;
    r.name = name + "(" + x.name + ")";
    r.vars = change.target();
    r.W = substitute(x.W, change);
    for (auto& [g, v] : r.delta) v = vec_clean(vec_substitute(v, change));
    r.exact = r.W.t_free();
    return r;
}

DgMor DgFunctor::map(const DgMor& f) const
{
    DgMor r = mor_substitute(f, change);
    r.src = name + "(" + f.src + ")";
    r.tgt = name + "(" + f.tgt + ")";
    return r;
}

// ---------------------------------------------------------------- A-infinity structure of a piece

DgMor DgAInf::m2(const DgMor& phi, const DgMor& psi) const
{
    DgMor r = p_->compose(phi, psi);
    return phi.deg % 2 ? mor_scale(r, -one(p_->vars())) : r;
}

namespace {

void expect_zero(AxiomReport& rep, const std::string& what, const DgMor& r)
{
    ++rep.checked;
    if (!r.is_zero()) rep.failures.push_back(what + ": " + r.str());
}

template <class T> const T& pick(const std::vector<T>& v, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
    return v[d(rng)];
}

} // namespace

AxiomReport DgAInf::check(std::mt19937_64& rng, int samples) const
{
    AxiomReport rep;
    auto objs = p_->objects();
    std::uniform_int_distribution<int> bit(0, 1);
    LaurentPoly mone = -one(p_->vars());
    for (int s = 0; s < samples; ++s) {
        // a in Hom(X, Y), b in Hom(Y, Z), c in Hom(Z, U), i.e. dg maps Y -> X, Z -> Y, U -> Z
        auto X = pick(objs, rng), Y = pick(objs, rng), Z = pick(objs, rng), U = pick(objs, rng);
        DgMor a = p_->random(Y, X, bit(rng), rng), b = p_->random(Z, Y, bit(rng), rng),
              c = p_->random(U, Z, bit(rng), rng);
        auto sh = [&](const DgMor& f) { return shifted(f.deg) ? mone : one(p_->vars()); };
        expect_zero(rep, "m1 m1", m1(m1(a)));
        expect_zero(rep, "arity 2", mor_add(mor_add(m1(m2(a, b)), m2(m1(a), b)), mor_scale(m2(a, m1(b)), sh(a))));
        expect_zero(rep, "arity 3", mor_add(m2(m2(a, b), c), mor_scale(m2(a, m2(b, c)), sh(a))));
    }
    return rep;
}

AxiomReport check_dg_axioms(const DgPiece& p, std::mt19937_64& rng, int samples)
{
    AxiomReport rep;
    auto objs = p.objects();
    std::uniform_int_distribution<int> bit(0, 1);
    LaurentPoly mone = -one(p.vars());
    for (int s = 0; s < samples; ++s) {
        auto X = pick(objs, rng), Y = pick(objs, rng), Z = pick(objs, rng), U = pick(objs, rng);
        DgMor f = p.random(X, Y, bit(rng), rng), g = p.random(Y, Z, bit(rng), rng), h = p.random(Z, U, bit(rng), rng);
        expect_zero(rep, "d^2", p.d(p.d(f)));
        DgMor leib = mor_sub(p.d(p.compose(g, f)), p.compose(p.d(g), f));
        leib = mor_sub(leib, mor_scale(p.compose(g, p.d(f)), g.deg % 2 ? mone : one(p.vars())));
        expect_zero(rep, "Leibniz", leib);
        expect_zero(rep, "associativity", mor_sub(p.compose(h, p.compose(g, f)), p.compose(p.compose(h, g), f)));
        expect_zero(rep, "left unit", mor_sub(p.compose(p.identity(Y), f), f));
        expect_zero(rep, "right unit", mor_sub(p.compose(f, p.identity(X)), f));
        expect_zero(rep, "d(id)", p.d(p.identity(X)));
    }
    return rep;
}

// ---------------------------------------------------------------- homotopy fiber product

std::string HfpMor::str() const
{
    return "(" + mu.str() + " | " + nu.str() + " | " + gamma.str() + ")";
}

HomotopyFiberProduct::HomotopyFiberProduct(const DgPiece& B, const DgPiece& C, const DgPiece& D, DgFunctor G,
                                           DgFunctor L)
    : B_(&B), C_(&C), D_(&D), G_(std::move(G)), L_(std::move(L))
{
    if (G_.change.source() != B.vars() || G_.change.target() != D.vars())
        throw std::invalid_argument("G does not map the variables of B to those of D");
    if (L_.change.source() != C.vars() || L_.change.target() != D.vars())
        throw std::invalid_argument("L does not map the variables of C to those of D");
    if (G_.name.empty()) G_.name = "G";
    if (L_.name.empty()) L_.name = "L";
}

MatrixFactorization HomotopyFiberProduct::G_of(const std::string& M) const { return G_.object(B_->object(M)); }
MatrixFactorization HomotopyFiberProduct::L_of(const std::string& N) const { return L_.object(C_->object(N)); }

void HomotopyFiberProduct::add_object(const std::string& name, const std::string& M, const std::string& N,
                                      const DgMor& phi)
{
    auto gm = G_of(M), ln = L_of(N);
    if (!(gm.W == ln.W)) throw std::invalid_argument(name + ": G(M) and L(N) factorize different potentials");
    if (phi.deg != 0) throw std::invalid_argument(name + ": phi must have degree 0");
    DgMor p = phi;
    p.src = gm.name;
    p.tgt = ln.name;
    if (!mor_d(p, gm, ln).is_zero()) throw std::invalid_argument(name + ": phi is not closed");
    DgPiece scratch(D_->vars(), D_->potential(), D_->units());
    scratch.add_object(gm.name, gm);
    scratch.add_object(ln.name, ln);
    auto inv = scratch.strict_inverse(p);
    if (!inv) throw std::invalid_argument(name + ": phi has no inverse over the overlap");
    objects_[name] = HfpObject{name, M, N, p, *inv};
}

const HfpObject& HomotopyFiberProduct::object(const std::string& name) const
{
    auto it = objects_.find(name);
    if (it == objects_.end()) throw std::out_of_range("no fiber-product object " + name);
    return it->second;
}

std::vector<std::string> HomotopyFiberProduct::objects() const
{
    std::vector<std::string> r;
    for (auto& [n, o] : objects_) r.push_back(n);
    return r;
}

HfpMor HomotopyFiberProduct::make(const std::string& src, const std::string& tgt, DgMor mu, DgMor nu,
                                  DgMor gamma) const
{
    const auto& a = object(src);
    const auto& b = object(tgt);
    int i = mu.deg;
    if (nu.deg != i || gamma.deg != parity(i - 1))
        throw std::invalid_argument("degree mismatch in (mu, nu, gamma): " + std::to_string(mu.deg) + ", " +
                                    std::to_string(nu.deg) + ", " + std::to_string(gamma.deg));
    mu.src = a.M, mu.tgt = b.M;
    nu.src = a.N, nu.tgt = b.N;
    gamma.src = G_of(a.M).name, gamma.tgt = L_of(b.N).name;
    return HfpMor{src, tgt, i, std::move(mu), std::move(nu), std::move(gamma)};
}

HfpMor HomotopyFiberProduct::identity(const std::string& x) const
{
    const auto& o = object(x);
    return make(x, x, B_->identity(o.M), C_->identity(o.N), mor_zero("", "", 1));
}

HfpMor HomotopyFiberProduct::random(const std::string& src, const std::string& tgt, int deg, std::mt19937_64& rng) const
{
    const auto& a = object(src);
    const auto& b = object(tgt);
    DgPiece scratch(D_->vars(), D_->potential(), D_->units());
    auto gm = G_of(a.M), ln = L_of(b.N);
    scratch.add_object(gm.name, gm);
    if (ln.name != gm.name) scratch.add_object(ln.name, ln);
    return make(src, tgt, B_->random(a.M, b.M, deg, rng), C_->random(a.N, b.N, deg, rng),
                scratch.random(gm.name, ln.name, deg + 1, rng));
}

HfpMor HomotopyFiberProduct::d(const HfpMor& m) const
{
    const auto& s = object(m.src);
    const auto& t = object(m.tgt);
    auto gm1 = G_of(s.M), ln2 = L_of(t.N);
    DgMor third = mor_scale(mor_d(m.gamma, gm1, ln2), -one(D_->vars()));
    third = mor_sub(third, mor_compose(t.phi, G_.map(m.mu)));
    third = mor_add(third, mor_compose(L_.map(m.nu), s.phi));
    return HfpMor{m.src, m.tgt, parity(m.deg + 1), B_->d(m.mu), C_->d(m.nu), third};
}

HfpMor HomotopyFiberProduct::compose(const HfpMor& mp, const HfpMor& m) const
{
    if (mp.src != m.tgt) throw std::invalid_argument("cannot compose fiber-product morphisms " + m.tgt + " / " + mp.src);
    LaurentPoly s = LaurentPoly::constant(D_->vars(), Series(mp.deg % 2 ? -1 : 1));
    DgMor third = mor_add(mor_compose(mp.gamma, G_.map(m.mu)), mor_scale(mor_compose(L_.map(mp.nu), m.gamma), s));
    return HfpMor{m.src, mp.tgt, parity(m.deg + mp.deg), B_->compose(mp.mu, m.mu), C_->compose(mp.nu, m.nu), third};
}

HfpMor HomotopyFiberProduct::add(const HfpMor& a, const HfpMor& b) const
{
    return HfpMor{a.src, a.tgt, a.deg, mor_add(a.mu, b.mu), mor_add(a.nu, b.nu), mor_add(a.gamma, b.gamma)};
}

HfpMor HomotopyFiberProduct::scale(const HfpMor& a, int s) const
{
    auto k = [&](const std::vector<std::string>& v) { return LaurentPoly::constant(v, Series(s)); };
    return HfpMor{a.src, a.tgt, a.deg, mor_scale(a.mu, k(B_->vars())), mor_scale(a.nu, k(C_->vars())),
                  mor_scale(a.gamma, k(D_->vars()))};
}

AxiomReport check_hfp_axioms(const HomotopyFiberProduct& h, std::mt19937_64& rng, int samples)
{
    AxiomReport rep;
    auto objs = h.objects();
    std::uniform_int_distribution<int> bit(0, 1);
    auto zero = [&](const std::string& what, const HfpMor& m) {
        ++rep.checked;
        if (!m.is_zero()) rep.failures.push_back(what + ": " + m.str());
    };
    for (int s = 0; s < samples; ++s) {
        auto X = pick(objs, rng), Y = pick(objs, rng), Z = pick(objs, rng), U = pick(objs, rng);
        HfpMor a = h.random(X, Y, bit(rng), rng), b = h.random(Y, Z, bit(rng), rng), c = h.random(Z, U, bit(rng), rng);
        zero("d^2", h.d(h.d(a)));
        // d(BA) = d(B)A + (-1)^{i'} B d(A)
        HfpMor rhs = h.add(h.compose(h.d(b), a), h.scale(h.compose(b, h.d(a)), b.deg % 2 ? -1 : 1));
        zero("Leibniz", h.add(h.d(h.compose(b, a)), h.scale(rhs, -1)));
        zero("associativity", h.add(h.compose(c, h.compose(b, a)), h.scale(h.compose(h.compose(c, b), a), -1)));
        zero("left unit", h.add(h.compose(h.identity(Y), a), h.scale(a, -1)));
        zero("right unit", h.add(h.compose(a, h.identity(X)), h.scale(a, -1)));
        zero("d(id)", h.d(h.identity(X)));
    }
    return rep;
}

// ---------------------------------------------------------------- random instances

namespace {

// block-diagonal unipotent automorphism and its inverse, from random elementary moves within each parity
std::pair<DgMor, DgMor> random_automorphism(const MatrixFactorization& x, std::mt19937_64& rng, int moves,
                                            const std::vector<std::string>& units)
{
    DgMor s = mor_identity(x), sinv = mor_identity(x);
    auto gens = x.generators();
    std::uniform_int_distribution<std::size_t> pickg(0, gens.size() - 1);
    std::uniform_int_distribution<int> coef(-2, 2), ex(0, 1), uex(-1, 1);
    for (int k = 0; k < moves; ++k) {
        auto i = gens[pickg(rng)], j = gens[pickg(rng)];
        if (i == j || x.is_odd(i) != x.is_odd(j)) continue;
        Exps e(x.vars.size());
        for (std::size_t v = 0; v < e.size(); ++v) {
            bool unit = std::find(units.begin(), units.end(), x.vars[v]) != units.end();
            e[v] = unit ? uex(rng) : ex(rng);
        }
        int c = coef(rng);
        if (c == 0) continue;
        LaurentPoly m = LaurentPoly::monomial(x.vars, e, Series(c));
        // E = Id + m e_{j <- i}, E^{-1} = Id - m e_{j <- i}
        DgMor E = mor_identity(x), Einv = mor_identity(x);
        E.map[i] = vec_add(E.map[i], Vec{{j, m}});
        Einv.map[i] = vec_add(Einv.map[i], Vec{{j, -m}});
        s = mor_compose(E, s);
        sinv = mor_compose(sinv, Einv);
    }
    return {s, sinv};
}

MatrixFactorization conjugate(const MatrixFactorization& x, const DgMor& s, const DgMor& sinv)
{
    DgMor delta{x.name, x.name, 1, x.delta};
    DgMor c = mor_compose(s, mor_compose(delta, sinv));
    MatrixFactorization r = x;
    for (auto& g : r.generators()) {
        auto it = c.map.find(g);
        r.delta[g] = it == c.map.end() ? Vec{} : vec_clean(it->second);
    }
    return r;
}

} // namespace

DgPiece random_piece(const std::vector<std::string>& vars, const LaurentPoly& W, int objects, int max_rank,
                     std::mt19937_64& rng, const std::vector<std::string>& units)
{
    if (!W.is_monomial()) throw std::invalid_argument("random pieces need a monomial potential");
    auto& [we, wc] = *W.terms().begin();
    DgPiece p(vars, W, units);
    std::uniform_int_distribution<int> rank(1, max_rank), coin(0, 1);
    for (int o = 0; o < objects; ++o) {
        MatrixFactorization mf;
        mf.vars = vars;
        mf.W = W;
        int r = rank(rng);
        for (int i = 0; i < r; ++i) {
            std::string e = "e" + std::to_string(i), od = "o" + std::to_string(i);
            mf.even.push_back(e);
            mf.odd.push_back(od);
            Exps f(vars.size()), g(vars.size());
            for (std::size_t k = 0; k < vars.size(); ++k) {
                std::uniform_int_distribution<int> split(0, std::max(0, we[k]));
                f[k] = we[k] < 0 ? we[k] : split(rng);
                g[k] = we[k] - f[k];
            }
            bool left = coin(rng);
            mf.delta[e] = Vec{{od, LaurentPoly::monomial(vars, f, left ? wc : Series(1))}};
            mf.delta[od] = Vec{{e, LaurentPoly::monomial(vars, g, left ? Series(1) : wc)}};
        }
        mf.name = "M" + std::to_string(o);
        auto [s, sinv] = random_automorphism(mf, rng, 2 * r, units);
        p.add_object(mf.name, conjugate(mf, s, sinv));
    }
    return p;
}

RandomHfp random_hfp(std::mt19937_64& rng, int objects, int max_rank)
{
    std::vector<std::string> v1{"x", "y", "z"}, v2{"x2", "y2", "z2"};
    std::uniform_int_distribution<int> twist(-2, 2), area(1, 4);
    int d = twist(rng);
    Series A = Series::T(Q(area(rng)) / 2);
    LaurentPoly W1 = LaurentPoly::monomial(v1, {1, 1, 1}, A);
    LaurentPoly W2 = LaurentPoly::monomial(v2, {1, 1, 1}, A);

    RandomHfp r;
    // chart 2 glues in by x2 = x^-1, y2 = x^{d+2} y, z2 = x^-d z; the overlap inverts x
    MonomialMap L(v2, v1), Linv(v1, v2);
    L.set("x2", Series(1), {-1, 0, 0});
    L.set("y2", Series(1), {d + 2, 1, 0});
    L.set("z2", Series(1), {-d, 0, 1});
    Linv = L.inverse();
    r.B = std::make_unique<DgPiece>(random_piece(v1, W1, objects, max_rank, rng));
    r.C = std::make_unique<DgPiece>(v2, W2);
    r.D = std::make_unique<DgPiece>(v1, W1, std::vector<std::string>{"x"});
    DgFunctor G{"G", MonomialMap::identity(v1)}, Lf{"L", L};

    std::uniform_int_distribution<int> ux(-2, 2), sgn(0, 1);
    std::vector<std::tuple<std::string, std::string, DgMor>> glued;
    for (auto& M : r.B->objects()) {
        MatrixFactorization gm = G.object(r.B->object(M));
        auto [s, sinv] = random_automorphism(gm, rng, 3, {"x"});
        MatrixFactorization image = conjugate(gm, s, sinv);
        // N = L^{-1}(S G(M) S^{-1}); phi = u S with u a unit monomial of the overlap
        MatrixFactorization n = DgFunctor{"", Linv}.object(image);
        n.name = "N" + M.substr(1);
        n.vars = v2;
        r.C->add_object(n.name, n);
        LaurentPoly u = LaurentPoly::monomial(v1, {ux(rng), 0, 0}, Series(sgn(rng) ? 1 : -1));
        glued.emplace_back(M, n.name, mor_scale(s, u));
    }
    r.hfp = std::make_unique<HomotopyFiberProduct>(*r.B, *r.C, *r.D, G, Lf);
    for (auto& [M, N, phi] : glued) r.hfp->add_object("(" + M + "," + N + ")", M, N, phi);
    return r;
}

} // namespace mg
