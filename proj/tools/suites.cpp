#include "suites.hpp"

#include "mirrorglue/dgcat.hpp"
#include "mirrorglue/mf.hpp"
#include "mirrorglue/tropical.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace mg::suites {

bool Result::ok() const
{
    return !lines.empty() && std::all_of(lines.begin(), lines.end(), [](auto& l) { return l.ok; });
}

std::string Result::first_failure() const
{
    for (auto& l : lines)
        if (!l.ok) return l.name + (l.detail.empty() ? "" : ": " + l.detail);
    return "";
}

namespace {

using Rng = std::mt19937_64;

Rng rng_for(const Options& o, int criterion) { return Rng(o.seed * 1000003ULL + static_cast<std::uint64_t>(criterion)); }

// shipped pairs of objects whose isomorphism determines a coordinate change
struct Pair {
    std::string model;
    std::vector<std::string> solve;
};
const std::vector<Pair> kPairs{{"isotopy", {"x'", "y'", "z'"}},
                               {"two_pants", {"x'", "y'", "z'"}},
                               {"circles_seidel", {"x1", "y1", "z1"}}};

struct Solved {
    Model model;
    std::unique_ptr<AInfInstance> inst;
    CoordinateChange cc;
    MonomialMap full;
    Vec b0, b1; // rewritten through the change
};

Solved solve_pair(const Pair& p, Rng& g)
{
    Solved s{load_shipped_model(p.model), nullptr, {}, {}, {}, {}};
    s.inst = std::make_unique<AInfInstance>(s.model, sample_assignment(s.model, g));
    auto& inst = *s.inst;
    Vec b0 = inst.deformation("b0"), b1 = inst.deformation("b1");
    s.cc = solve_isomorphism(inst, b0, b1, inst.named_element("alpha"), p.solve);
    s.full = extend_to_vars(s.cc.map, inst.vars());
    s.b0 = vec_substitute(b0, s.full);
    s.b1 = vec_substitute(b1, s.full);
    return s;
}

std::string oneline(std::string s)
{
    while (!s.empty() && s.back() == '\n') s.pop_back();
    std::string r;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\n') r += s[i];
        else if (i + 1 < s.size() && s[i + 1] != ';') r += "; ";
    }
    return r;
}

std::string assignment_str(const AInfInstance& inst)
{
    std::string s;
    for (auto& [k, v] : inst.assignment()) s += (s.empty() ? "" : ", ") + k + "=" + v.get_str();
    return s;
}

// -------------------------------------------------------------------- 1
void mf_identity(Result& r, const Options& o)
{
    auto g = rng_for(o, 1);
    std::uniform_int_distribution<int> num(1, 40), den(1, 9);
    for (int m = 0; m <= 2; ++m) {
        Model model = mf_s1_model(m);
        int good = 0;
        std::string bad;
        for (int i = 0; i < 10; ++i) {
            Q area = Q(num(g)) / den(g);
            area.canonicalize();
            AInfInstance in(model, {{"A", area}});
            auto mf = transform_object(in, "L", "S1", "b");
            auto chk = check_mf(mf);
            LaurentPoly w = LaurentPoly::monomial(mf.vars, {1, 1, 1}, Series::monomial(area));
            if (chk.ok && mf.W == w)
                ++good;
            else if (bad.empty())
                bad = "A=" + area.get_str() + (chk.ok ? ": W = " + mf.W.str() : ": delta^2 != W Id");
        }
        r.lines.push_back({"delta^2 = W Id, m = " + std::to_string(m), good == 10,
                           std::to_string(good) + "/10 areas" + (bad.empty() ? "" : "; " + bad)});
    }
}

// -------------------------------------------------------------------- 2, 3, 4
void coordinate_changes(Result& r, const Options& o)
{
    auto g = rng_for(o, 2);
    for (auto& p : kPairs)
        for (int i = 0; i < 5; ++i) {
            auto s = solve_pair(p, g);
            std::string why;
            bool ok = matches_expected(*s.inst, s.cc.map, s.model.expected, &why);
            r.lines.push_back({p.model + " [" + assignment_str(*s.inst) + "]", ok, ok ? oneline(s.cc.map.table()) : why});
        }
}

void units(Result& r, const Options& o)
{
    auto g = rng_for(o, 3);
    for (auto& p : kPairs) {
        if (p.model == "two_pants") continue;
        for (int i = 0; i < 5; ++i) {
            auto s = solve_pair(p, g);
            auto& inst = *s.inst;
            auto rep = verify_isomorphism(inst, s.b0, s.b1, inst.named_element("alpha"), inst.named_element("beta"));
            LaurentPoly want = inst.poly(s.model.expected.at("unit"));
            auto show = [](const std::optional<LaurentPoly>& u) { return u ? u->str() : std::string("none"); };
            bool l = rep.unit_left && *rep.unit_left == want;
            bool rr = rep.unit_right && *rep.unit_right == want;
            std::string tag = p.model + " [" + assignment_str(inst) + "]";
            r.lines.push_back({tag + " m2(alpha, beta)", l && rep.ok(), show(rep.unit_left) + " vs " + want.str()});
            r.lines.push_back({tag + " m2(beta, alpha)", rr && rep.ok(), show(rep.unit_right) + " vs " + want.str()});
        }
    }
}

const std::vector<std::string> kGlobalCurves{"pair_of_pants", "conifold_k0", "conifold_k1", "conifold_k2",
                                             "conifold_k3",   "kp2",         "toric_cy_eg"};

void potentials(Result& r, const Options& o)
{
    auto g = rng_for(o, 4);
    for (auto& p : kPairs) {
        auto s = solve_pair(p, g);
        auto& inst = *s.inst;
        auto w0 = weak_mc_check(inst, s.model.objects[0], s.b0);
        auto w1 = weak_mc_check(inst, s.model.objects[1], s.b1);
        bool ok = w0.ok && w1.ok && w0.potential == w1.potential;
        r.lines.push_back({"W0(b0) = W1(b1) on " + p.model, ok, w0.potential.str() + " vs " + w1.potential.str()});
    }
    for (auto& name : kGlobalCurves) {
        Curve c = load_shipped_curve(name);
        bool ex = global_potential_check(c, true).ok(), im = global_potential_check(c, false).ok();
        r.lines.push_back({"global potential on " + name, ex && im,
                           std::string(ex ? "" : "exact charts disagree ") + (im ? "" : "immersed charts disagree")});
    }
}

// -------------------------------------------------------------------- 5
int exponent(const MonomialMap& m, const std::string& src, const std::string& var)
{
    const auto& t = m.target();
    auto it = std::find(t.begin(), t.end(), var);
    if (it == t.end()) throw std::logic_error("variable " + var + " not in the target");
    return m.image(src).exps[it - t.begin()];
}

void conifold(Result& r, const Options&)
{
    for (int k = 0; k <= 3; ++k) {
        Curve c = load_shipped_curve("conifold_k" + std::to_string(k));
        const auto& e = c.edge("e");
        auto m = transition_map(c, "e", true);
        auto v1 = chart_vars(c, "v1", true), v2 = chart_vars(c, "v2", true);
        int s1 = c.slot("v1", c.edge_index("e")), s2 = c.slot("v2", c.edge_index("e"));
        std::string x1 = v1[s1], y1 = v1[(s1 + 1) % 3], z1 = v1[(s1 + 2) % 3];
        bool ok = e.d == k - 2 && exponent(m, v2[s2], x1) == -1;
        // the two other variables pick up x1^k and x1^(2-k)
        std::multiset<std::pair<int, std::string>> got, want{{k, y1}, {2 - k, z1}};
        for (int i = 1; i <= 2; ++i) {
            const auto& v = v2[(s2 + i) % 3];
            ok = ok && m.image(v).unit.is_monomial();
            for (auto& w : {y1, z1})
                if (exponent(m, v, w) == 1) got.insert({exponent(m, v, x1), w});
        }
        ok = ok && got == want;
        bool pot = global_potential_check(c, true).ok();
        r.lines.push_back({"O(" + std::to_string(-k) + ")+O(" + std::to_string(k - 2) + "), a2 - a1 = " +
                               std::to_string(e.d),
                           ok && pot, oneline(m.table()) + (pot ? "" : "; potential mismatch")});
    }
}

// -------------------------------------------------------------------- 6
void divisor(Result& r, const Options&)
{
    Curve kp2 = load_shipped_curve("kp2");
    Fan f = dual_fan(kp2);
    std::string face;
    for (std::size_t i = 0; i < f.points.size(); ++i)
        if (f.interior[i]) face = f.face_id(i);
    for (int k = -1; k <= 2; ++k) {
        std::map<std::string, int> a1;
        for (auto& e : kp2.edges)
            if (e.finite()) a1[e.id] = -4;
        // m^e = k n^e - a2^e, n^e the affine length of the edge
        std::map<std::string, int> w;
        for (auto& e : kp2.edges)
            if (e.finite()) {
                Q n = e.length;
                if (n.get_den() != 1) throw std::logic_error("edge " + e.id + " has fractional length");
                w[e.id] = k * static_cast<int>(n.get_num().get_si()) - (a1[e.id] + e.d);
            }
        auto lb = glue_objects(kp2, face, w, a1);
        bool ok = lb.twist && *lb.twist == k && lb.terms.size() == 3;
        for (auto& t : lb.terms) ok = ok && t.traced && t.coefficient == t.a2 + t.m;
        r.lines.push_back({"O_D(" + std::to_string(k) + ")", ok, lb.str()});
    }
}

// -------------------------------------------------------------------- 7
void fiberproduct(Result& r, const Options& o)
{
    auto g = rng_for(o, 7);
    std::size_t triples = 0;
    std::vector<std::string> failures;
    for (int i = 0; i < 40; ++i) {
        auto h = random_hfp(g, 2, 2);
        auto rep = check_hfp_axioms(*h.hfp, g, 6);
        triples += rep.checked / 6;
        for (auto& f : rep.failures) failures.push_back("instance " + std::to_string(i) + ": " + f);
    }
    r.lines.push_back({"d^2 = 0, Leibniz, associativity, unit laws", failures.empty() && triples >= 200,
                       std::to_string(triples) + " random triples on 40 instances" +
                           (failures.empty() ? "" : "; " + failures.front())});
}

// -------------------------------------------------------------------- 8, 9
struct TwoPants {
    Model model = load_shipped_model("two_pants");
    std::unique_ptr<AInfInstance> inst;
    std::unique_ptr<ModelCategory> cat;
    Vec alpha, beta;
    explicit TwoPants(Rng& g)
    {
        inst = std::make_unique<AInfInstance>(model, sample_assignment(model, g));
        Vec b0 = inst->deformation("b0"), b1 = inst->deformation("b1");
        auto cc = solve_isomorphism(*inst, b0, b1, inst->named_element("alpha"), {"x'", "y'", "z'"});
        auto full = extend_to_vars(cc.map, inst->vars());
        cat = std::make_unique<ModelCategory>(
            *inst, std::map<std::string, ModelCategory::Obj>{{"T0", {"Lt", vec_substitute(b0, full)}},
                                                             {"T1", {"L1", vec_substitute(b1, full)}}});
        alpha = inst->named_element("alpha");
        beta = inst->named_element("beta");
    }
};

Line nat_line(const NatCheck& c)
{
    return {c.name, c.ok(),
            std::to_string(c.tuples) + " tuples" + (c.ok() ? "" : "; " + c.residuals.front().substr(0, 300))};
}

void nat_layer(Result& r, const Options& o)
{
    auto g = rng_for(o, 8);
    TwoPants tp(g);
    auto& c = *tp.cat;
    YonedaFunctor y0(c, "T0"), y1(c, "T1");
    PreNat n = yoneda_nat(c, y0, y1, tp.beta);
    r.lines.push_back(nat_line(nat_vanishes("M1(N_id) = 0", c, nat_M1(c, nat_identity(y0)), o.arity)));
    r.lines.push_back(nat_line(nat_equal("M2(N_id, N) = N", c, nat_M2(nat_identity(y0), n), n, o.arity)));
    PreNat sign = n.norm % 2 ? nat_sign(n, -1) : n;
    r.lines.push_back(nat_line(nat_equal("M2(N, N_id) = (-1)^||N|| N", c, nat_M2(n, nat_identity(y1)), sign, o.arity)));
    auto rep = yoneda_equivalence_check(c, "T0", "T1", tp.alpha, tp.beta, {}, {}, o.arity);
    for (auto& chk : rep.checks) r.lines.push_back(nat_line(chk));
}

void global(Result& r, const Options& o)
{
    auto g = rng_for(o, 9);
    TwoPants tp(g);
    auto rep = global_functor(*tp.cat, "T0", "T1", tp.alpha, tp.beta, {"T0", "T1"}, o.arity);
    for (auto& chk : rep.checks) r.lines.push_back(nat_line(chk));
}

// -------------------------------------------------------------------- 10
void flop(Result& r, const Options& o)
{
    auto g = rng_for(o, 10);
    Model m = load_shipped_model("flop");
    // at alpha = 0 the rectangles through Y and Z carry no area, so the table holds up to sign alone
    AInfInstance inst(m, sample_assignment(m, g, {{"alpha", Q(0)}}));
    auto rep = flop_check(inst);
    for (auto& c : rep.checks) r.lines.push_back({c.name, c.status == Status::Pass, c.detail});
}

// -------------------------------------------------------------------- 11
void morphisms(Result& r, const Options&)
{
    Model model = load_morphism_model();
    AInfInstance p(model, {});
    auto L = path_mf(p, "L");
    const auto& vars = L.vars;
    auto mono = [&](Exps e) { return LaurentPoly::monomial(vars, e); };
    auto one = [&](const std::string& g) { return Vec{{g, LaurentPoly::constant(vars, Series(1))}}; };
    for (int i = -3; i <= 3; ++i) {
        auto phi = path_morphism(p, i);
        LaurentPoly f = mono({i > 0 ? i : 0, i < 0 ? -i : 0, 0});
        bool ok = phi.parity == 0 && chain_residual(phi, L, L).empty();
        for (auto& g : L.generators()) ok = ok && vec_clean(phi.map.at(g)) == Vec{{g, f}};
        r.lines.push_back({"P" + std::to_string(i) + " -> " + (i == 0 ? std::string("Id") : f.str()), ok, phi.str()});
    }
    auto Lw = path_mf(p, "Lw");
    for (int i = 1; i <= 3; ++i) {
        auto h = transform_morphism(p, "H", one("H" + std::to_string(i)), Lw, L, "b");
        bool ok = chain_residual(h, Lw, L).empty() && vec_clean(h.map.at("Aw")) == Vec{{"A", mono({i - 1, 0, 0})}};
        r.lines.push_back({"H" + std::to_string(i) + " table", ok, h.str()});
    }
    int good = 0, total = 0;
    std::string bad;
    for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j) {
            auto c = composition_check(p, i, j);
            ++total;
            if (c.cmp.ok)
                ++good;
            else if (bad.empty())
                bad = "P" + std::to_string(i) + " P" + std::to_string(j) + ": " + c.cmp.detail;
        }
    r.lines.push_back({"composition_check |i|,|j| <= 3", good == total,
                       std::to_string(good) + "/" + std::to_string(total) + (bad.empty() ? "" : "; " + bad)});
}

// -------------------------------------------------------------------- 12
void covering(Result& r, const Options&)
{
    for (auto name : {"kp2", "toric_cy_eg"}) {
        Curve c = load_shipped_curve(name);
        auto cov = covering_collection(c);
        // recertify independently of the construction
        auto cert = certify_covering(c, cov.charts);
        std::string detail = std::to_string(cov.charts.size()) + " charts, " + std::to_string(cert.strata.size()) +
                             " edge strata";
        if (!cert.ok()) detail += "; " + cert.failures.front();
        r.lines.push_back({name + std::string(" certificate"), cert.ok() && cov.certificate.ok(), detail});
    }
}

struct Entry {
    Suite s;
    std::function<void(Result&, const Options&)> run;
};

const std::vector<Entry>& entries()
{
    static const std::vector<Entry> e{
        {{1, "mf-identity", "MF identity delta^2 = W Id"}, mf_identity},
        {{2, "coordinate-changes", "coordinate changes from isomorphisms"}, coordinate_changes},
        {{3, "units", "isomorphism units"}, units},
        {{4, "potentials", "potential invariance"}, potentials},
        {{5, "conifold", "conifold family gluing"}, conifold},
        {{6, "divisor", "divisor formula on K_P2"}, divisor},
        {{7, "fiberproduct", "fiber-product axioms"}, fiberproduct},
        {{8, "nat-layer", "natural-transformation layer"}, nat_layer},
        {{9, "global-functor", "global functor equation"}, global},
        {{10, "flop", "flop"}, flop},
        {{11, "morphisms", "morphism functor"}, morphisms},
        {{12, "covering", "covering certificate"}, covering},
    };
    return e;
}

} // namespace

const std::vector<Suite>& all()
{
    static const std::vector<Suite> s = [] {
        std::vector<Suite> v;
        for (auto& e : entries()) v.push_back(e.s);
        return v;
    }();
    return s;
}

Result run(const std::string& id, const Options& opt)
{
    for (auto& e : entries()) {
        if (e.s.id != id) continue;
        Result r{e.s.criterion, e.s.id, e.s.title, {}, 0};
        auto t0 = std::chrono::steady_clock::now();
        try {
            e.run(r, opt);
        } catch (const std::exception& ex) {
            r.lines.push_back({"exception", false, ex.what()});
        }
        for (auto& l : r.lines) l.detail = oneline(l.detail);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    }
    throw std::invalid_argument("unknown suite: " + id);
}

} // namespace mg::suites
