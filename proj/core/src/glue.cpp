#include "mirrorglue/mf.hpp"

#include <stdexcept>

namespace mg {

namespace {

LaurentPoly mono(const std::vector<std::string>& vars, Exps e, long c = 1)
{
    return LaurentPoly::monomial(vars, e, Series(Scalar(c)));
}

} // namespace

EdgeGluing glue_edge(int m, int a1, int a2)
{
    EdgeGluing g;
    g.m = m;
    g.a1 = a1;
    g.a2 = a2;

    // exact variables: every area term is absorbed, which is A = 0 in the strip table
    Model s1_model = mf_s1_model(m);
    AInfInstance s1(s1_model, {{"A", Q(0)}});
    g.s1 = transform_object(s1, "L", "S1", "b");
    const auto& v = g.s1.vars;

    Model pm = load_morphism_model();
    AInfInstance p(pm, {});
    MatrixFactorization s2 = path_mf(p, "L");
    // x2 = x1^-1, y2 = x1^(a2-a1+2) y1, z2 = x1^(a1-a2) z1
    MonomialMap change(s2.vars, v);
    change.set("x", Series(1), {-1, 0, 0});
    change.set("y", Series(1), {a2 - a1 + 2, 1, 0});
    change.set("z", Series(1), {a1 - a2, 0, 1});
    g.s2 = s2;
    g.s2.name = "L against S2";
    g.s2.vars = v;
    g.s2.W = substitute(s2.W, change);
    for (auto& [gen, img] : s2.delta) g.s2.delta[gen] = vec_substitute(img, change);
    if (!(g.s2.W == g.s1.W)) throw std::logic_error("coordinate change does not match the potentials");

    g.phi.name = "glue";
    std::string top_c = "C" + std::to_string(2 * m);
    g.phi.map["A"] = Vec{{top_c, mono(v, {a1, 0, 0})}};
    if (m == 0) {
        g.phi.map["B"] = Vec{{"D0", mono(v, {a2, 0, 0})}};
    } else {
        g.phi.map["B"] = vec_clean(Vec{{"D" + std::to_string(2 * m), mono(v, {a2 + 1, 1, 0}, -1)},
                                       {"D" + std::to_string(2 * m - 1), mono(v, {a2 + 1, 0, 0})}});
    }
    g.residual = chain_residual(g.phi, g.s2, g.s1);

    DSingClass coker = cokernel_dsing(g.s1);
    Vec image = g.phi.map["B"];
    Vec red = coker.reduce(image, true);
    g.trace = "B -> " + vec_str(image) + " ~ " + (red.empty() ? std::string("0") : vec_str(red)) + " in " + coker.str();
    if (red.size() == 1 && red.count("D0") && red.at("D0").is_monomial()) {
        auto& [e, c] = *red.at("D0").terms().begin();
        if (e[1] == 0 && e[2] == 0 && c.is_monomial()) g.section_order = e[0];
    }
    return g;
}

std::string DivisorLineBundle::str() const
{
    std::string s = "face " + face + ": ";
    if (terms.empty()) return s + "structure sheaf O_{D_f}";
    std::string sum;
    for (auto& t : terms) {
        if (!sum.empty()) sum += " + ";
        sum += std::to_string(t.coefficient) + "*{" + t.edge + ": D_f . D_" + t.component + "}";
    }
    s += sum;
    if (twist) s += "  = O_D(" + std::to_string(*twist) + ")";
    return s;
}

DivisorLineBundle glue_objects(const Curve& c, const std::string& face, const std::map<std::string, int>& windings,
                               const std::map<std::string, int>& a1)
{
    Fan f = dual_fan(c);
    std::size_t p = f.face(face);
    for (auto& [e, k] : windings) {
        const auto& edge = c.edge(e);
        if (!edge.finite()) throw std::invalid_argument("winding given on infinite edge " + e);
    }
    for (auto& [e, k] : a1)
        if (!c.edge(e).finite()) throw std::invalid_argument("a1 given on infinite edge " + e);

    DivisorLineBundle out;
    out.face = f.face_id(p);
    for (std::size_t ei = 0; ei < c.edges.size(); ++ei) {
        const auto& e = c.edges[ei];
        if (!e.finite()) continue;
        const std::string& v1 = e.ends[0];
        int s = c.slot(v1, ei);
        const auto& cone = f.cones.at(v1);
        if (cone[(s + 1) % 3] != p && cone[(s + 2) % 3] != p) continue;

        DivisorTerm t;
        t.edge = e.id;
        t.component = f.face_id(cone[s]);
        auto it = a1.find(e.id);
        int a = it == a1.end() ? e.a1 : it->second;
        t.a2 = a + e.d;
        auto w = windings.find(e.id);
        t.m = w == windings.end() ? 0 : w->second;
        if (!is_integer(e.length)) throw std::runtime_error("edge " + e.id + " has non-integral affine length");
        t.n = static_cast<int>(to_long(e.length));
        t.coefficient = t.a2 + t.m;
        if (t.m >= 0) {
            EdgeGluing g = glue_edge(t.m, a, t.a2);
            if (!g.residual.empty()) throw std::runtime_error("gluing across " + e.id + " is not a chain map");
            if (!g.section_order || *g.section_order != t.coefficient)
                throw std::runtime_error("gluing across " + e.id + " does not reduce to a line bundle section: " + g.trace);
            t.traced = true;
        }
        out.terms.push_back(t);
    }
    if (!out.terms.empty()) {
        const auto& t0 = out.terms.front();
        if ((t0.m + t0.a2) % t0.n == 0) {
            int k = (t0.m + t0.a2) / t0.n;
            bool all = true;
            for (auto& t : out.terms) all = all && t.m == k * t.n - t.a2;
            if (all) out.twist = k;
        }
    }
    return out;
}

} // namespace mg
