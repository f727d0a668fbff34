#include "mirrorglue/ainf.hpp"

#include <stdexcept>

namespace mg {

namespace {

const std::vector<std::string> kOld = {"y", "z", "t"};
const std::vector<std::string> kNew = {"y'", "z'", "t'"};
const std::vector<std::string> kMid = {"y''", "z''", "t''"};

} // namespace

GaugeResult gauge_step(const GaugeStep& s)
{
    GaugeResult r;
    r.change = MonomialMap(kOld, kNew);
    int ty = 0, tz = 0;
    if (s.through == GaugeStep::Through::Z) {
        // p1 sweeps A', p2 sweeps B'
        if (s.point == GaugeStep::Point::P1) {
            tz = -1;
            r.a_scale = -1;
        } else {
            tz = 1;
            r.b_scale = -1;
        }
    } else {
        ty = s.point == GaugeStep::Point::P1 ? 1 : -1;
    }
    ty *= s.direction;
    tz *= s.direction;
    r.a_scale *= s.direction;
    r.b_scale *= s.direction;
    r.change.set("y", Series(1), {1, 0, ty});
    r.change.set("z", Series(1), {0, 1, tz});
    r.change.set("t", Series(1), {0, 0, 1});
    return r;
}

GaugeResult gauge_compose(const GaugeResult& first, const GaugeResult& second)
{
    GaugeResult r;
    MonomialMap a = first.change.renamed(kOld, kMid);
    MonomialMap b = second.change.renamed(kMid, kNew);
    r.change = a.then(b).renamed(kOld, kNew);
    r.a_scale = first.a_scale + second.a_scale;
    r.b_scale = first.b_scale + second.b_scale;
    return r;
}

std::vector<GaugeStep> gauge_path(int a1, int a2)
{
    using P = GaugeStep::Point;
    using Th = GaugeStep::Through;
    std::vector<GaugeStep> steps;
    auto push = [&](P p, Th th, int times) {
        for (int i = 0; i < std::abs(times); ++i) steps.push_back({p, th, times > 0 ? 1 : -1});
    };
    push(P::P1, Th::Z, a1);
    push(P::P1, Th::Y, a1 - 1);
    push(P::P2, Th::Z, a2);
    push(P::P2, Th::Y, a2 + 1);
    return steps;
}

GaugeResult gauge_change(int a1, int a2)
{
    GaugeResult r;
    r.change = MonomialMap(kOld, kNew);
    r.change.set("y", Series(1), {1, 0, 0});
    r.change.set("z", Series(1), {0, 1, 0});
    r.change.set("t", Series(1), {0, 0, 1});
    for (auto& s : gauge_path(a1, a2)) r = gauge_compose(r, gauge_step(s));
    return r;
}

ExactReduction exact_reduce(const Model& m, const Assignment& a, const std::string& deformation)
{
    ExactReduction out;
    out.reduced = m;
    AInfInstance inst(m, a);
    auto offset = [&](const std::string& g) -> std::optional<Q> {
        const auto& gen = m.gen(g);
        if (!gen.offset) return std::nullopt;
        return gen.offset->eval(a);
    };
    // unit generators have offset zero unless declared
    auto off_or_unit = [&](const std::string& g) -> std::optional<Q> {
        for (auto& [o, u] : m.units)
            if (u == g && !m.gen(g).offset) return Q(0);
        return offset(g);
    };

    for (std::size_t i = 0; i < m.entries.size(); ++i) {
        const auto& e = m.entries[i];
        LaurentPoly c = inst.poly(e.coeff);
        if (!c.is_monomial() || !c.terms().begin()->second.is_monomial()) {
            out.failures.push_back("entry into " + e.output + ": coefficient is not a single area term");
            continue;
        }
        Q E = c.terms().begin()->second.terms().front().first;
        std::optional<Q> want = off_or_unit(e.output);
        Q sum = 0;
        bool known = want.has_value();
        for (auto& x : e.inputs) {
            auto f = off_or_unit(x);
            if (!f) known = false;
            else sum += *f;
        }
        std::string label = "m" + std::to_string(e.inputs.size()) + " -> " + e.output;
        if (!known) {
            out.failures.push_back(label + ": a corner has no exact offset");
            continue;
        }
        Q expect = sum - *want;
        if (E != expect) {
            out.failures.push_back(label + ": area " + to_string(E) + " differs from offset sum " + to_string(expect));
            continue;
        }
        out.reduced.entries[i].coeff = c.scaled(Series::T(-E)).str();
    }
    out.certified = out.failures.empty();
    out.reduced.symbols.clear();
    out.reduced.constraints.clear();
    out.reduced.params.clear();

    // x = T^{-f(X)} x_ex for b = sum x X
    auto dit = m.deformations.find(deformation);
    if (dit == m.deformations.end()) throw std::invalid_argument("no deformation " + deformation);
    std::vector<std::string> src, tgt;
    std::vector<std::pair<std::string, Q>> shifts;
    for (auto& [g, coeff] : dit->second) {
        LaurentPoly p = inst.poly(coeff);
        if (!p.is_monomial()) throw std::invalid_argument("deformation coefficient must be a variable");
        auto& [ex, c] = *p.terms().begin();
        int idx = -1;
        for (std::size_t i = 0; i < ex.size(); ++i)
            if (ex[i] != 0) {
                if (idx >= 0 || ex[i] != 1) throw std::invalid_argument("deformation coefficient must be a variable");
                idx = static_cast<int>(i);
            }
        if (idx < 0 || !c.exactly_equals(Series(1))) throw std::invalid_argument("deformation coefficient must be a variable");
        auto f = offset(g);
        if (!f) throw std::invalid_argument("generator " + g + " has no exact offset");
        src.push_back(m.variables[idx]);
        tgt.push_back(m.variables[idx] + "_ex");
        shifts.push_back({m.variables[idx], *f});
    }
    out.to_exact = MonomialMap(src, tgt);
    for (std::size_t i = 0; i < src.size(); ++i) {
        Exps e(tgt.size(), 0);
        e[i] = 1;
        out.to_exact.set(src[i], Series::T(-shifts[i].second), e);
    }
    return out;
}

} // namespace mg
