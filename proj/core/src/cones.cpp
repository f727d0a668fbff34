#include "mirrorglue/tropical.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace mg {

namespace {

Q dotq(const Z2& a, const Q2& p) { return Q(a[0]) * p[0] + Q(a[1]) * p[1]; }
Q cross(const Q2& a, const Q2& b) { return a[0] * b[1] - a[1] * b[0]; }

std::array<Q, 3> shift_pattern(int slot, DeformKind kind)
{
    std::array<Q, 3> d{1, 1, 1};
    d[slot] = kind == DeformKind::Tilde ? -1 : -2;
    return d;
}

Q2 project(const Q3& w, const Z2& rho) { return {w[0] - Q(rho[0]) * w[2], w[1] - Q(rho[1]) * w[2]}; }

Q3 combine(const Fan& f, const std::string& v, const std::array<Q, 3>& coeff)
{
    Q3 w{0, 0, 0};
    const auto& cone = f.cones.at(v);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) w[k] += coeff[i] * Q(f.rays[cone[i]][k]);
    return w;
}

// closed intervals with a common point
bool meet(const std::vector<Interval>& ivs)
{
    std::optional<Q> lo, hi;
    for (auto& iv : ivs) {
        if (iv.lo && (!lo || *iv.lo > *lo)) lo = iv.lo;
        if (iv.hi && (!hi || *iv.hi < *hi)) hi = iv.hi;
    }
    return !lo || !hi || *lo <= *hi;
}

} // namespace

Q3 undeformed_offsets(const Curve& c, const std::string& v)
{
    const auto& vert = c.vertex(v);
    Q3 o;
    for (int s = 0; s < 3; ++s) o[s] = -dotq(c.direction(v, s), vert.pos);
    return o;
}

Chart undeformed_chart(const Curve& c, const std::string& v)
{
    Chart ch;
    ch.id = "S_" + v;
    ch.vertex = v;
    ch.offsets = undeformed_offsets(c, v);
    return ch;
}

Chart deform(const Chart& ch, int slot, const Q& amount, DeformKind kind)
{
    Chart out = ch;
    out.deformations.push_back({slot, amount, kind});
    auto d = shift_pattern(slot, kind);
    for (int i = 0; i < 3; ++i) out.offsets[i] += d[i] * amount;
    std::string mark = kind == DeformKind::Tilde ? "~" : "'";
    out.id = "S" + std::string(out.deformations.size(), mark[0]) + "_" + ch.vertex;
    return out;
}

Q exact_offset(const Curve& c, const Chart& ch, const std::string& var)
{
    auto names = chart_vars(c, ch.vertex, false);
    for (int s = 0; s < 3; ++s)
        if (names[s] == var) return ch.offsets[s];
    throw std::invalid_argument("variable " + var + " is not bound in chart " + ch.id);
}

MonomialMap to_exact(const Curve& c, const Chart& ch)
{
    auto src = chart_vars(c, ch.vertex, false);
    auto tgt = chart_vars(c, ch.vertex, true);
    MonomialMap m({src.begin(), src.end()}, {tgt.begin(), tgt.end()});
    for (int s = 0; s < 3; ++s) {
        Exps e(3, 0);
        e[s] = 1;
        m.set(src[s], Series::T(-ch.offsets[s]), e);
    }
    return m;
}

ConeImage cone_image(const Curve& c, const Fan& f, const Chart& ch, std::size_t face)
{
    (void)c;
    const Z2 rho = f.points.at(face);
    ConeImage img;
    // <m_i, apex> = offset_i, and the rays are the dual basis of the characters
    img.apex = project(combine(f, ch.vertex, ch.offsets), rho);
    std::vector<Q2> rs;
    for (auto idx : f.cones.at(ch.vertex)) {
        const Z3& r = f.rays[idx];
        Q2 p = project({Q(r[0]), Q(r[1]), Q(r[2])}, rho);
        if (sgn(p[0]) != 0 || sgn(p[1]) != 0) rs.push_back(p);
    }
    if (rs.size() == 2) {
        img.pointed = sgn(cross(rs[0], rs[1])) != 0 || sgn(rs[0][0] * rs[1][0] + rs[0][1] * rs[1][1]) > 0;
        if (sgn(cross(rs[0], rs[1])) < 0) std::swap(rs[0], rs[1]);
        img.rays = rs;
        return img;
    }
    // three projected generators: keep the extreme pair if one exists
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            if (a == b) continue;
            int k = 3 - a - b;
            if (sgn(cross(rs[a], rs[b])) > 0 && sgn(cross(rs[a], rs[k])) >= 0 && sgn(cross(rs[k], rs[b])) >= 0) {
                img.rays = {rs[a], rs[b]};
                return img;
            }
        }
    img.pointed = false;
    img.rays = rs;
    return img;
}

Q2 deformation_shift(const Curve& c, const Fan& f, const Chart& base, int slot, std::size_t face, DeformKind kind)
{
    (void)c;
    return project(combine(f, base.vertex, shift_pattern(slot, kind)), f.points.at(face));
}

Certificate certify_covering(const Curve& c, const std::vector<Chart>& charts)
{
    Certificate cert;
    std::map<std::string, std::vector<const Chart*>> at;
    for (auto& ch : charts) at[ch.vertex].push_back(&ch);
    for (auto& [v, list] : at)
        if (list.size() > 2)
            cert.failures.push_back("vertex " + v + " carries " + std::to_string(list.size()) +
                                    " charts, all containing its torus-fixed point");

    for (std::size_t ei = 0; ei < c.edges.size(); ++ei) {
        const auto& e = c.edges[ei];
        StratumCover sc;
        sc.edge = e.id;
        sc.finite = e.finite();
        for (std::size_t k = 0; k < e.ends.size(); ++k) {
            int s = c.slot(e.ends[k], ei);
            for (const Chart* ch : at[e.ends[k]]) {
                Interval iv;
                if (k == 0) iv.lo = ch->offsets[s];
                else iv.hi = -ch->offsets[s];
                sc.pieces.push_back({ch->id, iv});
            }
        }
        std::optional<Q> lo, hi; // smallest lower end, largest upper end
        for (auto& p : sc.pieces) {
            if (p.range.lo && (!lo || *p.range.lo < *lo)) lo = p.range.lo;
            if (p.range.hi && (!hi || *p.range.hi > *hi)) hi = p.range.hi;
        }
        if (e.finite()) {
            sc.covered = lo && hi && *hi > *lo;
            if (!sc.covered)
                sc.problems.push_back(!lo || !hi ? "one end carries no chart"
                                                 : "gap or bare contact between " + to_string(*hi) + " and " +
                                                       to_string(*lo));
        } else {
            sc.covered = lo && sgn(*lo) <= 0;
            if (!sc.covered) sc.problems.push_back("val >= 0 part not contained in any chart");
        }
        for (std::size_t a = 0; a < sc.pieces.size(); ++a)
            for (std::size_t b = a + 1; b < sc.pieces.size(); ++b)
                for (std::size_t d = b + 1; d < sc.pieces.size(); ++d)
                    if (meet({sc.pieces[a].range, sc.pieces[b].range, sc.pieces[d].range}))
                        sc.problems.push_back("triple overlap " + sc.pieces[a].chart + ", " + sc.pieces[b].chart + ", " +
                                              sc.pieces[d].chart);
        for (auto& p : sc.problems) cert.failures.push_back("edge " + e.id + ": " + p);
        cert.strata.push_back(sc);
    }
    return cert;
}

namespace {

struct RayCones {
    std::vector<std::string> order; // clockwise around the ray
    bool cycle = false;
    std::map<std::pair<std::string, std::string>, std::size_t> edge; // consecutive pair -> curve edge
};

RayCones cones_around(const Curve& c, const Fan& f, std::size_t ray)
{
    RayCones rc;
    std::map<std::string, std::vector<std::pair<std::string, std::size_t>>> nb;
    std::vector<std::string> members;
    for (auto& v : c.vertices) {
        const auto& cone = f.cones.at(v.id);
        if (std::find(cone.begin(), cone.end(), ray) == cone.end()) continue;
        members.push_back(v.id);
        for (int s = 0; s < 3; ++s) {
            if (cone[s] == ray) continue; // segment of slot s avoids the ray
            const auto& e = c.edges[c.incident.at(v.id)[s]];
            if (e.finite()) nb[v.id].push_back({e.ends[0] == v.id ? e.ends[1] : e.ends[0], c.incident.at(v.id)[s]});
        }
    }
    if (members.empty()) return rc;
    std::string start = members.front();
    for (auto& m : members)
        if (nb[m].size() < 2) {
            start = m; // chain end
            break;
        }
    rc.cycle = std::all_of(members.begin(), members.end(), [&](auto& m) { return nb[m].size() == 2; });
    std::vector<std::string> walk{start};
    std::string prev;
    while (true) {
        const std::string& cur = walk.back();
        std::string next;
        for (auto& [w, e] : nb[cur])
            if (w != prev && w != walk.front()) next = w;
        if (next.empty() || std::find(walk.begin(), walk.end(), next) != walk.end()) break;
        prev = cur;
        walk.push_back(next);
    }
    // orient clockwise: the second cone lies clockwise of the first as seen from the ray
    const Z2 r = f.points[ray];
    auto centroid = [&](const std::string& v) {
        Q2 s{0, 0};
        for (auto idx : f.cones.at(v)) {
            s[0] += Q(f.points[idx][0] - r[0]);
            s[1] += Q(f.points[idx][1] - r[1]);
        }
        return s;
    };
    if (walk.size() >= 2 && sgn(cross(centroid(walk[0]), centroid(walk[1]))) > 0) {
        if (rc.cycle) std::reverse(walk.begin() + 1, walk.end());
        else std::reverse(walk.begin(), walk.end());
    }
    rc.order = walk;
    for (auto& [v, list] : nb)
        for (auto& [w, e] : list) rc.edge[{v, w}] = e;
    return rc;
}

std::vector<Q> candidate_amounts(const Q& bound)
{
    static const std::vector<Q> fracs{Q(0), Q(1, 4), Q(1, 3), Q(1, 2), Q(2, 3), Q(3, 4)};
    std::vector<Q> out;
    for (long n = 0; Q(n) <= bound; ++n)
        for (auto& fr : fracs) {
            Q q = Q(n) + fr;
            q.canonicalize();
            if (sgn(q) > 0) out.push_back(q);
        }
    return out;
}

} // namespace

Covering covering_collection(const Curve& c, DeformKind kind)
{
    Fan f = dual_fan(c);
    Covering cov;
    std::map<std::string, std::vector<std::size_t>> at;
    auto add = [&](const Chart& ch) {
        at[ch.vertex].push_back(cov.charts.size());
        cov.charts.push_back(ch);
    };
    for (auto& v : c.vertices)
        if (c.touches_infinite(v.id)) add(undeformed_chart(c, v.id));

    Q bound = 8;
    for (auto& e : c.edges) bound += 2 * e.area;
    for (auto& v : c.vertices)
        for (auto& o : undeformed_offsets(c, v.id)) bound += abs(o);
    const auto amounts = candidate_amounts(bound);

    auto stratum_ok = [&](const Certificate& cert, const std::string& edge) {
        for (auto& s : cert.strata)
            if (s.edge == edge) return s.covered;
        return false;
    };
    auto no_triples = [](const Certificate& cert) {
        for (auto& s : cert.strata)
            for (auto& p : s.problems)
                if (p.rfind("triple", 0) == 0) return false;
        return true;
    };

    // interior rays, then boundary rays, then corners; lexicographic inside each group
    std::vector<std::size_t> rays(f.points.size());
    std::iota(rays.begin(), rays.end(), 0);
    auto group = [&](std::size_t i) { return f.interior[i] ? 0 : (f.extremal(i) ? 2 : 1); };
    std::stable_sort(rays.begin(), rays.end(), [&](std::size_t a, std::size_t b) {
        if (group(a) != group(b)) return group(a) < group(b);
        return f.points[a] < f.points[b];
    });

    auto extend = [&](std::size_t ray, const RayCones& rc, const std::string& pred, const std::string& cur) {
        std::size_t ei = rc.edge.at({pred, cur});
        const auto& e = c.edges[ei];
        if (stratum_ok(certify_covering(c, cov.charts), e.id)) return;
        const auto& mine = at[cur];
        if (mine.size() >= 2)
            throw std::runtime_error("covering failed at ray " + f.face_id(ray) + ": vertex " + cur +
                                     " already carries two charts and edge " + e.id + " is still uncovered");
        Chart base = mine.empty() ? undeformed_chart(c, cur) : cov.charts[mine.front()];
        int slot = c.slot(cur, ei);
        std::string toward = at[pred].empty() ? pred : cov.charts[at[pred].back()].id;
        for (auto& h : amounts) {
            Chart cand = deform(base, slot, h, kind);
            auto trial = cov.charts;
            trial.push_back(cand);
            Certificate cert = certify_covering(c, trial);
            if (!stratum_ok(cert, e.id) || !no_triples(cert)) continue;
            cov.steps.push_back({f.face_id(ray), cand.id, toward, e.id, h, deformation_shift(c, f, base, slot, ray, kind)});
            add(cand);
            return;
        }
        throw std::runtime_error("covering failed at ray " + f.face_id(ray) + ": no admissible deformation of " + base.id +
                                 " toward " + toward);
    };

    std::set<std::size_t> done;
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t ray : rays) {
            if (done.count(ray)) continue;
            RayCones rc = cones_around(c, f, ray);
            const auto& L = rc.order;
            auto has = [&](const std::string& v) { return !at[v].empty(); };
            auto first = std::find_if(L.begin(), L.end(), has);
            if (first == L.end()) continue;
            std::size_t i0 = first - L.begin();
            const std::size_t k = L.size();
            if (rc.cycle) {
                for (std::size_t i = 1; i <= k; ++i) extend(ray, rc, L[(i0 + i - 1) % k], L[(i0 + i) % k]);
            } else {
                for (std::size_t i = i0 + 1; i < k; ++i) extend(ray, rc, L[i - 1], L[i]);
                for (std::size_t i = i0; i-- > 0;) extend(ray, rc, L[i + 1], L[i]);
            }
            done.insert(ray);
            progress = true;
            break; // restart in priority order
        }
    }
    cov.certificate = certify_covering(c, cov.charts);
    if (!cov.certificate.ok()) {
        std::string msg = "covering certificate failed:";
        for (auto& m : cov.certificate.failures) msg += "\n  " + m;
        throw std::runtime_error(msg);
    }
    return cov;
}

std::string render_svg(const Curve& c, const Fan& f, const std::vector<Chart>& charts, std::optional<std::size_t> face)
{
    // three panels: curve, dual triangulation, projected valuation cones
    const double W = 300, H = 300, pad = 20;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 3 * W << "\" height=\"" << H << "\">\n";
    out << "<style>text{font:10px sans-serif}</style>\n";

    auto panel = [&](int idx, const std::vector<std::array<double, 2>>& pts, auto&& draw) {
        double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
        for (auto& p : pts) {
            x0 = std::min(x0, p[0]);
            x1 = std::max(x1, p[0]);
            y0 = std::min(y0, p[1]);
            y1 = std::max(y1, p[1]);
        }
        double span = std::max({x1 - x0, y1 - y0, 1.0});
        double sc = (W - 2 * pad) / span;
        auto map = [=](double x, double y) {
            return std::array<double, 2>{idx * W + pad + (x - x0) * sc, H - pad - (y - y0) * sc};
        };
        out << "<g>\n";
        draw(map);
        out << "</g>\n";
    };
    auto line = [&](std::array<double, 2> a, std::array<double, 2> b, const char* colour) {
        out << "<line x1=\"" << a[0] << "\" y1=\"" << a[1] << "\" x2=\"" << b[0] << "\" y2=\"" << b[1] << "\" stroke=\""
            << colour << "\"/>\n";
    };
    auto label = [&](std::array<double, 2> a, const std::string& t) {
        out << "<text x=\"" << a[0] + 3 << "\" y=\"" << a[1] - 3 << "\">" << t << "</text>\n";
    };

    // curve with infinite edges drawn at a fixed length
    std::vector<std::array<double, 2>> cp;
    double reach = 1;
    for (auto& e : c.edges) reach = std::max(reach, e.length.get_d());
    for (auto& v : c.vertices) cp.push_back({v.pos[0].get_d(), v.pos[1].get_d()});
    for (auto& e : c.edges)
        if (!e.finite()) {
            auto p = c.vertex(e.ends[0]).pos;
            cp.push_back({p[0].get_d() + reach * e.dir[0][0], p[1].get_d() + reach * e.dir[0][1]});
        }
    panel(0, cp, [&](auto map) {
        for (auto& e : c.edges) {
            auto p = c.vertex(e.ends[0]).pos;
            std::array<double, 2> a{p[0].get_d(), p[1].get_d()}, b;
            if (e.finite()) {
                auto q = c.vertex(e.ends[1]).pos;
                b = {q[0].get_d(), q[1].get_d()};
            } else {
                b = {a[0] + reach * e.dir[0][0], a[1] + reach * e.dir[0][1]};
            }
            line(map(a[0], a[1]), map(b[0], b[1]), "black");
        }
        for (auto& v : c.vertices) label(map(v.pos[0].get_d(), v.pos[1].get_d()), v.id);
    });

    std::vector<std::array<double, 2>> fp;
    for (auto& p : f.points) fp.push_back({double(p[0]), double(p[1])});
    panel(1, fp, [&](auto map) {
        for (auto& [v, cone] : f.cones)
            for (int s = 0; s < 3; ++s) {
                auto a = f.points[cone[s]], b = f.points[cone[(s + 1) % 3]];
                line(map(a[0], a[1]), map(b[0], b[1]), "gray");
            }
        for (std::size_t i = 0; i < f.points.size(); ++i) label(map(f.points[i][0], f.points[i][1]), f.face_id(i));
    });

    if (face && !charts.empty()) {
        std::vector<ConeImage> imgs;
        std::vector<std::array<double, 2>> pts;
        for (auto& ch : charts) {
            imgs.push_back(cone_image(c, f, ch, *face));
            pts.push_back({imgs.back().apex[0].get_d(), imgs.back().apex[1].get_d()});
        }
        double ext = 1;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = 0; j < pts.size(); ++j)
                ext = std::max({ext, std::abs(pts[i][0] - pts[j][0]), std::abs(pts[i][1] - pts[j][1])});
        auto box = pts;
        for (auto& p : pts) {
            box.push_back({p[0] + ext / 2, p[1] + ext / 2});
            box.push_back({p[0] - ext / 2, p[1] - ext / 2});
        }
        panel(2, box, [&](auto map) {
            for (std::size_t i = 0; i < imgs.size(); ++i) {
                auto a = pts[i];
                for (auto& r : imgs[i].rays) {
                    double rx = r[0].get_d(), ry = r[1].get_d();
                    double n = std::max(std::abs(rx), std::abs(ry));
                    line(map(a[0], a[1]), map(a[0] + ext / 2 * rx / n, a[1] + ext / 2 * ry / n), "steelblue");
                }
                label(map(a[0], a[1]), charts[i].id);
            }
        });
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace mg
