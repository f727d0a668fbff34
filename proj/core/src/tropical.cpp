#include "mirrorglue/tropical.hpp"
#include "mirrorglue/data.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace mg {

using nlohmann::json;

namespace {

long cross(const Z2& a, const Z2& b) { return a[0] * b[1] - a[1] * b[0]; }
long dot(const Z2& a, const Z2& b) { return a[0] * b[0] + a[1] * b[1]; }
Q dot(const Z2& a, const Q2& p) { return Q(a[0]) * p[0] + Q(a[1]) * p[1]; }

std::string str(const Z2& v) { return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + ")"; }

// counterclockwise angle order starting from the positive x axis
bool angle_less(const Z2& a, const Z2& b)
{
    auto half = [](const Z2& v) { return v[1] < 0 || (v[1] == 0 && v[0] < 0); };
    if (half(a) != half(b)) return !half(a);
    return cross(a, b) > 0;
}

Q json_q(const json& j)
{
    if (j.is_string()) return parse_q(j.get<std::string>());
    if (j.is_number_integer()) return Q(j.get<long>());
    throw std::invalid_argument("expected an integer or a rational string, got " + j.dump());
}

// pairing at the far end: the direction differing from the near y by a multiple of the edge
struct EdgeFrame {
    std::string v1, v2;
    int x1, y1, z1; // slots at v1
    int x2, y2, z2; // slots at v2, y2 paired with y1
    Z2 vx;          // edge direction at v1
    int d_fan;
};

EdgeFrame frame(const Curve& c, std::size_t ei, bool reversed)
{
    const auto& e = c.edges[ei];
    EdgeFrame f;
    f.v1 = e.ends[reversed ? 1 : 0];
    f.v2 = e.ends[reversed ? 0 : 1];
    f.x1 = c.slot(f.v1, ei);
    f.y1 = (f.x1 + 1) % 3;
    f.z1 = (f.x1 + 2) % 3;
    f.x2 = c.slot(f.v2, ei);
    f.vx = c.direction(f.v1, f.x1);
    Z2 vy1 = c.direction(f.v1, f.y1);
    f.y2 = -1;
    for (int s = 0; s < 3; ++s)
        if (s != f.x2 && cross(f.vx, c.direction(f.v2, s)) == cross(f.vx, vy1)) f.y2 = s;
    if (f.y2 < 0) throw std::logic_error("no paired direction across edge " + e.id);
    f.z2 = 3 - f.x2 - f.y2;
    Z2 vy2 = c.direction(f.v2, f.y2);
    Z2 diff{vy1[0] - vy2[0], vy1[1] - vy2[1]};
    long n2 = dot(f.vx, f.vx);
    long k = dot(diff, f.vx);
    if (cross(diff, f.vx) != 0 || k % n2 != 0) throw std::logic_error("paired directions not related along edge " + e.id);
    f.d_fan = static_cast<int>(-k / n2 - 2);
    return f;
}

} // namespace

CurveError::CurveError(std::vector<std::string> is)
    : std::runtime_error([&] {
          std::string m = "invalid tropical curve:";
          for (auto& i : is) m += "\n  " + i;
          return m;
      }()),
      issues(std::move(is))
{
}

const CurveVertex& Curve::vertex(const std::string& id) const
{
    for (auto& v : vertices)
        if (v.id == id) return v;
    throw std::invalid_argument("unknown vertex " + id);
}

std::size_t Curve::edge_index(const std::string& id) const
{
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].id == id) return i;
    throw std::invalid_argument("unknown edge " + id);
}

const CurveEdge& Curve::edge(const std::string& id) const { return edges[edge_index(id)]; }

int Curve::slot(const std::string& v, std::size_t e) const
{
    const auto& inc = incident.at(v);
    for (int s = 0; s < 3; ++s)
        if (inc[s] == e) return s;
    throw std::invalid_argument("edge " + edges[e].id + " does not meet vertex " + v);
}

Z2 Curve::direction(const std::string& v, int s) const
{
    const auto& e = edges[incident.at(v)[s]];
    for (std::size_t k = 0; k < e.ends.size(); ++k)
        if (e.ends[k] == v) return e.dir[k];
    throw std::logic_error("broken incidence at " + v);
}

bool Curve::touches_infinite(const std::string& v) const
{
    const auto& inc = incident.at(v);
    return std::any_of(inc.begin(), inc.end(), [&](std::size_t e) { return !edges[e].finite(); });
}

Curve parse_curve(const std::string& text)
{
    json j = json::parse(text);
    Curve c;
    std::vector<std::string> issues;
    c.name = j.value("name", std::string("curve"));
    c.note = j.value("note", "");

    std::set<std::string> ids;
    for (auto& v : j.at("vertices")) {
        CurveVertex cv;
        cv.id = v.at("id").get<std::string>();
        auto p = v.at("pos");
        if (!p.is_array() || p.size() != 2) {
            issues.push_back("vertex " + cv.id + ": pos must have two entries");
            continue;
        }
        cv.pos = {json_q(p[0]), json_q(p[1])};
        if (!ids.insert(cv.id).second) issues.push_back("duplicate vertex id " + cv.id);
        c.vertices.push_back(cv);
    }

    std::map<std::string, std::vector<std::size_t>> inc;
    std::set<std::string> eids;
    for (auto& e : j.at("edges")) {
        CurveEdge ce;
        ce.id = e.at("id").get<std::string>();
        if (!eids.insert(ce.id).second) issues.push_back("duplicate edge id " + ce.id);
        ce.ends = e.at("ends").get<std::vector<std::string>>();
        for (auto& d : e.at("dir")) ce.dir.push_back({d.at(0).get<long>(), d.at(1).get<long>()});
        ce.a1 = e.value("a1", 0);
        if (e.contains("a2")) ce.a2_given = e["a2"].get<int>();
        if (e.contains("A_y")) ce.a_y = json_q(e["A_y"]);
        if (e.contains("A_z")) ce.a_z = json_q(e["A_z"]);
        const std::string where = "edge " + ce.id + ": ";
        if (ce.ends.empty() || ce.ends.size() > 2) {
            issues.push_back(where + "needs one or two end vertices");
            continue;
        }
        if (ce.dir.size() != ce.ends.size()) {
            issues.push_back(where + "one direction per end is required");
            continue;
        }
        bool bad = false;
        for (auto& end : ce.ends)
            if (!ids.count(end)) {
                issues.push_back(where + "unknown vertex " + end);
                bad = true;
            }
        for (auto& d : ce.dir)
            if (std::gcd(d[0], d[1]) != 1) {
                issues.push_back(where + "direction " + str(d) + " is not primitive");
                bad = true;
            }
        if (ce.finite() && ce.ends[0] == ce.ends[1]) {
            issues.push_back(where + "loops are not allowed");
            bad = true;
        }
        if (bad) continue;
        if (ce.finite()) {
            if (ce.dir[1][0] != -ce.dir[0][0] || ce.dir[1][1] != -ce.dir[0][1])
                issues.push_back(where + "end directions are not opposite");
            const Q2 p1 = c.vertex(ce.ends[0]).pos, p2 = c.vertex(ce.ends[1]).pos;
            Q dx = p2[0] - p1[0], dy = p2[1] - p1[1];
            const Z2 v = ce.dir[0];
            if (sgn(dx * v[1] - dy * v[0]) != 0) issues.push_back(where + "vertex positions do not lie along " + str(v));
            else {
                ce.length = (dx * v[0] + dy * v[1]) / dot(v, v);
                if (sgn(ce.length) <= 0) issues.push_back(where + "direction " + str(v) + " points away from the other end");
                ce.area = ce.length * dot(v, v);
            }
        } else if (ce.a2_given || ce.a_y || ce.a_z) {
            issues.push_back(where + "gauge and area data only make sense on finite edges");
        }
        for (auto& end : ce.ends) inc[end].push_back(c.edges.size());
        c.edges.push_back(ce);
    }

    for (auto& v : c.vertices) {
        auto& list = inc[v.id];
        if (list.size() != 3) {
            issues.push_back("vertex " + v.id + ": " + std::to_string(list.size()) + " edges, trivalent required");
            continue;
        }
        std::array<Z2, 3> d;
        for (int s = 0; s < 3; ++s) {
            const auto& e = c.edges[list[s]];
            d[s] = e.dir[e.ends[0] == v.id ? 0 : 1];
        }
        Z2 sum{d[0][0] + d[1][0] + d[2][0], d[0][1] + d[1][1] + d[2][1]};
        if (sum[0] || sum[1]) {
            issues.push_back("vertex " + v.id + ": directions sum to " + str(sum) + ", not balanced");
            continue;
        }
        std::array<int, 3> order{0, 1, 2};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return angle_less(d[a], d[b]); });
        while (order[0] != 0) std::rotate(order.begin(), order.begin() + 1, order.end());
        std::array<std::size_t, 3> slots;
        for (int s = 0; s < 3; ++s) slots[s] = list[order[s]];
        c.incident[v.id] = slots;
        for (int s = 0; s < 3; ++s)
            if (cross(d[order[s]], d[order[(s + 1) % 3]]) != 1) {
                issues.push_back("vertex " + v.id + ": directions " + str(d[order[s]]) + "," + str(d[order[(s + 1) % 3]]) +
                                 " do not span a unimodular dual triangle");
                break;
            }
        for (std::size_t k = 0; k < 3; ++k) {
            const auto& e = c.edges[list[k]];
            if (!e.finite() && sgn(dot(d[k], v.pos)) < 0)
                issues.push_back("edge " + e.id + ": (v,p) = " + to_string(dot(d[k], v.pos)) + " < 0 at vertex " + v.id);
        }
    }
    if (!issues.empty()) throw CurveError(issues);

    for (std::size_t i = 0; i < c.edges.size(); ++i) {
        auto& e = c.edges[i];
        if (!e.finite()) continue;
        EdgeFrame f = frame(c, i, false);
        e.d_fan = f.d_fan;
        e.d = e.a2_given ? *e.a2_given - e.a1 : e.d_fan;
        if (e.d != e.d_fan)
            c.warnings.push_back("edge " + e.id + ": a2 - a1 = " + std::to_string(e.d) + " but the fan needs " +
                                 std::to_string(e.d_fan));
        if (e.a_y || e.a_z) {
            Q ay = e.a_y ? *e.a_y : e.area - *e.a_z;
            Q az = e.a_z ? *e.a_z : e.area - ay;
            if (ay + az != e.area) issues.push_back("edge " + e.id + ": A_y + A_z must equal the area " + to_string(e.area));
            e.a_y = ay;
            e.a_z = az;
        }
    }
    if (!issues.empty()) throw CurveError(issues);
    dual_fan(c); // throws on a non-dual triangulation
    return c;
}

Curve load_curve(const std::string& path) { return parse_curve(read_file(path)); }
std::string curve_dir() { return data_dir() + "/curves"; }
Curve load_shipped_curve(const std::string& name) { return load_curve(curve_dir() + "/" + name + ".json"); }

std::size_t Fan::point_index(const Z2& p) const
{
    auto it = std::find(points.begin(), points.end(), p);
    if (it == points.end()) throw std::invalid_argument("lattice point " + str(p) + " not in the polygon");
    return it - points.begin();
}

std::string Fan::face_id(std::size_t i) const { return str(points.at(i)); }

std::size_t Fan::face(const std::string& id) const
{
    for (std::size_t i = 0; i < points.size(); ++i)
        if (face_id(i) == id) return i;
    throw std::invalid_argument("no face " + id);
}

bool Fan::extremal(std::size_t i) const { return std::find(hull.begin(), hull.end(), points[i]) != hull.end(); }

Fan dual_fan(const Curve& c)
{
    std::vector<std::string> issues;
    // triangle corners: Q_{s+1} = Q_s + rot(v_s), rot turning clockwise
    std::map<std::string, std::array<Z2, 3>> tri;
    auto rot = [](const Z2& v) { return Z2{v[1], -v[0]}; };
    auto place = [&](const std::string& v, int s, const Z2& qs) {
        std::array<Z2, 3> t;
        t[s] = qs;
        for (int k = 1; k < 3; ++k) {
            int prev = (s + k - 1) % 3;
            Z2 r = rot(c.direction(v, prev));
            t[(s + k) % 3] = {t[prev][0] + r[0], t[prev][1] + r[1]};
        }
        return t;
    };
    for (auto& root : c.vertices) {
        if (tri.count(root.id)) continue;
        if (!tri.empty()) {
            issues.push_back("curve is not connected");
            break;
        }
        tri[root.id] = place(root.id, 0, {0, 0});
        std::deque<std::string> queue{root.id};
        while (!queue.empty()) {
            std::string v = queue.front();
            queue.pop_front();
            for (int s = 0; s < 3; ++s) {
                std::size_t ei = c.incident.at(v)[s];
                const auto& e = c.edges[ei];
                if (!e.finite()) continue;
                std::string w = e.ends[0] == v ? e.ends[1] : e.ends[0];
                int sw = c.slot(w, ei);
                // the shared segment Q_s -> Q_{s+1} is traversed backwards from w
                auto t = place(w, sw, tri[v][(s + 1) % 3]);
                if (!tri.count(w)) {
                    tri[w] = t;
                    queue.push_back(w);
                } else if (tri[w] != t) {
                    issues.push_back("dual triangles disagree across edge " + e.id);
                }
            }
        }
    }
    if (!issues.empty()) throw CurveError(issues);

    std::vector<Z2> pts;
    for (auto& [v, t] : tri)
        for (auto& p : t)
            if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    std::sort(pts.begin(), pts.end());

    // convex hull corners, counterclockwise
    std::vector<Z2> hull;
    auto turn = [](const Z2& o, const Z2& a, const Z2& b) { return cross({a[0] - o[0], a[1] - o[1]}, {b[0] - o[0], b[1] - o[1]}); };
    for (int pass = 0; pass < 2; ++pass) {
        std::size_t base = hull.size();
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const Z2& p = pass == 0 ? pts[k] : pts[pts.size() - 1 - k];
            while (hull.size() >= base + 2 && turn(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
            hull.push_back(p);
        }
        hull.pop_back();
    }
    long twice_hull = 0;
    for (std::size_t k = 0; k < hull.size(); ++k) twice_hull += cross(hull[k], hull[(k + 1) % hull.size()]);
    long twice_tris = 0;
    for (auto& [v, t] : tri) twice_tris += std::abs(turn(t[0], t[1], t[2]));
    if (twice_hull != twice_tris)
        throw CurveError({"dual triangles overlap or leave holes: total area " + std::to_string(twice_tris) + "/2 vs hull " +
                          std::to_string(twice_hull) + "/2"});

    auto strictly_inside = [&](const Z2& p) {
        for (std::size_t k = 0; k < hull.size(); ++k)
            if (turn(hull[k], hull[(k + 1) % hull.size()], p) <= 0) return false;
        return true;
    };
    Z2 origin = pts.front();
    for (auto& p : pts)
        if (strictly_inside(p)) {
            origin = p;
            break;
        }

    Fan f;
    for (auto& p : pts) {
        f.interior.push_back(strictly_inside(p));
        f.points.push_back({p[0] - origin[0], p[1] - origin[1]});
        f.rays.push_back({p[0] - origin[0], p[1] - origin[1], 1});
    }
    for (auto& h : hull) f.hull.push_back({h[0] - origin[0], h[1] - origin[1]});
    for (auto& [v, t] : tri) {
        std::array<std::size_t, 3> cone;
        for (int s = 0; s < 3; ++s) {
            const Z2& q = t[(s + 2) % 3];
            cone[s] = f.point_index({q[0] - origin[0], q[1] - origin[1]});
        }
        f.cones[v] = cone;
        // dual basis of the three rays, integral since the cone is unimodular
        std::array<Z3, 3> r;
        for (int s = 0; s < 3; ++s) r[s] = f.rays[cone[s]];
        auto det3 = [](const std::array<Z3, 3>& m) {
            return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                   m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        };
        long det = det3(r);
        if (std::abs(det) != 1) throw std::logic_error("non-unimodular cone at " + v);
        std::array<Z3, 3> m;
        for (int i = 0; i < 3; ++i) {
            // m_i = (r_{i+1} x r_{i+2}) / det
            const Z3& a = r[(i + 1) % 3];
            const Z3& b = r[(i + 2) % 3];
            Z3 cr{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
            for (int k = 0; k < 3; ++k) m[i][k] = cr[k] / det;
        }
        f.characters[v] = m;
    }
    return f;
}

std::array<std::string, 3> chart_vars(const Curve& c, const std::string& v, bool exact)
{
    (void)c.vertex(v);
    const std::string suffix = exact ? "_ex" : "";
    return {"x_" + v + suffix, "y_" + v + suffix, "z_" + v + suffix};
}

namespace {

std::vector<std::string> vec(const std::array<std::string, 3>& a) { return {a.begin(), a.end()}; }

} // namespace

MonomialMap transition_map(const Curve& c, const std::string& edge, bool exact, bool reversed)
{
    std::size_t ei = c.edge_index(edge);
    const auto& e = c.edges[ei];
    if (!e.finite()) throw std::invalid_argument("edge " + edge + " is infinite, no transition");
    // explicit areas or a pinned twist leave no geometric reverse frame to read, so invert
    if (!exact && reversed && (e.a_y || e.a_z || e.d != e.d_fan)) return transition_map(c, edge, false, false).inverse();

    EdgeFrame f = frame(c, ei, reversed);
    const int d = reversed ? -e.d - 2 : e.d;
    auto src = vec(chart_vars(c, f.v2, exact));
    auto tgt = vec(chart_vars(c, f.v1, exact));
    MonomialMap m(src, tgt);

    Q area = 0, ay = 0, az = 0;
    if (!exact) {
        area = e.area;
        if (e.a_y) {
            ay = *e.a_y;
            az = *e.a_z;
        } else {
            ay = e.length * dot(c.direction(f.v2, f.y2), f.vx);
            az = e.length * dot(c.direction(f.v2, f.z2), f.vx);
        }
    }
    Exps ex(3, 0), ey(3, 0), ez(3, 0);
    ex[f.x1] = -1;
    ey[f.x1] = d + 2;
    ey[f.y1] = 1;
    ez[f.x1] = -d;
    ez[f.z1] = 1;
    m.set(src[f.x2], Series::T(-area), ex);
    m.set(src[f.y2], Series::T(ay), ey);
    m.set(src[f.z2], Series::T(az), ez);
    return m;
}

MonomialMap toric_transition(const Curve& c, const Fan& fan, const std::string& edge, bool reversed)
{
    const auto& e = c.edge(edge);
    if (!e.finite()) throw std::invalid_argument("edge " + edge + " is infinite, no transition");
    const std::string v1 = e.ends[reversed ? 1 : 0], v2 = e.ends[reversed ? 0 : 1];
    auto src = vec(chart_vars(c, v2, true));
    auto tgt = vec(chart_vars(c, v1, true));
    MonomialMap m(src, tgt);
    const auto& m2 = fan.characters.at(v2);
    const auto& cone1 = fan.cones.at(v1);
    for (int i = 0; i < 3; ++i) {
        Exps ex(3);
        for (int j = 0; j < 3; ++j) {
            const Z3& r = fan.rays[cone1[j]];
            ex[j] = static_cast<int>(m2[i][0] * r[0] + m2[i][1] * r[1] + m2[i][2] * r[2]);
        }
        m.set(src[i], Series(1), ex);
    }
    return m;
}

LaurentPoly chart_potential(const Curve& c, const std::string& v, bool exact)
{
    return LaurentPoly::monomial(vec(chart_vars(c, v, exact)), {1, 1, 1});
}

bool CocycleReport::ok() const
{
    return std::all_of(cycles.begin(), cycles.end(), [](auto& r) { return r.ok; });
}

CocycleReport cocycle_check(const Curve& c, bool exact)
{
    CocycleReport rep;
    if (c.vertices.empty()) return rep;
    // spanning tree by BFS; each remaining finite edge closes one fundamental cycle
    std::map<std::string, std::pair<std::string, std::size_t>> parent; // vertex -> (parent, edge)
    std::map<std::string, int> depth;
    std::set<std::size_t> tree;
    const std::string root = c.vertices.front().id;
    depth[root] = 0;
    std::deque<std::string> queue{root};
    while (!queue.empty()) {
        std::string v = queue.front();
        queue.pop_front();
        for (std::size_t ei : c.incident.at(v)) {
            const auto& e = c.edges[ei];
            if (!e.finite()) continue;
            std::string w = e.ends[0] == v ? e.ends[1] : e.ends[0];
            if (depth.count(w)) continue;
            depth[w] = depth[v] + 1;
            parent[w] = {v, ei};
            tree.insert(ei);
            queue.push_back(w);
        }
    }
    auto step = [&](const std::string& from, std::size_t ei) {
        const auto& e = c.edges[ei];
        return transition_map(c, e.id, exact, e.ends[0] != from);
    };
    for (std::size_t ei = 0; ei < c.edges.size(); ++ei) {
        const auto& e = c.edges[ei];
        if (!e.finite() || tree.count(ei)) continue;
        // walk u -> w across e, then w up to the common ancestor and down to u
        std::string u = e.ends[0], w = e.ends[1];
        std::vector<std::pair<std::string, std::size_t>> up_w, up_u; // (vertex before step, edge)
        std::string a = w, b = u;
        std::vector<std::string> down_u;
        while (a != b) {
            if (depth[a] >= depth[b]) {
                up_w.push_back({a, parent[a].second});
                a = parent[a].first;
            } else {
                up_u.push_back({b, parent[b].second});
                b = parent[b].first;
            }
        }
        CycleReport cr;
        std::vector<std::pair<std::string, std::size_t>> walk{{u, ei}};
        walk.insert(walk.end(), up_w.begin(), up_w.end());
        for (auto it = up_u.rbegin(); it != up_u.rend(); ++it) {
            const auto& pe = c.edges[it->second];
            std::string from = pe.ends[0] == it->first ? pe.ends[1] : pe.ends[0];
            walk.push_back({from, it->second});
        }
        // maps express each next chart in the previous one; compose from the far end back
        MonomialMap comp;
        bool first = true;
        for (auto it = walk.rbegin(); it != walk.rend(); ++it) {
            MonomialMap s = step(it->first, it->second);
            comp = first ? s : comp.then(s);
            first = false;
        }
        for (auto& [v, edge] : walk) {
            cr.vertices.push_back(v);
            cr.edges.push_back(c.edges[edge].id);
        }
        cr.vertices.push_back(u);
        cr.composed = comp;
        cr.ok = comp.is_identity();
        rep.cycles.push_back(cr);
    }
    return rep;
}

bool PotentialReport::ok() const
{
    return std::all_of(edges.begin(), edges.end(), [](auto& e) { return e.second; });
}

PotentialReport global_potential_check(const Curve& c, bool exact)
{
    PotentialReport rep;
    for (auto& e : c.edges) {
        if (!e.finite()) continue;
        LaurentPoly w2 = chart_potential(c, e.ends[1], exact);
        LaurentPoly w1 = chart_potential(c, e.ends[0], exact);
        rep.edges.push_back({e.id, substitute(w2, transition_map(c, e.id, exact)) == w1});
    }
    return rep;
}

} // namespace mg
