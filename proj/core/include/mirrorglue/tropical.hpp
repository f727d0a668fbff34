#pragma once

#include "mirrorglue/lpoly.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mg {

using Z2 = std::array<long, 2>;
using Z3 = std::array<long, 3>;
using Q2 = std::array<Q, 2>;
using Q3 = std::array<Q, 3>;

struct CurveVertex {
    std::string id;
    Q2 pos;
};

struct CurveEdge {
    std::string id;
    std::vector<std::string> ends; // one vertex for an infinite edge
    std::vector<Z2> dir;           // outgoing primitive direction at each end
    int a1 = 0;
    std::optional<int> a2_given; // pins a2 and so overrides the twist read off the fan
    std::optional<Q> a_y, a_z;   // immersed-mode area split override

    // derived for finite edges
    Q length = 0; // p2 - p1 = length * dir[0]
    Q area = 0;   // length * |dir|^2
    int d_fan = 0;
    int d = 0; // a2 - a1 actually used

    bool finite() const { return ends.size() == 2; }
    int a2() const { return a1 + d; }
};

struct Curve {
    std::string name, note;
    std::vector<CurveVertex> vertices;
    std::vector<CurveEdge> edges;
    // per vertex: its three edge indices in counterclockwise order, starting at the first listed
    std::map<std::string, std::array<std::size_t, 3>> incident;
    std::vector<std::string> warnings;

    const CurveVertex& vertex(const std::string& id) const;
    const CurveEdge& edge(const std::string& id) const;
    std::size_t edge_index(const std::string& id) const;
    // slot (0,1,2 for x,y,z) of an edge at one of its end vertices
    int slot(const std::string& vertex, std::size_t edge) const;
    Z2 direction(const std::string& vertex, int slot) const;
    bool touches_infinite(const std::string& vertex) const;
};

struct CurveError : std::runtime_error {
    std::vector<std::string> issues;
    explicit CurveError(std::vector<std::string> issues);
};

Curve parse_curve(const std::string& json_text);
Curve load_curve(const std::string& path);
std::string curve_dir();
Curve load_shipped_curve(const std::string& name);

struct Fan {
    std::vector<Z2> points; // lattice points of the polygon, translated
    std::vector<bool> interior;
    std::vector<Z2> hull; // polygon corners, counterclockwise
    std::vector<Z3> rays; // (p, 1)
    // per vertex: ray index opposite each slot, so slot i <-> rays[cone[i]]
    std::map<std::string, std::array<std::size_t, 3>> cones;
    // per vertex: character of each slot variable, <m_i, ray_j> = delta_ij
    std::map<std::string, std::array<Z3, 3>> characters;

    std::size_t point_index(const Z2& p) const;
    std::string face_id(std::size_t point) const;
    std::size_t face(const std::string& id) const;
    bool extremal(std::size_t point) const;
};

// throws CurveError when the directions do not assemble into a unimodular triangulation
Fan dual_fan(const Curve& c);

enum class DeformKind { Tilde, Prime };

struct Deformation {
    int slot = 0;
    Q amount = 0;
    DeformKind kind = DeformKind::Tilde;
};

struct Chart {
    std::string id;
    std::string vertex;
    std::vector<Deformation> deformations;
    Q3 offsets; // x_ex = T^{offset} x for the chart's own variables
};

std::array<std::string, 3> chart_vars(const Curve& c, const std::string& vertex, bool exact);
Q3 undeformed_offsets(const Curve& c, const std::string& vertex);
Chart undeformed_chart(const Curve& c, const std::string& vertex);
Chart deform(const Chart& ch, int slot, const Q& amount, DeformKind kind = DeformKind::Tilde);
Q exact_offset(const Curve& c, const Chart& ch, const std::string& var);

// immersed variable <- T^{-offset} * exact variable
MonomialMap to_exact(const Curve& c, const Chart& ch);

// variables of the second end in terms of the first end's; `reversed` swaps the roles
MonomialMap transition_map(const Curve& c, const std::string& edge, bool exact, bool reversed = false);
// the same map read off the fan characters
MonomialMap toric_transition(const Curve& c, const Fan& f, const std::string& edge, bool reversed = false);

LaurentPoly chart_potential(const Curve& c, const std::string& vertex, bool exact);

struct CycleReport {
    std::vector<std::string> vertices; // closed walk, first repeated at the end
    std::vector<std::string> edges;
    MonomialMap composed;
    bool ok = false;
};
struct CocycleReport {
    std::vector<CycleReport> cycles;
    bool ok() const;
};
CocycleReport cocycle_check(const Curve& c, bool exact = true);

struct PotentialReport {
    std::vector<std::pair<std::string, bool>> edges;
    bool ok() const;
};
PotentialReport global_potential_check(const Curve& c, bool exact = true);

struct ConeImage {
    Q2 apex;
    std::vector<Q2> rays; // two generators when pointed
    bool pointed = true;
};
// valuation cone of the chart projected along the ray of the face
ConeImage cone_image(const Curve& c, const Fan& f, const Chart& ch, std::size_t face);
// projected apex translation per unit amount of one deformation
Q2 deformation_shift(const Curve& c, const Fan& f, const Chart& base, int slot, std::size_t face,
                     DeformKind kind = DeformKind::Tilde);

// Near the critical locus a chart contains a point of the edge stratum iff one
// valuation inequality holds, so each stratum is an exact interval problem in
// s = val of the edge variable at the first end.
struct StratumPiece {
    std::string chart;
    Interval range;
};
struct StratumCover {
    std::string edge;
    bool finite = true;
    std::vector<StratumPiece> pieces;
    bool covered = false;
    std::vector<std::string> problems; // uncovered gaps, triple overlaps
};
struct Certificate {
    std::vector<StratumCover> strata;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};
Certificate certify_covering(const Curve& c, const std::vector<Chart>& charts);

struct CoveringStep {
    std::string ray;  // face id of the ray processed
    std::string chart;
    std::string toward;
    std::string edge;
    Q amount;
    Q2 shift; // projected along the processed ray
};
struct Covering {
    std::vector<Chart> charts;
    std::vector<CoveringStep> steps;
    Certificate certificate;
};
// throws std::runtime_error naming the ray when no admissible amount exists
Covering covering_collection(const Curve& c, DeformKind kind = DeformKind::Tilde);

std::string render_svg(const Curve& c, const Fan& f, const std::vector<Chart>& charts, std::optional<std::size_t> face);

} // namespace mg
