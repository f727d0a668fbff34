#pragma once

#include "mirrorglue/ainf.hpp"
#include "mirrorglue/tropical.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mg {

// free Z/2-graded module over the chart ring with an odd endomorphism
struct MatrixFactorization {
    std::string name;
    std::vector<std::string> vars;
    bool exact = false; // C-valued coefficients only
    std::vector<std::string> even, odd;
    std::map<std::string, Vec> delta; // generator -> image
    LaurentPoly W;

    bool is_odd(const std::string& g) const;
    std::vector<std::string> generators() const; // even first
    Vec apply(const Vec& v) const;
    std::string str() const; // one "g -> image" line per generator
};

struct MFCheck {
    bool ok = false;
    std::map<std::string, Vec> residual; // delta^2(g) - W g, nonzero entries only
};
MFCheck check_mf(const MatrixFactorization& mf);

// delta = -m1^{0,b} on Hom(object, reference)
MatrixFactorization transform_object(const AInfInstance& inst, const std::string& object, const std::string& reference,
                                     const std::string& deformation);

// strip table of a Lagrangian winding m times against the deformed Seidel chart S1 (generators C_i, D_i, i = 0..2m)
Model mf_s1_model(int m);
// reference model for the morphism tables: one chart S, a path L around a face, its rewound copy and two neighbours
Model load_morphism_model();

struct CyclicSummand {
    std::string label;                // surviving even generator
    std::vector<LaurentPoly> ideal;   // generators of I in R/I, normalized to unit leading coefficient
    bool trivial = false;             // I is generated by the product of all chart variables
};
struct DSingClass {
    std::vector<CyclicSummand> summands;
    // eliminated even generators expressed through the remaining ones
    std::vector<std::pair<std::string, Vec>> eliminated;
    std::vector<std::string> vars;

    // rewrite an even vector in the surviving basis, reduced modulo each summand's ideal
    Vec reduce(const Vec& v, bool drop_trivial) const;
    std::string str() const;
};
// throws std::runtime_error when the presentation does not reduce to cyclic summands by unit pivots and column clearing
DSingClass cokernel_dsing(const MatrixFactorization& mf);

struct MFMorphism {
    std::string name;
    int parity = 0;
    std::map<std::string, Vec> map; // source generator -> image in target generators
    Vec apply(const Vec& v) const;
    std::string str() const;
};
// delta_t phi - (-1)^|phi| phi delta_s, nonzero entries only
std::map<std::string, Vec> chain_residual(const MFMorphism& phi, const MatrixFactorization& src,
                                          const MatrixFactorization& tgt);
MFMorphism compose(const MFMorphism& f, const MFMorphism& g); // f after g

// Floer morphism p in Hom(L0, L1) acts as Hom(L1, S) -> Hom(L0, S), a -> sum m(p, a, b, ..., b)
MFMorphism transform_morphism(const AInfInstance& inst, const std::string& name, const Vec& morphism,
                              const MatrixFactorization& src, const MatrixFactorization& tgt,
                              const std::string& deformation);

// phi equals c*psi for a unit sign c, or phi - c*psi is null-homotopic as a multiple of the identity
struct Comparison {
    bool ok = false;
    int sign = 0;
    bool homotopic = false;
    std::string detail;
};
Comparison compare_up_to_sign(const MFMorphism& phi, const MFMorphism& psi, const MatrixFactorization& mf);

struct CompositionReport {
    int i = 0, j = 0;
    Comparison cmp;
    std::string product; // m2(P_i, P_j) on the Floer side
};
CompositionReport composition_check(const AInfInstance& inst, int i, int j);

// images of P_i under the functor on the path's chart
MFMorphism path_morphism(const AInfInstance& inst, int i);
MatrixFactorization path_mf(const AInfInstance& inst, const std::string& object);

// Gluing of the S1 and S2 matrix factorizations across one finite edge, in exact variables
struct EdgeGluing {
    int m = 0, a1 = 0, a2 = 0;
    MatrixFactorization s1, s2; // s2 rewritten in the variables of s1 through the coordinate change
    MFMorphism phi;             // s2 -> s1
    std::map<std::string, Vec> residual;
    std::optional<int> section_order; // exponent of x1 in the image of B on D_0, when it is a pure power
    std::string trace;
};
EdgeGluing glue_edge(int m, int a1, int a2);

struct DivisorTerm {
    std::string edge;
    std::string component; // D_f meets the divisor of this lattice point
    int a2 = 0, m = 0, n = 0;
    int coefficient = 0;
    bool traced = false; // read off the glued cokernel rather than the formula
};
struct DivisorLineBundle {
    std::string face;
    std::vector<DivisorTerm> terms;
    std::optional<int> twist; // k when m^e = k n^e - a2^e on every edge
    bool structure_sheaf() const { return terms.empty(); }
    std::string str() const;
};
// windings and a1 overrides keyed by edge id; missing windings count as zero
DivisorLineBundle glue_objects(const Curve& c, const std::string& face, const std::map<std::string, int>& windings,
                               const std::map<std::string, int>& a1 = {});

} // namespace mg
