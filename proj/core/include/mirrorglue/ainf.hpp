#pragma once

#include "mirrorglue/lpoly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace mg {

using Assignment = std::map<std::string, Q>;

// c + sum q_i * s_i over area symbols
struct LinExpr {
    Q c = 0;
    std::map<std::string, Q> terms;

    static LinExpr constant(const Q& c) { return LinExpr{c, {}}; }
    static LinExpr symbol(const std::string& s);
    // named parameters in `defs` are expanded in place
    static LinExpr parse(const std::string& text, const std::map<std::string, LinExpr>* defs = nullptr);

    Q eval(const Assignment& a) const;
    bool is_constant() const { return terms.empty(); }
    LinExpr operator+(const LinExpr& o) const;
    LinExpr operator-(const LinExpr& o) const;
    LinExpr operator*(const Q& k) const;
    bool operator==(const LinExpr& o) const { return c == o.c && terms == o.terms; }
    std::string str() const;

private:
    void prune();
};

struct Constraint {
    enum class Rel { Eq, Ge, Gt };
    LinExpr expr; // expr (rel) 0
    Rel rel = Rel::Eq;
    std::string text;

    static Constraint parse(const std::string& text, const std::map<std::string, LinExpr>* defs = nullptr);
    bool holds(const Assignment& a) const;
};

struct Generator {
    std::string name;
    std::string src, tgt; // left-to-right: a generator of Hom(src, tgt)
    int deg = 0;          // Z/2 degree
    std::optional<LinExpr> offset;
    bool open = false;       // operations landing here are not fully listed
    bool incomplete = false; // its (deformed) differential is not fully listed
    std::string note;
};

// coefficient template: "-t^{-1}*T^{k1+k2}" with area expressions inside T^{...}
struct Entry {
    std::vector<std::string> inputs;
    std::string output;
    std::string coeff = "1";
    bool spin_flip = false;    // negated when the spin structure is nontrivial
    bool sign_unknown = false; // identity asserted only up to sign
    bool open = false;         // the polygons completing relations through it are not listed
    std::string note;
};

using ElementSpec = std::map<std::string, std::string>; // generator -> coefficient template

struct Model {
    std::string name, note;
    std::vector<std::string> objects;
    std::map<std::string, std::string> units; // object -> unit generator
    std::vector<std::string> symbols;
    std::vector<Constraint> constraints;
    std::map<std::string, LinExpr> params;
    std::vector<std::string> variables; // deformation and holonomy variables
    std::vector<Generator> generators;
    std::vector<Entry> entries;
    bool nontrivial_spin = true;
    int max_insertions = 3;
    std::map<std::string, ElementSpec> deformations;
    std::map<std::string, ElementSpec> elements;
    std::map<std::string, std::string> expected;
    std::map<std::string, std::string> strings; // free-form scenario data

    const Generator& gen(const std::string& name) const;
    bool has_gen(const std::string& name) const;
    // degree bookkeeping |out|' = 1 + sum |in|'; returns violations
    std::vector<std::string> validate() const;
};

Model load_model(const std::string& path);
Model parse_model(const std::string& json_text);
std::string model_dir(); // MIRRORGLUE_MODEL_DIR, else the models directory under data_dir()
Model load_shipped_model(const std::string& name);

// random rational assignment satisfying the model constraints
Assignment sample_assignment(const Model& m, std::mt19937_64& rng, int max_tries = 20000);
// with some symbols pinned; the rest solved/sampled
Assignment sample_assignment(const Model& m, std::mt19937_64& rng, const Assignment& pinned, int max_tries = 20000);

// replace every T^{expr} in a template by T^{value}
std::string instantiate_text(const std::string& text, const Assignment& a, const std::map<std::string, LinExpr>& params);

using Vec = std::map<std::string, LaurentPoly>; // generator -> coefficient

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_scale(const Vec& a, const LaurentPoly& c);
Vec vec_clean(const Vec& a);
bool vec_is_zero(const Vec& a);
std::string vec_str(const Vec& a);
Vec vec_substitute(const Vec& a, const MonomialMap& m);

// shifted degree parity |x|' = |x| - 1 mod 2, the one place Koszul signs are computed
inline int shifted(int deg) { return ((deg - 1) % 2 + 2) % 2; }
inline int koszul_sign(int exponent) { return (exponent % 2 == 0) ? 1 : -1; }

class AInfInstance {
public:
    AInfInstance(const Model& m, Assignment a);

    const Model& model() const { return *model_; }
    const Assignment& assignment() const { return assign_; }
    const std::vector<std::string>& vars() const { return vars_; }

    Q value(const std::string& expr) const; // a LinExpr evaluated here
    LaurentPoly poly(const std::string& tmpl) const;
    Vec element(const ElementSpec& spec) const;
    Vec deformation(const std::string& name) const;
    Vec named_element(const std::string& name) const;

    int deg(const std::string& g) const { return model_->gen(g).deg; }

    // m^{b_0,...,b_k}(x_1,...,x_k); bs.size() == xs.size() + 1
    Vec mk(const std::vector<Vec>& bs, const std::vector<Vec>& xs) const;
    Vec m0(const Vec& b) const { return mk({b}, {}); }
    // basis-level version
    Vec mk_basis(const std::vector<Vec>& bs, const std::vector<std::string>& xs) const;

    struct Term {
        std::vector<std::string> inputs;
        std::string output;
        LaurentPoly coeff;
        bool sign_unknown = false;
        bool materialized_unit = false;
        bool open = false;
    };
    const std::vector<Term>& terms() const { return terms_; }

    // A-infinity relations on all tuples reachable from listed entries
    struct RelationReport {
        std::size_t tuples_checked = 0, tuples_skipped = 0;
        std::vector<std::string> failures;
        bool ok() const { return failures.empty(); }
    };
    RelationReport check_relations(std::size_t max_arity = 6) const;

private:
    const Model* model_;
    Assignment assign_;
    std::vector<std::string> vars_;
    std::vector<Term> terms_;
    std::map<std::string, std::vector<std::size_t>> by_first_; // index of terms by first input ("" for m0)
};

struct WeakMCResult {
    bool ok = false;
    LaurentPoly potential;
    std::vector<std::pair<std::string, LaurentPoly>> obstructions;
};
// m0^b = W * unit, otherwise the nonvanishing non-unit outputs
WeakMCResult weak_mc_check(const AInfInstance& inst, const std::string& object, const Vec& b);

enum class Status { Pass, Fail, Undetermined };
std::string to_string(Status s);

struct CoordinateChange {
    MonomialMap map; // solved variables <- monomials in the others
    std::vector<std::string> relations;
    std::vector<std::string> valuation_box; // val conditions for the solved variables to lie in Lambda_0
};

// solve m1^{b0,b1}(alpha) = 0 for `solve_for` in terms of the remaining variables
CoordinateChange solve_isomorphism(const AInfInstance& inst, const Vec& b0, const Vec& b1, const Vec& alpha,
                                   const std::vector<std::string>& solve_for);

struct IsoCheck {
    std::string name;
    Status status = Status::Undetermined;
    std::string detail;
};
struct IsoReport {
    std::vector<IsoCheck> checks;
    std::optional<LaurentPoly> unit_left, unit_right; // c in m2(alpha,beta) = c*1
    bool ok() const;                                   // no failures
};
// b1 is expected already rewritten through the coordinate change
IsoReport verify_isomorphism(const AInfInstance& inst, const Vec& b0, const Vec& b1, const Vec& alpha,
                             const Vec& beta);

// identity on `vars` except for the variables `m` solves
MonomialMap extend_to_vars(const MonomialMap& m, const std::vector<std::string>& vars);

// compares a solved map against "var": "template" strings evaluated at the instance
bool matches_expected(const AInfInstance& inst, const MonomialMap& m, const std::map<std::string, std::string>& exp,
                      std::string* why = nullptr);

// x^{a-1} P4 - Q4 on the two-pants model
CoordinateChange variant_isomorphism(const AInfInstance& inst, int a);

struct GaugeStep {
    enum class Point { P1, P2 };
    enum class Through { Z, Y };
    Point point;
    Through through;
    int direction = 1; // +1 upward, -1 downward
};
struct GaugeResult {
    MonomialMap change; // (y,z,t) <- monomials in (y',z',t')
    int a_scale = 0;    // A' <-> t^{a_scale} A'
    int b_scale = 0;    // B' <-> t^{b_scale} B'
};
GaugeResult gauge_step(const GaugeStep& s);
GaugeResult gauge_compose(const GaugeResult& first, const GaugeResult& second);
// p1 through z a1 times and through y a1-1 times; p2 through z a2 times and through y a2+1 times
std::vector<GaugeStep> gauge_path(int a1, int a2);
GaugeResult gauge_change(int a1, int a2);

struct ExactReduction {
    bool certified = false;
    std::vector<std::string> failures;
    MonomialMap to_exact; // geometric variable <- T^{-f} * exact variable
    Model reduced;        // same model with all T-powers removed
};
// deformation name decides which generator offsets the variables follow
ExactReduction exact_reduce(const Model& m, const Assignment& a, const std::string& deformation);

} // namespace mg
