#pragma once

#include "mirrorglue/mf.hpp"

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace mg {

// ---------------------------------------------------------------- dg layer

// homogeneous R-linear map src -> tgt between free Z/2-graded modules
struct DgMor {
    std::string src, tgt;
    int deg = 0;
    std::map<std::string, Vec> map; // source generator -> image; missing generators map to 0

    Vec apply(const Vec& v) const;
    bool is_zero() const;
    std::string str() const;
};

DgMor mor_zero(const std::string& src, const std::string& tgt, int deg);
DgMor mor_identity(const MatrixFactorization& x);
DgMor mor_add(const DgMor& a, const DgMor& b);
DgMor mor_sub(const DgMor& a, const DgMor& b);
DgMor mor_scale(const DgMor& a, const LaurentPoly& c);
DgMor mor_compose(const DgMor& f, const DgMor& g); // f after g
bool mor_equal(const DgMor& a, const DgMor& b);
// delta_tgt f - (-1)^|f| f delta_src
DgMor mor_d(const DgMor& f, const MatrixFactorization& src, const MatrixFactorization& tgt);
DgMor mor_substitute(const DgMor& f, const MonomialMap& m);

// matrix factorizations of one potential over a common chart ring; variables listed in `units` are invertible
class DgPiece {
public:
    DgPiece(std::vector<std::string> vars, LaurentPoly W, std::vector<std::string> units = {});

    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<std::string>& units() const { return units_; }
    const LaurentPoly& potential() const { return W_; }

    // throws std::invalid_argument when delta^2 != W Id (axiom violation)
    void add_object(const std::string& name, MatrixFactorization mf);
    bool has_object(const std::string& name) const { return objects_.count(name) > 0; }
    const MatrixFactorization& object(const std::string& name) const;
    std::vector<std::string> objects() const;

    DgMor identity(const std::string& x) const { return mor_identity(object(x)); }
    DgMor d(const DgMor& f) const;
    DgMor compose(const DgMor& f, const DgMor& g) const; // f after g, endpoints checked
    // elementary maps g -> h of the given parity
    std::vector<DgMor> basis(const std::string& x, const std::string& y, int deg) const;
    // random combination of elementary maps with monomial coefficients
    DgMor random(const std::string& x, const std::string& y, int deg, std::mt19937_64& rng, int max_terms = 3) const;

    // strict two-sided inverse of an even closed map, by unit-pivot elimination
    std::optional<DgMor> strict_inverse(const DgMor& f) const;

private:
    std::vector<std::string> vars_, units_;
    LaurentPoly W_;
    std::map<std::string, MatrixFactorization> objects_;
};

// dg functor between pieces given by a ring map (a coordinate change or a restriction)
struct DgFunctor {
    std::string name;
    MonomialMap change; // source variables <- monomials in target variables
    MatrixFactorization object(const MatrixFactorization& x) const;
    DgMor map(const DgMor& f) const;
};

struct AxiomReport {
    std::size_t checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// reversed directions: Hom_Ainf(E, F) = Hom_dg(F, E), m1 = d, m2(phi, psi) = (-1)^|phi| phi psi, m_{>=3} = 0
class DgAInf {
public:
    explicit DgAInf(const DgPiece& p) : p_(&p) {}
    DgMor m1(const DgMor& f) const { return p_->d(f); }
    DgMor m2(const DgMor& phi, const DgMor& psi) const;
    // A-infinity relations of arity 1..3 on random composable morphisms
    AxiomReport check(std::mt19937_64& rng, int samples) const;

private:
    const DgPiece* p_;
};

// checks on a piece: d^2 = 0, Leibniz, associativity, unit laws on random morphisms
AxiomReport check_dg_axioms(const DgPiece& p, std::mt19937_64& rng, int samples);

// ---------------------------------------------------------------- homotopy fiber product B x^h_D C

struct HfpObject {
    std::string name, M, N;
    DgMor phi; // closed, degree 0, G(M) -> L(N) in D
    DgMor phi_inverse;
};

struct HfpMor {
    std::string src, tgt; // hfp objects
    int deg = 0;
    DgMor mu, nu, gamma; // mu in B^i(M1, M2), nu in C^i(N1, N2), gamma in D^{i-1}(G(M1), L(N2))
    bool is_zero() const { return mu.is_zero() && nu.is_zero() && gamma.is_zero(); }
    std::string str() const;
};

class HomotopyFiberProduct {
public:
    HomotopyFiberProduct(const DgPiece& B, const DgPiece& C, const DgPiece& D, DgFunctor G, DgFunctor L);

    // throws on a non-closed, odd or non-invertible phi
    void add_object(const std::string& name, const std::string& M, const std::string& N, const DgMor& phi);
    const HfpObject& object(const std::string& name) const;
    std::vector<std::string> objects() const;

    MatrixFactorization G_of(const std::string& M) const;
    MatrixFactorization L_of(const std::string& N) const;

    // throws on components of the wrong degree or endpoints
    HfpMor make(const std::string& src, const std::string& tgt, DgMor mu, DgMor nu, DgMor gamma) const;
    HfpMor identity(const std::string& x) const;
    HfpMor random(const std::string& src, const std::string& tgt, int deg, std::mt19937_64& rng) const;

    // (d mu, d nu, -d gamma - phi2 G(mu) + L(nu) phi1)
    HfpMor d(const HfpMor& m) const;
    // (mu' mu, nu' nu, gamma' G(mu) + (-1)^{i'} L(nu') gamma), m' after m
    HfpMor compose(const HfpMor& mp, const HfpMor& m) const;
    HfpMor add(const HfpMor& a, const HfpMor& b) const;
    HfpMor scale(const HfpMor& a, int s) const;

    const DgPiece& B() const { return *B_; }
    const DgPiece& C() const { return *C_; }
    const DgPiece& D() const { return *D_; }

private:
    const DgPiece *B_, *C_, *D_;
    DgFunctor G_, L_;
    std::map<std::string, HfpObject> objects_;
};

AxiomReport check_hfp_axioms(const HomotopyFiberProduct& h, std::mt19937_64& rng, int samples);

// random piece of rank <= max_rank objects factorizing W, by elementary conjugation of sums of rank-one factors
DgPiece random_piece(const std::vector<std::string>& vars, const LaurentPoly& W, int objects, int max_rank,
                     std::mt19937_64& rng, const std::vector<std::string>& units = {});
// B x^h_D C where B = C = D-with-inverted-units, G = L = identity, objects glued along random elementary isomorphisms
struct RandomHfp {
    std::unique_ptr<DgPiece> B, C, D;
    std::unique_ptr<HomotopyFiberProduct> hfp;
};
RandomHfp random_hfp(std::mt19937_64& rng, int objects = 2, int max_rank = 2);

// ---------------------------------------------------------------- A-infinity categories and natural transformations

using Objs = std::vector<std::string>;
using Inputs = std::vector<Vec>;

class AInfCategory {
public:
    virtual ~AInfCategory() = default;
    virtual std::vector<std::string> objects() const = 0;
    virtual std::vector<std::string> basis(const std::string& x, const std::string& y) const = 0;
    virtual int deg(const std::string& g) const = 0;
    // m_k(a_1, ..., a_k) with a_i in Hom(objs[i-1], objs[i]); k = 0 is the curvature of objs[0]
    virtual Vec m(const Objs& objs, const Inputs& a) const = 0;
    virtual const std::vector<std::string>& vars() const = 0;
    virtual LaurentPoly potential(const std::string& x) const = 0;
    virtual Vec unit(const std::string& x) const = 0;
};

// objects are (model object, deformation) pairs
class ModelCategory : public AInfCategory {
public:
    struct Obj {
        std::string model_object;
        Vec b;
    };
    ModelCategory(const AInfInstance& inst, std::map<std::string, Obj> objects);

    std::vector<std::string> objects() const override;
    std::vector<std::string> basis(const std::string& x, const std::string& y) const override;
    int deg(const std::string& g) const override { return inst_->deg(g); }
    Vec m(const Objs& objs, const Inputs& a) const override;
    const std::vector<std::string>& vars() const override { return inst_->vars(); }
    LaurentPoly potential(const std::string& x) const override;
    Vec unit(const std::string& x) const override;
    const Obj& object(const std::string& x) const;

private:
    const AInfInstance* inst_;
    std::map<std::string, Obj> objects_;
    mutable std::map<std::string, LaurentPoly> potentials_;
};

// a dg piece read as an A-infinity category with reversed directions; the basis of Hom(X, Y) is the
// elementary maps "g@Y>h@X" sending generator g of Y to generator h of X
class DgCategoryView : public AInfCategory {
public:
    explicit DgCategoryView(const DgPiece& p) : p_(&p) {}

    std::vector<std::string> objects() const override { return p_->objects(); }
    std::vector<std::string> basis(const std::string& x, const std::string& y) const override;
    int deg(const std::string& g) const override;
    Vec m(const Objs& objs, const Inputs& a) const override;
    const std::vector<std::string>& vars() const override { return p_->vars(); }
    LaurentPoly potential(const std::string&) const override { return LaurentPoly(p_->vars()); }
    Vec unit(const std::string& x) const override;

    DgMor to_mor(const std::string& x, const std::string& y, const Vec& v) const; // Hom(x, y) -> dg map y -> x
    Vec from_mor(const DgMor& f) const;

private:
    const DgPiece* p_;
};

// functor into a dg category of matrix factorizations; F_k(a) is the dg map F(C_k) -> F(C_0)
class DgValuedFunctor {
public:
    virtual ~DgValuedFunctor() = default;
    virtual std::string name() const = 0;
    virtual MatrixFactorization object(const std::string& c) const = 0;
    virtual DgMor map(const Objs& objs, const Inputs& a) const = 0;
};

// Y^T(C) = (Hom(C, T), -m1), Y^T_k(a)(x) = m_{k+1}(a, x)
class YonedaFunctor : public DgValuedFunctor {
public:
    YonedaFunctor(const AInfCategory& c, std::string target) : c_(&c), t_(std::move(target)) {}
    std::string name() const override { return "Y^" + t_; }
    MatrixFactorization object(const std::string& c) const override;
    DgMor map(const Objs& objs, const Inputs& a) const override;
    const std::string& target() const { return t_; }

private:
    const AInfCategory* c_;
    std::string t_;
};

// per arity k, a multilinear map to Hom_Ainf(F1(C_0), F2(C_k)) = dg maps F2(C_k) -> F1(C_0)
struct PreNat {
    std::string name;
    const DgValuedFunctor* from = nullptr;
    const DgValuedFunctor* to = nullptr;
    int norm = 0; // ||N||; a component on a has degree ||N|| + |a|'
    std::function<DgMor(const Objs&, const Inputs&)> at;
};

PreNat nat_identity(const DgValuedFunctor& f);
PreNat nat_zero(const DgValuedFunctor& f1, const DgValuedFunctor& f2, int norm);
PreNat nat_M1(const AInfCategory& c, const PreNat& n);
PreNat nat_M2(const PreNat& n1, const PreNat& n2);
PreNat nat_sub(const PreNat& a, const PreNat& b);
PreNat nat_sign(const PreNat& a, int s);

// composable basis tuples of length <= arity (objects included)
struct Tuple {
    Objs objs;
    std::vector<std::string> gens;
    Inputs inputs(const std::vector<std::string>& vars) const;
    std::string str() const;
};
std::vector<Tuple> composable_tuples(const AInfCategory& c, int arity, const std::vector<std::string>& objects = {});

struct NatCheck {
    std::string name;
    std::size_t tuples = 0;
    std::vector<std::string> residuals; // one line per failing tuple
    bool ok() const { return residuals.empty(); }
};
NatCheck nat_equal(const std::string& name, const AInfCategory& c, const PreNat& a, const PreNat& b, int arity,
                   const std::vector<std::string>& objects = {});
NatCheck nat_vanishes(const std::string& name, const AInfCategory& c, const PreNat& a, int arity,
                      const std::vector<std::string>& objects = {});

// N_01(a)(x) = (-1)^{|a|'} (-1)^{|x|} m(a, x, beta) for beta in Hom(T1, T0)
PreNat yoneda_nat(const AInfCategory& c, const YonedaFunctor& y0, const YonedaFunctor& y1, const Vec& beta);
// H(a)(x) = m(a, x, alpha, beta) - m(a, x, h) on Y^{T0}, ||H|| odd
PreNat yoneda_homotopy(const AInfCategory& c, const YonedaFunctor& y0, const std::string& t1, const Vec& alpha,
                       const Vec& beta, const Vec& h);
// functor equation d Y(a) + sum m2(Y(a1), Y(a2)) = sum (-1)^{|a1|'} Y(a1, m(a2), a3) for arities 1..arity
NatCheck functor_equation(const AInfCategory& c, const DgValuedFunctor& f, int arity,
                          const std::vector<std::string>& objects = {});

struct YonedaReport {
    LaurentPoly unit_left, unit_right; // m2(alpha, beta) = c 1_{T0}, m2(beta, alpha) = c' 1_{T1}
    std::vector<NatCheck> checks;
    bool ok() const;
    std::string str() const;
};
// alpha in Hom(T0, T1), beta in Hom(T1, T0); x, x' the m1-primitives of m2(alpha,beta) - c 1 and m2(beta,alpha) - c' 1
YonedaReport yoneda_equivalence_check(const AInfCategory& c, const std::string& t0, const std::string& t1,
                                      const Vec& alpha, const Vec& beta, const Vec& x = {}, const Vec& xp = {},
                                      int arity = 2, const std::vector<std::string>& test_objects = {});

// ---------------------------------------------------------------- global functor into B x^h_D C

// F(a) = (m(a, x, e^{b0}), m(a, x, e^{b1}), (-1)^{|a|'} (-1)^{|x|} m(a, x, e^{b1}, beta, e^{b0})) for test objects
struct GlobalFunctorReport {
    std::vector<std::string> objects;
    std::map<std::string, DgMor> connecting; // N_01(L) per test object
    std::vector<NatCheck> checks;
    bool ok() const;
    std::string str() const;
};
GlobalFunctorReport global_functor(const AInfCategory& c, const std::string& t0, const std::string& t1,
                                   const Vec& alpha, const Vec& beta, const std::vector<std::string>& test_objects,
                                   int arity = 2);

// ---------------------------------------------------------------- flop

struct FlopReport {
    std::vector<IsoCheck> checks;
    bool ok() const;
    std::string str() const;
};
// the two conifold charts before and after, the birational map between them and the Floer differential of the pair of circles
FlopReport flop_check(const AInfInstance& flop_model);

} // namespace mg
