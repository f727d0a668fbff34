#pragma once

#include "mirrorglue/novikov.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mg {

using Exps = std::vector<int>;

// graded lexicographic: total degree first, then lex
struct GrLex {
    bool operator()(const Exps& a, const Exps& b) const;
};

class LaurentPoly {
public:
    using TermMap = std::map<Exps, Series, GrLex>;

    LaurentPoly() = default;
    explicit LaurentPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static LaurentPoly constant(std::vector<std::string> vars, const Series& c);
    static LaurentPoly monomial(std::vector<std::string> vars, const Exps& e, const Series& c = Series(1));
    static LaurentPoly variable(std::vector<std::string> vars, const std::string& name, int power = 1);

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t nvars() const { return vars_.size(); }
    int var_index(const std::string& name) const; // -1 if absent

    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool has_nonnegative_exponents() const;
    Series coeff(const Exps& e) const;

    void add_term(const Exps& e, const Series& c);

    // re-express over a superset of variables (order given by `vars`)
    LaurentPoly with_vars(const std::vector<std::string>& vars) const;

    LaurentPoly operator-() const;
    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
    LaurentPoly scaled(const Series& c) const;
    LaurentPoly pow(int n) const; // n < 0 only for monomials

    // replace each T^q coefficient term by f(q); used to reduce to T-free data
    bool t_free() const;

    // exact equality; refuses truncated coefficients
    bool operator==(const LaurentPoly& o) const;
    bool same_as(const LaurentPoly& o) const;

    std::string str() const;
    static LaurentPoly parse(const std::vector<std::string>& vars, const std::string& text);

private:
    void cleanup();

    std::vector<std::string> vars_;
    TermMap terms_;
};

std::string monomial_str(const std::vector<std::string>& vars, const Exps& e);
std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b);

// x_i <- unit_i * prod_j y_j^{exps_i[j]}
class MonomialMap {
public:
    struct Image {
        Series unit;
        Exps exps;
    };

    MonomialMap() = default;
    MonomialMap(std::vector<std::string> src, std::vector<std::string> tgt);

    static MonomialMap identity(const std::vector<std::string>& vars);

    const std::vector<std::string>& source() const { return src_; }
    const std::vector<std::string>& target() const { return tgt_; }
    const Image& image(std::size_t i) const { return images_.at(i); }
    const Image& image(const std::string& var) const;
    void set(const std::string& src_var, const Series& unit, const Exps& exps);

    // this then g: substitutes g into the images of this
    MonomialMap then(const MonomialMap& g) const;
    // requires a unimodular exponent matrix and monomial units
    MonomialMap inverse() const;
    // rename source and target variables
    MonomialMap renamed(const std::vector<std::string>& src, const std::vector<std::string>& tgt) const;

    bool is_identity() const;
    bool operator==(const MonomialMap& o) const;

    std::string table() const;

private:
    std::vector<std::string> src_, tgt_;
    std::vector<Image> images_;
};

LaurentPoly substitute(const LaurentPoly& p, const MonomialMap& m);

// inf over terms of val(coeff) + <e, u>; throws on a negative exponent against +inf
ExtQ monomial_val(const LaurentPoly& p, const std::vector<ExtQ>& point);

struct Interval {
    std::optional<Q> lo; // nullopt: -inf
    std::optional<Q> hi; // nullopt: +inf
};

struct MonoidSpec {
    std::vector<Interval> box;
};

bool monoid_member(const Exps& e, const Series& coeff, const MonoidSpec& spec);

} // namespace mg
