#pragma once

#include "mirrorglue/rational.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mg {

// rational or rational-complex coefficient; im == 0 in the default mode
struct Scalar {
    Q re = 0;
    Q im = 0;

    Scalar() = default;
    Scalar(const Q& r) : re(r) {}
    Scalar(long r) : re(r) {}
    Scalar(const Q& r, const Q& i) : re(r), im(i) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    bool operator==(const Scalar& o) const { return re == o.re && im == o.im; }

    Scalar operator-() const { return {-re, -im}; }
    Scalar operator+(const Scalar& o) const { return {re + o.re, im + o.im}; }
    Scalar operator-(const Scalar& o) const { return {re - o.re, im - o.im}; }
    Scalar operator*(const Scalar& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    Scalar inverse() const;
};

std::string to_string(const Scalar& s);

enum class Subring { Lambda, Lambda0, LambdaPlus, Lambda0Units };

// Finite sum of coefficient * T^exponent with explicit truncation state.
class Series {
public:
    using Term = std::pair<Q, Scalar>;

    Series() = default;
    Series(const Scalar& c);
    Series(long c) : Series(Scalar(c)) {}
    Series(const Q& c) : Series(Scalar(c)) {}

    static Series monomial(const Q& exponent, const Scalar& coeff = Scalar(1));
    static Series T(const Q& exponent) { return monomial(exponent); }
    static Series from_terms(std::vector<Term> terms, ExtQ trunc = ExtQ::infinity());

    const std::vector<Term>& terms() const { return terms_; }
    ExtQ truncation() const { return trunc_; }
    bool inexact() const { return inexact_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_real() const;

    ExtQ val() const;
    Scalar leading_coeff() const; // coefficient at val; throws on zero
    Scalar coeff(const Q& exponent) const;

    // drop every term above `order`; marks inexact if anything went
    Series truncated(const ExtQ& order) const;

    Series operator-() const;
    Series operator+(const Series& o) const;
    Series operator-(const Series& o) const;
    Series operator*(const Series& o) const;
    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }
    Series scaled(const Scalar& c) const;
    Series shifted(const Q& e) const; // multiply by T^e

    // inverse by geometric series; `order` bounds the expansion when the
    // unit part is not a single term
    Series inverse(const ExtQ& order = ExtQ::infinity()) const;
    Series pow(long n, const ExtQ& order = ExtQ::infinity()) const;

    bool in(Subring r) const;

    // exact comparison, refuses inexact operands
    bool exactly_equals(const Series& o) const;
    // agreement of all terms with exponent <= order
    bool equals_up_to(const Series& o, const ExtQ& order) const;
    // structural equality used for map keys and caching
    bool same_as(const Series& o) const { return terms_ == o.terms_; }

    std::string str() const;
    static Series parse(std::string_view text);

private:
    void normalize();

    std::vector<Term> terms_;
    ExtQ trunc_ = ExtQ::infinity();
    bool inexact_ = false;
};

inline std::string to_string(const Series& s) { return s.str(); }
ExtQ val(const Series& s);
bool subring_check(const Series& s, Subring r);

} // namespace mg
