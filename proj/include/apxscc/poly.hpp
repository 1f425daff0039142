#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "apxscc/numeric.hpp"

namespace apxscc {

// variables are numbered from 1; index 0 stands for "no variable"
using Var = unsigned;

class VariableOrder {
public:
    VariableOrder() = default;
    explicit VariableOrder(std::vector<std::string> names);
    static VariableOrder standard(unsigned n);  // x1..xn

    unsigned size() const { return static_cast<unsigned>(names_.size()); }
    // 1-based; throws on unknown index
    const std::string& name(Var j) const;
    // 0 when unknown
    Var index_of(std::string_view name) const;
    Var add(std::string name);
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
};

// exponent of x_{i+1} at position i, trailing zeros trimmed
using Monomial = std::vector<unsigned>;

struct Term {
    Monomial mono;
    Rational coeff;
};

// lex with the highest variable most significant
int compare_monomials(const Monomial& a, const Monomial& b);

class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const Rational& c);
    Polynomial(long c) : Polynomial(Rational(c)) {}
    static Polynomial variable(Var j);
    static Polynomial from_terms(std::vector<Term> terms);
    // sum c_k x_j^k
    static Polynomial from_coefficients(Var j, const std::vector<Polynomial>& coeffs);
    static Polynomial from_upoly(const UPoly& p, Var j);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return level() == 0; }
    Rational constant_value() const;

    Var level() const;
    unsigned degree(Var j) const;
    unsigned total_degree() const;
    std::vector<Polynomial> coefficients(Var j) const;
    Polynomial ldcf(Var j) const;
    Polynomial derivative(Var j) const;
    const Term& leading_term() const { return terms_.back(); }

    Polynomial substitute(Var j, const Rational& v) const;
    // substitutes x_1..x_|s|
    Polynomial substitute_prefix(std::span<const Rational> s) const;
    // p(s, x_j) with j = |s| + 1; requires level <= j
    UPoly specialize(std::span<const Rational> s) const;
    // requires every variable of p to be x_j
    UPoly to_upoly(Var j) const;
    // point must cover the level
    Rational evaluate(std::span<const Rational> point) const;

    // primitive integer form with positive leading coefficient
    Polynomial normalized() const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Rational& s, const Polynomial& a);
    friend Polynomial operator*(long s, const Polynomial& a) { return Rational(s) * a; }
    Polynomial pow(unsigned k) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);
    friend std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b);

    std::string to_string(const VariableOrder* names = nullptr) const;

private:
    std::vector<Term> terms_;  // ascending monomial order
};

// exact multivariate division; throws std::domain_error if b does not divide a
Polynomial exact_divide(const Polynomial& a, const Polynomial& b);
// Sylvester resultant with respect to x_j, not normalized
Polynomial resultant(const Polynomial& p, const Polynomial& q, Var j);
// res(p, dp/dx_j), normalized
Polynomial discriminant(const Polynomial& p, Var j);

// pseudo-remainder of a by b with respect to x_j
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, Var j);
// normalized gcd over Q[x_1, ..., x_n]; gcd(0, 0) = 0
Polynomial gcd(const Polynomial& a, const Polynomial& b);
// gcd of the coefficients in x_j, normalized
Polynomial content(const Polynomial& p, Var j);
Polynomial primitive_part(const Polynomial& p, Var j);
// product of the distinct irreducible factors of positive degree in x_j, normalized
Polynomial squarefree_part(const Polynomial& p, Var j);

}  // namespace apxscc
