#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace apxscc {

using Integer = mpz_class;
using Rational = mpq_class;

// bitlength(|num|) + bitlength(den), with bitlength(0) = 1
std::size_t bit_size(const Rational& q);
int sgn(const Rational& q);
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);
// canonical n/d
inline Rational ratio(long n, long d) {
    Rational q(n, d);
    q.canonicalize();
    return q;
}

// Dense univariate polynomial over Q, coefficients from degree 0 upwards.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> coeffs);
    static UPoly constant(const Rational& c);
    static UPoly monomial(const Rational& c, unsigned k);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int k) const;
    const Rational& lc() const { return c_.back(); }

    Rational eval(const Rational& x) const;
    int sign_at(const Rational& x) const { return sgn(eval(x)); }
    UPoly derivative() const;
    UPoly monic() const;
    UPoly square_free() const;
    // p(-x)
    UPoly reflect() const;
    // p(a + w*x)
    UPoly compose_affine(const Rational& a, const Rational& w) const;
    // max |root| < bound
    Rational root_bound() const;

    UPoly operator-() const;
    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const Rational& s, const UPoly& a);
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    std::string to_string(std::string_view var = "x") const;

private:
    void trim();
    std::vector<Rational> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
// monic gcd; gcd(0, 0) = 0
UPoly gcd(const UPoly& a, const UPoly& b);
// upper bound on the number of roots in (a, b), exact when 0 or 1
std::size_t descartes_bound(const UPoly& p, const Rational& a, const Rational& b);

class RealValue;

class RealAlgebraic {
public:
    // defining must be square-free with exactly one root in (lo, hi) and none at the ends
    RealAlgebraic(UPoly defining, Rational lo, Rational hi);

    const UPoly& defining() const { return p_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational width() const { return hi_ - lo_; }

    // halves the interval; returns the exact value if the midpoint is the root
    std::optional<Rational> bisect();
    double approx() const;

private:
    UPoly p_;
    Rational lo_, hi_;
};

class RealValue {
public:
    RealValue() : v_(Rational(0)) {}
    RealValue(const Rational& q) : v_(q) {}
    RealValue(long q) : v_(Rational(q)) {}
    // collapses to a rational when the defining polynomial is linear
    RealValue(RealAlgebraic a);

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    const Rational& rational() const { return std::get<Rational>(v_); }
    const RealAlgebraic& algebraic() const { return std::get<RealAlgebraic>(v_); }

    // rational bounds lo <= value <= hi
    Rational lower() const;
    Rational upper() const;
    double approx() const;
    std::string to_string() const;

private:
    std::variant<Rational, RealAlgebraic> v_;
};

int compare(const RealValue& a, const RealValue& b);
int compare(const Rational& q, const RealValue& a);
inline bool operator==(const RealValue& a, const RealValue& b) { return compare(a, b) == 0; }
inline bool operator<(const RealValue& a, const RealValue& b) { return compare(a, b) < 0; }

int sign_at(const UPoly& p, const RealValue& a);
RealValue refine(const RealValue& a, const Rational& width);
RealValue negate(const RealValue& a);
// sorted real roots of a nonzero polynomial
std::vector<RealValue> real_roots(const UPoly& p);

class ExtendedReal {
public:
    enum class Kind { NegInf, Finite, PosInf };
    ExtendedReal(const RealValue& v) : kind_(Kind::Finite), v_(v) {}
    ExtendedReal(const Rational& q) : kind_(Kind::Finite), v_(q) {}
    static ExtendedReal neg_inf() { return ExtendedReal(Kind::NegInf); }
    static ExtendedReal pos_inf() { return ExtendedReal(Kind::PosInf); }

    Kind kind() const { return kind_; }
    bool finite() const { return kind_ == Kind::Finite; }
    const RealValue& value() const { return *v_; }
    std::string to_string() const;

private:
    explicit ExtendedReal(Kind k) : kind_(k) {}
    Kind kind_;
    std::optional<RealValue> v_;
};

int compare(const ExtendedReal& a, const ExtendedReal& b);
ExtendedReal negate(const ExtendedReal& a);

struct EmptyInterval : std::domain_error {
    using std::domain_error::domain_error;
};

// Rational of minimal bit size in (lo, hi) minus exclude.
// Ties go to the smaller denominator, then the smaller |numerator|, then the smaller value.
Rational rational_between(const ExtendedReal& lo, const ExtendedReal& hi,
                          std::span<const RealValue> exclude = {});

bool simpler(const Rational& a, const Rational& b);

}  // namespace apxscc
