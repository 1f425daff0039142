#include "apxscc/numeric.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace apxscc {

namespace {

std::size_t bitlen(const Integer& z) {
    if (z == 0) return 1;
    return mpz_sizeinbase(z.get_mpz_t(), 2);
}

using IntPoly = std::vector<Integer>;

// positive multiple of p with integer coefficients
IntPoly scale_to_integer(const std::vector<Rational>& c) {
    Integer l = 1;
    for (const auto& q : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    IntPoly out;
    out.reserve(c.size());
    Integer g = 0;
    for (const auto& q : c) {
        Integer v = q.get_num() * (l / q.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        out.push_back(std::move(v));
    }
    if (g > 1)
        for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return out;
}

void make_primitive(IntPoly& p) {
    Integer g = 0;
    for (const auto& v : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g > 1)
        for (auto& v : p) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    if (!p.empty() && p.back() < 0)
        for (auto& v : p) v = -v;
}

void trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// pseudo-remainder of a by b (b nonzero)
IntPoly prem(IntPoly a, const IntPoly& b) {
    const std::size_t db = b.size() - 1;
    const Integer& lb = b.back();
    while (!a.empty() && a.size() - 1 >= db) {
        const std::size_t shift = a.size() - 1 - db;
        Integer la = a.back();
        for (auto& v : a) v *= lb;
        for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
        trim(a);
    }
    return a;
}

std::size_t sign_variations(const IntPoly& p) {
    std::size_t v = 0;
    int last = 0;
    for (const auto& c : p) {
        int s = sgn(c);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

void taylor_shift_one(IntPoly& c) {
    const std::size_t n = c.size();
    if (n < 2) return;
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;) c[j] += c[j + 1];
}

int cmp_q(const Rational& q, const ExtendedReal& e) {
    switch (e.kind()) {
        case ExtendedReal::Kind::NegInf: return 1;
        case ExtendedReal::Kind::PosInf: return -1;
        default: return compare(q, e.value());
    }
}

// largest t >= 1 with pred(t), given pred(1) holds and pred eventually fails
template <class Pred>
Integer largest_true(Pred pred) {
    Integer lo = 1, hi = 2;
    while (pred(hi)) {
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        Integer mid = (lo + hi) / 2;
        if (pred(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

// Stern-Brocot descent for the simplest rational in (lo, hi) with lo >= 0
Rational simplest_nonneg(const ExtendedReal& lo, const ExtendedReal& hi) {
    Integer a = 0, b = 1, c = 1, d = 0;
    for (;;) {
        Rational m(a + c, b + d);
        m.canonicalize();
        if (cmp_q(m, lo) <= 0) {
            Integer t = largest_true([&](const Integer& t) {
                Rational q(a + t * c, b + t * d);
                q.canonicalize();
                return cmp_q(q, lo) <= 0;
            });
            a += t * c;
            b += t * d;
        } else if (cmp_q(m, hi) >= 0) {
            Integer t = largest_true([&](const Integer& t) {
                Rational q(t * a + c, t * b + d);
                q.canonicalize();
                return cmp_q(q, hi) >= 0;
            });
            c += t * a;
            d += t * b;
        } else {
            return m;
        }
    }
}

Rational simplest(const ExtendedReal& lo, const ExtendedReal& hi) {
    const Rational zero(0);
    if (cmp_q(zero, lo) > 0 && cmp_q(zero, hi) < 0) return zero;
    if (cmp_q(zero, lo) <= 0) return simplest_nonneg(lo, hi);
    return -simplest_nonneg(negate(hi), negate(lo));
}

}  // namespace

std::size_t bit_size(const Rational& q) { return bitlen(q.get_num()) + bitlen(q.get_den()); }

int sgn(const Rational& q) { return ::sgn(q); }

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty number");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-') {
        neg = true;
        i = 1;
    }
    std::string body = s.substr(i);
    Rational r;
    if (auto dot = body.find('.'); dot != std::string::npos) {
        std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || fp.find_first_not_of("0123456789") != std::string::npos ||
            ip.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad decimal: " + s);
        Integer num(ip.empty() ? "0" : ip);
        Integer den = 1;
        for (char ch : fp) {
            num = num * 10 + (ch - '0');
            den *= 10;
        }
        r = Rational(num, den);
    } else {
        if (body.empty() || body.find_first_not_of("0123456789/") != std::string::npos)
            throw std::invalid_argument("bad number: " + s);
        if (r.set_str(body, 10) != 0 || r.get_den() == 0) throw std::invalid_argument("bad number: " + s);
    }
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

// ---------------------------------------------------------------- UPoly

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::constant(const Rational& c) { return UPoly(std::vector<Rational>{c}); }

UPoly UPoly::monomial(const Rational& c, unsigned k) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return UPoly(std::move(v));
}

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UPoly::coeff(int k) const {
    if (k < 0 || k > degree()) return 0;
    return c_[k];
}

Rational UPoly::eval(const Rational& x) const {
    Rational r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

UPoly UPoly::derivative() const {
    if (c_.size() < 2) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
    if (is_zero()) return {};
    UPoly r = *this;
    Rational l = lc();
    for (auto& v : r.c_) v /= l;
    return r;
}

UPoly UPoly::square_free() const {
    if (degree() < 1) return monic();
    UPoly g = gcd(*this, derivative());
    return divmod(*this, g).first.monic();
}

UPoly UPoly::reflect() const {
    UPoly r = *this;
    for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
    return r;
}

UPoly UPoly::compose_affine(const Rational& a, const Rational& w) const {
    std::vector<Rational> r;
    for (std::size_t i = c_.size(); i-- > 0;) {
        // r := r * (a + w x) + c_i
        std::vector<Rational> n(r.size() + 1);
        for (std::size_t k = 0; k < r.size(); ++k) {
            n[k] += r[k] * a;
            n[k + 1] += r[k] * w;
        }
        n[0] += c_[i];
        r = std::move(n);
    }
    return UPoly(std::move(r));
}

Rational UPoly::root_bound() const {
    Rational m = 0;
    for (int i = 0; i < degree(); ++i) {
        Rational v = abs(c_[i] / lc());
        if (v > m) m = v;
    }
    return m + 1;
}

UPoly UPoly::operator-() const {
    UPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return UPoly(std::move(r));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
}

UPoly operator*(const Rational& s, const UPoly& a) {
    if (s == 0) return {};
    UPoly r = a;
    for (auto& v : r.c_) v *= s;
    return r;
}

std::string UPoly::to_string(std::string_view var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = c_[k];
        if (c == 0) continue;
        Rational mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (k == 0 || mag != 1) {
            os << mag.get_str();
            if (k > 0) os << "*";
        }
        if (k > 0) os << var;
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    std::vector<Rational> r = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {UPoly(), a};
    std::vector<Rational> q(a.degree() - db + 1);
    const Rational& lb = b.lc();
    for (int k = a.degree(); k >= db; --k) {
        if (r[k] == 0) continue;
        Rational f = r[k] / lb;
        q[k - db] = f;
        for (int i = 0; i <= db; ++i) r[k - db + i] -= f * b.coeffs()[i];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
    if (a.is_zero() && b.is_zero()) return {};
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    IntPoly x = scale_to_integer(a.coeffs()), y = scale_to_integer(b.coeffs());
    if (x.size() < y.size()) std::swap(x, y);
    make_primitive(x);
    make_primitive(y);
    while (!y.empty()) {
        if (y.size() == 1) return UPoly::constant(1);
        IntPoly r = prem(x, y);
        make_primitive(r);
        x = std::move(y);
        y = std::move(r);
    }
    std::vector<Rational> c(x.begin(), x.end());
    return UPoly(std::move(c)).monic();
}

std::size_t descartes_bound(const UPoly& p, const Rational& a, const Rational& b) {
    if (p.degree() < 1) return 0;
    UPoly g = p.compose_affine(a, b - a);
    IntPoly c = scale_to_integer(g.coeffs());
    std::reverse(c.begin(), c.end());
    taylor_shift_one(c);
    return sign_variations(c);
}

// ---------------------------------------------------------------- real algebraic numbers

RealAlgebraic::RealAlgebraic(UPoly defining, Rational lo, Rational hi)
    : p_(std::move(defining)), lo_(std::move(lo)), hi_(std::move(hi)) {
    assert(lo_ < hi_);
    assert(p_.sign_at(lo_) != 0 && p_.sign_at(hi_) != 0);
}

std::optional<Rational> RealAlgebraic::bisect() {
    Rational m = (lo_ + hi_) / 2;
    int sm = p_.sign_at(m);
    if (sm == 0) return m;
    if (sm == p_.sign_at(lo_))
        lo_ = m;
    else
        hi_ = m;
    return std::nullopt;
}

double RealAlgebraic::approx() const {
    RealAlgebraic t = *this;
    for (int i = 0; i < 60; ++i)
        if (auto q = t.bisect()) return q->get_d();
    return Rational((t.lo_ + t.hi_) / 2).get_d();
}

RealValue::RealValue(RealAlgebraic a) {
    if (a.defining().degree() == 1) {
        const auto& c = a.defining().coeffs();
        v_ = Rational(-c[0] / c[1]);
    } else {
        v_ = std::move(a);
    }
}

Rational RealValue::lower() const { return is_rational() ? rational() : algebraic().lo(); }
Rational RealValue::upper() const { return is_rational() ? rational() : algebraic().hi(); }
double RealValue::approx() const { return is_rational() ? rational().get_d() : algebraic().approx(); }

std::string RealValue::to_string() const {
    if (is_rational()) return apxscc::to_string(rational());
    const auto& a = algebraic();
    return "root(" + a.defining().to_string() + ", (" + apxscc::to_string(a.lo()) + ", " +
           apxscc::to_string(a.hi()) + "))";
}

int compare(const Rational& q, const RealValue& v) {
    if (v.is_rational()) return cmp(q, v.rational());
    const auto& a = v.algebraic();
    if (q <= a.lo()) return -1;
    if (q >= a.hi()) return 1;
    int s = a.defining().sign_at(q);
    if (s == 0) return 0;
    return s == a.defining().sign_at(a.lo()) ? -1 : 1;
}

int compare(const RealValue& x, const RealValue& y) {
    if (x.is_rational()) return compare(x.rational(), y);
    if (y.is_rational()) return -compare(y.rational(), x);
    RealAlgebraic a = x.algebraic(), b = y.algebraic();
    bool checked_equal = false;
    for (;;) {
        if (a.hi() <= b.lo()) return -1;
        if (b.hi() <= a.lo()) return 1;
        if (!checked_equal) {
            checked_equal = true;
            UPoly g = gcd(a.defining(), b.defining());
            if (g.degree() >= 1) {
                Rational lo = std::max(a.lo(), b.lo()), hi = std::min(a.hi(), b.hi());
                if (g.sign_at(lo) * g.sign_at(hi) < 0) return 0;
            }
        }
        RealAlgebraic& w = a.width() >= b.width() ? a : b;
        if (auto q = w.bisect()) {
            if (&w == &a) return compare(*q, RealValue(b));
            return -compare(*q, RealValue(a));
        }
    }
}

int sign_at(const UPoly& p, const RealValue& v) {
    if (p.is_zero()) return 0;
    if (v.is_rational()) return p.sign_at(v.rational());
    if (p.degree() == 0) return sgn(p.lc());
    RealAlgebraic a = v.algebraic();
    UPoly g = gcd(p, a.defining());
    if (g.degree() >= 1 && g.sign_at(a.lo()) * g.sign_at(a.hi()) < 0) return 0;
    for (;;) {
        if (descartes_bound(p, a.lo(), a.hi()) == 0) return p.sign_at((a.lo() + a.hi()) / 2);
        if (auto q = a.bisect()) return p.sign_at(*q);
    }
}

RealValue refine(const RealValue& v, const Rational& width) {
    if (v.is_rational()) return v;
    RealAlgebraic a = v.algebraic();
    while (a.width() > width)
        if (auto q = a.bisect()) return RealValue(*q);
    return RealValue(a);
}

RealValue negate(const RealValue& v) {
    if (v.is_rational()) return RealValue(Rational(-v.rational()));
    const auto& a = v.algebraic();
    return RealValue(RealAlgebraic(a.defining().reflect(), -a.hi(), -a.lo()));
}

namespace {

void isolate(const UPoly& g, const Rational& a, const Rational& b, std::vector<RealValue>& out) {
    std::size_t v = descartes_bound(g, a, b);
    if (v == 0) return;
    if (v == 1 && g.sign_at(a) != 0 && g.sign_at(b) != 0) {
        out.emplace_back(RealAlgebraic(g, a, b));
        return;
    }
    Rational m = (a + b) / 2;
    isolate(g, a, m, out);
    if (g.sign_at(m) == 0) out.emplace_back(m);
    isolate(g, m, b, out);
}

}  // namespace

std::vector<RealValue> real_roots(const UPoly& p) {
    if (p.is_zero()) throw std::domain_error("real_roots of the zero polynomial");
    std::vector<RealValue> out;
    if (p.degree() < 1) return out;
    UPoly g = p.square_free();
    Rational bound = 1;
    Rational rb = g.root_bound();
    while (bound < rb) bound *= 2;
    isolate(g, -bound, bound, out);
    return out;
}

// ---------------------------------------------------------------- extended reals

std::string ExtendedReal::to_string() const {
    switch (kind_) {
        case Kind::NegInf: return "-oo";
        case Kind::PosInf: return "+oo";
        default: return v_->to_string();
    }
}

int compare(const ExtendedReal& a, const ExtendedReal& b) {
    auto rank = [](ExtendedReal::Kind k) {
        return k == ExtendedReal::Kind::NegInf ? 0 : k == ExtendedReal::Kind::Finite ? 1 : 2;
    };
    int ra = rank(a.kind()), rb = rank(b.kind());
    if (ra != rb) return ra < rb ? -1 : 1;
    if (ra != 1) return 0;
    return compare(a.value(), b.value());
}

ExtendedReal negate(const ExtendedReal& a) {
    switch (a.kind()) {
        case ExtendedReal::Kind::NegInf: return ExtendedReal::pos_inf();
        case ExtendedReal::Kind::PosInf: return ExtendedReal::neg_inf();
        default: return ExtendedReal(negate(a.value()));
    }
}

bool simpler(const Rational& a, const Rational& b) {
    std::size_t ba = bit_size(a), bb = bit_size(b);
    if (ba != bb) return ba < bb;
    if (a.get_den() != b.get_den()) return a.get_den() < b.get_den();
    Integer na = abs(a.get_num()), nb = abs(b.get_num());
    if (na != nb) return na < nb;
    return a < b;
}

Rational rational_between(const ExtendedReal& lo, const ExtendedReal& hi,
                          std::span<const RealValue> exclude) {
    if (compare(lo, hi) >= 0) throw EmptyInterval("rational_between: empty interval");
    Rational q = simplest(lo, hi);
    bool excluded = std::any_of(exclude.begin(), exclude.end(),
                                [&](const RealValue& e) { return compare(q, e) == 0; });
    if (!excluded) return q;
    Rational left = rational_between(lo, ExtendedReal(q), exclude);
    Rational right = rational_between(ExtendedReal(q), hi, exclude);
    return simpler(left, right) ? left : right;
}

}  // namespace apxscc
