#include "apxscc/roots.hpp"

#include <algorithm>

namespace apxscc {

std::string IndexedRoot::to_string(const VariableOrder* names) const {
    return "root(" + poly.to_string(names) + ", " + std::to_string(index) + ")";
}

namespace {

struct Reduced {
    Polynomial poly;
    Var alg = 0;  // index of the single remaining algebraic coordinate, or 0
};

// substitutes the rational coordinates of point into p
Reduced reduce(const Polynomial& p, std::span<const RealValue> point) {
    Reduced r{p, 0};
    for (Var i = 1; i <= point.size(); ++i) {
        if (r.poly.degree(i) == 0) continue;
        if (point[i - 1].is_rational()) r.poly = r.poly.substitute(i, point[i - 1].rational());
    }
    for (Var i = 1; i <= point.size(); ++i) {
        if (r.poly.degree(i) == 0) continue;
        if (r.alg != 0) throw PrecisionExhausted("more than one algebraic coordinate");
        r.alg = i;
    }
    return r;
}

// Q(alpha) as Q[t]/(m), with m split lazily whenever a zero test finds a factor
class Extension {
public:
    explicit Extension(const RealAlgebraic& a) : m_(a.defining().monic()), lo_(a.lo()), hi_(a.hi()) {}

    const UPoly& modulus() const { return m_; }
    RealValue value() const { return RealValue(RealAlgebraic(m_, lo_, hi_)); }

    UPoly reduce(const UPoly& c) const { return c.degree() < m_.degree() ? c : divmod(c, m_).second; }

    bool is_zero(const UPoly& c0) {
        UPoly c = reduce(c0);
        if (c.is_zero()) return true;
        UPoly g = gcd(m_, c);
        if (g.degree() < 1) return false;
        if (g.sign_at(lo_) * g.sign_at(hi_) < 0) {
            m_ = g;
            return true;
        }
        m_ = divmod(m_, g).first.monic();
        return false;
    }

    int sign(const UPoly& c) {
        if (is_zero(c)) return 0;
        return apxscc::sign_at(reduce(c), value());
    }

    // c must already be known nonzero (is_zero leaves gcd(c, m) = 1)
    UPoly inverse(const UPoly& c) const {
        UPoly r0 = m_, r1 = reduce(c), s0, s1 = UPoly::constant(1);
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            UPoly s = s0 - q * s1;
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        return Rational(1 / r0.lc()) * s0;
    }

    UPoly mul(const UPoly& a, const UPoly& b) const { return reduce(a * b); }

    void drop_factor(const UPoly& g) { m_ = divmod(m_, g).first.monic(); }

private:
    UPoly m_;
    Rational lo_, hi_;
};

// polynomial in x with coefficients in Q(alpha), lowest degree first
using ExtPoly = std::vector<UPoly>;

void trim(ExtPoly& f, Extension& e) {
    while (!f.empty() && e.is_zero(f.back())) f.pop_back();
}

ExtPoly rem(ExtPoly a, const ExtPoly& b, Extension& e) {
    UPoly inv = e.inverse(b.back());
    trim(a, e);
    while (a.size() >= b.size()) {
        UPoly factor = e.mul(a.back(), inv);
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i + 1 < b.size(); ++i)
            a[i + shift] = e.reduce(a[i + shift] - factor * b[i]);
        a.pop_back();
        trim(a, e);
    }
    return a;
}

ExtPoly derivative(const ExtPoly& f) {
    ExtPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(Rational(static_cast<long>(i)) * f[i]);
    return d;
}

int sign_at(const ExtPoly& f, const Rational& q, Extension& e) {
    UPoly v;
    for (std::size_t i = f.size(); i-- > 0;) v = q * v + f[i];
    return e.sign(v);
}

std::vector<ExtPoly> sturm_sequence(const ExtPoly& f, Extension& e) {
    std::vector<ExtPoly> s{f};
    ExtPoly d = derivative(f);
    trim(d, e);
    if (d.empty()) return s;
    s.push_back(std::move(d));
    for (;;) {
        ExtPoly r = rem(s[s.size() - 2], s.back(), e);
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        s.push_back(std::move(r));
    }
    return s;
}

int variations(const std::vector<ExtPoly>& seq, const Rational& q, Extension& e) {
    int v = 0, last = 0;
    for (const auto& p : seq) {
        int s = sign_at(p, q, e);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

RootIsolation roots_over_extension(const Polynomial& p, Var alg, Var j, const RealAlgebraic& alpha) {
    Extension e(alpha);
    ExtPoly f;
    for (const auto& c : p.coefficients(j)) f.push_back(e.reduce(c.to_upoly(alg)));
    trim(f, e);
    if (f.empty()) return {true, {}};
    if (f.size() == 1) return {false, {}};

    // remove conjugates on which every coefficient vanishes, so the norm is nonzero
    UPoly g = e.modulus();
    for (const auto& c : f) {
        g = gcd(g, c);
        if (g.degree() < 1) break;
    }
    if (g.degree() >= 1) e.drop_factor(g);
    for (auto& c : f) c = e.reduce(c);

    Polynomial lifted;
    const Polynomial x = Polynomial::variable(2);
    for (std::size_t k = 0; k < f.size(); ++k)
        lifted = lifted + Polynomial::from_upoly(f[k], 1) * x.pow(static_cast<unsigned>(k));
    UPoly norm = resultant(Polynomial::from_upoly(e.modulus(), 1), lifted, 1).to_upoly(2);

    std::vector<ExtPoly> seq = sturm_sequence(f, e);
    RootIsolation out;
    for (const auto& beta : apxscc::real_roots(norm)) {
        bool is_root;
        if (beta.is_rational())
            is_root = sign_at(f, beta.rational(), e) == 0;
        else
            is_root = variations(seq, beta.algebraic().lo(), e) - variations(seq, beta.algebraic().hi(), e) > 0;
        if (is_root) out.roots.push_back(beta);
    }
    return out;
}

}  // namespace

RootIsolation real_roots(const Polynomial& p, std::span<const RealValue> s) {
    const Var j = static_cast<Var>(s.size() + 1);
    if (p.level() > j) throw std::invalid_argument("real_roots: prefix too short");
    Reduced r = reduce(p, s);
    if (r.alg == 0) {
        UPoly u = r.poly.to_upoly(j);
        if (u.is_zero()) return {true, {}};
        return {false, apxscc::real_roots(u)};
    }
    return roots_over_extension(r.poly, r.alg, j, s[r.alg - 1].algebraic());
}

std::vector<RootEntry> ir_exps(std::span<const Polynomial> P, std::span<const RealValue> s) {
    const Var j = static_cast<Var>(s.size() + 1);
    std::vector<RootEntry> out;
    for (const auto& p : P) {
        RootIsolation iso = real_roots(p, s);
        if (iso.nullified) throw std::logic_error("ir_exps: nullified polynomial " + p.to_string());
        for (std::size_t k = 0; k < iso.roots.size(); ++k)
            out.push_back(RootEntry{IndexedRoot{p, static_cast<unsigned>(k + 1)}, iso.roots[k]});
    }
    std::stable_sort(out.begin(), out.end(), [j](const RootEntry& a, const RootEntry& b) {
        int c = compare(a.value, b.value);
        if (c != 0) return c < 0;
        unsigned da = a.root.poly.degree(j), db = b.root.poly.degree(j);
        if (da != db) return da < db;
        std::string ta = a.root.poly.to_string(), tb = b.root.poly.to_string();
        if (ta != tb) return ta < tb;
        return a.root.index < b.root.index;
    });
    return out;
}

std::optional<RealValue> eval_irexp(const IndexedRoot& xi, std::span<const RealValue> r) {
    const Var j = xi.poly.level();
    if (j >= 1 && j <= r.size() + 1 && xi.poly.degree(j) == 1 &&
        std::all_of(r.begin(), r.begin() + (j - 1), [](const RealValue& v) { return v.is_rational(); })) {
        std::vector<Rational> q;
        for (Var i = 0; i + 1 < j; ++i) q.push_back(r[i].rational());
        UPoly u = xi.poly.specialize(q);
        if (u.degree() != 1) return std::nullopt;
        if (xi.index != 1) return std::nullopt;
        return RealValue(Rational(-u.coeff(0) / u.coeff(1)));
    }
    RootIsolation iso = real_roots(xi.poly, r);
    if (iso.nullified || xi.index == 0 || xi.index > iso.roots.size()) return std::nullopt;
    return iso.roots[xi.index - 1];
}

int sign_at_point(const Polynomial& p, std::span<const RealValue> point) {
    if (p.level() > point.size()) throw std::invalid_argument("sign_at_point: point too short");
    Reduced r = reduce(p, point);
    if (r.alg == 0) return sgn(r.poly.constant_value());
    return apxscc::sign_at(r.poly.to_upoly(r.alg), point[r.alg - 1]);
}

}  // namespace apxscc
