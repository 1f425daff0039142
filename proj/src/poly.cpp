#include "apxscc/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace apxscc {

// ---------------------------------------------------------------- variable order

VariableOrder::VariableOrder(std::vector<std::string> names) {
    for (auto& n : names) add(std::move(n));
}

VariableOrder VariableOrder::standard(unsigned n) {
    VariableOrder v;
    for (unsigned i = 1; i <= n; ++i) v.add("x" + std::to_string(i));
    return v;
}

const std::string& VariableOrder::name(Var j) const {
    if (j == 0 || j > names_.size()) throw std::out_of_range("unknown variable index");
    return names_[j - 1];
}

Var VariableOrder::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<Var>(i + 1);
    return 0;
}

Var VariableOrder::add(std::string name) {
    if (index_of(name) != 0) throw std::invalid_argument("duplicate variable " + name);
    names_.push_back(std::move(name));
    return size();
}

// ---------------------------------------------------------------- monomials

namespace {

void trim(Monomial& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

bool mono_divides(const Monomial& d, const Monomial& m) {
    if (d.size() > m.size()) return false;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > m[i]) return false;
    return true;
}

Monomial mono_div(const Monomial& m, const Monomial& d) {
    Monomial r = m;
    for (std::size_t i = 0; i < d.size(); ++i) r[i] -= d[i];
    trim(r);
    return r;
}

unsigned exponent(const Monomial& m, Var j) { return j - 1 < m.size() ? m[j - 1] : 0; }

Rational power(const Rational& b, unsigned e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), b.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), b.get_den_mpz_t(), e);
    return r;
}

}  // namespace

int compare_monomials(const Monomial& a, const Monomial& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

// ---------------------------------------------------------------- construction

Polynomial::Polynomial(const Rational& c) {
    if (c != 0) terms_.push_back(Term{{}, c});
}

Polynomial Polynomial::variable(Var j) {
    Monomial m(j, 0);
    m[j - 1] = 1;
    Polynomial p;
    p.terms_.push_back(Term{std::move(m), 1});
    return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
    for (auto& t : terms) trim(t.mono);
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return compare_monomials(a.mono, b.mono) < 0; });
    Polynomial p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
            p.terms_.back().coeff += t.coeff;
        else {
            if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
    return p;
}

Polynomial Polynomial::from_coefficients(Var j, const std::vector<Polynomial>& coeffs) {
    std::vector<Term> out;
    for (unsigned k = 0; k < coeffs.size(); ++k)
        for (const auto& t : coeffs[k].terms_) {
            Term n = t;
            if (k > 0) {
                if (n.mono.size() < j) n.mono.resize(j, 0);
                n.mono[j - 1] += k;
            }
            out.push_back(std::move(n));
        }
    return from_terms(std::move(out));
}

Polynomial Polynomial::from_upoly(const UPoly& p, Var j) {
    std::vector<Term> out;
    for (int k = 0; k <= p.degree(); ++k) {
        if (p.coeffs()[k] == 0) continue;
        Monomial m;
        if (k > 0) {
            m.assign(j, 0);
            m[j - 1] = static_cast<unsigned>(k);
        }
        out.push_back(Term{std::move(m), p.coeffs()[k]});
    }
    return from_terms(std::move(out));
}

// ---------------------------------------------------------------- accessors

Rational Polynomial::constant_value() const {
    if (!is_constant()) throw std::logic_error("not a constant polynomial");
    return terms_.empty() ? Rational(0) : terms_.front().coeff;
}

Var Polynomial::level() const {
    // the leading term carries the highest variable
    return terms_.empty() ? 0 : static_cast<Var>(terms_.back().mono.size());
}

unsigned Polynomial::degree(Var j) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, exponent(t.mono, j));
    return d;
}

unsigned Polynomial::total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) {
        unsigned s = 0;
        for (auto e : t.mono) s += e;
        d = std::max(d, s);
    }
    return d;
}

std::vector<Polynomial> Polynomial::coefficients(Var j) const {
    std::vector<std::vector<Term>> buckets(degree(j) + 1);
    for (const auto& t : terms_) {
        unsigned e = exponent(t.mono, j);
        Term n = t;
        if (e > 0) n.mono[j - 1] = 0;
        buckets[e].push_back(std::move(n));
    }
    std::vector<Polynomial> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
    return out;
}

Polynomial Polynomial::ldcf(Var j) const {
    if (is_zero()) return {};
    return coefficients(j).back();
}

Polynomial Polynomial::derivative(Var j) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        unsigned e = exponent(t.mono, j);
        if (e == 0) continue;
        Term n = t;
        n.coeff *= e;
        n.mono[j - 1] -= 1;
        out.push_back(std::move(n));
    }
    return from_terms(std::move(out));
}

Polynomial Polynomial::substitute(Var j, const Rational& v) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        unsigned e = exponent(t.mono, j);
        Term n = t;
        if (e > 0) {
            n.coeff *= power(v, e);
            n.mono[j - 1] = 0;
        }
        out.push_back(std::move(n));
    }
    return from_terms(std::move(out));
}

Polynomial Polynomial::substitute_prefix(std::span<const Rational> s) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Term n = t;
        for (std::size_t i = 0; i < s.size() && i < n.mono.size(); ++i) {
            if (n.mono[i] == 0) continue;
            n.coeff *= power(s[i], n.mono[i]);
            n.mono[i] = 0;
        }
        if (n.coeff != 0) out.push_back(std::move(n));
    }
    return from_terms(std::move(out));
}

UPoly Polynomial::to_upoly(Var j) const {
    std::vector<Rational> c(degree(j) + 1);
    for (const auto& t : terms_) {
        for (std::size_t i = 0; i < t.mono.size(); ++i)
            if (i != j - 1 && t.mono[i] != 0) throw std::logic_error("to_upoly: other variables present");
        c[exponent(t.mono, j)] += t.coeff;
    }
    return UPoly(std::move(c));
}

UPoly Polynomial::specialize(std::span<const Rational> s) const {
    return substitute_prefix(s).to_upoly(static_cast<Var>(s.size() + 1));
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
    Rational r = 0;
    for (const auto& t : terms_) {
        if (t.mono.size() > point.size()) throw std::out_of_range("evaluate: point too short");
        Rational v = t.coeff;
        for (std::size_t i = 0; i < t.mono.size(); ++i)
            if (t.mono[i] > 0) v *= power(point[i], t.mono[i]);
        r += v;
    }
    return r;
}

Polynomial Polynomial::normalized() const {
    if (is_zero()) return {};
    Integer g = 0, l = 1;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    Rational f(l, g);
    f.canonicalize();
    if (leading_term().coeff < 0) f = -f;
    if (f == 1) return *this;
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coeff *= f;
    return p;
}

// ---------------------------------------------------------------- arithmetic

Polynomial Polynomial::operator-() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
}

namespace {

template <bool Subtract>
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int c = i == a.size() ? 1 : j == b.size() ? -1 : compare_monomials(a[i].mono, b[j].mono);
        if (c < 0) {
            out.push_back(a[i++]);
        } else if (c > 0) {
            out.push_back(b[j++]);
            if constexpr (Subtract) out.back().coeff = -out.back().coeff;
        } else {
            Rational s = Subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
            if (s != 0) out.push_back(Term{a[i].mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial p;
    p.terms_ = merge<false>(a.terms_, b.terms_);
    return p;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Polynomial p;
    p.terms_ = merge<true>(a.terms_, b.terms_);
    return p;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_constant()) return a.terms_.front().coeff * b;
    if (b.is_constant()) return b.terms_.front().coeff * a;
    std::vector<Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) prod.push_back(Term{mono_mul(x.mono, y.mono), x.coeff * y.coeff});
    return Polynomial::from_terms(std::move(prod));
}

Polynomial operator*(const Rational& s, const Polynomial& a) {
    if (s == 0) return {};
    Polynomial p = a;
    for (auto& t : p.terms_) t.coeff *= s;
    return p;
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial r(1), b = *this;
    while (k > 0) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k > 0) b = b * b;
    }
    return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b) {
    std::size_t i = a.terms_.size(), j = b.terms_.size();
    while (i > 0 && j > 0) {
        --i;
        --j;
        int c = compare_monomials(a.terms_[i].mono, b.terms_[j].mono);
        if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        int d = cmp(a.terms_[i].coeff, b.terms_[j].coeff);
        if (d != 0) return d < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (i == 0 && j == 0) return std::strong_ordering::equal;
    return i == 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string Polynomial::to_string(const VariableOrder* names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = terms_.size(); k-- > 0;) {
        const Term& t = terms_[k];
        Rational mag = abs(t.coeff);
        if (first)
            os << (t.coeff < 0 ? "-" : "");
        else
            os << (t.coeff < 0 ? " - " : " + ");
        first = false;
        bool need_star = false;
        if (t.mono.empty() || mag != 1) {
            os << mag.get_str();
            need_star = true;
        }
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            if (t.mono[i] == 0) continue;
            if (need_star) os << "*";
            need_star = true;
            Var v = static_cast<Var>(i + 1);
            if (names && v <= names->size())
                os << names->name(v);
            else
                os << "x" << v;
            if (t.mono[i] > 1) os << "^" << t.mono[i];
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- division, resultants

Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("exact_divide by zero");
    if (b.is_constant()) return Rational(1 / b.constant_value()) * a;
    std::vector<Term> q;
    Polynomial rem = a;
    const Term& lb = b.leading_term();
    while (!rem.is_zero()) {
        const Term& lt = rem.leading_term();
        if (!mono_divides(lb.mono, lt.mono)) throw std::domain_error("exact_divide: not divisible");
        Term t{mono_div(lt.mono, lb.mono), lt.coeff / lb.coeff};
        rem = rem - Polynomial::from_terms({t}) * b;
        q.push_back(std::move(t));
    }
    return Polynomial::from_terms(std::move(q));
}

namespace {

// res(p, q) where p = a x + b and q = sum c_k x^k: sum c_k (-b)^k a^(e-k)
Polynomial linear_resultant(const Polynomial& a, const Polynomial& b, const std::vector<Polynomial>& c) {
    const unsigned e = static_cast<unsigned>(c.size() - 1);
    Polynomial nb = -b;
    Polynomial acc;
    Polynomial nbk(1);
    std::vector<Polynomial> apow(e + 1);
    apow[0] = Polynomial(1);
    for (unsigned k = 1; k <= e; ++k) apow[k] = apow[k - 1] * a;
    for (unsigned k = 0; k <= e; ++k) {
        if (!c[k].is_zero()) acc = acc + c[k] * nbk * apow[e - k];
        if (k < e) nbk = nbk * nb;
    }
    return acc;
}

Polynomial bareiss_determinant(std::vector<std::vector<Polynomial>> m) {
    const std::size_t n = m.size();
    if (n == 0) return Polynomial(1);
    bool negate_result = false;
    Polynomial prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return {};
            std::swap(m[k], m[r]);
            negate_result = !negate_result;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = exact_divide(v, prev);
            }
        }
        prev = m[k][k];
    }
    return negate_result ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

}  // namespace

Polynomial resultant(const Polynomial& p, const Polynomial& q, Var j) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<Polynomial> cp = p.coefficients(j), cq = q.coefficients(j);
    const unsigned d = static_cast<unsigned>(cp.size() - 1), e = static_cast<unsigned>(cq.size() - 1);
    if (d == 0) return p.pow(e);
    if (e == 0) return q.pow(d);
    if (d == 1) return linear_resultant(cp[1], cp[0], cq);
    if (e == 1) {
        Polynomial r = linear_resultant(cq[1], cq[0], cp);
        return d % 2 == 1 ? -r : r;
    }
    const std::size_t n = d + e;
    std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n));
    for (unsigned r = 0; r < e; ++r)
        for (unsigned k = 0; k <= d; ++k) m[r][r + k] = cp[d - k];
    for (unsigned r = 0; r < d; ++r)
        for (unsigned k = 0; k <= e; ++k) m[e + r][r + k] = cq[e - k];
    return bareiss_determinant(std::move(m));
}

Polynomial discriminant(const Polynomial& p, Var j) {
    if (p.degree(j) < 1) throw std::domain_error("discriminant of a polynomial constant in the variable");
    return resultant(p, p.derivative(j), j).normalized();
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, Var j) {
    const unsigned db = b.degree(j);
    const Polynomial lb = b.ldcf(j);
    const Polynomial x = Polynomial::variable(j);
    Polynomial r = a;
    while (!r.is_zero() && r.degree(j) >= db) {
        const unsigned dr = r.degree(j);
        r = lb * r - r.ldcf(j) * x.pow(dr - db) * b;
    }
    return r;
}

Polynomial content(const Polynomial& p, Var j) {
    Polynomial c;
    for (const auto& k : p.coefficients(j)) {
        if (k.is_zero()) continue;
        c = gcd(c, k);
        if (c.is_constant()) return Polynomial(1);
    }
    return c;
}

Polynomial primitive_part(const Polynomial& p, Var j) {
    if (p.is_zero()) return p;
    return exact_divide(p, content(p, j)).normalized();
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    if (a.is_constant() || b.is_constant()) return Polynomial(1);
    const Var j = std::max(a.level(), b.level());
    if (a.degree(j) == 0) return gcd(a, content(b, j));
    if (b.degree(j) == 0) return gcd(content(a, j), b);
    const Polynomial ca = content(a, j), cb = content(b, j);
    Polynomial f = exact_divide(a, ca).normalized(), g = exact_divide(b, cb).normalized();
    if (f.degree(j) < g.degree(j)) std::swap(f, g);
    while (!g.is_zero() && g.degree(j) > 0) {
        Polynomial r = pseudo_remainder(f, g, j);
        f = std::move(g);
        g = r.is_zero() ? r : primitive_part(r, j);
    }
    Polynomial h = g.is_zero() ? f : Polynomial(1);
    return (gcd(ca, cb) * h).normalized();
}

Polynomial squarefree_part(const Polynomial& p, Var j) {
    Polynomial pp = primitive_part(p, j);
    if (pp.degree(j) < 2) return pp;
    return exact_divide(pp, gcd(pp, pp.derivative(j))).normalized();
}

}  // namespace apxscc
