#include "doctest.h"

#include <random>

#include "apxscc/poly.hpp"
#include "oracles.hpp"

using namespace apxscc;
using namespace apxscc::oracle;

namespace {

const Polynomial x1 = Polynomial::variable(1);
const Polynomial x2 = Polynomial::variable(2);
const Polynomial x3 = Polynomial::variable(3);

}  // namespace

TEST_CASE("degree and coefficients") {
    Polynomial p = x1.pow(2) * x2 + 1;
    CHECK(p.degree(2) == 1);
    CHECK(p.degree(1) == 2);
    CHECK(Polynomial(7).degree(1) == 0);
    CHECK(p.level() == 2);
    CHECK(Polynomial(7).level() == 0);

    Polynomial q = x1 * x2.pow(2) + x2 + 3;
    auto c = q.coefficients(2);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == Polynomial(3));
    CHECK(c[1] == Polynomial(1));
    CHECK(c[2] == x1);
    CHECK(q.ldcf(2) == x1);
    CHECK(Polynomial(5).coefficients(1) == std::vector<Polynomial>{Polynomial(5)});
    CHECK(Polynomial(5).ldcf(1) == Polynomial(5));
    auto c2 = (x2.pow(2) - x1).coefficients(2);
    CHECK(c2 == std::vector<Polynomial>{-x1, Polynomial(0), Polynomial(1)});
    CHECK(Polynomial::from_coefficients(2, c) == q);
}

TEST_CASE("derivative") {
    CHECK((x2.pow(2) - x1).derivative(2) == 2 * x2);
    CHECK((x2.pow(2) - x1).derivative(1) == Polynomial(-1));
    CHECK(Polynomial(4).derivative(1).is_zero());
}

TEST_CASE("substitution") {
    Polynomial circle = x1.pow(2) + x2.pow(2) - 1;
    std::vector<Rational> s{2};
    CHECK(circle.specialize(s) == UPoly({3, 0, 1}));
    std::vector<Rational> s4{4};
    CHECK((x2.pow(2) - x1).specialize(s4) == UPoly({-4, 0, 1}));
    CHECK(Polynomial(5).specialize(s4) == UPoly({5}));
    std::vector<Rational> pt{Rational(1, 2), 3};
    CHECK(circle.evaluate(pt) == Rational(33, 4));
}

TEST_CASE("text form") {
    VariableOrder names({"x", "y"});
    Polynomial p = x1.pow(2) * x2 - Rational(1, 2) * x1 + 3;
    CHECK(p.to_string() == "x1^2*x2 - 1/2*x1 + 3");
    CHECK(p.to_string(&names) == "x^2*y - 1/2*x + 3");
    CHECK((-x2 + x1).to_string() == "-x2 + x1");
    CHECK(Polynomial().to_string() == "0");
}

TEST_CASE("normalization") {
    Polynomial p = Rational(-2, 3) * x1.pow(2) + Rational(4, 9);
    Polynomial n = p.normalized();
    CHECK(n == 3 * x1.pow(2) - 2);
    CHECK(n.normalized() == n);
    CHECK(Polynomial(-5).normalized() == Polynomial(1));
}

TEST_CASE("resultant examples") {
    Polynomial r1 = resultant(x2 - x1, x2.pow(2) - 2, 2);
    CHECK(r1.normalized() == x1.pow(2) - 2);
    CHECK(r1 == sylvester_oracle(x2 - x1, x2.pow(2) - 2, 2));

    Polynomial circle = x1.pow(2) + x2.pow(2) - 1;
    Polynomial r2 = resultant(circle, x2, 2);
    CHECK(r2.normalized() == x1.pow(2) - 1);
    CHECK(r2 == sylvester_oracle(circle, x2, 2));

    Polynomial r3 = resultant(x2.pow(2) + x1, Polynomial(5), 2);
    CHECK(r3 == Polynomial(25));
    CHECK(r3 == sylvester_oracle(x2.pow(2) + x1, Polynomial(5), 2));
}

TEST_CASE("discriminant examples") {
    // x^2 + b x + c with b = x1, c = x2, x = x3
    Polynomial quad = x3.pow(2) + x1 * x3 + x2;
    Polynomial raw = sylvester_oracle(quad, quad.derivative(3), 3);
    CHECK(discriminant(quad, 3) == raw.normalized());
    CHECK(discriminant(quad, 3) == 4 * x2 - x1.pow(2));
    CHECK(sylvester_oracle(x2.pow(2) - x1, 2 * x2, 2) == -4 * x1);
    CHECK(discriminant(x2.pow(2) - x1, 2) == x1);
    CHECK(discriminant(x1 - 5, 1).is_constant());
    CHECK_THROWS_AS(discriminant(x1, 2), std::domain_error);
}

TEST_CASE("resultant agrees with the Sylvester oracle on random pairs") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 150; ++i) {
        Polynomial p = random_polynomial(rng, 2, 3, 4), q = random_polynomial(rng, 2, 3, 4);
        if (p.degree(2) + q.degree(2) > 5) continue;
        CHECK(resultant(p, q, 2) == sylvester_oracle(p, q, 2));
    }
}

TEST_CASE("resultant specializes to the univariate resultant") {
    std::mt19937_64 rng(17);
    int done = 0;
    while (done < 300) {
        unsigned level = 1 + rng() % 3;
        Polynomial p = random_polynomial(rng, level, 4, 4), q = random_polynomial(rng, level, 4, 4);
        std::vector<Rational> r;
        for (unsigned i = 1; i < level; ++i) r.push_back(random_small_rational(rng));
        if (p.ldcf(level).substitute_prefix(r).is_zero() || q.ldcf(level).substitute_prefix(r).is_zero()) continue;
        Polynomial res = resultant(p, q, level);
        Rational lhs = res.evaluate(r);
        CHECK(lhs == univariate_resultant(p.specialize(r), q.specialize(r)));
        ++done;
    }
}

TEST_CASE("common and multiple roots are detected") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        Rational a = random_small_rational(rng);
        Polynomial u = random_polynomial(rng, 2, 2, 3), v = random_polynomial(rng, 2, 2, 3);
        Polynomial lin = x2 - a;
        std::vector<Rational> r{random_small_rational(rng)};
        CHECK(resultant(lin * u, lin * v, 2).evaluate(r) == 0);
        CHECK(discriminant(lin * lin * u, 2).evaluate(r) == 0);
    }
}

TEST_CASE("ring laws and evaluation homomorphism") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 200; ++i) {
        Polynomial a = random_polynomial(rng, 3, 3, 4), b = random_polynomial(rng, 2, 3, 4),
                   c = random_polynomial(rng, 3, 2, 3);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Polynomial());
        std::vector<Rational> pt{random_small_rational(rng), random_small_rational(rng), random_small_rational(rng)};
        CHECK((a * b + c).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt) + c.evaluate(pt));
        if (!b.is_zero()) CHECK(exact_divide(a * b, b) == a);
        Polynomial n = a.normalized();
        CHECK(n.normalized() == n);
        CHECK((n.evaluate(pt) == 0) == (a.evaluate(pt) == 0));
    }
}

TEST_CASE("multivariate gcd and square-free part") {
    const Polynomial x1 = Polynomial::variable(1), x2 = Polynomial::variable(2), x3 = Polynomial::variable(3);
    CHECK(gcd(x1 * x2 - x1, x2.pow(2) - 1) == x2 - 1);
    CHECK(gcd(x1 * x2, x1 * (x2 + 1)) == x1);
    CHECK(gcd(x1.pow(2) - x2.pow(2), x1 + x2) == x1 + x2);
    CHECK(gcd(Polynomial(6), x1) == Polynomial(1));
    CHECK(content(x1 * x3.pow(2) + x1 * x2 * x3, 3) == x1);
    CHECK(squarefree_part(x2.pow(4), 2) == x2);
    CHECK(squarefree_part(x1 * (x2 - x1).pow(2) * (x2 + 1), 2) == ((x2 - x1) * (x2 + 1)).normalized());

    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        unsigned n = 1 + rng() % 3;
        Polynomial a = random_polynomial(rng, 1 + rng() % n, 2, 3);
        Polynomial b = random_polynomial(rng, 1 + rng() % n, 2, 3);
        Polynomial c = random_polynomial(rng, 1 + rng() % n, 2, 2);
        Polynomial g = gcd(a * c, b * c);
        CHECK_NOTHROW(exact_divide(a * c, g));
        CHECK_NOTHROW(exact_divide(b * c, g));
        CHECK_NOTHROW(exact_divide(g, c.normalized()));
        // cofactors are coprime
        Polynomial ra = exact_divide(a * c, g), rb = exact_divide(b * c, g);
        CHECK(gcd(ra, rb) == Polynomial(1));
    }
}
