#include "doctest.h"

#include <random>

#include "apxscc/numeric.hpp"

using namespace apxscc;

namespace {

RealValue sqrt2() { return RealValue(RealAlgebraic(UPoly({-2, 0, 1}), 1, 2)); }

// Brute force: for every denominator up to max_den, the smallest |numerator| placing the
// fraction strictly inside (lo, hi); returns the overall simplest.
Rational brute_simplest(const Rational& lo, const Rational& hi, long max_den) {
    std::optional<Rational> best;
    for (long q = 1; q <= max_den; ++q) {
        Integer den(q);
        Integer pmin;
        // candidates p with lo < p/q < hi: p in (lo*q, hi*q)
        Rational a = lo * den, b = hi * den;
        Integer first = a.get_num() / a.get_den();  // truncation
        mpz_fdiv_q(first.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
        first += 1;
        Integer last;
        mpz_cdiv_q(last.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
        last -= 1;
        if (first > last) continue;
        if (first <= 0 && last >= 0)
            pmin = 0;
        else if (first > 0)
            pmin = first;
        else
            pmin = last;
        Rational c(pmin, den);
        c.canonicalize();
        if (!best || simpler(c, *best)) best = c;
    }
    REQUIRE(best.has_value());
    return *best;
}

Rational random_rational(std::mt19937_64& rng, long range, long max_den) {
    std::uniform_int_distribution<long> num(-range, range), den(1, max_den);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

}  // namespace

TEST_CASE("bit size") {
    CHECK(bit_size(Rational(0)) == 2);
    CHECK(bit_size(Rational(1)) == 2);
    CHECK(bit_size(Rational(3, 2)) == 4);
    CHECK(bit_size(Rational(-17, 12)) == 9);
}

TEST_CASE("parse rational") {
    CHECK(parse_rational("1.25") == Rational(5, 4));
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK(parse_rational("7") == 7);
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("univariate basics") {
    UPoly p({-2, 0, 1});
    CHECK(p.degree() == 2);
    CHECK(p.to_string() == "x^2 - 2");
    CHECK(p.eval(3) == 7);
    CHECK(p.derivative() == UPoly({0, 2}));
    UPoly sq = UPoly({-1, 1}) * UPoly({-1, 1}) * UPoly({2, 1});
    CHECK(sq.square_free() == (UPoly({-1, 1}) * UPoly({2, 1})).monic());
    CHECK(gcd(UPoly({-1, 0, 1}), UPoly({1, 1})) == UPoly({1, 1}));
    CHECK(gcd(UPoly({-2, 0, 1}), UPoly({-3, 1})) == UPoly::constant(1));
    auto [q, r] = divmod(UPoly({-1, 0, 0, 1}), UPoly({-1, 1}));
    CHECK(q == UPoly({1, 1, 1}));
    CHECK(r.is_zero());
}

TEST_CASE("compare") {
    RealValue s = sqrt2();
    // (3/2)^2 - 2 > 0 and 3/2 > 0, so sqrt2 < 3/2; 1^2 - 2 < 0 so sqrt2 > 1
    CHECK(compare(s, Rational(3, 2)) < 0);
    CHECK(compare(s, s) == 0);
    CHECK(compare(s, Rational(1)) > 0);
    // same number, different representations
    RealValue s2(RealAlgebraic(UPoly({-2, 0, 1}) * UPoly({-5, 1}), Rational(13, 10), Rational(3, 2)));
    CHECK(compare(s, s2) == 0);
    RealValue s3(RealAlgebraic(UPoly({-3, 0, 1}), 1, 2));
    CHECK(compare(s, s3) < 0);
    CHECK(compare(negate(s), Rational(-1)) < 0);
}

TEST_CASE("sign_at") {
    RealValue s = sqrt2();
    CHECK(sign_at(UPoly({-2, 0, 1}), s) == 0);
    CHECK(sign_at(UPoly({-3, 1}), s) < 0);
    CHECK(sign_at(UPoly({0, 0, 1}), RealValue(0)) == 0);
    CHECK(sign_at(UPoly({-2, 0, 1}) * UPoly({1, 1}), s) == 0);
    CHECK(sign_at(UPoly({-7, 0, 5}), s) > 0);  // 5*2 - 7
}

TEST_CASE("refine") {
    RealValue r = refine(sqrt2(), Rational(1, 100));
    REQUIRE(!r.is_rational());
    CHECK(r.algebraic().width() <= Rational(1, 100));
    CHECK(r.algebraic().lo() >= Rational(140, 100));
    CHECK(r.algebraic().hi() <= Rational(143, 100));
    CHECK(compare(r, sqrt2()) == 0);
    CHECK(compare(refine(RealValue(Rational(1, 3)), Rational(1, 10)), Rational(1, 3)) == 0);
}

TEST_CASE("real roots of univariate polynomials") {
    auto roots = real_roots(UPoly({-4, 0, 1}));
    REQUIRE(roots.size() == 2);
    CHECK(compare(roots[0], Rational(-2)) == 0);
    CHECK(compare(roots[1], Rational(2)) == 0);
    // (x^2 - 2)(x - 1)^2 (x + 3)
    auto r2 = real_roots(UPoly({-2, 0, 1}) * UPoly({-1, 1}) * UPoly({-1, 1}) * UPoly({3, 1}));
    REQUIRE(r2.size() == 4);
    CHECK(compare(r2[0], -3) == 0);
    CHECK(compare(r2[1], negate(sqrt2())) == 0);
    CHECK(compare(r2[2], 1) == 0);
    CHECK(compare(r2[3], sqrt2()) == 0);
    CHECK(real_roots(UPoly({1, 0, 1})).empty());
}

TEST_CASE("rational_between examples") {
    CHECK(rational_between(Rational(0), Rational(1)) == Rational(1, 2));
    CHECK(rational_between(ExtendedReal::neg_inf(), Rational(5)) == 0);
    CHECK(rational_between(Rational(141, 100), Rational(142, 100)) == Rational(17, 12));
    CHECK(brute_simplest(Rational(141, 100), Rational(142, 100), 12) == Rational(17, 12));
    CHECK(brute_simplest(Rational(0), Rational(1), 2) == Rational(1, 2));
    CHECK(rational_between(Rational(0), sqrt2()) == 1);
    CHECK(rational_between(sqrt2(), Rational(2)) == Rational(3, 2));
    CHECK(rational_between(Rational(-7, 2), Rational(-3)) == Rational(-10, 3));
    CHECK(brute_simplest(Rational(-7, 2), Rational(-3), 12) == Rational(-10, 3));
    CHECK(rational_between(Rational(100), ExtendedReal::pos_inf()) == 101);
    CHECK(rational_between(ExtendedReal::neg_inf(), Rational(-1000)) == -1001);
    CHECK_THROWS_AS(rational_between(Rational(1), Rational(1)), EmptyInterval);
}

TEST_CASE("rational_between with exclusions") {
    std::vector<RealValue> ex{RealValue(Rational(1, 2))};
    Rational q = rational_between(Rational(0), Rational(1), ex);
    // bit size 5 candidates in (0,1): 1/3 (1+2=3? no: bitlen 1 + bitlen 3 = 3)
    CHECK(q == Rational(1, 3));
    std::vector<RealValue> ex0{RealValue(0), RealValue(1), RealValue(-1)};
    CHECK(rational_between(Rational(-3, 2), Rational(3, 2), ex0) == Rational(-1, 2));
}

TEST_CASE("rational_between matches brute force on random intervals") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        Rational a = random_rational(rng, 50, 40), b = random_rational(rng, 50, 40);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        Rational r = rational_between(a, b);
        CHECK(a < r);
        CHECK(r < b);
        long max_den = std::max(64L, 4 * r.get_den().get_si());
        CHECK(bit_size(brute_simplest(a, b, max_den)) == bit_size(r));
    }
}

TEST_CASE("compare is a total order on mixed values") {
    std::mt19937_64 rng(5);
    std::vector<RealValue> vals;
    std::uniform_int_distribution<int> c(-5, 5);
    for (int i = 0; i < 12; ++i) {
        UPoly p({c(rng), c(rng), c(rng), 1});
        for (auto& r : real_roots(p)) vals.push_back(r);
        vals.emplace_back(random_rational(rng, 5, 4));
    }
    for (const auto& a : vals) {
        CHECK(compare(a, a) == 0);
        if (!a.is_rational()) CHECK(sign_at(a.algebraic().defining(), a) == 0);
        for (const auto& b : vals) {
            int ab = compare(a, b);
            CHECK(ab == -compare(b, a));
            CHECK(ab == compare(refine(a, Rational(1, 1000)), b));
            if (std::abs(a.approx() - b.approx()) > 1e-9) CHECK(ab == (a.approx() < b.approx() ? -1 : 1));
            for (const auto& d : vals)
                if (ab <= 0 && compare(b, d) <= 0) CHECK(compare(a, d) <= 0);
        }
    }
}
