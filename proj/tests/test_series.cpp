#include "doctest.h"

#include "toprec/error.hpp"
#include "toprec/series.hpp"

#include <random>

using namespace toprec;

namespace {

Series1 poly(int low, std::vector<int> c, int T) {
    std::vector<FieldElement> v(c.begin(), c.end());
    return Series1(low, v, T);
}

Series1 random_series(std::mt19937_64& rng, int low, int T) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 3);
    std::vector<FieldElement> c;
    for (int k = low; k <= T; ++k) c.emplace_back(rat(num(rng), den(rng)), rat(num(rng), den(rng)), 0, 0);
    if (c[0].is_zero()) c[0] = 1;
    return Series1(low, c, T);
}

}  // namespace

TEST_SUITE("series") {
TEST_CASE("products") {
    auto a = poly(-1, {1, 1}, kExact);
    auto b = poly(0, {-1, 1}, kExact);
    CHECK(s_mul(a, b) == poly(-1, {-1, 0, 1}, kExact));
    CHECK(s_mul(poly(0, {1, 1}, kExact), poly(0, {1, -1}, kExact)) == poly(0, {1, 0, -1}, kExact));
    auto p = s_mul(poly(0, {1, 2}, 3), poly(0, {1, 5}, 5));
    CHECK(p.trunc() == 3);
}

TEST_CASE("inverses") {
    auto inv = s_inv(poly(0, {1, -1}, 6));
    CHECK(inv == poly(0, {1, 1, 1, 1, 1, 1, 1}, 6));
    CHECK(s_inv(poly(1, {2}, kExact)) == Series1::monomial(FieldElement(rat(1, 2)), -1, kExact));
    CHECK_THROWS_AS(s_inv(Series1(5)), NotInvertible);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        auto a = random_series(rng, -2, 8);
        auto one = s_mul(a, s_inv(a));
        CHECK(one == Series1::constant(FieldElement(1), one.trunc()));
        CHECK(one.trunc() == 8 + 2);  // T - 2 low, then shifted back by low
    }
}

TEST_CASE("residue and coefficients") {
    CHECK(s_residue(poly(-1, {1}, 3)) == FieldElement(1));
    CHECK(s_residue(poly(-2, {1}, 3)) == FieldElement());
    CHECK(s_residue(poly(-3, {5, 0, 3}, 3)) == FieldElement(3));
    CHECK(s_coeff(poly(0, {1, 2}, 3), 1) == FieldElement(2));
    CHECK_THROWS_AS(s_coeff(poly(0, {1, 2}, 3), 5), InsufficientTruncation);
    CHECK(s_coeff(poly(-1, {1}, 3), -3) == FieldElement());
    CHECK_THROWS_AS(s_residue(poly(-4, {1}, -2)), InsufficientTruncation);
}

TEST_CASE("odd antiderivative") {
    CHECK(s_odd_antiderivative(Series1::monomial(1, 2, 5)) == Series1::monomial(FieldElement(rat(2, 3)), 3, 6));
    CHECK(s_odd_antiderivative(Series1::monomial(1, 3, 5)).is_zero());
    CHECK(s_odd_antiderivative(Series1::monomial(1, -2, 5)) == Series1::monomial(-2, -1, 6));
    CHECK_THROWS_AS(s_odd_antiderivative(Series1::monomial(1, -1, 5)), LogarithmicTerm);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        auto a = random_series(rng, 0, 7);
        auto d = s_odd_antiderivative(a).derivative();
        CHECK(d == (a + a.negate_var()).truncated(d.trunc()));
    }
}

TEST_CASE("truncation monotonicity") {
    std::mt19937_64 rng(5);
    auto a = random_series(rng, -1, 12);
    auto b = random_series(rng, 0, 12);
    auto lo = s_mul(a.truncated(6), s_inv(b.truncated(6)));
    auto hi = s_mul(a, s_inv(b));
    CHECK(hi.truncated(lo.trunc()) == lo);
}

TEST_CASE("composition") {
    // exp-free check: (1+x)^2 at x = z + z^2
    auto f = poly(0, {1, 2, 1}, kExact);
    auto g = poly(1, {1, 1}, 6);
    auto c = s_compose(f, g);
    auto direct = s_mul(poly(0, {1, 1, 1}, 6), poly(0, {1, 1, 1}, 6)).truncated(6);
    CHECK(c == direct);
}

TEST_CASE("bivariate division") {
    // (u^2 - w^2) / (u - w) = u + w
    Series2 p(6);
    p.set(2, 0, 1);
    p.set(0, 2, -1);
    auto q = p.div_linear(1);
    CHECK(q.degree() == 5);
    CHECK(q.coeff(1, 0) == FieldElement(1));
    CHECK(q.coeff(0, 1) == FieldElement(1));
    CHECK(q.coeff(0, 0).is_zero());
    auto r = p.div_linear(-1);  // u - w
    CHECK(r.coeff(1, 0) == FieldElement(1));
    CHECK(r.coeff(0, 1) == FieldElement(-1));
    Series2 bad(3);
    bad.set(1, 0, 1);
    CHECK_THROWS_AS(bad.div_linear(1), NotDivisible);
}

TEST_CASE("bivariate inverse") {
    Series2 p(6);
    p.set(0, 0, 2);
    p.set(1, 0, 1);
    p.set(1, 1, 3);
    p.set(0, 2, -1);
    auto one = p * p.inv();
    for (int s = 0; s <= 6; ++s)
        for (int k = 0; k <= s; ++k) CHECK(one.coeff(k, s - k) == FieldElement(s == 0 ? 1 : 0));
}
}
