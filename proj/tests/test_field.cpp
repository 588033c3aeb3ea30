#include "doctest.h"

#include "toprec/error.hpp"
#include "toprec/field.hpp"

#include <random>

using namespace toprec;

namespace {

FieldElement random_element(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    return {rat(num(rng), den(rng)), rat(num(rng), den(rng)), rat(num(rng), den(rng)),
            rat(num(rng), den(rng))};
}

}  // namespace

TEST_SUITE("field") {
TEST_CASE("defining relations") {
    auto i = FieldElement::i();
    auto r = FieldElement::sqrt2();
    CHECK(i * i == FieldElement(-1));
    CHECK(r * r == FieldElement(2));
    CHECK((FieldElement(1) + i) * (FieldElement(1) - i) == FieldElement(2));
    CHECK((i * r) * (i * r) == FieldElement(-2));
}

TEST_CASE("inverses") {
    auto i = FieldElement::i();
    auto r = FieldElement::sqrt2();
    CHECK(field_inv(i) == -i);
    CHECK(field_inv(r) == r * FieldElement(rat(1, 2)));
    CHECK(field_inv(FieldElement(1) + i) == (FieldElement(1) - i) * FieldElement(rat(1, 2)));
    CHECK_THROWS_AS(field_inv(FieldElement()), DivisionByZero);
}

TEST_CASE("rational embedding") {
    CHECK(field_embed_rational(rat(3, 2)) == FieldElement(rat(3, 2), 0, 0, 0));
    CHECK(field_embed_rational(0).is_zero());
    CHECK(field_as_rational(FieldElement(-5)) == -5);
    CHECK(field_as_rational(FieldElement(rat(3, 2))) == rat(3, 2));
    CHECK_THROWS_AS(field_as_rational(FieldElement::i()), NotRational);
}

TEST_CASE("random field axioms") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        auto a = random_element(rng), b = random_element(rng), c = random_element(rng);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a * a.inv() == FieldElement(1));
        CHECK((a * b).conj_i() == a.conj_i() * b.conj_i());
        CHECK((a * b).conj_r() == a.conj_r() * b.conj_r());
        CHECK((a + b).conj_r() == a.conj_r() + b.conj_r());
    }
}

TEST_CASE("square roots") {
    CHECK(field_sqrt(Rational(4)) == FieldElement(2));
    CHECK(field_sqrt(Rational(2)) == FieldElement::sqrt2());
    CHECK(field_sqrt(Rational(-2)) == FieldElement::i() * FieldElement::sqrt2());
    CHECK(field_sqrt(rat(-1, 4)) == FieldElement::i() * FieldElement(rat(1, 2)));
    CHECK(field_sqrt(rat(1, 8)) * field_sqrt(rat(1, 8)) == FieldElement(rat(1, 8)));
    CHECK_THROWS_AS(field_sqrt(Rational(3)), SqrtNotInField);
    CHECK_THROWS_AS(field_sqrt(FieldElement(0, 3, 0, 0)), SqrtNotInField);
    // i = ((1+i) r/2)^2, 2i = (1+i)^2, 3 + 2r = (1+r)^2
    CHECK(field_sqrt(FieldElement::i()) == FieldElement(0, 0, rat(1, 2), rat(1, 2)));
    CHECK(field_sqrt(FieldElement(0, 2, 0, 0)) == FieldElement(1, 1, 0, 0));
    CHECK(field_sqrt(FieldElement(3, 0, 2, 0)) == FieldElement(1, 0, 1, 0));
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dist(-4, 4);
    for (int t = 0; t < 50; ++t) {
        FieldElement x(dist(rng), dist(rng), dist(rng), rat(dist(rng), 3));
        if (x.is_zero()) continue;
        FieldElement s = field_sqrt(x * x);
        CHECK(s * s == x * x);
        CHECK((s == x || s == -x));
    }
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("-1/16") == rat(-1, 16));
    CHECK(parse_rational("4/2") == 2);
    CHECK(rational_str(rat(-1, 16)) == "-1/16");
    CHECK(rational_str(rat(6, 3)) == "2");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
}

TEST_CASE("double factorial conventions") {
    CHECK(double_factorial(-3) == -1);
    CHECK(double_factorial(-1) == 1);
    CHECK(double_factorial(1) == 1);
    CHECK(double_factorial(7) == 105);
}
}
