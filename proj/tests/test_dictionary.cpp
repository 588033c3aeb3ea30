#include "doctest.h"

#include "toprec/dictionary.hpp"
#include "toprec/error.hpp"
#include "toprec/recursion.hpp"

using namespace toprec;

namespace {

bool same_R(const RSeries& a, const RSeries& b, int order) {
    if (a.N != b.N) return false;
    for (int k = 0; k <= order; ++k)
        if (a.R[static_cast<size_t>(k)] != b.R[static_cast<size_t>(k)]) return false;
    return true;
}

}  // namespace

TEST_SUITE("dictionary") {

TEST_CASE("identity R gives an airy type curve") {
    RSeries R;
    R.N = 1;
    R.R = {identity_matrix(1), zero_matrix(1), zero_matrix(1), zero_matrix(1)};
    auto c = curve_from_R({R, {FieldElement(1)}, {FieldElement(1)}});
    CHECK(c.time(0, 1) == FieldElement(rat(-1, 2)));
    for (int k = 2; k <= 7; ++k) CHECK(c.time(0, k).is_zero());
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; p + q <= 2; ++q) CHECK(checked_jump(c, 0, 0, p, q).is_zero());
    CHECK(validate_curve(c).ok);
}

TEST_CASE("first order jump is R1") {
    auto R = random_valid_R(21, 3, 5);
    auto c = curve_from_R({R, {FieldElement(1), FieldElement(4), FieldElement(-2)}, {1, 0, 0}});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(checked_jump(c, i, j, 0, 0) == R.at(1, j, i));
    // h1 = -1/(2 sqrt Delta)
    CHECK(c.time(1, 1) == FieldElement(rat(-1, 4)));
    CHECK(c.time(2, 1) * c.time(2, 1) == FieldElement(rat(-1, 8)));
}

TEST_CASE("symplectic check") {
    auto R = random_valid_R(4, 3, 8);
    CHECK(symplectic_check(R, 8).ok);
    std::vector<Matrix> r(2, zero_matrix(2));
    r[1][0][1] = 1;
    r[1][1][0] = -1;
    RSeries bad;
    bad.N = 2;
    bad.R = {identity_matrix(2), r[1]};
    CHECK(!symplectic_check(bad, 1).ok);
    CHECK_THROWS_AS(curve_from_R({bad, {1, 1}, {1, 0}}), NotSymplectic);
}

TEST_CASE("random R is deterministic and N=1 has no even generators") {
    CHECK(same_R(random_valid_R(9, 2, 6), random_valid_R(9, 2, 6), 6));
    CHECK(!same_R(random_valid_R(9, 2, 6), random_valid_R(10, 2, 6), 6));
    // N = 1: R = exp(r1 z + r3 z^3 + ...), so R(-z) R(z) = 1
    auto R = random_valid_R(2, 1, 6);
    CHECK(symplectic_check(R, 6).ok);
}

TEST_CASE("round trips") {
    for (int N : {1, 2, 3}) {
        auto R = random_valid_R(30 + static_cast<unsigned>(N), N, 6);
        std::vector<FieldElement> delta, unit;
        for (int i = 0; i < N; ++i) {
            delta.emplace_back(1 << i);
            unit.emplace_back(rat(1, i + 1));
        }
        GiventalData gd{R, delta, unit};
        auto c = curve_from_R(gd);
        CHECK(validate_curve(c).ok);
        CHECK(laplace_factor_check(c, 6).ok);
        auto R2 = R_from_curve(c);
        CHECK(R2.order() == 6);
        CHECK(same_R(R, R2, 6));
        auto c2 = curve_from_R({R2, delta, unit});
        for (int i = 0; i < N; ++i) {
            for (int k = 1; k <= 13; ++k) CHECK(c2.time(i, k) == c.time(i, k));
            for (int j = 0; j < N; ++j)
                for (int p = 0; p <= 5; ++p)
                    for (int q = 0; p + q <= 5; ++q) CHECK(checked_jump(c2, i, j, p, q) == checked_jump(c, i, j, p, q));
        }
    }
}

TEST_CASE("non factorizable jumps") {
    auto c = random_curve(8, 2, 9, 8, false);
    CHECK_THROWS_AS(R_from_curve(c), NotFactorizable);
}

TEST_CASE("scaling Delta only moves h1") {
    auto R = random_valid_R(40, 2, 5);
    auto c1 = curve_from_R({R, {1, 1}, {1, 1}});
    auto c2 = curve_from_R({R, {4, -8}, {1, 1}});
    CHECK(c2.time(0, 1) == c1.time(0, 1) * FieldElement(rat(1, 2)));
    for (int i = 0; i < 2; ++i) {
        for (int k = 2; k <= 6; ++k) CHECK(checked_time(c1, i, k) == checked_time(c2, i, k));
        for (int j = 0; j < 2; ++j) CHECK(checked_jump(c1, i, j, 1, 2) == checked_jump(c2, i, j, 1, 2));
    }
}

TEST_CASE("sqrt not in field") {
    auto R = random_valid_R(1, 1, 3);
    CHECK_THROWS_AS(curve_from_R({R, {3}, {1}}), SqrtNotInField);
}

}
