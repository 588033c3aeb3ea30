#include "doctest.h"

#include "toprec/cp1.hpp"
#include "toprec/error.hpp"
#include "toprec/graphs.hpp"

#include <numeric>

using namespace toprec;

namespace {

FieldElement q(long a, long b = 1) { return FieldElement(rat(a, b)); }
const FieldElement I = FieldElement(0, 1, 0, 0);

}  // namespace

TEST_SUITE("cp1") {

TEST_CASE("R and S closed forms") {
    auto R = cp1_R(10);
    CHECK(R.R[0] == identity_matrix(2));
    Matrix r1 = {{q(-1, 16), q(2, 16) * I}, {q(2, 16) * I, q(1, 16)}};
    CHECK(R.R[1] == r1);
    CHECK(symplectic_check(R, 10).ok);
    auto S = cp1_S(3);
    CHECK(S.S[1] == Matrix{{0, 0}, {1, 0}});
    CHECK(S.S[2] == Matrix{{-1, 0}, {0, 1}});
    CHECK(S.S[3] == Matrix{{0, -2}, {q(1, 2), 0}});
}

TEST_CASE("data at the origin") {
    const auto& d = cp1_data();
    for (int i = 0; i < 2; ++i) {
        CHECK(d.sqrt_delta[static_cast<size_t>(i)] * d.sqrt_delta[static_cast<size_t>(i)] == d.delta[static_cast<size_t>(i)]);
        CHECK(d.unit[static_cast<size_t>(i)] == d.psi[0][static_cast<size_t>(i)]);
    }
    CHECK(d.sqrt_delta[1].inv() == -I * FieldElement::sqrt2().inv());
    // Psi^{-1}/(-sqrt2) = [[-1/2, -1/2], [-i/2, i/2]]
    Matrix inv = {{q(1, 2) * FieldElement::sqrt2(), q(1, 2) * FieldElement::sqrt2()},
                  {I * q(1, 2) * FieldElement::sqrt2(), -I * q(1, 2) * FieldElement::sqrt2()}};
    CHECK(mat_mul(d.psi, inv) == identity_matrix(2));
}

TEST_CASE("cp1 spectral curve") {
    auto c = ns_curve(5);
    CHECK(c.time(0, 1) == q(1));
    CHECK(c.time(1, 1) == -I);
    for (int k = 0; k <= 5; ++k) {
        Rational want = double_factorial(2 * k - 1) / (factorial(k) * Rational(mpz_class(1) << (3 * k)) * (2 * k + 1));
        CHECK(c.time(0, 2 * k + 1) == FieldElement(k % 2 ? -want : want));
        if (2 * k + 2 <= 11) CHECK(c.time(0, 2 * k + 2).is_zero());
    }
    CHECK(c.jump(0, 1, 0, 0) == I * q(1, 4));
    // B^{12}_reg(0, z2) = i/(4 (1 - z2^2/4)^{3/2}): z2^2 coefficient 3i/32
    CHECK(c.jump(0, 1, 0, 2) == I * q(3, 32));
    CHECK(c.jump(0, 1, 0, 1).is_zero());
    CHECK(validate_curve(c).ok);
    CHECK(checked_time(c, 0, 1) == q(2));
    CHECK(checked_time(c, 1, 1) == -I * q(2));
    CHECK(checked_time(c, 0, 2) == q(-1, 4));
    CHECK(checked_jump(c, 0, 0, 0, 0) == q(-1, 8));
    auto rep = laplace_factor_check(ns_curve(7), 6);
    CHECK(rep.ok);
    CHECK(rep.checked > 0);
}

TEST_CASE("givental sum on cp1 data against the curve graph sum") {
    const auto& d = cp1_data();
    auto R = cp1_R(6);
    auto curve = curve_from_R({R, d.delta, d.unit}, d.sqrt_delta);
    GiventalEvaluator ev(R, d.delta, d.unit);
    auto w = dxi_to_W(tr_graph_sum(curve, 0, 3), R);
    CHECK(ev.correlator(0, {{0, 0}, {0, 0}, {0, 0}}) == w.coeff({{0, 0}, {0, 0}, {0, 0}}));
    CHECK_FALSE(w.coeff({{0, 0}, {0, 0}, {0, 0}}).is_zero());
    for (auto [g, n] : std::vector<std::pair<int, int>>{{1, 1}, {0, 4}, {1, 2}}) {
        auto wg = dxi_to_W(tr_graph_sum(curve, g, n), R);
        for (const auto& [key, v] : wg.terms) {
            std::vector<Insertion> ins;
            for (const auto& l : key) ins.push_back({l.d, l.branch});
            CHECK(ev.correlator(g, ins) == v);
        }
    }
}

TEST_CASE("f matrix") {
    auto rep = ns_f_matrix_check(8);
    CHECK(rep.ok);
    CHECK(rep.checked == 36);
    auto f = f_series(ns_curve(3), 0);
    CHECK(f[0][0][0].coeff(1) == q(1, 8));
    CHECK(f[0][0][1].coeff(1) == -I * q(1, 4));
}

TEST_CASE("residue coefficients") {
    CHECK(u_residue_coeff(0, 1, 0) == 1);
    CHECK(u_residue_coeff(1, 0, 0) == 1);
    CHECK(u_residue_coeff(0, 2, 0) == 0);
    CHECK(u_residue_coeff(1, 2, 5) == 0);
    for (int j = 0; j < 2; ++j)
        for (int c = 0; c <= 2; ++c)
            for (int m = 0; m <= 10; ++m)
                CHECK(u_residue_by_residue(j, c + m, c) == -FieldElement(u_residue_coeff(j, c + m, c)));
}

TEST_CASE("dxi residues through the W and U bases") {
    auto Rt = R_from_curve(ns_curve(5));
    for (int i = 0; i < 2; ++i)
        for (int d = 0; d <= 3; ++d)
            for (int a = 0; a <= 5; ++a) {
                FieldElement phi;
                for (int l = 0; l <= d; ++l)
                    for (int s = 0; s < 2; ++s)
                        phi += Rt.at(d - l, s, i) * q((d - l) % 2 ? -1 : 1) * w_residue(s, l, a);
                CHECK(phi == xi_residue(i, d, a));
            }
}

TEST_CASE("oracle") {
    CHECK(hook_dimension({2, 1}) == 2);
    CHECK(hook_dimension({3, 2, 1}) == 16);
    CHECK(completed_power_sum(1, {3, 1}) == 4 - rat(1, 24));
    CHECK(completed_power_sum(1, {}) == rat(-1, 24));
    for (int d = 1; d <= 3; ++d) CHECK(op_oracle(0, {2 * d - 2}) == 1 / (factorial(d) * factorial(d)));
    CHECK(op_oracle(0, {0, 0, 0}) == 1);
    CHECK(op_oracle(1, {0}) == rat(-1, 24));
    CHECK(op_oracle(0, {1, 0, 0}) == 0);
}

TEST_CASE("stationary invariants") {
    CHECK_THROWS_AS(ns_stationary(0, {0}), InvalidTarget);
    // unstable, though the oracle has a value for it
    CHECK_THROWS_AS(ns_stationary(0, {1, 1}), InvalidTarget);
    CHECK(op_oracle(0, {1, 1}) == rat(1, 2));
    CHECK(ns_stationary(0, {1, 0, 0}).value == 0);
    for (auto [g, a] : std::vector<std::pair<int, std::vector<int>>>{
             {0, {0, 0, 0}}, {1, {2}}, {0, {1, 1, 0}}, {0, {2, 0, 0}}, {1, {0}}, {1, {1, 1}}, {2, {4}}}) {
        auto r = ns_stationary(g, a);
        CHECK(r.value == op_oracle(g, a));
        CHECK(r.degree == (std::accumulate(a.begin(), a.end(), 0) - 2 * g + 2) / 2);
    }
    // sign convention flip
    CHECK(ns_stationary(0, {0, 0, 0}, false).value == -1);
    CHECK(ns_stationary(0, {3, 1, 2}).value == ns_stationary(0, {1, 2, 3}).value);
}

}
