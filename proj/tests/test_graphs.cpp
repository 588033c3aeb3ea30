#include "doctest.h"

#include "toprec/dictionary.hpp"
#include "toprec/error.hpp"
#include "toprec/graphs.hpp"
#include "toprec/recursion.hpp"

#include <set>

using namespace toprec;

TEST_SUITE("graphs") {

TEST_CASE("bare graph counts") {
    CHECK(bare_graphs(0, 3).size() == 1);
    CHECK(bare_graphs(1, 1).size() == 2);
    CHECK(bare_graphs(0, 4).size() == 4);
    CHECK(bare_graphs(1, 2).size() == 5);
    // genus 2 without legs: 7 stable graphs
    CHECK(bare_graphs(2, 0).size() == 7);
    CHECK_THROWS_AS(bare_graphs(0, 2), InvalidTarget);
    CHECK_THROWS_AS(bare_graphs(1, 0), InvalidTarget);
}

TEST_CASE("euler identity and automorphisms") {
    for (auto [g, n] : {std::pair{0, 5}, {1, 3}, {2, 1}, {2, 2}}) {
        for (const auto& bg : bare_graphs(g, n)) {
            int s = bg.edge_count();
            for (int x : bg.genus) s += x - 1;
            CHECK(s == g - 1);
            CHECK(!bg.aut_half.empty());
        }
    }
    // genus-2 graphs: automorphism group orders of the seven graphs
    std::multiset<size_t> orders;
    for (const auto& bg : bare_graphs(2, 0)) orders.insert(bg.aut_half.size());
    CHECK(orders == std::multiset<size_t>{1, 2, 2, 2, 8, 8, 12});
}

TEST_CASE("decorated graphs at (1,1), one branch") {
    const auto& gs = enumerate_graphs(1, 1, 1);
    // vertex (1) with leaf label 1; vertex (1) with a dilaton k=2 and leaf label 0; the loop graph
    REQUIRE(gs.size() == 3);
    int loops = 0;
    for (const auto& g : gs)
        if (!g.edges.empty()) {
            ++loops;
            CHECK(g.aut == 2);
        }
    CHECK(loops == 1);
}

TEST_CASE("airy coefficients") {
    auto air = airy_curve();
    auto e03 = tr_graph_sum(air, 0, 3);
    CHECK(e03.coeff({{0, 0}, {0, 0}, {0, 0}}) == FieldElement(rat(-1, 2)));
    auto e11 = tr_graph_sum(air, 1, 1);
    CHECK(e11.coeff({{0, 1}}) == FieldElement(rat(-1, 48)));
    CHECK(e11.terms.size() == 1);
}

TEST_CASE("graph sum equals the recursion") {
    auto c = random_curve(5, 2, 15, 16, false);
    for (auto [g, n] : {std::pair{0, 3}, {1, 1}, {0, 4}, {1, 2}, {2, 1}}) {
        CAPTURE(g);
        CAPTURE(n);
        CHECK(tr_graph_sum(c, g, n) == tr_omega_dxi(c, g, n));
    }
}

TEST_CASE("givental sum equals the curve sum in the W basis") {
    auto R = random_valid_R(11, 2, 7);
    GiventalData gd{R, {FieldElement(2), FieldElement(-1)}, {FieldElement(1), FieldElement(rat(1, 3))}};
    auto curve = curve_from_R(gd);
    GiventalEvaluator ev(gd.R, gd.delta, gd.unit);
    for (auto [g, n] : {std::pair{0, 3}, {1, 1}, {1, 2}, {2, 1}}) {
        auto w = dxi_to_W(tr_graph_sum(curve, g, n), R);
        int checked = 0;
        for (const auto& [key, c] : w.terms) {
            std::vector<Insertion> ins;
            for (const auto& l : key) ins.push_back({l.d, l.branch});
            CHECK(ev.correlator(g, ins) == c);
            ++checked;
        }
        CHECK(checked > 0);
        // a correlator of too high degree vanishes
        std::vector<Insertion> big(static_cast<size_t>(n), Insertion{3 * g - 2 + n, 0});
        CHECK(ev.correlator(g, big).is_zero());
        CHECK(W_to_dxi(w, R) == tr_graph_sum(curve, g, n));
    }
}

TEST_CASE("edge weight from r1") {
    auto R = random_valid_R(3, 2, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(edge_weight(R, i, j, 0, 0) == R.at(1, j, i));
    CHECK_THROWS_AS(edge_weight(R, 0, 0, 2, 2), InsufficientTruncation);
}

}
