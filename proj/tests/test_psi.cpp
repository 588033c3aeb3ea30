#include "doctest.h"

#include "toprec/error.hpp"
#include "toprec/psi.hpp"
#include "toprec/recursion.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>

using namespace toprec;

TEST_SUITE("psi") {
TEST_CASE("known values") {
    CHECK(intersection_number(0, {0, 0, 0}) == 1);
    CHECK(intersection_number(1, {1}) == rat(1, 24));
    CHECK(intersection_number(0, {1, 0, 0, 0}) == 1);
    CHECK(intersection_number(2, {0}) == 0);
    CHECK(intersection_number(2, {4}) == rat(1, 1152));
    CHECK(intersection_number(1, {1, 1}) == rat(1, 24));
    CHECK(intersection_number(2, {2, 3}) == rat(29, 5760));
    CHECK(intersection_number(3, {7}) == rat(1, 82944));
    CHECK_THROWS_AS(intersection_number(0, {0, 0}), Unstable);
}

TEST_CASE("string and dilaton on random indices") {
    std::mt19937_64 rng(2024);
    int tested = 0;
    while (tested < 100) {
        int g = std::uniform_int_distribution<int>(0, 3)(rng);
        int n = std::uniform_int_distribution<int>(1, 5)(rng);
        if (2 * g - 2 + n <= 0) continue;
        int dim = 3 * g - 3 + n;
        std::vector<int> ds(static_cast<size_t>(n), 0);
        for (int k = 0; k < dim; ++k) ds[static_cast<size_t>(std::uniform_int_distribution<int>(0, n - 1)(rng))]++;
        auto with0 = ds;
        with0.push_back(0);
        Rational s = 0;
        for (size_t j = 0; j < ds.size(); ++j) {
            if (ds[j] == 0) continue;
            auto t = ds;
            --t[j];
            s += intersection_number(g, t);
        }
        // the reduced index is stable here, so the string equation applies
        CHECK(intersection_number(g, with0) == s);
        auto with1 = ds;
        with1.push_back(1);
        CHECK(intersection_number(g, with1) == Rational(2 * g - 2 + n) * intersection_number(g, ds));
        ++tested;
    }
}

TEST_CASE("cache file round trip") {
    IntersectionTable t;
    t.value(2, {2, 3});
    t.value(1, {1, 1, 1});
    std::string path = "psi_cache_test.txt";
    t.save(path);
    IntersectionTable u;
    u.load(path);
    CHECK(u.entries() == t.entries());
    std::ofstream(path) << "";
    IntersectionTable e;
    e.load(path);
    CHECK(e.size() == 0);
    std::ofstream(path) << "1 1 : 1/24\nthis is not a line\n";
    IntersectionTable bad;
    CHECK_THROWS_AS(bad.load(path), FormatError);
    std::remove(path.c_str());
}

TEST_CASE("agreement with the recursion on the Airy curve, g <= 3, n <= 5") {
    RecursionEngine eng(airy_curve());
    for (int g = 0; g <= 3; ++g)
        for (int n = 1; n <= 5; ++n) {
            if (2 * g - 2 + n <= 0 || 2 * g - 2 + n > 5) continue;
            const auto& w = eng.omega(g, n);
            // omega_{g,n} = (-1/2)^{2g-2+n} sum <tau_d> prod dxi_d
            Rational pre = 1;
            for (int k = 0; k < 2 * g - 2 + n; ++k) pre *= rat(-1, 2);
            int dim = 3 * g - 3 + n;
            std::vector<int> ds(static_cast<size_t>(n), 0);
            bool ok = true;
            size_t count = 0;
            std::function<void(int, int)> rec = [&](int slot, int left) {
                if (slot == n - 1) {
                    ds[static_cast<size_t>(slot)] = left;
                    DxiKey key;
                    for (int d : ds) key.push_back({0, d});
                    Rational want = pre * intersection_number(g, ds);
                    if (w.coeff(key) != FieldElement(want)) ok = false;
                    if (sgn(want) != 0) ++count;
                    return;
                }
                for (int v = 0; v <= left; ++v) {
                    ds[static_cast<size_t>(slot)] = v;
                    rec(slot + 1, left - v);
                }
            };
            rec(0, dim);
            INFO("g=" << g << " n=" << n);
            CHECK(ok);
            CHECK(w.terms.size() == count);
        }
}
}
