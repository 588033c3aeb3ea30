#include "toprec/curve.hpp"

#include "toprec/error.hpp"

#include <algorithm>
#include <random>

namespace toprec {

int LocalCurveData::times_order() const {
    int T = kExact;
    for (const auto& s : y) T = std::min(T, s.trunc());
    return T;
}

int LocalCurveData::jumps_order() const {
    if (jumps_exact) return kExact;
    int T = kExact;
    for (const auto& row : B)
        for (const auto& s : row) T = std::min(T, s.degree());
    return T;
}

FieldElement LocalCurveData::time(int i, int k) const { return y.at(static_cast<size_t>(i)).coeff(k); }

FieldElement LocalCurveData::jump(int i, int j, int k, int l) const {
    const auto& s = B.at(static_cast<size_t>(i)).at(static_cast<size_t>(j));
    if (k + l > s.degree()) {
        if (jumps_exact) return {};
        return s.coeff(k, l);  // throws
    }
    return s.coeff(k, l);
}

LocalCurveData curve_with_times(const std::vector<std::vector<FieldElement>>& times) {
    LocalCurveData d;
    d.N = static_cast<int>(times.size());
    for (int i = 0; i < d.N; ++i) {
        d.a.emplace_back(i + 1);
        d.y.emplace_back(1, times[static_cast<size_t>(i)], kExact);
    }
    d.B.assign(static_cast<size_t>(d.N), std::vector<Series2>(static_cast<size_t>(d.N), Series2(-1)));
    for (int i = 0; i < d.N; ++i) d.B[static_cast<size_t>(i)][static_cast<size_t>(i)].set_pole(1);
    d.jumps_exact = true;
    return d;
}

LocalCurveData airy_curve() { return curve_with_times({{FieldElement(1)}}); }

ValidationReport validate_curve(const LocalCurveData& d) {
    ValidationReport r;
    auto fail = [&](std::string s) {
        r.ok = false;
        r.violations.push_back(std::move(s));
    };
    if (d.N <= 0) fail("N must be positive");
    if (static_cast<int>(d.a.size()) != d.N) fail("a has wrong length");
    if (static_cast<int>(d.y.size()) != d.N) fail("times have wrong branch count");
    if (static_cast<int>(d.B.size()) != d.N) fail("jumps have wrong branch count");
    for (const auto& row : d.B)
        if (static_cast<int>(row.size()) != d.N) fail("jumps have wrong branch count");
    if (!r.ok) return r;
    for (int i = 0; i < d.N; ++i)
        for (int j = i + 1; j < d.N; ++j)
            if (d.a[static_cast<size_t>(i)] == d.a[static_cast<size_t>(j)])
                fail("a_" + std::to_string(i + 1) + " = a_" + std::to_string(j + 1));
    for (int i = 0; i < d.N; ++i) {
        const auto& s = d.y[static_cast<size_t>(i)];
        if (s.trunc() < 1) {
            fail("h^" + std::to_string(i + 1) + "_1 unknown");
            continue;
        }
        if (!s.is_zero() && s.low() < 1) fail("times must start at z^1 on branch " + std::to_string(i + 1));
        if (s.coeff(1).is_zero()) fail("h^" + std::to_string(i + 1) + "_1 = 0");
    }
    for (int i = 0; i < d.N; ++i)
        for (int j = 0; j < d.N; ++j) {
            const auto& b = d.B[static_cast<size_t>(i)][static_cast<size_t>(j)];
            FieldElement want = i == j ? FieldElement(1) : FieldElement();
            if (b.pole() != want) fail("double pole tag wrong for " + std::to_string(i + 1) + "," + std::to_string(j + 1));
            const auto& bt = d.B[static_cast<size_t>(j)][static_cast<size_t>(i)];
            int D = std::min(b.degree(), bt.degree());
            for (int s = 0; s <= D; ++s)
                for (int k = 0; k <= s; ++k)
                    if (b.coeff(k, s - k) != bt.coeff(s - k, k)) {
                        fail("symmetry violated: B^{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}_{" +
                             std::to_string(k) + "," + std::to_string(s - k) + "}");
                    }
        }
    return r;
}

void require_valid(const LocalCurveData& data) {
    auto r = validate_curve(data);
    if (r.ok) return;
    std::string msg;
    for (const auto& v : r.violations) msg += (msg.empty() ? "" : "; ") + v;
    throw ValidationError(msg);
}

FieldElement checked_time(const LocalCurveData& data, int i, int k) {
    return data.time(i, 2 * k - 1) * FieldElement(2 * double_factorial(2 * k - 1));
}

FieldElement checked_jump(const LocalCurveData& data, int i, int j, int d1, int d2) {
    return data.jump(i, j, 2 * d1, 2 * d2) * FieldElement(double_factorial(2 * d1 - 1) * double_factorial(2 * d2 - 1));
}

std::vector<std::vector<FieldElement>> checked_times(const LocalCurveData& data, int kmax) {
    int T = data.times_order();
    int K = T >= kExact ? kmax : std::min(kmax, (T + 1) / 2);
    std::vector<std::vector<FieldElement>> out(static_cast<size_t>(data.N));
    for (int i = 0; i < data.N; ++i)
        for (int k = 1; k <= K; ++k) out[static_cast<size_t>(i)].push_back(checked_time(data, i, k));
    return out;
}

std::vector<std::vector<std::vector<std::vector<FieldElement>>>> checked_jumps(const LocalCurveData& data, int dmax) {
    int T = data.jumps_order();
    int D = T >= kExact ? dmax : std::min(dmax, T / 2);
    std::vector<std::vector<std::vector<std::vector<FieldElement>>>> out(
        static_cast<size_t>(data.N), std::vector<std::vector<std::vector<FieldElement>>>(static_cast<size_t>(data.N)));
    for (int i = 0; i < data.N; ++i)
        for (int j = 0; j < data.N; ++j) {
            auto& t = out[static_cast<size_t>(i)][static_cast<size_t>(j)];
            t.assign(static_cast<size_t>(D + 1), {});
            for (int d1 = 0; d1 <= D; ++d1)
                for (int d2 = 0; d1 + d2 <= D; ++d2) t[static_cast<size_t>(d1)].push_back(checked_jump(data, i, j, d1, d2));
        }
    return out;
}

Series1 dxi_series(const LocalCurveData& data, int i, int d, int j, int order) {
    int TB = data.jumps_order();
    if (TB < kExact && TB - 2 * d < order)
        throw InsufficientTruncation("dxi^" + std::to_string(i + 1) + "_" + std::to_string(d) + " to order " +
                                     std::to_string(order) + " needs jumps to total degree " +
                                     std::to_string(2 * d + order) + ", have " + std::to_string(TB));
    const int T = order;
    int low = i == j ? -2 * d - 2 : 0;
    std::vector<FieldElement> c(static_cast<size_t>(T - low + 1));
    if (i == j) c[0] = FieldElement(double_factorial(2 * d + 1));
    FieldElement df(double_factorial(2 * d - 1));
    for (int l = 0; l <= T; ++l) c[static_cast<size_t>(l - low)] = data.jump(i, j, 2 * d, l) * df;
    return Series1(low, std::move(c), T);
}

FTable f_series(const LocalCurveData& data, int order) {
    // f_0^i(w, j) = delta_ij - sum_l Bc^{ij}_{0,l} w^{l+1}, known to w^{D0+1}
    const int N = data.N;
    int TB = data.jumps_order();
    int D0 = TB >= kExact ? order + 1 : TB / 2;
    auto bc = checked_jumps(data, D0);
    FTable f(static_cast<size_t>(order + 1),
             std::vector<std::vector<Series1>>(static_cast<size_t>(N), std::vector<Series1>(static_cast<size_t>(N))));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            std::vector<FieldElement> c(static_cast<size_t>(D0 + 2));
            if (i == j) c[0] = 1;
            for (int l = 0; l <= D0; ++l) c[static_cast<size_t>(l + 1)] = -bc[static_cast<size_t>(i)][static_cast<size_t>(j)][0][static_cast<size_t>(l)];
            f[0][static_cast<size_t>(i)][static_cast<size_t>(j)] = Series1(0, std::move(c), D0 + 1);
        }
    for (int d = 0; d < order; ++d)
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                const auto& fd = f[static_cast<size_t>(d)][static_cast<size_t>(i)][static_cast<size_t>(j)];
                // -u f_d = -w^{-1} f_d
                Series1 next = fd * Series1::monomial(FieldElement(-1), -1, kExact);
                for (int k = 0; k < N; ++k) {
                    if (d > D0) throw InsufficientTruncation("f-recursion beyond the known jumps");
                    FieldElement b = bc[static_cast<size_t>(i)][static_cast<size_t>(k)][static_cast<size_t>(d)][0];
                    next -= f[0][static_cast<size_t>(k)][static_cast<size_t>(j)] * b;
                }
                f[static_cast<size_t>(d + 1)][static_cast<size_t>(i)][static_cast<size_t>(j)] = next;
            }
    return f;
}

LaplaceReport laplace_factor_check(const LocalCurveData& data, int order) {
    LaplaceReport rep;
    int TB = data.jumps_order();
    // the table determines checked jumps with 2(p+q) <= TB
    int maxdeg = TB >= kExact ? order - 1 : std::min(order - 1, TB / 2);
    if (maxdeg < 0) return rep;
    auto f = f_series(data, maxdeg);
    for (int d = 0; d <= maxdeg; ++d)
        for (int i = 0; i < data.N; ++i)
            for (int j = 0; j < data.N; ++j) {
                const auto& s = f[static_cast<size_t>(d)][static_cast<size_t>(i)][static_cast<size_t>(j)];
                for (int dd = 0; d + dd <= maxdeg; ++dd) {
                    if (dd + 1 > s.trunc()) break;
                    // f_d = delta (-1)^d u^d - sum Bc_{d,d'} u^{-d'-1}
                    FieldElement predicted = -s.coeff(dd + 1);
                    FieldElement actual = checked_jump(data, i, j, d, dd);
                    ++rep.checked;
                    if (predicted != actual) {
                        rep.ok = false;
                        rep.residuals.push_back("Bc^{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}_{" +
                                                std::to_string(d) + "," + std::to_string(dd) +
                                                "}: " + (actual - predicted).str());
                    }
                }
                FieldElement lead = s.coeff(-d);
                FieldElement want = i == j ? FieldElement(d % 2 ? -1 : 1) : FieldElement();
                ++rep.checked;
                if (lead != want) {
                    rep.ok = false;
                    rep.residuals.push_back("polynomial part of f_" + std::to_string(d));
                }
            }
    return rep;
}

LocalCurveData scale_y(const LocalCurveData& data, const FieldElement& lambda) {
    if (lambda.is_zero()) throw ZeroScale("scale factor must be nonzero");
    LocalCurveData r = data;
    for (auto& s : r.y) s *= lambda;
    return r;
}

namespace {

FieldElement small_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    return FieldElement(rat(num(rng), den(rng)));
}

}  // namespace

LocalCurveData random_curve(std::uint64_t seed, int N, int times_order, int jumps_order, bool odd_times_only) {
    std::mt19937_64 rng(seed);
    LocalCurveData d;
    d.N = N;
    for (int i = 0; i < N; ++i) {
        d.a.emplace_back(i + 1);
        std::vector<FieldElement> c(static_cast<size_t>(times_order));
        for (int k = 1; k <= times_order; ++k) {
            if (odd_times_only && k % 2 == 0) continue;
            c[static_cast<size_t>(k - 1)] = small_rational(rng);
        }
        while (c[0].is_zero()) c[0] = small_rational(rng);
        d.y.emplace_back(1, std::move(c), times_order);
    }
    d.B.assign(static_cast<size_t>(N), std::vector<Series2>(static_cast<size_t>(N), Series2(jumps_order)));
    for (int i = 0; i < N; ++i) {
        d.B[static_cast<size_t>(i)][static_cast<size_t>(i)].set_pole(1);
        for (int j = i; j < N; ++j)
            for (int s = 0; s <= jumps_order; ++s)
                for (int k = 0; k <= s; ++k) {
                    if (i == j && k > s - k) continue;
                    FieldElement v = small_rational(rng);
                    d.B[static_cast<size_t>(i)][static_cast<size_t>(j)].set(k, s - k, v);
                    d.B[static_cast<size_t>(j)][static_cast<size_t>(i)].set(s - k, k, v);
                }
    }
    return d;
}

}  // namespace toprec
