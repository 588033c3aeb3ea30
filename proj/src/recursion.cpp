#include "toprec/recursion.hpp"

#include "toprec/error.hpp"
#include "toprec/psi.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace toprec {

RecursionEngine::RecursionEngine(LocalCurveData data) : data_(std::move(data)) {
    require_valid(data_);
    inv8h_.resize(static_cast<size_t>(data_.N));
}

int RecursionEngine::required_times_order(int g, int n) { return 6 * g - 5 + 2 * n; }

const DxiExpansion& RecursionEngine::omega(int g, int n) {
    if (g < 0 || n < 1 || 2 * g - 2 + n <= 0)
        throw InvalidTarget("omega_{" + std::to_string(g) + "," + std::to_string(n) + "} is not stable");
    auto key = std::make_pair(g, n);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    int need = required_times_order(g, n);
    if (data_.times_order() < need)
        throw InsufficientTruncation("omega_{" + std::to_string(g) + "," + std::to_string(n) + "} needs times to order " +
                                     std::to_string(need) + ", have " + std::to_string(data_.times_order()));
    DxiExpansion e = compute(g, n);
    return memo_.emplace(key, std::move(e)).first->second;
}

// even exponents of dxi^b_d(z, j), up to z^maxexp
const std::vector<std::pair<int, FieldElement>>& RecursionEngine::even_part(int b, int d, int j, int maxexp) {
    auto key = std::make_tuple(b, d, j, maxexp);
    auto it = even_cache_.find(key);
    if (it != even_cache_.end()) return it->second;
    std::vector<std::pair<int, FieldElement>> v;
    if (b == j && -2 * d - 2 <= maxexp) v.emplace_back(-2 * d - 2, FieldElement(double_factorial(2 * d + 1)));
    FieldElement df(double_factorial(2 * d - 1));
    for (int l = 0; l <= maxexp; l += 2) {
        FieldElement c = data_.jump(b, j, 2 * d, l);
        if (!c.is_zero()) v.emplace_back(l, c * df);
    }
    return even_cache_.emplace(key, std::move(v)).first->second;
}

int RecursionEngine::lowest_exponent(const DxiExpansion& w, int h, int k, int j) {
    if (h == 0 && k == 1) return 0;
    int low = 0;
    for (const auto& [key, c] : w.terms)
        if (key[0].branch == j) low = std::min(low, -2 * key[0].d - 2);
    return low;
}

// Even part in z of omega_{h,k+1}(sign z, spectators) at branch j, times sign for d(sign z).
std::vector<RecursionEngine::Piece> RecursionEngine::factor(int h, int k, int j, int maxexp, int sign) {
    std::vector<Piece> out;
    if (h == 0 && k == 1) {
        for (int d = 0; 2 * d <= maxexp; ++d)
            out.push_back({2 * d, FieldElement(Rational(sign) / double_factorial(2 * d - 1)), {Leg{j, d}}});
        return out;
    }
    const DxiExpansion& w = omega(h, k + 1);
    for (const auto& [key, c] : w.terms) {
        const auto& ev = even_part(key[0].branch, key[0].d, j, maxexp);
        DxiKey legs(key.begin() + 1, key.end());
        for (const auto& [e, a] : ev) out.push_back({e, c * a * FieldElement(sign), legs});
    }
    return out;
}

DxiExpansion RecursionEngine::compute(int g, int n) {
    const int m = n - 1;
    const int N = data_.N;
    DxiExpansion result;
    result.g = g;
    result.n = n;
    for (int j = 0; j < N; ++j) {
        Expo F;
        auto addF = [&](int e, const DxiKey& k, const FieldElement& v) {
            if (v.is_zero()) return;
            F[e][k] += v;
        };
        if (g >= 1) {
            if (g == 1 && m == 0) {
                // omega_{0,2}(z,-z) d(-z): -(1/(4z^2) + B^{jj}_{00} + ...)
                addF(-2, {}, FieldElement(rat(-1, 4)));
                addF(0, {}, -data_.jump(j, j, 0, 0));
            } else {
                const DxiExpansion& w = omega(g - 1, m + 2);
                for (const auto& [key, c] : w.terms) {
                    const Leg& l0 = key[0];
                    const Leg& l1 = key[1];
                    int low0 = l0.branch == j ? -2 * l0.d - 2 : 0;
                    int low1 = l1.branch == j ? -2 * l1.d - 2 : 0;
                    const auto ev0 = even_part(l0.branch, l0.d, j, -low1);
                    const auto& ev1 = even_part(l1.branch, l1.d, j, -low0);
                    DxiKey rest(key.begin() + 2, key.end());
                    for (const auto& [e0, a0] : ev0)
                        for (const auto& [e1, a1] : ev1)
                            if (e0 + e1 <= 0) addF(e0 + e1, rest, -(c * a0 * a1));
                }
            }
        }
        for (int h = 0; h <= g; ++h)
            for (unsigned mask = 0; mask < (1u << m); ++mask) {
                int nA = std::popcount(mask);
                int nB = m - nA;
                if ((h == 0 && nA == 0) || (g - h == 0 && nB == 0)) continue;
                int low1 = (h == 0 && nA == 1) ? 0 : lowest_exponent(omega(h, nA + 1), h, nA, j);
                int low2 = (g - h == 0 && nB == 1) ? 0 : lowest_exponent(omega(g - h, nB + 1), g - h, nB, j);
                auto P1 = factor(h, nA, j, -low2, 1);
                auto P2 = factor(g - h, nB, j, -low1, -1);
                DxiKey merged(static_cast<size_t>(m));
                for (const auto& p1 : P1)
                    for (const auto& p2 : P2) {
                        if (p1.e + p2.e > 0) continue;
                        size_t ia = 0, ib = 0;
                        for (int s = 0; s < m; ++s) merged[static_cast<size_t>(s)] = (mask >> s) & 1u ? p1.legs[ia++] : p2.legs[ib++];
                        addF(p1.e + p2.e, merged, p1.c * p2.c);
                    }
            }
        if (F.empty()) continue;
        int minE = F.begin()->first;
        int M = -minE / 2;
        auto& inv = inv8h_[static_cast<size_t>(j)];
        if (static_cast<int>(inv.size()) <= M) {
            // 1/(8 H(s)), H(s) = sum_k h_{2k+1} s^k
            std::vector<FieldElement> H;
            for (int k = 0; k <= M; ++k) H.push_back(data_.time(j, 2 * k + 1) * FieldElement(8));
            FieldElement h0inv = H[0].inv();
            std::vector<FieldElement> r(static_cast<size_t>(M + 1));
            r[0] = h0inv;
            for (int k = 1; k <= M; ++k) {
                FieldElement s;
                for (int t = 1; t <= k; ++t) s += H[static_cast<size_t>(t)] * r[static_cast<size_t>(k - t)];
                r[static_cast<size_t>(k)] = -(s * h0inv);
            }
            inv = std::move(r);
        }
        for (int mm = 0; mm <= M; ++mm) {
            FieldElement pre(Rational(2) / double_factorial(2 * mm + 1));
            std::map<DxiKey, FieldElement> G;
            for (int k = 0; -2 * mm - 2 * k >= minE; ++k) {
                auto fit = F.find(-2 * mm - 2 * k);
                if (fit == F.end()) continue;
                FieldElement f = inv[static_cast<size_t>(k)] * pre;
                for (const auto& [key, v] : fit->second) G[key] += v * f;
            }
            for (const auto& [key, v] : G) {
                if (v.is_zero()) continue;
                DxiKey full;
                full.reserve(static_cast<size_t>(n));
                full.push_back({j, mm});
                full.insert(full.end(), key.begin(), key.end());
                result.add(full, v);
            }
        }
    }
    return result;
}

DxiExpansion tr_omega_dxi(const LocalCurveData& data, int g, int n) {
    RecursionEngine eng(data);
    return eng.omega(g, n);
}

CorrelationForm tr_omega(const LocalCurveData& data, int g, int n, int order) {
    RecursionEngine eng(data);
    return evaluate(eng.omega(g, n), data, order);
}

namespace {

void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (parts == 0) {
        if (total == 0) out.push_back(cur);
        return;
    }
    for (int v = 0; v <= total; ++v) {
        cur.push_back(v);
        compositions(total - v, parts - 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> all_compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    if (total >= 0) compositions(total, parts, cur, out);
    return out;
}

}  // namespace

CorrelationForm airy_closed_form(int g, int n, const FieldElement& alpha, const FieldElement& beta) {
    if (2 * g - 2 + n <= 0) throw InvalidTarget("unstable (g,n)");
    CorrelationForm f = empty_form(g, n, 1, kExact);
    FieldElement pre = field_pow(-(beta / (alpha * FieldElement(2))), 2 * g + n - 2) * field_pow(beta, g + n - 1);
    std::vector<int> bv(static_cast<size_t>(n), 0);
    for (const auto& ds : all_compositions(3 * g - 3 + n, n)) {
        Rational v = intersection_number(g, ds);
        if (sgn(v) == 0) continue;
        std::vector<int> e;
        for (int d : ds) {
            v *= double_factorial(2 * d + 1);
            e.push_back(-2 * d - 2);
        }
        f.add(bv, e, pre * FieldElement(v));
    }
    return f;
}

CorrelationForm kdv_closed_form(int g, int n, const std::vector<FieldElement>& times) {
    if (2 * g - 2 + n <= 0) throw InvalidTarget("unstable (g,n)");
    if (times.empty() || times[0].is_zero()) throw InvalidTarget("h_1 must be nonzero");
    const FieldElement h1 = times[0];
    auto h = [&](int k) { return k - 1 < static_cast<int>(times.size()) ? times[static_cast<size_t>(k - 1)] : FieldElement(); };
    const int dim = 3 * g - 3 + n;
    CorrelationForm f = empty_form(g, n, 1, kExact);
    FieldElement pre = field_pow(-(FieldElement(2) * h1).inv(), 2 * g + n - 2);
    std::vector<int> bv(static_cast<size_t>(n), 0);
    // sum_d + sum_alpha = dim with alpha_k >= 1, so m <= dim
    for (int m = 0; m <= dim; ++m) {
        FieldElement sm = FieldElement(Rational((m % 2) ? -1 : 1) / factorial(m));
        for (int sa = m; sa <= dim; ++sa) {
            for (const auto& a0 : all_compositions(sa - m, m)) {
                FieldElement wa(1);
                std::vector<int> extra;
                for (int x : a0) {
                    int al = x + 1;
                    wa *= FieldElement(double_factorial(2 * al + 1)) * h(2 * al + 1) / h1;
                    extra.push_back(al + 1);
                }
                if (wa.is_zero()) continue;
                for (const auto& ds : all_compositions(dim - sa, n)) {
                    std::vector<int> idx = ds;
                    idx.insert(idx.end(), extra.begin(), extra.end());
                    Rational v = intersection_number(g, idx);
                    if (sgn(v) == 0) continue;
                    std::vector<int> e;
                    for (int d : ds) {
                        v *= double_factorial(2 * d + 1);
                        e.push_back(-2 * d - 2);
                    }
                    f.add(bv, e, pre * sm * wa * FieldElement(v));
                }
            }
        }
    }
    return f;
}

}  // namespace toprec
