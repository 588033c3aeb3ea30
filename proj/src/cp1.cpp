#include "toprec/cp1.hpp"

#include "toprec/error.hpp"
#include "toprec/graphs.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <numeric>

namespace toprec {

namespace {

FieldElement fe(long n, long d = 1) { return FieldElement(rat(n, d)); }

// functions rather than globals: cp1_data() may run during static initialization elsewhere
FieldElement I() { return FieldElement::i(); }
FieldElement R2() { return FieldElement::sqrt2(); }

Rational harmonic(int k) {
    Rational h = 0;
    for (int j = 1; j <= k; ++j) h += rat(1, j);
    return h;
}

// sqrt(1 + c t) = sum_k binom(1/2, k) c^k t^k
std::vector<Rational> sqrt_binomial(int n) {
    std::vector<Rational> b(static_cast<size_t>(n + 1));
    b[0] = 1;
    for (int k = 1; k <= n; ++k) b[static_cast<size_t>(k)] = b[static_cast<size_t>(k - 1)] * (rat(1, 2) - (k - 1)) / k;
    return b;
}

Series1 antiderivative(const Series1& f) {
    if (f.low() < 0) throw std::invalid_argument("antiderivative of a Laurent series");
    std::vector<FieldElement> c(static_cast<size_t>(f.trunc() + 2));
    for (int k = 0; k <= f.trunc(); ++k) c[static_cast<size_t>(k + 1)] = f.coeff(k) * fe(1, k + 1);
    return Series1(0, std::move(c), f.trunc() + 1);
}

Series1 power(const Series1& f, int m) {
    Series1 r = Series1::constant(1, f.trunc());
    for (int k = 0; k < m; ++k) r = r * f;
    return r;
}

}  // namespace

const CP1Data& cp1_data() {
    static const CP1Data d = [] {
        CP1Data c;
        FieldElement h = R2().inv();  // 1/sqrt2
        c.psi = {{h, -I() * h}, {h, I() * h}};
        c.eta = {{0, 1}, {1, 0}};
        c.u = {2, -2};
        c.delta = {2, -2};
        c.sqrt_delta = {R2(), I() * R2()};
        c.unit = {h, -I() * h};
        return c;
    }();
    return d;
}

RSeries cp1_R(int order) {
    RSeries R;
    R.N = 2;
    R.R.push_back(identity_matrix(2));
    for (int k = 1; k <= order; ++k) {
        FieldElement c(double_factorial(2 * k - 1) * double_factorial(2 * k - 3) / (Rational(mpz_class(1) << (4 * k)) * factorial(k)));
        FieldElement sg(k % 2 ? 1 : -1);  // (-1)^{k+1}
        FieldElement ki = I() * FieldElement(2 * k);
        Matrix m = {{-c, c * sg * ki}, {c * ki, c * sg}};
        R.R.push_back(std::move(m));
    }
    return R;
}

SSeries cp1_S(int order) {
    SSeries s;
    s.S.push_back(identity_matrix(2));
    for (int n = 1; n <= order; ++n) {
        Matrix m = zero_matrix(2);
        if (n % 2 == 0) {
            int k = n / 2;
            Rational f = 1 / (factorial(k) * factorial(k));
            m[0][0] = FieldElement((1 - 2 * k * harmonic(k)) * f);
            m[1][1] = FieldElement(f);
        } else {
            int k = (n - 1) / 2;
            Rational f = 1 / (factorial(k) * factorial(k));
            m[0][1] = FieldElement(-2 * harmonic(k) * f);
            m[1][0] = FieldElement(rat(1, k + 1) * f);
        }
        s.S.push_back(std::move(m));
    }
    return s;
}

Series1 ns_Z(int branch, int order) {
    // Z1 = 1 + u^2/2 + u sqrt(1 + u^2/4), Z2 = -1 + u^2/2 + i u sqrt(1 - u^2/4)
    if (branch != 0 && branch != 1) throw InvalidTarget("branch must be 1 or 2");
    std::vector<FieldElement> c(static_cast<size_t>(order + 1));
    c[0] = branch == 0 ? 1 : -1;
    if (order >= 2) c[2] += fe(1, 2);
    auto b = sqrt_binomial(order / 2 + 1);
    Rational q = branch == 0 ? rat(1, 4) : rat(-1, 4);
    Rational qk = 1;
    for (int k = 0; 2 * k + 1 <= order; ++k) {
        FieldElement v(b[static_cast<size_t>(k)] * qk);
        c[static_cast<size_t>(2 * k + 1)] += branch == 0 ? v : I() * v;
        qk *= q;
    }
    return Series1(0, std::move(c), order);
}

LocalCurveData ns_curve(int order) {
    if (order < 1) throw InvalidTarget("ns_curve needs order >= 1");
    const int Ty = 2 * order + 1;
    const int TB = 2 * order;
    LocalCurveData d;
    d.N = 2;
    d.a = {2, -2};
    std::vector<Series1> Z, Zp;
    for (int i = 0; i < 2; ++i) {
        Z.push_back(ns_Z(i, TB + 4));
        Zp.push_back(Z.back().derivative());
        // y = log Z up to the constant, i.e. the primitive of Z'/Z
        Series1 y = antiderivative((Zp.back() * s_inv(Z.back())).truncated(Ty - 1));
        std::vector<FieldElement> h;
        for (int k = 1; k <= Ty; ++k) h.push_back(y.coeff(k));
        d.y.emplace_back(1, std::move(h), Ty);
    }
    d.B.assign(2, std::vector<Series2>(2, Series2(TB)));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (i != j) {
                Series2 diff = (Series2::from_u(Z[static_cast<size_t>(i)]) - Series2::from_w(Z[static_cast<size_t>(j)])).truncated(TB);
                Series2 inv = diff.inv();
                Series2 num = Series2::from_u(Zp[static_cast<size_t>(i)]).truncated(TB) * Series2::from_w(Zp[static_cast<size_t>(j)]).truncated(TB);
                d.B[static_cast<size_t>(i)][static_cast<size_t>(j)] = num * inv * inv;
            } else {
                const int D = TB + 3;
                Series2 q = (Series2::from_u(Z[static_cast<size_t>(i)]).truncated(D) - Series2::from_w(Z[static_cast<size_t>(i)]).truncated(D))
                                .div_linear(1);  // (Z(u) - Z(w))/(u - w), degree TB + 2
                Series2 zz = Series2::from_u(Zp[static_cast<size_t>(i)]).truncated(TB + 2) *
                             Series2::from_w(Zp[static_cast<size_t>(i)]).truncated(TB + 2);
                Series2 num = (zz - q * q).div_linear(1).div_linear(1);  // degree TB
                Series2 qi = q.truncated(TB).inv();
                Series2 b = num * qi * qi;
                b.set_pole(1);
                d.B[static_cast<size_t>(i)][static_cast<size_t>(j)] = b;
            }
        }
    return d;
}

CheckReport ns_f_matrix_check(int order) {
    CheckReport rep;
    auto curve = ns_curve(order + 1);
    auto f = f_series(curve, 0);
    auto R = cp1_R(order);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k <= order; ++k) {
                FieldElement lhs = f[0][static_cast<size_t>(i)][static_cast<size_t>(j)].coeff(k);
                FieldElement rhs = R.at(k, i, j) * FieldElement(Rational(mpz_class(1) << k)) * fe(k % 2 ? -1 : 1);
                ++rep.checked;
                if (lhs != rhs) {
                    rep.ok = false;
                    rep.residuals.push_back("f_" + std::to_string(i + 1) + std::to_string(j + 1) + " w^" + std::to_string(k) +
                                            ": " + (lhs - rhs).str());
                }
            }
    return rep;
}

Rational u_residue_coeff(int j, int a, int c) {
    if (j != 0 && j != 1) throw InvalidTarget("U index must be 1 or 2");
    int m = a - c;
    if (m < 0) return 0;
    if (j == 0) {
        if (m % 2 == 0) return 0;
        int k = (m - 1) / 2;
        return 1 / ((k + 1) * factorial(k) * factorial(k));
    }
    if (m % 2) return 0;
    int k = m / 2;
    return 1 / (factorial(k) * factorial(k));
}

namespace {

// (1/(a+1)!) Res_{z=0} (z + 1/z)^{a+1} dF, with dF given as its density in z.
FieldElement res_zero(const Series1& density, int a) {
    FieldElement acc;
    for (int j = 0; j <= a + 1; ++j) {
        // z^{a+1-2j} * density, coefficient of z^{-1}
        acc += FieldElement(binomial(a + 1, j)) * density.coeff(-1 - (a + 1 - 2 * j));
    }
    return acc / FieldElement(factorial(a + 1));
}

}  // namespace

FieldElement u_residue_by_residue(int j, int a, int c) {
    if (j != 0 && j != 1) throw InvalidTarget("U index must be 1 or 2");
    if (a < c) return {};
    const int T = a + 2 * c + 4;
    // primitives at z = 0: 1/(1-z) and -1/(1+z)
    std::vector<FieldElement> p(static_cast<size_t>(T + 1)), m(static_cast<size_t>(T + 1));
    for (int k = 0; k <= T; ++k) {
        p[static_cast<size_t>(k)] = 1;
        m[static_cast<size_t>(k)] = k % 2 ? 1 : -1;
    }
    Series1 P(0, p, T), M(0, m, T);
    // U^1_0 = (-dz/(1-z)^2 + dz/(1+z)^2)/2, U^2_0 = -(dz/(1-z)^2 + dz/(1+z)^2)/2
    Series1 F = j == 0 ? (-P + M) * fe(1, 2) : (P + M) * fe(-1, 2);
    // -d/dx = -(1/x'(z)) d/dz with 1/x' = -z^2/(1 - z^2)
    std::vector<FieldElement> w(static_cast<size_t>(T + 3));
    for (int k = 2; k <= T + 2; k += 2) w[static_cast<size_t>(k)] = 1;  // z^2/(1-z^2)
    Series1 inv_xp(0, w, T + 2);
    for (int s = 0; s < c; ++s) F = inv_xp * F.derivative();
    return res_zero(F.derivative(), a);
}

FieldElement xi_residue(int i, int d, int a) {
    // (1/(a+1)!) Res_{Z=0} x^{a+1} dxi^i_d, dxi^i_d(Z) = (2d-1)!! [u^{2d}] Z_i'(u) dZ/(Z - Z_i(u))^2
    const int T = 2 * d + 1;
    Series1 Zi = ns_Z(i, T + 1);
    Series1 Zinv = s_inv(Zi);
    FieldElement acc;
    for (int j = 0; j <= a + 1; ++j) {
        int m = 2 * j - a - 2;
        if (m < 0) continue;
        // (m+1) W^{-m-2} W' = -(W^{-m-1})'
        acc -= FieldElement(binomial(a + 1, j)) * power(Zinv, m + 1).coeff(2 * d + 1);
    }
    return acc * FieldElement(double_factorial(2 * d + 1)) / FieldElement(factorial(a + 1));
}

FieldElement w_residue(int s, int c, int a) {
    // local W^s_c = 2^c (-sqrt2) sum_j Psi[j][s] U^j_c
    const auto& cp = cp1_data();
    FieldElement acc;
    for (int j = 0; j < 2; ++j) acc += cp.psi[static_cast<size_t>(j)][static_cast<size_t>(s)] * u_residue_by_residue(j, a, c);
    return -R2() * acc * FieldElement(Rational(mpz_class(1) << c));
}

namespace {

// omega_{g,n} of the CP1 spectral curve in the U basis
DxiExpansion ns_u_basis(int g, int n) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, DxiExpansion> cache;
    {
        std::lock_guard lock(mu);
        auto it = cache.find({g, n});
        if (it != cache.end()) return it->second;
    }
    const int order = 3 * g - 3 + n + 1;
    auto curve = ns_curve(order);
    auto Rt = R_from_curve(curve);  // 2^k R_k
    auto w = dxi_to_W(tr_graph_sum(curve, g, n), Rt);
    // W^s_c = 2^c (-sqrt2) sum_j Psi[j][s] U^j_c; the 2^c comes from R_k -> 2^k R_k
    const auto& cp = cp1_data();
    DxiExpansion U;
    U.g = g;
    U.n = n;
    for (const auto& [key, val] : w.terms) {
        std::vector<std::pair<DxiKey, FieldElement>> acc{{DxiKey{}, val}};
        for (const auto& leg : key) {
            std::vector<std::pair<DxiKey, FieldElement>> next;
            for (const auto& [k, v] : acc)
                for (int j = 0; j < 2; ++j) {
                    FieldElement f = -R2() * cp.psi[static_cast<size_t>(j)][static_cast<size_t>(leg.branch)] *
                                     FieldElement(Rational(mpz_class(1) << leg.d));
                    DxiKey k2 = k;
                    k2.push_back({j, leg.d});
                    next.emplace_back(std::move(k2), v * f);
                }
            acc = std::move(next);
        }
        for (const auto& [k, v] : acc) U.add(k, v);
    }
    std::lock_guard lock(mu);
    return cache.emplace(std::make_pair(g, n), std::move(U)).first->second;
}

}  // namespace

StationaryResult ns_stationary(int g, const std::vector<int>& a, bool ns_sign) {
    const int n = static_cast<int>(a.size());
    if (g < 0 || 2 * g - 2 + n <= 0) throw InvalidTarget("unstable (g,n) = (" + std::to_string(g) + "," + std::to_string(n) + ")");
    for (int x : a)
        if (x < 0) throw InvalidTarget("negative descendant index");
    StationaryResult res;
    res.u_basis.g = g;
    res.u_basis.n = n;
    int sum = std::accumulate(a.begin(), a.end(), 0);
    if ((sum - 2 * g + 2) % 2 != 0 || sum - 2 * g + 2 < 0) {
        res.value = 0;
        res.degree = -1;
        return res;
    }
    res.degree = (sum - 2 * g + 2) / 2;
    DxiExpansion U = ns_u_basis(g, n);
    // each U^j_c contributes -u(j, a, c) to the residue
    FieldElement total;
    for (const auto& [key, val] : U.terms) {
        FieldElement t = val;
        for (int s = 0; s < n && !t.is_zero(); ++s)
            t *= -FieldElement(u_residue_coeff(key[static_cast<size_t>(s)].branch, a[static_cast<size_t>(s)], key[static_cast<size_t>(s)].d));
        total += t;
    }
    if (ns_sign && n % 2) total = -total;
    res.value = field_as_rational(total);
    res.u_basis = std::move(U);
    return res;
}

Rational hook_dimension(const std::vector<int>& lambda) {
    // d! / prod hooks
    int d = std::accumulate(lambda.begin(), lambda.end(), 0);
    Rational r = factorial(d);
    for (size_t i = 0; i < lambda.size(); ++i)
        for (int j = 0; j < lambda[i]; ++j) {
            int arm = lambda[i] - j - 1;
            int leg = 0;
            for (size_t k = i + 1; k < lambda.size() && lambda[k] > j; ++k) ++leg;
            r /= arm + leg + 1;
        }
    return r;
}

namespace {

std::vector<Rational> bernoulli(int n) {
    // B_1 = -1/2 convention
    std::vector<Rational> B(static_cast<size_t>(n + 1));
    B[0] = 1;
    for (int m = 1; m <= n; ++m) {
        Rational s = 0;
        for (int k = 0; k < m; ++k) s += binomial(m + 1, k) * B[static_cast<size_t>(k)];
        B[static_cast<size_t>(m)] = -s / (m + 1);
    }
    return B;
}

Rational zeta_neg(int k) {
    // zeta(-k) = (-1)^k B_{k+1}/(k+1)
    auto B = bernoulli(k + 1);
    Rational v = B[static_cast<size_t>(k + 1)] / (k + 1);
    return k % 2 ? -v : v;
}

void partitions(int n, int maxpart, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, maxpart); p >= 1; --p) {
        cur.push_back(p);
        partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}

Rational rpow(const Rational& x, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace

Rational completed_power_sum(int k, const std::vector<int>& lambda) {
    Rational s = 0;
    for (size_t i = 0; i < lambda.size(); ++i) {
        Rational shift = rat(1, 2) - static_cast<long>(i + 1);
        s += rpow(lambda[i] + shift, k) - rpow(shift, k);
    }
    return s + (1 - rpow(rat(1, 2), k)) * zeta_neg(k);
}

Rational op_oracle(int g, const std::vector<int>& a) {
    const int n = static_cast<int>(a.size());
    if (g < 0 || n == 0) throw InvalidTarget("oracle needs g >= 0 and at least one insertion");
    for (int x : a)
        if (x < 0) throw InvalidTarget("negative descendant index");
    int sum = std::accumulate(a.begin(), a.end(), 0);
    if ((sum - 2 * g + 2) % 2 != 0 || sum - 2 * g + 2 < 0) return 0;
    const int D = (sum - 2 * g + 2) / 2;

    // disconnected sums with empty components removed: e^{-q} * sum_lambda ...
    std::map<std::pair<unsigned, int>, Rational> disc;
    auto disconnected = [&](unsigned mask, int d) -> Rational {
        auto key = std::make_pair(mask, d);
        auto it = disc.find(key);
        if (it != disc.end()) return it->second;
        Rational total = 0;
        for (int d2 = 0; d2 <= d; ++d2) {
            int d1 = d - d2;
            Rational em = (d1 % 2 ? -1 : 1) / factorial(d1);
            std::vector<std::vector<int>> parts;
            std::vector<int> cur;
            partitions(d2, d2, cur, parts);
            Rational s = 0;
            for (const auto& lam : parts) {
                Rational dim = hook_dimension(lam) / factorial(d2);
                Rational t = dim * dim;
                for (int j = 0; j < n; ++j)
                    if ((mask >> j) & 1u)
                        t *= completed_power_sum(a[static_cast<size_t>(j)] + 1, lam) / factorial(a[static_cast<size_t>(j)] + 1);
                s += t;
            }
            total += em * s;
        }
        return disc.emplace(key, total).first->second;
    };
    std::map<std::pair<unsigned, int>, Rational> conn;
    std::function<Rational(unsigned, int)> connected = [&](unsigned mask, int d) -> Rational {
        auto key = std::make_pair(mask, d);
        auto it = conn.find(key);
        if (it != conn.end()) return it->second;
        Rational v = disconnected(mask, d);
        unsigned low = mask & (~mask + 1u);
        unsigned rest = mask ^ low;
        // blocks containing the lowest element, other than the whole set
        for (unsigned sub = rest;; sub = (sub - 1) & rest) {
            unsigned block = sub | low;
            if (block != mask)
                for (int d1 = 0; d1 <= d; ++d1) {
                    Rational c = connected(block, d1);
                    if (sgn(c) == 0) continue;
                    v -= c * disconnected(mask ^ block, d - d1);
                }
            if (sub == 0) break;
        }
        return conn.emplace(key, v).first->second;
    };
    return connected((1u << n) - 1u, D);
}

}  // namespace toprec
