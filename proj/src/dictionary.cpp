#include "toprec/dictionary.hpp"

#include "toprec/error.hpp"

#include <random>

namespace toprec {

Matrix zero_matrix(int N) {
    return Matrix(static_cast<size_t>(N), std::vector<FieldElement>(static_cast<size_t>(N)));
}

Matrix identity_matrix(int N) {
    Matrix m = zero_matrix(N);
    for (int i = 0; i < N; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    return m;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    const size_t N = a.size();
    Matrix r = zero_matrix(static_cast<int>(N));
    for (size_t i = 0; i < N; ++i)
        for (size_t k = 0; k < N; ++k) {
            if (a[i][k].is_zero()) continue;
            for (size_t j = 0; j < N; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

Matrix mat_add(const Matrix& a, const Matrix& b) {
    Matrix r = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) r[i][j] += b[i][j];
    return r;
}

Matrix mat_scale(const Matrix& a, const FieldElement& c) {
    Matrix r = a;
    for (auto& row : r)
        for (auto& x : row) x *= c;
    return r;
}

Matrix transpose(const Matrix& a) {
    Matrix r = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) r[i][j] = a[j][i];
    return r;
}

const FieldElement& RSeries::at(int k, int row, int col) const {
    if (k < 0 || k > order())
        throw InsufficientTruncation("R_" + std::to_string(k) + " requested, R known to order " + std::to_string(order()));
    return R[static_cast<size_t>(k)][static_cast<size_t>(row)][static_cast<size_t>(col)];
}

SymplecticReport symplectic_check(const RSeries& R, int order) {
    SymplecticReport rep;
    if (R.R.empty() || R.R[0] != identity_matrix(R.N)) {
        rep.ok = false;
        rep.residuals.push_back("R_0 is not the identity");
    }
    order = std::min(order, R.order());
    // [z^m] sum_s R^i_s(-z) R^j_s(z) = sum_{a+b=m} (-1)^a sum_s R_a[s][i] R_b[s][j]
    for (int m = 1; m <= order; ++m)
        for (int i = 0; i < R.N; ++i)
            for (int j = 0; j < R.N; ++j) {
                FieldElement acc;
                for (int a = 0; a <= m; ++a)
                    for (int s = 0; s < R.N; ++s)
                        acc += R.at(a, s, i) * R.at(m - a, s, j) * FieldElement(a % 2 ? -1 : 1);
                if (!acc.is_zero()) {
                    rep.ok = false;
                    rep.residuals.push_back("z^" + std::to_string(m) + " (" + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) + "): " + acc.str());
                }
            }
    return rep;
}

void require_symplectic(const RSeries& R) {
    auto rep = symplectic_check(R, R.order());
    if (!rep.ok) throw NotSymplectic(rep.residuals.front());
}

RSeries exp_series(const std::vector<Matrix>& r, int N, int order) {
    // r[l] is the coefficient of z^l; r[0] ignored
    RSeries out;
    out.N = N;
    out.R.assign(static_cast<size_t>(order + 1), zero_matrix(N));
    out.R[0] = identity_matrix(N);
    // power = (sum r_l z^l)^m / m!
    std::vector<Matrix> power(static_cast<size_t>(order + 1), zero_matrix(N));
    power[0] = identity_matrix(N);
    for (int m = 1; m <= order; ++m) {
        std::vector<Matrix> next(static_cast<size_t>(order + 1), zero_matrix(N));
        for (int a = 0; a <= order; ++a)
            for (int l = 1; a + l <= order && l < static_cast<int>(r.size()); ++l)
                next[static_cast<size_t>(a + l)] =
                    mat_add(next[static_cast<size_t>(a + l)],
                            mat_scale(mat_mul(power[static_cast<size_t>(a)], r[static_cast<size_t>(l)]), FieldElement(rat(1, m))));
        power = std::move(next);
        for (int k = 0; k <= order; ++k) out.R[static_cast<size_t>(k)] = mat_add(out.R[static_cast<size_t>(k)], power[static_cast<size_t>(k)]);
    }
    return out;
}

RSeries random_valid_R(std::uint64_t seed, int N, int order) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-2, 2), den(1, 3);
    std::vector<Matrix> r(static_cast<size_t>(order + 1), zero_matrix(N));
    for (int l = 1; l <= order; ++l)
        for (int i = 0; i < N; ++i)
            for (int j = i; j < N; ++j) {
                if (l % 2 == 0 && i == j) continue;
                FieldElement v(rat(num(rng), den(rng)));
                r[static_cast<size_t>(l)][static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
                r[static_cast<size_t>(l)][static_cast<size_t>(j)][static_cast<size_t>(i)] = l % 2 ? v : -v;
            }
    return exp_series(r, N, order);
}

FieldElement default_sqrt(const FieldElement& delta) { return field_sqrt(delta); }

LocalCurveData curve_from_R(const GiventalData& gd) {
    std::vector<FieldElement> roots;
    for (const auto& d : gd.delta) roots.push_back(default_sqrt(d));
    return curve_from_R(gd, roots);
}

LocalCurveData curve_from_R(const GiventalData& gd, const std::vector<FieldElement>& sqrt_delta) {
    const RSeries& R = gd.R;
    const int N = R.N;
    if (static_cast<int>(gd.delta.size()) != N || static_cast<int>(gd.unit.size()) != N ||
        static_cast<int>(sqrt_delta.size()) != N)
        throw ValidationError("Delta, unit and sqrt(Delta) need N entries");
    for (int i = 0; i < N; ++i) {
        if (gd.delta[static_cast<size_t>(i)].is_zero()) throw ValidationError("Delta_" + std::to_string(i + 1) + " = 0");
        const auto& s = sqrt_delta[static_cast<size_t>(i)];
        if (s * s != gd.delta[static_cast<size_t>(i)]) throw ValidationError("sqrt(Delta) does not square to Delta");
    }
    require_symplectic(R);
    const int T = R.order();

    LocalCurveData c;
    c.N = N;
    for (int i = 0; i < N; ++i) c.a.emplace_back(i + 1);
    const int Ty = 2 * T + 1;
    for (int i = 0; i < N; ++i) {
        std::vector<FieldElement> h(static_cast<size_t>(Ty));  // exponents 1..Ty
        h[0] = -(FieldElement(2) * sqrt_delta[static_cast<size_t>(i)]).inv();
        for (int k = 2; k - 1 <= T; ++k) {
            FieldElement s;
            for (int j = 0; j < N; ++j) s += gd.unit[static_cast<size_t>(j)] * R.at(k - 1, j, i);
            FieldElement hc = (k - 1) % 2 ? s : -s;  // [z^{k-1}] (-R(-z))^i_1
            h[static_cast<size_t>(2 * k - 2)] = hc / (FieldElement(2) * FieldElement(double_factorial(2 * k - 1)));
        }
        c.y.emplace_back(1, std::move(h), Ty);
    }
    const int TB = 2 * T - 1;
    c.B.assign(static_cast<size_t>(N), std::vector<Series2>(static_cast<size_t>(N), Series2(TB)));
    for (int i = 0; i < N; ++i) c.B[static_cast<size_t>(i)][static_cast<size_t>(i)].set_pole(1);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            Series2 num(T);
            for (int s = 0; s <= T; ++s)
                for (int p = 0; p <= s; ++p) {
                    int q = s - p;
                    FieldElement acc = (s == 0 && i == j) ? FieldElement(1) : FieldElement();
                    for (int t = 0; t < N; ++t) acc -= R.at(p, t, i) * R.at(q, t, j) * FieldElement(s % 2 ? -1 : 1);
                    num.set(p, q, acc);
                }
            Series2 bc = num.div_linear(-1);
            for (int p = 0; 2 * p <= TB; ++p)
                for (int q = 0; 2 * p + 2 * q <= TB; ++q)
                    c.B[static_cast<size_t>(i)][static_cast<size_t>(j)].set(
                        2 * p, 2 * q, bc.coeff(p, q) / FieldElement(double_factorial(2 * p - 1) * double_factorial(2 * q - 1)));
        }
    return c;
}

RSeries R_from_curve(const LocalCurveData& data) {
    require_valid(data);
    const int N = data.N;
    int TB = data.jumps_order();
    int kmax;  // largest k with Bc_{k,0} determined
    if (TB >= kExact) {
        kmax = -1;
        for (const auto& row : data.B)
            for (const auto& b : row) kmax = std::max(kmax, b.degree() / 2);
    } else {
        kmax = TB / 2;
    }
    auto rep = laplace_factor_check(data, kmax + 1);
    if (!rep.ok) throw NotFactorizable(rep.residuals.front());
    RSeries R;
    R.N = N;
    R.R.push_back(identity_matrix(N));
    for (int k = 0; k <= kmax; ++k) {
        Matrix m = zero_matrix(N);
        for (int i = 0; i < N; ++i)
            for (int t = 0; t < N; ++t)
                m[static_cast<size_t>(t)][static_cast<size_t>(i)] = checked_jump(data, i, t, k, 0) * FieldElement(k % 2 ? -1 : 1);
        R.R.push_back(std::move(m));
    }
    return R;
}

}  // namespace toprec
