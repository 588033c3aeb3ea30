#include "toprec/series.hpp"

#include "toprec/error.hpp"

#include <algorithm>
#include <string>

namespace toprec {

int order_add(int T, int k) {
    if (T >= kExact) return kExact;
    long long r = static_cast<long long>(T) + k;
    if (r >= kExact) return kExact;
    return static_cast<int>(r);
}

Series1::Series1(int low, std::vector<FieldElement> coeffs, int T) : low_(low), T_(T), c_(std::move(coeffs)) {
    normalize();
}

void Series1::normalize() {
    if (T_ < kExact && high() > T_) c_.resize(static_cast<size_t>(std::max(0, T_ - low_ + 1)));
    size_t lead = 0;
    while (lead < c_.size() && c_[lead].is_zero()) ++lead;
    if (lead == c_.size()) {
        c_.clear();
        low_ = order_add(T_, 1);
        return;
    }
    while (c_.back().is_zero()) c_.pop_back();
    if (lead) c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    low_ += static_cast<int>(lead);
}

Series1 Series1::monomial(const FieldElement& c, int k, int T) {
    if (k > T) return Series1(T);
    return Series1(k, {c}, T);
}

FieldElement Series1::coeff(int k) const {
    if (k > T_) throw InsufficientTruncation("coefficient z^" + std::to_string(k) + " above truncation " + std::to_string(T_));
    if (k < low_ || k > high()) return {};
    return c_[static_cast<size_t>(k - low_)];
}

Series1 Series1::truncated(int T) const {
    if (T >= T_) return *this;
    return Series1(low_, c_, T);
}

Series1 Series1::negate_var() const {
    auto c = c_;
    for (size_t k = 0; k < c.size(); ++k)
        if ((low_ + static_cast<int>(k)) % 2 != 0) c[k] = -c[k];
    return Series1(low_, std::move(c), T_);
}

Series1 Series1::derivative() const {
    std::vector<FieldElement> c(c_.size());
    for (size_t k = 0; k < c.size(); ++k) c[k] = c_[k] * FieldElement(low_ + static_cast<int>(k));
    return Series1(low_ - 1, std::move(c), order_add(T_, -1));
}

Series1 Series1::operator-() const {
    auto c = c_;
    for (auto& x : c) x = -x;
    return Series1(low_, std::move(c), T_);
}

Series1& Series1::operator+=(const Series1& o) {
    int T = std::min(T_, o.T_);
    if (o.is_zero()) {
        *this = truncated(T);
        return *this;
    }
    if (is_zero()) {
        *this = o.truncated(T);
        return *this;
    }
    int lo = std::min(low_, o.low_);
    int hi = std::max(high(), o.high());
    if (T < kExact) hi = std::min(hi, T);
    std::vector<FieldElement> c(static_cast<size_t>(std::max(0, hi - lo + 1)));
    for (size_t k = 0; k < c_.size(); ++k) {
        int e = low_ + static_cast<int>(k);
        if (e <= hi) c[static_cast<size_t>(e - lo)] += c_[k];
    }
    for (size_t k = 0; k < o.c_.size(); ++k) {
        int e = o.low_ + static_cast<int>(k);
        if (e <= hi) c[static_cast<size_t>(e - lo)] += o.c_[k];
    }
    *this = Series1(lo, std::move(c), T);
    return *this;
}

Series1& Series1::operator-=(const Series1& o) { return *this += -o; }

Series1& Series1::operator*=(const FieldElement& s) {
    for (auto& x : c_) x = x * s;
    normalize();
    return *this;
}

Series1 operator+(Series1 a, const Series1& b) { return a += b; }
Series1 operator-(Series1 a, const Series1& b) { return a -= b; }
Series1 operator*(Series1 a, const FieldElement& c) { return a *= c; }

Series1 operator*(const Series1& a, const Series1& b) {
    int T = std::min(order_add(a.trunc(), b.low()), order_add(b.trunc(), a.low()));
    if (a.is_zero() || b.is_zero()) return Series1(T);
    int lo = a.low() + b.low();
    int hi = a.high() + b.high();
    if (T < kExact) hi = std::min(hi, T);
    if (hi < lo) return Series1(T);
    std::vector<FieldElement> c(static_cast<size_t>(hi - lo + 1));
    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    for (size_t i = 0; i < ca.size(); ++i) {
        if (ca[i].is_zero()) continue;
        for (size_t j = 0; j < cb.size(); ++j) {
            int e = lo + static_cast<int>(i + j);
            if (e > hi) break;
            if (cb[j].is_zero()) continue;
            c[static_cast<size_t>(e - lo)] += ca[i] * cb[j];
        }
    }
    return Series1(lo, std::move(c), T);
}

Series1 s_add(const Series1& a, const Series1& b) { return a + b; }
Series1 s_mul(const Series1& a, const Series1& b) { return a * b; }

Series1 s_inv(const Series1& a) {
    if (a.is_zero()) throw NotInvertible("zero series");
    const auto& c = a.coeffs();
    int L = a.low();
    if (a.trunc() >= kExact) {
        if (c.size() == 1) return Series1::monomial(c[0].inv(), -L, kExact);
        throw InsufficientTruncation("inverse of an exact polynomial needs a finite truncation");
    }
    int n = a.trunc() - L;  // unit part known to z^n
    FieldElement c0inv = c[0].inv();
    std::vector<FieldElement> r(static_cast<size_t>(n + 1));
    r[0] = c0inv;
    for (int k = 1; k <= n; ++k) {
        FieldElement s;
        for (int j = 1; j <= k && j < static_cast<int>(c.size()); ++j) {
            if (c[static_cast<size_t>(j)].is_zero()) continue;
            s += c[static_cast<size_t>(j)] * r[static_cast<size_t>(k - j)];
        }
        r[static_cast<size_t>(k)] = -(s * c0inv);
    }
    return Series1(-L, std::move(r), a.trunc() - 2 * L);
}

FieldElement s_residue(const Series1& a) { return a.coeff(-1); }

Series1 s_odd_antiderivative(const Series1& a) {
    const auto& c = a.coeffs();
    std::vector<FieldElement> r(c.size());
    for (size_t k = 0; k < c.size(); ++k) {
        int e = a.low() + static_cast<int>(k);
        if (c[k].is_zero()) continue;
        if (e == -1) throw LogarithmicTerm("nonzero z^-1 coefficient");
        if (e % 2 == 0) r[k] = c[k] * FieldElement(rat(2, e + 1));
    }
    return Series1(a.low() + 1, std::move(r), order_add(a.trunc(), 1));
}

FieldElement s_coeff(const Series1& a, int k) { return a.coeff(k); }

Series1 s_compose(const Series1& f, const Series1& g) {
    if (f.low() < 0) throw std::invalid_argument("s_compose: f must be a power series");
    if (!g.is_zero() && g.low() < 1) throw std::invalid_argument("s_compose: g(0) must vanish");
    int lg = g.is_zero() ? order_add(g.trunc(), 1) : g.low();
    int T = g.trunc();
    if (f.trunc() < kExact) T = std::min(T, static_cast<int>(std::min<long long>(kExact, 1LL * (f.trunc() + 1) * lg - 1)));
    if (T >= kExact) throw InsufficientTruncation("composition of exact series");
    // Horner in g, truncated at T
    Series1 acc(T);
    int top = std::min(f.high(), f.trunc());
    for (int k = top; k >= 0; --k) {
        acc = (acc * g).truncated(T) + Series1::constant(f.coeff(k), T);
    }
    return acc.truncated(T);
}

Series2::Series2(int D) : D_(D), c_(D < 0 ? 0 : static_cast<size_t>((D + 1) * (D + 2) / 2)) {}

int Series2::idx(int k, int l) {
    int s = k + l;
    return s * (s + 1) / 2 + l;
}

Series2 Series2::from_u(const Series1& f) {
    if (f.low() < 0) throw std::invalid_argument("Series2::from_u: power series expected");
    Series2 r(f.trunc());
    for (int k = 0; k <= r.D_; ++k) r.c_[static_cast<size_t>(idx(k, 0))] = f.coeff(k);
    return r;
}

Series2 Series2::from_w(const Series1& f) { return from_u(f).swapped(); }

FieldElement Series2::coeff(int k, int l) const {
    if (k < 0 || l < 0) return {};
    if (k + l > D_)
        throw InsufficientTruncation("bivariate coefficient (" + std::to_string(k) + "," + std::to_string(l) +
                                     ") above total degree " + std::to_string(D_));
    return c_[static_cast<size_t>(idx(k, l))];
}

void Series2::set(int k, int l, const FieldElement& v) {
    if (k + l > D_) throw InsufficientTruncation("set above truncation");
    c_[static_cast<size_t>(idx(k, l))] = v;
}

void Series2::add_to(int k, int l, const FieldElement& v) {
    if (k + l > D_) throw InsufficientTruncation("add above truncation");
    c_[static_cast<size_t>(idx(k, l))] += v;
}

Series2 Series2::truncated(int D) const {
    if (D >= D_) return *this;
    Series2 r(D);
    std::copy(c_.begin(), c_.begin() + static_cast<long>(r.c_.size()), r.c_.begin());
    r.pole_ = pole_;
    return r;
}

Series2 Series2::swapped() const {
    Series2 r(D_);
    for (int s = 0; s <= D_; ++s)
        for (int k = 0; k <= s; ++k) r.c_[static_cast<size_t>(idx(s - k, k))] = c_[static_cast<size_t>(idx(k, s - k))];
    r.pole_ = pole_;
    return r;
}

Series2& Series2::operator+=(const Series2& o) {
    if (o.D_ < D_) *this = truncated(o.D_);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    pole_ += o.pole_;
    return *this;
}

Series2& Series2::operator-=(const Series2& o) {
    if (o.D_ < D_) *this = truncated(o.D_);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    pole_ -= o.pole_;
    return *this;
}

Series2 operator*(const Series2& a, const Series2& b) {
    if (!a.pole_.is_zero() || !b.pole_.is_zero())
        throw std::invalid_argument("Series2 product with a symbolic pole");
    int D = std::min(a.D_, b.D_);
    Series2 r(D);
    for (int s1 = 0; s1 <= D; ++s1)
        for (int k1 = 0; k1 <= s1; ++k1) {
            const auto& x = a.c_[static_cast<size_t>(Series2::idx(k1, s1 - k1))];
            if (x.is_zero()) continue;
            for (int s2 = 0; s1 + s2 <= D; ++s2)
                for (int k2 = 0; k2 <= s2; ++k2) {
                    const auto& y = b.c_[static_cast<size_t>(Series2::idx(k2, s2 - k2))];
                    if (y.is_zero()) continue;
                    r.c_[static_cast<size_t>(Series2::idx(k1 + k2, s1 - k1 + s2 - k2))] += x * y;
                }
        }
    return r;
}

Series2 operator*(Series2 a, const FieldElement& c) {
    for (auto& x : a.c_) x = x * c;
    a.pole_ = a.pole_ * c;
    return a;
}

Series2 Series2::inv() const {
    if (D_ < 0 || c_[0].is_zero()) throw NotInvertible("bivariate series with zero constant term");
    if (!pole_.is_zero()) throw std::invalid_argument("Series2::inv with a symbolic pole");
    Series2 r(D_);
    FieldElement c0 = c_[0].inv();
    r.c_[0] = c0;
    for (int s = 1; s <= D_; ++s)
        for (int k = 0; k <= s; ++k) {
            FieldElement acc;
            for (int s1 = 1; s1 <= s; ++s1)
                for (int k1 = std::max(0, k - (s - s1)); k1 <= std::min(k, s1); ++k1) {
                    const auto& x = c_[static_cast<size_t>(idx(k1, s1 - k1))];
                    if (x.is_zero()) continue;
                    acc += x * r.c_[static_cast<size_t>(idx(k - k1, (s - s1) - (k - k1)))];
                }
            r.c_[static_cast<size_t>(idx(k, s - k))] = -(acc * c0);
        }
    return r;
}

Series2 Series2::div_linear(int sign) const {
    if (!pole_.is_zero()) throw std::invalid_argument("Series2::div_linear with a symbolic pole");
    const FieldElement s(sign);
    for (int n = 0; n <= D_; ++n) {
        FieldElement acc;
        FieldElement p(1);
        for (int a = 0; a <= n; ++a) {
            acc += p * c_[static_cast<size_t>(idx(a, n - a))];
            p = p * s;
        }
        if (!acc.is_zero())
            throw NotDivisible("numerator does not vanish on the line u = " + std::to_string(sign) + " w at degree " +
                               std::to_string(n));
    }
    Series2 q(D_ - 1);
    for (int n = 0; n < D_; ++n)
        for (int a = 0; a <= n; ++a) {
            int b = n - a;
            FieldElement acc;
            FieldElement p(1);
            for (int t = 0; t <= b; ++t) {
                acc += p * c_[static_cast<size_t>(idx(a + 1 + t, b - t))];
                p = p * s;
            }
            q.c_[static_cast<size_t>(idx(a, b))] = acc;
        }
    return q;
}

void MultiSeries::add(const std::vector<int>& e, const FieldElement& v) {
    if (v.is_zero()) return;
    auto it = entries.find(e);
    if (it == entries.end()) {
        entries.emplace(e, v);
        return;
    }
    it->second += v;
    if (it->second.is_zero()) entries.erase(it);
}

FieldElement MultiSeries::coeff(const std::vector<int>& e) const {
    for (int x : e)
        if (x > T) throw InsufficientTruncation("multivariate coefficient above truncation");
    auto it = entries.find(e);
    return it == entries.end() ? FieldElement{} : it->second;
}

}  // namespace toprec
