#pragma once

#include "toprec/field.hpp"

#include <map>
#include <vector>

namespace toprec {

// Truncation orders at or above kExact mean "known to all orders" (polynomial data).
inline constexpr int kExact = 1 << 28;

// Saturating sum of a truncation order and an offset.
int order_add(int T, int k);

// Truncated Laurent series sum_{k=low}^{T} c_k z^k in one variable.
// Coefficients above T are unknown. A 1-form is stored as its density in dz.
class Series1 {
public:
    explicit Series1(int T = -1) : low_(T + 1), T_(T) {}
    Series1(int low, std::vector<FieldElement> coeffs, int T);

    static Series1 monomial(const FieldElement& c, int k, int T);
    static Series1 constant(const FieldElement& c, int T) { return monomial(c, 0, T); }

    int low() const { return low_; }
    int trunc() const { return T_; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    // highest stored exponent (low-1 when zero)
    int high() const { return low_ + static_cast<int>(c_.size()) - 1; }

    // InsufficientTruncation if k > T; zero below low.
    FieldElement coeff(int k) const;

    Series1 truncated(int T) const;  // lowers T only
    Series1 negate_var() const;      // f(-z)
    Series1 derivative() const;

    Series1 operator-() const;
    Series1& operator+=(const Series1& o);
    Series1& operator-=(const Series1& o);
    Series1& operator*=(const FieldElement& c);

    friend bool operator==(const Series1& a, const Series1& b) {
        return a.low_ == b.low_ && a.T_ == b.T_ && a.c_ == b.c_;
    }

private:
    void normalize();
    int low_;
    int T_;
    std::vector<FieldElement> c_;
};

Series1 operator+(Series1 a, const Series1& b);
Series1 operator-(Series1 a, const Series1& b);
Series1 operator*(const Series1& a, const Series1& b);
Series1 operator*(Series1 a, const FieldElement& c);

Series1 s_add(const Series1& a, const Series1& b);
Series1 s_mul(const Series1& a, const Series1& b);
Series1 s_inv(const Series1& a);  // NotInvertible on zero; T_out = T - 2 low
FieldElement s_residue(const Series1& a);
Series1 s_odd_antiderivative(const Series1& a);
FieldElement s_coeff(const Series1& a, int k);
// Power series composition f(g(z)) with g(0) = 0; f given from exponent 0.
Series1 s_compose(const Series1& f, const Series1& g);

// Bivariate power series sum c_{k,l} u^k w^l, known for total degree k + l <= D.
// An optional tag records a double pole t/(u-w)^2 kept symbolic.
class Series2 {
public:
    explicit Series2(int D = -1);

    static Series2 from_u(const Series1& f);  // f(u), f a power series
    static Series2 from_w(const Series1& f);  // f(w)

    int degree() const { return D_; }
    FieldElement coeff(int k, int l) const;  // InsufficientTruncation when k+l > D
    void set(int k, int l, const FieldElement& v);
    void add_to(int k, int l, const FieldElement& v);

    const FieldElement& pole() const { return pole_; }
    void set_pole(const FieldElement& t) { pole_ = t; }

    Series2 truncated(int D) const;
    Series2 swapped() const;  // (u,w) -> (w,u)
    Series2 inv() const;      // NotInvertible when the constant term is 0

    // Exact division by (u - sign*w)... sign = +1 divides by (u - w), -1 by (u + w).
    // NotDivisible if the numerator does not vanish on u = sign*w within truncation.
    Series2 div_linear(int sign) const;

    Series2& operator+=(const Series2& o);
    Series2& operator-=(const Series2& o);
    friend Series2 operator+(Series2 a, const Series2& b) { return a += b; }
    friend Series2 operator-(Series2 a, const Series2& b) { return a -= b; }
    friend Series2 operator*(const Series2& a, const Series2& b);
    friend Series2 operator*(Series2 a, const FieldElement& c);
    friend bool operator==(const Series2& a, const Series2& b) {
        return a.D_ == b.D_ && a.c_ == b.c_ && a.pole_ == b.pole_;
    }

private:
    static int idx(int k, int l);
    int D_;
    std::vector<FieldElement> c_;  // triangular, index idx(k,l)
    FieldElement pole_;
};

// Sparse coefficients in n variables, exponents in [-P, T]^n.
struct MultiSeries {
    int n = 0;
    int P = 0;
    int T = 0;
    std::map<std::vector<int>, FieldElement> entries;

    void add(const std::vector<int>& e, const FieldElement& v);
    FieldElement coeff(const std::vector<int>& e) const;
    friend bool operator==(const MultiSeries& a, const MultiSeries& b) {
        return a.n == b.n && a.T == b.T && a.entries == b.entries;
    }
};

}  // namespace toprec
