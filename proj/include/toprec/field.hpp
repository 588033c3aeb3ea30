#pragma once

#include <gmpxx.h>

#include <array>
#include <ostream>
#include <string>

namespace toprec {

using Rational = mpq_class;

// n/d in lowest terms (mpq_class does not canonicalize on construction).
inline Rational rat(const mpz_class& n, const mpz_class& d) {
    Rational q(n, d);
    q.canonicalize();
    return q;
}

// Parses "p", "-p" or "p/q". Throws ParseError (also for q = 0).
Rational parse_rational(const std::string& s);
// Canonical text: "p" when the denominator is 1, else "p/q".
std::string rational_str(const Rational& q);

// n!! for odd n >= -3, continued downward by n!! = n (n-2)!!, so (-1)!! = 1, (-3)!! = -1.
Rational double_factorial(int n);
Rational factorial(int n);
Rational binomial(int n, int k);

// Element of Q(i, sqrt2): c0 + c1 i + c2 r + c3 i r with i^2 = -1, r^2 = 2.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(const Rational& q) : c_{q, 0, 0, 0} {}  // NOLINT: implicit embedding
    FieldElement(long q) : c_{Rational(q), 0, 0, 0} {}   // NOLINT
    FieldElement(int q) : c_{Rational(q), 0, 0, 0} {}    // NOLINT
    FieldElement(Rational c0, Rational c1, Rational c2, Rational c3)
        : c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {}

    static FieldElement i() { return {0, 1, 0, 0}; }
    static FieldElement sqrt2() { return {0, 0, 1, 0}; }

    const Rational& operator[](int k) const { return c_[k]; }
    const std::array<Rational, 4>& components() const { return c_; }

    bool is_zero() const { return sgn(c_[0]) == 0 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0; }
    bool is_rational() const { return sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0; }
    Rational as_rational() const;  // NotRational unless c1 = c2 = c3 = 0

    FieldElement inv() const;      // DivisionByZero on zero
    FieldElement conj_i() const { return {c_[0], -c_[1], c_[2], -c_[3]}; }
    FieldElement conj_r() const { return {c_[0], c_[1], -c_[2], -c_[3]}; }

    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o) { return *this *= o.inv(); }
    FieldElement operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3]}; }

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inv(); }
    friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.c_ == b.c_; }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
    // Lexicographic on components; only used for canonical ordering.
    friend bool operator<(const FieldElement& a, const FieldElement& b) { return a.c_ < b.c_; }

    std::string str() const;  // human readable, e.g. "1/2 - 3*i*r"

private:
    std::array<Rational, 4> c_{};
};

FieldElement field_embed_rational(const Rational& q);
FieldElement field_mul(const FieldElement& a, const FieldElement& b);
FieldElement field_inv(const FieldElement& a);
Rational field_as_rational(const FieldElement& a);
FieldElement field_pow(const FieldElement& a, int k);  // negative k inverts

// Square root inside the field, SqrtNotInField if none exists. Of the two roots
// the one with positive leading component (c2, then c0, then c1, then c3) is returned.
FieldElement field_sqrt(const Rational& q);
FieldElement field_sqrt(const FieldElement& a);

std::ostream& operator<<(std::ostream& os, const FieldElement& a);

}  // namespace toprec
