#include "toprec/field.hpp"

#include "toprec/error.hpp"

#include <sstream>
#include <vector>

namespace toprec {

namespace {

bool is_int_literal(const std::string& s) {
    if (s.empty()) return false;
    size_t k = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (k == s.size()) return false;
    for (; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!is_int_literal(num) || !is_int_literal(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("malformed rational '" + text + "'");
    mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
    mpz_class d(den, 10);
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string rational_str(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational double_factorial(int n) {
    if (n % 2 == 0) throw std::invalid_argument("double_factorial: odd argument expected");
    if (n == -1) return 1;
    if (n == -3) return -1;
    if (n < -3) throw std::invalid_argument("double_factorial: argument below -3");
    mpz_class r = 1;
    for (int k = n; k > 1; k -= 2) r *= k;
    return Rational(r);
}

Rational factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(r);
}

Rational binomial(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

Rational FieldElement::as_rational() const {
    if (!is_rational()) throw NotRational(str());
    return c_[0];
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    for (int k = 0; k < 4; ++k) c_[k] += o.c_[k];
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    for (int k = 0; k < 4; ++k) c_[k] -= o.c_[k];
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    *this = *this * o;
    return *this;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    // basis products: i*i=-1, r*r=2, i*r=ir, ir*ir=-2, i*ir=-r, r*ir=2i
    const auto& x = a.c_;
    const auto& y = b.c_;
    if (a.is_rational()) {
        if (sgn(x[0]) == 0) return {};
        return {x[0] * y[0], x[0] * y[1], x[0] * y[2], x[0] * y[3]};
    }
    if (b.is_rational()) {
        if (sgn(y[0]) == 0) return {};
        return {x[0] * y[0], x[1] * y[0], x[2] * y[0], x[3] * y[0]};
    }
    FieldElement r;
    auto& z = r.c_;
    z[0] = x[0] * y[0] - x[1] * y[1] + 2 * (x[2] * y[2] - x[3] * y[3]);
    z[1] = x[0] * y[1] + x[1] * y[0] + 2 * (x[2] * y[3] + x[3] * y[2]);
    z[2] = x[0] * y[2] + x[2] * y[0] - x[1] * y[3] - x[3] * y[1];
    z[3] = x[0] * y[3] + x[3] * y[0] + x[1] * y[2] + x[2] * y[1];
    return r;
}

FieldElement FieldElement::inv() const {
    if (is_zero()) throw DivisionByZero("inverse of 0");
    if (is_rational()) return FieldElement(1 / c_[0]);
    // column k of M is a * e_k
    Rational m[4][5];
    const FieldElement basis[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    for (int k = 0; k < 4; ++k) {
        FieldElement col = *this * basis[k];
        for (int r = 0; r < 4; ++r) m[r][k] = col.c_[r];
    }
    for (int r = 0; r < 4; ++r) m[r][4] = r == 0 ? 1 : 0;
    for (int c = 0; c < 4; ++c) {
        int p = c;
        while (p < 4 && sgn(m[p][c]) == 0) ++p;
        if (p == 4) throw DivisionByZero("singular multiplication matrix");
        if (p != c)
            for (int k = 0; k < 5; ++k) std::swap(m[p][k], m[c][k]);
        Rational piv = m[c][c];
        for (int k = c; k < 5; ++k) m[c][k] /= piv;
        for (int r = 0; r < 4; ++r) {
            if (r == c || sgn(m[r][c]) == 0) continue;
            Rational f = m[r][c];
            for (int k = c; k < 5; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return {m[0][4], m[1][4], m[2][4], m[3][4]};
}

std::string FieldElement::str() const {
    static const char* names[4] = {"", "i", "r", "i*r"};
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < 4; ++k) {
        if (sgn(c_[k]) == 0) continue;
        Rational v = c_[k];
        if (!first) {
            os << (sgn(v) < 0 ? " - " : " + ");
            v = abs(v);
        }
        if (k == 0) {
            os << rational_str(v);
        } else if (v == 1) {
            os << names[k];
        } else if (v == -1) {
            os << "-" << names[k];
        } else {
            os << rational_str(v) << "*" << names[k];
        }
        first = false;
    }
    return first ? "0" : os.str();
}

FieldElement field_embed_rational(const Rational& q) { return FieldElement(q); }
FieldElement field_mul(const FieldElement& a, const FieldElement& b) { return a * b; }
FieldElement field_inv(const FieldElement& a) { return a.inv(); }
Rational field_as_rational(const FieldElement& a) { return a.as_rational(); }

FieldElement field_pow(const FieldElement& a, int k) {
    FieldElement base = k < 0 ? a.inv() : a;
    unsigned e = static_cast<unsigned>(k < 0 ? -k : k);
    FieldElement r(1);
    while (e) {
        if (e & 1u) r *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return r;
}

namespace {

bool rational_square_root(const Rational& q, Rational& out) {
    if (sgn(q) < 0) return false;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    out = rat(n, d);
    return true;
}

}  // namespace

FieldElement field_sqrt(const Rational& q) {
    return field_sqrt(FieldElement(q));
}

namespace {

// square root inside Q(i); elements carry c2 = c3 = 0
bool gauss_sqrt(const FieldElement& a, FieldElement& out) {
    const Rational& c = a[0];
    const Rational& d = a[1];
    Rational s;
    if (sgn(d) == 0) {
        if (rational_square_root(c, s)) {
            out = {s, 0, 0, 0};
            return true;
        }
        if (rational_square_root(-c, s)) {
            out = {0, s, 0, 0};
            return true;
        }
        return false;
    }
    Rational n;
    if (!rational_square_root(c * c + d * d, n)) return false;
    for (int sign : {1, -1}) {
        Rational u;
        if (!rational_square_root((c + sign * n) / 2, u) || sgn(u) == 0) continue;
        out = {u, d / (2 * u), 0, 0};
        return true;
    }
    return false;
}

FieldElement normalize_root(const FieldElement& x) {
    for (int k : {2, 0, 1, 3}) {
        if (sgn(x[k]) > 0) return x;
        if (sgn(x[k]) < 0) return -x;
    }
    return x;
}

}  // namespace

FieldElement field_sqrt(const FieldElement& a) {
    if (a.is_zero()) return {};
    const FieldElement al{a[0], a[1], 0, 0};
    const FieldElement be{a[2], a[3], 0, 0};
    FieldElement p;
    if (be.is_zero()) {
        if (gauss_sqrt(al, p)) return normalize_root(p);
        if (gauss_sqrt(al * FieldElement(rat(1, 2)), p)) return normalize_root(p * FieldElement::sqrt2());
        throw SqrtNotInField(a.str());
    }
    // (p + q r)^2 = a with p, q in Q(i): p^4 - al p^2 + be^2/2 = 0
    FieldElement disc;
    if (gauss_sqrt(al * al - FieldElement(2) * be * be, disc)) {
        for (int sign : {1, -1}) {
            FieldElement p2 = (al + FieldElement(sign) * disc) * FieldElement(rat(1, 2));
            if (p2.is_zero() || !gauss_sqrt(p2, p)) continue;
            FieldElement q = be / (FieldElement(2) * p);
            return normalize_root(p + q * FieldElement::sqrt2());
        }
    }
    throw SqrtNotInField(a.str());
}

std::ostream& operator<<(std::ostream& os, const FieldElement& a) { return os << a.str(); }

}  // namespace toprec
