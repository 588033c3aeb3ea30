#pragma once

#include "toprec/curve.hpp"
#include "toprec/field.hpp"
#include "toprec/series.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace toprec {

// dxi^{branch}_{d} in one slot
struct Leg {
    int branch = 0;
    int d = 0;
    friend auto operator<=>(const Leg&, const Leg&) = default;
};

// one leg per slot, slot order
using DxiKey = std::vector<Leg>;

// sum c * prod_s dxi^{branch_s}_{d_s}(z_s)
struct DxiExpansion {
    int g = 0;
    int n = 0;
    std::map<DxiKey, FieldElement> terms;

    void add(const DxiKey& k, const FieldElement& v);
    FieldElement coeff(const DxiKey& k) const;
    friend bool operator==(const DxiExpansion& a, const DxiExpansion& b) { return a.n == b.n && a.terms == b.terms; }
};

// Densities of omega_{g,n} per branch vector, exponent vectors in [-P, T]^n.
struct CorrelationForm {
    int g = 0;
    int n = 0;
    int N = 1;
    int P = 0;
    int T = 0;
    std::map<std::vector<int>, MultiSeries> components;  // branch vector -> series

    FieldElement coeff(const std::vector<int>& branches, const std::vector<int>& exps) const;
    void add(const std::vector<int>& branches, const std::vector<int>& exps, const FieldElement& v);
    size_t term_count() const;
    friend bool operator==(const CorrelationForm& a, const CorrelationForm& b);
};

CorrelationForm empty_form(int g, int n, int N, int T);
CorrelationForm scaled(const CorrelationForm& f, const FieldElement& c);

// Materializes an expansion; regular parts to z^T in every slot.
CorrelationForm evaluate(const DxiExpansion& e, const LocalCurveData& data, int T);

// Recovers dxi coefficients from principal parts; ExpansionResidual if the rest is nonzero.
DxiExpansion expand_in_dxi(const CorrelationForm& form, const LocalCurveData& data);

struct InvariantReport {
    bool ok = true;
    std::vector<std::string> failures;
};
// symmetry, no z^-1, even negative exponents, pole bound 6g-4+2n
InvariantReport check_invariants(const CorrelationForm& f);

}  // namespace toprec
