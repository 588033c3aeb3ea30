#pragma once

#include "toprec/curve.hpp"
#include "toprec/forms.hpp"

#include <map>
#include <utility>
#include <vector>

namespace toprec {

// Local topological recursion. omega_{g,n} is kept as an expansion in the dxi forms of
// every slot; slot 0 is the slot the recursion produces. Not safe for concurrent use.
class RecursionEngine {
public:
    explicit RecursionEngine(LocalCurveData data);

    const LocalCurveData& data() const { return data_; }
    // 2g - 2 + n > 0, else InvalidTarget
    const DxiExpansion& omega(int g, int n);

    // minimal truncation orders of times and jumps needed for omega_{g,n}
    static int required_times_order(int g, int n);

private:
    using Expo = std::map<int, std::map<DxiKey, FieldElement>>;  // exponent -> spectator key -> value

    struct Piece {
        int e;
        FieldElement c;
        DxiKey legs;
    };

    DxiExpansion compute(int g, int n);
    const std::vector<std::pair<int, FieldElement>>& even_part(int b, int d, int j, int maxexp);
    std::vector<Piece> factor(int h, int k, int j, int maxexp, int sign);
    static int lowest_exponent(const DxiExpansion& w, int h, int k, int j);

    LocalCurveData data_;
    std::map<std::pair<int, int>, DxiExpansion> memo_;
    std::map<std::tuple<int, int, int, int>, std::vector<std::pair<int, FieldElement>>> even_cache_;
    std::vector<std::vector<FieldElement>> inv8h_;  // [j][k]: coefficients of 1/(8 H_j(s))
};

// omega_{g,n} materialized with regular parts to z^order.
CorrelationForm tr_omega(const LocalCurveData& data, int g, int n, int order);
DxiExpansion tr_omega_dxi(const LocalCurveData& data, int g, int n);

// (-beta/(2 alpha))^{2g+n-2} beta^{g+n-1} ... polar closed form for y = alpha z (+ beta scaling).
CorrelationForm airy_closed_form(int g, int n, const FieldElement& alpha, const FieldElement& beta);
// One branch, arbitrary odd times, zero jumps. times[k-1] = h_k.
CorrelationForm kdv_closed_form(int g, int n, const std::vector<FieldElement>& times);

}  // namespace toprec
