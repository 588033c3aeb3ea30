#pragma once

#include "toprec/field.hpp"
#include "toprec/series.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace toprec {

// Local spectral curve: x^i = z^2 + a_i, y^i = sum_{k>=1} h^i_k z^k and the regular part
// of B^{i,j}(z,z') = delta_ij/(z-z')^2 + sum B^{i,j}_{k,l} z^k z'^l.
// Branches are 0-based here and 1-based in files and on the command line.
struct LocalCurveData {
    int N = 0;
    std::vector<FieldElement> a;
    std::vector<Series1> y;               // y[i], exponents >= 1, truncation T_y (kExact allowed)
    std::vector<std::vector<Series2>> B;  // B[i][j], entries known for k + l <= T_B
    bool jumps_exact = false;             // entries beyond the tables are zero

    int times_order() const;  // min over branches
    int jumps_order() const;  // kExact when jumps_exact
    FieldElement time(int i, int k) const;
    FieldElement jump(int i, int j, int k, int l) const;
};

// One branch, h_1 = 1, everything else zero.
LocalCurveData airy_curve();
// N branches with the given odd/even times and exact zero jumps.
LocalCurveData curve_with_times(const std::vector<std::vector<FieldElement>>& times);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};
ValidationReport validate_curve(const LocalCurveData& data);
void require_valid(const LocalCurveData& data);  // ValidationError

// checked time 2 (2k-1)!! h_{2k-1}, k >= 1
FieldElement checked_time(const LocalCurveData& data, int i, int k);
// checked jump B_{2d1,2d2} (2d1-1)!! (2d2-1)!!
FieldElement checked_jump(const LocalCurveData& data, int i, int j, int d1, int d2);
// Tables limited by truncation; kmax/dmax cap exact data.
std::vector<std::vector<FieldElement>> checked_times(const LocalCurveData& data, int kmax);
// [i][j][d1][d2] for d1 + d2 <= dmax (and within truncation)
std::vector<std::vector<std::vector<std::vector<FieldElement>>>> checked_jumps(const LocalCurveData& data, int dmax);

// d xi^i_d(z, j): density in the local coordinate at branch j, regular part to z^order.
Series1 dxi_series(const LocalCurveData& data, int i, int d, int j, int order);

// f[d][i][j] = f^i_d(u, j) as a series in w = 1/u.
using FTable = std::vector<std::vector<std::vector<Series1>>>;
FTable f_series(const LocalCurveData& data, int order);

struct LaplaceReport {
    bool ok = true;
    int checked = 0;  // number of coefficient identities tested
    std::vector<std::string> residuals;
};
// Tests the factorization of the checked jumps through f_0 for all coefficient pairs
// (p, q) with p + q + 1 <= order that the truncation determines.
LaplaceReport laplace_factor_check(const LocalCurveData& data, int order);

LocalCurveData scale_y(const LocalCurveData& data, const FieldElement& lambda);

// Seeded fixture: small random rationals, symmetric jumps. odd_times_only zeroes even times.
LocalCurveData random_curve(std::uint64_t seed, int N, int times_order, int jumps_order, bool odd_times_only = true);

}  // namespace toprec
