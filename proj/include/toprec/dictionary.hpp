#pragma once

#include "toprec/curve.hpp"
#include "toprec/field.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace toprec {

using Matrix = std::vector<std::vector<FieldElement>>;  // [row][col]

Matrix identity_matrix(int N);
Matrix zero_matrix(int N);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_scale(const Matrix& a, const FieldElement& c);
Matrix transpose(const Matrix& a);

// R(z) = sum_k R_k z^k, k = 0..order(). (R)^i_j is R[j][i]: the upper index is the column.
struct RSeries {
    int N = 0;
    std::vector<Matrix> R;

    int order() const { return static_cast<int>(R.size()) - 1; }
    // R_k[row][col], InsufficientTruncation beyond order()
    const FieldElement& at(int k, int row, int col) const;
};

struct GiventalData {
    RSeries R;
    std::vector<FieldElement> delta;
    std::vector<FieldElement> unit;
};

struct SymplecticReport {
    bool ok = true;
    std::vector<std::string> residuals;
};
// sum_s R^i_s(-z) R^j_s(z) = delta^{ij} through z^order
SymplecticReport symplectic_check(const RSeries& R, int order);
void require_symplectic(const RSeries& R);  // NotSymplectic

// R = exp(sum_l r_l z^l), r_l symmetric for odd l and skew for even l.
RSeries random_valid_R(std::uint64_t seed, int N, int order);
// exp of a matrix power series without constant term, truncated
RSeries exp_series(const std::vector<Matrix>& r, int N, int order);

// sqrt(Delta_i) with the default branch choice of field_sqrt.
FieldElement default_sqrt(const FieldElement& delta);

// Curve with checked times from the dilaton shift, checked jumps from the edge numerator,
// h^i_1 = -1/(2 sqrt Delta_i). Jumps known to total degree 2*order - 1, times to 2*order + 1.
LocalCurveData curve_from_R(const GiventalData& gd);
LocalCurveData curve_from_R(const GiventalData& gd, const std::vector<FieldElement>& sqrt_delta);
// R_{k+1}[t][i] = (-1)^k Bc^{i,t}_{k,0}
RSeries R_from_curve(const LocalCurveData& data);

}  // namespace toprec
