#pragma once

#include "toprec/curve.hpp"
#include "toprec/dictionary.hpp"
#include "toprec/forms.hpp"

#include <string>
#include <vector>

namespace toprec {

// Frobenius data of CP^1 at the origin, branches 0-based.
struct CP1Data {
    Matrix psi;                          // psi[row][col]
    Matrix eta;                          // eta_{ab} = delta_{a+b,3} in 1-based flat indices
    std::vector<FieldElement> u;         // canonical coordinates (2, -2)
    std::vector<FieldElement> delta;     // (2, -2)
    std::vector<FieldElement> sqrt_delta;  // (sqrt2, i sqrt2) inverses of the fixed Delta^{-1/2}
    std::vector<FieldElement> unit;      // first row of psi
};
const CP1Data& cp1_data();

RSeries cp1_R(int order);

// S(z^{-1}) = sum_k S_k z^{-k}
struct SSeries {
    std::vector<Matrix> S;
    int order() const { return static_cast<int>(S.size()) - 1; }
};
SSeries cp1_S(int order);

// local coordinate expansions of the global coordinate Z: x = Z + 1/Z
Series1 ns_Z(int branch, int order);

// x = Z + 1/Z, y = log Z, B = dZ dZ'/(Z - Z')^2 localized at Z = 1 and Z = -1.
// Times known to z^{2 order + 1}, jumps to total degree 2 order.
LocalCurveData ns_curve(int order);

struct CheckReport {
    bool ok = true;
    int checked = 0;
    std::vector<std::string> residuals;
};
// f_0 read off ns_curve against sum_k R_k 2^k (-w)^k
CheckReport ns_f_matrix_check(int order);

// U indices are 0-based. Closed form: j = 0 gives 1/((k+1) k!^2) for a-c = 2k+1, j = 1 gives 1/k!^2 for a-c = 2k
Rational u_residue_coeff(int j, int a, int c);
// -Res_{x=inf} x^{a+1}/(a+1)! U^j_c on the global curve; equals -u_residue_coeff
FieldElement u_residue_by_residue(int j, int a, int c);
// -Res_{x=inf} x^{a+1}/(a+1)! dxi^i_d, and the same for the W^s_c of dxi_to_W with R = R_from_curve(ns_curve)
FieldElement xi_residue(int i, int d, int a);
FieldElement w_residue(int s, int c, int a);

struct StationaryResult {
    Rational value;
    int degree = 0;
    DxiExpansion u_basis;  // omega_{g,n} in the U basis, legs read as U^{branch}_{d}
};
// <prod tau_{a_j}(omega)>_g. ns_sign applies the (-1)^n convention flip.
StationaryResult ns_stationary(int g, const std::vector<int>& a, bool ns_sign = true);

// Independent partition-sum formula with completed cycles.
Rational op_oracle(int g, const std::vector<int>& a);
Rational hook_dimension(const std::vector<int>& lambda);
Rational completed_power_sum(int k, const std::vector<int>& lambda);

}  // namespace toprec
