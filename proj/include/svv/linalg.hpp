#pragma once

#include "svv/types.hpp"

namespace svv {

struct EighResult {
    RVec eigenvalues;   // ascending
    CMat eigenvectors;  // unitary, columns match eigenvalues
};

// Hermitian eigendecomposition, h = V diag(lambda) V^dag.
EighResult eigh(const HermMat& h);

// Singular values of a (possibly rectangular) matrix, descending.
RVec singular_values(const CMat& m);

// V diag(max(lambda, floor)^exponent) V^dag for PSD h. Negative eigenvalues
// within -1e-10*scale are clamped to zero first. floor guards negative
// exponents near a singular input; floor == 0 with a zero eigenvalue and
// exponent < 0 raises NumericError.
HermMat herm_power(const HermMat& h, double exponent, double floor = 0.0);

// Default relative eigenvalue floor used before negative fractional powers.
inline constexpr double kEigFloorRel = 1e-12;

CMat kron(const CMat& a, const CMat& b);

CMat partial_trace(const BipartiteOp& op, Factor over);

// Exchange the two factors: (a,b) ordering -> (b,a) ordering.
BipartiteOp swap_factors(const BipartiteOp& op);

// Reorder an operator on factors of sizes dims (row-major composite index,
// first-factor-major) so that factor perm[k] of the input becomes factor k of
// the output.
CMat permute_systems(const CMat& m, const std::vector<Eigen::Index>& dims,
                     const std::vector<int>& perm);

// Trace the listed factors out of a multi-factor operator.
CMat partial_trace_multi(const CMat& m, const std::vector<Eigen::Index>& dims,
                         const std::vector<int>& traced);

// (1/2) ||rho - sigma||_1.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// tr(rho log rho) with the 0 log 0 = 0 convention; natural log.
double von_neumann_entropy(const HermMat& rho);

CMat identity(Eigen::Index d);

}  // namespace svv
