// linalg.hpp — dense complex linear algebra: norms, Hermitian eigendecompositions,
// positive/negative parts, block truncation, Hausdorff distance on finite point sets.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <vector>

#include "majorreach/errors.hpp"

namespace majorreach {

using Complex    = std::complex<double>;
using Matrix     = Eigen::MatrixXcd;
using Vector     = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Finite set of points in the complex plane.
using PointSet2D = std::vector<Complex>;

// Relative tolerance for the Hermiticity / unitarity / normality gates.
inline constexpr double kStructureTol = 1e-10;

/// Eigendecomposition of a Hermitian matrix. `values` are sorted
/// non-increasing (ties keep the solver's order, so runs are reproducible);
/// column j of `vectors` pairs with values[j].
struct HermitianEig {
    RealVector values;
    Matrix vectors;
};

/// Sum of singular values, tr sqrt(M†M).
double trace_norm(const Matrix& m);

/// Largest singular value.
double operator_norm(const Matrix& m);

bool is_hermitian(const Matrix& m, double tol = kStructureTol);
bool is_normal(const Matrix& m, double tol = kStructureTol);
bool is_unitary(const Matrix& m, double tol = kStructureTol);

/// Throws NotHermitian unless ||M - M†||_op <= tol * max(1, ||M||_op).
/// All n eigenvalues are emitted, zeros included.
HermitianEig hermitian_eig(const Matrix& m);

/// Jordan decomposition M = M+ - M- with M+, M- PSD and M+ M- = 0.
std::pair<Matrix, Matrix> positive_parts(const Matrix& m);

/// Pi_k C Pi_k where Pi_k projects onto the first k columns of `basis`.
Matrix block_truncate(const Matrix& c, int k, const Matrix& basis);

/// Hausdorff metric between two non-empty finite point sets in C.
double hausdorff_distance(const PointSet2D& a, const PointSet2D& b);

/// Orthonormal eigenbasis of a normal matrix (via Schur form), eigenvalues
/// sorted by decreasing modulus (ties: Re, then Im, descending).
struct NormalEig {
    Vector values;
    Matrix vectors;
};
NormalEig normal_eig(const Matrix& m);

inline Matrix identity(int n) { return Matrix::Identity(n, n); }

}  // namespace majorreach
