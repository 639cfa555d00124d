// lindblad.hpp — GKSL generator with a single bang-bang switchable normal noise
// term: entrywise noise eigenstructure, closed-form noise propagation, dense
// superoperator propagation, and Trotter realization of pure noise.
#pragma once

#include <vector>

#include "majorreach/linalg.hpp"
#include "majorreach/majorization.hpp"

namespace majorreach {

/// Normal noise operator V with cached orthonormal eigenbasis f (columns of
/// `eigvecs`), eigenvalues v sorted by decreasing modulus, and the entrywise
/// generator eigenvalue table mu(j,k) = |v_j - v_k|^2 / 2 - i Im(v_j conj(v_k)).
/// The matrix unit f_j f_k† is an eigenvector of the noise generator with
/// eigenvalue mu(j,k); the diagonal units span (part of) its kernel.
struct NoiseOperator {
    Matrix V;
    Matrix eigvecs;
    Vector eigvals;
    Matrix mu;

    int dim() const { return static_cast<int>(V.rows()); }
};

/// Drift + bounded controls + one switchable noise term; gamma takes values
/// in {0, 1} with the noise strength normalized to 1.
struct ControlSystem {
    Matrix H0;
    std::vector<Matrix> controls;
    NoiseOperator noise;

    int dim() const { return static_cast<int>(H0.rows()); }
};

/// Validates Hermiticity and dimensions.
ControlSystem make_control_system(Matrix h0, std::vector<Matrix> controls, NoiseOperator noise);

/// n^2 x n^2 matrix acting on column-stacked density matrices,
/// vec(A X B) = (B^T ⊗ A) vec(X).
struct Superoperator {
    int dim = 0;
    Matrix matrix;

    Matrix apply(const Matrix& x) const;
};

/// Builds the NoiseOperator for a nonzero normal V.
NoiseOperator make_noise(const Matrix& v);

/// Exact noise semigroup at time t: entry (j,k) in the eigenbasis of V is
/// multiplied by exp(-t mu(j,k)).
Matrix apply_noise(const Matrix& x, const NoiseOperator& noise, double t);

/// Generator of rho -> -i[H0 + sum_j u_j H_j, rho] - gamma * Gamma_V(rho).
Superoperator gksl_superop(const ControlSystem& system, const RealVector& u, int gamma);

/// Superoperator of the bare dissipator -Gamma_V (no Hamiltonian part).
Superoperator noise_superop(const NoiseOperator& noise);

/// exp(t L)(rho) through the dense superoperator exponential.
DensityMatrix propagate(const DensityMatrix& rho, const ControlSystem& system,
                        const RealVector& u, int gamma, double t);

struct TrotterResult {
    DensityMatrix state;
    double deviation;  // trace-norm distance from the closed-form noise action
};

/// First-order Trotter realization of pure noise from the physically available
/// generators: `slices` alternations of the noisy drift evolution with the
/// reversed free evolution exp(+i t H0 / slices).
TrotterResult trotter_noise(const DensityMatrix& rho, const ControlSystem& system,
                            double t, int slices);

struct UnitalityReport {
    bool is_unital = false;
    double defect = 0.0;  // || V†V - V V† ||_1
};

/// Unitality of the candidate noise generator; holds iff V is normal.
UnitalityReport verify_unitality(const Matrix& v);

}  // namespace majorreach
