// majorization.hpp — majorization on finite nonnegative sequences and density
// matrices, the Schur–Horn unitary construction, tail padding, and a seeded
// bistochastic state generator.
#pragma once

#include <cstdint>

#include "majorreach/linalg.hpp"

namespace majorreach {

/// Finite stand-in for a summable sequence of nonnegative reals. The logical
/// length may exceed the nonzero count; `sorted` marks non-increasing order.
struct EigenvalueSequence {
    RealVector entries;
    bool sorted = false;

    EigenvalueSequence() = default;
    explicit EigenvalueSequence(RealVector e, bool s = false)
        : entries(std::move(e)), sorted(s) {}
    EigenvalueSequence(std::initializer_list<double> e, bool s = false)
        : entries(Eigen::Map<const RealVector>(e.begin(), static_cast<long>(e.size()))),
          sorted(s) {}

    int size() const { return static_cast<int>(entries.size()); }
    double sum() const { return entries.sum(); }
};

/// Positive semidefinite, trace-one Hermitian matrix. Validation happens at
/// construction; `psd_floor`/`trace_tol` loosen the gates for states coming
/// out of numerical propagation.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix m, double psd_floor = 1e-10, double trace_tol = 1e-10);

    const Matrix& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

    /// Eigenvalues sorted non-increasing.
    EigenvalueSequence spectrum() const;

private:
    Matrix m_;
};

/// Result of the tail-padding construction: x_hat ≺ y_hat with equal sums,
/// where y_hat keeps the leading N entries of y and x_hat fills the gap
/// phi = sum(y_hat) - sum_{j<=k} x_j with `fill_count` copies of `fill_value`.
struct PaddedPair {
    EigenvalueSequence x_hat;
    EigenvalueSequence y_hat;
    double scale = 0.0;       // sum of the leading N entries of y
    double fill_value = 0.0;  // phi / fill_count (0 when fill_count == 0)
    int fill_count = 0;
    int k = 0;                // 1-based index of the smallest nonzero kept entry of x
};

/// Same multiset of entries, sorted non-increasing.
EigenvalueSequence decreasing_rearrangement(const EigenvalueSequence& x);

/// x ≺ y: all partial sums of the decreasing rearrangements dominated by y's
/// (zero-padded to common length) and totals equal, everything up to `tol`.
bool majorizes(const EigenvalueSequence& x, const EigenvalueSequence& y, double tol = 1e-9);

/// rho ≺ omega on spectra.
bool state_majorizes(const DensityMatrix& rho, const DensityMatrix& omega, double tol = 1e-9);

/// Unitary U with diag(U diag(y) U†) == x, built from a chain of at most n-1
/// two-level rotations plus one permutation. Requires x ≺ y, equal lengths,
/// both sorted non-increasing.
Matrix schur_horn_unitary(const EigenvalueSequence& x, const EigenvalueSequence& y);

/// sum_j c_j x_j^downarrow for non-increasing nonnegative weights c.
double submajorization_functional(const EigenvalueSequence& c, const EigenvalueSequence& x);

/// Tail-padding of x ≺ y at block size N; see PaddedPair.
PaddedPair pad_and_match(const EigenvalueSequence& x, const EigenvalueSequence& y, int N);

/// Applies `steps` random two-term mixtures of unitary conjugations to omega.
/// The result is majorized by omega by construction; deterministic per seed.
DensityMatrix random_majorized_state(const DensityMatrix& omega, int steps, std::uint64_t seed);

}  // namespace majorreach
