// crange.hpp — C-spectrum, sampled C-numerical range, the trace supremum K_C,
// the Ando-type majorization characterization, and convex-hull diagnostics.
#pragma once

#include <cstdint>

#include "majorreach/linalg.hpp"
#include "majorreach/majorization.hpp"

namespace majorreach {

/// Sampled values tr(C U† T U); every point has modulus bounded by
/// trace_norm(C) * operator_norm(T).
struct CRangeSample {
    PointSet2D values;
    int sample_count = 0;
    std::uint64_t seed = 0;
};

/// Eigenvalue-pairing sums; `exhaustive` marks full enumeration of all n!
/// permutations (otherwise sampled plus the sorted/antisorted pairings).
struct CSpectrum {
    PointSet2D values;
    bool exhaustive = false;
};

struct CollinearHullReport {
    double max_distance = 0.0;   // max over sampled W_C points of dist to conv(P_C)
    double hausdorff_conv = 0.0; // Hausdorff distance between the two convex hulls
    double bound = 0.0;          // tol * ||C||_1 * ||T||_op
    bool inside = false;         // max_distance <= bound
    int samples = 0;
};

/// Pairing sums sum_j lambda_j(C) lambda_sigma(j)(T); exhaustive when
/// n! <= max_permutations, otherwise that many random permutations plus the
/// identity and the sorted/antisorted pairings.
CSpectrum c_spectrum(const Matrix& c, const Matrix& t, long max_permutations = 5040,
                     std::uint64_t seed = 0);

/// tr(C U† T U) at Haar-random unitaries plus the permutation matrices up to
/// the c_spectrum cap; deterministic per seed.
CRangeSample sample_c_numerical_range(const Matrix& c, const Matrix& t, int samples,
                                      std::uint64_t seed);

/// Closed-form trace supremum for selfadjoint C, T:
/// sum_j l_j(C+) l_j(T+) + sum_j l_j(C-) l_j(T-), sequences zero-padded.
double k_c(const Matrix& c, const Matrix& t);

/// Independent oracle for k_c (n <= 8): maximum over all eigenvalue pairings
/// of the zero-padded spectra, enumerated as partial matchings.
double k_c_bruteforce(const Matrix& c, const Matrix& t);

/// rho ≺ omega via K-values on the rank-k diagonal projections.
bool ando_majorization_test(const DensityMatrix& rho, const DensityMatrix& omega,
                            double tol = 1e-9);

/// For C with collinear eigenvalues: checks that the sampled C-numerical range
/// sits inside the convex hull of the C-spectrum, with Hausdorff diagnostics.
CollinearHullReport collinear_hull_check(const Matrix& c, const Matrix& t, int samples,
                                         double tol, std::uint64_t seed);

}  // namespace majorreach
