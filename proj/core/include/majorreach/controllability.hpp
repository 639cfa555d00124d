// controllability.hpp — finite-truncation controllability certificates: the
// Lie-algebra rank condition and the transition (connectivity) graph test.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "majorreach/linalg.hpp"

namespace majorreach {

struct LieClosureReport {
    int dimension = 0;
    int target_dimension = 0;  // n^2 - 1 (su) if all generators traceless, else n^2 (u)
    std::vector<double> basis_residuals;
    int iterations = 0;
    bool controllable = false;
};

struct TransitionGraph {
    int nodes = 0;  // eigenvector indices of H0
    std::vector<std::pair<int, int>> edges;
    bool connected = false;
    std::vector<std::string> warnings;  // near-degenerate drift gaps, etc.
};

/// Real dimension of the Lie algebra generated by the anti-Hermitian inputs
/// under repeated commutators, via incremental Gram-Schmidt against the
/// Hilbert-Schmidt inner product. Components below tol (relative to the
/// largest HS norm seen) are truncated.
LieClosureReport lie_closure_dim(const std::vector<Matrix>& generators, double tol = 1e-8,
                                 int max_elements = 0);

/// Graph over the eigenvectors of H0 with an edge (k, l) whenever some control
/// couples levels k and l above `threshold`.
TransitionGraph connectivity_graph(const Matrix& h0, const std::vector<Matrix>& controls,
                                   double threshold);

}  // namespace majorreach
