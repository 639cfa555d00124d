#include "majorreach/controllability.hpp"

#include <cmath>
#include <deque>

namespace majorreach {

namespace {

double hs_norm(const Matrix& m) { return m.norm(); }

Complex hs_inner(const Matrix& a, const Matrix& b) {
    return (a.adjoint() * b).trace();
}

bool is_anti_hermitian(const Matrix& m, double tol = kStructureTol) {
    return operator_norm(m + m.adjoint()) <= tol * std::max(1.0, operator_norm(m));
}

}  // namespace

LieClosureReport lie_closure_dim(const std::vector<Matrix>& generators, double tol,
                                 int max_elements) {
    if (generators.empty()) {
        throw std::invalid_argument("lie_closure_dim: at least one generator required");
    }
    const int n = static_cast<int>(generators.front().rows());
    if (max_elements == 0) max_elements = 4 * n * n + 16;
    if (max_elements < n * n) {
        throw std::invalid_argument("lie_closure_dim: max_elements must be >= n^2");
    }

    bool all_traceless = true;
    for (const Matrix& g : generators) {
        if (g.rows() != n || g.cols() != n) {
            throw DimensionMismatch("lie_closure_dim: generator dimension mismatch");
        }
        if (!is_anti_hermitian(g)) {
            throw NotAntiHermitian("lie_closure_dim: generator is not anti-Hermitian");
        }
        if (std::abs(g.trace()) > kStructureTol * std::max(1.0, hs_norm(g))) {
            all_traceless = false;
        }
    }
    const int target = all_traceless ? n * n - 1 : n * n;

    LieClosureReport report;
    report.target_dimension = target;

    // Orthonormal basis of the closure so far, over the reals. The algebra of
    // anti-Hermitian matrices is a real vector space, so candidates are split
    // into projections with real coefficients only: for anti-Hermitian A, B
    // the HS inner product tr(A†B) is real.
    std::vector<Matrix> basis;
    double scale = 0.0;

    auto try_add = [&](const Matrix& cand) -> bool {
        scale = std::max(scale, hs_norm(cand));
        Matrix residual = cand;
        for (const Matrix& b : basis) residual -= hs_inner(b, residual).real() * b;
        // One re-orthogonalization pass keeps deep commutator towers honest.
        for (const Matrix& b : basis) residual -= hs_inner(b, residual).real() * b;
        const double rnorm = hs_norm(residual);
        if (rnorm <= tol * std::max(scale, 1e-300)) return false;
        if (static_cast<int>(basis.size()) >= max_elements) {
            throw BudgetExceeded("lie_closure_dim: basis still growing at max_elements");
        }
        basis.push_back(residual / rnorm);
        report.basis_residuals.push_back(rnorm);
        return true;
    };

    for (const Matrix& g : generators) try_add(g);

    // Breadth-first commutator generation: only pairs involving fresh basis
    // elements are queued, and we stop as soon as the target is reached.
    std::size_t processed = 0;  // basis[0..processed) x basis[0..processed) done
    while (processed < basis.size() && static_cast<int>(basis.size()) < target) {
        const std::size_t fresh_begin = processed;
        const std::size_t fresh_end = basis.size();
        ++report.iterations;
        for (std::size_t i = 0; i < fresh_end && static_cast<int>(basis.size()) < target; ++i) {
            const std::size_t j_start = std::max(i + 1, fresh_begin);
            for (std::size_t j = j_start; j < fresh_end; ++j) {
                const Matrix comm = basis[i] * basis[j] - basis[j] * basis[i];
                try_add(comm);
                if (static_cast<int>(basis.size()) >= target) break;
            }
        }
        processed = fresh_end;
    }

    report.dimension = static_cast<int>(basis.size());
    report.controllable = (report.dimension == target);
    return report;
}

TransitionGraph connectivity_graph(const Matrix& h0, const std::vector<Matrix>& controls,
                                   double threshold) {
    const HermitianEig eig = hermitian_eig(h0);
    const int n = static_cast<int>(h0.rows());

    TransitionGraph graph;
    graph.nodes = n;

    const double gap_tol = 1e-8 * std::max(1.0, std::abs(eig.values(0)));
    for (int j = 0; j + 1 < n; ++j) {
        if (std::abs(eig.values(j) - eig.values(j + 1)) <= gap_tol) {
            graph.warnings.push_back("near-degenerate drift levels " + std::to_string(j) +
                                     " and " + std::to_string(j + 1));
        }
    }

    std::vector<std::vector<int>> adjacency(n);
    for (int k = 0; k < n; ++k) {
        for (int l = k + 1; l < n; ++l) {
            bool coupled = false;
            for (const Matrix& h : controls) {
                const Complex amp = eig.vectors.col(k).adjoint() * h * eig.vectors.col(l);
                if (std::abs(amp) > threshold) {
                    coupled = true;
                    break;
                }
            }
            if (coupled) {
                graph.edges.emplace_back(k, l);
                adjacency[k].push_back(l);
                adjacency[l].push_back(k);
            }
        }
    }

    std::vector<bool> seen(n, false);
    std::deque<int> queue{0};
    seen[0] = true;
    int reached = 1;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int w : adjacency[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                queue.push_back(w);
            }
        }
    }
    graph.connected = (reached == n);
    return graph;
}

}  // namespace majorreach
