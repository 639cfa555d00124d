#include "majorreach/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace majorreach {

Matrix ginibre(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    return g;
}

Matrix haar_unitary(int n, Rng& rng) {
    const Matrix g = ginibre(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity so the distribution is exactly Haar.
    for (int j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        q.col(j) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Complex(1.0, 0.0);
    }
    return q;
}

Matrix haar_unitary(int n, std::uint64_t seed) {
    Rng rng(seed);
    return haar_unitary(n, rng);
}

Matrix random_density(int n, int rank, Rng& rng) {
    const Matrix g = ginibre(n, rank, rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    // Symmetrize away the last bits of round-off.
    rho = 0.5 * (rho + Matrix(rho.adjoint()));
    return rho;
}

Matrix random_hermitian(int n, Rng& rng) {
    const Matrix g = ginibre(n, n, rng);
    Matrix h = 0.5 * (g + Matrix(g.adjoint()));
    const double norm = operator_norm(h);
    if (norm > 0.0) h /= norm;
    return h;
}

std::vector<int> random_permutation(int n, Rng& rng) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace majorreach
