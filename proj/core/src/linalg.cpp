#include "majorreach/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace majorreach {

namespace {

void require_square(const Matrix& m, const char* who) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw DimensionMismatch(std::string(who) + ": matrix must be square and non-empty");
    }
}

}  // namespace

double trace_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().sum();
}

double operator_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const double defect = operator_norm(m - m.adjoint());
    return defect <= tol * std::max(1.0, operator_norm(m));
}

bool is_normal(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const double scale = operator_norm(m);
    const double defect = operator_norm(m * m.adjoint() - m.adjoint() * m);
    return defect <= tol * std::max(1.0, scale * scale);
}

bool is_unitary(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const Matrix gram = m.adjoint() * m;
    return operator_norm(gram - identity(static_cast<int>(m.rows()))) <= tol;
}

HermitianEig hermitian_eig(const Matrix& m) {
    require_square(m, "hermitian_eig");
    if (!is_hermitian(m)) {
        throw NotHermitian("hermitian_eig: input is not Hermitian within tolerance");
    }
    const int n = static_cast<int>(m.rows());

    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
    }

    // Eigen returns ascending order; re-sort non-increasing, stably.
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return solver.eigenvalues()(a) > solver.eigenvalues()(b);
    });

    HermitianEig out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (int j = 0; j < n; ++j) {
        out.values(j) = solver.eigenvalues()(idx[j]);
        out.vectors.col(j) = solver.eigenvectors().col(idx[j]);
    }
    return out;
}

std::pair<Matrix, Matrix> positive_parts(const Matrix& m) {
    const HermitianEig eig = hermitian_eig(m);
    const int n = static_cast<int>(m.rows());
    RealVector pos(n), neg(n);
    for (int j = 0; j < n; ++j) {
        pos(j) = std::max(eig.values(j), 0.0);
        neg(j) = std::max(-eig.values(j), 0.0);
    }
    const Matrix plus  = eig.vectors * pos.asDiagonal() * eig.vectors.adjoint();
    const Matrix minus = eig.vectors * neg.asDiagonal() * eig.vectors.adjoint();
    return {plus, minus};
}

Matrix block_truncate(const Matrix& c, int k, const Matrix& basis) {
    require_square(c, "block_truncate");
    const int n = static_cast<int>(c.rows());
    if (basis.rows() != n || basis.cols() != n) {
        throw DimensionMismatch("block_truncate: basis dimension mismatch");
    }
    if (k < 1 || k > n) {
        throw BadRank("block_truncate: k must satisfy 1 <= k <= n");
    }
    if (!is_unitary(basis)) {
        throw NotUnitary("block_truncate: basis is not unitary within tolerance");
    }
    const Matrix cols = basis.leftCols(k);
    const Matrix proj = cols * cols.adjoint();
    return proj * c * proj;
}

double hausdorff_distance(const PointSet2D& a, const PointSet2D& b) {
    if (a.empty() || b.empty()) {
        throw EmptySet("hausdorff_distance: both point sets must be non-empty");
    }
    auto directed = [](const PointSet2D& from, const PointSet2D& to) {
        double worst = 0.0;
        for (const Complex& z : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const Complex& w : to) best = std::min(best, std::abs(z - w));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

NormalEig normal_eig(const Matrix& m) {
    require_square(m, "normal_eig");
    if (!is_normal(m)) {
        throw NotNormal("normal_eig: input is not normal within tolerance");
    }
    const int n = static_cast<int>(m.rows());

    // For normal input, the Schur triangle is diagonal and the Schur basis is
    // an orthonormal eigenbasis.
    Eigen::ComplexSchur<Matrix> schur(m);
    if (schur.info() != Eigen::Success) {
        throw std::runtime_error("normal_eig: Schur decomposition failed");
    }
    Vector values = schur.matrixT().diagonal();
    Matrix vectors = schur.matrixU();

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        const double ma = std::abs(values(a)), mb = std::abs(values(b));
        if (ma != mb) return ma > mb;
        if (values(a).real() != values(b).real()) return values(a).real() > values(b).real();
        return values(a).imag() > values(b).imag();
    });

    NormalEig out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (int j = 0; j < n; ++j) {
        out.values(j) = values(idx[j]);
        out.vectors.col(j) = vectors.col(idx[j]);
    }
    return out;
}

}  // namespace majorreach
