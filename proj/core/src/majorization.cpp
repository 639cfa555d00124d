#include "majorreach/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "majorreach/random.hpp"

namespace majorreach {

namespace {

RealVector sorted_desc(const RealVector& v) {
    RealVector out = v;
    std::sort(out.data(), out.data() + out.size(), std::greater<double>());
    return out;
}

bool is_nonincreasing(const RealVector& v) {
    for (int j = 0; j + 1 < v.size(); ++j)
        if (v(j) < v(j + 1)) return false;
    return true;
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix m, double psd_floor, double trace_tol) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1) {
        throw DimensionMismatch("DensityMatrix: matrix must be square and non-empty");
    }
    if (!is_hermitian(m_)) {
        throw NotHermitian("DensityMatrix: matrix is not Hermitian within tolerance");
    }
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > trace_tol) {
        throw InvalidState("DensityMatrix: trace deviates from 1 by " + std::to_string(tr - 1.0));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -psd_floor) {
        throw InvalidState("DensityMatrix: eigenvalue " +
                           std::to_string(solver.eigenvalues().minCoeff()) +
                           " below the PSD floor");
    }
}

EigenvalueSequence DensityMatrix::spectrum() const {
    return EigenvalueSequence(hermitian_eig(m_).values, true);
}

EigenvalueSequence decreasing_rearrangement(const EigenvalueSequence& x) {
    return EigenvalueSequence(sorted_desc(x.entries), true);
}

bool majorizes(const EigenvalueSequence& x, const EigenvalueSequence& y, double tol) {
    if (tol < 0.0) throw std::invalid_argument("majorizes: tol must be nonnegative");
    const int n = std::max(x.size(), y.size());
    RealVector xs = RealVector::Zero(n), ys = RealVector::Zero(n);
    xs.head(x.size()) = sorted_desc(x.entries);
    ys.head(y.size()) = sorted_desc(y.entries);

    double px = 0.0, py = 0.0;
    for (int k = 0; k < n; ++k) {
        px += xs(k);
        py += ys(k);
        if (px > py + tol) return false;
    }
    return std::abs(px - py) <= tol;
}

bool state_majorizes(const DensityMatrix& rho, const DensityMatrix& omega, double tol) {
    return majorizes(rho.spectrum(), omega.spectrum(), tol);
}

Matrix schur_horn_unitary(const EigenvalueSequence& x, const EigenvalueSequence& y) {
    const int n = x.size();
    if (y.size() != n) throw LengthMismatch("schur_horn_unitary: sequences differ in length");
    if (!is_nonincreasing(x.entries) || !is_nonincreasing(y.entries)) {
        throw std::invalid_argument("schur_horn_unitary: sequences must be sorted non-increasing");
    }
    if (!majorizes(x, y, 1e-9)) {
        throw NotMajorized("schur_horn_unitary: x is not majorized by y");
    }

    // Working multiset of diagonal values, kept sorted non-increasing, each
    // tagged with the matrix position it currently occupies.
    struct Slot {
        double value;
        int pos;
    };
    std::vector<Slot> work(n);
    for (int j = 0; j < n; ++j) work[j] = {y.entries(j), j};

    Matrix u = identity(n);
    std::vector<int> placed(n, -1);  // placed[i] = matrix position holding x_i
    const double scale = std::max({1.0, std::abs(y.entries(0)), std::abs(y.entries(n - 1))});

    for (int i = 0; i < n; ++i) {
        const double target = x.entries(i);
        if (static_cast<int>(work.size()) == 1) {
            placed[i] = work[0].pos;
            work.pop_back();
            break;
        }
        // Largest j with w_j >= target; the crossing pair is (j, j+1).
        int j = -1;
        for (int t = 0; t < static_cast<int>(work.size()); ++t) {
            if (work[t].value >= target) j = t;
            else break;
        }
        if (j < 0) j = 0;  // target exceeds w_0 only by round-off
        if (j == static_cast<int>(work.size()) - 1 ||
            std::abs(work[j].value - target) <= 1e-14 * scale) {
            // Take w_j directly; no rotation needed.
            placed[i] = work[j].pos;
            work.erase(work.begin() + j);
            continue;
        }

        const double a = work[j].value, b = work[j + 1].value;
        const int pa = work[j].pos, pb = work[j + 1].pos;
        double c2 = (a - b > 1e-14 * scale) ? (target - b) / (a - b) : 1.0;
        c2 = std::clamp(c2, 0.0, 1.0);
        const double c = std::sqrt(c2), s = std::sqrt(1.0 - c2);

        // Two-level rotation on (pa, pb): new diagonal entries are
        // (c^2 a + s^2 b, s^2 a + c^2 b) = (target, a + b - target).
        const Eigen::RowVectorXcd row_a = u.row(pa), row_b = u.row(pb);
        u.row(pa) = c * row_a + s * row_b;
        u.row(pb) = -s * row_a + c * row_b;

        placed[i] = pa;
        work[j + 1].value = a + b - target;
        work.erase(work.begin() + j);
    }

    // Move the finished entries into input order.
    Matrix perm = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) perm(i, placed[i]) = 1.0;
    return perm * u;
}

double submajorization_functional(const EigenvalueSequence& c, const EigenvalueSequence& x) {
    if (!is_nonincreasing(c.entries) || (c.size() > 0 && c.entries(c.size() - 1) < 0.0)) {
        throw std::invalid_argument(
            "submajorization_functional: weights must be non-increasing and nonnegative");
    }
    const RealVector xs = sorted_desc(x.entries);
    const int n = std::min(c.size(), x.size());
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += c.entries(j) * xs(j);
    return acc;
}

PaddedPair pad_and_match(const EigenvalueSequence& x, const EigenvalueSequence& y, int N) {
    if (N < 1 || N > x.size() || N > y.size()) {
        throw BadRank("pad_and_match: N out of range");
    }
    if (!majorizes(x, y, 1e-9)) {
        throw NotMajorized("pad_and_match: x is not majorized by y");
    }
    const RealVector xs = sorted_desc(x.entries);
    const RealVector ys = sorted_desc(y.entries);

    // k = largest index (1-based) of a nonzero among the leading N entries of x.
    int k = 0;
    for (int j = 0; j < N; ++j)
        if (xs(j) > 0.0) k = j + 1;
    if (k == 0) throw DegenerateBlock("pad_and_match: leading block of x is all zero");

    double phi = 0.0;
    for (int j = 0; j < N; ++j) phi += ys(j) - xs(j);
    const double scale = ys.head(N).sum();
    // Round-off in the two sums must not fabricate a fill block.
    if (phi <= 1e-12 * std::max(1.0, scale)) phi = 0.0;
    int m = 0;
    double fill = 0.0;
    if (phi > 0.0) {
        m = static_cast<int>(std::ceil(phi / xs(k - 1)));
        fill = phi / m;
    }

    PaddedPair out;
    out.scale = scale;
    out.fill_value = fill;
    out.fill_count = m;
    out.k = k;

    RealVector xh(k + m);
    xh.head(k) = xs.head(k);
    for (int j = 0; j < m; ++j) xh(k + j) = fill;
    out.x_hat = EigenvalueSequence(std::move(xh), true);
    out.y_hat = EigenvalueSequence(ys.head(N), true);

    if (!majorizes(out.x_hat, out.y_hat, 1e-9)) {
        throw NotMajorized("pad_and_match: construction violated x_hat ≺ y_hat");
    }
    return out;
}

DensityMatrix random_majorized_state(const DensityMatrix& omega, int steps, std::uint64_t seed) {
    if (steps < 0) throw std::invalid_argument("random_majorized_state: steps must be >= 0");
    const int n = omega.dim();
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    Matrix rho = omega.matrix();
    for (int s = 0; s < steps; ++s) {
        const Matrix u1 = haar_unitary(n, rng);
        const Matrix u2 = haar_unitary(n, rng);
        const double w = unif(rng);
        rho = w * (u1 * rho * u1.adjoint()) + (1.0 - w) * (u2 * rho * u2.adjoint());
        rho = 0.5 * (rho + Matrix(rho.adjoint()));
    }
    DensityMatrix out(rho, 1e-8, 1e-8);
    if (!state_majorizes(out, omega, 1e-8)) {
        throw InvalidState("random_majorized_state: bistochastic invariant violated");
    }
    return out;
}

}  // namespace majorreach
