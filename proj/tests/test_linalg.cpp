#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "majorreach/linalg.hpp"
#include "majorreach/random.hpp"

using namespace majorreach;

namespace {

Matrix diag2(double a, double b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

// SVD oracle via the spectral theorem on M†M.
double trace_norm_oracle(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m);
    double acc = 0.0;
    for (long j = 0; j < es.eigenvalues().size(); ++j) {
        acc += std::sqrt(std::max(es.eigenvalues()(j), 0.0));
    }
    return acc;
}

}  // namespace

TEST_CASE("trace_norm on pinned inputs") {
    Matrix nil = Matrix::Zero(2, 2);
    nil(0, 1) = 1.0;
    CHECK(trace_norm(nil) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(trace_norm(diag2(1.0, -1.0)) == doctest::Approx(2.0).epsilon(1e-12));

    Rng rng(11);
    const Matrix rho = random_density(4, 4, rng);
    CHECK(trace_norm(rho) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("trace_norm is a norm and matches the SVD oracle") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = ginibre(5, 5, rng);
        const Matrix b = ginibre(5, 5, rng);
        CHECK(trace_norm(a) == doctest::Approx(trace_norm_oracle(a)).epsilon(1e-9));
        CHECK(trace_norm(a + b) <= trace_norm(a) + trace_norm(b) + 1e-9);
        CHECK(trace_norm(-2.5 * a) == doctest::Approx(2.5 * trace_norm(a)).epsilon(1e-9));
        // |tr(CT)| <= ||C||_1 ||T||_op
        CHECK(std::abs((a * b).trace()) <= trace_norm(a) * operator_norm(b) + 1e-9);
    }
}

TEST_CASE("operator_norm") {
    CHECK(operator_norm(identity(5)) == doctest::Approx(1.0));
    CHECK(operator_norm(diag2(0.3, -0.7)) == doctest::Approx(0.7));
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 2.0;
    CHECK(operator_norm(m) == doctest::Approx(2.0));
}

TEST_CASE("hermitian_eig sorts non-increasing and reconstructs") {
    Matrix d = Matrix::Zero(3, 3);
    d(0, 0) = 0.2;
    d(1, 1) = 0.5;
    d(2, 2) = 0.3;
    const HermitianEig eig = hermitian_eig(d);
    CHECK(eig.values(0) == doctest::Approx(0.5));
    CHECK(eig.values(1) == doctest::Approx(0.3));
    CHECK(eig.values(2) == doctest::Approx(0.2));

    Matrix half = Matrix::Constant(2, 2, 0.5);
    const HermitianEig h = hermitian_eig(half);
    CHECK(h.values(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.values(1) == doctest::Approx(0.0).epsilon(1e-12));

    const HermitianEig z = hermitian_eig(Matrix::Zero(3, 3));
    CHECK(z.values.cwiseAbs().maxCoeff() == 0.0);
    CHECK((z.vectors - identity(3)).cwiseAbs().maxCoeff() <= 1e-12);

    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix m = random_hermitian(6, rng);
        const HermitianEig e = hermitian_eig(m);
        const Matrix rebuilt = e.vectors * e.values.asDiagonal() * e.vectors.adjoint();
        CHECK(operator_norm(m - rebuilt) <= 1e-10 * std::max(1.0, operator_norm(m)));
        CHECK(operator_norm(e.vectors.adjoint() * e.vectors - identity(6)) <= 1e-10);
        CHECK(e.values.sum() == doctest::Approx(m.trace().real()).epsilon(1e-10));
        for (int j = 0; j + 1 < 6; ++j) CHECK(e.values(j) >= e.values(j + 1));
    }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eig(m), NotHermitian);
}

TEST_CASE("positive_parts") {
    auto [p, n] = positive_parts(diag2(1.0, -1.0));
    CHECK((p - diag2(1.0, 0.0)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((n - diag2(0.0, 1.0)).cwiseAbs().maxCoeff() <= 1e-12);

    auto [p2, n2] = positive_parts(diag2(2.0, -3.0));
    CHECK((p2 - diag2(2.0, 0.0)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((n2 - diag2(0.0, 3.0)).cwiseAbs().maxCoeff() <= 1e-12);

    Rng rng(7);
    const Matrix psd = 4.0 * random_density(4, 4, rng);
    auto [pp, nn] = positive_parts(psd);
    CHECK(operator_norm(pp - psd) <= 1e-10 * operator_norm(psd));
    CHECK(operator_norm(nn) <= 1e-10);

    const Matrix h = random_hermitian(5, rng);
    auto [hp, hn] = positive_parts(h);
    CHECK(operator_norm(h - (hp - hn)) <= 1e-10);
    CHECK(operator_norm(hp * hn) <= 1e-10);
    CHECK(hermitian_eig(hp).values.minCoeff() >= -1e-12);
    CHECK(hermitian_eig(hn).values.minCoeff() >= -1e-12);
}

TEST_CASE("block_truncate") {
    Matrix e11 = Matrix::Zero(2, 2);
    e11(0, 0) = 1.0;
    CHECK(trace_norm(e11 - block_truncate(e11, 1, identity(2))) <= 1e-12);

    const Matrix third = identity(3) / 3.0;
    const Matrix cut = block_truncate(third, 2, identity(3));
    CHECK(cut(0, 0).real() == doctest::Approx(1.0 / 3.0));
    CHECK(cut(2, 2).real() == doctest::Approx(0.0));
    CHECK(trace_norm(third - cut) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

    Rng rng(9);
    const Matrix any = ginibre(4, 4, rng);
    CHECK(trace_norm(any - block_truncate(any, 4, identity(4))) <= 1e-12);

    CHECK_THROWS_AS(block_truncate(any, 0, identity(4)), BadRank);
    CHECK_THROWS_AS(block_truncate(any, 5, identity(4)), BadRank);
    CHECK_THROWS_AS(block_truncate(any, 2, 2.0 * identity(4)), NotUnitary);
}

TEST_CASE("block_truncate tail is non-increasing for PSD diagonal input") {
    Rng rng(13);
    RealVector d(6);
    for (int j = 0; j < 6; ++j) d(j) = std::abs(ginibre(1, 1, rng)(0, 0));
    std::sort(d.data(), d.data() + 6, std::greater<double>());
    Matrix c = d.asDiagonal();
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 6; ++k) {
        const double tail = trace_norm(c - block_truncate(c, k, identity(6)));
        CHECK(tail <= prev + 1e-12);
        prev = tail;
    }
    CHECK(prev <= 1e-12);
}

TEST_CASE("hausdorff_distance") {
    CHECK(hausdorff_distance({Complex(0, 0)}, {Complex(3, 0), Complex(4, 0)}) ==
          doctest::Approx(4.0));
    const PointSet2D same = {Complex(1, 2), Complex(-1, 0.5)};
    CHECK(hausdorff_distance(same, same) == doctest::Approx(0.0));
    CHECK(hausdorff_distance({Complex(0, 0), Complex(1, 0)}, {Complex(0.5, 0)}) ==
          doctest::Approx(0.5));
    CHECK_THROWS_AS(hausdorff_distance({}, same), EmptySet);
}

TEST_CASE("hausdorff_distance metric axioms on random sets") {
    Rng rng(17);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    auto random_set = [&](int count) {
        PointSet2D s;
        for (int j = 0; j < count; ++j) s.emplace_back(unif(rng), unif(rng));
        return s;
    };
    for (int trial = 0; trial < 20; ++trial) {
        const PointSet2D a = random_set(4), b = random_set(5), c = random_set(3);
        const double ab = hausdorff_distance(a, b);
        const double ba = hausdorff_distance(b, a);
        CHECK(ab == doctest::Approx(ba));
        CHECK(hausdorff_distance(a, a) == doctest::Approx(0.0));
        CHECK(ab <= hausdorff_distance(a, c) + hausdorff_distance(c, b) + 1e-12);
    }
}

TEST_CASE("maximum is continuous under nested Hausdorff convergence") {
    // Nested finite subsets of a fixed real set: |max A_n - max A| <= dist.
    PointSet2D full;
    Rng rng(19);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int j = 0; j < 12; ++j) full.emplace_back(unif(rng), 0.0);
    double max_full = 0.0;
    for (const Complex& z : full) max_full = std::max(max_full, z.real());

    PointSet2D partial;
    for (const Complex& z : full) {
        partial.push_back(z);
        const double dist = hausdorff_distance(partial, full);
        double max_partial = partial.front().real();
        for (const Complex& w : partial) max_partial = std::max(max_partial, w.real());
        CHECK(std::abs(max_partial - max_full) <= dist + 1e-12);
    }
}

TEST_CASE("normal_eig diagonalizes normal matrices with orthonormal vectors") {
    Rng rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix u = haar_unitary(5, rng);
        Vector vals(5);
        for (int j = 0; j < 5; ++j) {
            vals(j) = Complex(ginibre(1, 1, rng)(0, 0).real(), ginibre(1, 1, rng)(0, 0).real());
        }
        const Matrix v = u * vals.asDiagonal() * u.adjoint();
        const NormalEig eig = normal_eig(v);
        CHECK(operator_norm(eig.vectors.adjoint() * eig.vectors - identity(5)) <= 1e-10);
        const Matrix rebuilt = eig.vectors * eig.values.asDiagonal() * eig.vectors.adjoint();
        CHECK(operator_norm(v - rebuilt) <= 1e-9 * std::max(1.0, operator_norm(v)));
        for (int j = 0; j + 1 < 5; ++j) {
            CHECK(std::abs(eig.values(j)) >= std::abs(eig.values(j + 1)) - 1e-12);
        }
    }
    Matrix shift = Matrix::Zero(2, 2);
    shift(0, 1) = 1.0;
    CHECK_THROWS_AS(normal_eig(shift), NotNormal);
}
