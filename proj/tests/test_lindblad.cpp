#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "majorreach/lindblad.hpp"
#include "majorreach/random.hpp"

using namespace majorreach;

namespace {

Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

Matrix diagc(std::initializer_list<Complex> d) {
    Matrix m = Matrix::Zero(static_cast<long>(d.size()), static_cast<long>(d.size()));
    long j = 0;
    for (Complex v : d) m(j, j) = v, ++j;
    return m;
}

Matrix random_normal(int n, Rng& rng, int distinct = 0) {
    const Matrix u = haar_unitary(n, rng);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector vals(n);
    if (distinct <= 0 || distinct > n) distinct = n;
    std::vector<Complex> pool;
    for (int j = 0; j < distinct; ++j) pool.emplace_back(gauss(rng), gauss(rng));
    for (int j = 0; j < n; ++j) vals(j) = pool[j % distinct];
    return u * vals.asDiagonal() * u.adjoint();
}

Vector vec(const Matrix& x) { return Eigen::Map<const Vector>(x.data(), x.size()); }

ControlSystem two_level(const Matrix& h0, const Matrix& v) {
    return make_control_system(h0, {sigma_x()}, make_noise(v));
}

}  // namespace

TEST_CASE("make_noise pinned mu table") {
    const NoiseOperator noise = make_noise(diagc({Complex(1.0, 0.0), Complex(0.0, 1.0)}));
    // Sorted by modulus with ties broken by (Re, Im) descending: v = (1, i).
    CHECK(noise.eigvals(0) == Complex(1.0, 0.0));
    CHECK(noise.eigvals(1) == Complex(0.0, 1.0));
    CHECK(std::abs(noise.mu(0, 1) - Complex(1.0, 1.0)) <= 1e-12);
    CHECK(std::abs(noise.mu(1, 0) - Complex(1.0, -1.0)) <= 1e-12);
    CHECK(std::abs(noise.mu(0, 0)) == 0.0);

    // Degenerate eigenvalues: the generator vanishes entirely.
    const NoiseOperator flat = make_noise(diagc({Complex(0.3, 0.2), Complex(0.3, 0.2)}));
    CHECK(flat.mu.cwiseAbs().maxCoeff() <= 1e-12);

    Matrix lower = Matrix::Zero(2, 2);
    lower(0, 1) = 1.0;
    CHECK_THROWS_AS(make_noise(lower), NotNormal);
    CHECK_THROWS_AS(make_noise(Matrix::Zero(2, 2)), ZeroNoise);
}

TEST_CASE("make_noise invariants on random normal draws") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const NoiseOperator noise = make_noise(random_normal(n, rng, 1 + trial % n));
        CHECK(operator_norm(noise.eigvecs.adjoint() * noise.eigvecs - identity(n)) <= 1e-10);
        for (int j = 0; j < n; ++j) {
            CHECK((noise.V * noise.eigvecs.col(j) - noise.eigvals(j) * noise.eigvecs.col(j))
                      .norm() <= 1e-9 * std::max(1.0, operator_norm(noise.V)));
            CHECK(std::abs(noise.mu(j, j)) == 0.0);
            for (int k = 0; k < n; ++k) CHECK(noise.mu(j, k).real() >= 0.0);
        }
    }
}

TEST_CASE("apply_noise pinned example and semigroup properties") {
    const NoiseOperator noise = make_noise(diagc({Complex(0.0, 0.0), Complex(std::sqrt(2.0), 0.0)}));
    Matrix x = Matrix::Constant(2, 2, 0.5);
    CHECK((apply_noise(x, noise, 0.0) - x).cwiseAbs().maxCoeff() <= 1e-14);

    const Matrix damped = apply_noise(x, noise, 1.0);
    CHECK(damped(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(damped(1, 1).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(damped(0, 1)) == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-12));
    CHECK(std::abs(damped(1, 0)) == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-12));

    // Diagonal (in the eigenbasis) input sits in the kernel.
    Rng rng(7);
    const NoiseOperator generic = make_noise(random_normal(3, rng));
    const Matrix fixed = generic.eigvecs *
                         diagc({0.2, 0.5, 0.3}) * generic.eigvecs.adjoint();
    CHECK((apply_noise(fixed, generic, 3.7) - fixed).cwiseAbs().maxCoeff() <= 1e-12);

    // Semigroup law and off-diagonal monotonicity.
    const Matrix state = random_density(3, 3, rng);
    const Matrix one_shot = apply_noise(state, generic, 0.9);
    const Matrix two_shot = apply_noise(apply_noise(state, generic, 0.4), generic, 0.5);
    CHECK((one_shot - two_shot).cwiseAbs().maxCoeff() <= 1e-10);

    const Matrix in_frame = generic.eigvecs.adjoint() * state * generic.eigvecs;
    const Matrix out_frame = generic.eigvecs.adjoint() * one_shot * generic.eigvecs;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) CHECK(std::abs(out_frame(j, k)) <= std::abs(in_frame(j, k)) + 1e-12);
}

TEST_CASE("gksl_superop pinned commutator example") {
    const ControlSystem system = two_level(sigma_z(), diagc({1.0, -1.0}));
    RealVector u = RealVector::Zero(1);
    const Superoperator l = gksl_superop(system, u, 0);

    const Matrix rho = 0.5 * sigma_x() + 0.5 * identity(2);
    const Matrix out = l.apply(rho);
    CHECK((out - sigma_y()).cwiseAbs().maxCoeff() <= 1e-12);

    // Anything commuting with H0 is fixed under the pure commutator action.
    const Matrix out2 = l.apply(identity(2) / 2.0 + 0.25 * sigma_z());
    CHECK(out2.cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("gksl_superop annihilates the identity for normal V") {
    Rng rng(11);
    for (int gamma : {0, 1}) {
        const ControlSystem system = two_level(random_hermitian(2, rng), random_normal(2, rng));
        RealVector u(1);
        u << 0.7;
        const Superoperator l = gksl_superop(system, u, gamma);
        CHECK(l.apply(identity(2)).cwiseAbs().maxCoeff() <= 1e-12);
        // Hermiticity preservation.
        const Matrix h = random_hermitian(2, rng);
        const Matrix lh = l.apply(h);
        CHECK(operator_norm(lh - lh.adjoint()) <= 1e-12);
        // Trace annihilation in adjoint action: tr(L(X)) = 0.
        CHECK(std::abs(lh.trace()) <= 1e-12);
    }
}

TEST_CASE("noise superoperator has eigenvalue -mu(j,k) on matrix units") {
    Rng rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 2 + trial;
        const NoiseOperator noise = make_noise(random_normal(n, rng, std::max(2, n - 1)));
        const Superoperator l = noise_superop(noise);
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const Matrix unit = noise.eigvecs.col(j) * noise.eigvecs.col(k).adjoint();
                const Vector lhs = l.matrix * vec(unit);
                const Vector rhs = -noise.mu(j, k) * vec(unit);
                CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-9);
            }
        }
    }
}

TEST_CASE("propagate against closed-form oracles") {
    Rng rng(17);
    const Matrix h0 = random_hermitian(3, rng);
    const ControlSystem system =
        make_control_system(h0, {random_hermitian(3, rng)}, make_noise(random_normal(3, rng)));
    const DensityMatrix rho(random_density(3, 3, rng), 1e-8, 1e-8);
    RealVector u(1);
    u << 0.3;

    // t = 0 is the identity channel.
    const DensityMatrix frozen = propagate(rho, system, u, 1, 0.0);
    CHECK((frozen.matrix() - rho.matrix()).cwiseAbs().maxCoeff() <= 1e-12);

    // gamma = 0: unitary channel generated by H = H0 + u H1.
    const Matrix h = h0 + 0.3 * system.controls[0];
    const double t = 0.8;
    const Matrix u_t = (Complex(0.0, -1.0) * t * h).exp();
    const Matrix expected = u_t * rho.matrix() * u_t.adjoint();
    const DensityMatrix coherent = propagate(rho, system, u, 0, t);
    CHECK(trace_norm(coherent.matrix() - expected) <= 1e-9);

    // gamma = 1, u = 0, H0 = 0: matches the entrywise noise propagator.
    const ControlSystem pure_noise =
        make_control_system(Matrix::Zero(3, 3), {}, make_noise(system.noise.V));
    const DensityMatrix noisy = propagate(rho, pure_noise, RealVector(0), 1, t);
    CHECK(trace_norm(noisy.matrix() - apply_noise(rho.matrix(), system.noise, t)) <= 1e-9);
}

TEST_CASE("propagate preserves trace, positivity, contraction, majorization") {
    Rng rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const ControlSystem system = make_control_system(
            random_hermitian(n, rng), {random_hermitian(n, rng)}, make_noise(random_normal(n, rng)));
        const DensityMatrix rho(random_density(n, n, rng), 1e-8, 1e-8);
        RealVector u(1);
        u << std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
        const int gamma = static_cast<int>(rng() % 2);
        const double t = std::uniform_real_distribution<double>(0.0, 2.0)(rng);

        const DensityMatrix out = propagate(rho, system, u, gamma, t);
        CHECK(std::abs(out.matrix().trace().real() - 1.0) <= 1e-9);
        CHECK(hermitian_eig(out.matrix()).values.minCoeff() >= -1e-8);
        CHECK(state_majorizes(out, rho, 1e-8));

        // Trace-norm contraction on random trace-class arguments.
        const Matrix a = ginibre(n, n, rng);
        const Superoperator l = gksl_superop(system, u, gamma);
        const Matrix prop = (t * l.matrix).exp();
        const Matrix phi_a =
            Eigen::Map<const Matrix>(Vector(prop * vec(a)).data(), n, n);
        CHECK(trace_norm(phi_a) <= trace_norm(a) + 1e-9);
    }
}

TEST_CASE("trotter_noise commuting case is exact and generic case converges") {
    Rng rng(23);
    // Commuting: both diagonal.
    const ControlSystem commuting =
        make_control_system(diagc({0.7, -0.2}), {}, make_noise(diagc({1.0, -1.0})));
    const DensityMatrix rho(random_density(2, 2, rng), 1e-8, 1e-8);
    const TrotterResult exact = trotter_noise(rho, commuting, 1.3, 1);
    CHECK(exact.deviation <= 1e-9);
    CHECK(trotter_noise(rho, commuting, 0.0, 4).deviation <= 1e-12);

    // Generic: deviation roughly halves when slices double.
    const ControlSystem generic = make_control_system(
        random_hermitian(3, rng), {}, make_noise(random_normal(3, rng)));
    const DensityMatrix rho3(random_density(3, 3, rng), 1e-8, 1e-8);
    double sum_log_ratio = 0.0;
    int count = 0;
    double prev = -1.0;
    for (int slices : {8, 16, 32, 64, 128, 256, 512}) {
        const TrotterResult res = trotter_noise(rho3, generic, 1.0, slices);
        if (prev > 0.0 && res.deviation > 0.0) {
            sum_log_ratio += std::log2(prev / res.deviation);
            ++count;
        }
        prev = res.deviation;
    }
    const double slope = -sum_log_ratio / count;  // log2 deviation per doubling
    CHECK(slope >= -1.3);
    CHECK(slope <= -0.7);
}

TEST_CASE("verify_unitality") {
    Rng rng(29);
    const auto [ok, defect] = verify_unitality(random_normal(4, rng));
    CHECK(ok);
    CHECK(defect <= 1e-10);

    Matrix lower = Matrix::Zero(2, 2);
    lower(0, 1) = 1.0;
    const auto [bad, raising_defect] = verify_unitality(lower);
    CHECK_FALSE(bad);
    CHECK(raising_defect == doctest::Approx(2.0).epsilon(1e-12));

    const auto [zero_ok, zero_defect] = verify_unitality(Matrix::Zero(3, 3));
    CHECK(zero_ok);
    CHECK(zero_defect == 0.0);
}
