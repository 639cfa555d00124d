#include "majorreach/lindblad.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace majorreach {

namespace {

Vector vec(const Matrix& x) {
    return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix unvec(const Vector& v, int n) {
    return Eigen::Map<const Matrix>(v.data(), n, n);
}

}  // namespace

Matrix Superoperator::apply(const Matrix& x) const {
    if (x.rows() != dim || x.cols() != dim) {
        throw DimensionMismatch("Superoperator::apply: dimension mismatch");
    }
    return unvec(matrix * vec(x), dim);
}

ControlSystem make_control_system(Matrix h0, std::vector<Matrix> controls, NoiseOperator noise) {
    const int n = static_cast<int>(h0.rows());
    if (h0.cols() != n || n < 1) {
        throw DimensionMismatch("make_control_system: drift must be square and non-empty");
    }
    if (!is_hermitian(h0)) throw NotHermitian("make_control_system: drift is not Hermitian");
    for (const Matrix& h : controls) {
        if (h.rows() != n || h.cols() != n) {
            throw DimensionMismatch("make_control_system: control dimension mismatch");
        }
        if (!is_hermitian(h)) throw NotHermitian("make_control_system: control is not Hermitian");
    }
    if (noise.dim() != n) {
        throw DimensionMismatch("make_control_system: noise dimension mismatch");
    }
    return ControlSystem{std::move(h0), std::move(controls), std::move(noise)};
}

NoiseOperator make_noise(const Matrix& v) {
    const int n = static_cast<int>(v.rows());
    if (v.cols() != n || n < 1) {
        throw DimensionMismatch("make_noise: V must be square and non-empty");
    }
    if (operator_norm(v) == 0.0) throw ZeroNoise("make_noise: V must be nonzero");
    if (!is_normal(v)) throw NotNormal("make_noise: V is not normal within tolerance");

    NoiseOperator out;
    out.V = v;
    const NormalEig eig = normal_eig(v);
    out.eigvecs = eig.vectors;
    out.eigvals = eig.values;
    out.mu.resize(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const Complex d = eig.values(j) - eig.values(k);
            const double re = 0.5 * std::norm(d);
            const double im = -std::imag(eig.values(j) * std::conj(eig.values(k)));
            out.mu(j, k) = Complex(re, im);
        }
        out.mu(j, j) = Complex(0.0, 0.0);
    }
    return out;
}

Matrix apply_noise(const Matrix& x, const NoiseOperator& noise, double t) {
    if (t < 0.0) throw std::invalid_argument("apply_noise: t must be nonnegative");
    const int n = noise.dim();
    if (x.rows() != n || x.cols() != n) {
        throw DimensionMismatch("apply_noise: dimension mismatch");
    }
    Matrix xf = noise.eigvecs.adjoint() * x * noise.eigvecs;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) xf(j, k) *= std::exp(-t * noise.mu(j, k));
    return noise.eigvecs * xf * noise.eigvecs.adjoint();
}

Superoperator gksl_superop(const ControlSystem& system, const RealVector& u, int gamma) {
    const int n = system.dim();
    if (u.size() != static_cast<long>(system.controls.size())) {
        throw DimensionMismatch("gksl_superop: control amplitude count mismatch");
    }
    if (gamma != 0 && gamma != 1) {
        throw std::invalid_argument("gksl_superop: gamma must be 0 or 1");
    }

    Matrix h = system.H0;
    for (std::size_t j = 0; j < system.controls.size(); ++j) {
        h += u(static_cast<long>(j)) * system.controls[j];
    }

    const Matrix eye = identity(n);
    const Complex i_unit(0.0, 1.0);
    Matrix l = -i_unit * (Eigen::kroneckerProduct(eye, h) -
                          Eigen::kroneckerProduct(h.transpose(), eye))
                    .eval();
    if (gamma == 1) {
        const Matrix& v = system.noise.V;
        const Matrix vv = v.adjoint() * v;
        l -= 0.5 * (Eigen::kroneckerProduct(eye, vv) +
                    Eigen::kroneckerProduct(vv.transpose(), eye))
                 .eval();
        l += Eigen::kroneckerProduct(v.conjugate(), v).eval();
    }
    return Superoperator{n, std::move(l)};
}

Superoperator noise_superop(const NoiseOperator& noise) {
    const int n = noise.dim();
    const Matrix eye = identity(n);
    const Matrix& v = noise.V;
    const Matrix vv = v.adjoint() * v;
    Matrix l = -0.5 * (Eigen::kroneckerProduct(eye, vv) +
                       Eigen::kroneckerProduct(vv.transpose(), eye))
                    .eval();
    l += Eigen::kroneckerProduct(v.conjugate(), v).eval();
    return Superoperator{n, std::move(l)};
}

DensityMatrix propagate(const DensityMatrix& rho, const ControlSystem& system,
                        const RealVector& u, int gamma, double t) {
    if (t < 0.0) throw std::invalid_argument("propagate: t must be nonnegative");
    const Superoperator l = gksl_superop(system, u, gamma);
    const Matrix prop = (t * l.matrix).exp();
    Matrix out = unvec(prop * vec(rho.matrix()), rho.dim());
    out = 0.5 * (out + Matrix(out.adjoint()));
    return DensityMatrix(std::move(out), 1e-8, 1e-8);
}

TrotterResult trotter_noise(const DensityMatrix& rho, const ControlSystem& system,
                            double t, int slices) {
    if (t < 0.0) throw std::invalid_argument("trotter_noise: t must be nonnegative");
    if (slices < 1) throw std::invalid_argument("trotter_noise: slices must be >= 1");
    const int n = rho.dim();

    // Noisy drift evolution over one slice, exp((t/m)(-i ad_H0 - Gamma_V)).
    const RealVector zero_u = RealVector::Zero(static_cast<long>(system.controls.size()));
    const Superoperator l = gksl_superop(system, zero_u, 1);
    const Matrix slice_prop = ((t / slices) * l.matrix).exp();

    // Reversed free evolution exp(+i (t/m) H0), built from the spectral
    // decomposition so it is unitary to machine precision.
    const HermitianEig h0 = hermitian_eig(system.H0);
    Vector phases(n);
    for (int j = 0; j < n; ++j) {
        phases(j) = std::exp(Complex(0.0, (t / slices) * h0.values(j)));
    }
    const Matrix back = h0.vectors * phases.asDiagonal() * h0.vectors.adjoint();

    Matrix state = rho.matrix();
    for (int s = 0; s < slices; ++s) {
        state = unvec(slice_prop * vec(state), n);
        state = back * state * back.adjoint();
    }
    state = 0.5 * (state + Matrix(state.adjoint()));

    const Matrix exact = apply_noise(rho.matrix(), system.noise, t);
    const double deviation = trace_norm(state - exact);
    return TrotterResult{DensityMatrix(std::move(state), 1e-8, 1e-8), deviation};
}

UnitalityReport verify_unitality(const Matrix& v) {
    if (v.rows() != v.cols() || v.rows() < 1) {
        throw DimensionMismatch("verify_unitality: V must be square and non-empty");
    }
    const Matrix defect_m = v.adjoint() * v - v * v.adjoint();
    const double defect = trace_norm(defect_m);
    const double scale = trace_norm(v);
    return UnitalityReport{defect <= kStructureTol * scale * scale, defect};
}

}  // namespace majorreach
