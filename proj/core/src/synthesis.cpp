#include "majorreach/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace majorreach {

namespace {

constexpr int kTrotterSliceCap = 1 << 16;
constexpr double kIdentitySkipTol = 1e-12;

double degeneracy_threshold(const NoiseOperator& noise) {
    return 1e-9 * noise.eigvals.cwiseAbs().maxCoeff();
}

// Trace-norm tail ||A - Pi_k A Pi_k||_1 of a state given in the noise
// eigenbasis: everything outside the leading k x k block.
double block_tail(const Matrix& af, int k) {
    Matrix diff = af;
    diff.block(0, 0, k, k).setZero();
    return trace_norm(diff);
}

int least_distinct_index(const NoiseOperator& noise) {
    const int n = noise.dim();
    const double thr = degeneracy_threshold(noise);
    for (int j = 1; j < n; ++j) {
        if (std::abs(noise.eigvals(0) - noise.eigvals(j)) > thr) return j + 1;
    }
    return 0;
}

std::vector<int> transport_permutation(int n, int j, int k, int m1) {
    // sigma(j) = 0 and sigma(k) = m1 via two transpositions; identity elsewhere.
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    auto transpose_images = [&sigma](int a, int b) {
        for (int& s : sigma) {
            if (s == a) s = b;
            else if (s == b) s = a;
        }
    };
    transpose_images(0, j);
    transpose_images(m1, sigma[k]);
    return sigma;
}

std::vector<int> inverse_permutation(const std::vector<int>& sigma) {
    std::vector<int> inv(sigma.size());
    for (std::size_t j = 0; j < sigma.size(); ++j) inv[sigma[j]] = static_cast<int>(j);
    return inv;
}

Matrix permutation_matrix(const std::vector<int>& sigma) {
    const int n = static_cast<int>(sigma.size());
    Matrix p = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) p(sigma[j], j) = 1.0;
    return p;
}

bool is_valid_permutation(const std::vector<int>& sigma) {
    std::vector<int> s = sigma;
    std::sort(s.begin(), s.end());
    for (std::size_t j = 0; j < s.size(); ++j)
        if (s[j] != static_cast<int>(j)) return false;
    return true;
}

double max_offdiagonal(const Matrix& a, int block) {
    double m = 0.0;
    for (int j = 0; j < block; ++j)
        for (int k = 0; k < block; ++k)
            if (j != k) m = std::max(m, std::abs(a(j, k)));
    return m;
}

struct ExecutionTrace {
    std::vector<RealVector> spectra;     // spectrum before steps[0], after each step
    std::vector<double> step_errors;     // realization error per step
    Matrix post_step2;                   // state right after the Step-2 range
    bool has_post_step2 = false;
};

Matrix execute_in_frame(const Schedule& schedule, const DensityMatrix& rho0,
                        const ControlSystem& system, ExecutionTrace* trace) {
    const int n = schedule.dim;
    if (rho0.dim() != n || system.dim() != n) {
        throw DimensionMismatch("execute: schedule/system/state dimensions disagree");
    }
    const Matrix& f = system.noise.eigvecs;
    Matrix state = f.adjoint() * rho0.matrix() * f;

    const int relax_steps = static_cast<int>(
        std::count_if(schedule.steps.begin(), schedule.steps.end(),
                      [](const ScheduleStep& s) { return s.kind == StepKind::NoiseRelax; }));
    double allowance = schedule.provenance.trotter_allowance;
    if (allowance <= 0.0) {
        allowance = schedule.epsilon / 12.0 / std::max(relax_steps, 1);
    }

    if (trace) trace->spectra.push_back(hermitian_eig(state).values);

    for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
        const ScheduleStep& step = schedule.steps[i];
        double err = 0.0;
        switch (step.kind) {
            case StepKind::Unitary: {
                if (!is_unitary(step.unitary)) {
                    throw NotUnitary("execute: schedule carries a non-unitary step");
                }
                state = step.unitary * state * step.unitary.adjoint();
                break;
            }
            case StepKind::Permutation: {
                if (static_cast<int>(step.sigma.size()) != n || !is_valid_permutation(step.sigma)) {
                    throw std::invalid_argument("execute: step permutation is not a bijection");
                }
                const Matrix p = permutation_matrix(step.sigma);
                state = p * state * p.adjoint();
                break;
            }
            case StepKind::NoiseRelax: {
                if (step.duration < 0.0) {
                    throw std::invalid_argument("execute: negative relaxation duration");
                }
                if (step.mode == RelaxMode::Exact) {
                    for (int j = 0; j < n; ++j)
                        for (int k = 0; k < n; ++k)
                            state(j, k) *= std::exp(-step.duration * system.noise.mu(j, k));
                } else {
                    const Matrix lab = f * state * f.adjoint();
                    const DensityMatrix lab_state(0.5 * (lab + Matrix(lab.adjoint())), 1e-8, 1e-8);
                    int slices = std::max(step.slices, 1);
                    for (;;) {
                        const TrotterResult res =
                            trotter_noise(lab_state, system, step.duration, slices);
                        if (res.deviation <= allowance) {
                            state = f.adjoint() * res.state.matrix() * f;
                            err = res.deviation;
                            break;
                        }
                        if (slices >= kTrotterSliceCap) {
                            throw BudgetExceeded(
                                "execute: Trotter slices exhausted before meeting the budget");
                        }
                        slices *= 2;
                    }
                }
                break;
            }
        }
        state = 0.5 * (state + Matrix(state.adjoint()));
        if (trace) {
            trace->spectra.push_back(hermitian_eig(state).values);
            trace->step_errors.push_back(err);
            if (static_cast<int>(i) + 1 == schedule.step2_end &&
                schedule.step2_end > schedule.step2_begin) {
                trace->post_step2 = state;
                trace->has_post_step2 = true;
            }
        }
    }
    return state;
}

}  // namespace

double Schedule::budget_total() const {
    double acc = 0.0;
    for (const ScheduleStep& s : steps) acc += s.budget_share;
    return acc;
}

double relaxation_time(Complex v_a, Complex v_b, int N, double epsilon) {
    if (N < 1) throw std::invalid_argument("relaxation_time: N must be >= 1");
    if (epsilon <= 0.0) throw std::invalid_argument("relaxation_time: epsilon must be positive");
    const double gap = std::abs(v_a - v_b);
    if (gap <= 1e-9 * std::max(std::abs(v_a), std::abs(v_b)) || gap == 0.0) {
        throw DegeneratePair("relaxation_time: eigenvalue pair is degenerate");
    }
    const double ratio = 12.0 * N * N / epsilon;
    if (ratio <= 1.0) return 0.0;
    return 2.0 * std::log(ratio) / (gap * gap);
}

BlockChoice choose_block(const DensityMatrix& rho0, const NoiseOperator& noise, double epsilon) {
    if (epsilon <= 0.0) throw std::invalid_argument("choose_block: epsilon must be positive");
    if (rho0.dim() != noise.dim()) throw DimensionMismatch("choose_block: dimension mismatch");
    const int n = noise.dim();

    const int m = least_distinct_index(noise);
    if (m == 0) {
        throw NoDistinctPair("choose_block: V is a multiple of the identity, noise acts trivially");
    }

    const Matrix af = noise.eigvecs.adjoint() * rho0.matrix() * noise.eigvecs;
    int n1 = n;
    for (int k = 1; k <= n; ++k) {
        if (block_tail(af, k) < epsilon / 24.0) {
            n1 = k;
            break;
        }
    }
    return BlockChoice{std::max(n1, m), m, n1};
}

PermutationPlan permutation_plan(const NoiseOperator& noise, int N, int M, double epsilon) {
    const int n = noise.dim();
    if (N < 1 || N > n) throw BadRank("permutation_plan: N out of range");
    PermutationPlan plan;
    if (N == 1) return plan;  // no off-diagonal entries in a 1x1 block
    if (M < 2 || M > N) throw BadRank("permutation_plan: M out of range");

    const double thr = degeneracy_threshold(noise);
    if (std::abs(noise.eigvals(0) - noise.eigvals(M - 1)) <= thr) {
        throw DegeneratePair("permutation_plan: relaxation spot (1, M) is degenerate");
    }
    const double transport_time =
        relaxation_time(noise.eigvals(0), noise.eigvals(M - 1), N, epsilon);

    for (int j = 0; j < N; ++j) {
        for (int k = j + 1; k < N; ++k) {
            if (std::abs(noise.eigvals(j) - noise.eigvals(k)) <= thr) {
                PlanRound round;
                round.sigma = transport_permutation(n, j, k, M - 1);
                round.duration = transport_time;
                round.from_j = j;
                round.from_k = k;
                plan.rounds.push_back(std::move(round));
            } else {
                plan.inplace_duration =
                    std::max(plan.inplace_duration,
                             relaxation_time(noise.eigvals(j), noise.eigvals(k), N, epsilon));
            }
        }
    }
    return plan;
}

Schedule synthesize(const DensityMatrix& rho0, const DensityMatrix& rho_target,
                    const ControlSystem& system, double epsilon, RelaxMode mode) {
    if (epsilon <= 0.0) throw std::invalid_argument("synthesize: epsilon must be positive");
    const int n = system.dim();
    if (rho0.dim() != n || rho_target.dim() != n) {
        throw DimensionMismatch("synthesize: state/system dimensions disagree");
    }
    if (!state_majorizes(rho_target, rho0, 1e-9)) {
        throw NotMajorized("synthesize: target state is not majorized by the initial state");
    }

    std::vector<Matrix> generators;
    generators.push_back(Complex(0.0, 1.0) * system.H0);
    for (const Matrix& h : system.controls) generators.push_back(Complex(0.0, 1.0) * h);
    const LieClosureReport lie = lie_closure_dim(generators);
    if (!lie.controllable) {
        throw NotControllable("synthesize: Lie closure has dimension " +
                              std::to_string(lie.dimension) + " < " +
                              std::to_string(lie.target_dimension));
    }
    const UnitalityReport unital = verify_unitality(system.noise.V);
    if (!unital.is_unital) {
        throw NoiseNotUnital("synthesize: noise generator does not annihilate the identity");
    }

    // Everything below lives in the eigenbasis of V.
    const Matrix& f = system.noise.eigvecs;
    const HermitianEig init = hermitian_eig(f.adjoint() * rho0.matrix() * f);
    const HermitianEig targ = hermitian_eig(f.adjoint() * rho_target.matrix() * f);
    const RealVector& y = init.values;
    const RealVector& x = targ.values;

    Schedule sched;
    sched.dim = n;
    sched.epsilon = epsilon;
    sched.provenance.x = x;
    sched.provenance.y = y;

    const double zero_tol = 1e-12;
    const auto rank_of = [zero_tol](const RealVector& v) {
        int r = 0;
        for (int j = 0; j < v.size(); ++j)
            if (v(j) > zero_tol) ++r;
        return r;
    };
    sched.padded = rank_of(x) != rank_of(y);

    RealVector xv = x, yv = y;
    double eps2 = epsilon;
    if (sched.padded) {
        eps2 = epsilon / 6.0;
        const EigenvalueSequence xs(x, true), ys(y, true);
        // Smallest block meeting the eps/12 tail rule whose padding still fits
        // into the truncation; cand = n always qualifies (zero tails, phi = 0).
        int pad_n = n;
        for (int cand = 1; cand <= n; ++cand) {
            const double x_tail = x.tail(n - cand).sum();
            const double y_tail = y.tail(n - cand).sum();
            if (x_tail >= epsilon / 12.0 || y_tail >= epsilon / 12.0) continue;
            double smallest = 0.0;
            int kept = 0;
            for (int j = 0; j < cand; ++j) {
                if (x(j) > 0.0) {
                    smallest = x(j);
                    kept = j + 1;
                }
            }
            if (kept == 0) continue;
            double phi = y.head(cand).sum() - x.head(cand).sum();
            if (phi <= 1e-12) phi = 0.0;
            const double fills = (phi > 0.0) ? std::ceil(phi / smallest) : 0.0;
            if (kept + fills <= static_cast<double>(n)) {
                pad_n = cand;
                break;
            }
        }
        const PaddedPair pp = pad_and_match(xs, ys, pad_n);

        xv.setZero();
        yv.setZero();
        xv.head(pp.x_hat.size()) = pp.x_hat.entries / pp.scale;
        yv.head(pp.y_hat.size()) = pp.y_hat.entries / pp.scale;
        sched.provenance.phi = pp.fill_value * pp.fill_count;
        sched.provenance.fill_count = pp.fill_count;
        sched.provenance.fill_value = pp.fill_value;
        sched.provenance.scale = pp.scale;
        sched.provenance.pad_block = pad_n;
    }
    sched.provenance.step2_epsilon = eps2;

    const Matrix u_sh =
        schur_horn_unitary(EigenvalueSequence(xv, true), EigenvalueSequence(yv, true));
    const Matrix prepared = u_sh * yv.asDiagonal() * u_sh.adjoint();

    const Matrix step1 = u_sh * init.vectors.adjoint();
    const Matrix& step3 = targ.vectors;

    const bool needs_decoherence = max_offdiagonal(prepared, n) > 1e-12;

    auto push_unitary = [&sched](const Matrix& g, double share, const std::string& label) {
        if ((g - identity(static_cast<int>(g.rows()))).cwiseAbs().maxCoeff() <= kIdentitySkipTol) {
            return;
        }
        ScheduleStep step;
        step.kind = StepKind::Unitary;
        step.unitary = g;
        step.budget_share = share;
        step.label = label;
        sched.steps.push_back(std::move(step));
    };

    if (!needs_decoherence) {
        // Pure spectral rearrangement: Steps 1 and 3 collapse to one unitary.
        push_unitary(step3 * step1, 2.0 * epsilon / 3.0, "rotate");
        sched.step2_begin = sched.step2_end = static_cast<int>(sched.steps.size());
        sched.relax_pair = {1, 1};
        return sched;
    }

    const int m_index = least_distinct_index(system.noise);
    if (m_index == 0) {
        throw NoDistinctPair("synthesize: V is a multiple of the identity, noise acts trivially");
    }
    // Block size: smallest k >= M whose tail of the prepared state meets the
    // eps2/24 bound (k = n always does).
    int block = n;
    for (int k = m_index; k <= n; ++k) {
        if (block_tail(prepared, k) < eps2 / 24.0) {
            block = k;
            break;
        }
    }
    sched.provenance.n1 = block;
    sched.block_size = block;
    sched.relax_pair = {1, m_index};

    const PermutationPlan plan = permutation_plan(system.noise, block, m_index, eps2);
    sched.alpha = static_cast<int>(plan.rounds.size());
    sched.provenance.cert_threshold = eps2 / (12.0 * block * block);
    sched.provenance.inplace_duration = plan.inplace_duration;

    const int relax_count = (plan.inplace_duration > 0.0 ? 1 : 0) +
                            static_cast<int>(plan.rounds.size());
    const double relax_share = eps2 / 6.0 / std::max(relax_count, 1);
    const double trotter_share = eps2 / 12.0 / std::max(relax_count, 1);
    const double perm_share =
        plan.rounds.empty() ? 0.0 : eps2 / 12.0 / (2.0 * static_cast<double>(plan.rounds.size()));
    sched.provenance.trotter_allowance = trotter_share;

    const double outer_share =
        sched.padded ? (epsilon / 4.0 + epsilon / 6.0 + eps2 / 3.0) : (epsilon / 3.0);
    push_unitary(step1, outer_share, "prepare");
    sched.step2_begin = static_cast<int>(sched.steps.size());

    auto push_relax = [&](double duration, const std::string& label) {
        if (duration <= 0.0) return;
        ScheduleStep step;
        step.kind = StepKind::NoiseRelax;
        step.duration = duration;
        step.mode = mode;
        step.slices = (mode == RelaxMode::Trotter) ? 8 : 0;
        step.budget_share = relax_share + trotter_share;
        step.label = label;
        sched.steps.push_back(std::move(step));
    };

    push_relax(plan.inplace_duration, "relax");
    for (const PlanRound& round : plan.rounds) {
        const std::string tag =
            "(" + std::to_string(round.from_j + 1) + "," + std::to_string(round.from_k + 1) + ")";
        ScheduleStep fwd;
        fwd.kind = StepKind::Permutation;
        fwd.sigma = round.sigma;
        fwd.budget_share = perm_share;
        fwd.label = "transport" + tag;
        sched.steps.push_back(std::move(fwd));

        push_relax(round.duration, "relax" + tag);
        sched.provenance.s_values.push_back(round.duration);

        ScheduleStep back;
        back.kind = StepKind::Permutation;
        back.sigma = inverse_permutation(round.sigma);
        back.budget_share = perm_share;
        back.label = "restore" + tag;
        sched.steps.push_back(std::move(back));
    }
    sched.step2_end = static_cast<int>(sched.steps.size());

    push_unitary(step3, outer_share, "finish");
    return sched;
}

DensityMatrix execute(const Schedule& schedule, const DensityMatrix& rho0,
                      const ControlSystem& system) {
    const Matrix state_f = execute_in_frame(schedule, rho0, system, nullptr);
    const Matrix& f = system.noise.eigvecs;
    Matrix lab = f * state_f * f.adjoint();
    lab = 0.5 * (lab + Matrix(lab.adjoint()));
    return DensityMatrix(std::move(lab), 1e-8, 1e-8);
}

VerificationReport verify(const Schedule& schedule, const DensityMatrix& rho0,
                          const DensityMatrix& rho_target, const ControlSystem& system) {
    if (rho_target.dim() != schedule.dim) {
        throw DimensionMismatch("verify: target dimension mismatch");
    }
    ExecutionTrace trace;
    const Matrix state_f = execute_in_frame(schedule, rho0, system, &trace);
    const Matrix& f = system.noise.eigvecs;
    const Matrix final_lab = f * state_f * f.adjoint();

    VerificationReport report;
    report.achieved_error = trace_norm(rho_target.matrix() - final_lab);
    report.per_step_errors = trace.step_errors;
    report.budget_total = schedule.budget_total();
    report.budget_satisfied = report.achieved_error < schedule.epsilon;

    report.majorization_chain_ok = true;
    for (std::size_t i = 0; i + 1 < trace.spectra.size(); ++i) {
        const EigenvalueSequence after(trace.spectra[i + 1], true);
        const EigenvalueSequence before(trace.spectra[i], true);
        if (!majorizes(after, before, 1e-8)) {
            report.majorization_chain_ok = false;
            break;
        }
    }

    report.off_diag_threshold = schedule.provenance.cert_threshold;
    if (trace.has_post_step2 && schedule.block_size >= 2) {
        report.off_diag_max = max_offdiagonal(trace.post_step2, schedule.block_size);
    }
    return report;
}

}  // namespace majorreach
