// synthesis.hpp — constructive reachability: builds and executes channel
// schedules driving rho0 to any majorized target within a trace-norm budget,
// including the permutation-transport plan for degenerate noise eigenvalues
// and the tail-padding branch for mismatched zero patterns.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "majorreach/controllability.hpp"
#include "majorreach/lindblad.hpp"
#include "majorreach/majorization.hpp"

namespace majorreach {

enum class StepKind { Unitary, Permutation, NoiseRelax };
enum class RelaxMode { Exact, Trotter };

/// One channel primitive. Unitary and Permutation steps act in the noise
/// eigenbasis frame; NoiseRelax applies the noise semigroup for `duration`.
struct ScheduleStep {
    StepKind kind = StepKind::Unitary;
    std::string label;
    double budget_share = 0.0;

    Matrix unitary;          // Unitary
    std::vector<int> sigma;  // Permutation, as images j -> sigma[j] (0-based)
    double duration = 0.0;   // NoiseRelax
    RelaxMode mode = RelaxMode::Exact;
    int slices = 0;          // initial slice hint for Trotter realization
};

/// Derived constants recorded during synthesis.
struct ScheduleProvenance {
    int n1 = 0;                      // minimal block size meeting the tail budget
    double inplace_duration = 0.0;   // merged in-place relaxation time
    std::vector<double> s_values;    // per-round transport relaxation times
    double step2_epsilon = 0.0;      // budget Step 2 was planned against
    double cert_threshold = 0.0;     // off-diagonal certificate, eps2 / (12 N^2)
    double trotter_allowance = 0.0;  // per-relax-step Trotter deviation budget
    double phi = 0.0;                // padded branch: filled mass
    int fill_count = 0;
    double fill_value = 0.0;
    double scale = 1.0;
    int pad_block = 0;               // padded branch: N used for the tail rule
    RealVector x;                    // sorted target spectrum
    RealVector y;                    // sorted initial spectrum
};

/// An ordered word in the system semigroup, with per-step error budget.
/// Steps are expressed in the eigenbasis of the noise operator.
struct Schedule {
    int dim = 0;
    double epsilon = 0.0;
    int block_size = 0;                 // N
    std::pair<int, int> relax_pair{1, 1};  // 1-based (1, M)
    int alpha = 0;                      // number of permutation transport rounds
    bool padded = false;
    int step2_begin = 0;                // [step2_begin, step2_end) within steps
    int step2_end = 0;
    std::vector<ScheduleStep> steps;
    ScheduleProvenance provenance;

    double budget_total() const;
};

struct VerificationReport {
    double achieved_error = 0.0;
    std::vector<double> per_step_errors;
    bool budget_satisfied = false;
    bool majorization_chain_ok = false;
    double off_diag_max = 0.0;        // post-Step-2 block off-diagonal maximum
    double off_diag_threshold = 0.0;  // certificate it is held against
    double budget_total = 0.0;
};

struct BlockChoice {
    int N = 0;
    int M = 0;
    int N1 = 0;  // minimal block size meeting the eps/24 tail bound (diagnostic)
};

struct PlanRound {
    std::vector<int> sigma;  // images j -> sigma[j], identity beyond the block
    double duration = 0.0;
    int from_j = 0;  // transported degenerate pair (0-based)
    int from_k = 0;
};

struct PermutationPlan {
    double inplace_duration = 0.0;  // merged relaxation for nondegenerate pairs
    std::vector<PlanRound> rounds;  // one per degenerate pair, lexicographic
};

/// Smallest s with exp(-s |v_a - v_b|^2 / 2) <= eps / (12 N^2).
double relaxation_time(Complex v_a, Complex v_b, int N, double epsilon);

/// Block size N = max(N1, M): N1 minimal with the state's block-truncation
/// tail below eps/24 in the noise eigenbasis, M the least index with
/// v_1 != v_M.
BlockChoice choose_block(const DensityMatrix& rho0, const NoiseOperator& noise, double epsilon);

/// Transport plan: degenerate pairs (j < k <= N, v_j = v_k) are moved to the
/// relaxation spot (1, M) one round each; nondegenerate pairs damp in place
/// under a single merged relaxation.
PermutationPlan permutation_plan(const NoiseOperator& noise, int N, int M, double epsilon);

/// Builds a schedule realizing rho0 -> rho_target to trace-norm precision
/// epsilon (target must be majorized by rho0; the system must pass the
/// Lie-rank and unitality gates).
Schedule synthesize(const DensityMatrix& rho0, const DensityMatrix& rho_target,
                    const ControlSystem& system, double epsilon,
                    RelaxMode mode = RelaxMode::Exact);

/// Left-to-right execution; unitary and permutation steps are exact, noise
/// steps run in closed form or through the Trotter realization.
DensityMatrix execute(const Schedule& schedule, const DensityMatrix& rho0,
                      const ControlSystem& system);

/// Executes and reports the achieved error, per-step realization errors, the
/// majorization chain, and the off-diagonal certificate.
VerificationReport verify(const Schedule& schedule, const DensityMatrix& rho0,
                          const DensityMatrix& rho_target, const ControlSystem& system);

}  // namespace majorreach
