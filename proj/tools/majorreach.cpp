// majorreach.cpp — command-line front end: majorization checks, schedule
// synthesis and execution, Trotter convergence studies, C-range reports.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "majorreach/crange.hpp"
#include "majorreach/io.hpp"
#include "majorreach/synthesis.hpp"

namespace {

using namespace majorreach;

enum ExitCode { kOk = 0, kRejected = 1, kIoError = 2, kDefect = 3 };

int log_level() {
    const char* env = std::getenv("MAJORREACH_LOG");
    if (env == nullptr) return 0;
    const std::string v(env);
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[info] " << msg << "\n";
}

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

int cmd_check(const std::string& problem_path) {
    const io::ProblemFile problem = io::read_problem(problem_path);
    const DensityMatrix rho0 = problem.initial_state();
    const DensityMatrix target = problem.target_state();

    const bool by_sums = state_majorizes(target, rho0, 1e-9);
    const bool by_ando = ando_majorization_test(target, rho0, 1e-9);
    std::cout << "partial-sum test: " << (by_sums ? "majorized" : "not majorized") << "\n";
    std::cout << "ando test:        " << (by_ando ? "majorized" : "not majorized") << "\n";
    if (by_sums != by_ando) {
        std::cerr << "internal defect: the two majorization tests disagree\n";
        return kDefect;
    }
    return by_sums ? kOk : kRejected;
}

int cmd_synthesize(const std::string& problem_path, const std::string& out_path,
                   std::optional<double> epsilon_flag, std::optional<std::string> mode_flag) {
    const io::ProblemFile problem = io::read_problem(problem_path);
    const double epsilon = epsilon_flag.value_or(problem.epsilon);
    RelaxMode mode = problem.mode;
    if (mode_flag) mode = (*mode_flag == "trotter") ? RelaxMode::Trotter : RelaxMode::Exact;

    const ControlSystem system = problem.system();
    const DensityMatrix rho0 = problem.initial_state();
    const DensityMatrix target = problem.target_state();

    const double t0 = now_ms();
    const Schedule schedule = synthesize(rho0, target, system, epsilon, mode);
    const VerificationReport report = verify(schedule, rho0, target, system);
    const double t1 = now_ms();

    io::write_schedule(schedule, out_path);
    io::ReportFile rf;
    rf.verification = report;
    rf.schedule = &schedule;
    rf.wall_time_ms = t1 - t0;
    io::write_report(rf, out_path + ".report.json");

    std::cout << "achieved_error " << report.achieved_error << " (budget " << epsilon << ")\n";
    log_info("schedule with " + std::to_string(schedule.steps.size()) + " steps written to " +
             out_path);
    return report.achieved_error < epsilon ? kOk : kRejected;
}

int cmd_execute(const std::string& problem_path, const std::string& schedule_path,
                const std::string& out_path) {
    const io::ProblemFile problem = io::read_problem(problem_path);
    const Schedule schedule = io::read_schedule(schedule_path);
    const DensityMatrix final_state =
        execute(schedule, problem.initial_state(), problem.system());

    nlohmann::ordered_json j;
    j["version"] = 1;
    j["dimension"] = final_state.dim();
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < final_state.dim(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int k = 0; k < final_state.dim(); ++k) {
            row.push_back({final_state.matrix()(i, k).real(), final_state.matrix()(i, k).imag()});
        }
        rows.push_back(std::move(row));
    }
    j["rho_final"] = std::move(rows);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << j.dump(2) << "\n";
    return kOk;
}

int cmd_verify(const std::string& problem_path, const std::string& schedule_path,
               const std::string& out_path) {
    const io::ProblemFile problem = io::read_problem(problem_path);
    const Schedule schedule = io::read_schedule(schedule_path);
    const double t0 = now_ms();
    const VerificationReport report =
        verify(schedule, problem.initial_state(), problem.target_state(), problem.system());
    const double t1 = now_ms();

    io::ReportFile rf;
    rf.verification = report;
    rf.schedule = &schedule;
    rf.wall_time_ms = t1 - t0;
    if (!out_path.empty()) io::write_report(rf, out_path);
    std::cout << io::report_to_string(rf);
    return report.budget_satisfied ? kOk : kRejected;
}

int cmd_trotter_study(const std::string& problem_path, const std::vector<int>& slices,
                      double time, const std::string& csv_out) {
    const io::ProblemFile problem = io::read_problem(problem_path);
    const ControlSystem system = problem.system();
    const DensityMatrix rho0 = problem.initial_state();

    std::ofstream csv(csv_out);
    if (!csv) {
        std::cerr << "cannot write " << csv_out << "\n";
        return kIoError;
    }
    csv << "slices,deviation\n";
    for (int m : slices) {
        const TrotterResult res = trotter_noise(rho0, system, time, m);
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", res.deviation);
        csv << m << "," << buf << "\n";
    }
    return kOk;
}

int cmd_crange(const std::string& input_path, int samples, std::uint64_t seed,
               const std::string& out_path) {
    // Accepts either a {C, T} matrix file or a problem file (then C = rho0,
    // T = rho_target).
    std::ifstream in(input_path);
    if (!in) {
        std::cerr << "cannot open " << input_path << "\n";
        return kIoError;
    }
    nlohmann::json raw;
    in >> raw;
    Matrix c, t;
    if (raw.contains("C") && raw.contains("T")) {
        auto parse = [](const nlohmann::json& j) {
            const int rows = static_cast<int>(j.size());
            Matrix m(rows, rows);
            for (int i = 0; i < rows; ++i)
                for (int k = 0; k < rows; ++k)
                    m(i, k) = Complex(j[i][k][0].get<double>(), j[i][k][1].get<double>());
            return m;
        };
        c = parse(raw["C"]);
        t = parse(raw["T"]);
    } else {
        const io::ProblemFile problem = io::parse_problem(raw.dump());
        c = problem.rho0;
        t = problem.rho_target;
    }

    const double k_value = k_c(c, t);
    const CRangeSample w = sample_c_numerical_range(c, t, samples, seed);
    const CSpectrum p = c_spectrum(c, t, 5040, seed);

    nlohmann::ordered_json j;
    j["version"] = 1;
    j["k_c"] = k_value;
    if (c.rows() <= 8) j["k_c_bruteforce"] = k_c_bruteforce(c, t);
    auto points = [](const PointSet2D& ps) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const Complex& z : ps) arr.push_back({z.real(), z.imag()});
        return arr;
    };
    j["w_samples"] = points(w.values);
    j["p_points"] = points(p.values);
    j["p_exhaustive"] = p.exhaustive;
    if (is_hermitian(c) && is_hermitian(t)) {
        const CollinearHullReport hull = collinear_hull_check(c, t, samples, 1e-8, seed);
        j["hull_max_distance"] = hull.max_distance;
        j["hull_hausdorff"] = hull.hausdorff_conv;
        j["hull_bound"] = hull.bound;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "cannot write " << out_path << "\n";
        return kIoError;
    }
    out << j.dump(2) << "\n";
    std::cout << "K_C = " << k_value << "\n";
    return kOk;
}

int cmd_lie_rank(const std::string& problem_path) {
    const io::ProblemFile problem = io::read_problem(problem_path);
    std::vector<Matrix> generators;
    generators.push_back(Complex(0.0, 1.0) * problem.h0);
    for (const Matrix& h : problem.controls) generators.push_back(Complex(0.0, 1.0) * h);
    const LieClosureReport report = lie_closure_dim(generators);
    std::cout << "dimension " << report.dimension << " / target " << report.target_dimension
              << " -> " << (report.controllable ? "controllable" : "not controllable") << "\n";
    return report.controllable ? kOk : kRejected;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"majorreach — reachability synthesis for switchable-noise Lindblad systems"};
    app.require_subcommand(1);

    std::string problem_path, schedule_path, out_path = "out.json", csv_out = "study.csv";
    std::optional<double> epsilon_flag;
    std::optional<std::string> mode_flag;
    std::vector<int> slices = {8, 16, 32, 64, 128, 256, 512};
    double study_time = 1.0;
    int samples = 1000;
    std::uint64_t seed = 0;
    bool seed_given = false;

    CLI::App* check = app.add_subcommand("check", "decide rho_target ≺ rho0 two ways");
    check->add_option("problem", problem_path, "problem JSON")->required();

    CLI::App* synth = app.add_subcommand("synthesize", "build and verify a schedule");
    synth->add_option("problem", problem_path, "problem JSON")->required();
    synth->add_option("--out", out_path, "schedule output path");
    double eps_tmp = 0.0;
    CLI::Option* eps_opt = synth->add_option("--epsilon", eps_tmp, "override problem epsilon");
    std::string mode_tmp;
    CLI::Option* mode_opt =
        synth->add_option("--mode", mode_tmp, "exact|trotter")->check(CLI::IsMember({"exact", "trotter"}));

    CLI::App* exec = app.add_subcommand("execute", "run a schedule on the problem's rho0");
    exec->add_option("problem", problem_path, "problem JSON")->required();
    exec->add_option("schedule", schedule_path, "schedule JSON")->required();
    exec->add_option("--out", out_path, "final state output path");

    CLI::App* verify_cmd = app.add_subcommand("verify", "execute and report against the target");
    verify_cmd->add_option("problem", problem_path, "problem JSON")->required();
    verify_cmd->add_option("schedule", schedule_path, "schedule JSON")->required();
    verify_cmd->add_option("--out", out_path, "report output path");

    CLI::App* study = app.add_subcommand("trotter-study", "deviation vs slices CSV");
    study->add_option("problem", problem_path, "problem JSON")->required();
    study->add_option("--slices", slices, "slice counts");
    study->add_option("--time", study_time, "relaxation time to realize");
    study->add_option("--out", csv_out, "CSV output path");

    CLI::App* crange_cmd = app.add_subcommand("crange", "K_C, C-spectrum, sampled W_C report");
    crange_cmd->add_option("input", problem_path, "{C,T} file or problem JSON")->required();
    crange_cmd->add_option("--samples", samples, "Haar samples");
    CLI::Option* seed_opt = crange_cmd->add_option("--seed", seed, "sampling seed");
    crange_cmd->add_option("--out", out_path, "report output path");

    CLI::App* lie = app.add_subcommand("lie-rank", "Lie-algebra rank condition report");
    lie->add_option("problem", problem_path, "problem JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kIoError;
    }

    if (eps_opt->count() > 0) epsilon_flag = eps_tmp;
    if (mode_opt->count() > 0) mode_flag = mode_tmp;
    seed_given = seed_opt->count() > 0;

    try {
        if (check->parsed()) return cmd_check(problem_path);
        if (synth->parsed()) return cmd_synthesize(problem_path, out_path, epsilon_flag, mode_flag);
        if (exec->parsed()) return cmd_execute(problem_path, schedule_path, out_path);
        if (verify_cmd->parsed()) return cmd_verify(problem_path, schedule_path, out_path);
        if (study->parsed()) return cmd_trotter_study(problem_path, slices, study_time, csv_out);
        if (crange_cmd->parsed()) {
            if (!seed_given) {
                std::cerr << "crange: --seed is required for sampled commands\n";
                return kIoError;
            }
            return cmd_crange(problem_path, samples, seed, out_path);
        }
        if (lie->parsed()) return cmd_lie_rank(problem_path);
    } catch (const Error& e) {
        std::cerr << e.code() << ": " << e.what() << "\n";
        return kRejected;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    }
    return kIoError;
}
