// io.hpp — problem / schedule / report files: JSON schemas, canonical writer.
// Complex numbers serialize as [re, im]; matrices as row-major nested arrays.
// Floats are written with 17 significant digits so rewrite cycles are
// byte-identical.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "majorreach/lindblad.hpp"
#include "majorreach/synthesis.hpp"

namespace majorreach::io {

/// Parsed problem file (schema version 1).
struct ProblemFile {
    int version = 1;
    int dimension = 0;
    Matrix h0;
    std::vector<Matrix> controls;
    Matrix v;
    Matrix rho0;
    Matrix rho_target;
    double epsilon = 1e-3;
    RelaxMode mode = RelaxMode::Exact;
    std::uint64_t seed = 0;

    ControlSystem system() const;
    DensityMatrix initial_state() const;
    DensityMatrix target_state() const;
};

/// Verification results plus schedule provenance, ready to serialize.
struct ReportFile {
    int version = 1;
    VerificationReport verification;
    const Schedule* schedule = nullptr;  // provenance source, not owned
    double wall_time_ms = 0.0;
};

ProblemFile read_problem(const std::string& path);
ProblemFile parse_problem(const std::string& text);
std::string problem_to_string(const ProblemFile& problem);
void write_problem(const ProblemFile& problem, const std::string& path);

Schedule read_schedule(const std::string& path);
Schedule parse_schedule(const std::string& text);
std::string schedule_to_string(const Schedule& schedule);
void write_schedule(const Schedule& schedule, const std::string& path);

std::string report_to_string(const ReportFile& report);
void write_report(const ReportFile& report, const std::string& path);

}  // namespace majorreach::io
