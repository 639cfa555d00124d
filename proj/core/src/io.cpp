#include "majorreach/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace majorreach::io {

using json = nlohmann::ordered_json;

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (long i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (long j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json real_vector_to_json(const RealVector& v) {
    json out = json::array();
    for (long j = 0; j < v.size(); ++j) out.push_back(v(j));
    return out;
}

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw std::runtime_error("expected a complex number as [re, im]");
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

Matrix matrix_from_json(const json& j, int expected_dim = -1) {
    if (!j.is_array() || j.empty()) throw std::runtime_error("expected a matrix");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    if (expected_dim >= 0 && (rows != expected_dim || cols != expected_dim)) {
        throw std::runtime_error("matrix has the wrong dimension");
    }
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[i].size()) != cols) {
            throw std::runtime_error("ragged matrix rows");
        }
        for (int k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
    }
    return m;
}

RealVector real_vector_from_json(const json& j) {
    RealVector v(static_cast<long>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<long>(i)) = j[i].get<double>();
    return v;
}

// Canonical serializer: key order as constructed, floats as %.17g.
void dump_canonical(const json& j, std::string& out) {
    switch (j.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += ',';
                first = false;
                out += json(key).dump();
                out += ':';
                dump_canonical(value, out);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i > 0) out += ',';
                dump_canonical(j[i], out);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float: {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
            out += buf;
            break;
        }
        default:
            out += j.dump();
            break;
    }
}

std::string dump_canonical(const json& j) {
    std::string out;
    dump_canonical(j, out);
    out += '\n';
    return out;
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void store_file(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

const char* step_kind_name(StepKind kind) {
    switch (kind) {
        case StepKind::Unitary: return "unitary";
        case StepKind::Permutation: return "permutation";
        case StepKind::NoiseRelax: return "noise_relax";
    }
    return "unitary";
}

}  // namespace

ControlSystem ProblemFile::system() const {
    return make_control_system(h0, controls, make_noise(v));
}

DensityMatrix ProblemFile::initial_state() const { return DensityMatrix(rho0); }

DensityMatrix ProblemFile::target_state() const { return DensityMatrix(rho_target); }

ProblemFile parse_problem(const std::string& text) {
    const json j = json::parse(text);
    ProblemFile p;
    p.version = j.at("version").get<int>();
    if (p.version != 1) throw std::runtime_error("unsupported problem schema version");
    p.dimension = j.at("dimension").get<int>();
    p.h0 = matrix_from_json(j.at("H0"), p.dimension);
    for (const json& c : j.at("controls")) p.controls.push_back(matrix_from_json(c, p.dimension));
    p.v = matrix_from_json(j.at("V"), p.dimension);
    p.rho0 = matrix_from_json(j.at("rho0"), p.dimension);
    p.rho_target = matrix_from_json(j.at("rho_target"), p.dimension);
    p.epsilon = j.at("epsilon").get<double>();
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "exact") p.mode = RelaxMode::Exact;
    else if (mode == "trotter") p.mode = RelaxMode::Trotter;
    else throw std::runtime_error("mode must be \"exact\" or \"trotter\"");
    p.seed = j.at("seed").get<std::uint64_t>();
    return p;
}

ProblemFile read_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

std::string problem_to_string(const ProblemFile& p) {
    json j;
    j["version"] = 1;
    j["dimension"] = p.dimension;
    j["H0"] = matrix_to_json(p.h0);
    json controls = json::array();
    for (const Matrix& c : p.controls) controls.push_back(matrix_to_json(c));
    j["controls"] = std::move(controls);
    j["V"] = matrix_to_json(p.v);
    j["rho0"] = matrix_to_json(p.rho0);
    j["rho_target"] = matrix_to_json(p.rho_target);
    j["epsilon"] = p.epsilon;
    j["mode"] = (p.mode == RelaxMode::Exact) ? "exact" : "trotter";
    j["seed"] = p.seed;
    return dump_canonical(j);
}

void write_problem(const ProblemFile& problem, const std::string& path) {
    store_file(problem_to_string(problem), path);
}

std::string schedule_to_string(const Schedule& s) {
    json j;
    j["version"] = 1;
    j["dimension"] = s.dim;
    j["frame"] = "noise-eigenbasis";
    j["epsilon"] = s.epsilon;
    j["block_size"] = s.block_size;
    j["relax_pair"] = json::array({s.relax_pair.first, s.relax_pair.second});
    j["alpha"] = s.alpha;
    j["padded"] = s.padded;
    j["step2_begin"] = s.step2_begin;
    j["step2_end"] = s.step2_end;

    json steps = json::array();
    for (const ScheduleStep& step : s.steps) {
        json sj;
        sj["kind"] = step_kind_name(step.kind);
        sj["label"] = step.label;
        sj["budget_share"] = step.budget_share;
        switch (step.kind) {
            case StepKind::Unitary:
                sj["matrix"] = matrix_to_json(step.unitary);
                break;
            case StepKind::Permutation:
                sj["sigma"] = step.sigma;
                break;
            case StepKind::NoiseRelax:
                sj["duration"] = step.duration;
                sj["mode"] = (step.mode == RelaxMode::Exact) ? "exact" : "trotter";
                sj["slices"] = step.slices;
                break;
        }
        steps.push_back(std::move(sj));
    }
    j["steps"] = std::move(steps);

    json prov;
    prov["n1"] = s.provenance.n1;
    prov["inplace_duration"] = s.provenance.inplace_duration;
    prov["s_values"] = s.provenance.s_values;
    prov["step2_epsilon"] = s.provenance.step2_epsilon;
    prov["cert_threshold"] = s.provenance.cert_threshold;
    prov["trotter_allowance"] = s.provenance.trotter_allowance;
    prov["phi"] = s.provenance.phi;
    prov["fill_count"] = s.provenance.fill_count;
    prov["fill_value"] = s.provenance.fill_value;
    prov["scale"] = s.provenance.scale;
    prov["pad_block"] = s.provenance.pad_block;
    prov["x"] = real_vector_to_json(s.provenance.x);
    prov["y"] = real_vector_to_json(s.provenance.y);
    j["provenance"] = std::move(prov);
    return dump_canonical(j);
}

Schedule parse_schedule(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("version").get<int>() != 1) {
        throw std::runtime_error("unsupported schedule schema version");
    }
    Schedule s;
    s.dim = j.at("dimension").get<int>();
    s.epsilon = j.at("epsilon").get<double>();
    s.block_size = j.at("block_size").get<int>();
    s.relax_pair = {j.at("relax_pair")[0].get<int>(), j.at("relax_pair")[1].get<int>()};
    s.alpha = j.at("alpha").get<int>();
    s.padded = j.at("padded").get<bool>();
    s.step2_begin = j.at("step2_begin").get<int>();
    s.step2_end = j.at("step2_end").get<int>();

    for (const json& sj : j.at("steps")) {
        ScheduleStep step;
        const std::string kind = sj.at("kind").get<std::string>();
        step.label = sj.at("label").get<std::string>();
        step.budget_share = sj.at("budget_share").get<double>();
        if (kind == "unitary") {
            step.kind = StepKind::Unitary;
            step.unitary = matrix_from_json(sj.at("matrix"), s.dim);
        } else if (kind == "permutation") {
            step.kind = StepKind::Permutation;
            step.sigma = sj.at("sigma").get<std::vector<int>>();
        } else if (kind == "noise_relax") {
            step.kind = StepKind::NoiseRelax;
            step.duration = sj.at("duration").get<double>();
            step.mode = sj.at("mode").get<std::string>() == "trotter" ? RelaxMode::Trotter
                                                                      : RelaxMode::Exact;
            step.slices = sj.at("slices").get<int>();
        } else {
            throw std::runtime_error("unknown step kind " + kind);
        }
        s.steps.push_back(std::move(step));
    }

    const json& prov = j.at("provenance");
    s.provenance.n1 = prov.at("n1").get<int>();
    s.provenance.inplace_duration = prov.at("inplace_duration").get<double>();
    s.provenance.s_values = prov.at("s_values").get<std::vector<double>>();
    s.provenance.step2_epsilon = prov.at("step2_epsilon").get<double>();
    s.provenance.cert_threshold = prov.at("cert_threshold").get<double>();
    s.provenance.trotter_allowance = prov.at("trotter_allowance").get<double>();
    s.provenance.phi = prov.at("phi").get<double>();
    s.provenance.fill_count = prov.at("fill_count").get<int>();
    s.provenance.fill_value = prov.at("fill_value").get<double>();
    s.provenance.scale = prov.at("scale").get<double>();
    s.provenance.pad_block = prov.at("pad_block").get<int>();
    s.provenance.x = real_vector_from_json(prov.at("x"));
    s.provenance.y = real_vector_from_json(prov.at("y"));
    return s;
}

Schedule read_schedule(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_schedule(buf.str());
}

void write_schedule(const Schedule& schedule, const std::string& path) {
    store_file(schedule_to_string(schedule), path);
}

std::string report_to_string(const ReportFile& r) {
    json j;
    j["version"] = 1;
    j["achieved_error"] = r.verification.achieved_error;
    j["budget_satisfied"] = r.verification.budget_satisfied;
    j["majorization_chain_ok"] = r.verification.majorization_chain_ok;
    j["budget_total"] = r.verification.budget_total;
    j["per_step_errors"] = r.verification.per_step_errors;
    j["off_diag_max"] = r.verification.off_diag_max;
    j["off_diag_threshold"] = r.verification.off_diag_threshold;
    if (r.schedule != nullptr) {
        const ScheduleProvenance& prov = r.schedule->provenance;
        json c;
        c["N"] = r.schedule->block_size;
        c["M"] = r.schedule->relax_pair.second;
        c["alpha"] = r.schedule->alpha;
        c["padded"] = r.schedule->padded;
        c["s_values"] = prov.s_values;
        c["inplace_duration"] = prov.inplace_duration;
        c["phi"] = prov.phi;
        c["fill_count"] = prov.fill_count;
        c["scale"] = prov.scale;
        c["step2_epsilon"] = prov.step2_epsilon;
        c["cert_threshold"] = prov.cert_threshold;
        j["constants"] = std::move(c);
    }
    j["wall_time_ms"] = r.wall_time_ms;
    return dump_canonical(j);
}

void write_report(const ReportFile& report, const std::string& path) {
    store_file(report_to_string(report), path);
}

}  // namespace majorreach::io
