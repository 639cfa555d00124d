#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "majorreach/io.hpp"
#include "majorreach/random.hpp"

using namespace majorreach;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(MAJORREACH_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / "majorreach_cli_test";
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

io::ProblemFile controllable_problem(int n, std::uint64_t seed, bool majorized_target) {
    Rng rng(seed);
    io::ProblemFile p;
    p.dimension = n;
    p.h0 = random_hermitian(n, rng);
    p.controls = {random_hermitian(n, rng)};
    const Matrix u = haar_unitary(n, rng);
    Vector vals(n);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int j = 0; j < n; ++j) vals(j) = Complex(gauss(rng), gauss(rng));
    p.v = u * vals.asDiagonal() * u.adjoint();
    p.rho0 = random_density(n, n, rng);
    if (majorized_target) {
        p.rho_target = random_majorized_state(DensityMatrix(p.rho0, 1e-8, 1e-8), 2, seed).matrix();
    } else {
        // A pure target is never majorized by a generic mixed rho0.
        Matrix pure = Matrix::Zero(n, n);
        pure(0, 0) = 1.0;
        p.rho_target = pure;
    }
    p.epsilon = 1e-3;
    p.mode = RelaxMode::Exact;
    p.seed = seed;
    return p;
}

}  // namespace

TEST_CASE("check: accepts majorized targets, rejects pure targets") {
    TempDir dir;
    io::write_problem(controllable_problem(3, 21, true), dir.file("yes.json"));
    io::write_problem(controllable_problem(3, 22, false), dir.file("no.json"));

    CHECK(run_cli("check " + dir.file("yes.json")) == 0);
    CHECK(run_cli("check " + dir.file("no.json")) == 1);
    CHECK(run_cli("check " + dir.file("absent.json")) == 2);
}

TEST_CASE("synthesize -> verify -> execute round trip through files") {
    TempDir dir;
    io::write_problem(controllable_problem(3, 33, true), dir.file("problem.json"));

    CHECK(run_cli("synthesize " + dir.file("problem.json") + " --out " + dir.file("sched.json")) ==
          0);
    CHECK(fs::exists(dir.file("sched.json")));
    CHECK(fs::exists(dir.file("sched.json") + ".report.json"));

    CHECK(run_cli("verify " + dir.file("problem.json") + " " + dir.file("sched.json") + " --out " +
                  dir.file("report.json")) == 0);
    CHECK(run_cli("execute " + dir.file("problem.json") + " " + dir.file("sched.json") +
                  " --out " + dir.file("final.json")) == 0);
}

TEST_CASE("synthesize rejections carry exit code 1") {
    TempDir dir;
    // Scalar noise: NoDistinctPair.
    io::ProblemFile p = controllable_problem(2, 44, true);
    p.v = identity(2);
    io::write_problem(p, dir.file("scalar.json"));
    CHECK(run_cli("synthesize " + dir.file("scalar.json") + " --out " + dir.file("s.json")) == 1);

    // Non-majorized target: NotMajorized.
    io::write_problem(controllable_problem(2, 45, false), dir.file("bad.json"));
    CHECK(run_cli("synthesize " + dir.file("bad.json") + " --out " + dir.file("s2.json")) == 1);
}

TEST_CASE("trotter-study writes a CSV") {
    TempDir dir;
    io::write_problem(controllable_problem(2, 55, true), dir.file("problem.json"));
    CHECK(run_cli("trotter-study " + dir.file("problem.json") + " --slices 4 8 --time 0.5 --out " +
                  dir.file("study.csv")) == 0);
    std::ifstream csv(dir.file("study.csv"));
    std::string header;
    std::getline(csv, header);
    CHECK(header == "slices,deviation");
    int rows = 0;
    for (std::string line; std::getline(csv, line);)
        if (!line.empty()) ++rows;
    CHECK(rows == 2);

    // A single slice still produces one finite row.
    CHECK(run_cli("trotter-study " + dir.file("problem.json") + " --slices 1 --out " +
                  dir.file("one.csv")) == 0);
    std::ifstream one(dir.file("one.csv"));
    std::string line;
    std::getline(one, line);
    std::getline(one, line);
    CHECK(line.rfind("1,", 0) == 0);
    CHECK(std::isfinite(std::stod(line.substr(2))));
}

TEST_CASE("crange requires a seed and emits K_C") {
    TempDir dir;
    std::ofstream mats(dir.file("ct.json"));
    mats << R"({"C": [[[0.5,0],[0,0],[0,0]],[[0,0],[0.3,0],[0,0]],[[0,0],[0,0],[0.2,0]]],
                "T": [[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0]]]})";
    mats.close();

    CHECK(run_cli("crange " + dir.file("ct.json") + " --out " + dir.file("cr.json")) == 2);
    CHECK(run_cli("crange " + dir.file("ct.json") + " --seed 7 --samples 50 --out " +
                  dir.file("cr.json")) == 0);

    std::ifstream in(dir.file("cr.json"));
    nlohmann::json out;
    in >> out;
    CHECK(out.at("k_c").get<double>() == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(out.at("k_c_bruteforce").get<double>() == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("lie-rank") {
    TempDir dir;
    io::write_problem(controllable_problem(2, 66, true), dir.file("good.json"));
    CHECK(run_cli("lie-rank " + dir.file("good.json")) == 0);

    io::ProblemFile p = controllable_problem(2, 67, true);
    p.h0 = Matrix::Zero(2, 2);
    p.h0(0, 0) = 1.0;
    p.h0(1, 1) = -1.0;
    Matrix diag_control = Matrix::Zero(2, 2);
    diag_control(0, 0) = 0.3;
    diag_control(1, 1) = 0.1;
    p.controls = {diag_control};
    io::write_problem(p, dir.file("abelian.json"));
    CHECK(run_cli("lie-rank " + dir.file("abelian.json")) == 1);
}
