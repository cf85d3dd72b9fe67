#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "coherence/harness.hpp"

using namespace coherence;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("coherence_harness_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::ifstream in(p);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cells.push_back(c);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::directory_iterator(dir)) files[e.path().filename().string()] = slurp(e.path());
    return files;
}

int run_quiet(const RunConfig& cfg) {
    std::ostringstream log;
    return run(cfg, log);
}

}  // namespace

TEST_CASE("parse_dims forms") {
    CHECK(parse_dims("4") == std::vector<std::size_t>{4});
    CHECK(parse_dims("2..5") == std::vector<std::size_t>{2, 3, 4, 5});
    CHECK(parse_dims("2,3,7") == std::vector<std::size_t>{2, 3, 7});
    CHECK_THROWS_AS(parse_dims("5..2"), ConfigError);
    CHECK_THROWS_AS(parse_dims("x"), ConfigError);
    CHECK_THROWS_AS(parse_dims("0"), ConfigError);
    CHECK_THROWS_AS(parse_dims(""), ConfigError);
}

TEST_CASE("parse_command round trip") {
    for (const char* n : {"sh-scan", "axioms", "plane", "walk", "eur", "gil"}) {
        CHECK(std::string(to_string(parse_command(n))) == n);
    }
    CHECK_THROWS_AS(parse_command("fly"), ConfigError);
}

TEST_CASE("sh-scan exits cleanly and writes one row per trial") {
    RunConfig cfg;
    cfg.command = Command::ShScan;
    cfg.dims = parse_dims("2..6");
    cfg.trials = 2000;
    cfg.master_seed = 7;
    cfg.output = scratch("sh");
    CHECK(run_quiet(cfg) == 0);
    const auto rows = read_csv(cfg.output / "sh_scan.csv");
    CHECK(rows.size() == 2001);
    CHECK(rows[0][0] == "trial");
    CHECK(rows[0].size() == 10);
    fs::remove_all(cfg.output);
}

TEST_CASE("plane writes five boundary curves with analytic endpoints") {
    RunConfig cfg;
    cfg.command = Command::Plane;
    cfg.dims = {4};
    cfg.samples = 512;
    cfg.trials = 50;
    cfg.output = scratch("plane");
    CHECK(run_quiet(cfg) == 0);
    std::size_t curves = 0;
    for (const auto& e : fs::directory_iterator(cfg.output)) {
        if (e.path().filename().string().rfind("plane_", 0) == 0 && e.path().filename() != "plane_scatter.csv") {
            ++curves;
        }
    }
    CHECK(curves == 5);
    const auto up = read_csv(cfg.output / "plane_upper_degenerate_d4.csv");
    REQUIRE(up.size() == 513);
    CHECK(std::stod(up[1][3]) == doctest::Approx(0.75));
    CHECK(std::stod(up[1][4]) == doctest::Approx(2.0));
    CHECK(std::stod(up[512][3]) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::stod(up[512][4]) == doctest::Approx(0.0).epsilon(1e-12));
    const auto scatter = read_csv(cfg.output / "plane_scatter.csv");
    CHECK(scatter[0] == std::vector<std::string>{"seed", "d", "rank", "s2", "svn", "c_l1", "c_r", "c2"});
    CHECK(scatter.size() == 51);
    fs::remove_all(cfg.output);
}

TEST_CASE("eur on the maximally mixed qubit") {
    RunConfig cfg;
    cfg.command = Command::Eur;
    cfg.dims = {2};
    cfg.state = "maximally-mixed";
    cfg.trials = 3;
    cfg.output = scratch("eur");
    CHECK(run_quiet(cfg) == 0);
    const auto rows = read_csv(cfg.output / "eur.csv");
    REQUIRE(rows.size() == 4);
    const auto& h = rows[0];
    const auto col = [&h](const std::string& name) {
        return static_cast<std::size_t>(std::find(h.begin(), h.end(), name) - h.begin());
    };
    CHECK(rows[1][col("lhs")] == "2");
    CHECK(rows[1][col("refined_rhs")] == "1");
    CHECK(rows[1][col("mu_rhs")] == "1");
    CHECK(rows[1][col("holds")] == "true");
    CHECK(rows[1][col("basis_labels")] == "computational|fourier");
    CHECK(fs::exists(cfg.output / "eur_curve.csv"));
    fs::remove_all(cfg.output);
}

TEST_CASE("eur reads basis and state files") {
    const fs::path dir = scratch("eur_files");
    fs::create_directories(dir);
    std::ofstream(dir / "hadamard.json")
        << R"({"dim": 2, "re": [[0.7071067811865476, 0.7071067811865476], [0.7071067811865476, -0.7071067811865476]]})";
    std::ofstream(dir / "zero.json") << R"({"dim": 2, "re": [[1, 0], [0, 0]]})";
    RunConfig cfg;
    cfg.command = Command::Eur;
    cfg.dims = {2};
    cfg.trials = 1;
    cfg.state = (dir / "zero.json").string();
    cfg.bases = {"computational", (dir / "hadamard.json").string()};
    cfg.output = dir / "out";
    CHECK(run_quiet(cfg) == 0);
    const auto rows = read_csv(cfg.output / "eur.csv");
    CHECK(rows[1][2] == "computational|hadamard");
    fs::remove_all(dir);
}

TEST_CASE("walk writes the trajectory") {
    RunConfig cfg;
    cfg.command = Command::Walk;
    cfg.dims = {4};
    cfg.state = "maximally-mixed";
    cfg.steps = 30;
    cfg.output = scratch("walk");
    CHECK(run_quiet(cfg) == 0);
    const auto rows = read_csv(cfg.output / "walk.csv");
    CHECK(rows.size() == 32);
    CHECK(rows[0] == std::vector<std::string>{"step", "accepted", "scale", "c_l1", "s2", "svn", "c_r", "c2"});
    CHECK(rows[1][3] == "0");
    fs::remove_all(cfg.output);
}

TEST_CASE("gil writes a frequency table summing to the trial count") {
    RunConfig cfg;
    cfg.command = Command::Gil;
    cfg.dims = parse_dims("2..6");
    cfg.trials = 500;
    cfg.output = scratch("gil");
    CHECK(run_quiet(cfg) == 0);
    const auto rows = read_csv(cfg.output / "gil_frequency.csv");
    std::size_t total = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) total += std::stoul(rows[i][2]);
    CHECK(total == 500);
    fs::remove_all(cfg.output);
}

TEST_CASE("axioms exit code follows failures") {
    RunConfig cfg;
    cfg.command = Command::Axioms;
    cfg.dims = {3};
    cfg.trials = 300;
    cfg.measure = "C_l1";
    cfg.output = scratch("axioms_ok");
    CHECK(run_quiet(cfg) == 0);
    CHECK(fs::exists(cfg.output / "axioms.csv"));
    CHECK_FALSE(fs::exists(cfg.output / "axiom_failures.json"));
    fs::remove_all(cfg.output);

    cfg.measure = "C_2";
    cfg.dims = parse_dims("3..5");
    cfg.trials = 2000;
    cfg.output = scratch("axioms_bad");
    CHECK(run_quiet(cfg) == 1);
    CHECK(fs::exists(cfg.output / "axiom_failures.json"));
    fs::remove_all(cfg.output);
}

TEST_CASE("config errors") {
    RunConfig cfg;
    cfg.output = scratch("bad");
    cfg.command = Command::Axioms;
    cfg.measure = "nope";
    CHECK_THROWS_AS(run_quiet(cfg), ConfigError);
    cfg.measure = "c_r_partial:4";
    cfg.dims = {3};
    CHECK_THROWS_AS(run_quiet(cfg), ConfigError);

    RunConfig e;
    e.command = Command::Eur;
    e.bases = {"computational"};
    e.output = cfg.output;
    CHECK_THROWS_AS(run_quiet(e), ConfigError);
    e.bases = {"computational", "no-such-basis"};
    CHECK_THROWS_AS(run_quiet(e), ConfigError);

    RunConfig t;
    t.trials = 0;
    CHECK_THROWS_AS(run_quiet(t), ConfigError);
    t.trials = 1;
    t.method = "wishart";
    CHECK_THROWS_AS(run_quiet(t), ConfigError);
    t.method = "mixed";
    t.eta = 1.5;
    CHECK_THROWS_AS(run_quiet(t), ConfigError);
    fs::remove_all(cfg.output);
}

TEST_CASE("every command is deterministic and worker independent") {
    for (Command c : {Command::ShScan, Command::Axioms, Command::Plane, Command::Walk, Command::Eur, Command::Gil}) {
        RunConfig cfg;
        cfg.command = c;
        cfg.dims = parse_dims("2..5");
        cfg.trials = 300;
        cfg.steps = 40;
        cfg.samples = 64;
        cfg.master_seed = 17;
        cfg.measure = "C_2";
        cfg.bases = {"computational", "haar"};
        std::map<std::string, std::string> first;
        for (std::size_t workers : {1, 4, 4}) {
            cfg.workers = workers;
            cfg.output = scratch(std::string("det_") + to_string(c));
            run_quiet(cfg);
            const auto files = snapshot(cfg.output);
            if (first.empty()) {
                first = files;
                CHECK_FALSE(first.empty());
            } else {
                CHECK_MESSAGE(files == first, to_string(c));
            }
            fs::remove_all(cfg.output);
        }
    }
}
