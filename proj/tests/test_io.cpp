#include <filesystem>
#include <fstream>
#include <memory>
#include <random>

#include <doctest.h>

#include "boselab/config.hpp"
#include "boselab/csv.hpp"
#include "boselab/experiments.hpp"
#include "boselab/serialize.hpp"

using namespace boselab;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("boselab_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

FockVector random_state(unsigned seed) {
    auto basis = std::make_shared<FockBasis>(3, 5);
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    FockVector psi(basis);
    for (std::int64_t i = 0; i < basis->dimension(); ++i)
        psi.amplitudes[i] = cdouble(g(rng), g(rng));
    psi.normalize();
    return psi;
}

}  // namespace

TEST_CASE("state serialization round-trips bit for bit") {
    const auto dir = temp_dir("serialize");
    const std::string path = (dir / "state.blfk").string();

    FockVector psi = random_state(7);
    save_state(path, psi);
    FockVector back = load_state(path);

    CHECK(back.basis->mode_count() == 3);
    CHECK(back.basis->particle_cutoff() == 5);
    REQUIRE(back.amplitudes.size() == psi.amplitudes.size());
    for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i)
        CHECK(back.amplitudes[i] == psi.amplitudes[i]);  // exact, not approximate

    // Two writes of the same state are byte-identical.
    const std::string path2 = (dir / "state2.blfk").string();
    save_state(path2, psi);
    std::ifstream a(path, std::ios::binary), b(path2, std::ios::binary);
    const std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
    const std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
    CHECK(bytes_a == bytes_b);
    fs::remove_all(dir);
}

TEST_CASE("loader rejects foreign files") {
    const auto dir = temp_dir("reject");
    const std::string path = (dir / "bogus.blfk").string();
    std::ofstream(path) << "definitely not a Fock state";
    CHECK_THROWS(load_state(path));
    CHECK_THROWS(load_state((dir / "missing.blfk").string()));
    fs::remove_all(dir);
}

TEST_CASE("CSV output is deterministic") {
    CsvTable t({"N", "value"});
    t.add_row({2.0, 0.123456789012345});
    t.add_row({4.0, -1.5e-9});
    const std::string s1 = t.to_string();
    const std::string s2 = t.to_string();
    CHECK(s1 == s2);
    CHECK(s1.substr(0, 8) == "N,value\n");
    CHECK(t.row_count() == 2);
    CHECK_THROWS(t.add_row({1.0}));  // column-count mismatch

    const auto dir = temp_dir("csv");
    t.write((dir / "t.csv").string());
    std::ifstream in(dir / "t.csv");
    const std::string bytes((std::istreambuf_iterator<char>(in)), {});
    CHECK(bytes == s1);
    fs::remove_all(dir);
}

TEST_CASE("config parsing") {
    const auto cfg = Config::parse_string(
        "# a comment\n"
        "experiment = scattering_study\n"
        "r_max = 4.0\n"
        "N_sweep = 10, 100, 1000\n"
        "\n"
        "seed = 7   # trailing comment\n");
    CHECK(cfg.get_string("experiment") == "scattering_study");
    CHECK(cfg.get_double("r_max") == 4.0);
    CHECK(cfg.get_int("seed") == 7);
    CHECK(cfg.get_list("N_sweep") == std::vector<double>{10.0, 100.0, 1000.0});
    CHECK(cfg.get_double("absent", 1.5) == 1.5);
    CHECK_THROWS(cfg.get_double("absent"));
    CHECK_THROWS(Config::parse_string("a = 1\na = 2\n"));  // duplicate key
    CHECK_THROWS(Config::parse_string("no equals sign\n"));

    const auto unknown = cfg.unknown_keys({"experiment", "r_max", "seed"});
    CHECK(unknown == std::vector<std::string>{"N_sweep"});
}

TEST_CASE("experiment validation catches malformed configs") {
    std::string msg;

    auto ok = Config::parse_string(
        "experiment = scattering_study\npotential = zero\nr_max = 4.0\n");
    CHECK(validate_experiment(ok, msg) == experiment_ok);

    auto bad_beta = Config::parse_string(
        "experiment = fluctuation_norm\npotential = zero\nmodes = 3\n"
        "box_length = 8\nN_sweep = 2\nbeta = 1.5\nt_final = 1\n");
    CHECK(validate_experiment(bad_beta, msg) == experiment_config_error);
    CHECK(msg.find("beta") != std::string::npos);

    auto unknown_key = Config::parse_string(
        "experiment = scattering_study\npotential = zero\nr_max = 4.0\nbogus = 1\n");
    CHECK(validate_experiment(unknown_key, msg) == experiment_config_error);
    CHECK(msg.find("bogus") != std::string::npos);

    auto even_modes = Config::parse_string(
        "experiment = mean_field_convergence\npotential = zero\nmodes = 4\n"
        "box_length = 8\nN_sweep = 2\nt_grid = 0.5\n");
    CHECK(validate_experiment(even_modes, msg) == experiment_config_error);

    auto no_experiment = Config::parse_string("r_max = 4.0\n");
    CHECK(validate_experiment(no_experiment, msg) == experiment_config_error);

    CHECK(!experiment_names().empty());
}

TEST_CASE("scattering study runs end to end") {
    const auto dir = temp_dir("run");
    auto cfg = Config::parse_string(
        "experiment = scattering_study\npotential = square_well\nv0 = 6\n"
        "radius = 1\nr_max = 4.0\nbeta = 0.5\nN_sweep = 10, 100\n"
        "output_dir = " + dir.string() + "\n");
    std::string msg;
    CHECK(run_experiment(cfg, msg) == experiment_ok);
    CHECK(fs::exists(dir / "scattering.csv"));
    CHECK(fs::exists(dir / "manifest.json"));

    // Byte-identical rerun of the CSV body.
    std::ifstream in1(dir / "scattering.csv");
    const std::string first((std::istreambuf_iterator<char>(in1)), {});
    CHECK(run_experiment(cfg, msg) == experiment_ok);
    std::ifstream in2(dir / "scattering.csv");
    const std::string second((std::istreambuf_iterator<char>(in2)), {});
    CHECK(first == second);
    CHECK(first.rfind("N,a_N,", 0) == 0);

    // Zero potential: a0 column identically zero.
    const auto dir0 = temp_dir("run0");
    auto cfg0 = Config::parse_string(
        "experiment = scattering_study\npotential = zero\nr_max = 4.0\n"
        "output_dir = " + dir0.string() + "\n");
    CHECK(run_experiment(cfg0, msg) == experiment_ok);
    std::ifstream in0(dir0 / "scattering.csv");
    std::string header, row;
    std::getline(in0, header);
    std::getline(in0, row);
    CHECK(row.find(",0,0,") != std::string::npos);

    fs::remove_all(dir);
    fs::remove_all(dir0);
}

TEST_CASE("run_experiment reports config errors without artifacts") {
    const auto dir = temp_dir("noartifacts");
    auto cfg = Config::parse_string(
        "experiment = scattering_study\npotential = zero\nr_max = 4.0\n"
        "beta = 1.5\noutput_dir = " + dir.string() + "\n");
    std::string msg;
    CHECK(run_experiment(cfg, msg) == experiment_config_error);
    CHECK(!fs::exists(dir / "scattering.csv"));
    fs::remove_all(dir);
}
