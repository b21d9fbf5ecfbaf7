#include "svv/cli.hpp"
#include "svv/entropy.hpp"
#include "svv/linalg.hpp"
#include "svv/matio.hpp"
#include "svv/rng.hpp"
#include "svv/specfact.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace svv;
namespace fs = std::filesystem;

namespace {

struct CliOutcome {
    int code;
    std::string out;
};

CliOutcome run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("svv");
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream captured;
    std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
    const int code = cli_run(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old);
    return {code, captured.str()};
}

fs::path temp_dir() {
    const fs::path p = fs::temp_directory_path() / "svv_cli_test";
    fs::create_directories(p);
    return p;
}

std::string write_product_state(Eigen::Index dY, Eigen::Index dX) {
    const DensityMatrix rho_y = random_density(dY, dY, 5);
    const CMat m = kron(rho_y.mat(), CMat(identity(dX) / double(dX)));
    const fs::path path = temp_dir() / "rho_product.json";
    save_json_file(path.string(), cmat_to_json(m, std::make_pair(dY, dX)));
    return path.string();
}

}  // namespace

TEST_CASE("norm subcommand reproduces the product value") {
    const std::string rho = write_product_state(2, 2);
    const CliOutcome r = run_cli({"--json", "norm", "--pq", "1,2", "--input", rho});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("command") == "norm");
    const double value = j.at("results").at(0).at("value").get<double>();
    CHECK(std::abs(value - std::pow(2.0, -0.5)) <= 1e-6);
}

TEST_CASE("entropy subcommand at alpha 1 equals the von Neumann value") {
    const DensityMatrix rho = random_density(4, 4, 6);
    const fs::path path = temp_dir() / "rho_full.json";
    save_json_file(path.string(), cmat_to_json(rho.mat(), std::make_pair<Eigen::Index>(2, 2)));
    const CliOutcome r = run_cli({"--json", "entropy", "--alpha", "1", "--input", path.string()});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const double h = j.at("results").at(0).at("entropy").get<double>();
    const double want = cond_vn_entropy(BipartiteOp(rho.mat(), 2, 2));
    CHECK(h == doctest::Approx(want).epsilon(1e-10));

    // --bits divides by ln 2
    const CliOutcome rb =
        run_cli({"--json", "--bits", "entropy", "--alpha", "1", "--input", path.string()});
    const double hb =
        nlohmann::json::parse(rb.out).at("results").at(0).at("entropy").get<double>();
    CHECK(hb == doctest::Approx(want / std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("verify subcommand writes a passing csv") {
    const fs::path csv = temp_dir() / "report.csv";
    const CliOutcome r = run_cli({"verify", "--suite", "poisson", "--seed", "7",
                                  "--trials", "2", "--out", csv.string()});
    REQUIRE(r.code == 0);
    std::ifstream in(csv);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "check,seed,lhs,rhs,margin,pass");
    CHECK(r.out.find("ALL PASS") != std::string::npos);
}

TEST_CASE("verify output is byte-identical across reruns and thread counts") {
    const fs::path csv1 = temp_dir() / "rep1.csv";
    const fs::path csv2 = temp_dir() / "rep2.csv";
    setenv("SVV_THREADS", "1", 1);
    const CliOutcome r1 = run_cli({"verify", "--suite", "dim-bounds", "--seed", "11",
                                   "--trials", "2", "--out", csv1.string()});
    setenv("SVV_THREADS", "4", 1);
    const CliOutcome r2 = run_cli({"verify", "--suite", "dim-bounds", "--seed", "11",
                                   "--trials", "2", "--out", csv2.string()});
    REQUIRE(r1.code == 0);
    REQUIRE(r2.code == 0);
    std::ifstream f1(csv1), f2(csv2);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    CHECK(r1.out == r2.out);

    // the machine-readable envelope is byte-identical too
    setenv("SVV_THREADS", "1", 1);
    const CliOutcome j1 = run_cli({"--json", "verify", "--suite", "dim-bounds", "--seed",
                                   "11", "--trials", "2"});
    setenv("SVV_THREADS", "4", 1);
    const CliOutcome j2 = run_cli({"--json", "verify", "--suite", "dim-bounds", "--seed",
                                   "11", "--trials", "2"});
    unsetenv("SVV_THREADS");
    CHECK(j1.out == j2.out);
}

TEST_CASE("config precedence: defaults < file < env < flags") {
    const fs::path cfgfile = temp_dir() / "cfg.json";
    {
        nlohmann::json j;
        j["seed"] = 1000;
        j["trials"] = 3;
        std::ofstream out(cfgfile);
        out << j.dump();
    }
    auto seed_of = [](const std::string& out) {
        const auto j = nlohmann::json::parse(out);
        return j.at("config").at("seed").get<std::uint64_t>();
    };

    // file beats defaults
    unsetenv("SVV_SEED");
    CliOutcome a = run_cli({"--json", "verify", "--suite", "poisson", "--config",
                            cfgfile.string()});
    CHECK(seed_of(a.out) == 1000);

    // env beats file
    setenv("SVV_SEED", "2000", 1);
    CliOutcome b = run_cli({"--json", "verify", "--suite", "poisson", "--config",
                            cfgfile.string()});
    CHECK(seed_of(b.out) == 2000);

    // flags beat env
    CliOutcome c = run_cli({"--json", "verify", "--suite", "poisson", "--config",
                            cfgfile.string(), "--seed", "3000"});
    CHECK(seed_of(c.out) == 3000);
    unsetenv("SVV_SEED");

    // empty config file: defaults survive
    const fs::path empty = temp_dir() / "empty.json";
    {
        std::ofstream out(empty);
        out << "{}";
    }
    CliOutcome d = run_cli({"--json", "verify", "--suite", "poisson", "--config",
                            empty.string()});
    CHECK(seed_of(d.out) == 12345);
}

TEST_CASE("interp and specfact subcommands") {
    Rng rng(3);
    const fs::path mat = temp_dir() / "x.json";
    save_json_file(mat.string(), cmat_to_json(CMat(rng.ginibre(3, 3))));
    const CliOutcome r = run_cli({"--json", "interp", "--input", mat.string(), "--p0", "1",
                                  "--p1", "inf", "--theta", "0.5"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("results").at(0).at("pass") == true);

    // factorizable symbol through the CLI
    TrigMatPoly t(1, 1);
    t.coeff(0)(0, 0) = 2.0;
    t.coeff(1)(0, 0) = 0.5;
    t.coeff(-1)(0, 0) = 0.5;
    const fs::path tp = temp_dir() / "trig.json";
    const fs::path factor = temp_dir() / "factor.json";
    save_json_file(tp.string(), t.to_json());
    const CliOutcome s = run_cli({"--json", "specfact", "--input", tp.string(), "--tol",
                                  "1e-9", "--out", factor.string()});
    REQUIRE(s.code == 0);
    const auto js = nlohmann::json::parse(s.out);
    CHECK(js.at("results").at(0).at("winding") == 0);
    CHECK(js.at("results").at(0).at("residual").get<double>() <= 1e-9);
    CHECK(fs::exists(factor));
}

TEST_CASE("exit codes") {
    // usage error: unknown flag
    CHECK(run_cli({"norm", "--nonsense"}).code == 2);
    // usage error: missing file
    CHECK(run_cli({"entropy", "--alpha", "2", "--input", "/nonexistent.json"}).code == 2);
    // numerical error: indefinite symbol cannot be factorized
    TrigMatPoly bad(1, 1);
    bad.coeff(0)(0, 0) = 0.5;
    bad.coeff(1)(0, 0) = 1.0;
    bad.coeff(-1)(0, 0) = 1.0;
    const fs::path tp = temp_dir() / "bad.json";
    save_json_file(tp.string(), bad.to_json());
    CHECK(run_cli({"specfact", "--input", tp.string()}).code == 3);
}

TEST_CASE("divergence and decouple subcommands") {
    const DensityMatrix rho = random_density(3, 3, 8);
    const fs::path pr = temp_dir() / "r.json";
    const fs::path ps = temp_dir() / "s.json";
    save_json_file(pr.string(), cmat_to_json(rho.mat()));
    save_json_file(ps.string(), cmat_to_json(CMat(identity(3) / 3.0)));
    const CliOutcome r = run_cli({"--json", "divergence", "--alpha", "2", "--rho",
                                  pr.string(), "--sigma", ps.string()});
    REQUIRE(r.code == 0);
    const double d = nlohmann::json::parse(r.out).at("results").at(0).at("divergence");
    CHECK(d >= -1e-9);
    CHECK(d <= std::log(3.0) + 1e-9);

    // decouple on an uncorrelated state passes trivially
    const DensityMatrix rho_y = random_density(2, 2, 9);
    const CMat unc = kron(CMat(identity(2) / 2.0), rho_y.mat());
    const fs::path pu = temp_dir() / "unc.json";
    save_json_file(pu.string(), cmat_to_json(unc, std::make_pair<Eigen::Index>(2, 2)));
    const CliOutcome dq = run_cli({"decouple", "--input", pu.string(), "--dx0", "1",
                                   "--alpha", "1.5", "--samples", "50", "--seed", "4"});
    CHECK(dq.code == 0);
}
