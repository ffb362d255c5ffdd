#include "dgs/common.hpp"
#include "dgs/dynamics.hpp"
#include "dgs/sampling.hpp"

#include "doctest.h"
#include "helpers.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kCli = DGS_CLI_PATH;

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("gen: deterministic output and usage errors") {
    testutil::TempDir dir("cli_gen");
    const std::string out1 = (dir / "a.json").string();
    const std::string out2 = (dir / "b.json").string();
    CHECK(run("gen --n 20 --p 0.2 --seed 9 --out " + out1) == 0);
    CHECK(run("gen --n 20 --p 0.2 --seed 9 --out " + out2) == 0);
    CHECK(slurp(out1) == slurp(out2));
    CHECK(std::filesystem::exists(dir / "a.json.manifest.json"));

    CHECK(run("gen --n 20 --p 0.2") == 2);      // missing --out
    CHECK(run("gen --n 1 --p 0.2 --out " + (dir / "c.json").string()) == 2);
    CHECK(run("bogus-subcommand") == 2);
}

TEST_CASE("plan: unstable models exit 3, empty bands exit 2") {
    testutil::TempDir dir("cli_plan");
    const std::string net = (dir / "net.json").string();
    REQUIRE(run("gen --n 20 --p 0.2 --seed 4 --out " + net) == 0);
    CHECK(run("plan --net " + net + " --model pd --B 0.1 --R 9.0 --band-size 3 --out " +
              (dir / "p.json").string()) == 3);
    CHECK(run("plan --net " + net + " --model pd --B 1.0 --R 0.05 --omega 0 --out " +
              (dir / "p.json").string()) == 2);
    CHECK(run("plan --net " + net + " --model pd --B 1.0 --R 0.05 --out " +
              (dir / "p.json").string()) == 2);  // no band request at all
    // data errors exit 4
    CHECK(run("plan --net " + (dir / "missing.json").string() +
              " --model pd --B 1 --R 0.05 --band-size 3 --out " +
              (dir / "p.json").string()) == 4);
}

TEST_CASE("end-to-end pipeline: gen, plan, simulate, sample, recover") {
    testutil::TempDir dir("cli_e2e");
    const std::string net = (dir / "net.json").string();
    const std::string plan = (dir / "plan.json").string();
    const std::string x0 = (dir / "x0.json").string();
    const std::string traj = (dir / "traj.csv").string();
    const std::string samples = (dir / "samples.csv").string();
    const std::string rec = (dir / "rec.csv").string();

    REQUIRE(run("gen --n 24 --p 0.15 --seed 5 --out " + net) == 0);
    REQUIRE(run("plan --net " + net +
                " --model pd --B 1.0 --R 0.05 --band-size 4 --amplitude 1.0 "
                "--seed 7 --fs-mult 4 --out " +
                plan + " --x0-out " + x0) == 0);

    const dgs::SamplingPlan loaded_plan = dgs::load_plan_json(plan);
    const double step = 1.0 / (4.0 * loaded_plan.F_s);
    const double horizon = 30.0;
    std::ostringstream sim;
    sim.precision(17);
    sim << "simulate --net " << net << " --model pd --B 1.0 --R 0.05 --x0 " << x0
        << " --step " << step << " --horizon " << horizon << " --out " << traj;
    REQUIRE(run(sim.str()) == 0);
    REQUIRE(run("sample --traj " + traj + " --plan " + plan + " --out " + samples) == 0);
    REQUIRE(run("recover --plan " + plan + " --samples " + samples +
                " --t-end 20 --x-domain --out " + rec) == 0);

    // recovered x(t) tracks the simulated truth on its grid
    const dgs::Trajectory truth = dgs::load_trajectory_csv(traj);
    const dgs::Trajectory recovered = dgs::load_trajectory_csv(rec);
    double err = 0.0;
    long matched = 0;
    for (long k = 0; k < recovered.times.size(); ++k) {
        const long idx = std::lround(recovered.times(k) / step);
        REQUIRE(idx < truth.times.size());
        REQUIRE(std::abs(truth.times(idx) - recovered.times(k)) < 1e-9);
        err += (truth.states.row(idx) - recovered.states.row(k)).squaredNorm();
        ++matched;
    }
    const double rms =
        std::sqrt(err / (static_cast<double>(matched) * truth.states.cols()));
    CHECK(matched > 100);
    CHECK(rms < 1e-8);

    SUBCASE("empty samples file errors out") {
        const std::string empty = (dir / "empty.csv").string();
        std::ofstream(empty) << "t,node_0\n";
        CHECK(run("recover --plan " + plan + " --samples " + empty + " --out " +
                  (dir / "r2.csv").string()) == 4);
    }
    SUBCASE("grid-incompatible sampling rate exits 4") {
        CHECK(run("sample --traj " + traj + " --plan " + plan + " --fs 0.774 --out " +
                  (dir / "s2.csv").string()) == 4);
    }
}

TEST_CASE("sweep presets exist and rerun bit-identically") {
    testutil::TempDir dir("cli_sweep");
    // mini config: fast but exercises the full path
    const std::string cfg = (dir / "cfg.json").string();
    std::ofstream(cfg) << R"({
      "model": {"kind": "pd", "randomize": false, "B": 1.0, "R": 0.04},
      "n": 30, "edge_probability": 0.12,
      "init": {"mode": "bandlimited", "band_size": 4, "amplitude": 1.0},
      "epsilon_rel": 1e-3,
      "fs_multiples": [1, 4],
      "sample_sizes": [4, 6],
      "seed": 5
    })";
    const std::string out1 = (dir / "s1").string();
    const std::string out2 = (dir / "s2").string();
    REQUIRE(run("sweep --config " + cfg + " --out-dir " + out1 + " --jobs 2") == 0);
    REQUIRE(run("sweep --config " + cfg + " --out-dir " + out2 + " --jobs 1") == 0);
    CHECK(slurp(dir / "s1" / "sweep.csv") == slurp(dir / "s2" / "sweep.csv"));
    CHECK(std::filesystem::exists(dir / "s1" / "metadata.json"));
    CHECK(std::filesystem::exists(dir / "s1" / "plots" / "panel_a.dat"));

    // shipped presets parse and range-check (desk scale only; not run here)
    for (const std::string preset : {"fig3", "fig4", "fig5"}) {
        const std::filesystem::path path =
            std::filesystem::path(DGS_CONFIGS_DIR) / (preset + "_desk.json");
        INFO(path.string());
        CHECK(std::filesystem::exists(path));
    }
}
