#include "dgs/common.hpp"
#include "dgs/experiments.hpp"

#include "doctest.h"
#include "helpers.hpp"

#include <cmath>
#include <fstream>

using namespace dgs;

namespace {

Trajectory grid_trajectory(const Eigen::MatrixXd& states, double dt) {
    Trajectory traj;
    traj.states = states;
    traj.times.resize(states.rows());
    for (long k = 0; k < states.rows(); ++k) traj.times(k) = k * dt;
    return traj;
}

SweepConfig small_pd_config() {
    SweepConfig config;
    config.model.kind = ModelKind::pd;
    config.model.B = 1.0;
    config.model.R = 0.04;
    config.n = 40;
    config.edge_probability = 0.1;
    config.init_mode = InitMode::bandlimited;
    config.band_size = 5;
    config.amplitude = 1.0;
    config.epsilon_rel = 1e-3;
    config.fs_multiples = {1.0, 4.0};
    config.sample_sizes = {4, 6};
    config.seed = 5;
    return config;
}

}  // namespace

TEST_CASE("rmse: identical grids give zero") {
    Eigen::MatrixXd states = Eigen::MatrixXd::Random(20, 5);
    const Trajectory traj = grid_trajectory(states, 0.1);
    CHECK(rmse(traj, states) == 0.0);
}

TEST_CASE("rmse: constant offset evaluates to the offset") {
    // with the grid covering [0, T) exactly, a uniform offset delta gives
    // rmse = delta
    const double delta = 0.37;
    Eigen::MatrixXd states = Eigen::MatrixXd::Zero(50, 4);
    const Trajectory traj = grid_trajectory(states, 0.02);
    Eigen::MatrixXd recovered = states.array() + delta;
    CHECK(rmse(traj, recovered) == doctest::Approx(delta).epsilon(1e-12));
}

TEST_CASE("rmse: single wrong entry") {
    const long steps = 25;
    const int n = 5;
    Eigen::MatrixXd states = Eigen::MatrixXd::Zero(steps, n);
    const double dt = 0.5;
    const Trajectory traj = grid_trajectory(states, dt);
    Eigen::MatrixXd recovered = states;
    const double err = 2.25;
    recovered(7, 3) += err;
    const double horizon = dt * steps;
    const double expected = err * std::sqrt(dt / (n * horizon));
    CHECK(rmse(traj, recovered) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("rmse is symmetric in its arguments") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Random(12, 3);
    Eigen::MatrixXd b = Eigen::MatrixXd::Random(12, 3);
    const Trajectory ta = grid_trajectory(a, 0.25);
    const Trajectory tb = grid_trajectory(b, 0.25);
    CHECK(rmse(ta, b) == doctest::Approx(rmse(tb, a)).epsilon(1e-14));
}

TEST_CASE("rmse validates grids") {
    Eigen::MatrixXd states = Eigen::MatrixXd::Zero(5, 2);
    const Trajectory traj = grid_trajectory(states, 0.1);
    CHECK_THROWS_AS(rmse(traj, Eigen::MatrixXd::Zero(4, 2)), DimensionError);
    Trajectory skewed = traj;
    skewed.times(3) += 0.05;
    CHECK_THROWS_AS(rmse(skewed, states), DimensionError);
}

TEST_CASE("stable model sampler accepts its own draws") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Network net = generate_network(25, 0.15, seed);
        const DynamicsModel pd = sample_stable_model(ModelKind::pd, net, seed);
        CHECK(check_stability(pd, net, Eigen::VectorXd::Zero(25)).stable);
        const DynamicsModel mak = sample_stable_model(ModelKind::mak, net, seed);
        const Eigen::VectorXd x_inf = find_equilibrium(
            mak, net, Eigen::VectorXd::Constant(25, mak.F / mak.B));
        CHECK(check_stability(mak, net, x_inf).stable);
    }
}

TEST_CASE("prepare_instance wires the pipeline together") {
    const SweepConfig config = small_pd_config();
    const Instance inst = prepare_instance(config);
    CHECK(inst.net.n == 40);
    CHECK(inst.x_inf.lpNorm<Eigen::Infinity>() < 1e-12);  // pd equilibrium is 0
    CHECK(inst.band.indices.size() >= 5);
    CHECK(inst.Omega_c > 0.0);
    CHECK(inst.epsilon == doctest::Approx(1e-3 * inst.y0.norm()));
    CHECK(inst.dt == doctest::Approx(3.14159265358979323846 / (4.0 * inst.Omega_c)));
    // the initialization is supported inside the reported band
    const Eigen::VectorXcd coeffs = gft(inst.basis, inst.y0);
    std::vector<char> in_band(inst.net.n, 0);
    for (int j : inst.band.indices) in_band[j] = 1;
    const double cmax = coeffs.cwiseAbs().maxCoeff();
    for (int j = 0; j < inst.net.n; ++j) {
        if (!in_band[j]) CHECK(std::abs(coeffs(j)) < 1e-9 * cmax);
    }
}

TEST_CASE("run_cell equals a one-cell sweep") {
    const SweepConfig config = small_pd_config();
    const CellResult direct = run_cell(config, 4.0, 6);
    SweepConfig one = config;
    one.fs_multiples = {4.0};
    one.sample_sizes = {6};
    const SweepResult sweep = run_sweep(one, 1);
    REQUIRE(sweep.cells.size() == 2);  // requested cell + benchmark
    CHECK(sweep.cells[0].sample_size == 6);
    CHECK(sweep.cells[0].rmse == direct.rmse);
    CHECK_FALSE(direct.failed);
}

TEST_CASE("run_cell on an adequate plan recovers to near rounding at 4x rate") {
    const SweepConfig config = small_pd_config();
    const Instance inst = prepare_instance(config);
    const int band = static_cast<int>(inst.band.indices.size());
    const CellResult cell = run_cell(config, 4.0, band);
    CHECK_FALSE(cell.failed);
    CHECK(cell.rmse < 1e-9);
}

TEST_CASE("sweep results are canonical, deterministic and benchmark-dominated") {
    SweepConfig config = small_pd_config();
    config.fs_multiples = {4.0, 1.0, 8.0};  // scrambled on purpose
    const SweepResult a = run_sweep(config, 1);
    const SweepResult b = run_sweep(config, 3);

    REQUIRE(a.cells.size() == b.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        CHECK(a.cells[i].F_s == b.cells[i].F_s);
        CHECK(a.cells[i].sample_size == b.cells[i].sample_size);
        CHECK(a.cells[i].rmse == b.cells[i].rmse);  // bit-identical across jobs
    }
    // canonical order: F_s ascending, sizes ascending, benchmark last per group
    for (std::size_t i = 1; i < a.cells.size(); ++i) {
        const bool new_group = a.cells[i].F_s > a.cells[i - 1].F_s;
        if (!new_group) {
            CHECK(a.cells[i].F_s == a.cells[i - 1].F_s);
            CHECK(a.cells[i].sample_size > a.cells[i - 1].sample_size);
        }
    }
    CHECK(a.cells.back().sample_size == config.n);

    // the all-nodes benchmark is never worse than any cell at on-grid rates
    for (const auto& cell : a.cells) {
        if (cell.fs_multiple < 4.0) continue;
        double bench = 0.0;
        for (const auto& other : a.cells) {
            if (other.F_s == cell.F_s && other.sample_size == config.n) {
                bench = other.rmse;
            }
        }
        CHECK(bench <= cell.rmse + 1e-12);
    }
}

TEST_CASE("rmse decreases along ascending sample sizes at fixed rate") {
    SweepConfig config = small_pd_config();
    config.fs_multiples = {1.0, 4.0};
    config.sample_sizes = {2, 4, 6, 8};
    const SweepResult result = run_sweep(config, 2);
    for (double mult : {1.0, 4.0}) {
        std::vector<double> errs;
        for (const auto& cell : result.cells) {
            if (cell.fs_multiple == mult) errs.push_back(cell.rmse);
        }
        REQUIRE(errs.size() == 5);  // 4 sizes + benchmark
        for (std::size_t i = 1; i < errs.size(); ++i) {
            CHECK(errs[i] <= errs[i - 1] * 1.10 + 1e-15);
        }
    }
}

TEST_CASE("failed cells are recorded without aborting the sweep") {
    SweepConfig config = small_pd_config();
    config.sample_sizes = {6, 55};  // 55 > n = 40: parameter error in that cell
    const SweepResult result = run_sweep(config, 1);
    int failed = 0;
    int ok = 0;
    for (const auto& cell : result.cells) {
        if (cell.failed) {
            ++failed;
            CHECK(cell.sample_size == 55);
            CHECK_FALSE(cell.message.empty());
        } else {
            ++ok;
        }
    }
    CHECK(failed == 2);  // one per rate
    CHECK(ok > 0);
}

TEST_CASE("sweep CSV and config round trip") {
    SweepConfig config = small_pd_config();
    config.fs_multiples = {1.0};
    config.sample_sizes = {6};
    const SweepResult result = run_sweep(config, 1);
    testutil::TempDir dir("sweep_io");
    const auto csv_path = dir / "sweep.csv";
    save_sweep_csv(result, csv_path);
    const auto cfg_path = dir / "config.json";
    save_sweep_config(config, cfg_path);
    const SweepConfig back = load_sweep_config(cfg_path);
    CHECK(back.n == config.n);
    CHECK(back.seed == config.seed);
    CHECK(back.fs_multiples == config.fs_multiples);
    CHECK(back.sample_sizes == config.sample_sizes);
    CHECK(back.band_size == config.band_size);
    CHECK(back.epsilon_rel == config.epsilon_rel);

    // CSV determinism: writing the same result twice is bit-identical
    const auto csv2 = dir / "sweep2.csv";
    save_sweep_csv(result, csv2);
    std::ifstream a(csv_path), b(csv2);
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    CHECK(sa.rfind("F_s,S_size,rmse,omega_c,Omega_c,rank_cert,clamped,failed\n", 0) == 0);

    save_plot_data(result, dir / "plots");
    CHECK(std::filesystem::exists(dir / "plots" / "panel_a.dat"));
}

TEST_CASE("arbitrary-mode sweeps project per sample size") {
    SweepConfig config;
    config.model.kind = ModelKind::mak;
    config.model.F = 1.0;
    config.model.B = 1.0;
    config.model.R = -0.1;
    config.n = 30;
    config.edge_probability = 0.15;
    config.init_mode = InitMode::arbitrary;
    config.amplitude_rel = 0.1;
    config.fs_multiples = {4.0};
    config.sample_sizes = {12, 24};
    config.seed = 5;
    const SweepResult result = run_sweep(config, 2);
    REQUIRE(result.cells.size() == 3);
    CHECK_FALSE(result.cells[0].failed);
    CHECK_FALSE(result.cells[1].failed);
    CHECK_FALSE(result.cells[2].failed);
    // smaller budgets truncate more spectrum: larger floor
    CHECK(result.cells[0].rmse > result.cells[1].rmse);
    CHECK(result.cells[1].rmse > result.cells[2].rmse);
    // the all-node benchmark keeps every mode and recovers almost exactly
    CHECK(result.cells[2].rmse < 1e-9);
}

TEST_CASE("instance horizon follows the decay margin") {
    const SweepConfig config = small_pd_config();
    const Instance inst = prepare_instance(config);
    CHECK(inst.decay_margin > 0.0);
    CHECK(inst.horizon_eval ==
          doctest::Approx(std::log(1e10) / inst.decay_margin).epsilon(1e-12));
    CHECK(inst.horizon_sample >= inst.horizon_eval);
    SweepConfig overridden = config;
    overridden.horizon = 3.0;
    const Instance inst2 = prepare_instance(overridden);
    CHECK(inst2.horizon_eval == 3.0);
}
