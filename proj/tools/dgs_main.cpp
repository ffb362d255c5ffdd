#include "dgs/common.hpp"
#include "dgs/dynamics.hpp"
#include "dgs/experiments.hpp"
#include "dgs/network.hpp"
#include "dgs/sampling.hpp"
#include "dgs/spectral.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitStability = 3;
constexpr int kExitData = 4;
constexpr int kExitNumerical = 5;

int exit_code_for(const dgs::Error& e) {
    switch (e.code()) {
        case dgs::ErrorCode::parameter:
            return kExitUsage;
        case dgs::ErrorCode::stability:
        case dgs::ErrorCode::convergence:
            return kExitStability;
        case dgs::ErrorCode::format:
        case dgs::ErrorCode::dimension:
        case dgs::ErrorCode::io:
            return kExitData;
        default:
            return kExitNumerical;
    }
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Every output gets a sibling manifest with the fully resolved arguments, so
/// the artifact is reproducible from the manifest alone.
void write_manifest(const fs::path& anchor, const std::string& command, json arguments,
                    std::vector<std::string> inputs, std::vector<std::string> outputs,
                    double wall_ms) {
    json doc;
    doc["command"] = command;
    doc["version"] = dgs::kToolVersion;
    doc["arguments"] = std::move(arguments);
    doc["inputs"] = std::move(inputs);
    doc["outputs"] = std::move(outputs);
    doc["wall_clock_ms"] = wall_ms;
    doc["timestamp"] = iso_timestamp();
    fs::path path = anchor;
    path += ".manifest.json";
    std::ofstream out(path);
    if (!out) {
        throw dgs::IoError("cannot write manifest: " + path.string());
    }
    out << doc.dump(2) << "\n";
}

Eigen::VectorXd load_vector_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw dgs::IoError("cannot open vector file: " + path.string());
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw dgs::FormatError("vector file " + path.string() + " is not valid JSON: " +
                               e.what());
    }
    if (!doc.is_array() || doc.empty()) {
        throw dgs::FormatError("vector file must hold a non-empty JSON array of numbers");
    }
    Eigen::VectorXd v(static_cast<long>(doc.size()));
    for (std::size_t i = 0; i < doc.size(); ++i) {
        if (!doc[i].is_number()) {
            throw dgs::FormatError("vector entry " + std::to_string(i) + " is not a number");
        }
        v(static_cast<long>(i)) = doc[i].get<double>();
    }
    return v;
}

void save_vector_json(const Eigen::VectorXd& v, const fs::path& path) {
    json doc = json::array();
    for (long i = 0; i < v.size(); ++i) doc.push_back(v(i));
    std::ofstream out(path);
    if (!out) {
        throw dgs::IoError("cannot write vector file: " + path.string());
    }
    out << doc.dump() << "\n";
}

struct ModelFlags {
    std::string kind = "pd";
    double B = 1.0;
    double R = 0.05;
    double F = 1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--model", kind, "dynamics model: pd or mak")->required();
        cmd->add_option("--B", B, "decay rate (B > 0)");
        cmd->add_option("--R", R, "coupling strength");
        cmd->add_option("--F", F, "influx term (mak only)");
    }

    dgs::DynamicsModel resolve() const {
        const dgs::ModelKind k = dgs::model_kind_from_string(kind);
        return k == dgs::ModelKind::pd ? dgs::DynamicsModel::pd(B, R)
                                       : dgs::DynamicsModel::mak(F, B, R);
    }

    json to_json() const {
        return {{"model", kind}, {"B", B}, {"R", R}, {"F", F}};
    }
};

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
            .count();
    }
};

int cmd_gen(int n, double p, std::uint64_t seed, const std::string& out) {
    Timer timer;
    const dgs::Network net = dgs::generate_network(n, p, seed);
    dgs::save_network(net, out);
    write_manifest(out, "gen",
                   {{"n", n}, {"p", p}, {"seed", seed}, {"out", out}}, {}, {out},
                   timer.ms());
    std::cout << "wrote " << out << " (" << net.n << " nodes, " << net.edge_count()
              << " edges)\n";
    return kExitOk;
}

int cmd_simulate(const std::string& net_path, const ModelFlags& flags,
                 const std::string& x0_path, double step, double horizon, int record_every,
                 const std::string& out) {
    Timer timer;
    const dgs::Network net = dgs::load_network(net_path);
    const dgs::DynamicsModel model = flags.resolve();
    const Eigen::VectorXd x0 = load_vector_json(x0_path);
    if (x0.size() != net.n) {
        throw dgs::DimensionError("initial state has length " + std::to_string(x0.size()) +
                                  ", network has n = " + std::to_string(net.n));
    }
    dgs::Trajectory traj = dgs::integrate(model, net, x0, step, horizon, record_every);
    dgs::save_trajectory_csv(traj, out);
    json args = flags.to_json();
    args["net"] = net_path;
    args["x0"] = x0_path;
    args["step"] = step;
    args["horizon"] = horizon;
    args["record_every"] = record_every;
    args["out"] = out;
    write_manifest(out, "simulate", args, {net_path, x0_path}, {out}, timer.ms());
    std::cout << "wrote " << out << " (" << traj.times.size() << " rows)\n";
    return kExitOk;
}

struct PlanFlags {
    std::optional<double> omega;
    std::optional<int> band_size;
    bool arbitrary = false;
    int budget = 0;
    int size = 0;
    double amplitude = 1.0;
    std::optional<double> amplitude_rel;
    double epsilon_rel = 1e-3;
    std::optional<double> epsilon_abs;
    double fs_mult = 1.0;
    std::uint64_t seed = 1;
    bool allow_undersampled = false;
};

int cmd_plan(const std::string& net_path, const ModelFlags& flags, const PlanFlags& pf,
             const std::string& out, const std::string& x0_out,
             const std::string& basis_out) {
    Timer timer;
    const dgs::Network net = dgs::load_network(net_path);
    const dgs::DynamicsModel model = flags.resolve();

    const Eigen::VectorXd guess =
        model.kind == dgs::ModelKind::pd
            ? Eigen::VectorXd::Zero(net.n)
            : Eigen::VectorXd::Constant(net.n, model.F / model.B);
    const Eigen::VectorXd x_inf = dgs::find_equilibrium(model, net, guess);
    const dgs::StabilityReport report = dgs::check_stability(model, net, x_inf);
    if (!report.stable) {
        std::cerr << "model is unstable: max Re eigenvalue = "
                  << dgs::format_double(report.max_real_eigenvalue)
                  << " (spectral margin " << dgs::format_double(report.spectral_margin)
                  << ")\n";
        return kExitStability;
    }
    if (std::abs(report.max_real_eigenvalue) <= 1e-9) {
        std::cerr << "warning: marginally stable equilibrium (max Re eigenvalue = "
                  << dgs::format_double(report.max_real_eigenvalue) << ")\n";
    }
    const dgs::LinearOperator op = dgs::jacobian(model, net, x_inf);
    const dgs::SpectralBasis basis = dgs::decompose(op);

    double amplitude = pf.amplitude;
    if (pf.amplitude_rel) {
        if (!(x_inf.norm() > 0.0)) {
            throw dgs::ParameterError("--amplitude-rel requires a nonzero equilibrium");
        }
        amplitude = *pf.amplitude_rel * x_inf.norm();
    }

    dgs::SamplingPlan plan;
    Eigen::VectorXd y0;
    if (pf.arbitrary) {
        y0 = dgs::random_init(net.n, amplitude, pf.seed);
        const int size = pf.size > 0 ? pf.size : (pf.budget > 0 ? pf.budget : net.n);
        const int budget = pf.budget > 0 ? pf.budget : size;
        const dgs::ProjectionResult proj = dgs::arbitrary_init_projection(basis, y0, budget);
        plan.band = proj.band;
        double max_dist = 0.0;
        for (int j = 0; j < basis.size(); ++j) {
            max_dist = std::max(max_dist, basis.band_distance(j));
        }
        plan.omega_c = std::max(max_dist + 1e-12, max_dist * (1.0 + 1e-12));
        const double epsilon =
            pf.epsilon_abs ? *pf.epsilon_abs : pf.epsilon_rel * y0.norm();
        const dgs::CutoffResult cutoff = dgs::time_cutoff_arbitrary(basis, y0.norm(), epsilon);
        plan.Omega_c = cutoff.omega;
        plan.clamped = cutoff.clamped;
        plan.epsilon = epsilon;
        const dgs::SelectionResult sel =
            dgs::select_sampling_set(basis, plan.band, size, pf.allow_undersampled);
        plan.nodes = sel.nodes;
        plan.rank_certificate = sel.certificate;
    } else {
        double omega;
        if (pf.omega) {
            omega = *pf.omega;
        } else if (pf.band_size) {
            omega = dgs::omega_for_band_size(basis, *pf.band_size);
        } else {
            throw dgs::ParameterError(
                "plan requires one of --omega, --band-size or --arbitrary");
        }
        y0 = dgs::make_bandlimited_init(basis, omega, amplitude, pf.seed);
        const dgs::SupportResult support = dgs::support_bandwidth(basis, y0);
        plan.omega_c = support.omega_c;
        plan.band = dgs::band_frequency_set(basis, plan.omega_c);
        const double epsilon =
            pf.epsilon_abs ? *pf.epsilon_abs : pf.epsilon_rel * y0.norm();
        const dgs::CutoffResult cutoff =
            dgs::time_cutoff_bandlimited(basis, plan.band, y0.norm(), epsilon);
        plan.Omega_c = cutoff.omega;
        plan.clamped = cutoff.clamped;
        plan.epsilon = epsilon;
        const int size =
            pf.size > 0 ? pf.size : static_cast<int>(plan.band.indices.size());
        const dgs::SelectionResult sel =
            dgs::select_sampling_set(basis, plan.band, size, pf.allow_undersampled);
        plan.nodes = sel.nodes;
        plan.rank_certificate = sel.certificate;
    }
    plan.phi = dgs::reconstruction_matrix(basis, plan.nodes, plan.band);
    plan.F_s = pf.fs_mult * plan.Omega_c / 3.14159265358979323846;
    plan.undersampled_graph =
        static_cast<int>(plan.nodes.size()) < static_cast<int>(plan.band.indices.size());
    plan.undersampled_time = pf.fs_mult < 1.0 - 1e-12;
    plan.equilibrium = x_inf;
    dgs::save_plan_json(plan, out);

    std::vector<std::string> outputs = {out};
    if (!x0_out.empty()) {
        save_vector_json(x_inf + y0, x0_out);
        outputs.push_back(x0_out);
    }
    if (!basis_out.empty()) {
        dgs::save_basis_json(basis, basis_out);
        outputs.push_back(basis_out);
    }

    json args = flags.to_json();
    args["net"] = net_path;
    if (pf.omega) args["omega"] = *pf.omega;
    if (pf.band_size) args["band_size"] = *pf.band_size;
    args["arbitrary"] = pf.arbitrary;
    args["budget"] = pf.budget;
    args["size"] = static_cast<int>(plan.nodes.size());
    args["amplitude"] = amplitude;
    args["epsilon"] = plan.epsilon;
    args["fs_mult"] = pf.fs_mult;
    args["seed"] = pf.seed;
    args["allow_undersampled"] = pf.allow_undersampled;
    args["out"] = out;
    write_manifest(out, "plan", args, {net_path}, outputs, timer.ms());
    std::cout << "wrote " << out << " (|S| = " << plan.nodes.size() << ", |N| = "
              << plan.band.indices.size() << ", omega_c = " << dgs::format_double(plan.omega_c)
              << ", Omega_c = " << dgs::format_double(plan.Omega_c)
              << ", F_s = " << dgs::format_double(plan.F_s)
              << ", certificate = " << dgs::format_double(plan.rank_certificate) << ")\n";
    return kExitOk;
}

int cmd_sample(const std::string& traj_path, const std::string& plan_path, double fs,
               const std::string& out) {
    Timer timer;
    const dgs::Trajectory traj = dgs::load_trajectory_csv(traj_path);
    const dgs::SamplingPlan plan = dgs::load_plan_json(plan_path);
    const double rate = fs > 0.0 ? fs : plan.F_s;
    const dgs::SampleRecord record =
        dgs::sample_trajectory(traj, plan.nodes, rate, plan.equilibrium);
    dgs::save_samples_csv(record, plan.nodes, out);
    write_manifest(out, "sample",
                   {{"traj", traj_path}, {"plan", plan_path}, {"fs", rate}, {"out", out}},
                   {traj_path, plan_path}, {out}, timer.ms());
    std::cout << "wrote " << out << " (" << record.values.rows() << " samples at F_s = "
              << dgs::format_double(rate) << ")\n";
    return kExitOk;
}

int cmd_recover(const std::string& plan_path, const std::string& samples_path, double dt,
                double t_end, bool x_domain, const std::string& out) {
    Timer timer;
    const dgs::SamplingPlan plan = dgs::load_plan_json(plan_path);
    const dgs::LoadedSamples loaded = dgs::load_samples_csv(samples_path);
    if (loaded.nodes != plan.nodes) {
        throw dgs::DimensionError(
            "sample columns do not match the plan's node set (plan " + plan_path +
            ", samples " + samples_path + ")");
    }
    const double step = dt > 0.0 ? dt : 3.14159265358979323846 / (4.0 * plan.Omega_c);
    const double horizon =
        t_end > 0.0 ? t_end
                    : static_cast<double>(loaded.record.last_index()) / loaded.record.F_s;
    const long count = static_cast<long>(std::floor(horizon / step + 1e-9)) + 1;
    Eigen::VectorXd times(count);
    for (long k = 0; k < count; ++k) times(k) = static_cast<double>(k) * step;

    const Eigen::MatrixXd recovered = dgs::joint_recover(plan, loaded.record, times, x_domain);
    dgs::Trajectory traj;
    traj.times = times;
    traj.states = recovered;
    dgs::save_trajectory_csv(traj, out);
    write_manifest(out, "recover",
                   {{"plan", plan_path},
                    {"samples", samples_path},
                    {"dt", step},
                    {"t_end", horizon},
                    {"x_domain", x_domain},
                    {"out", out}},
                   {plan_path, samples_path}, {out}, timer.ms());
    std::cout << "wrote " << out << " (" << count << " rows)\n";
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& preset,
              const std::string& scale, const std::string& configs_dir,
              const std::string& out_dir, int jobs) {
    Timer timer;
    fs::path cfg_path;
    if (!config_path.empty()) {
        cfg_path = config_path;
    } else if (!preset.empty()) {
        cfg_path = fs::path(configs_dir) / (preset + "_" + scale + ".json");
    } else {
        throw dgs::ParameterError("sweep requires --config or --preset");
    }
    const dgs::SweepConfig config = dgs::load_sweep_config(cfg_path);
    const dgs::SweepResult result = dgs::run_sweep(config, jobs);

    fs::create_directories(out_dir);
    const fs::path csv_path = fs::path(out_dir) / "sweep.csv";
    dgs::save_sweep_csv(result, csv_path);
    dgs::save_plot_data(result, fs::path(out_dir) / "plots");
    dgs::save_sweep_config(config, fs::path(out_dir) / "resolved_config.json");

    json meta;
    meta["model"] = {{"kind", dgs::to_string(result.model.kind)},
                     {"F", result.model.F},
                     {"B", result.model.B},
                     {"R", result.model.R}};
    meta["omega_c"] = result.omega_c;
    meta["Omega_c"] = result.Omega_c;
    meta["band_size"] = result.band_size;
    meta["condition_number"] = result.condition_number;
    meta["y0_norm"] = result.y0_norm;
    meta["epsilon"] = result.epsilon;
    meta["dt"] = result.dt;
    meta["horizon_eval"] = result.horizon_eval;
    {
        std::ofstream out(fs::path(out_dir) / "metadata.json");
        if (!out) {
            throw dgs::IoError("cannot write sweep metadata");
        }
        out << meta.dump(2) << "\n";
    }

    int failed = 0;
    for (const auto& cell : result.cells) {
        if (cell.failed) ++failed;
    }
    write_manifest(csv_path, "sweep",
                   {{"config", cfg_path.string()}, {"out_dir", out_dir}, {"jobs", jobs}},
                   {cfg_path.string()},
                   {csv_path.string(), (fs::path(out_dir) / "metadata.json").string()},
                   timer.ms());
    std::cout << "wrote " << csv_path.string() << " (" << result.cells.size() << " cells, "
              << failed << " failed)\n";
    if (failed > 0) {
        for (const auto& cell : result.cells) {
            if (cell.failed) {
                std::cerr << "cell F_s=" << dgs::format_double(cell.F_s) << " |S|="
                          << cell.sample_size << " failed: " << cell.message << "\n";
            }
        }
    }
    return failed == 0 ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"joint time- and graph-domain sampling and recovery for networked dynamics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("dgs ") + dgs::kToolVersion);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random directed network");
    int gen_n = 100;
    double gen_p = 0.05;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--n", gen_n, "node count")->required();
    gen->add_option("--p", gen_p, "edge probability in (0, 1]")->required();
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--out", gen_out, "output network JSON")->required();

    // simulate
    auto* simulate = app.add_subcommand("simulate", "integrate the networked dynamics");
    ModelFlags sim_model;
    sim_model.attach(simulate);
    std::string sim_net, sim_x0, sim_out;
    double sim_step = 1e-3, sim_horizon = 10.0;
    int sim_record_every = 1;
    simulate->add_option("--net", sim_net, "network JSON")->required();
    simulate->add_option("--x0", sim_x0, "initial state (JSON array file)")->required();
    simulate->add_option("--step", sim_step, "RK4 step")->required();
    simulate->add_option("--horizon", sim_horizon, "integration horizon")->required();
    simulate->add_option("--record-every", sim_record_every, "record every k-th step");
    simulate->add_option("--out", sim_out, "output trajectory CSV")->required();

    // plan
    auto* plan = app.add_subcommand("plan", "derive cutoffs, sampling set and recovery matrix");
    ModelFlags plan_model;
    plan_model.attach(plan);
    PlanFlags pf;
    std::string plan_net, plan_out, plan_x0_out, plan_basis_out;
    double plan_omega = -1.0;
    int plan_band_size = 0;
    plan->add_option("--net", plan_net, "network JSON")->required();
    plan->add_option("--omega", plan_omega, "bandwidth of the initialization");
    plan->add_option("--band-size", plan_band_size, "target number of band modes");
    plan->add_flag("--arbitrary", pf.arbitrary, "arbitrary (non-bandlimited) initialization");
    plan->add_option("--budget", pf.budget, "spectral budget for arbitrary initialization");
    plan->add_option("--size", pf.size, "graph sample size |S| (default: band size)");
    plan->add_option("--amplitude", pf.amplitude, "||y(0)||");
    double plan_amp_rel = 0.0;
    plan->add_option("--amplitude-rel", plan_amp_rel, "||y(0)|| relative to ||x_inf||");
    plan->add_option("--epsilon-rel", pf.epsilon_rel, "epsilon relative to ||y(0)||");
    double plan_eps_abs = 0.0;
    plan->add_option("--epsilon-abs", plan_eps_abs, "absolute epsilon threshold");
    plan->add_option("--fs-mult", pf.fs_mult, "F_s as a multiple of Omega_c / pi");
    plan->add_option("--seed", pf.seed, "seed for the initialization");
    plan->add_flag("--allow-undersampled", pf.allow_undersampled,
                   "allow |S| below the band size");
    plan->add_option("--out", plan_out, "output plan JSON")->required();
    plan->add_option("--x0-out", plan_x0_out, "also write x(0) = x_inf + y(0)");
    plan->add_option("--basis-out", plan_basis_out, "also write the spectral diagnostics");

    // sample
    auto* sample = app.add_subcommand("sample", "extract uniform samples on the plan's nodes");
    std::string sample_traj, sample_plan, sample_out;
    double sample_fs = 0.0;
    sample->add_option("--traj", sample_traj, "trajectory CSV")->required();
    sample->add_option("--plan", sample_plan, "plan JSON")->required();
    sample->add_option("--fs", sample_fs, "sampling rate (default: plan F_s)");
    sample->add_option("--out", sample_out, "output samples CSV")->required();

    // recover
    auto* recover = app.add_subcommand("recover", "joint time-graph recovery from samples");
    std::string rec_plan, rec_samples, rec_out;
    double rec_dt = 0.0, rec_t_end = 0.0;
    bool rec_x_domain = false;
    recover->add_option("--plan", rec_plan, "plan JSON")->required();
    recover->add_option("--samples", rec_samples, "samples CSV")->required();
    recover->add_option("--dt", rec_dt, "evaluation step (default: pi / (4 Omega_c))");
    recover->add_option("--t-end", rec_t_end, "evaluation horizon (default: sample horizon)");
    recover->add_flag("--x-domain", rec_x_domain, "emit x(t) instead of y(t)");
    recover->add_option("--out", rec_out, "output trajectory CSV")->required();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "RMSE sweep over (F_s, |S|)");
    std::string sweep_config, sweep_preset, sweep_scale = "desk", sweep_configs_dir = "configs";
    std::string sweep_out_dir;
    int sweep_jobs = 1;
    sweep->add_option("--config", sweep_config, "sweep config JSON");
    sweep->add_option("--preset", sweep_preset, "preset name: fig3, fig4 or fig5");
    sweep->add_option("--scale", sweep_scale, "preset scale: desk or paper");
    sweep->add_option("--configs-dir", sweep_configs_dir, "directory holding the presets");
    sweep->add_option("--out-dir", sweep_out_dir, "output directory")->required();
    sweep->add_option("--jobs", sweep_jobs, "worker threads for independent cells");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help / --version
        }
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) {
            return cmd_gen(gen_n, gen_p, gen_seed, gen_out);
        }
        if (simulate->parsed()) {
            return cmd_simulate(sim_net, sim_model, sim_x0, sim_step, sim_horizon,
                                sim_record_every, sim_out);
        }
        if (plan->parsed()) {
            if (plan_omega >= 0.0) pf.omega = plan_omega;
            if (plan_band_size > 0) pf.band_size = plan_band_size;
            if (plan_amp_rel > 0.0) pf.amplitude_rel = plan_amp_rel;
            if (plan_eps_abs > 0.0) pf.epsilon_abs = plan_eps_abs;
            return cmd_plan(plan_net, plan_model, pf, plan_out, plan_x0_out, plan_basis_out);
        }
        if (sample->parsed()) {
            return cmd_sample(sample_traj, sample_plan, sample_fs, sample_out);
        }
        if (recover->parsed()) {
            return cmd_recover(rec_plan, rec_samples, rec_dt, rec_t_end, rec_x_domain,
                               rec_out);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_config, sweep_preset, sweep_scale, sweep_configs_dir,
                             sweep_out_dir, sweep_jobs);
        }
    } catch (const dgs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
