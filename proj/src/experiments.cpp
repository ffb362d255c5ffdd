#include "dgs/experiments.hpp"

#include "dgs/common.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <thread>

namespace dgs {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::uint64_t kSeedModel = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kSeedInit = 0xD1B54A32D192ED03ULL;

double spectral_radius(const Eigen::MatrixXd& w) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(w, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) {
        throw SpectralError("eigenvalue computation failed on the adjacency matrix");
    }
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

void parallel_for(int jobs, int count, const std::function<void(int)>& fn) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (int j = 0; j < jobs; ++j) {
        workers.emplace_back([&]() {
            int i;
            while ((i = next.fetch_add(1)) < count) fn(i);
        });
    }
    for (auto& w : workers) w.join();
}

}  // namespace

double rmse(const Trajectory& reference, const Eigen::MatrixXd& recovered) {
    const long rows = reference.states.rows();
    const long cols = reference.states.cols();
    if (recovered.rows() != rows || recovered.cols() != cols) {
        throw DimensionError("rmse: recovered matrix is " + std::to_string(recovered.rows()) +
                             "x" + std::to_string(recovered.cols()) + ", reference is " +
                             std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (rows < 1) {
        throw DimensionError("rmse: empty grids");
    }
    double dt = 1.0;
    if (rows >= 2) {
        dt = reference.times(1) - reference.times(0);
        for (long k = 1; k < rows; ++k) {
            const double expected = static_cast<double>(k) * dt;
            if (std::abs(reference.times(k) - expected) > 1e-9 * std::max(1.0, expected)) {
                throw DimensionError("rmse: reference grid is not uniform at row " +
                                     std::to_string(k));
            }
        }
    }
    const double horizon = dt * static_cast<double>(rows);
    const double sum = (reference.states - recovered).squaredNorm();
    return std::sqrt(dt * sum / (static_cast<double>(cols) * horizon));
}

DynamicsModel sample_stable_model(ModelKind kind, const Network& net, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double rho = std::max(spectral_radius(net.adjacency), 1.0);

    if (kind == ModelKind::pd) {
        const double B = 0.5 + unit(rng);
        double R = (0.2 + 0.8 * unit(rng)) * 0.8 * B / rho;
        for (int attempt = 0; attempt < 60; ++attempt) {
            DynamicsModel model = DynamicsModel::pd(B, R);
            const StabilityReport report =
                check_stability(model, net, Eigen::VectorXd::Zero(net.n));
            if (report.stable) return model;
            R *= 0.5;
        }
        throw ConvergenceError("no stable pd parameters found after rescaling");
    }

    const double F = 0.5 + 1.5 * unit(rng);
    const double B = 0.8 + 0.7 * unit(rng);
    double R = -(0.05 + 0.35 * unit(rng)) * B * B / (F * rho);
    for (int attempt = 0; attempt < 60; ++attempt) {
        DynamicsModel model = DynamicsModel::mak(F, B, R);
        try {
            const Eigen::VectorXd x_inf = find_equilibrium(
                model, net, Eigen::VectorXd::Constant(net.n, F / B));
            const StabilityReport report = check_stability(model, net, x_inf);
            if (report.stable) return model;
        } catch (const Error&) {
            // fall through to rescale
        }
        R *= 0.5;
    }
    throw ConvergenceError("no stable mak parameters found after rescaling");
}

namespace {

DynamicsModel resolve_model(const SweepConfig& config, const Network& net) {
    if (config.model.randomize) {
        return sample_stable_model(config.model.kind, net, config.seed ^ kSeedModel);
    }
    if (config.model.kind == ModelKind::pd) {
        return DynamicsModel::pd(config.model.B, config.model.R);
    }
    return DynamicsModel::mak(config.model.F, config.model.B, config.model.R);
}

}  // namespace

double omega_for_band_size(const SpectralBasis& basis, int band_size) {
    const int n = basis.size();
    if (band_size < 1 || band_size > n) {
        throw ParameterError("band_size must lie in [1, n]");
    }
    std::vector<double> ds(n);
    for (int k = 0; k < n; ++k) ds[k] = basis.band_distance(basis.order[k]);
    int bs = band_size;
    while (bs < n && ds[bs] - ds[bs - 1] <= 1e-12 * std::max(1.0, ds[bs])) {
        ++bs;
    }
    if (bs >= n) {
        return std::max(ds[n - 1] + 1e-9, ds[n - 1] * (1.0 + 1e-9));
    }
    return 0.5 * (ds[bs - 1] + ds[bs]);
}

Eigen::VectorXd random_init(int n, double amplitude, std::uint64_t seed) {
    if (n < 1 || !(amplitude > 0.0)) {
        throw ParameterError("random_init requires n >= 1 and a positive amplitude");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = gauss(rng);
    const double norm = y.norm();
    if (!(norm > 0.0)) {
        throw ParameterError("random_init degenerated to the zero vector");
    }
    return y * (amplitude / norm);
}

Instance prepare_instance(const SweepConfig& config) {
    Instance inst;
    inst.seed = config.seed;
    inst.init_mode = config.init_mode;
    inst.net = generate_network(config.n, config.edge_probability, config.seed);
    inst.model = resolve_model(config, inst.net);

    const Eigen::VectorXd guess =
        inst.model.kind == ModelKind::pd
            ? Eigen::VectorXd::Zero(inst.net.n)
            : Eigen::VectorXd::Constant(inst.net.n, inst.model.F / inst.model.B);
    inst.x_inf = find_equilibrium(inst.model, inst.net, guess);
    const StabilityReport report = check_stability(inst.model, inst.net, inst.x_inf);
    if (!report.stable) {
        throw StabilityError("model is not stable at its equilibrium (max Re eigenvalue = " +
                             format_double(report.max_real_eigenvalue) + ")");
    }
    inst.op = jacobian(inst.model, inst.net, inst.x_inf);
    inst.basis = decompose(inst.op);

    double amplitude = config.amplitude;
    if (config.amplitude_rel) {
        const double base = inst.x_inf.norm();
        if (!(base > 0.0)) {
            throw ParameterError("amplitude_rel requires a nonzero equilibrium");
        }
        amplitude = *config.amplitude_rel * base;
    }

    if (config.init_mode == InitMode::bandlimited) {
        double omega;
        if (config.omega) {
            omega = *config.omega;
        } else {
            const int bs = config.band_size.value_or(std::max(1, config.n / 10));
            omega = omega_for_band_size(inst.basis, bs);
        }
        inst.y0 = make_bandlimited_init(inst.basis, omega, amplitude, config.seed ^ kSeedInit);
        const SupportResult support = support_bandwidth(inst.basis, inst.y0);
        inst.omega_c = support.omega_c;
        inst.band = band_frequency_set(inst.basis, inst.omega_c);
    } else {
        inst.y0 = random_init(inst.net.n, amplitude, config.seed ^ kSeedInit);
        double max_dist = 0.0;
        for (int j = 0; j < inst.basis.size(); ++j) {
            max_dist = std::max(max_dist, inst.basis.band_distance(j));
        }
        inst.omega_c = std::max(max_dist + 1e-12, max_dist * (1.0 + 1e-12));
        inst.band = band_frequency_set(inst.basis, inst.omega_c);
    }
    inst.y0_coeffs = gft(inst.basis, inst.y0);

    inst.epsilon = config.epsilon_abs ? *config.epsilon_abs
                                      : config.epsilon_rel * inst.y0.norm();
    const CutoffResult cutoff =
        config.init_mode == InitMode::bandlimited
            ? time_cutoff_bandlimited(inst.basis, inst.band, inst.y0.norm(), inst.epsilon)
            : time_cutoff_arbitrary(inst.basis, inst.y0.norm(), inst.epsilon);
    inst.Omega_c = cutoff.omega;
    inst.clamped = cutoff.clamped;
    if (!(inst.Omega_c > 0.0)) {
        throw PlanError("time cutoff collapsed to zero; nothing to sample");
    }

    inst.dt = config.dt.value_or(kPi / (4.0 * inst.Omega_c));

    double max_re = -std::numeric_limits<double>::infinity();
    for (int j : inst.band.indices) {
        max_re = std::max(max_re, inst.basis.eigenvalues(j).real());
    }
    inst.decay_margin = -max_re;
    if (config.horizon) {
        inst.horizon_eval = *config.horizon;
    } else {
        if (!(inst.decay_margin > 1e-9)) {
            throw StabilityError("marginally stable band; specify an explicit horizon");
        }
        inst.horizon_eval = std::log(1e10) / inst.decay_margin;
    }
    inst.horizon_sample = inst.horizon_eval;
    if (inst.decay_margin > 1e-9) {
        inst.horizon_sample =
            std::max(inst.horizon_sample, std::log(1e12) / inst.decay_margin);
    }
    return inst;
}

GroundTruth make_ground_truth(const Instance& inst, double fs_multiple) {
    if (!(fs_multiple > 0.0)) {
        throw ParameterError("F_s multiple must be positive");
    }
    GroundTruth gt;
    gt.fs_multiple = fs_multiple;
    gt.F_s = fs_multiple * inst.Omega_c / kPi;
    const double dt = inst.dt;
    const double ds = 1.0 / gt.F_s;
    const int n = inst.net.n;

    gt.eval_count = std::max<long>(2, static_cast<long>(std::floor(inst.horizon_eval / dt + 1e-9)));
    long K = static_cast<long>(std::ceil(inst.horizon_sample * gt.F_s - 1e-9));
    K = std::max(K, static_cast<long>(std::ceil((gt.eval_count - 1) * dt * gt.F_s)) + 4);
    gt.sample_count = K + 1;

    const double rate_scale = std::max(inst.basis.lambda_max_mag, inst.model.B);
    const Eigen::VectorXd x0 = inst.x_inf + inst.y0;
    gt.reference.resize(gt.eval_count, n);

    const double ratio = dt * gt.F_s;        // sample indices per eval step
    const double inv_ratio = 1.0 / ratio;    // eval indices per sample step
    auto near_integer = [](double v) {
        return std::abs(v - std::nearbyint(v)) < 1e-9 * std::max(1.0, std::abs(v));
    };

    if (near_integer(ratio) && std::nearbyint(ratio) >= 1.0) {
        // Evaluation times sit on the sample grid: one integration on the
        // sample grid serves both; cells read samples out of the reference.
        gt.eval_on_sample_grid = true;
        gt.eval_stride = static_cast<long>(std::nearbyint(ratio));
        const long n_grid = std::max(K, (gt.eval_count - 1) * gt.eval_stride);
        const int sub = std::max(1, static_cast<int>(std::ceil(ds * rate_scale / 0.02)));
        integrate_steps(inst.model, inst.net, x0, ds / sub, n_grid * sub,
                        [&](long k, double, const Eigen::VectorXd& x) {
                            if (k % sub != 0) return;
                            const long g = k / sub;
                            if (g % gt.eval_stride == 0) {
                                const long row = g / gt.eval_stride;
                                if (row < gt.eval_count) gt.reference.row(row) = x.transpose();
                            }
                        });
        return gt;
    }

    if (near_integer(inv_ratio) && std::nearbyint(inv_ratio) >= 1.0) {
        // Sample times sit on the evaluation grid: integrate once on the
        // evaluation grid and pull sample rows from it.
        const long q = static_cast<long>(std::nearbyint(inv_ratio));
        const long n_grid = std::max(gt.eval_count - 1, K * q);
        const int sub = std::max(1, static_cast<int>(std::ceil(dt * rate_scale / 0.02)));
        gt.samples_full.resize(gt.sample_count, n);
        integrate_steps(inst.model, inst.net, x0, dt / sub, n_grid * sub,
                        [&](long k, double, const Eigen::VectorXd& x) {
                            if (k % sub != 0) return;
                            const long g = k / sub;
                            if (g < gt.eval_count) gt.reference.row(g) = x.transpose();
                            if (g % q == 0) {
                                const long srow = g / q;
                                if (srow < gt.sample_count) {
                                    gt.samples_full.row(srow) =
                                        (x - inst.x_inf).transpose();
                                }
                            }
                        });
        return gt;
    }

    // Incommensurate grids: two integrations from the same initial state.
    {
        const int sub = std::max(1, static_cast<int>(std::ceil(dt * rate_scale / 0.02)));
        integrate_steps(inst.model, inst.net, x0, dt / sub, (gt.eval_count - 1) * sub,
                        [&](long k, double, const Eigen::VectorXd& x) {
                            if (k % sub != 0) return;
                            gt.reference.row(k / sub) = x.transpose();
                        });
    }
    {
        const int sub = std::max(1, static_cast<int>(std::ceil(ds * rate_scale / 0.02)));
        gt.samples_full.resize(gt.sample_count, n);
        integrate_steps(inst.model, inst.net, x0, ds / sub, K * sub,
                        [&](long k, double, const Eigen::VectorXd& x) {
                            if (k % sub != 0) return;
                            gt.samples_full.row(k / sub) = (x - inst.x_inf).transpose();
                        });
    }
    return gt;
}

SamplingPlan build_cell_plan(const Instance& inst, int sample_size, double fs_multiple) {
    SamplingPlan plan;
    if (inst.init_mode == InitMode::arbitrary && sample_size < inst.net.n) {
        plan.band = arbitrary_init_projection(inst.basis, inst.y0, sample_size).band;
    } else {
        plan.band = inst.band;
    }
    const SelectionResult sel =
        select_sampling_set(inst.basis, plan.band, sample_size, /*allow_undersampled=*/true);
    plan.nodes = sel.nodes;
    plan.rank_certificate = sel.certificate;
    plan.phi = reconstruction_matrix(inst.basis, plan.nodes, plan.band);
    plan.omega_c = inst.omega_c;
    plan.Omega_c = inst.Omega_c;
    plan.F_s = fs_multiple * inst.Omega_c / kPi;
    plan.epsilon = inst.epsilon;
    plan.clamped = inst.clamped;
    plan.undersampled_graph =
        sample_size < static_cast<int>(plan.band.indices.size());
    plan.undersampled_time = plan.F_s < inst.Omega_c / kPi * (1.0 - 1e-12);
    plan.equilibrium = inst.x_inf;
    return plan;
}

namespace {

/// Table of sinc(frac + z) for z in [-K, K], stored at index z + K.
Eigen::VectorXd sinc_kernel(double frac, long K) {
    Eigen::VectorXd kern(2 * K + 1);
    const double s = std::sin(kPi * frac);
    for (long i = 0; i < 2 * K + 1; ++i) {
        const long z = i - K;
        const double sign = (std::llabs(z) % 2 == 0) ? 1.0 : -1.0;
        kern(i) = sign * s / (kPi * (frac + static_cast<double>(z)));
    }
    return kern;
}

}  // namespace

CellResult evaluate_cell(const Instance& inst, const GroundTruth& gt, double fs_multiple,
                         int sample_size, const SamplingPlan* cached_plan) {
    const auto start = std::chrono::steady_clock::now();
    CellResult cell;
    cell.fs_multiple = fs_multiple;
    cell.F_s = gt.F_s;
    cell.sample_size = sample_size;
    cell.omega_c = inst.omega_c;
    cell.Omega_c = inst.Omega_c;
    cell.clamped = inst.clamped;
    try {
        SamplingPlan local;
        const SamplingPlan* plan = cached_plan;
        if (plan == nullptr) {
            local = build_cell_plan(inst, sample_size, fs_multiple);
            plan = &local;
        }
        cell.rank_certificate = plan->rank_certificate;
        cell.undersampled_graph = plan->undersampled_graph;

        const int n = inst.net.n;
        const long s = static_cast<long>(plan->nodes.size());
        Eigen::VectorXd eq_s(s);
        for (long c = 0; c < s; ++c) eq_s(c) = inst.x_inf(plan->nodes[c]);

        double err_sq = 0.0;
        Eigen::VectorXd y_s(s), recovered(n);

        if (gt.eval_on_sample_grid) {
            for (long m = 0; m < gt.eval_count; ++m) {
                for (long c = 0; c < s; ++c) {
                    y_s(c) = gt.reference(m, plan->nodes[c]) - eq_s(c);
                }
                recovered = plan->phi * y_s + inst.x_inf;
                err_sq += (recovered - gt.reference.row(m).transpose()).squaredNorm();
            }
        } else {
            Eigen::MatrixXd rec_s(gt.sample_count, s);
            for (long c = 0; c < s; ++c) {
                rec_s.col(c) = gt.samples_full.col(plan->nodes[c]);
            }
            const long K = gt.sample_count - 1;
            std::map<long long, Eigen::VectorXd> kernels;
            Eigen::VectorXd w(gt.sample_count);
            for (long m = 0; m < gt.eval_count; ++m) {
                const double u = gt.F_s * (static_cast<double>(m) * inst.dt);
                const double r = std::nearbyint(u);
                if (std::abs(u - r) < 1e-9 * std::max(1.0, u)) {
                    const long idx = static_cast<long>(r);
                    y_s = rec_s.row(idx).transpose();
                } else {
                    const long j = static_cast<long>(std::floor(u));
                    const double frac = u - static_cast<double>(j);
                    const long long key = std::llround(frac * 1e12);
                    auto it = kernels.find(key);
                    if (it == kernels.end()) {
                        if (kernels.size() > 64) kernels.clear();
                        it = kernels.emplace(key, sinc_kernel(frac, K)).first;
                    }
                    w = it->second.segment(j, K + 1).reverse();
                    y_s = rec_s.transpose() * w;
                }
                recovered = plan->phi * y_s + inst.x_inf;
                err_sq += (recovered - gt.reference.row(m).transpose()).squaredNorm();
            }
        }
        cell.rmse = std::sqrt(err_sq / (static_cast<double>(n) *
                                        static_cast<double>(gt.eval_count)));
    } catch (const Error& e) {
        cell.failed = true;
        cell.message = e.what();
    } catch (const std::exception& e) {
        cell.failed = true;
        cell.message = std::string("unexpected: ") + e.what();
    }
    cell.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    return cell;
}

CellResult run_cell(const SweepConfig& config, double fs_multiple, int sample_size) {
    const Instance inst = prepare_instance(config);
    const GroundTruth gt = make_ground_truth(inst, fs_multiple);
    return evaluate_cell(inst, gt, fs_multiple, sample_size);
}

SweepResult run_sweep(const SweepConfig& config, int jobs) {
    if (config.fs_multiples.empty()) {
        throw ParameterError("sweep requires a non-empty F_s grid");
    }
    const Instance inst = prepare_instance(config);

    SweepResult result;
    result.config = config;
    result.model = inst.model;
    result.omega_c = inst.omega_c;
    result.Omega_c = inst.Omega_c;
    result.band_size = static_cast<int>(inst.band.indices.size());
    result.condition_number = inst.basis.condition_number;
    result.y0_norm = inst.y0.norm();
    result.epsilon = inst.epsilon;
    result.dt = inst.dt;
    result.horizon_eval = inst.horizon_eval;

    std::vector<double> multiples = config.fs_multiples;
    std::sort(multiples.begin(), multiples.end());
    multiples.erase(std::unique(multiples.begin(), multiples.end()), multiples.end());

    std::vector<int> sizes = config.sample_sizes;
    if (sizes.empty()) {
        sizes = {static_cast<int>(inst.band.indices.size())};
    }
    sizes.push_back(inst.net.n);  // the all-nodes benchmark column
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

    // Plans do not depend on the sampling rate; build them once per size.
    const int n_sizes = static_cast<int>(sizes.size());
    std::vector<SamplingPlan> plans(n_sizes);
    std::vector<std::string> plan_errors(n_sizes);
    parallel_for(jobs, n_sizes, [&](int i) {
        try {
            plans[i] = build_cell_plan(inst, sizes[i], multiples.front());
        } catch (const Error& e) {
            plan_errors[i] = e.what();
        } catch (const std::exception& e) {
            plan_errors[i] = std::string("unexpected: ") + e.what();
        }
    });

    for (double mult : multiples) {
        GroundTruth gt;
        std::string gt_error;
        try {
            gt = make_ground_truth(inst, mult);
        } catch (const Error& e) {
            gt_error = e.what();
        } catch (const std::exception& e) {
            gt_error = std::string("unexpected: ") + e.what();
        }
        std::vector<CellResult> group(n_sizes);
        parallel_for(jobs, n_sizes, [&](int i) {
            CellResult cell;
            cell.fs_multiple = mult;
            cell.F_s = mult * inst.Omega_c / kPi;
            cell.sample_size = sizes[i];
            cell.omega_c = inst.omega_c;
            cell.Omega_c = inst.Omega_c;
            cell.clamped = inst.clamped;
            if (!gt_error.empty()) {
                cell.failed = true;
                cell.message = gt_error;
            } else if (!plan_errors[i].empty()) {
                cell.failed = true;
                cell.message = plan_errors[i];
            } else {
                SamplingPlan plan = plans[i];
                plan.F_s = cell.F_s;
                plan.undersampled_time = plan.F_s < inst.Omega_c / kPi * (1.0 - 1e-12);
                cell = evaluate_cell(inst, gt, mult, sizes[i], &plan);
            }
            group[i] = cell;
        });
        for (auto& cell : group) result.cells.push_back(std::move(cell));
    }
    return result;
}

void save_sweep_csv(const SweepResult& result, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write sweep file: " + path.string());
    }
    out << "F_s,S_size,rmse,omega_c,Omega_c,rank_cert,clamped,failed\n";
    for (const auto& cell : result.cells) {
        out << format_double(cell.F_s) << "," << cell.sample_size << ","
            << format_double(cell.rmse) << "," << format_double(cell.omega_c) << ","
            << format_double(cell.Omega_c) << "," << format_double(cell.rank_certificate)
            << "," << (cell.clamped ? 1 : 0) << "," << (cell.failed ? 1 : 0) << "\n";
    }
    if (!out) {
        throw IoError("write failure for sweep file: " + path.string());
    }
}

void save_plot_data(const SweepResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "panel_a.dat");
        out << "# F_s S_size rmse\n";
        for (const auto& cell : result.cells) {
            if (cell.failed) continue;
            out << format_double(cell.F_s) << " " << cell.sample_size << " "
                << format_double(cell.rmse) << "\n";
        }
    }
    std::set<int> sizes;
    std::set<double> mults;
    for (const auto& cell : result.cells) {
        sizes.insert(cell.sample_size);
        mults.insert(cell.fs_multiple);
    }
    for (int size : sizes) {
        std::ofstream out(dir / ("panel_b_S" + std::to_string(size) + ".dat"));
        out << "# F_s rmse (|S| = " << size << ")\n";
        for (const auto& cell : result.cells) {
            if (cell.failed || cell.sample_size != size) continue;
            out << format_double(cell.F_s) << " " << format_double(cell.rmse) << "\n";
        }
    }
    int fs_index = 0;
    for (double mult : mults) {
        std::ofstream out(dir / ("panel_c_Fs" + std::to_string(fs_index++) + ".dat"));
        out << "# S_size rmse (F_s = " << format_double(mult) << " * Omega_c / pi)\n";
        for (const auto& cell : result.cells) {
            if (cell.failed || cell.fs_multiple != mult) continue;
            out << cell.sample_size << " " << format_double(cell.rmse) << "\n";
        }
    }
}

namespace {

nlohmann::json config_to_json(const SweepConfig& config) {
    nlohmann::json doc;
    doc["model"] = {{"kind", to_string(config.model.kind)},
                    {"randomize", config.model.randomize},
                    {"F", config.model.F},
                    {"B", config.model.B},
                    {"R", config.model.R}};
    doc["n"] = config.n;
    doc["edge_probability"] = config.edge_probability;
    nlohmann::json init;
    init["mode"] = config.init_mode == InitMode::bandlimited ? "bandlimited" : "arbitrary";
    if (config.omega) init["omega"] = *config.omega;
    if (config.band_size) init["band_size"] = *config.band_size;
    init["amplitude"] = config.amplitude;
    if (config.amplitude_rel) init["amplitude_rel"] = *config.amplitude_rel;
    doc["init"] = std::move(init);
    doc["epsilon_rel"] = config.epsilon_rel;
    if (config.epsilon_abs) doc["epsilon_abs"] = *config.epsilon_abs;
    doc["fs_multiples"] = config.fs_multiples;
    doc["sample_sizes"] = config.sample_sizes;
    if (config.horizon) doc["horizon"] = *config.horizon;
    if (config.dt) doc["dt"] = *config.dt;
    doc["seed"] = config.seed;
    return doc;
}

}  // namespace

void save_sweep_config(const SweepConfig& config, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write config file: " + path.string());
    }
    out << config_to_json(config).dump(2) << "\n";
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file: " + path.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    SweepConfig config;
    try {
        const auto& model = doc.at("model");
        config.model.kind = model_kind_from_string(model.at("kind").get<std::string>());
        config.model.randomize = model.value("randomize", false);
        config.model.F = model.value("F", 1.0);
        config.model.B = model.value("B", 1.0);
        config.model.R = model.value("R", 0.05);
        config.n = doc.at("n").get<int>();
        config.edge_probability = doc.at("edge_probability").get<double>();
        const auto& init = doc.at("init");
        const std::string mode = init.at("mode").get<std::string>();
        if (mode == "bandlimited") {
            config.init_mode = InitMode::bandlimited;
        } else if (mode == "arbitrary") {
            config.init_mode = InitMode::arbitrary;
        } else {
            throw FormatError("init mode must be bandlimited or arbitrary, got '" + mode + "'");
        }
        if (init.contains("omega")) config.omega = init["omega"].get<double>();
        if (init.contains("band_size")) config.band_size = init["band_size"].get<int>();
        config.amplitude = init.value("amplitude", 1.0);
        if (init.contains("amplitude_rel")) {
            config.amplitude_rel = init["amplitude_rel"].get<double>();
        }
        config.epsilon_rel = doc.value("epsilon_rel", 1e-3);
        if (doc.contains("epsilon_abs")) config.epsilon_abs = doc["epsilon_abs"].get<double>();
        if (doc.contains("fs_multiples")) {
            config.fs_multiples = doc["fs_multiples"].get<std::vector<double>>();
        }
        config.sample_sizes = doc.value("sample_sizes", std::vector<int>{});
        if (doc.contains("horizon")) config.horizon = doc["horizon"].get<double>();
        if (doc.contains("dt")) config.dt = doc["dt"].get<double>();
        config.seed = doc.value("seed", std::uint64_t{1});
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("config file " + path.string() + " is malformed: " + e.what());
    }
    return config;
}

}  // namespace dgs
