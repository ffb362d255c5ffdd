#pragma once

#include "dgs/sampling.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dgs {

struct ModelSpec {
    ModelKind kind = ModelKind::pd;
    bool randomize = false;  ///< draw parameters, rescaling until stable
    double F = 1.0;
    double B = 1.0;
    double R = 0.05;
};

enum class InitMode { bandlimited, arbitrary };

/// Everything a sweep needs; unset optionals are materialized to defaults in
/// the run manifest so outputs are reproducible from the manifest alone.
struct SweepConfig {
    ModelSpec model;
    int n = 100;
    double edge_probability = 0.05;
    InitMode init_mode = InitMode::bandlimited;
    std::optional<double> omega;      ///< explicit bandwidth for the initialization
    std::optional<int> band_size;     ///< or: bandwidth chosen so the band has this many modes
    double amplitude = 1.0;
    std::optional<double> amplitude_rel;  ///< ||y0|| = amplitude_rel * ||x_inf|| instead
    double epsilon_rel = 1e-3;            ///< epsilon = epsilon_rel * ||y0||
    std::optional<double> epsilon_abs;
    std::vector<double> fs_multiples = {1.0, 2.0, 4.0, 8.0, 16.0};  ///< F_s = mult * Omega_c / pi
    std::vector<int> sample_sizes;    ///< graph sample sizes |S| (benchmark |S| = n is implicit)
    std::optional<double> horizon;    ///< override the evaluation horizon T
    std::optional<double> dt;         ///< override the evaluation step (default pi / (4 Omega_c))
    std::uint64_t seed = 1;
};

SweepConfig load_sweep_config(const std::filesystem::path& path);
void save_sweep_config(const SweepConfig& config, const std::filesystem::path& path);

/// Time- and node-averaged recovery error on the reference grid:
///   sqrt( dt/(N T) * sum_k ||recovered_k - reference_k||^2 ),  T = dt * #rows.
double rmse(const Trajectory& reference, const Eigen::MatrixXd& recovered);

/// Draws model parameters and shrinks the coupling until the linearization at
/// the equilibrium is stable.
DynamicsModel sample_stable_model(ModelKind kind, const Network& net, std::uint64_t seed);

/// Bandwidth whose strict distance cut captures the requested number of
/// smooth modes, widened past ties so conjugate pairs stay whole.
double omega_for_band_size(const SpectralBasis& basis, int band_size);

/// Seeded standard-normal vector rescaled to the requested 2-norm.
Eigen::VectorXd random_init(int n, double amplitude, std::uint64_t seed);

/// Shared per-sweep state: network, model, equilibrium, spectral basis,
/// initialization, cutoffs and grids. Immutable once prepared.
struct Instance {
    Network net;
    DynamicsModel model;
    Eigen::VectorXd x_inf;
    LinearOperator op;
    SpectralBasis basis;
    Eigen::VectorXd y0;       ///< deviation from equilibrium at t = 0
    Eigen::VectorXcd y0_coeffs;
    InitMode init_mode = InitMode::bandlimited;
    BandSpec band;            ///< bandlimited: N_{omega_c}; arbitrary: full spectrum
    double omega_c = 0.0;
    double Omega_c = 0.0;
    bool clamped = false;
    double epsilon = 0.0;
    double dt = 0.0;              ///< evaluation grid step
    double horizon_eval = 0.0;    ///< RMSE window [0, T)
    double horizon_sample = 0.0;  ///< sinc truncation horizon
    double decay_margin = 0.0;    ///< slowest decay rate driving both horizons
    std::uint64_t seed = 0;
};

Instance prepare_instance(const SweepConfig& config);

struct CellResult {
    double fs_multiple = 0.0;
    double F_s = 0.0;
    int sample_size = 0;
    double rmse = std::numeric_limits<double>::quiet_NaN();
    double omega_c = 0.0;
    double Omega_c = 0.0;
    double rank_certificate = 0.0;
    bool clamped = false;
    bool undersampled_graph = false;
    bool failed = false;
    std::string message;
    double wall_ms = 0.0;
};

/// Ground truth shared by every cell at one sampling rate: the reference
/// trajectory on the evaluation grid plus, when eval times are not a subset
/// of the sample grid, the full per-node sample matrix.
struct GroundTruth {
    double fs_multiple = 0.0;
    double F_s = 0.0;
    long eval_count = 0;
    Eigen::MatrixXd reference;       ///< eval_count x n, x domain
    bool eval_on_sample_grid = false;
    long eval_stride = 0;            ///< sample index step between eval points when on grid
    long sample_count = 0;           ///< K + 1
    Eigen::MatrixXd samples_full;    ///< (K+1) x n, y domain; empty when on grid
};

GroundTruth make_ground_truth(const Instance& instance, double fs_multiple);

/// Builds the cell's sampling plan (cached by callers across rates).
SamplingPlan build_cell_plan(const Instance& instance, int sample_size, double fs_multiple);

CellResult evaluate_cell(const Instance& instance, const GroundTruth& gt,
                         double fs_multiple, int sample_size,
                         const SamplingPlan* cached_plan = nullptr);

/// One-off cell evaluation straight from a config.
CellResult run_cell(const SweepConfig& config, double fs_multiple, int sample_size);

struct SweepResult {
    SweepConfig config;
    DynamicsModel model;          ///< resolved parameters
    double omega_c = 0.0;
    double Omega_c = 0.0;
    int band_size = 0;
    double condition_number = 0.0;
    double y0_norm = 0.0;
    double epsilon = 0.0;
    double dt = 0.0;
    double horizon_eval = 0.0;
    std::vector<CellResult> cells;  ///< F_s-major, |S| ascending, benchmark |S| = n last
};

/// Full grid plus the all-nodes benchmark column; failed cells are recorded,
/// not fatal. jobs bounds the worker pool; output order is canonical
/// regardless of scheduling.
SweepResult run_sweep(const SweepConfig& config, int jobs = 1);

/// Canonical CSV: F_s,S_size,rmse,omega_c,Omega_c,rank_cert,clamped,failed.
void save_sweep_csv(const SweepResult& result, const std::filesystem::path& path);

/// Plain-column files per figure panel (surface, rate curves, size curves).
void save_plot_data(const SweepResult& result, const std::filesystem::path& dir);

}  // namespace dgs
