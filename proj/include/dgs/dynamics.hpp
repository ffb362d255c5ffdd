#pragma once

#include "dgs/network.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>

namespace dgs {

enum class ModelKind { pd, mak };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& s);

/// Networked ODE  dx_n/dt = f_n(x_n) + sum_m W(n,m) g(x_n, x_m)  with
///   pd : f = -B x_n        g = R x_m          (linear population dynamics)
///   mak: f = F - B x_n     g = R x_n x_m      (mass-action kinetics)
struct DynamicsModel {
    ModelKind kind = ModelKind::pd;
    double F = 0.0;
    double B = 1.0;
    double R = 0.0;

    static DynamicsModel pd(double B, double R);
    static DynamicsModel mak(double F, double B, double R);
};

Eigen::VectorXd derivative(const DynamicsModel& model, const Network& net,
                           const Eigen::VectorXd& x);

/// Analytic partial derivatives of the vector field at an arbitrary state.
Eigen::MatrixXd jacobian_matrix(const DynamicsModel& model, const Network& net,
                                const Eigen::VectorXd& x);

struct Trajectory {
    Eigen::VectorXd times;     ///< strictly increasing, times[0] == 0
    Eigen::MatrixXd states;    ///< row k = x(times[k])
    ModelKind kind = ModelKind::pd;
    double step = 0.0;
    std::uint64_t seed = 0;
};

/// Fixed-step classical RK4 from t = 0 to horizon inclusive, one recorded row
/// every record_every steps. Deterministic; throws StabilityError when any
/// state magnitude exceeds 1e12 (reporting the first bad time).
Trajectory integrate(const DynamicsModel& model, const Network& net,
                     const Eigen::VectorXd& x0, double step, double horizon,
                     int record_every = 1);

/// Low-level RK4 driver; on_step observes k = 0..n_steps at t = k * step.
void integrate_steps(const DynamicsModel& model, const Network& net,
                     const Eigen::VectorXd& x0, double step, long n_steps,
                     const std::function<void(long, double, const Eigen::VectorXd&)>& on_step);

struct EquilibriumOptions {
    double max_time = 1e4;              ///< coarse integration budget
    double coarse_step_scale = 0.05;    ///< RK step = scale / B
    int max_newton_iterations = 60;
    double coarse_tol_scale = 1e-10;    ///< stop coarse phase at ||f||_2 < scale * n
    double newton_tol = 1e-13;          ///< Newton target on ||f||_inf
};

/// Integrates toward the attractor, then Newton-refines the root of the
/// vector field. Throws ConvergenceError when no fixed point is reached.
Eigen::VectorXd find_equilibrium(const DynamicsModel& model, const Network& net,
                                 const Eigen::VectorXd& x0,
                                 const EquilibriumOptions& opts = {});

struct StabilityReport {
    Eigen::VectorXd equilibrium;
    double max_real_eigenvalue = 0.0;
    bool stable = false;            ///< max real part <= 1e-9
    double spectral_margin = 0.0;   ///< -max_real_eigenvalue
};

StabilityReport check_stability(const DynamicsModel& model, const Network& net,
                                const Eigen::VectorXd& equilibrium);

/// CSV with header t,x_0,...,x_{n-1}; 17 significant digits per value so a
/// load reproduces the doubles bit-exactly.
void save_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);
Trajectory load_trajectory_csv(const std::filesystem::path& path);

}  // namespace dgs
