#include "dgs/dynamics.hpp"

#include "dgs/common.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <fstream>
#include <sstream>

namespace dgs {

std::string to_string(ModelKind kind) {
    return kind == ModelKind::pd ? "pd" : "mak";
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "pd") return ModelKind::pd;
    if (s == "mak") return ModelKind::mak;
    throw ParameterError("unknown model kind '" + s + "' (expected pd or mak)");
}

DynamicsModel DynamicsModel::pd(double B, double R) {
    if (!(B > 0.0) || !std::isfinite(B) || !std::isfinite(R)) {
        throw ParameterError("pd model requires finite parameters with B > 0");
    }
    DynamicsModel m;
    m.kind = ModelKind::pd;
    m.B = B;
    m.R = R;
    return m;
}

DynamicsModel DynamicsModel::mak(double F, double B, double R) {
    if (!(B > 0.0) || !(F >= 0.0) || !std::isfinite(F) || !std::isfinite(B) ||
        !std::isfinite(R)) {
        throw ParameterError("mak model requires finite parameters with B > 0 and F >= 0");
    }
    DynamicsModel m;
    m.kind = ModelKind::mak;
    m.F = F;
    m.B = B;
    m.R = R;
    return m;
}

namespace {

void check_state(const Network& net, const Eigen::VectorXd& x, const char* who) {
    if (x.size() != net.n) {
        throw DimensionError(std::string(who) + ": state has length " +
                             std::to_string(x.size()) + ", network has n = " +
                             std::to_string(net.n));
    }
    if (!x.allFinite()) {
        throw ParameterError(std::string(who) + ": state contains non-finite values");
    }
}

}  // namespace

Eigen::VectorXd derivative(const DynamicsModel& model, const Network& net,
                           const Eigen::VectorXd& x) {
    check_state(net, x, "derivative");
    if (model.kind == ModelKind::pd) {
        return -model.B * x + model.R * (net.adjacency * x);
    }
    // mak: F - B x_n + R x_n * sum_m W(n,m) x_m
    Eigen::VectorXd coupled = net.adjacency * x;
    return Eigen::VectorXd::Constant(net.n, model.F) - model.B * x +
           model.R * x.cwiseProduct(coupled);
}

Eigen::MatrixXd jacobian_matrix(const DynamicsModel& model, const Network& net,
                                const Eigen::VectorXd& x) {
    check_state(net, x, "jacobian_matrix");
    const int n = net.n;
    if (model.kind == ModelKind::pd) {
        Eigen::MatrixXd a = model.R * net.adjacency;
        a.diagonal().array() -= model.B;
        return a;
    }
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a(i, j) = model.R * net.adjacency(i, j) * x(i);
        }
    }
    Eigen::VectorXd coupled = net.adjacency * x;
    for (int i = 0; i < n; ++i) {
        a(i, i) = -model.B + model.R * coupled(i);
    }
    return a;
}

void integrate_steps(const DynamicsModel& model, const Network& net,
                     const Eigen::VectorXd& x0, double step, long n_steps,
                     const std::function<void(long, double, const Eigen::VectorXd&)>& on_step) {
    check_state(net, x0, "integrate");
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw ParameterError("integration step must be positive and finite");
    }
    if (n_steps < 0) {
        throw ParameterError("integration step count must be non-negative");
    }
    constexpr double kDivergenceGuard = 1e12;
    Eigen::VectorXd x = x0;
    Eigen::VectorXd k1(net.n), k2(net.n), k3(net.n), k4(net.n);
    on_step(0, 0.0, x);
    for (long k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * step;
        k1 = derivative(model, net, x);
        k2 = derivative(model, net, x + (0.5 * step) * k1);
        k3 = derivative(model, net, x + (0.5 * step) * k2);
        k4 = derivative(model, net, x + step * k3);
        x += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double t_next = static_cast<double>(k + 1) * step;
        if (!x.allFinite() || x.cwiseAbs().maxCoeff() > kDivergenceGuard) {
            throw StabilityError("trajectory diverged (|x| > 1e12 or non-finite) at t = " +
                                 format_double(t_next) + " after t = " + format_double(t));
        }
        on_step(k + 1, t_next, x);
    }
}

Trajectory integrate(const DynamicsModel& model, const Network& net,
                     const Eigen::VectorXd& x0, double step, double horizon,
                     int record_every) {
    if (!(horizon > 0.0) || !(step > 0.0) || step > horizon * (1.0 + 1e-12)) {
        throw ParameterError("integrate requires 0 < step <= horizon");
    }
    if (record_every < 1) {
        throw ParameterError("record_every must be >= 1");
    }
    const long n_steps = static_cast<long>(std::floor(horizon / step + 1e-9));
    const long n_records = n_steps / record_every + 1;

    Trajectory traj;
    traj.kind = model.kind;
    traj.step = step;
    traj.times.resize(n_records);
    traj.states.resize(n_records, net.n);
    integrate_steps(model, net, x0, step, n_steps,
                    [&](long k, double t, const Eigen::VectorXd& x) {
                        if (k % record_every != 0) return;
                        const long row = k / record_every;
                        if (row >= n_records) return;
                        traj.times(row) = t;
                        traj.states.row(row) = x.transpose();
                    });
    return traj;
}

Eigen::VectorXd find_equilibrium(const DynamicsModel& model, const Network& net,
                                 const Eigen::VectorXd& x0,
                                 const EquilibriumOptions& opts) {
    check_state(net, x0, "find_equilibrium");
    const double coarse_tol = opts.coarse_tol_scale * net.n;
    const double step = opts.coarse_step_scale / model.B;

    Eigen::VectorXd x = x0;
    double t = 0.0;
    Eigen::VectorXd f = derivative(model, net, x);
    const long chunk = 256;
    while (f.norm() >= coarse_tol && t < opts.max_time) {
        Eigen::VectorXd last = x;
        integrate_steps(model, net, last, step, chunk,
                        [&](long, double, const Eigen::VectorXd& xs) { x = xs; });
        t += step * chunk;
        f = derivative(model, net, x);
    }

    // Newton refinement on the root of the vector field.
    for (int it = 0; it < opts.max_newton_iterations; ++it) {
        f = derivative(model, net, x);
        if (f.lpNorm<Eigen::Infinity>() < opts.newton_tol) {
            return x;
        }
        Eigen::MatrixXd j = jacobian_matrix(model, net, x);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(j);
        Eigen::VectorXd dx = lu.solve(f);
        if (!dx.allFinite()) {
            throw ConvergenceError("Newton step became non-finite while refining equilibrium");
        }
        x -= dx;
    }
    f = derivative(model, net, x);
    if (f.lpNorm<Eigen::Infinity>() < opts.newton_tol) {
        return x;
    }
    throw ConvergenceError(
        "no equilibrium found: residual " + format_double(f.lpNorm<Eigen::Infinity>()) +
        " after integration to t = " + format_double(t) + " and Newton refinement");
}

StabilityReport check_stability(const DynamicsModel& model, const Network& net,
                                const Eigen::VectorXd& equilibrium) {
    check_state(net, equilibrium, "check_stability");
    Eigen::MatrixXd a = jacobian_matrix(model, net, equilibrium);
    Eigen::EigenSolver<Eigen::MatrixXd> es(a, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) {
        throw SpectralError("eigenvalue computation failed in check_stability");
    }
    StabilityReport report;
    report.equilibrium = equilibrium;
    report.max_real_eigenvalue = es.eigenvalues().real().maxCoeff();
    report.stable = report.max_real_eigenvalue <= 1e-9;
    report.spectral_margin = -report.max_real_eigenvalue;
    return report;
}

void save_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write trajectory file: " + path.string());
    }
    const int n = static_cast<int>(traj.states.cols());
    out << "t";
    for (int i = 0; i < n; ++i) out << ",x_" << i;
    out << "\n";
    for (long k = 0; k < traj.times.size(); ++k) {
        out << format_double(traj.times(k));
        for (int i = 0; i < n; ++i) out << "," << format_double(traj.states(k, i));
        out << "\n";
    }
    if (!out) {
        throw IoError("write failure for trajectory file: " + path.string());
    }
}

Trajectory load_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open trajectory file: " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,", 0) != 0) {
        throw FormatError("trajectory file must start with header t,x_0,...: " + path.string());
    }
    int n = 0;
    for (char c : line) {
        if (c == ',') ++n;
    }
    std::vector<double> times;
    std::vector<double> values;
    long row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        int col = 0;
        while (std::getline(ss, cell, ',')) {
            double v = 0.0;
            try {
                v = std::stod(cell);
            } catch (const std::exception&) {
                throw FormatError("trajectory row " + std::to_string(row) +
                                  " has a non-numeric cell '" + cell + "'");
            }
            if (col == 0) {
                times.push_back(v);
            } else {
                values.push_back(v);
            }
            ++col;
        }
        if (col != n + 1) {
            throw FormatError("trajectory row " + std::to_string(row) + " has " +
                              std::to_string(col) + " cells, expected " + std::to_string(n + 1));
        }
        ++row;
    }
    if (times.empty()) {
        throw FormatError("trajectory file has no data rows: " + path.string());
    }
    Trajectory traj;
    traj.times = Eigen::Map<Eigen::VectorXd>(times.data(), static_cast<long>(times.size()));
    traj.states = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                           Eigen::RowMajor>>(values.data(),
                                                             static_cast<long>(times.size()), n);
    if (traj.times(0) != 0.0) {
        throw FormatError("trajectory must start at t = 0");
    }
    for (long k = 1; k < traj.times.size(); ++k) {
        if (!(traj.times(k) > traj.times(k - 1))) {
            throw FormatError("trajectory times must be strictly increasing");
        }
    }
    if (!traj.states.allFinite()) {
        throw FormatError("trajectory contains non-finite states");
    }
    if (traj.times.size() >= 2) {
        traj.step = traj.times(1) - traj.times(0);
    }
    return traj;
}

}  // namespace dgs
