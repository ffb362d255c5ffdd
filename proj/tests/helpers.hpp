#pragma once

#include "dgs/dynamics.hpp"
#include "dgs/network.hpp"
#include "dgs/spectral.hpp"

#include <Eigen/Dense>

#include <complex>
#include <filesystem>
#include <functional>
#include <random>
#include <string>

namespace testutil {

/// Scratch directory removed on destruction.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("dgs_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::filesystem::path operator/(const std::string& name) const { return path / name; }
};

/// Element-wise loop evaluation of the two model vector fields; kept free of
/// matrix expressions so it is an independent oracle for derivative().
inline Eigen::VectorXd derivative_oracle(const dgs::DynamicsModel& model,
                                         const dgs::Network& net, const Eigen::VectorXd& x) {
    Eigen::VectorXd out(net.n);
    for (int i = 0; i < net.n; ++i) {
        double coupling = 0.0;
        for (int m = 0; m < net.n; ++m) {
            if (model.kind == dgs::ModelKind::pd) {
                coupling += net.adjacency(i, m) * x(m);
            } else {
                coupling += net.adjacency(i, m) * x(i) * x(m);
            }
        }
        if (model.kind == dgs::ModelKind::pd) {
            out(i) = -model.B * x(i) + model.R * coupling;
        } else {
            out(i) = model.F - model.B * x(i) + model.R * coupling;
        }
    }
    return out;
}

/// Exact solution of dy/dt = A y through the eigensystem.
inline Eigen::VectorXd linear_solution(const dgs::SpectralBasis& basis,
                                       const Eigen::VectorXcd& y0_coeffs, double t) {
    Eigen::VectorXcd scaled(basis.size());
    for (int j = 0; j < basis.size(); ++j) {
        scaled(j) = std::exp(basis.eigenvalues(j) * t) * y0_coeffs(j);
    }
    return (basis.basis * scaled).real();
}

/// Adaptive Simpson quadrature for complex integrands on [a, b].
inline std::complex<double> simpson_adaptive(
    const std::function<std::complex<double>(double)>& f, double a, double b, double tol,
    int depth = 48) {
    struct Impl {
        const std::function<std::complex<double>(double)>& f;
        static std::complex<double> simpson(const Impl& s, double a, double b,
                                            std::complex<double> fa, std::complex<double> fm,
                                            std::complex<double> fb) {
            return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        }
        std::complex<double> run(double a, double b, std::complex<double> fa,
                                 std::complex<double> fm, std::complex<double> fb,
                                 std::complex<double> whole, double tol, int depth) const {
            const double m = 0.5 * (a + b);
            const double lm = 0.5 * (a + m);
            const double rm = 0.5 * (m + b);
            const std::complex<double> flm = f(lm);
            const std::complex<double> frm = f(rm);
            const std::complex<double> left = simpson(*this, a, m, fa, flm, fm);
            const std::complex<double> right = simpson(*this, m, b, fm, frm, fb);
            const std::complex<double> delta = left + right - whole;
            if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
                return left + right + delta / 15.0;
            }
            return run(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
                   run(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
        }
    };
    Impl impl{f};
    const double m = 0.5 * (a + b);
    const std::complex<double> fa = f(a);
    const std::complex<double> fm = f(m);
    const std::complex<double> fb = f(b);
    const std::complex<double> whole = Impl::simpson(impl, a, b, fa, fm, fb);
    return impl.run(a, b, fa, fm, fb, whole, tol, depth);
}

/// Random stable operator: symmetric or general, with eigenvalues shifted
/// strictly into the left half plane.
inline dgs::LinearOperator random_stable_operator(int n, std::uint64_t seed,
                                                  bool symmetric = false) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m(i, j) = gauss(rng);
        }
    }
    if (symmetric) {
        m = 0.5 * (m + m.transpose()).eval();
    }
    m /= std::max(1.0, m.norm());
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    const double max_re = es.eigenvalues().real().maxCoeff();
    m.diagonal().array() -= (max_re + 0.3);
    dgs::LinearOperator op;
    op.matrix = m;
    op.equilibrium = Eigen::VectorXd::Zero(n);
    return op;
}

/// Small seeded helper for undirected test networks.
inline dgs::Network random_undirected_network(int n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    bool any = false;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (coin(rng) < p) {
                a(i, j) = 1.0;
                a(j, i) = 1.0;
                any = true;
            }
        }
    }
    if (!any) {
        a(0, 1) = a(1, 0) = 1.0;
    }
    return dgs::make_network(std::move(a), /*directed=*/false);
}

}  // namespace testutil
