#pragma once

#include "dgs/dynamics.hpp"

#include <Eigen/Core>

#include <complex>
#include <filesystem>
#include <vector>

namespace dgs {

/// Linearization of the dynamics at an equilibrium.
struct LinearOperator {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd equilibrium;
};

/// Analytic Jacobian at a certified equilibrium (||derivative||_inf below
/// 1e-10 relative to state scale, else ParameterError).
LinearOperator jacobian(const DynamicsModel& model, const Network& net,
                        const Eigen::VectorXd& x_eq);

/// Central finite differences, column by column; the independent oracle for
/// the analytic Jacobian. h = 0 selects 1e-6 * max(1, ||x||_inf).
LinearOperator jacobian_fd(const DynamicsModel& model, const Network& net,
                           const Eigen::VectorXd& x_eq, double h = 0.0);

/// Full complex eigensystem of the linearized operator. Columns of `basis`
/// have unit 2-norm with the largest-magnitude entry rotated real-positive;
/// complex eigenpairs are stored as exact conjugates.
struct SpectralBasis {
    Eigen::VectorXcd eigenvalues;
    Eigen::MatrixXcd basis;
    Eigen::MatrixXcd inverse_basis;
    double lambda_max_mag = 0.0;
    std::vector<int> order;              ///< ascending |lambda_j - |lambda|_max|, ties by index
    std::vector<int> conjugate_partner;  ///< partner column of a complex pair; self for real modes
    double condition_number = 0.0;

    int size() const { return static_cast<int>(eigenvalues.size()); }
    /// Distance |lambda_j - |lambda|_max| that orders graph frequencies.
    double band_distance(int j) const;
};

/// Throws SpectralError when the eigenvector matrix condition number exceeds
/// 1e10 (near-defective operators are rejected; no Jordan fallback).
SpectralBasis decompose(const LinearOperator& op);

/// Frequency index set within strict distance omega of |lambda|_max.
struct BandSpec {
    double omega = 0.0;
    std::vector<int> indices;  ///< ascending
    bool synthetic = false;    ///< true when the set is not a distance cut (projection bands)
};

BandSpec band_frequency_set(const SpectralBasis& basis, double omega);

Eigen::VectorXcd gft(const SpectralBasis& basis, const Eigen::VectorXd& y);
Eigen::VectorXcd gft_complex(const SpectralBasis& basis, const Eigen::VectorXcd& y);

/// Synthesis; requires the coefficients to describe a real signal (imaginary
/// residue below 1e-9 relative is truncated, more is an error).
Eigen::VectorXd igft(const SpectralBasis& basis, const Eigen::VectorXcd& coeffs);

/// Quadratic smoothness 0.5 * ||y - (A/|lambda|_max) y||^2.
double variation(const SpectralBasis& basis, const LinearOperator& op,
                 const Eigen::VectorXcd& y);
double variation(const SpectralBasis& basis, const LinearOperator& op,
                 const Eigen::VectorXd& y);

/// Random real signal synthesized from the bases inside the omega band,
/// conjugate pairs drawn jointly, rescaled to the requested 2-norm.
Eigen::VectorXd make_bandlimited_init(const SpectralBasis& basis, double omega,
                                      double amplitude, std::uint64_t seed);

struct SupportResult {
    double omega_c = 0.0;
    std::vector<int> indices;
};

/// Smallest bandwidth containing the signal's spectral support; a coefficient
/// counts when at least rel_tol times the largest magnitude.
SupportResult support_bandwidth(const SpectralBasis& basis, const Eigen::VectorXd& y,
                                double rel_tol = 1e-9);

/// Diagnostic export: eigenvalues as [re, im], |lambda|_max, ordering, condition number.
void save_basis_json(const SpectralBasis& basis, const std::filesystem::path& path);

}  // namespace dgs
