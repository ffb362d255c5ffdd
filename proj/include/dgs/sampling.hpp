#pragma once

#include "dgs/spectral.hpp"

#include <complex>
#include <filesystem>
#include <vector>

namespace dgs {

struct SelectionResult {
    std::vector<int> nodes;    ///< selection order
    double certificate = 0.0;  ///< smallest singular value of Gamma_{S,N}
};

/// Greedy row selection on Gamma_{V,N}: each step adds the node maximizing the
/// smallest singular value of the grown submatrix (ties to the lowest index).
/// size < |N| requires allow_undersampled and yields a deliberately
/// rank-deficient plan for under-sampling experiments.
SelectionResult select_sampling_set(const SpectralBasis& basis, const BandSpec& band,
                                    int size, bool allow_undersampled = false);

/// Phi = Gamma_{V,N} * pinv(Gamma_{S,N}), computed by least squares and
/// truncated to real (the imaginary residue must stay below 1e-9 relative).
Eigen::MatrixXd reconstruction_matrix(const SpectralBasis& basis,
                                      const std::vector<int>& nodes, const BandSpec& band);

Eigen::VectorXd recover_snapshot(const Eigen::MatrixXd& phi, const Eigen::VectorXd& y_sampled);

/// Closed-form transform of node n's relaxation:
///   sum_j gamma_{n,j} c_j / (-Re[lambda_j] + i (Omega - Im[lambda_j]))
/// over the band. Every band mode must decay strictly (Re < 0).
std::complex<double> analytic_fourier(const SpectralBasis& basis,
                                      const Eigen::VectorXcd& y0_coeffs, const BandSpec& band,
                                      int node, double omega_time);

struct CutoffResult {
    double omega = 0.0;
    bool clamped = false;  ///< epsilon so large the square root clamped to zero
};

/// Time-domain cutoff over the band's eigenvalues:
///   max|Im| + sqrt(||y0||^2 / eps^2 - min(Re^2)).
CutoffResult time_cutoff_bandlimited(const SpectralBasis& basis, const BandSpec& band,
                                     double y0_norm, double epsilon);

/// Geometry-only upper bound on the time cutoff in terms of the graph cutoff.
double time_cutoff_upperbound(double omega_c, double lambda_max_mag, double y0_norm,
                              double epsilon);

/// Cutoff over the full spectrum, for arbitrary (non-bandlimited) initializations.
CutoffResult time_cutoff_arbitrary(const SpectralBasis& basis, double y0_norm,
                                   double epsilon);

/// sin(pi u) / (pi u), 1 at u = 0.
double sinc_interp(double u);

/// Truncated Whittaker-Shannon sum over samples on the grid k / sample_rate.
double sinc_reconstruct(const Eigen::VectorXd& samples, double sample_rate, double t);

struct SamplingPlan {
    std::vector<int> nodes;
    BandSpec band;
    Eigen::MatrixXd phi;
    double omega_c = 0.0;
    double Omega_c = 0.0;
    double F_s = 0.0;
    double epsilon = 0.0;
    double rank_certificate = 0.0;
    bool clamped = false;
    bool undersampled_graph = false;  ///< |S| < |N|
    bool undersampled_time = false;   ///< F_s < Omega_c / pi
    Eigen::VectorXd equilibrium;      ///< x(inf); enables output in the x domain
};

struct SampleRecord {
    double F_s = 0.0;
    Eigen::MatrixXd values;  ///< (K+1) x |S|, row k = y_S(k / F_s)

    long last_index() const { return values.rows() - 1; }
    Eigen::VectorXd times() const;
};

/// Joint recovery: for each eval time builds the sinc weight vector and
/// returns Phi * Y_S * psi(t) per row; x_domain adds back the equilibrium.
Eigen::MatrixXd joint_recover(const SamplingPlan& plan, const SampleRecord& record,
                              const Eigen::VectorXd& eval_times, bool x_domain = false);

struct ProjectionResult {
    BandSpec band;            ///< synthetic index set: largest |c_j|, conjugate pairs atomic
    Eigen::VectorXcd coeffs;  ///< full length, zero outside the kept set
    double dropped_norm = 0.0;  ///< || Gamma * c_dropped ||_2
};

/// Approximates an arbitrary start as a bandlimited one by keeping the
/// `budget` largest spectral amplitudes (pairs kept or dropped together;
/// the budget shrinks by one when a pair would not fit).
ProjectionResult arbitrary_init_projection(const SpectralBasis& basis,
                                           const Eigen::VectorXd& y0, int budget);

/// Extracts rows of an x-domain trajectory on the k / F_s grid, restricted to
/// the plan's nodes and shifted by the equilibrium into the y domain.
SampleRecord sample_trajectory(const Trajectory& traj, const std::vector<int>& nodes,
                               double F_s, const Eigen::VectorXd& equilibrium);

void save_plan_json(const SamplingPlan& plan, const std::filesystem::path& path);
SamplingPlan load_plan_json(const std::filesystem::path& path);

/// CSV with header t,node_<i>,...; 17 significant digits.
void save_samples_csv(const SampleRecord& record, const std::vector<int>& nodes,
                      const std::filesystem::path& path);

struct LoadedSamples {
    SampleRecord record;
    std::vector<int> nodes;
};
LoadedSamples load_samples_csv(const std::filesystem::path& path);

}  // namespace dgs
