#include "dgs/sampling.hpp"

#include "dgs/common.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace dgs {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kCertificateFloor = 1e-9;

Eigen::MatrixXcd band_columns(const SpectralBasis& basis, const BandSpec& band) {
    Eigen::MatrixXcd cols(basis.size(), static_cast<long>(band.indices.size()));
    for (std::size_t c = 0; c < band.indices.size(); ++c) {
        const int j = band.indices[c];
        if (j < 0 || j >= basis.size()) {
            throw DimensionError("band index " + std::to_string(j) + " out of range");
        }
        cols.col(static_cast<long>(c)) = basis.basis.col(j);
    }
    return cols;
}

Eigen::MatrixXcd select_rows(const Eigen::MatrixXcd& m, const std::vector<int>& rows) {
    Eigen::MatrixXcd out(static_cast<long>(rows.size()), m.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const int i = rows[r];
        if (i < 0 || i >= m.rows()) {
            throw DimensionError("node index " + std::to_string(i) + " out of range");
        }
        out.row(static_cast<long>(r)) = m.row(i);
    }
    return out;
}

double smallest_singular_value(const Eigen::MatrixXcd& m) {
    Eigen::VectorXd sv;
    if (std::min(m.rows(), m.cols()) >= 32) {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
        sv = svd.singularValues();
    } else {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        sv = svd.singularValues();
    }
    return sv(sv.size() - 1);
}

/// Smallest eigenvalue of the bordered Hermitian matrix [[H, b], [b^H, d]],
/// given the eigensystem (mu ascending, Q) of H. The root of
///   g(x) = d - x - sum_i |w_i|^2 / (mu_i - x),  w = Q^H b,
/// below mu_1 is found by bisection (g is strictly decreasing there).
double bordered_lambda_min(const Eigen::VectorXd& mu, const Eigen::MatrixXcd& q,
                           const Eigen::VectorXcd& b, double d) {
    const Eigen::VectorXd w2 = (q.adjoint() * b).cwiseAbs2();
    const double b_norm = std::sqrt(w2.sum());
    double hi = mu(0);
    double lo = std::min(mu(0), d) - b_norm - 1e-300;
    auto g = [&](double x) {
        double acc = d - x;
        for (long i = 0; i < mu.size(); ++i) {
            acc -= w2(i) / (mu(i) - x);
        }
        return acc;
    };
    if (g(hi - 1e-14 * (1.0 + std::abs(hi))) >= 0.0) {
        return hi;  // border barely couples; the smallest eigenvalue stays at mu_1
    }
    for (int it = 0; it < 110; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) >= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Smallest eigenvalue of diag(mu) + w w^H (mu ascending). The root of
///   f(x) = 1 + sum_i |w_i|^2 / (mu_i - x)
/// lies in [mu_1, min(mu_2, mu_1 + ||w||^2)]; f is strictly increasing there.
double updated_lambda_min(const Eigen::VectorXd& mu, const Eigen::VectorXcd& w) {
    const Eigen::VectorXd w2 = w.cwiseAbs2();
    const double total = w2.sum();
    if (mu.size() == 1) {
        return mu(0) + total;
    }
    double lo = mu(0);
    double hi = std::min(mu(1), mu(0) + total);
    auto f = [&](double x) {
        double acc = 1.0;
        for (long i = 0; i < mu.size(); ++i) {
            acc += w2(i) / (mu(i) - x);
        }
        return acc;
    };
    if (f(lo + 1e-14 * (1.0 + std::abs(lo))) >= 0.0) {
        return lo;  // no coupling into the lowest mode
    }
    for (int it = 0; it < 110; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) <= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

SelectionResult select_sampling_set(const SpectralBasis& basis, const BandSpec& band,
                                    int size, bool allow_undersampled) {
    const int n = basis.size();
    const int m = static_cast<int>(band.indices.size());
    if (m < 1) {
        throw ParameterError("select_sampling_set: empty frequency band");
    }
    if (size < 1 || size > n) {
        throw ParameterError("select_sampling_set: size must lie in [1, n]");
    }
    if (size < m && !allow_undersampled) {
        throw PlanError("select_sampling_set: size " + std::to_string(size) +
                        " is below the band size " + std::to_string(m) +
                        "; pass allow_undersampled for deliberate under-sampling");
    }
    const Eigen::MatrixXcd gamma = band_columns(basis, band);

    SelectionResult result;
    if (size == n) {
        // All rows end up selected; keep the canonical ascending order.
        result.nodes.resize(n);
        std::iota(result.nodes.begin(), result.nodes.end(), 0);
    } else {
        std::vector<char> taken(n, 0);
        Eigen::MatrixXcd rows(size, m);        // accepted rows so far
        Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(m, m);  // rows^H rows
        for (int step = 0; step < size; ++step) {
            int best_node = -1;
            double best_score = -std::numeric_limits<double>::infinity();
            const auto selected = rows.topRows(step);
            // Score each candidate against the eigensystem of the current
            // Gram matrix; wide phase uses the row Gram, tall phase the
            // column Gram with a rank-one update.
            const bool wide = step + 1 <= m;
            Eigen::VectorXd mu;
            Eigen::MatrixXcd q;
            if (wide) {
                if (step > 0) {
                    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(selected *
                                                                       selected.adjoint());
                    mu = es.eigenvalues();
                    q = es.eigenvectors();
                }
            } else {
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
                mu = es.eigenvalues();
                q = es.eigenvectors();
            }
            for (int cand = 0; cand < n; ++cand) {
                if (taken[cand]) continue;
                const Eigen::RowVectorXcd row = gamma.row(cand);
                double score;
                if (wide) {
                    if (step == 0) {
                        score = row.squaredNorm();
                    } else {
                        const Eigen::VectorXcd border = selected * row.adjoint();
                        score = bordered_lambda_min(mu, q, border, row.squaredNorm());
                    }
                } else {
                    score = updated_lambda_min(mu, q.adjoint() * row.adjoint());
                }
                if (score > best_score) {
                    best_score = score;
                    best_node = cand;
                }
            }
            rows.row(step) = gamma.row(best_node);
            gram += gamma.row(best_node).adjoint() * gamma.row(best_node);
            taken[best_node] = 1;
            result.nodes.push_back(best_node);
        }
    }

    result.certificate = smallest_singular_value(select_rows(gamma, result.nodes));
    if (size >= m && result.certificate <= kCertificateFloor) {
        throw PlanError("infeasible band: selected rows have smallest singular value " +
                        format_double(result.certificate) + " (<= 1e-9)");
    }
    return result;
}

Eigen::MatrixXd reconstruction_matrix(const SpectralBasis& basis,
                                      const std::vector<int>& nodes, const BandSpec& band) {
    const int m = static_cast<int>(band.indices.size());
    const int s = static_cast<int>(nodes.size());
    if (m < 1 || s < 1) {
        throw ParameterError("reconstruction_matrix: empty node set or band");
    }
    const Eigen::MatrixXcd gamma_vn = band_columns(basis, band);
    const Eigen::MatrixXcd gamma_sn = select_rows(gamma_vn, nodes);

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(gamma_sn,
                                           Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (s >= m && sv(sv.size() - 1) <= kCertificateFloor) {
        throw PlanError("reconstruction_matrix: rank certificate violated (sigma_min = " +
                        format_double(sv(sv.size() - 1)) + ")");
    }
    const double tol =
        std::max(gamma_sn.rows(), gamma_sn.cols()) *
        std::numeric_limits<double>::epsilon() * sv(0);
    Eigen::VectorXd inv_sv = Eigen::VectorXd::Zero(sv.size());
    for (long i = 0; i < sv.size(); ++i) {
        if (sv(i) > tol) inv_sv(i) = 1.0 / sv(i);
    }
    const Eigen::MatrixXcd pinv =
        svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().adjoint();

    const Eigen::MatrixXcd phi_c = gamma_vn * pinv;
    const double total = phi_c.norm();
    const double imag_norm = phi_c.imag().norm();
    if (imag_norm > 1e-9 * std::max(total, 1e-300)) {
        throw PlanError("reconstruction matrix has a non-negligible imaginary part (" +
                        format_double(imag_norm) + " vs " + format_double(total) +
                        "); band is not closed under conjugation");
    }
    return phi_c.real();
}

Eigen::VectorXd recover_snapshot(const Eigen::MatrixXd& phi, const Eigen::VectorXd& y_sampled) {
    if (phi.cols() != y_sampled.size()) {
        throw DimensionError("recover_snapshot: Phi has " + std::to_string(phi.cols()) +
                             " columns, sample vector has length " +
                             std::to_string(y_sampled.size()));
    }
    return phi * y_sampled;
}

std::complex<double> analytic_fourier(const SpectralBasis& basis,
                                      const Eigen::VectorXcd& y0_coeffs, const BandSpec& band,
                                      int node, double omega_time) {
    if (node < 0 || node >= basis.size()) {
        throw DimensionError("analytic_fourier: node index out of range");
    }
    if (y0_coeffs.size() != basis.size()) {
        throw DimensionError("analytic_fourier: coefficient vector length mismatch");
    }
    std::complex<double> sum(0.0, 0.0);
    for (int j : band.indices) {
        const std::complex<double> lambda = basis.eigenvalues(j);
        if (!(lambda.real() < 0.0)) {
            throw DomainError("analytic_fourier: mode " + std::to_string(j) +
                              " has Re[lambda] = " + format_double(lambda.real()) +
                              " >= 0, transform diverges");
        }
        const std::complex<double> denom(-lambda.real(), omega_time - lambda.imag());
        sum += basis.basis(node, j) * y0_coeffs(j) / denom;
    }
    return sum;
}

namespace {

CutoffResult cutoff_over_indices(const SpectralBasis& basis, const std::vector<int>& indices,
                                 double y0_norm, double epsilon) {
    if (indices.empty()) {
        throw ParameterError("time cutoff: empty frequency band");
    }
    if (!(epsilon > 0.0)) {
        throw ParameterError("time cutoff: epsilon must be positive");
    }
    if (!(y0_norm > 0.0)) {
        throw ParameterError("time cutoff: signal norm must be positive");
    }
    double max_abs_im = 0.0;
    double min_re_sq = std::numeric_limits<double>::infinity();
    for (int j : indices) {
        const std::complex<double> lambda = basis.eigenvalues(j);
        max_abs_im = std::max(max_abs_im, std::abs(lambda.imag()));
        // Smallest |Re| over the band: the slowest decay bounds the spectrum tail.
        min_re_sq = std::min(min_re_sq, lambda.real() * lambda.real());
    }
    const double ratio = y0_norm / epsilon;
    const double radicand = ratio * ratio - min_re_sq;
    CutoffResult result;
    result.clamped = radicand < 0.0;
    result.omega = max_abs_im + (result.clamped ? 0.0 : std::sqrt(radicand));
    return result;
}

}  // namespace

CutoffResult time_cutoff_bandlimited(const SpectralBasis& basis, const BandSpec& band,
                                     double y0_norm, double epsilon) {
    return cutoff_over_indices(basis, band.indices, y0_norm, epsilon);
}

CutoffResult time_cutoff_arbitrary(const SpectralBasis& basis, double y0_norm,
                                   double epsilon) {
    std::vector<int> all(basis.size());
    std::iota(all.begin(), all.end(), 0);
    return cutoff_over_indices(basis, all, y0_norm, epsilon);
}

double time_cutoff_upperbound(double omega_c, double lambda_max_mag, double y0_norm,
                              double epsilon) {
    if (!(epsilon > 0.0) || !(y0_norm >= 0.0) || omega_c < 0.0 || lambda_max_mag < 0.0) {
        throw ParameterError("time_cutoff_upperbound: non-negative inputs and epsilon > 0 required");
    }
    const double rad1 = omega_c * omega_c - lambda_max_mag * lambda_max_mag;
    const double rad2 = 4.0 * lambda_max_mag * lambda_max_mag - omega_c * omega_c;
    // Branch 1 (imaginary-axis intersection) tolerates a zero radicand; the
    // circle-circle branch is dropped at tangency.
    const bool valid1 = rad1 >= 0.0;
    const bool valid2 = rad2 > 0.0;
    if (!valid1 && !valid2) {
        throw DomainError("time_cutoff_upperbound: both radicands out of domain (omega_c^2 - "
                          "|lambda|_max^2 = " + format_double(rad1) +
                          ", 4 |lambda|_max^2 - omega_c^2 = " + format_double(rad2) + ")");
    }
    double geo = std::numeric_limits<double>::infinity();
    if (valid1) {
        geo = std::min(geo, std::sqrt(rad1));
    }
    if (valid2) {
        geo = std::min(geo, omega_c * std::sqrt(rad2) / (2.0 * lambda_max_mag));
    }
    return geo + y0_norm / epsilon;
}

double sinc_interp(double u) {
    if (u == 0.0) return 1.0;
    return std::sin(kPi * u) / (kPi * u);
}

namespace {

/// psi_k = sinc(u0 - k) for k = 0..count-1, via (-1)^k sin(pi u0) / (pi (u0 - k)).
void sinc_weights(double u0, long count, Eigen::VectorXd& psi) {
    psi.resize(count);
    const double r = std::nearbyint(u0);
    if (std::abs(u0 - r) < 1e-9) {
        psi.setZero();
        const long idx = static_cast<long>(r);
        if (idx >= 0 && idx < count) psi(idx) = 1.0;
        return;
    }
    const double s = std::sin(kPi * u0);
    double sign = 1.0;
    for (long k = 0; k < count; ++k) {
        psi(k) = sign * s / (kPi * (u0 - static_cast<double>(k)));
        sign = -sign;
    }
}

}  // namespace

double sinc_reconstruct(const Eigen::VectorXd& samples, double sample_rate, double t) {
    if (samples.size() < 1) {
        throw ParameterError("sinc_reconstruct: empty sample set");
    }
    if (!(sample_rate > 0.0)) {
        throw ParameterError("sinc_reconstruct: sample rate must be positive");
    }
    Eigen::VectorXd psi;
    sinc_weights(sample_rate * t, samples.size(), psi);
    return samples.dot(psi);
}

Eigen::VectorXd SampleRecord::times() const {
    Eigen::VectorXd t(values.rows());
    for (long k = 0; k < values.rows(); ++k) {
        t(k) = static_cast<double>(k) / F_s;
    }
    return t;
}

Eigen::MatrixXd joint_recover(const SamplingPlan& plan, const SampleRecord& record,
                              const Eigen::VectorXd& eval_times, bool x_domain) {
    const long s = plan.phi.cols();
    const long n = plan.phi.rows();
    if (record.values.cols() != s) {
        throw DimensionError("joint_recover: sample record has " +
                             std::to_string(record.values.cols()) +
                             " node columns, plan expects " + std::to_string(s));
    }
    if (!(record.F_s > 0.0)) {
        throw ParameterError("joint_recover: sample record has no valid rate");
    }
    if (x_domain && plan.equilibrium.size() != n) {
        throw ParameterError("joint_recover: plan carries no equilibrium for x-domain output");
    }
    const long count = record.values.rows();
    Eigen::MatrixXd out(eval_times.size(), n);
    Eigen::VectorXd psi;
    for (long e = 0; e < eval_times.size(); ++e) {
        sinc_weights(record.F_s * eval_times(e), count, psi);
        Eigen::VectorXd y_s = record.values.transpose() * psi;
        Eigen::VectorXd row = plan.phi * y_s;
        if (x_domain) row += plan.equilibrium;
        out.row(e) = row.transpose();
    }
    return out;
}

ProjectionResult arbitrary_init_projection(const SpectralBasis& basis,
                                           const Eigen::VectorXd& y0, int budget) {
    if (budget < 1) {
        throw ParameterError("arbitrary_init_projection: budget must be >= 1");
    }
    const int n = basis.size();
    Eigen::VectorXcd coeffs = gft(basis, y0);

    std::vector<int> by_magnitude(n);
    std::iota(by_magnitude.begin(), by_magnitude.end(), 0);
    std::stable_sort(by_magnitude.begin(), by_magnitude.end(), [&](int a, int b) {
        const double ma = std::abs(coeffs(a));
        const double mb = std::abs(coeffs(b));
        if (ma != mb) return ma > mb;
        return a < b;
    });

    std::vector<char> kept(n, 0);
    int remaining = std::min(budget, n);
    for (int idx : by_magnitude) {
        if (remaining <= 0) break;
        if (kept[idx]) continue;
        const int partner = basis.conjugate_partner[idx];
        if (partner == idx) {
            kept[idx] = 1;
            --remaining;
        } else if (remaining >= 2) {
            kept[idx] = 1;
            kept[partner] = 1;
            remaining -= 2;
        } else {
            // One slot left but the next mode is half of a pair: trim the
            // budget instead of breaking realness.
            break;
        }
    }

    ProjectionResult result;
    result.band.synthetic = true;
    result.coeffs = Eigen::VectorXcd::Zero(n);
    Eigen::VectorXcd dropped = Eigen::VectorXcd::Zero(n);
    double max_dist = 0.0;
    for (int j = 0; j < n; ++j) {
        if (kept[j]) {
            result.band.indices.push_back(j);
            result.coeffs(j) = coeffs(j);
            max_dist = std::max(max_dist, basis.band_distance(j));
        } else {
            dropped(j) = coeffs(j);
        }
    }
    result.band.omega = std::max(max_dist + 1e-12, max_dist * (1.0 + 1e-12));
    result.dropped_norm = (basis.basis * dropped).norm();
    return result;
}

SampleRecord sample_trajectory(const Trajectory& traj, const std::vector<int>& nodes,
                               double F_s, const Eigen::VectorXd& equilibrium) {
    if (!(F_s > 0.0)) {
        throw ParameterError("sample_trajectory: F_s must be positive");
    }
    const long rows = traj.times.size();
    const int n = static_cast<int>(traj.states.cols());
    if (rows < 2) {
        throw DimensionError("sample_trajectory: trajectory needs at least two rows");
    }
    if (equilibrium.size() != 0 && equilibrium.size() != n) {
        throw DimensionError("sample_trajectory: equilibrium length mismatch");
    }
    const double step = traj.times(1) - traj.times(0);
    const double t_end = traj.times(rows - 1);
    const long K = static_cast<long>(std::floor(t_end * F_s + 1e-9));
    if (K < 0) {
        throw DimensionError("sample_trajectory: trajectory too short for the requested rate");
    }
    SampleRecord record;
    record.F_s = F_s;
    record.values.resize(K + 1, static_cast<long>(nodes.size()));
    for (long k = 0; k <= K; ++k) {
        const double target = static_cast<double>(k) / F_s;
        const long idx = static_cast<long>(std::llround(target / step));
        if (idx < 0 || idx >= rows ||
            std::abs(traj.times(idx) - target) > 1e-9 * std::max(1.0, target)) {
            throw DimensionError("sample_trajectory: trajectory grid has no point at t = " +
                                 format_double(target) +
                                 " (integration step incompatible with F_s)");
        }
        for (std::size_t c = 0; c < nodes.size(); ++c) {
            const int node = nodes[c];
            if (node < 0 || node >= n) {
                throw DimensionError("sample_trajectory: node index out of range");
            }
            const double shift = equilibrium.size() ? equilibrium(node) : 0.0;
            record.values(k, static_cast<long>(c)) = traj.states(idx, node) - shift;
        }
    }
    return record;
}

void save_plan_json(const SamplingPlan& plan, const std::filesystem::path& path) {
    nlohmann::json doc;
    doc["nodes"] = plan.nodes;
    doc["band"] = {{"omega", plan.band.omega},
                   {"indices", plan.band.indices},
                   {"synthetic", plan.band.synthetic}};
    doc["omega_c"] = plan.omega_c;
    doc["Omega_c"] = plan.Omega_c;
    doc["F_s"] = plan.F_s;
    doc["epsilon"] = plan.epsilon;
    doc["rank_certificate"] = plan.rank_certificate;
    doc["clamped"] = plan.clamped;
    doc["undersampled_graph"] = plan.undersampled_graph;
    doc["undersampled_time"] = plan.undersampled_time;
    nlohmann::json eq = nlohmann::json::array();
    for (long i = 0; i < plan.equilibrium.size(); ++i) eq.push_back(plan.equilibrium(i));
    doc["equilibrium"] = std::move(eq);
    nlohmann::json phi = nlohmann::json::array();
    for (long r = 0; r < plan.phi.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (long c = 0; c < plan.phi.cols(); ++c) row.push_back(plan.phi(r, c));
        phi.push_back(std::move(row));
    }
    doc["phi"] = std::move(phi);

    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write plan file: " + path.string());
    }
    out << doc.dump(2) << "\n";
    if (!out) {
        throw IoError("write failure for plan file: " + path.string());
    }
}

SamplingPlan load_plan_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open plan file: " + path.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("plan file " + path.string() + " is not valid JSON: " + e.what());
    }
    SamplingPlan plan;
    try {
        plan.nodes = doc.at("nodes").get<std::vector<int>>();
        plan.band.omega = doc.at("band").at("omega").get<double>();
        plan.band.indices = doc.at("band").at("indices").get<std::vector<int>>();
        plan.band.synthetic = doc.at("band").value("synthetic", false);
        plan.omega_c = doc.at("omega_c").get<double>();
        plan.Omega_c = doc.at("Omega_c").get<double>();
        plan.F_s = doc.at("F_s").get<double>();
        plan.epsilon = doc.at("epsilon").get<double>();
        plan.rank_certificate = doc.at("rank_certificate").get<double>();
        plan.clamped = doc.at("clamped").get<bool>();
        plan.undersampled_graph = doc.value("undersampled_graph", false);
        plan.undersampled_time = doc.value("undersampled_time", false);
        const auto& eq = doc.at("equilibrium");
        plan.equilibrium.resize(static_cast<long>(eq.size()));
        for (std::size_t i = 0; i < eq.size(); ++i) {
            plan.equilibrium(static_cast<long>(i)) = eq[i].get<double>();
        }
        const auto& phi = doc.at("phi");
        const long rows = static_cast<long>(phi.size());
        const long cols = rows ? static_cast<long>(phi[0].size()) : 0;
        plan.phi.resize(rows, cols);
        for (long r = 0; r < rows; ++r) {
            if (static_cast<long>(phi[r].size()) != cols) {
                throw FormatError("plan phi rows have inconsistent lengths");
            }
            for (long c = 0; c < cols; ++c) plan.phi(r, c) = phi[r][c].get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("plan file " + path.string() + " is malformed: " + e.what());
    }
    if (plan.phi.cols() != static_cast<long>(plan.nodes.size())) {
        throw FormatError("plan phi column count does not match the node set size");
    }
    return plan;
}

void save_samples_csv(const SampleRecord& record, const std::vector<int>& nodes,
                      const std::filesystem::path& path) {
    if (static_cast<long>(nodes.size()) != record.values.cols()) {
        throw DimensionError("save_samples_csv: node list does not match record columns");
    }
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write samples file: " + path.string());
    }
    out << "t";
    for (int node : nodes) out << ",node_" << node;
    out << "\n";
    for (long k = 0; k < record.values.rows(); ++k) {
        out << format_double(static_cast<double>(k) / record.F_s);
        for (long c = 0; c < record.values.cols(); ++c) {
            out << "," << format_double(record.values(k, c));
        }
        out << "\n";
    }
    if (!out) {
        throw IoError("write failure for samples file: " + path.string());
    }
}

LoadedSamples load_samples_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open samples file: " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,node_", 0) != 0) {
        throw FormatError("samples file must start with header t,node_<i>,...: " +
                          path.string());
    }
    LoadedSamples loaded;
    {
        std::stringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');  // "t"
        while (std::getline(ss, cell, ',')) {
            if (cell.rfind("node_", 0) != 0) {
                throw FormatError("samples header has a malformed column '" + cell + "'");
            }
            loaded.nodes.push_back(std::stoi(cell.substr(5)));
        }
    }
    std::vector<double> times;
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(ss, cell, ',')) {
            double v = 0.0;
            try {
                v = std::stod(cell);
            } catch (const std::exception&) {
                throw FormatError("samples row " + std::to_string(times.size()) +
                                  " has a non-numeric cell '" + cell + "'");
            }
            if (col == 0) {
                times.push_back(v);
            } else {
                values.push_back(v);
            }
            ++col;
        }
        if (col != loaded.nodes.size() + 1) {
            throw FormatError("samples row " + std::to_string(times.size() - 1) +
                              " has the wrong number of cells");
        }
    }
    if (times.size() < 2) {
        throw FormatError("samples file needs at least two rows to define the rate");
    }
    if (times[0] != 0.0) {
        throw FormatError("samples must start at t = 0");
    }
    const double dt = times[1] - times[0];
    if (!(dt > 0.0)) {
        throw FormatError("samples times must be strictly increasing");
    }
    loaded.record.F_s = 1.0 / dt;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double expected = static_cast<double>(k) * dt;
        if (std::abs(times[k] - expected) > 1e-9 * std::max(1.0, expected)) {
            throw FormatError("samples grid is not uniform at row " + std::to_string(k));
        }
    }
    loaded.record.values =
        Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            values.data(), static_cast<long>(times.size()),
            static_cast<long>(loaded.nodes.size()));
    return loaded;
}

}  // namespace dgs
