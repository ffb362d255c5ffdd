#include "dgs/spectral.hpp"

#include "dgs/common.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <random>

namespace dgs {

LinearOperator jacobian(const DynamicsModel& model, const Network& net,
                        const Eigen::VectorXd& x_eq) {
    const double residual = derivative(model, net, x_eq).lpNorm<Eigen::Infinity>();
    const double scale = std::max(1.0, x_eq.lpNorm<Eigen::Infinity>());
    if (residual >= 1e-10 * scale) {
        throw ParameterError("jacobian requires an equilibrium state; ||derivative||_inf = " +
                             format_double(residual));
    }
    LinearOperator op;
    op.matrix = jacobian_matrix(model, net, x_eq);
    op.equilibrium = x_eq;
    return op;
}

LinearOperator jacobian_fd(const DynamicsModel& model, const Network& net,
                           const Eigen::VectorXd& x_eq, double h) {
    if (h < 0.0 || !std::isfinite(h)) {
        throw ParameterError("finite-difference step must be non-negative");
    }
    if (h == 0.0) {
        h = 1e-6 * std::max(1.0, x_eq.lpNorm<Eigen::Infinity>());
    }
    const int n = net.n;
    LinearOperator op;
    op.matrix.resize(n, n);
    op.equilibrium = x_eq;
    Eigen::VectorXd xp = x_eq;
    Eigen::VectorXd xm = x_eq;
    for (int m = 0; m < n; ++m) {
        xp(m) = x_eq(m) + h;
        xm(m) = x_eq(m) - h;
        op.matrix.col(m) = (derivative(model, net, xp) - derivative(model, net, xm)) / (2.0 * h);
        xp(m) = x_eq(m);
        xm(m) = x_eq(m);
    }
    return op;
}

double SpectralBasis::band_distance(int j) const {
    return std::abs(eigenvalues(j) - std::complex<double>(lambda_max_mag, 0.0));
}

namespace {

double basis_condition(const Eigen::MatrixXcd& gamma) {
    Eigen::VectorXd sv;
    if (gamma.rows() >= 32) {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(gamma);
        sv = svd.singularValues();
    } else {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(gamma);
        sv = svd.singularValues();
    }
    const double smin = sv(sv.size() - 1);
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

}  // namespace

SpectralBasis decompose(const LinearOperator& op) {
    if (op.matrix.rows() != op.matrix.cols() || op.matrix.rows() < 1) {
        throw DimensionError("decompose requires a square operator");
    }
    if (!op.matrix.allFinite()) {
        throw ParameterError("decompose requires finite operator entries");
    }
    const int n = static_cast<int>(op.matrix.rows());

    Eigen::EigenSolver<Eigen::MatrixXd> es(op.matrix);
    if (es.info() != Eigen::Success) {
        throw SpectralError("eigendecomposition did not converge");
    }
    SpectralBasis sb;
    sb.eigenvalues = es.eigenvalues();
    sb.basis = es.eigenvectors();

    // Normalize: unit columns, largest-magnitude entry rotated real-positive.
    for (int j = 0; j < n; ++j) {
        Eigen::VectorXcd v = sb.basis.col(j);
        v /= v.norm();
        int k = 0;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            const double m = std::abs(v(i));
            if (m > best + 1e-15) {
                best = m;
                k = i;
            }
        }
        const std::complex<double> pivot = v(k);
        if (std::abs(pivot) > 0.0) {
            v *= std::abs(pivot) / pivot;
        }
        sb.basis.col(j) = v;
    }

    sb.lambda_max_mag = sb.eigenvalues.cwiseAbs().maxCoeff();

    // Pair complex conjugate modes and make the pairing exact, so real signals
    // can be synthesized from conjugate-symmetric coefficients.
    sb.conjugate_partner.assign(n, -1);
    const double im_tol = 1e-12 * (1.0 + sb.lambda_max_mag);
    for (int j = 0; j < n; ++j) {
        if (sb.conjugate_partner[j] != -1) continue;
        if (std::abs(sb.eigenvalues(j).imag()) <= im_tol) {
            sb.conjugate_partner[j] = j;
            sb.eigenvalues(j) = std::complex<double>(sb.eigenvalues(j).real(), 0.0);
            continue;
        }
        int partner = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int k = j + 1; k < n; ++k) {
            if (sb.conjugate_partner[k] != -1) continue;
            const double d = std::abs(std::conj(sb.eigenvalues(j)) - sb.eigenvalues(k));
            if (d < best) {
                best = d;
                partner = k;
            }
        }
        if (partner < 0 || best > 1e-6 * (1.0 + sb.lambda_max_mag)) {
            throw SpectralError("complex eigenvalue " + std::to_string(j) +
                                " has no conjugate partner (operator is not real-diagonalizable)");
        }
        sb.conjugate_partner[j] = partner;
        sb.conjugate_partner[partner] = j;
        sb.eigenvalues(partner) = std::conj(sb.eigenvalues(j));
        sb.basis.col(partner) = sb.basis.col(j).conjugate();
    }

    sb.condition_number = basis_condition(sb.basis);
    if (!(sb.condition_number < 1e10)) {
        throw SpectralError("operator is too close to non-diagonalizable (basis condition " +
                            format_double(sb.condition_number) + " exceeds 1e10)");
    }
    sb.inverse_basis = sb.basis.partialPivLu().inverse();

    sb.order.resize(n);
    std::iota(sb.order.begin(), sb.order.end(), 0);
    std::stable_sort(sb.order.begin(), sb.order.end(), [&](int a, int b) {
        const double da = sb.band_distance(a);
        const double db = sb.band_distance(b);
        if (da != db) return da < db;
        return a < b;
    });
    return sb;
}

BandSpec band_frequency_set(const SpectralBasis& basis, double omega) {
    if (omega < 0.0 || std::isnan(omega)) {
        throw ParameterError("bandwidth omega must be non-negative");
    }
    BandSpec band;
    band.omega = omega;
    for (int j = 0; j < basis.size(); ++j) {
        if (basis.band_distance(j) < omega) {
            band.indices.push_back(j);
        }
    }
    return band;
}

Eigen::VectorXcd gft(const SpectralBasis& basis, const Eigen::VectorXd& y) {
    return gft_complex(basis, y.cast<std::complex<double>>());
}

Eigen::VectorXcd gft_complex(const SpectralBasis& basis, const Eigen::VectorXcd& y) {
    if (y.size() != basis.size()) {
        throw DimensionError("gft: signal length does not match basis size");
    }
    return basis.inverse_basis * y;
}

Eigen::VectorXd igft(const SpectralBasis& basis, const Eigen::VectorXcd& coeffs) {
    if (coeffs.size() != basis.size()) {
        throw DimensionError("igft: coefficient length does not match basis size");
    }
    Eigen::VectorXcd z = basis.basis * coeffs;
    const double z_norm = z.norm();
    const double imag_norm = z.imag().norm();
    if (imag_norm > 1e-9 * z_norm) {
        throw SpectralError(
            "igft: coefficients violate conjugate symmetry (imaginary residue " +
            format_double(imag_norm) + " vs signal norm " + format_double(z_norm) + ")");
    }
    return z.real();
}

double variation(const SpectralBasis& basis, const LinearOperator& op,
                 const Eigen::VectorXcd& y) {
    if (y.size() != op.matrix.rows()) {
        throw DimensionError("variation: signal length does not match operator size");
    }
    if (basis.lambda_max_mag <= 0.0) {
        throw SpectralError("variation: degenerate operator with |lambda|_max = 0");
    }
    Eigen::VectorXcd r = y - (op.matrix * y) / basis.lambda_max_mag;
    return 0.5 * r.squaredNorm();
}

double variation(const SpectralBasis& basis, const LinearOperator& op,
                 const Eigen::VectorXd& y) {
    return variation(basis, op, Eigen::VectorXcd(y.cast<std::complex<double>>()));
}

Eigen::VectorXd make_bandlimited_init(const SpectralBasis& basis, double omega,
                                      double amplitude, std::uint64_t seed) {
    if (!(amplitude > 0.0)) {
        throw ParameterError("amplitude must be positive");
    }
    BandSpec band = band_frequency_set(basis, omega);
    if (band.indices.empty()) {
        throw ParameterError("empty frequency band: omega = " + format_double(omega) +
                             " admits no graph frequencies");
    }
    const int n = basis.size();
    std::vector<char> in_band(n, 0);
    for (int j : band.indices) in_band[j] = 1;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(n);
    std::vector<char> assigned(n, 0);
    for (int j : band.indices) {
        if (assigned[j]) continue;
        const int p = basis.conjugate_partner[j];
        if (p == j) {
            coeffs(j) = std::complex<double>(gauss(rng), 0.0);
            assigned[j] = 1;
            continue;
        }
        if (!in_band[p]) {
            // A real signal cannot occupy half a conjugate pair; keep both.
            std::cerr << "dgs: warning: band omega = " << format_double(omega)
                      << " splits a conjugate pair; including partner index " << p << "\n";
        }
        const std::complex<double> c(gauss(rng), gauss(rng));
        coeffs(j) = c;
        coeffs(p) = std::conj(c);
        assigned[j] = 1;
        assigned[p] = 1;
    }

    Eigen::VectorXd y = igft(basis, coeffs);
    const double norm = y.norm();
    if (!(norm > 0.0)) {
        throw SpectralError("bandlimited init degenerated to the zero vector");
    }
    return y * (amplitude / norm);
}

SupportResult support_bandwidth(const SpectralBasis& basis, const Eigen::VectorXd& y,
                                double rel_tol) {
    if (rel_tol < 0.0) {
        throw ParameterError("rel_tol must be non-negative");
    }
    if (!(y.norm() > 0.0)) {
        throw ParameterError("support_bandwidth: degenerate zero signal");
    }
    Eigen::VectorXcd coeffs = gft(basis, y);
    const double cmax = coeffs.cwiseAbs().maxCoeff();
    SupportResult result;
    double d_max = 0.0;
    for (int j = 0; j < basis.size(); ++j) {
        if (std::abs(coeffs(j)) >= rel_tol * cmax) {
            result.indices.push_back(j);
            d_max = std::max(d_max, basis.band_distance(j));
        }
    }
    // Nudge keeps the support strictly inside the reported band.
    result.omega_c = std::max(d_max + 1e-12, d_max * (1.0 + 1e-12));
    return result;
}

void save_basis_json(const SpectralBasis& basis, const std::filesystem::path& path) {
    nlohmann::json doc;
    nlohmann::json evs = nlohmann::json::array();
    for (int j = 0; j < basis.size(); ++j) {
        evs.push_back({basis.eigenvalues(j).real(), basis.eigenvalues(j).imag()});
    }
    doc["eigenvalues"] = std::move(evs);
    doc["lambda_max_mag"] = basis.lambda_max_mag;
    doc["order"] = basis.order;
    doc["condition_number"] = basis.condition_number;
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write basis file: " + path.string());
    }
    out << doc.dump(2) << "\n";
}

}  // namespace dgs
