#include "ssfol/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "ssfol/errors.hpp"
#include "ssfol/geometry.hpp"
#include "ssfol/rng.hpp"

namespace ssfol {

namespace detail {

Eigen::MatrixXd push_frame(const Eigen::MatrixXd& J, const Eigen::MatrixXd& Q,
                           Eigen::VectorXd* log_growth) {
    Eigen::MatrixXd Z = J * Q;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Z);
    const int k = int(Q.cols());
    Eigen::MatrixXd Qn = qr.householderQ() * Eigen::MatrixXd::Identity(Z.rows(), k);
    Eigen::MatrixXd R = Qn.transpose() * Z;
    for (int j = 0; j < k; ++j) {
        if (R(j, j) < 0.0) {
            Qn.col(j) *= -1.0;
            R.row(j) *= -1.0;
        }
        if (log_growth) (*log_growth)[j] += std::log(std::max(R(j, j), 1e-300));
    }
    return Qn;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> trailing_splitting(
    const std::vector<Eigen::MatrixXd>& jacobians, int from, int m, int max_horizon,
    int* used_horizon) {
    const int d = int(jacobians[from].rows());
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(d, d);
    Eigen::MatrixXd w_prev;
    int h = 0;
    for (; h < max_horizon && from + h < int(jacobians.size()); ++h) {
        P = jacobians[from + h] * P;
        double nrm = P.norm();
        if (nrm > 1e120 || nrm < 1e-120) P /= nrm;
        if ((h + 1) % 5 == 0 || h + 1 == max_horizon || from + h + 1 == int(jacobians.size())) {
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(P, Eigen::ComputeFullV);
            Eigen::MatrixXd w = svd.matrixV().leftCols(m);
            if (w_prev.size() && principal_angle_gap(w, w_prev) < 1e-13) {
                w_prev = w;
                ++h;
                break;
            }
            w_prev = w;
            // Deep underflow makes further steps uninformative for the split.
            double ratio = svd.singularValues()[std::min(m, d - 1)] /
                           std::max(svd.singularValues()[0], 1e-300);
            if (ratio < 1e-240) {
                ++h;
                break;
            }
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(P, Eigen::ComputeFullV);
    Eigen::MatrixXd w_top = svd.matrixV().leftCols(m);
    Eigen::MatrixXd e_minus = svd.matrixV().rightCols(d - m);
    if (used_horizon) *used_horizon = h;
    return {w_top, e_minus};
}

Eigen::MatrixXd oblique_projector(const Eigen::MatrixXd& u, const Eigen::MatrixXd& w_top) {
    Eigen::MatrixXd wu = w_top.transpose() * u; // m x m
    Eigen::FullPivLU<Eigen::MatrixXd> lu(wu);
    if (!lu.isInvertible())
        throw IllConditionedProjector("splitting degenerate: E+ intersects E-");
    return u * lu.solve(w_top.transpose());
}

} // namespace detail

double principal_angle_gap(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(B.transpose() * A);
    double smin = svd.singularValues().tail(1)[0];
    smin = std::min(1.0, smin);
    return std::sqrt(std::max(0.0, 1.0 - smin * smin));
}

namespace {

std::vector<ExponentCluster> cluster_exponents(const Eigen::VectorXd& sorted, double gap) {
    std::vector<ExponentCluster> out;
    int i = 0;
    while (i < sorted.size()) {
        int j = i;
        double sum = 0.0;
        while (j < sorted.size() && (j == i || sorted[j - 1] - sorted[j] <= gap)) {
            sum += sorted[j];
            ++j;
        }
        out.push_back({sum / (j - i), j - i});
        i = j;
    }
    return out;
}

LyapunovSpectrum exponents_from_jacobians(const std::vector<Eigen::MatrixXd>& jac, int from, int N,
                                          double cluster_gap) {
    const int d = int(jac[from].rows());
    Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(d, d);
    Eigen::VectorXd logs = Eigen::VectorXd::Zero(d);
    // Running means over the last quarter for the residual report.
    const int tail_start = from + (3 * N) / 4;
    Eigen::VectorXd tail_min = Eigen::VectorXd::Constant(d, 1e300);
    Eigen::VectorXd tail_max = Eigen::VectorXd::Constant(d, -1e300);
    for (int i = 0; i < N; ++i) {
        Q = detail::push_frame(jac[from + i], Q, &logs);
        if (from + i >= tail_start) {
            Eigen::VectorXd mean = logs / double(i + 1);
            tail_min = tail_min.cwiseMin(mean);
            tail_max = tail_max.cwiseMax(mean);
        }
    }
    LyapunovSpectrum out;
    out.horizon = N;
    out.exponents = logs / double(N);
    out.residuals = tail_max - tail_min;
    // QR ordering is descending after the transient for generic data; enforce.
    std::vector<int> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return out.exponents[a] > out.exponents[b]; });
    Eigen::VectorXd se(d), sr(d);
    for (int i = 0; i < d; ++i) {
        se[i] = out.exponents[idx[i]];
        sr[i] = out.residuals[idx[i]];
    }
    out.exponents = se;
    out.residuals = sr;
    out.clusters = cluster_exponents(out.exponents, cluster_gap);
    return out;
}

} // namespace

LyapunovSpectrum lyapunov_exponents_along(const std::vector<Eigen::MatrixXd>& jacobians, int from,
                                          int N, double cluster_gap) {
    if (from < 0 || from + N > int(jacobians.size()))
        throw BadParams("lyapunov_exponents_along: window outside stored jacobians");
    return exponents_from_jacobians(jacobians, from, N, cluster_gap);
}

LyapunovSpectrum lyapunov_exponents(const DynamicalSystem& sys, const Eigen::VectorXd& x0, int N,
                                    double cluster_gap, std::uint64_t) {
    if (N < 100) throw BadParams("lyapunov_exponents: N must be >= 100");
    auto orb = orbit(sys, x0, N);
    auto jac = differential_along(sys, orb);
    return exponents_from_jacobians(jac, 0, N, cluster_gap);
}

OseledetsData splitting_at(const DynamicalSystem& sys, const std::vector<Eigen::VectorXd>& base_orbit,
                           int j, double lambda_star, double p_hat, int N, int expected_m,
                           std::uint64_t seed) {
    if (j < N) throw BadParams("splitting_at: need a length-N pre-orbit segment (j >= N)");
    if (j >= int(base_orbit.size())) throw BadParams("splitting_at: index outside orbit");
    if (p_hat <= 0.0) throw BadParams("splitting_at: p_hat must be positive");
    const int d = sys.dim();

    auto jac = differential_along(sys, base_orbit);

    // Finite-time exponents over the pre-orbit window ending at j.
    LyapunovSpectrum spec = exponents_from_jacobians(jac, j - N, N, 1.0 / p_hat);

    // Gap condition of Gamma(lambda*; m, p): no exponent within 1/p_hat.
    for (int i = 0; i < spec.exponents.size(); ++i) {
        if (std::abs(spec.exponents[i] - lambda_star) <= 1.0 / p_hat)
            throw NoSpectralGap("exponent " + std::to_string(spec.exponents[i]) +
                                " violates the gap condition at lambda* = " +
                                std::to_string(lambda_star));
    }
    int m = 0;
    while (m < spec.exponents.size() && spec.exponents[m] > lambda_star) ++m;
    if (expected_m >= 0 && m != expected_m)
        throw NoSpectralGap("requested dim E+ = " + std::to_string(expected_m) +
                            " but measured spectrum gives " + std::to_string(m));
    if (m < 1 || m >= d) throw NoSpectralGap("splitting needs 1 <= dim E+ < d");

    OseledetsData out;
    out.base_point = base_orbit[j];
    out.exponents = spec.exponents;
    out.clusters = spec.clusters;
    out.lambda_star = lambda_star;
    out.p_hat = p_hat;
    out.lambda_plus = lambda_star + 0.5 / p_hat;
    out.lambda_minus = lambda_star - 0.5 / p_hat;
    out.m = m;
    out.horizon = N;

    // E+ : push a seeded frame along the pre-orbit.
    Rng rng(seed, 11);
    Eigen::MatrixXd U = orthonormalize(rng.gaussian_matrix(d, m));
    for (int i = j - N; i < j; ++i) U = detail::push_frame(jac[i], U);
    out.e_plus = U;

    // E- : trailing right-singular subspace of the forward cocycle at j.
    int avail = int(jac.size()) - j;
    if (avail < 5) throw BadParams("splitting_at: too little stored forward orbit for E-");
    auto [w_top, e_minus] = detail::trailing_splitting(jac, j, m, std::min(N, avail));
    out.w_top = w_top;
    out.e_minus = e_minus;

    out.pi_plus = detail::oblique_projector(out.e_plus, out.w_top);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.pi_plus);
    if (svd.singularValues()[0] > 1e6)
        throw IllConditionedProjector("splitting projector norm exceeds 1e6");
    return out;
}

} // namespace ssfol
