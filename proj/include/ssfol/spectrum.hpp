#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ssfol/systems.hpp"

namespace ssfol {

struct ExponentCluster {
    double exponent = 0.0; // multiplicity-averaged value
    int multiplicity = 0;
};

struct LyapunovSpectrum {
    Eigen::VectorXd exponents; // all d, sorted descending
    std::vector<ExponentCluster> clusters;
    Eigen::VectorXd residuals; // drift of running means over the last N/4 steps
    int horizon = 0;
};

/// Discrete-QR finite-time exponents (1/N) sum log R_jj along the orbit of
/// x0, grouped into clusters separated by more than cluster_gap.
LyapunovSpectrum lyapunov_exponents(const DynamicalSystem& sys, const Eigen::VectorXd& x0, int N,
                                    double cluster_gap = 0.1, std::uint64_t seed = 3);

/// Same computation along a stored orbit segment [from, from + N].
LyapunovSpectrum lyapunov_exponents_along(const std::vector<Eigen::MatrixXd>& jacobians, int from,
                                          int N, double cluster_gap = 0.1);

/// Oseledets-type data at one base point: cutoff, rates, fast subspace E+,
/// slow subspace E- and the projector through E+ along E-.
struct OseledetsData {
    Eigen::VectorXd base_point;
    Eigen::VectorXd exponents; // finite-time, sorted descending
    std::vector<ExponentCluster> clusters;

    double lambda_star = 0.0;
    double p_hat = 1.0;
    double lambda_plus = 0.0;  // lambda_star + 1/(2 p_hat)
    double lambda_minus = 0.0; // lambda_star - 1/(2 p_hat)
    int m = 0;                 // dim E+

    Eigen::MatrixXd e_plus;  // d x m, orthonormal
    Eigen::MatrixXd e_minus; // d x (d-m), orthonormal
    Eigen::MatrixXd w_top;   // d x m, orthonormal basis of the complement of E-
    Eigen::MatrixXd pi_plus; // d x d projector: range E+, kernel E-

    int horizon = 0;
};

/// Splitting at x_j for a stored orbit: E+ by pushing a seeded m-frame along
/// the length-N pre-orbit with re-orthonormalization, E- as the trailing
/// right-singular subspace of the forward cocycle at x_j (adaptive horizon
/// with underflow guard), projector solved from the pair.
/// Requires j >= N and enough stored forward orbit; expected_m < 0 derives m
/// from the measured exponents against lambda_star.
OseledetsData splitting_at(const DynamicalSystem& sys, const std::vector<Eigen::VectorXd>& base_orbit,
                           int j, double lambda_star, double p_hat, int N, int expected_m = -1,
                           std::uint64_t seed = 3);

/// sin of the largest principal angle between two orthonormal frames
/// (Euclidean surrogate for subspace drift diagnostics).
double principal_angle_gap(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

namespace detail {

/// Push an orthonormal frame one step: QR of (J * Q) with positive diagonal.
Eigen::MatrixXd push_frame(const Eigen::MatrixXd& J, const Eigen::MatrixXd& Q,
                           Eigen::VectorXd* log_growth = nullptr);

/// Trailing right-singular splitting of the product of jacobians
/// J_{from+h-1} ... J_{from}: returns (w_top, e_minus) for the given m.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> trailing_splitting(
    const std::vector<Eigen::MatrixXd>& jacobians, int from, int m, int max_horizon,
    int* used_horizon = nullptr);

/// Projector with range spanned by u and kernel the complement of w_top.
Eigen::MatrixXd oblique_projector(const Eigen::MatrixXd& u, const Eigen::MatrixXd& w_top);

} // namespace detail

} // namespace ssfol
