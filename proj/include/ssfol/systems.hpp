#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "ssfol/normed_space.hpp"

namespace ssfol {

enum class SystemKind { LinearDiag, PerturbedLinear, GalerkinParabolic };

std::string to_string(SystemKind k);
SystemKind system_kind_from_string(const std::string& s);

struct SystemConfig {
    SystemKind kind = SystemKind::LinearDiag;
    int dim = 4;

    // linear-diag / perturbed-linear: diagonal multipliers, positive,
    // non-increasing, none equal to 1
    Eigen::VectorXd spectrum;

    // perturbed-linear: x -> D x + epsilon * g(x), g a compactly supported
    // smooth bump field with exact derivative
    double epsilon = 0.0;
    double bump_radius = 2.0;
    Eigen::VectorXd bump_center; // empty = origin
    std::uint64_t seed = 1;

    // galerkin-parabolic: time-tau map of the d-mode truncation of
    // u_t = u_xx + lambda u - u^3 on [0, pi], Dirichlet
    double pde_lambda = 2.0;
    double time_step = 0.05;

    double region_radius = 1e9;
};

/// Injective C^2 map of the ambient space with injective derivative.
class DynamicalSystem {
  public:
    virtual ~DynamicalSystem() = default;

    const NormedSpace& space() const { return space_; }
    int dim() const { return space_.dim; }
    const SystemConfig& config() const { return cfg_; }

    virtual Eigen::VectorXd eval(const Eigen::VectorXd& x) const = 0;
    virtual Eigen::MatrixXd diff(const Eigen::VectorXd& x) const = 0;

    virtual bool invertible() const = 0;
    virtual Eigen::VectorXd eval_inverse(const Eigen::VectorXd& y) const;

    /// Bound on Lip(df) over the working region (0 for linear systems,
    /// probe-based estimate otherwise).
    double diff_lipschitz() const { return diff_lipschitz_; }
    double region_radius() const { return cfg_.region_radius; }

    bool in_region(const Eigen::VectorXd& x) const {
        return space_.norm(x) <= cfg_.region_radius;
    }

  protected:
    DynamicalSystem(const SystemConfig& cfg, const NormedSpace& space)
        : cfg_(cfg), space_(space) {}

    SystemConfig cfg_;
    NormedSpace space_;
    double diff_lipschitz_ = 0.0;
};

/// Builds one of the builtin test systems; throws BadParams with an
/// explanation when the configuration leaves its documented stability range.
std::unique_ptr<DynamicalSystem> make_builtin(const SystemConfig& cfg, const NormedSpace& space);
std::unique_ptr<DynamicalSystem> make_builtin(const SystemConfig& cfg);

/// [x0, f(x0), ..., f^n(x0)]; aborts with OrbitEscape when an iterate leaves
/// the working region.
std::vector<Eigen::VectorXd> orbit(const DynamicalSystem& sys, const Eigen::VectorXd& x0, int n);

/// One derivative per orbit point except the last; each entry must pass the
/// injectivity check (smallest singular value > 1e-10), else
/// NonInjectiveDerivative.
std::vector<Eigen::MatrixXd> differential_along(const DynamicalSystem& sys,
                                                const std::vector<Eigen::VectorXd>& orb);

/// Central finite differences with step 1e-6 * scale.
Eigen::MatrixXd finite_difference_diff(const DynamicalSystem& sys, const Eigen::VectorXd& x);

/// Newton search for a fixed point near the initial guess.
Eigen::VectorXd find_fixed_point(const DynamicalSystem& sys, const Eigen::VectorXd& guess,
                                 double tol = 1e-13, int max_iter = 100);

} // namespace ssfol
