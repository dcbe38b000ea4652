#include "ssfol/systems.hpp"

#include <cmath>

#include "ssfol/errors.hpp"
#include "ssfol/rng.hpp"

namespace ssfol {

std::string to_string(SystemKind k) {
    switch (k) {
        case SystemKind::LinearDiag: return "linear-diag";
        case SystemKind::PerturbedLinear: return "perturbed-linear";
        case SystemKind::GalerkinParabolic: return "galerkin-parabolic";
    }
    return "linear-diag";
}

SystemKind system_kind_from_string(const std::string& s) {
    if (s == "linear-diag") return SystemKind::LinearDiag;
    if (s == "perturbed-linear") return SystemKind::PerturbedLinear;
    if (s == "galerkin-parabolic") return SystemKind::GalerkinParabolic;
    throw ConfigError("unknown system kind: " + s);
}

Eigen::VectorXd DynamicalSystem::eval_inverse(const Eigen::VectorXd&) const {
    throw NotInvertible(to_string(cfg_.kind) + " has no inverse map");
}

namespace {

void check_spectrum(const Eigen::VectorXd& mu) {
    if (mu.size() == 0) throw BadParams("linear-diag: spectrum required");
    for (int i = 0; i < mu.size(); ++i) {
        if (!(mu[i] > 0.0)) throw BadParams("linear-diag: multipliers must be positive");
        if (mu[i] == 1.0) throw BadParams("linear-diag: multiplier 1 breaks hyperbolicity");
        if (i > 0 && mu[i] > mu[i - 1]) throw BadParams("linear-diag: spectrum must be non-increasing");
    }
}

class LinearDiagSystem : public DynamicalSystem {
  public:
    LinearDiagSystem(const SystemConfig& cfg, const NormedSpace& space)
        : DynamicalSystem(cfg, space), d_(cfg.spectrum) {
        if (cfg.spectrum.size() != cfg.dim) throw BadParams("linear-diag: spectrum size != dim");
        check_spectrum(d_);
        diff_lipschitz_ = 0.0;
    }

    Eigen::VectorXd eval(const Eigen::VectorXd& x) const override { return d_.asDiagonal() * x; }

    Eigen::MatrixXd diff(const Eigen::VectorXd&) const override {
        return Eigen::MatrixXd(d_.asDiagonal());
    }

    bool invertible() const override { return true; }

    Eigen::VectorXd eval_inverse(const Eigen::VectorXd& y) const override {
        return d_.cwiseInverse().asDiagonal() * y;
    }

  private:
    Eigen::VectorXd d_;
};

// Smooth compactly supported bump profile on [0, 1): phi(0) = 1, C-infinity.
inline double bump_phi(double rho) {
    if (rho >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - rho));
}

inline double bump_phi_prime(double rho) {
    if (rho >= 1.0) return 0.0;
    double om = 1.0 - rho;
    return -bump_phi(rho) / (om * om);
}

class PerturbedLinearSystem : public DynamicalSystem {
  public:
    PerturbedLinearSystem(const SystemConfig& cfg, const NormedSpace& space)
        : DynamicalSystem(cfg, space), d_(cfg.spectrum) {
        if (cfg.spectrum.size() != cfg.dim) throw BadParams("perturbed-linear: spectrum size != dim");
        check_spectrum(d_);
        if (cfg.epsilon < 0.0) throw BadParams("perturbed-linear: epsilon must be >= 0");
        if (cfg.bump_radius <= 0.0) throw BadParams("perturbed-linear: bump_radius must be > 0");
        const int d = cfg.dim;
        center_ = cfg.bump_center.size() ? cfg.bump_center : Eigen::VectorXd::Zero(d);
        if (center_.size() != d) throw BadParams("perturbed-linear: bump_center size != dim");

        Rng rng(cfg.seed, 5);
        amp_.resize(d);
        phase_.resize(d);
        kappa_ = Eigen::MatrixXd(d, d);
        for (int i = 0; i < d; ++i) {
            amp_[i] = rng.uniform(0.5, 1.0);
            phase_[i] = rng.uniform(0.0, 2.0 * M_PI);
            kappa_.row(i) = rng.unit_vector(d).transpose();
        }

        // Injectivity margin: the perturbation must not overwhelm the linear
        // part anywhere in the bump support.
        double lip_dg = probe_bump_derivative_lipschitz();
        double lip_g = probe_bump_lipschitz();
        if (cfg.epsilon * lip_g >= 0.9 * d_.minCoeff())
            throw BadParams("perturbed-linear: epsilon too large, df may lose injectivity");
        diff_lipschitz_ = cfg.epsilon * lip_dg;
    }

    Eigen::VectorXd eval(const Eigen::VectorXd& x) const override {
        return d_.asDiagonal() * x + cfg_.epsilon * bump(x);
    }

    Eigen::MatrixXd diff(const Eigen::VectorXd& x) const override {
        Eigen::MatrixXd J(d_.asDiagonal());
        if (cfg_.epsilon != 0.0) J += cfg_.epsilon * bump_diff(x);
        return J;
    }

    bool invertible() const override { return true; }

    Eigen::VectorXd eval_inverse(const Eigen::VectorXd& y) const override {
        Eigen::VectorXd x = d_.cwiseInverse().asDiagonal() * y;
        for (int it = 0; it < 60; ++it) {
            Eigen::VectorXd res = eval(x) - y;
            if (res.norm() <= 1e-14 * (1.0 + y.norm())) return x;
            x -= diff(x).partialPivLu().solve(res);
        }
        Eigen::VectorXd res = eval(x) - y;
        if (res.norm() <= 1e-10 * (1.0 + y.norm())) return x;
        throw NotInvertible("perturbed-linear: inverse Newton failed to converge");
    }

    Eigen::VectorXd bump(const Eigen::VectorXd& x) const {
        const int d = dim();
        Eigen::VectorXd s = x - center_;
        double rho = s.squaredNorm() / (cfg_.bump_radius * cfg_.bump_radius);
        Eigen::VectorXd g = Eigen::VectorXd::Zero(d);
        if (rho >= 1.0) return g;
        double phi = bump_phi(rho);
        for (int i = 0; i < d; ++i) g[i] = phi * amp_[i] * std::sin(kappa_.row(i).dot(s) + phase_[i]);
        return g;
    }

    Eigen::MatrixXd bump_diff(const Eigen::VectorXd& x) const {
        const int d = dim();
        Eigen::VectorXd s = x - center_;
        const double R2 = cfg_.bump_radius * cfg_.bump_radius;
        double rho = s.squaredNorm() / R2;
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(d, d);
        if (rho >= 1.0) return J;
        double phi = bump_phi(rho);
        double dphi = bump_phi_prime(rho);
        for (int i = 0; i < d; ++i) {
            double arg = kappa_.row(i).dot(s) + phase_[i];
            J.row(i) = amp_[i] * (dphi * std::sin(arg) * (2.0 / R2) * s.transpose() +
                                  phi * std::cos(arg) * kappa_.row(i));
        }
        return J;
    }

  private:
    double probe_bump_lipschitz() const {
        Rng rng(cfg_.seed, 6);
        double worst = 0.0;
        for (int i = 0; i < 400; ++i) {
            Eigen::VectorXd x =
                center_ + cfg_.bump_radius * rng.uniform(0.0, 1.0) * rng.unit_vector(dim());
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(bump_diff(x));
            worst = std::max(worst, svd.singularValues()[0]);
        }
        return 1.5 * worst;
    }

    double probe_bump_derivative_lipschitz() const {
        Rng rng(cfg_.seed, 7);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            Eigen::VectorXd x =
                center_ + cfg_.bump_radius * rng.uniform(0.0, 1.0) * rng.unit_vector(dim());
            Eigen::VectorXd h = 1e-5 * rng.unit_vector(dim());
            double slope = (bump_diff(x + h) - bump_diff(x - h)).norm() / (2.0 * h.norm());
            worst = std::max(worst, slope);
        }
        return 1.5 * worst;
    }

    Eigen::VectorXd d_;
    Eigen::VectorXd center_;
    Eigen::VectorXd amp_, phase_;
    Eigen::MatrixXd kappa_;
};

// phi1(z) = (e^z - 1) / z, stable near 0.
inline double phi1(double z) {
    if (std::abs(z) < 1e-5) return 1.0 + z / 2.0 + z * z / 6.0;
    return std::expm1(z) / z;
}

// Time-tau map of the spectral d-mode truncation of u_t = u_xx + lambda u - u^3
// on [0, pi] with Dirichlet conditions: exponential-integrator step, linear
// part exact, explicit nonlinearity.  The quadrature grid has 4d interior
// points, enough to project u^3 without aliasing.
class GalerkinParabolicSystem : public DynamicalSystem {
  public:
    GalerkinParabolicSystem(const SystemConfig& cfg, const NormedSpace& space)
        : DynamicalSystem(cfg, space) {
        if (cfg.dim < 1) throw BadParams("galerkin-parabolic: need at least one mode");
        if (cfg.time_step <= 0.0) throw BadParams("galerkin-parabolic: time step must be > 0");
        const int d = cfg.dim;
        const int M = 4 * d;
        const double tau = cfg.time_step;

        S_ = Eigen::MatrixXd(M - 1, d);
        for (int q = 1; q < M; ++q) {
            double x = M_PI * q / M;
            for (int j = 1; j <= d; ++j) S_(q - 1, j - 1) = std::sqrt(2.0 / M_PI) * std::sin(j * x);
        }
        wq_ = M_PI / M;

        expL_.resize(d);
        tphi_.resize(d);
        for (int j = 1; j <= d; ++j) {
            double ell = cfg.pde_lambda - double(j) * double(j);
            expL_[j - 1] = std::exp(ell * tau);
            tphi_[j - 1] = tau * phi1(ell * tau);
        }

        diff_lipschitz_ = probe_diff_lipschitz();
    }

    Eigen::VectorXd eval(const Eigen::VectorXd& a) const override {
        return expL_.asDiagonal() * a + tphi_.asDiagonal() * nonlinearity(a);
    }

    Eigen::MatrixXd diff(const Eigen::VectorXd& a) const override {
        Eigen::VectorXd u = S_ * a;
        Eigen::VectorXd u2 = u.array().square();
        Eigen::MatrixXd dN = -3.0 * wq_ * S_.transpose() * u2.asDiagonal() * S_;
        Eigen::MatrixXd J = tphi_.asDiagonal() * dN;
        J += Eigen::MatrixXd(expL_.asDiagonal());
        return J;
    }

    bool invertible() const override { return false; }

    Eigen::VectorXd nonlinearity(const Eigen::VectorXd& a) const {
        Eigen::VectorXd u = S_ * a;
        Eigen::VectorXd u3 = u.array().cube();
        return -wq_ * (S_.transpose() * u3);
    }

  private:
    double probe_diff_lipschitz() const {
        Rng rng(991, 8);
        double worst = 0.0;
        const int d = dim();
        for (int i = 0; i < 100; ++i) {
            Eigen::VectorXd a = rng.gaussian_vector(d);
            for (int j = 0; j < d; ++j) a[j] /= (1.0 + j); // smooth-ish states
            Eigen::VectorXd h = 1e-5 * rng.unit_vector(d);
            double slope = (diff(a + h) - diff(a - h)).norm() / (2.0 * h.norm());
            worst = std::max(worst, slope);
        }
        return 1.5 * worst;
    }

    Eigen::MatrixXd S_;
    double wq_ = 0.0;
    Eigen::VectorXd expL_, tphi_;
};

} // namespace

std::unique_ptr<DynamicalSystem> make_builtin(const SystemConfig& cfg, const NormedSpace& space) {
    if (space.dim != cfg.dim) throw BadParams("make_builtin: norm dimension != system dimension");
    switch (cfg.kind) {
        case SystemKind::LinearDiag: return std::make_unique<LinearDiagSystem>(cfg, space);
        case SystemKind::PerturbedLinear: return std::make_unique<PerturbedLinearSystem>(cfg, space);
        case SystemKind::GalerkinParabolic:
            return std::make_unique<GalerkinParabolicSystem>(cfg, space);
    }
    throw BadParams("make_builtin: unknown system kind");
}

std::unique_ptr<DynamicalSystem> make_builtin(const SystemConfig& cfg) {
    return make_builtin(cfg, NormedSpace::l2(cfg.dim));
}

std::vector<Eigen::VectorXd> orbit(const DynamicalSystem& sys, const Eigen::VectorXd& x0, int n) {
    if (n < 0) throw BadParams("orbit: n must be >= 0");
    std::vector<Eigen::VectorXd> out;
    out.reserve(n + 1);
    Eigen::VectorXd x = x0;
    if (!sys.in_region(x)) throw OrbitEscape("orbit: initial point outside working region");
    out.push_back(x);
    for (int i = 0; i < n; ++i) {
        x = sys.eval(x);
        if (!sys.in_region(x))
            throw OrbitEscape("orbit: iterate " + std::to_string(i + 1) + " left the region");
        out.push_back(x);
    }
    return out;
}

std::vector<Eigen::MatrixXd> differential_along(const DynamicalSystem& sys,
                                                const std::vector<Eigen::VectorXd>& orb) {
    if (orb.empty()) throw BadParams("differential_along: empty orbit");
    std::vector<Eigen::MatrixXd> out;
    out.reserve(orb.size() - 1);
    for (size_t i = 0; i + 1 < orb.size(); ++i) {
        Eigen::MatrixXd J = sys.diff(orb[i]);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
        if (svd.singularValues().tail(1)[0] <= 1e-10)
            throw NonInjectiveDerivative("df not injective at orbit index " + std::to_string(i));
        out.push_back(std::move(J));
    }
    return out;
}

Eigen::MatrixXd finite_difference_diff(const DynamicalSystem& sys, const Eigen::VectorXd& x) {
    const int d = sys.dim();
    const double step = 1e-6 * (1.0 + x.norm());
    Eigen::MatrixXd J(d, d);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
    for (int j = 0; j < d; ++j) {
        e[j] = step;
        J.col(j) = (sys.eval(x + e) - sys.eval(x - e)) / (2.0 * step);
        e[j] = 0.0;
    }
    return J;
}

Eigen::VectorXd find_fixed_point(const DynamicalSystem& sys, const Eigen::VectorXd& guess,
                                 double tol, int max_iter) {
    Eigen::VectorXd x = guess;
    const int d = sys.dim();
    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXd res = sys.eval(x) - x;
        if (res.norm() <= tol * (1.0 + x.norm())) return x;
        Eigen::MatrixXd J = sys.diff(x) - Eigen::MatrixXd::Identity(d, d);
        x -= J.partialPivLu().solve(res);
    }
    Eigen::VectorXd res = sys.eval(x) - x;
    if (res.norm() <= 1e3 * tol * (1.0 + x.norm())) return x;
    throw NoConvergence("find_fixed_point: Newton did not converge");
}

} // namespace ssfol
