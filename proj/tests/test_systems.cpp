#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ssfol/errors.hpp"
#include "ssfol/rng.hpp"
#include "ssfol/systems.hpp"

using namespace ssfol;

namespace {

SystemConfig linear_cfg() {
    SystemConfig cfg;
    cfg.kind = SystemKind::LinearDiag;
    cfg.dim = 2;
    cfg.spectrum = Eigen::VectorXd(2);
    cfg.spectrum << 2.0, 0.5;
    return cfg;
}

SystemConfig perturbed_cfg(double eps) {
    SystemConfig cfg;
    cfg.kind = SystemKind::PerturbedLinear;
    cfg.dim = 4;
    cfg.spectrum = Eigen::VectorXd(4);
    cfg.spectrum << 2.0, 1.8, 0.55, 0.4;
    cfg.epsilon = eps;
    cfg.bump_radius = 2.0;
    cfg.seed = 42;
    return cfg;
}

SystemConfig galerkin_cfg(int modes, double lambda, double tau) {
    SystemConfig cfg;
    cfg.kind = SystemKind::GalerkinParabolic;
    cfg.dim = modes;
    cfg.pde_lambda = lambda;
    cfg.time_step = tau;
    cfg.region_radius = 50.0;
    return cfg;
}

} // namespace

TEST_CASE("linear-diag basics") {
    auto sys = make_builtin(linear_cfg());
    Eigen::VectorXd x(2);
    x << 1.0, 1.0;
    Eigen::VectorXd y = sys->eval(x);
    CHECK(y[0] == 2.0);
    CHECK(y[1] == 0.5);

    auto orb = orbit(*sys, x, 2);
    REQUIRE(orb.size() == 3);
    CHECK(orb[2][0] == 4.0);
    CHECK(orb[2][1] == 0.25);

    auto orb0 = orbit(*sys, x, 0);
    CHECK(orb0.size() == 1);

    auto diffs = differential_along(*sys, orb);
    REQUIRE(diffs.size() == 2);
    CHECK((diffs[0] - Eigen::MatrixXd(sys->config().spectrum.asDiagonal())).norm() == 0.0);

    CHECK(sys->eval_inverse(y).isApprox(x, 1e-14));
    CHECK(sys->diff_lipschitz() == 0.0);
}

TEST_CASE("bad parameters are rejected") {
    SystemConfig cfg = linear_cfg();
    cfg.spectrum[1] = -0.5;
    CHECK_THROWS_AS(make_builtin(cfg), BadParams);
    cfg = linear_cfg();
    cfg.spectrum[1] = 1.0;
    CHECK_THROWS_AS(make_builtin(cfg), BadParams);
    cfg = perturbed_cfg(5.0); // overwhelms the linear part
    CHECK_THROWS_AS(make_builtin(cfg), BadParams);
    cfg = galerkin_cfg(8, 2.0, -0.1);
    CHECK_THROWS_AS(make_builtin(cfg), BadParams);
}

TEST_CASE("perturbed-linear") {
    SUBCASE("epsilon = 0 degenerates to the linear map") {
        auto sys0 = make_builtin(perturbed_cfg(0.0));
        SystemConfig lin = perturbed_cfg(0.0);
        lin.kind = SystemKind::LinearDiag;
        auto sysl = make_builtin(lin);
        Rng rng(7);
        for (int i = 0; i < 50; ++i) {
            Eigen::VectorXd x = 3.0 * rng.gaussian_vector(4);
            CHECK((sys0->eval(x) - sysl->eval(x)).norm() == 0.0);
        }
    }

    SUBCASE("outside the bump support the map is exactly linear") {
        auto sys = make_builtin(perturbed_cfg(1e-2));
        Eigen::VectorXd far(4);
        far << 5.0, 0.0, 0.0, 0.0; // |x| > bump_radius
        Eigen::VectorXd lin = sys->config().spectrum.asDiagonal() * far;
        CHECK((sys->eval(far) - lin).norm() == 0.0);
        CHECK((sys->diff(far) - Eigen::MatrixXd(sys->config().spectrum.asDiagonal())).norm() ==
              0.0);
    }

    SUBCASE("exact derivative matches central differences inside the support") {
        auto sys = make_builtin(perturbed_cfg(1e-2));
        Rng rng(17);
        for (int i = 0; i < 25; ++i) {
            Eigen::VectorXd x = rng.uniform(0.0, 0.9) * 2.0 * rng.unit_vector(4);
            Eigen::MatrixXd J = sys->diff(x);
            Eigen::MatrixXd Jfd = finite_difference_diff(*sys, x);
            CHECK((J - Jfd).norm() / J.norm() < 1e-5);
        }
    }

    SUBCASE("inverse map round trip") {
        auto sys = make_builtin(perturbed_cfg(1e-2));
        Rng rng(19);
        for (int i = 0; i < 25; ++i) {
            Eigen::VectorXd x = 1.5 * rng.gaussian_vector(4);
            Eigen::VectorXd y = sys->eval(x);
            CHECK((sys->eval_inverse(y) - x).norm() < 1e-11 * (1.0 + x.norm()));
        }
    }

    SUBCASE("(H1) probes: injectivity of f and df") {
        auto sys = make_builtin(perturbed_cfg(1e-3));
        Rng rng(23);
        for (int i = 0; i < 100; ++i) {
            Eigen::VectorXd a = 2.0 * rng.gaussian_vector(4);
            Eigen::VectorXd b = 2.0 * rng.gaussian_vector(4);
            if ((a - b).norm() < 1e-6) continue;
            CHECK((sys->eval(a) - sys->eval(b)).norm() > 1e-12);
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys->diff(a));
            CHECK(svd.singularValues().tail(1)[0] > 1e-10);
        }
    }
}

TEST_CASE("orbit escape") {
    SystemConfig cfg = linear_cfg();
    cfg.region_radius = 10.0;
    auto sys = make_builtin(cfg);
    Eigen::VectorXd x(2);
    x << 1.0, 1.0;
    CHECK_THROWS_AS(orbit(*sys, x, 8), OrbitEscape);
}

TEST_CASE("galerkin-parabolic") {
    SUBCASE("stable regime decays monotonically to zero") {
        auto sys = make_builtin(galerkin_cfg(8, 0.5, 0.05)); // lambda below first eigenvalue
        Rng rng(29);
        Eigen::VectorXd a0(8);
        for (int j = 0; j < 8; ++j) a0[j] = 0.3 * rng.normal() / (1.0 + j * j);
        auto orb = orbit(*sys, a0, 400);
        // After a short transient the norm decreases monotonically to ~0.
        for (size_t i = 5; i + 1 < orb.size(); ++i)
            CHECK(orb[i + 1].norm() <= orb[i].norm() + 1e-14);
        CHECK(orb.back().norm() < 1e-3 * a0.norm());
    }

    SUBCASE("exact derivative matches central differences") {
        auto sys = make_builtin(galerkin_cfg(12, 2.0, 0.05));
        Rng rng(31);
        for (int i = 0; i < 10; ++i) {
            Eigen::VectorXd a(12);
            for (int j = 0; j < 12; ++j) a[j] = 0.5 * rng.normal() / (1.0 + j);
            Eigen::MatrixXd J = sys->diff(a);
            Eigen::MatrixXd Jfd = finite_difference_diff(*sys, a);
            CHECK((J - Jfd).norm() / J.norm() < 1e-5);
        }
    }

    SUBCASE("exponential-integrator consistency order >= 1.8") {
        Rng rng(37);
        Eigen::VectorXd a0(8);
        for (int j = 0; j < 8; ++j) a0[j] = 0.4 * rng.normal() / (1.0 + j * j);
        auto err = [&](double tau) {
            auto one = make_builtin(galerkin_cfg(8, 2.0, tau));
            auto half = make_builtin(galerkin_cfg(8, 2.0, tau / 2.0));
            Eigen::VectorXd full = one->eval(a0);
            Eigen::VectorXd two = half->eval(half->eval(a0));
            return (full - two).norm();
        };
        double order = std::log2(err(0.02) / err(0.01));
        CHECK(order >= 1.8);
    }

    SUBCASE("unstable regime converges to the nonzero steady state") {
        auto sys = make_builtin(galerkin_cfg(12, 2.0, 0.05));
        Rng rng(41);
        Eigen::VectorXd a0(12);
        for (int j = 0; j < 12; ++j) a0[j] = 0.2 * rng.normal() / (1.0 + j * j);
        a0[0] += 0.3;
        auto orb = orbit(*sys, a0, 600);
        Eigen::VectorXd xstar = find_fixed_point(*sys, orb.back());
        CHECK((sys->eval(xstar) - xstar).norm() < 1e-11);
        CHECK(xstar.norm() > 0.1);
        CHECK((orb.back() - xstar).norm() < 1e-4);
    }

    SUBCASE("non-invertible") {
        auto sys = make_builtin(galerkin_cfg(6, 2.0, 0.05));
        CHECK(!sys->invertible());
        CHECK_THROWS_AS(sys->eval_inverse(Eigen::VectorXd::Zero(6)), NotInvertible);
    }
}

TEST_CASE("injectivity guard in differential_along") {
    // A crafted orbit point cannot make builtin derivatives singular, so probe
    // the error path through a nearly-singular spectrum instead.
    SystemConfig cfg;
    cfg.kind = SystemKind::LinearDiag;
    cfg.dim = 2;
    cfg.spectrum = Eigen::VectorXd(2);
    cfg.spectrum << 2.0, 1e-12;
    auto sys = make_builtin(cfg);
    Eigen::VectorXd x(2);
    x << 1.0, 1.0;
    std::vector<Eigen::VectorXd> orb = {x, sys->eval(x)};
    CHECK_THROWS_AS(differential_along(*sys, orb), NonInjectiveDerivative);
}
