#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ssfol/geometry.hpp"
#include "ssfol/json_io.hpp"
#include "ssfol/rng.hpp"

using namespace ssfol;

namespace {

Subspace random_subspace(const NormedSpace& space, int k, Rng& rng, const VolumeConfig& cfg = {}) {
    return Subspace::build(space, rng.gaussian_matrix(space.dim, k), cfg);
}

// Independent hit-or-miss estimate of the slice area {t : |B t| <= 1} for
// k = 2, plain uniform sampling in a generous box.
double slice_area_oracle(const NormedSpace& space, const Eigen::MatrixXd& B, long samples,
                         double box_radius, std::uint64_t seed) {
    Rng rng(seed);
    long hits = 0;
    Eigen::VectorXd t(2);
    for (long i = 0; i < samples; ++i) {
        t[0] = rng.uniform(-box_radius, box_radius);
        t[1] = rng.uniform(-box_radius, box_radius);
        if (space.norm(B * t) <= 1.0) ++hits;
    }
    return double(hits) / double(samples) * 4.0 * box_radius * box_radius;
}

// Largest principal angle gives the Euclidean gap exactly:
// Gap_l2(E, F) = sqrt(1 - sigma_min(F^T E)^2) when dim F >= dim E.
double l2_gap_oracle(const Subspace& E, const Subspace& F) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(F.basis.transpose() * E.basis);
    double smin = svd.singularValues().tail(1)[0];
    smin = std::min(1.0, smin);
    return std::sqrt(std::max(0.0, 1.0 - smin * smin));
}

} // namespace

TEST_CASE("norm axioms on random triples") {
    Rng rng(11);
    std::vector<NormedSpace> spaces = {
        NormedSpace::l1(6), NormedSpace::l2(6), NormedSpace::linf(6),
        NormedSpace::weighted_lp(Eigen::VectorXd::LinSpaced(6, 1.0, 3.5), 3.0)};
    for (const auto& sp : spaces) {
        for (int trial = 0; trial < 200; ++trial) {
            Eigen::VectorXd a = rng.gaussian_vector(6), b = rng.gaussian_vector(6);
            double alpha = rng.uniform(-3.0, 3.0);
            CHECK(sp.norm(a) >= 0.0);
            CHECK(sp.norm(alpha * a) == doctest::Approx(std::abs(alpha) * sp.norm(a)).epsilon(1e-12));
            CHECK(sp.norm(a + b) <= sp.norm(a) + sp.norm(b) + 1e-12);
        }
        CHECK(sp.norm(Eigen::VectorXd::Zero(6)) == 0.0);
    }
}

TEST_CASE("induced volume constants") {
    SUBCASE("l2 slice is exactly Euclidean") {
        Rng rng(3);
        NormedSpace sp = NormedSpace::l2(5);
        auto est = induced_volume_constant(sp, rng.gaussian_matrix(5, 2));
        CHECK(est.value == doctest::Approx(1.0));
        CHECK(est.error == 0.0);
    }

    SUBCASE("linf plane slice: square of area 4") {
        NormedSpace sp = NormedSpace::linf(2);
        auto est = induced_volume_constant(sp, Eigen::MatrixXd::Identity(2, 2));
        CHECK(std::abs(est.value - M_PI / 4.0) <= std::max(3.0 * est.error, 1e-6));
    }

    SUBCASE("l1 coordinate plane in R^3: diamond of area 2") {
        NormedSpace sp = NormedSpace::l1(3);
        Eigen::MatrixXd B(3, 2);
        B << 1, 0, 0, 1, 0, 0;
        auto est = induced_volume_constant(sp, B);
        CHECK(std::abs(est.value - M_PI / 2.0) <= std::max(3.0 * est.error, 1e-6));
        // brute-force hit-or-miss oracle
        double area = slice_area_oracle(sp, B, 10000000L, 1.0, 99);
        CHECK(std::abs(area - 2.0) < 2e-3);
        CHECK(std::abs(euclidean_ball_volume(2) / area - est.value) < 2e-3);
    }

    SUBCASE("k=1 closed form") {
        NormedSpace sp = NormedSpace::l1(3);
        Eigen::MatrixXd B(3, 1);
        B << 1, 1, 1;
        auto est = induced_volume_constant(sp, B);
        // unit vector b = (1,1,1)/sqrt(3), |b|_1 = sqrt(3); slice = segment of
        // length 2/sqrt(3); c = omega_1 / V = sqrt(3)
        CHECK(est.value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    }

    SUBCASE("Monte Carlo path agrees with ellipsoid closed form (k=3)") {
        Rng rng(7);
        Eigen::VectorXd w(5);
        w << 0.5, 1.0, 2.0, 3.0, 1.5;
        NormedSpace sp = NormedSpace::weighted_lp(w, 2.0);
        Eigen::MatrixXd raw = rng.gaussian_matrix(5, 3);
        auto exact = induced_volume_constant(sp, raw);
        VolumeConfig mc;
        mc.force_monte_carlo = true;
        mc.mc_samples = 800000;
        auto sampled = induced_volume_constant(sp, raw, mc);
        CHECK(sampled.error > 0.0);
        CHECK(std::abs(sampled.value - exact.value) <= 4.0 * sampled.error);
    }

    SUBCASE("error paths") {
        NormedSpace sp = NormedSpace::l2(4);
        Eigen::MatrixXd dep(4, 2);
        dep << 1, 1, 0, 1e-9, 0, 0, 0, 0;
        CHECK_THROWS_AS(induced_volume_constant(sp, dep), DependentBasis);
        Rng rng(5);
        CHECK_THROWS_AS(induced_volume_constant(NormedSpace::l2(8), rng.gaussian_matrix(8, 5)),
                        UnsupportedDim);
    }
}

TEST_CASE("restricted determinants") {
    Rng rng(21);

    SUBCASE("identity map") {
        for (const auto& sp : {NormedSpace::l2(6), NormedSpace::l1(6), NormedSpace::linf(6)}) {
            Subspace E = random_subspace(sp, 2, rng);
            DetValue dv = det_restricted(sp, Eigen::MatrixXd::Identity(6, 6), E);
            CHECK(std::abs(dv.value - 1.0) <= 3.0 * dv.rel_err + 1e-9);
        }
    }

    SUBCASE("annihilated subspace gives exactly zero") {
        NormedSpace sp = NormedSpace::l1(5);
        Subspace E = random_subspace(sp, 2, rng);
        Eigen::MatrixXd A =
            Eigen::MatrixXd::Identity(5, 5) - E.basis * E.basis.transpose(); // kills E
        DetValue dv = det_restricted(sp, A, E);
        CHECK(dv.value == 0.0);
    }

    SUBCASE("Euclidean case matches the Gram-determinant oracle") {
        NormedSpace sp = NormedSpace::l2(8);
        for (int trial = 0; trial < 200; ++trial) {
            Subspace E = random_subspace(sp, 2, rng);
            Eigen::MatrixXd A = rng.gaussian_matrix(8, 8);
            Eigen::MatrixXd M = A * E.basis;
            double oracle = std::sqrt((M.transpose() * M).determinant());
            DetValue dv = det_restricted(sp, A, E);
            CHECK(dv.value == doctest::Approx(oracle).epsilon(1e-8));
        }
    }

    SUBCASE("Haar scaling: det(alpha Id | E) = alpha^k") {
        NormedSpace sp = NormedSpace::linf(6);
        Subspace E = random_subspace(sp, 3, rng);
        for (double alpha : {0.5, 1.0, 2.0, 7.25}) {
            DetValue dv = det_restricted(sp, alpha * Eigen::MatrixXd::Identity(6, 6), E);
            CHECK(dv.value == doctest::Approx(std::pow(alpha, 3)).epsilon(1e-10));
        }
    }

    SUBCASE("cocycle property") {
        for (const auto& sp : {NormedSpace::l2(6), NormedSpace::linf(6)}) {
            for (int trial = 0; trial < 20; ++trial) {
                Subspace E = random_subspace(sp, 2, rng);
                Eigen::MatrixXd A = rng.gaussian_matrix(6, 6);
                Eigen::MatrixXd B = rng.gaussian_matrix(6, 6);
                Subspace BE = Subspace::build(sp, B * E.basis);
                DetValue ab = det_restricted(sp, A * B, E);
                DetValue a = det_restricted(sp, A, BE);
                DetValue b = det_restricted(sp, B, E);
                double tol = 3.0 * (ab.rel_err + a.rel_err + b.rel_err) + 1e-8;
                CHECK(std::abs(ab.value / (a.value * b.value) - 1.0) <= tol);
            }
        }
    }
}

TEST_CASE("gap and Hausdorff distance") {
    GapConfig quick;
    quick.sphere_samples = 512;
    quick.refine_candidates = 6;

    SUBCASE("self distance vanishes") {
        Rng rng(31);
        NormedSpace sp = NormedSpace::l1(5);
        Subspace E = random_subspace(sp, 2, rng);
        CHECK(gap(sp, E, E, quick).value <= 1e-9);
        CHECK(hausdorff_distance(sp, E, E, quick) <= 1e-9);
    }

    SUBCASE("orthogonal lines in the Euclidean plane") {
        NormedSpace sp = NormedSpace::l2(2);
        Subspace E = Subspace::build(sp, Eigen::MatrixXd::Identity(2, 2).col(0));
        Subspace F = Subspace::build(sp, Eigen::MatrixXd::Identity(2, 2).col(1));
        CHECK(gap(sp, E, F).value == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(gap(sp, F, E).value == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(hausdorff_distance(sp, E, F) == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("Euclidean principal-angle oracle") {
        Rng rng(37);
        NormedSpace sp = NormedSpace::l2(6);
        for (int trial = 0; trial < 25; ++trial) {
            Subspace E = random_subspace(sp, 2, rng);
            Subspace F = random_subspace(sp, 3, rng);
            double oracle = l2_gap_oracle(E, F);
            double est = gap(sp, E, F, quick).value;
            CHECK(est <= oracle + 1e-9); // lower-bound certificate
            CHECK(est >= oracle - 2e-3);
        }
    }

    SUBCASE("witness attains the reported value") {
        Rng rng(41);
        NormedSpace sp = NormedSpace::linf(5);
        Subspace E = random_subspace(sp, 2, rng);
        Subspace F = random_subspace(sp, 2, rng);
        GapResult g = gap(sp, E, F, quick);
        CHECK(std::abs(sp.norm(g.witness) - 1.0) < 1e-10);
        CHECK(distance_to_subspace(sp, g.witness, F) == doctest::Approx(g.value).epsilon(1e-12));
    }

    SUBCASE("sandwich inequality across norm kinds") {
        Rng rng(43);
        Eigen::VectorXd w = Eigen::VectorXd::LinSpaced(5, 0.5, 2.5);
        std::vector<NormedSpace> spaces = {NormedSpace::l1(5), NormedSpace::l2(5),
                                           NormedSpace::linf(5),
                                           NormedSpace::weighted_lp(w, 2.0)};
        for (const auto& sp : spaces) {
            // reduced budget: looser estimator-consistency tolerance
            for (int trial = 0; trial < 12; ++trial) {
                Subspace E = random_subspace(sp, 2, rng);
                Subspace F = random_subspace(sp, 2, rng);
                double g1 = gap(sp, E, F, quick).value;
                double g2 = gap(sp, F, E, quick).value;
                double dh = hausdorff_distance(sp, E, F, quick);
                double mx = std::max(g1, g2);
                CHECK(dh <= mx + 5e-3);
                CHECK(mx <= 2.0 * dh + 5e-3);
            }
            // default budget: the acceptance tolerance
            for (int trial = 0; trial < 4; ++trial) {
                Subspace E = random_subspace(sp, 2, rng);
                Subspace F = random_subspace(sp, 2, rng);
                double g1 = gap(sp, E, F).value;
                double g2 = gap(sp, F, E).value;
                double dh = hausdorff_distance(sp, E, F);
                double mx = std::max(g1, g2);
                CHECK(dh <= mx + 1e-3);
                CHECK(mx <= 2.0 * dh + 1e-3);
            }
        }
    }

    SUBCASE("equal-codimension inequality") {
        Rng rng(47);
        NormedSpace sp = NormedSpace::l2(5);
        for (int trial = 0; trial < 30; ++trial) {
            // Nearby subspaces so q * Gap < 1.
            Eigen::MatrixXd base = rng.gaussian_matrix(5, 3);
            Subspace E = Subspace::build(sp, base);
            Subspace F = Subspace::build(sp, base + 0.05 * rng.gaussian_matrix(5, 3));
            const int q = 2; // codimension
            double gef = gap(sp, E, F, quick).value;
            double gfe = gap(sp, F, E, quick).value;
            if (q * gef < 1.0) {
                CHECK(gfe <= q * gef / (1.0 - q * gef) + 1e-3);
            }
        }
    }
}

TEST_CASE("distance solver optimality") {
    Rng rng(53);
    Eigen::VectorXd w = Eigen::VectorXd::LinSpaced(4, 1.0, 2.0);
    std::vector<NormedSpace> spaces = {NormedSpace::l1(4), NormedSpace::linf(4),
                                       NormedSpace::weighted_lp(w, 3.0),
                                       NormedSpace::weighted_lp(w, 1.5)};
    for (const auto& sp : spaces) {
        for (int trial = 0; trial < 20; ++trial) {
            Subspace F = random_subspace(sp, 2, rng);
            Eigen::VectorXd v = rng.gaussian_vector(4);
            double dist = distance_to_subspace(sp, v, F);
            // No random coordinate beats the solver.
            for (int probe = 0; probe < 200; ++probe) {
                Eigen::VectorXd t = 3.0 * rng.gaussian_vector(2);
                CHECK(dist <= sp.norm(v - F.basis * t) + 1e-9);
            }
            // Points in the subspace have distance ~0.
            Eigen::VectorXd inside = F.basis * rng.gaussian_vector(2);
            CHECK(distance_to_subspace(sp, inside, F) <= 1e-8 * (1.0 + inside.norm()));
        }
    }
}

TEST_CASE("operator norms") {
    Rng rng(61);
    Eigen::MatrixXd A = rng.gaussian_matrix(6, 6);

    SUBCASE("closed forms match brute maxima") {
        for (const auto& sp : {NormedSpace::l1(6), NormedSpace::linf(6), NormedSpace::l2(6)}) {
            OperatorNormBounds b = operator_norm(sp, A);
            CHECK(b.exact());
            CHECK(sp.norm(A * b.witness) ==
                  doctest::Approx(b.lower * sp.norm(b.witness)).epsilon(1e-9));
            double brute = 0.0;
            for (int i = 0; i < 4000; ++i) {
                Eigen::VectorXd v = rng.unit_vector(6);
                brute = std::max(brute, sp.norm(A * v) / sp.norm(v));
            }
            CHECK(brute <= b.upper + 1e-9);
        }
    }

    SUBCASE("general p bounds bracket the sampled value") {
        NormedSpace sp = NormedSpace::weighted_lp(Eigen::VectorXd::Ones(6), 3.0);
        OperatorNormBounds b = operator_norm(sp, A);
        CHECK(b.lower <= b.upper + 1e-12);
        for (int i = 0; i < 2000; ++i) {
            Eigen::VectorXd v = rng.unit_vector(6);
            CHECK(sp.norm(A * v) / sp.norm(v) <= b.upper + 1e-9);
        }
        CHECK(sp.norm(A * b.witness) ==
              doctest::Approx(b.lower * sp.norm(b.witness)).epsilon(1e-9));
    }
}

TEST_CASE("determinant regularity probe") {
    Rng rng(71);
    NormedSpace sp = NormedSpace::l2(5);
    Subspace E = random_subspace(sp, 2, rng);
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(5, 5) + 0.3 * rng.gaussian_matrix(5, 5);

    SUBCASE("trivial pair") {
        DetRegularityProbe pr = det_regularity_probe(sp, A, A, E, E);
        CHECK(pr.log_ratio == 0.0);
        CHECK(pr.bound_input <= 1e-12);
    }

    SUBCASE("first-order scaling in the map") {
        double t = 1e-6;
        DetRegularityProbe pr = det_regularity_probe(sp, A, (1.0 + t) * A, E, E);
        CHECK(pr.log_ratio == doctest::Approx(2.0 * std::log1p(t)).epsilon(1e-4));
        CHECK(pr.bound_input ==
              doctest::Approx(t * operator_norm(sp, A).lower).epsilon(1e-6));
    }

    SUBCASE("ratio stays bounded along a perturbation family") {
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            double t = std::pow(10.0, rng.uniform(-7.0, -3.0));
            Eigen::MatrixXd dA = t * rng.gaussian_matrix(5, 5);
            Subspace E2 = Subspace::build(sp, E.basis + t * rng.gaussian_matrix(5, 2));
            DetRegularityProbe pr = det_regularity_probe(sp, A, A + dA, E, E2);
            if (pr.bound_input > 1e-12) worst = std::max(worst, pr.log_ratio / pr.bound_input);
        }
        CHECK(worst > 0.0);
        CHECK(worst < 1e3); // empirical L stays finite at this scale
    }

    SUBCASE("zero determinant raises") {
        Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(5, 5);
        CHECK_THROWS_AS(det_regularity_probe(sp, Z, A, E, E), ZeroDeterminant);
    }
}

TEST_CASE("geometry JSON round trip") {
    Rng rng(81);
    Eigen::VectorXd w = Eigen::VectorXd::LinSpaced(4, 1.0, 4.0);
    NormedSpace sp = NormedSpace::weighted_lp(w, 2.0);
    Subspace E = Subspace::build(sp, rng.gaussian_matrix(4, 2));

    json j;
    j["schema"] = 1;
    j["norm"] = norm_to_json(sp);
    j["subspace"] = subspace_to_json(E);
    j["map"] = matrix_to_json(rng.gaussian_matrix(4, 4));
    j["seed"] = 123;

    std::string text = j.dump(2);
    json back = json::parse(text);
    NormedSpace sp2 = norm_from_json(back["norm"]);
    Subspace E2 = subspace_from_json(back["subspace"]);
    CHECK(sp2.kind == sp.kind);
    CHECK((E2.basis - E.basis).norm() == 0.0);
    CHECK(E2.vol_const == E.vol_const);
    // serialization is stable byte-for-byte
    CHECK(json::parse(text).dump(2) == text);
}
