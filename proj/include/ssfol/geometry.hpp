#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ssfol/normed_space.hpp"

namespace ssfol {

/// Euclidean unit-ball volume omega_k in R^k.
double euclidean_ball_volume(int k);

/// Tuning for the induced-volume estimators.
struct VolumeConfig {
    std::uint64_t seed = 20240811ull;
    int mc_samples = 400000;   // hit-or-miss budget (k = 3, 4)
    int strata_per_axis = 8;   // stratification of the bounding box
    int quad_nodes = 4096;     // angular midpoint rule (k = 2)
    bool force_monte_carlo = false; // bypass closed forms / quadrature (tests)
};

struct VolumeEstimate {
    double value = 0.0; // c_E
    double error = 0.0; // 99% confidence half-width (0 for closed forms)
};

/// A finite-dimensional subspace of the ambient space.  The basis is stored
/// Euclidean-orthonormal regardless of the ambient norm; the norm enters only
/// through the induced-volume constant and the distance computations.
/// The induced volume m_E equals vol_const times Lebesgue measure in basis
/// coordinates, normalized so the unit ambient-norm ball slice has the
/// Euclidean unit-ball volume omega_k.
struct Subspace {
    Eigen::MatrixXd basis; // d x k, orthonormal columns
    double vol_const = 1.0;
    double vol_const_err = 0.0;

    int ambient_dim() const { return int(basis.rows()); }
    int dim() const { return int(basis.cols()); }

    Eigen::VectorXd embed(const Eigen::VectorXd& coords) const { return basis * coords; }
    Eigen::VectorXd coords_of(const Eigen::VectorXd& v) const { return basis.transpose() * v; }

    static Subspace build(const NormedSpace& space, const Eigen::MatrixXd& raw_basis,
                          const VolumeConfig& cfg = {});
};

/// Euclidean-orthonormalization with a rank check.
/// Throws DependentBasis when the Gram determinant of the normalized input
/// falls below 1e-12.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& raw);

/// Normalization constant of the induced volume: m_E(unit-ball slice) =
/// omega_k.  Closed form for inner-product norms, angular quadrature for
/// k <= 2, stratified hit-or-miss Monte Carlo for k in {3, 4}.
VolumeEstimate induced_volume_constant(const NormedSpace& space, const Eigen::MatrixXd& basis,
                                       const VolumeConfig& cfg = {});

struct DetValue {
    double value = 0.0;
    double rel_err = 0.0; // propagated volume-constant error
};

/// det(A|E) = m_{AE}(A B_E) / m_E(B_E), and exactly 0 when A|_E fails
/// injectivity (coordinate determinant below 1e-14 of its scale).
DetValue det_restricted(const NormedSpace& space, const Eigen::MatrixXd& A, const Subspace& E,
                        const VolumeConfig& cfg = {});

/// Tuning for the sphere-search used by gap / hausdorff_distance.
struct GapConfig {
    int sphere_samples = 2048;
    int refine_candidates = 12;
    int refine_steps = 20;
    std::uint64_t seed = 97531ull;
};

struct GapResult {
    double value = 0.0;          // lower-bound certificate: d(witness, F)
    Eigen::VectorXd witness;     // unit vector of E attaining it
};

/// Ambient-norm distance from v to the subspace F (convex minimization over
/// F-coordinates; exact for inner-product norms and for L1 / Linf via an
/// active-set polish, smoothed Newton otherwise).
double distance_to_subspace(const NormedSpace& space, const Eigen::VectorXd& v, const Subspace& F);

/// Gap(E, F) = sup over the ambient-norm unit sphere of E of the distance to
/// F, by quasi-random sphere scan plus local refinement of the best
/// candidates.  The result is a certified lower bound with witness.
GapResult gap(const NormedSpace& space, const Subspace& E, const Subspace& F,
              const GapConfig& cfg = {});

/// Symmetric max of the two directed sup-distances (each a sphere scan of its
/// own).  See the decisions ledger for the choice of directed distance.
double hausdorff_distance(const NormedSpace& space, const Subspace& E, const Subspace& F,
                          const GapConfig& cfg = {});

struct DetRegularityProbe {
    double log_ratio = 0.0;   // |log det(A1|E1) - log det(A2|E2)|
    double bound_input = 0.0; // |A1 - A2| + d_H(E1, E2)
};

/// Raw data for empirically checking the first-order regularity of the
/// restricted determinant; the constant L is measured by the harness, never
/// asserted.
DetRegularityProbe det_regularity_probe(const NormedSpace& space, const Eigen::MatrixXd& A1,
                                        const Eigen::MatrixXd& A2, const Subspace& E1,
                                        const Subspace& E2, const VolumeConfig& vcfg = {},
                                        const GapConfig& gcfg = {});

} // namespace ssfol
