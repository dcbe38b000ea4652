#pragma once

#include <string>

#include <Eigen/Dense>

#include "ssfol/errors.hpp"

namespace ssfol {

enum class NormKind { L1, L2, Linf, WeightedLp };

std::string to_string(NormKind k);
NormKind norm_kind_from_string(const std::string& s);

/// The ambient space: R^d equipped with a selectable (generally
/// non-Euclidean) norm.  Everything downstream measures lengths with it;
/// Euclidean structure is used only for conditioning of stored bases.
struct NormedSpace {
    int dim = 0;
    NormKind kind = NormKind::L2;
    double p = 2.0;              // only for WeightedLp
    Eigen::VectorXd weights;     // only for WeightedLp; positive, size dim

    double norm(const Eigen::VectorXd& v) const;

    /// True when the norm comes from an inner product (L2, or weighted-Lp
    /// with p == 2), in which case induced volumes have closed forms.
    bool inner_product_norm() const {
        return kind == NormKind::L2 || (kind == NormKind::WeightedLp && p == 2.0);
    }

    void validate() const;

    static NormedSpace l1(int d);
    static NormedSpace l2(int d);
    static NormedSpace linf(int d);
    static NormedSpace weighted_lp(const Eigen::VectorXd& w, double p);
};

struct OperatorNormBounds {
    double lower = 0.0; // attained by the witness
    double upper = 0.0;
    Eigen::VectorXd witness;
    bool exact() const { return upper - lower <= 1e-12 * (1.0 + upper); }
};

/// Operator norm of A : (R^d,|.|) -> (R^d,|.|).  Exact for L1 (column sums),
/// Linf (row sums), L2 / weighted-L2 (scaled spectral norm) and their
/// weighted-Lp analogues at p in {1, inf}; for other p the lower bound comes
/// from sphere sampling with local refinement and the upper bound from
/// interpolation between the p=1 and p=inf values.
OperatorNormBounds operator_norm(const NormedSpace& space, const Eigen::MatrixXd& A,
                                 int samples = 256, std::uint64_t seed = 1234);

} // namespace ssfol
