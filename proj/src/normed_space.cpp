#include "ssfol/normed_space.hpp"

#include <cmath>

#include "ssfol/rng.hpp"

namespace ssfol {

std::string to_string(NormKind k) {
    switch (k) {
        case NormKind::L1: return "l1";
        case NormKind::L2: return "l2";
        case NormKind::Linf: return "linf";
        case NormKind::WeightedLp: return "wlp";
    }
    return "l2";
}

NormKind norm_kind_from_string(const std::string& s) {
    if (s == "l1") return NormKind::L1;
    if (s == "l2") return NormKind::L2;
    if (s == "linf") return NormKind::Linf;
    if (s == "wlp") return NormKind::WeightedLp;
    throw ConfigError("unknown norm kind: " + s);
}

double NormedSpace::norm(const Eigen::VectorXd& v) const {
    switch (kind) {
        case NormKind::L1: return v.lpNorm<1>();
        case NormKind::L2: return v.norm();
        case NormKind::Linf: return v.lpNorm<Eigen::Infinity>();
        case NormKind::WeightedLp: {
            if (std::isinf(p)) {
                double m = 0.0;
                for (int i = 0; i < v.size(); ++i) m = std::max(m, weights[i] * std::abs(v[i]));
                return m;
            }
            if (p == 2.0) {
                double s = 0.0;
                for (int i = 0; i < v.size(); ++i) s += weights[i] * v[i] * v[i];
                return std::sqrt(s);
            }
            if (p == 1.0) {
                double s = 0.0;
                for (int i = 0; i < v.size(); ++i) s += weights[i] * std::abs(v[i]);
                return s;
            }
            double s = 0.0;
            for (int i = 0; i < v.size(); ++i) s += weights[i] * std::pow(std::abs(v[i]), p);
            return std::pow(s, 1.0 / p);
        }
    }
    return v.norm();
}

void NormedSpace::validate() const {
    if (dim <= 0) throw ConfigError("NormedSpace: dim must be positive");
    if (kind == NormKind::WeightedLp) {
        if (weights.size() != dim) throw ConfigError("NormedSpace: weight vector size mismatch");
        if ((weights.array() <= 0.0).any()) throw ConfigError("NormedSpace: weights must be positive");
        if (!(p >= 1.0)) throw ConfigError("NormedSpace: p must be >= 1");
    }
}

NormedSpace NormedSpace::l1(int d) { return NormedSpace{d, NormKind::L1, 1.0, {}}; }
NormedSpace NormedSpace::l2(int d) { return NormedSpace{d, NormKind::L2, 2.0, {}}; }
NormedSpace NormedSpace::linf(int d) { return NormedSpace{d, NormKind::Linf, 2.0, {}}; }

NormedSpace NormedSpace::weighted_lp(const Eigen::VectorXd& w, double p) {
    NormedSpace s{int(w.size()), NormKind::WeightedLp, p, w};
    s.validate();
    return s;
}

namespace {

// ||A||_{w-l1} = max_j sum_i w_i |a_ij| / w_j; unweighted w = 1.
double l1_operator_norm(const Eigen::MatrixXd& A, const Eigen::VectorXd& w, int* arg = nullptr) {
    double best = 0.0;
    int bj = 0;
    for (int j = 0; j < A.cols(); ++j) {
        double s = 0.0;
        for (int i = 0; i < A.rows(); ++i) s += (w.size() ? w[i] : 1.0) * std::abs(A(i, j));
        s /= (w.size() ? w[j] : 1.0);
        if (s > best) {
            best = s;
            bj = j;
        }
    }
    if (arg) *arg = bj;
    return best;
}

// ||A||_{w-linf} = max_i w_i sum_j |a_ij| / w_j.
double linf_operator_norm(const Eigen::MatrixXd& A, const Eigen::VectorXd& w,
                          Eigen::VectorXd* witness = nullptr) {
    double best = 0.0;
    int bi = 0;
    for (int i = 0; i < A.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < A.cols(); ++j) s += std::abs(A(i, j)) / (w.size() ? w[j] : 1.0);
        s *= (w.size() ? w[i] : 1.0);
        if (s > best) {
            best = s;
            bi = i;
        }
    }
    if (witness) {
        witness->resize(A.cols());
        for (int j = 0; j < A.cols(); ++j) {
            double s = A(bi, j) >= 0 ? 1.0 : -1.0;
            (*witness)[j] = s / (w.size() ? w[j] : 1.0);
        }
    }
    return best;
}

} // namespace

OperatorNormBounds operator_norm(const NormedSpace& space, const Eigen::MatrixXd& A, int samples,
                                 std::uint64_t seed) {
    OperatorNormBounds out;
    const int d = int(A.rows());
    switch (space.kind) {
        case NormKind::L1: {
            int j = 0;
            out.upper = out.lower = l1_operator_norm(A, {}, &j);
            out.witness = Eigen::VectorXd::Unit(d, j);
            return out;
        }
        case NormKind::Linf: {
            out.upper = out.lower = linf_operator_norm(A, {}, &out.witness);
            return out;
        }
        case NormKind::L2: {
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinV);
            out.upper = out.lower = svd.singularValues()[0];
            out.witness = svd.matrixV().col(0);
            return out;
        }
        case NormKind::WeightedLp: {
            const Eigen::VectorXd& w = space.weights;
            if (space.p == 1.0) {
                int j = 0;
                out.upper = out.lower = l1_operator_norm(A, w, &j);
                out.witness = Eigen::VectorXd::Unit(d, j) / w[j];
                return out;
            }
            if (std::isinf(space.p)) {
                out.upper = out.lower = linf_operator_norm(A, w, &out.witness);
                return out;
            }
            if (space.p == 2.0) {
                Eigen::VectorXd sq = w.array().sqrt();
                Eigen::MatrixXd As = sq.asDiagonal() * A * sq.cwiseInverse().asDiagonal();
                Eigen::JacobiSVD<Eigen::MatrixXd> svd(As, Eigen::ComputeThinV);
                out.upper = out.lower = svd.singularValues()[0];
                out.witness = sq.cwiseInverse().asDiagonal() * svd.matrixV().col(0);
                return out;
            }
            // General p: sampled lower bound refined by power-type iteration,
            // Riesz-Thorin interpolation upper bound.
            Rng rng(seed);
            double best = 0.0;
            Eigen::VectorXd bestv = Eigen::VectorXd::Unit(d, 0);
            for (int s = 0; s < samples; ++s) {
                Eigen::VectorXd v = rng.unit_vector(d);
                double nv = space.norm(v);
                double val = space.norm(A * v) / nv;
                if (val > best) {
                    best = val;
                    bestv = v / nv;
                }
            }
            // Boyd-style fixed point for the lp -> lp norm.
            Eigen::VectorXd v = bestv;
            const double q = space.p / (space.p - 1.0);
            for (int it = 0; it < 60; ++it) {
                Eigen::VectorXd y = A * v;
                Eigen::VectorXd z(d);
                for (int i = 0; i < d; ++i)
                    z[i] = w[i] * std::copysign(std::pow(std::abs(y[i]), space.p - 1.0), y[i]);
                Eigen::VectorXd x = A.transpose() * z;
                for (int i = 0; i < d; ++i)
                    x[i] = std::copysign(std::pow(std::abs(x[i]) / w[i], q - 1.0), x[i]);
                double nx = space.norm(x);
                if (nx < 1e-300) break;
                v = x / nx;
            }
            double refined = space.norm(A * v) / space.norm(v);
            if (refined > best) {
                best = refined;
                bestv = v / space.norm(v);
            }
            out.lower = best;
            out.witness = bestv;
            double n1 = l1_operator_norm(A, w);
            double ninf = linf_operator_norm(A, w);
            out.upper = std::pow(n1, 1.0 / space.p) * std::pow(ninf, 1.0 - 1.0 / space.p);
            out.upper = std::max(out.upper, out.lower);
            return out;
        }
    }
    return out;
}

} // namespace ssfol
