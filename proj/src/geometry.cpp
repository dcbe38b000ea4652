#include "ssfol/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "ssfol/rng.hpp"

namespace ssfol {

double euclidean_ball_volume(int k) {
    // omega_k = pi^{k/2} / Gamma(k/2 + 1)
    return std::pow(M_PI, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& raw) {
    const int k = int(raw.cols());
    if (k == 0) throw DependentBasis("empty basis");
    // Normalize columns first so the Gram-determinant threshold is scale-free.
    Eigen::MatrixXd M = raw;
    for (int j = 0; j < k; ++j) {
        double n = M.col(j).norm();
        if (n < 1e-300) throw DependentBasis("zero basis vector");
        M.col(j) /= n;
    }
    Eigen::MatrixXd G = M.transpose() * M;
    if (std::abs(G.determinant()) < 1e-12)
        throw DependentBasis("Gram determinant below 1e-12");
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(raw.rows(), k);
    // Fix signs so the map raw -> Q is deterministic.
    Eigen::MatrixXd R = Q.transpose() * M;
    for (int j = 0; j < k; ++j)
        if (R(j, j) < 0.0) Q.col(j) *= -1.0;
    return Q;
}

// ---------------------------------------------------------------------------
// Distance from a point to a subspace in the ambient norm
// ---------------------------------------------------------------------------

namespace {

struct ResidualProblem {
    const Eigen::MatrixXd& B; // d x k, orthonormal columns
    const Eigen::VectorXd& v;
    Eigen::VectorXd w; // positive weights (all ones when unweighted)
};

Eigen::VectorXd weighted_ls(const Eigen::MatrixXd& B, const Eigen::VectorXd& v,
                            const Eigen::VectorXd& w) {
    Eigen::MatrixXd BtW = B.transpose() * w.asDiagonal();
    Eigen::MatrixXd H = BtW * B;
    H.diagonal().array() += 1e-14 * (1.0 + H.trace());
    return H.ldlt().solve(BtW * v);
}

// Newton minimization of sum_i w_i |r_i|^p for p >= 2, r = v - B t.
Eigen::VectorXd lp_newton(const ResidualProblem& pb, double p, Eigen::VectorXd t, int iters) {
    for (int it = 0; it < iters; ++it) {
        Eigen::VectorXd r = pb.v - pb.B * t;
        Eigen::VectorXd g(r.size()), dvec(r.size());
        for (int i = 0; i < r.size(); ++i) {
            double ar = std::abs(r[i]);
            g[i] = pb.w[i] * p * std::copysign(std::pow(ar, p - 1.0), r[i]);
            dvec[i] = pb.w[i] * p * (p - 1.0) * std::pow(ar, p - 2.0);
        }
        Eigen::VectorXd grad = -pb.B.transpose() * g;
        Eigen::MatrixXd H = pb.B.transpose() * dvec.asDiagonal() * pb.B;
        H.diagonal().array() += 1e-14 * (1.0 + H.trace());
        Eigen::VectorXd step = H.ldlt().solve(-grad);
        t += step;
        if (it > 1 && step.norm() < 1e-14 * (1.0 + t.norm())) break;
    }
    return t;
}

// IRLS (majorize-minimize) for 1 <= p < 2 on the smoothed objective
// sum_i w_i (r_i^2 + mu^2)^{p/2}, with mu-continuation.
Eigen::VectorXd irls_lp(const ResidualProblem& pb, double p, Eigen::VectorXd t) {
    Eigen::VectorXd r = pb.v - pb.B * t;
    double scale = r.norm() + 1e-6 * pb.v.norm();
    if (scale < 1e-300) return t;
    for (double mu = 0.1 * scale; mu > 1e-10 * scale; mu *= 0.1) {
        for (int it = 0; it < 24; ++it) {
            r = pb.v - pb.B * t;
            Eigen::VectorXd D(r.size());
            for (int i = 0; i < r.size(); ++i)
                D[i] = pb.w[i] * std::pow(r[i] * r[i] + mu * mu, 0.5 * p - 1.0);
            Eigen::VectorXd tn = weighted_ls(pb.B, pb.v, D);
            double move = (tn - t).norm();
            t = tn;
            if (move < 1e-14 * (1.0 + t.norm())) break;
        }
    }
    return t;
}

double weighted_l1_objective(const ResidualProblem& pb, const Eigen::VectorXd& t) {
    Eigen::VectorXd r = pb.v - pb.B * t;
    double s = 0.0;
    for (int i = 0; i < r.size(); ++i) s += pb.w[i] * std::abs(r[i]);
    return s;
}

double weighted_linf_objective(const ResidualProblem& pb, const Eigen::VectorXd& t) {
    Eigen::VectorXd r = pb.v - pb.B * t;
    double s = 0.0;
    for (int i = 0; i < r.size(); ++i) s = std::max(s, pb.w[i] * std::abs(r[i]));
    return s;
}

// Enumerate all size-c subsets of {0..n-1} (n <= 8 in practice).
void for_each_subset(int n, int c, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + c, true);
    std::vector<int> subset(c);
    do {
        int at = 0;
        for (int i = 0; i < n; ++i)
            if (mask[i]) subset[at++] = i;
        fn(subset);
    } while (std::prev_permutation(mask.begin(), mask.end()));
}

// Weighted least-absolute-deviation: IRLS continuation plus a zero-set
// polish (at a generic l1 optimum, k residuals vanish).
Eigen::VectorXd solve_l1(const ResidualProblem& pb) {
    const int k = int(pb.B.cols());
    Eigen::VectorXd t = weighted_ls(pb.B, pb.v, pb.w);
    t = irls_lp(pb, 1.0, t);

    Eigen::VectorXd best_t = t;
    double best = weighted_l1_objective(pb, t);

    Eigen::VectorXd r = pb.v - pb.B * t;
    std::vector<int> idx(r.size());
    for (int i = 0; i < int(r.size()); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return std::abs(r[a]) < std::abs(r[b]); });
    int pool = std::min<int>(k + 2, int(idx.size()));
    if (pool >= k) {
        for_each_subset(pool, k, [&](const std::vector<int>& sub) {
            Eigen::MatrixXd Bs(k, k);
            Eigen::VectorXd vs(k);
            for (int i = 0; i < k; ++i) {
                Bs.row(i) = pb.B.row(idx[sub[i]]);
                vs[i] = pb.v[idx[sub[i]]];
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(Bs);
            if (!lu.isInvertible()) return;
            Eigen::VectorXd tc = lu.solve(vs);
            double val = weighted_l1_objective(pb, tc);
            if (val < best) {
                best = val;
                best_t = tc;
            }
        });
    }
    return best_t;
}

// Chebyshev (weighted minimax) residual: Lawson iteration plus an
// equioscillation polish on candidate active sets of size k+1.
Eigen::VectorXd solve_linf(const ResidualProblem& pb) {
    const int d = int(pb.B.rows());
    const int k = int(pb.B.cols());
    Eigen::VectorXd t = weighted_ls(pb.B, pb.v, pb.w);
    Eigen::VectorXd best_t = t;
    double best = weighted_linf_objective(pb, t);
    if (best <= 1e-14 * (1.0 + pb.v.norm())) return t; // already in the subspace

    Eigen::VectorXd omega = Eigen::VectorXd::Constant(d, 1.0 / d);
    for (int it = 0; it < 80; ++it) {
        Eigen::VectorXd lw = omega.array() * pb.w.array() * pb.w.array();
        t = weighted_ls(pb.B, pb.v, lw);
        double obj = weighted_linf_objective(pb, t);
        if (obj < best) {
            best = obj;
            best_t = t;
        }
        Eigen::VectorXd r = pb.v - pb.B * t;
        double total = 0.0;
        for (int i = 0; i < d; ++i) {
            omega[i] *= pb.w[i] * std::abs(r[i]);
            total += omega[i];
        }
        if (total < 1e-300) return best_t;
        omega /= total;
    }
    t = best_t;

    Eigen::VectorXd r = pb.v - pb.B * t;
    std::vector<int> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return pb.w[a] * std::abs(r[a]) > pb.w[b] * std::abs(r[b]);
    });
    int pool = std::min(k + 3, d);
    if (pool >= k + 1) {
        for_each_subset(pool, k + 1, [&](const std::vector<int>& sub) {
            Eigen::MatrixXd M(k + 1, k + 1);
            Eigen::VectorXd rhs(k + 1);
            for (int i = 0; i <= k; ++i) {
                int row = idx[sub[i]];
                double sign = r[row] >= 0.0 ? 1.0 : -1.0;
                M.row(i).head(k) = sign * pb.w[row] * pb.B.row(row);
                M(i, k) = 1.0;
                rhs[i] = sign * pb.w[row] * pb.v[row];
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
            if (!lu.isInvertible()) return;
            Eigen::VectorXd sol = lu.solve(rhs);
            Eigen::VectorXd tc = sol.head(k);
            double val = weighted_linf_objective(pb, tc);
            if (val < best) {
                best = val;
                best_t = tc;
            }
        });
    }
    return best_t;
}

Eigen::VectorXd minimize_residual_coords(const NormedSpace& space, const Eigen::VectorXd& v,
                                         const Eigen::MatrixXd& B) {
    const int d = int(B.rows());
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(d);
    switch (space.kind) {
        case NormKind::L2: return B.transpose() * v;
        case NormKind::L1: {
            ResidualProblem pb{B, v, ones};
            return solve_l1(pb);
        }
        case NormKind::Linf: {
            ResidualProblem pb{B, v, ones};
            return solve_linf(pb);
        }
        case NormKind::WeightedLp: {
            if (space.p == 2.0) return weighted_ls(B, v, space.weights);
            if (space.p == 1.0) {
                ResidualProblem pb{B, v, space.weights};
                return solve_l1(pb);
            }
            if (std::isinf(space.p)) {
                ResidualProblem pb{B, v, space.weights};
                return solve_linf(pb);
            }
            ResidualProblem pb{B, v, space.weights};
            Eigen::VectorXd t = weighted_ls(B, v, space.weights);
            if (space.p >= 2.0) return lp_newton(pb, space.p, t, 60);
            return irls_lp(pb, space.p, t);
        }
    }
    return B.transpose() * v;
}

} // namespace

double distance_to_subspace(const NormedSpace& space, const Eigen::VectorXd& v,
                            const Subspace& F) {
    Eigen::VectorXd t = minimize_residual_coords(space, v, F.basis);
    double d = space.norm(v - F.basis * t);
    // t = 0 and the least-squares point are always feasible.
    d = std::min(d, space.norm(v));
    Eigen::VectorXd tls = F.basis.transpose() * v;
    return std::min(d, space.norm(v - F.basis * tls));
}

// ---------------------------------------------------------------------------
// Induced volume constants
// ---------------------------------------------------------------------------

namespace {

// Volume of {t in R^k : space.norm(B t) <= 1} by polar midpoint quadrature,
// k = 2.  Also returns a doubling-based error estimate.
std::pair<double, double> slice_area_quadrature(const NormedSpace& space, const Eigen::MatrixXd& B,
                                                int nodes) {
    auto area = [&](int n) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            double theta = 2.0 * M_PI * (i + 0.5) / n;
            Eigen::VectorXd u(2);
            u << std::cos(theta), std::sin(theta);
            double r = 1.0 / space.norm(B * u);
            acc += r * r;
        }
        return 0.5 * acc * (2.0 * M_PI / n);
    };
    double coarse = area(nodes / 2);
    double fine = area(nodes);
    return {fine, std::abs(fine - coarse)};
}

// Certified-with-margin bounding radius of the slice body in coordinates.
double bounding_radius(const NormedSpace& space, const Eigen::MatrixXd& B) {
    const int k = int(B.cols());
    int net = (k <= 2) ? 512 : 4096;
    double mn = std::numeric_limits<double>::infinity();
    Eigen::VectorXd argmin;
    for (int i = 0; i < net; ++i) {
        Eigen::VectorXd u = quasi_sphere_point(k, i);
        double val = space.norm(B * u);
        if (val < mn) {
            mn = val;
            argmin = u;
        }
    }
    // Local pattern-search refinement of the minimizer.
    double step = 0.3;
    for (int round = 0; round < 24; ++round) {
        bool improved = false;
        for (int a = 0; a < k; ++a) {
            for (double s : {step, -step}) {
                Eigen::VectorXd u = argmin;
                u[a] += s;
                u.normalize();
                double val = space.norm(B * u);
                if (val < mn) {
                    mn = val;
                    argmin = u;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.6;
    }
    return 1.10 / mn;
}

VolumeEstimate slice_volume_monte_carlo(const NormedSpace& space, const Eigen::MatrixXd& B,
                                        const VolumeConfig& cfg) {
    const int k = int(B.cols());
    const double R = bounding_radius(space, B);
    const int s = std::max(2, cfg.strata_per_axis);
    long cells = 1;
    for (int i = 0; i < k; ++i) cells *= s;
    const int per_cell = std::max(4, int(cfg.mc_samples / cells));
    const double cell_side = 2.0 * R / s;
    const double cell_vol = std::pow(cell_side, k);

    Rng rng(cfg.seed, 17);
    double volume = 0.0;
    double variance = 0.0;
    std::vector<int> cidx(k, 0);
    Eigen::VectorXd t(k);
    for (long c = 0; c < cells; ++c) {
        long rem = c;
        for (int i = 0; i < k; ++i) {
            cidx[i] = int(rem % s);
            rem /= s;
        }
        int hits = 0;
        for (int n = 0; n < per_cell; ++n) {
            for (int i = 0; i < k; ++i)
                t[i] = -R + cell_side * (cidx[i] + rng.uniform());
            if (space.norm(B * t) <= 1.0) ++hits;
        }
        double ph = double(hits) / per_cell;
        volume += ph * cell_vol;
        variance += ph * (1.0 - ph) / per_cell * cell_vol * cell_vol;
    }
    VolumeEstimate out;
    out.value = volume;
    out.error = 2.576 * std::sqrt(variance); // 99% normal CI
    return out;
}

} // namespace

VolumeEstimate induced_volume_constant(const NormedSpace& space, const Eigen::MatrixXd& basis,
                                       const VolumeConfig& cfg) {
    const int k = int(basis.cols());
    if (k < 1 || k > 4) throw UnsupportedDim("induced_volume_constant: need 1 <= k <= 4");
    Eigen::MatrixXd B = orthonormalize(basis);
    const double omega = euclidean_ball_volume(k);

    if (!cfg.force_monte_carlo) {
        if (space.inner_product_norm()) {
            // Slice of an ellipsoid: volume = omega_k / sqrt(det(B^T W B)).
            Eigen::MatrixXd G;
            if (space.kind == NormKind::L2) {
                return {1.0, 0.0};
            }
            G = B.transpose() * space.weights.asDiagonal() * B;
            return {std::sqrt(G.determinant()), 0.0};
        }
        if (k == 1) {
            double n1 = space.norm(B.col(0));
            return {n1, 0.0}; // V = 2 / n1, c = omega_1 / V = n1
        }
        if (k == 2) {
            auto [vol, verr] = slice_area_quadrature(space, B, cfg.quad_nodes);
            double c = omega / vol;
            return {c, c * (verr / vol)};
        }
    }

    VolumeEstimate mc = slice_volume_monte_carlo(space, B, cfg);
    double c = omega / mc.value;
    return {c, c * (mc.error / mc.value)};
}

Subspace Subspace::build(const NormedSpace& space, const Eigen::MatrixXd& raw_basis,
                         const VolumeConfig& cfg) {
    Subspace s;
    s.basis = orthonormalize(raw_basis);
    VolumeEstimate est = induced_volume_constant(space, s.basis, cfg);
    s.vol_const = est.value;
    s.vol_const_err = est.error;
    return s;
}

// ---------------------------------------------------------------------------
// Restricted determinant
// ---------------------------------------------------------------------------

DetValue det_restricted(const NormedSpace& space, const Eigen::MatrixXd& A, const Subspace& E,
                        const VolumeConfig& cfg) {
    const int k = E.dim();
    Eigen::MatrixXd AB = A * E.basis;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(AB);
    double smax = svd.singularValues()[0];
    double coord_det = 1.0;
    for (int i = 0; i < k; ++i) coord_det *= svd.singularValues()[i];
    // Injectivity failure: coordinate determinant below 1e-14 of its scale,
    // either relative to A|_E itself or to the full map (A may annihilate E).
    if (smax <= 1e-14 * A.norm() || coord_det < 1e-14 * std::pow(smax, k)) return {0.0, 0.0};

    Eigen::MatrixXd Q = orthonormalize(AB);
    VolumeEstimate cae = induced_volume_constant(space, Q, cfg);
    DetValue out;
    out.value = (cae.value / E.vol_const) * coord_det;
    out.rel_err = cae.error / cae.value + E.vol_const_err / E.vol_const;
    return out;
}

// ---------------------------------------------------------------------------
// Gap and Hausdorff distance
// ---------------------------------------------------------------------------

namespace {

// Sup over the ambient-norm unit sphere of E of distance to F.
GapResult directed_sup_distance(const NormedSpace& space, const Subspace& E, const Subspace& F,
                                const GapConfig& cfg, std::uint64_t stream) {
    const int k = E.dim();
    const std::uint64_t offset = 7777ull * stream;

    auto unit_of = [&](const Eigen::VectorXd& coords) {
        Eigen::VectorXd v = E.basis * coords;
        return Eigen::VectorXd(v / space.norm(v));
    };
    auto full_dist = [&](const Eigen::VectorXd& coords) {
        return distance_to_subspace(space, unit_of(coords), F);
    };

    if (k == 1) {
        Eigen::VectorXd c(1);
        c << 1.0;
        GapResult r;
        r.witness = unit_of(c);
        r.value = distance_to_subspace(space, r.witness, F);
        return r;
    }

    // Cheap proxy for ranking: ambient norm of the least-squares residual
    // (exact distance for inner-product norms).
    Eigen::VectorXd lsw = space.kind == NormKind::WeightedLp && space.weights.size()
                              ? space.weights
                              : Eigen::VectorXd::Ones(E.ambient_dim());
    const bool proxy_exact = space.inner_product_norm();
    auto proxy = [&](const Eigen::VectorXd& coords) {
        Eigen::VectorXd v = unit_of(coords);
        Eigen::VectorXd t = weighted_ls(F.basis, v, lsw);
        return space.norm(v - F.basis * t);
    };

    double best = -1.0;
    Eigen::VectorXd best_c;

    if (k == 2) {
        // Uniform angle grid; refine every local maximum of the scan curve by
        // golden section on the true distance.  When the least-squares proxy
        // is not the exact distance, the scan itself uses true distances on a
        // coarser grid (the proxy can rank peaks in the wrong order).
        const int N = proxy_exact ? cfg.sphere_samples
                                  : std::max(64, cfg.sphere_samples / 8);
        const double shift = 0.13 * double(stream);
        std::vector<double> theta(N), score(N);
        for (int i = 0; i < N; ++i) {
            theta[i] = 2.0 * M_PI * (i + 0.5 + shift) / N;
            Eigen::VectorXd c(2);
            c << std::cos(theta[i]), std::sin(theta[i]);
            score[i] = proxy_exact ? proxy(c) : full_dist(c);
        }
        auto at = [&](double ang) {
            Eigen::VectorXd cc(2);
            cc << std::cos(ang), std::sin(ang);
            return full_dist(cc);
        };
        std::vector<std::pair<double, int>> peaks;
        for (int i = 0; i < N; ++i) {
            if (score[i] >= score[(i + N - 1) % N] && score[i] >= score[(i + 1) % N])
                peaks.emplace_back(score[i], i);
        }
        std::sort(peaks.rbegin(), peaks.rend());
        int npeaks = std::min<int>(std::max(cfg.refine_candidates, 8), int(peaks.size()));
        const double span = 2.0 * M_PI / N;
        for (int pi = 0; pi < npeaks; ++pi) {
            double th = theta[peaks[pi].second];
            // Pre-subdivide the bracket so a kink inside it cannot trap the
            // golden section on the wrong side.
            double lo = th - 1.2 * span, hi = th + 1.2 * span;
            const int sub = 9;
            double sbest = -1.0, sarg = th;
            for (int si = 0; si <= sub; ++si) {
                double ang = lo + (hi - lo) * si / sub;
                double val = at(ang);
                if (val > sbest) {
                    sbest = val;
                    sarg = ang;
                }
            }
            double a = sarg - (hi - lo) / sub, b = sarg + (hi - lo) / sub;
            const double gr = 0.6180339887498948482;
            double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
            double f1 = at(x1), f2 = at(x2);
            for (int it = 0; it < cfg.refine_steps; ++it) {
                if (f1 < f2) { // maximize
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + gr * (b - a);
                    f2 = at(x2);
                } else {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - gr * (b - a);
                    f1 = at(x1);
                }
            }
            double th_best = (f1 > f2) ? x1 : x2;
            double vv = std::max(f1, f2);
            if (sbest > vv) {
                vv = sbest;
                th_best = sarg;
            }
            if (vv > best) {
                best = vv;
                best_c.resize(2);
                best_c << std::cos(th_best), std::sin(th_best);
            }
        }
    } else {
        const int N = proxy_exact ? cfg.sphere_samples
                                  : std::min(cfg.sphere_samples, std::max(256, cfg.sphere_samples / 4));
        std::vector<std::pair<double, Eigen::VectorXd>> scored;
        scored.reserve(N);
        for (int i = 0; i < N; ++i) {
            Eigen::VectorXd c = quasi_sphere_point(k, offset + i);
            scored.emplace_back(proxy_exact ? proxy(c) : full_dist(c), c);
        }
        std::sort(scored.begin(), scored.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });

        // Keep the best candidates subject to pairwise separation, so several
        // distinct local maxima get refined.
        std::vector<Eigen::VectorXd> cands;
        for (const auto& [sc, c] : scored) {
            bool close = false;
            for (const auto& existing : cands)
                if ((existing - c).norm() < 0.25) {
                    close = true;
                    break;
                }
            if (!close) cands.push_back(c);
            if (int(cands.size()) >= cfg.refine_candidates) break;
        }

        for (const auto& cand0 : cands) {
            Eigen::VectorXd cur = cand0;
            double curval = full_dist(cur);
            double step = 2.0 / std::pow(double(cfg.sphere_samples), 1.0 / (k - 1));
            for (int it = 0; it < cfg.refine_steps; ++it) {
                bool improved = false;
                for (int a = 0; a < k; ++a) {
                    for (double s : {step, -step}) {
                        Eigen::VectorXd trial = cur;
                        trial[a] += s;
                        trial.normalize();
                        double tv = full_dist(trial);
                        if (tv > curval) {
                            curval = tv;
                            cur = trial;
                            improved = true;
                        }
                    }
                }
                if (!improved) step *= 0.55;
            }
            if (curval > best) {
                best = curval;
                best_c = cur;
            }
        }
    }

    GapResult out;
    out.witness = unit_of(best_c);
    out.value = distance_to_subspace(space, out.witness, F);
    return out;
}

} // namespace

GapResult gap(const NormedSpace& space, const Subspace& E, const Subspace& F,
              const GapConfig& cfg) {
    return directed_sup_distance(space, E, F, cfg, 1);
}

double hausdorff_distance(const NormedSpace& space, const Subspace& E, const Subspace& F,
                          const GapConfig& cfg) {
    GapResult ef = directed_sup_distance(space, E, F, cfg, 2);
    GapResult fe = directed_sup_distance(space, F, E, cfg, 3);
    return std::max(ef.value, fe.value);
}

DetRegularityProbe det_regularity_probe(const NormedSpace& space, const Eigen::MatrixXd& A1,
                                        const Eigen::MatrixXd& A2, const Subspace& E1,
                                        const Subspace& E2, const VolumeConfig& vcfg,
                                        const GapConfig& gcfg) {
    DetValue d1 = det_restricted(space, A1, E1, vcfg);
    DetValue d2 = det_restricted(space, A2, E2, vcfg);
    if (d1.value == 0.0 || d2.value == 0.0)
        throw ZeroDeterminant("det_regularity_probe: restricted determinant vanishes");
    DetRegularityProbe out;
    out.log_ratio = std::abs(std::log(d1.value / d2.value));
    double dop = operator_norm(space, A1 - A2).lower;
    double dsub = (&E1 == &E2 || (E1.basis - E2.basis).norm() == 0.0)
                      ? 0.0
                      : hausdorff_distance(space, E1, E2, gcfg);
    out.bound_input = dop + dsub;
    return out;
}

} // namespace ssfol
