#pragma once

#include <cstdint>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace ssfol {

/// Deterministic, platform-independent pseudo-random stream (xoshiro256**,
/// seeded through splitmix64).  All Monte-Carlo operations in the toolkit
/// take an explicit seed so batch runs replay bit-for-bit.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ull * (stream + 1));
        for (auto& si : s_) si = splitmix64(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0, 1).
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal via Box-Muller (always consumes two uniforms).
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    Eigen::VectorXd gaussian_vector(int n) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = normal();
        return v;
    }

    Eigen::MatrixXd gaussian_matrix(int rows, int cols) {
        Eigen::MatrixXd m(rows, cols);
        for (int j = 0; j < cols; ++j)
            for (int i = 0; i < rows; ++i) m(i, j) = normal();
        return m;
    }

    /// Uniform direction on the Euclidean unit sphere of dimension n.
    Eigen::VectorXd unit_vector(int n) {
        Eigen::VectorXd v = gaussian_vector(n);
        double nrm = v.norm();
        while (nrm < 1e-300) {
            v = gaussian_vector(n);
            nrm = v.norm();
        }
        return v / nrm;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t s_[4];
};

/// Halton low-discrepancy sequence, one value per (index, base).
inline double halton(std::uint64_t index, std::uint64_t base) {
    double f = 1.0, r = 0.0;
    std::uint64_t i = index;
    while (i > 0) {
        f /= double(base);
        r += f * double(i % base);
        i /= base;
    }
    return r;
}

/// Quasi-random points on the Euclidean unit sphere S^{k-1}, deterministic.
/// k = 1 alternates the two poles; k = 2 uses a golden-angle lattice; higher k
/// maps Halton points through Box-Muller and normalizes.
inline Eigen::VectorXd quasi_sphere_point(int k, std::uint64_t index) {
    Eigen::VectorXd v(k);
    if (k == 1) {
        v[0] = (index % 2 == 0) ? 1.0 : -1.0;
        return v;
    }
    if (k == 2) {
        const double golden = 0.6180339887498948482;
        double theta = 6.283185307179586477 * std::fmod(double(index) * golden + 0.5 * golden, 1.0);
        v[0] = std::cos(theta);
        v[1] = std::sin(theta);
        return v;
    }
    static const std::uint64_t bases[8] = {2, 3, 5, 7, 11, 13, 17, 19};
    int pairs = (k + 1) / 2;
    int at = 0;
    for (int p = 0; p < pairs; ++p) {
        double u1 = halton(index + 1, bases[(2 * p) % 8]);
        double u2 = halton(index + 1, bases[(2 * p + 1) % 8]);
        u1 = std::max(u1, 1e-12);
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586477 * u2;
        v[at++] = r * std::cos(a);
        if (at < k) v[at++] = r * std::sin(a);
    }
    double nrm = v.norm();
    if (nrm < 1e-14) {
        v.setZero();
        v[0] = 1.0;
        return v;
    }
    return v / nrm;
}

} // namespace ssfol
