#pragma once

// Reference constructions for the tests. Nothing here goes through the
// library's operator algebra: Hamiltonians are filled entry by entry from
// basis labels and exponentiated with Eigen's Pade-based matrix exponential.

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "jcengine/params.hpp"

namespace ref {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;
inline constexpr C I{0.0, 1.0};

inline int idx(int m, int level, int k, int nw) { return (m * 3 + level) * (nw + 1) + k; }

inline double level_energy(int level, const jcengine::CycleParams& p) {
    return level == 0 ? -p.mu : level == 1 ? p.mu : p.mu + 2 * p.delta;
}

inline M free_h(const jcengine::CycleParams& p, int nc, int nw) {
    const int d = (nc + 1) * 3 * (nw + 1);
    M h = M::Zero(d, d);
    for (int m = 0; m <= nc; ++m)
        for (int l = 0; l < 3; ++l)
            for (int k = 0; k <= nw; ++k) h(idx(m, l, k, nw), idx(m, l, k, nw)) = p.omega1 * m + level_energy(l, p) + p.omega3 * k;
    return h;
}

// H0 + kappa12 (a+ |g><e| + a |e><g|)
inline M cold_h(const jcengine::CycleParams& p, int nc, int nw) {
    M h = free_h(p, nc, nw);
    for (int m = 0; m < nc; ++m)
        for (int k = 0; k <= nw; ++k) {
            const double amp = p.kappa12 * std::sqrt(m + 1.0);
            h(idx(m + 1, 0, k, nw), idx(m, 1, k, nw)) += amp;
            h(idx(m, 1, k, nw), idx(m + 1, 0, k, nw)) += amp;
        }
    return h;
}

// H0 + kappa23 (|e><f| c+ + |f><e| c)
inline M warm_h(const jcengine::CycleParams& p, int nc, int nw) {
    M h = free_h(p, nc, nw);
    for (int m = 0; m <= nc; ++m)
        for (int k = 0; k < nw; ++k) {
            const double amp = p.kappa23 * std::sqrt(k + 1.0);
            h(idx(m, 1, k + 1, nw), idx(m, 2, k, nw)) += amp;
            h(idx(m, 2, k, nw), idx(m, 1, k + 1, nw)) += amp;
        }
    return h;
}

inline M engine_h(const jcengine::CycleParams& p) {
    M h = M::Zero(3, 3);
    for (int l = 0; l < 3; ++l) h(l, l) = level_energy(l, p);
    return h;
}

// Pulse a couples e and f, pulse b couples g and e.
inline M pulse_a_h(const jcengine::CycleParams& p) {
    M h = engine_h(p);
    h(1, 2) += p.eps_a;
    h(2, 1) += p.eps_a;
    return h;
}

inline M pulse_b_h(const jcengine::CycleParams& p) {
    M h = engine_h(p);
    h(0, 1) -= p.eps_b;
    h(1, 0) -= p.eps_b;
    return h;
}

// exp(i tau H0) exp(-i tau H)
inline M smatrix(const M& h0, const M& h, double tau) {
    const M a = (I * tau * h0).exp();
    const M b = (-I * tau * h).exp();
    return a * b;
}

inline double norm2(const M& m) {
    Eigen::JacobiSVD<M> svd(m);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

// Compression onto the product states with at most `bound` quanta (f counts 2).
inline M retained(const M& x, int bound, int nc, int nw) {
    std::vector<int> keep;
    for (int m = 0; m <= nc; ++m)
        for (int l = 0; l < 3; ++l)
            for (int k = 0; k <= nw; ++k)
                if (m + l + k <= bound) keep.push_back(idx(m, l, k, nw));
    M out(keep.size(), keep.size());
    for (std::size_t c = 0; c < keep.size(); ++c)
        for (std::size_t r = 0; r < keep.size(); ++r) out(r, c) = x(keep[r], keep[c]);
    return out;
}

/// Seeded parameter draws: couplings log-uniform in [0.01, 3], frequencies
/// and level parameters in [0.1, 5], durations uniform in [0, 10].
class ParamGenerator {
public:
    explicit ParamGenerator(std::uint64_t seed) : rng_(seed) {}

    double log_uniform(double lo, double hi) {
        return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng_));
    }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    jcengine::CycleParams draw() {
        jcengine::CycleParams p;
        p.omega1 = log_uniform(0.1, 5);
        p.omega3 = log_uniform(0.1, 5);
        p.mu = log_uniform(0.1, 5);
        p.delta = log_uniform(0.1, 5);
        p.kappa12 = log_uniform(0.01, 3);
        p.kappa23 = log_uniform(0.01, 3);
        p.tau1 = uniform(0, 10);
        p.tau3 = uniform(0, 10);
        p.eps_a = log_uniform(0.01, 3) * 10;
        p.eps_b = log_uniform(0.01, 3) * 10;
        return p;
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace ref
