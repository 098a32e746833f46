#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "srheat/lie_element.hpp"
#include "srheat/rng.hpp"
#include "srheat/steptwo.hpp"

namespace srheat {

// One Monte Carlo answer with its uncertainty and the knobs that shaped it.
struct SimEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long long samples = 0;
    int substeps = 0;
    Eigen::VectorXd bandwidth;  // empty when no kernel smoothing is involved
    std::uint64_t seed = 0;
};

// m rows, one N(0, (t/m) Id) increment of R^n per row, drawn row-major.
Eigen::MatrixXd brownian_increments(int n, double t, int m, RngStream& stream);

// log-signature of the m-piece linear interpolation of a Brownian path on
// [0, t]; grade 1 is w_t exactly, higher grades converge to the Stratonovich
// lift as m grows.
LieElement brownian_lift(int n, int step, double t, int m, RngStream& stream);

// One sample of the step-two diffusion at time t started at the identity:
// x = w_t and z^k = sum_{i<j} C^k_ij S^ij, where S^ij is the chordwise
// (midpoint-rule) planar area of the interpolated path.
GroupPoint simulate_group_point(const StructureConstants& c, double t, int m, RngStream& stream);

// Gaussian product-kernel density estimate at y from an N x q sample matrix;
// h holds one bandwidth per coordinate. The standard error is the sample
// standard deviation of the kernel values over sqrt(N).
SimEstimate kde_estimate(const Eigen::MatrixXd& samples, const Eigen::VectorXd& y,
                         const Eigen::VectorXd& h);

// 1.06 sigma_j N^{-1/(q+4)} per coordinate.
Eigen::VectorXd plug_in_bandwidth(const Eigen::MatrixXd& samples);

// Kernel-smoothed estimate of the diffusion's density at the identity at
// time t. Sample j comes from stream j of the seed, so the result is
// bit-identical for every thread count; h_scale multiplies the plug-in
// bandwidth. threads <= 0 picks the hardware count.
SimEstimate estimate_diag(const StructureConstants& c, double t, long long nsamp, int m,
                          double h_scale, std::uint64_t seed, int threads = 0);

// Planar Brownian area table: area_i is the piecewise-linear Levy area of
// sample i on [0, t], weight_i the Gaussian kernel K_h at its endpoint.
// Generated once, reused across frequencies.
struct LevySamples {
    Eigen::VectorXd area;
    Eigen::VectorXd weight;
    double t = 1.0;
    double h = 0.0;
    int substeps = 0;
    std::uint64_t seed = 0;
};
LevySamples levy_samples(long long nsamp, int m, double t, double h, std::uint64_t seed,
                         int threads = 0);

// mean of cos(lambda * area_i) * weight_i: the endpoint-pinned smoothed
// characteristic function of the area.
SimEstimate levy_char_estimate(const LevySamples& s, double lambda);

}  // namespace srheat
