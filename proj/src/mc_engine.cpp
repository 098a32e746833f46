#include "srheat/mc_engine.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "srheat/path.hpp"
#include "srheat/signature.hpp"

namespace srheat {

namespace {

struct Kahan {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Disjoint contiguous chunks; the body must not touch anything outside its
// [begin, end) rows, which is what keeps every thread count bit-identical.
template <typename Body>
void parallel_chunks(long long total, int threads, const Body& body) {
    threads = resolve_threads(threads);
    if (threads == 1 || total < 2) {
        body(0, total);
        return;
    }
    long long chunk = (total + threads - 1) / threads;
    std::vector<std::thread> workers;
    for (long long begin = 0; begin < total; begin += chunk) {
        long long end = std::min(total, begin + chunk);
        workers.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& w : workers) w.join();
}

void check_sim_args(double t, int m, long long nsamp) {
    if (!(t > 0.0)) throw std::invalid_argument("time must be positive");
    if (m < 1) throw std::invalid_argument("need at least one substep");
    if (nsamp < 1) throw std::invalid_argument("need at least one sample");
}

}  // namespace

Eigen::MatrixXd brownian_increments(int n, double t, int m, RngStream& stream) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    check_sim_args(t, m, 1);
    const double sd = std::sqrt(t / m);
    Eigen::MatrixXd out(m, n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) out(i, j) = sd * stream.gaussian();
    }
    return out;
}

LieElement brownian_lift(int n, int step, double t, int m, RngStream& stream) {
    if (step < 1) throw std::invalid_argument("level must be positive");
    Eigen::MatrixXd inc = brownian_increments(n, t, m, stream);
    std::vector<double> times(static_cast<std::size_t>(m) + 1);
    std::vector<std::vector<double>> points(static_cast<std::size_t>(m) + 1,
                                            std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < m; ++i) {
        times[static_cast<std::size_t>(i) + 1] = t * (i + 1) / m;
        for (int j = 0; j < n; ++j) {
            points[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j)] =
                points[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] + inc(i, j);
        }
    }
    return log_signature(PiecewiseLinearPath(std::move(times), std::move(points)), step);
}

GroupPoint simulate_group_point(const StructureConstants& c, double t, int m, RngStream& stream) {
    check_sim_args(t, m, 1);
    const int n = c.n();
    const int p = c.p();
    const double sd = std::sqrt(t / m);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd delta(n);
    Eigen::MatrixXd area = Eigen::MatrixXd::Zero(n, n);  // upper triangle only
    for (int step = 0; step < m; ++step) {
        for (int j = 0; j < n; ++j) delta[j] = sd * stream.gaussian();
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                area(i, j) += 0.5 * (x[i] * delta[j] - x[j] * delta[i]);
            }
        }
        x += delta;
    }
    GroupPoint out;
    out.x = x;
    out.z = Eigen::VectorXd::Zero(p);
    for (int k = 0; k < p; ++k) {
        const Eigen::MatrixXd& ck = c.matrix(k);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) out.z[k] += ck(i, j) * area(i, j);
        }
    }
    return out;
}

SimEstimate kde_estimate(const Eigen::MatrixXd& samples, const Eigen::VectorXd& y,
                         const Eigen::VectorXd& h) {
    const long long n = samples.rows();
    const int q = static_cast<int>(samples.cols());
    if (n < 1) throw std::invalid_argument("need at least one sample");
    if (y.size() != q || h.size() != q) {
        throw std::invalid_argument("point and bandwidth must match the sample dimension");
    }
    if ((h.array() <= 0.0).any()) throw std::invalid_argument("bandwidth must be positive");

    double norm = 1.0;
    for (int j = 0; j < q; ++j) norm /= h[j] * std::sqrt(2.0 * std::numbers::pi);

    Kahan mean_acc, sq_acc;
    for (long long i = 0; i < n; ++i) {
        double expo = 0.0;
        for (int j = 0; j < q; ++j) {
            double u = (samples(i, j) - y[j]) / h[j];
            expo += u * u;
        }
        double k = norm * std::exp(-0.5 * expo);
        mean_acc.add(k);
        sq_acc.add(k * k);
    }
    SimEstimate out;
    out.samples = n;
    out.bandwidth = h;
    out.value = mean_acc.sum / static_cast<double>(n);
    if (n > 1) {
        double var = (sq_acc.sum - static_cast<double>(n) * out.value * out.value) /
                     static_cast<double>(n - 1);
        out.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(n));
    }
    return out;
}

Eigen::VectorXd plug_in_bandwidth(const Eigen::MatrixXd& samples) {
    const long long n = samples.rows();
    const int q = static_cast<int>(samples.cols());
    if (n < 2) throw std::invalid_argument("need at least two samples for a bandwidth");
    Eigen::VectorXd h(q);
    const double rate = std::pow(static_cast<double>(n), -1.0 / (q + 4.0));
    for (int j = 0; j < q; ++j) {
        double mean = samples.col(j).mean();
        double var = (samples.col(j).array() - mean).square().sum() / static_cast<double>(n - 1);
        h[j] = 1.06 * std::sqrt(var) * rate;
    }
    return h;
}

SimEstimate estimate_diag(const StructureConstants& c, double t, long long nsamp, int m,
                          double h_scale, std::uint64_t seed, int threads) {
    check_sim_args(t, m, nsamp);
    if (!(h_scale > 0.0)) throw std::invalid_argument("bandwidth scale must be positive");
    const int q = c.n() + c.p();
    Eigen::MatrixXd samples(nsamp, q);
    parallel_chunks(nsamp, threads, [&](long long begin, long long end) {
        for (long long i = begin; i < end; ++i) {
            RngStream stream(seed, static_cast<std::uint64_t>(i));
            GroupPoint g = simulate_group_point(c, t, m, stream);
            samples.row(i).head(c.n()) = g.x.transpose();
            samples.row(i).tail(c.p()) = g.z.transpose();
        }
    });
    Eigen::VectorXd h = h_scale * plug_in_bandwidth(samples);
    SimEstimate out = kde_estimate(samples, Eigen::VectorXd::Zero(q), h);
    out.substeps = m;
    out.seed = seed;
    return out;
}

LevySamples levy_samples(long long nsamp, int m, double t, double h, std::uint64_t seed,
                         int threads) {
    check_sim_args(t, m, nsamp);
    if (!(h > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    LevySamples out;
    out.area.resize(nsamp);
    out.weight.resize(nsamp);
    out.t = t;
    out.h = h;
    out.substeps = m;
    out.seed = seed;
    const double sd = std::sqrt(t / m);
    const double kernel_norm = 1.0 / (2.0 * std::numbers::pi * h * h);
    parallel_chunks(nsamp, threads, [&](long long begin, long long end) {
        for (long long i = begin; i < end; ++i) {
            RngStream stream(seed, static_cast<std::uint64_t>(i));
            double x1 = 0.0, x2 = 0.0, s = 0.0;
            for (int step = 0; step < m; ++step) {
                double d1 = sd * stream.gaussian();
                double d2 = sd * stream.gaussian();
                s += 0.5 * (x1 * d2 - x2 * d1);
                x1 += d1;
                x2 += d2;
            }
            out.area[i] = s;
            out.weight[i] = kernel_norm * std::exp(-0.5 * (x1 * x1 + x2 * x2) / (h * h));
        }
    });
    return out;
}

SimEstimate levy_char_estimate(const LevySamples& s, double lambda) {
    const long long n = s.area.size();
    if (n < 1) throw std::invalid_argument("need at least one sample");
    Kahan mean_acc, sq_acc;
    for (long long i = 0; i < n; ++i) {
        double v = std::cos(lambda * s.area[i]) * s.weight[i];
        mean_acc.add(v);
        sq_acc.add(v * v);
    }
    SimEstimate out;
    out.samples = n;
    out.substeps = s.substeps;
    out.seed = s.seed;
    out.bandwidth = Eigen::VectorXd::Constant(2, s.h);
    out.value = mean_acc.sum / static_cast<double>(n);
    if (n > 1) {
        double var = (sq_acc.sum - static_cast<double>(n) * out.value * out.value) /
                     static_cast<double>(n - 1);
        out.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(n));
    }
    return out;
}

}  // namespace srheat
