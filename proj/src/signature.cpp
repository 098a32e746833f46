#include "srheat/signature.hpp"

#include <cmath>
#include <stdexcept>

namespace srheat {

PiecewiseLinearPath::PiecewiseLinearPath(std::vector<double> times,
                                         std::vector<std::vector<double>> points)
    : times_(std::move(times)), points_(std::move(points)) {
    if (times_.size() != points_.size()) {
        throw std::invalid_argument("path needs one vertex per time stamp");
    }
    if (times_.size() < 2) throw std::invalid_argument("path needs at least two vertices");
    for (std::size_t i = 1; i < times_.size(); ++i) {
        if (!(times_[i] > times_[i - 1])) {
            throw std::invalid_argument("path times must be strictly increasing");
        }
    }
    if (points_[0].empty()) throw std::invalid_argument("path dimension must be >= 1");
    dim_ = static_cast<int>(points_[0].size());
    for (const auto& p : points_) {
        if (static_cast<int>(p.size()) != dim_) {
            throw std::invalid_argument("path vertices have inconsistent dimensions");
        }
    }
}

GrouplikeTensor pwl_signature(const PiecewiseLinearPath& path, int step) {
    const int n = path.dim();
    checked_tensor_dim(n, step);

    // Dense level buffers: level k holds n^k coefficients, the word
    // (i1,...,ik) at index sum_j (i_j - 1) n^(k-j).
    std::vector<std::size_t> level_size(static_cast<std::size_t>(step) + 1, 1);
    for (int k = 1; k <= step; ++k) {
        level_size[static_cast<std::size_t>(k)] =
            level_size[static_cast<std::size_t>(k - 1)] * static_cast<std::size_t>(n);
    }
    std::vector<std::vector<double>> sig(static_cast<std::size_t>(step) + 1);
    std::vector<std::vector<double>> seg(static_cast<std::size_t>(step) + 1);
    for (int k = 0; k <= step; ++k) {
        sig[static_cast<std::size_t>(k)].assign(level_size[static_cast<std::size_t>(k)], 0.0);
        seg[static_cast<std::size_t>(k)].assign(level_size[static_cast<std::size_t>(k)], 0.0);
    }
    sig[0][0] = 1.0;
    seg[0][0] = 1.0;

    std::vector<double> delta(static_cast<std::size_t>(n));
    for (std::size_t s = 0; s < path.segments(); ++s) {
        bool moved = false;
        for (int i = 0; i < n; ++i) {
            delta[static_cast<std::size_t>(i)] = path.increment(s, i);
            moved = moved || delta[static_cast<std::size_t>(i)] != 0.0;
        }
        if (!moved) continue;

        // segment levels: delta^k / k!
        for (int k = 1; k <= step; ++k) {
            auto& cur = seg[static_cast<std::size_t>(k)];
            const auto& prev = seg[static_cast<std::size_t>(k - 1)];
            const double inv_k = 1.0 / k;
            for (std::size_t a = 0; a < prev.size(); ++a) {
                const double base = prev[a] * inv_k;
                for (int i = 0; i < n; ++i) {
                    cur[a * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
                        base * delta[static_cast<std::size_t>(i)];
                }
            }
        }

        // Chen update, highest level first so lower levels still hold the
        // running signature while we read them.
        for (int k = step; k >= 1; --k) {
            auto& out = sig[static_cast<std::size_t>(k)];
            for (int j = 1; j <= k; ++j) {
                const auto& left = sig[static_cast<std::size_t>(k - j)];
                const auto& right = seg[static_cast<std::size_t>(j)];
                const std::size_t right_size = right.size();
                for (std::size_t a = 0; a < left.size(); ++a) {
                    if (left[a] == 0.0) continue;
                    const double la = left[a];
                    double* dst = out.data() + a * right_size;
                    for (std::size_t b = 0; b < right_size; ++b) dst[b] += la * right[b];
                }
            }
        }
    }

    GrouplikeTensor out = TensorPoly::unit(n, step);
    Word w;
    for (int k = 1; k <= step; ++k) {
        const auto& level = sig[static_cast<std::size_t>(k)];
        w.assign(static_cast<std::size_t>(k), 1);
        for (std::size_t idx = 0; idx < level.size(); ++idx) {
            if (level[idx] != 0.0) {
                std::size_t rest = idx;
                for (int pos = k - 1; pos >= 0; --pos) {
                    w[static_cast<std::size_t>(pos)] = static_cast<int>(rest % static_cast<std::size_t>(n)) + 1;
                    rest /= static_cast<std::size_t>(n);
                }
                out.set_coeff(w, level[idx]);
            }
        }
    }
    return out;
}

LieElement log_signature(const PiecewiseLinearPath& path, int step) {
    return log_tensor(pwl_signature(path, step));
}

GrouplikeTensor chen_concat(const GrouplikeTensor& a, const GrouplikeTensor& b) {
    if (std::abs(a.scalar() - 1.0) > 1e-12 || std::abs(b.scalar() - 1.0) > 1e-12) {
        throw std::domain_error("chen_concat requires group-like inputs (scalar part 1)");
    }
    return tensor_product(a, b);
}

double levy_area(const PiecewiseLinearPath& path) {
    if (path.dim() != 2) throw std::invalid_argument("levy_area requires a planar path");
    const auto& pts = path.points();
    const double x0 = pts[0][0];
    const double y0 = pts[0][1];
    double area = 0.0;
    for (std::size_t s = 0; s < path.segments(); ++s) {
        const double ax = pts[s][0] - x0;
        const double ay = pts[s][1] - y0;
        const double dx = pts[s + 1][0] - pts[s][0];
        const double dy = pts[s + 1][1] - pts[s][1];
        // On a straight segment the quadratic terms cancel, leaving the
        // start-point cross product.
        area += 0.5 * (ax * dy - ay * dx);
    }
    return area;
}

}  // namespace srheat
