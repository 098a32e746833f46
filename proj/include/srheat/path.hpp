#pragma once

#include <vector>

namespace srheat {

// A continuous piecewise linear path in R^dim, given by vertices at strictly
// increasing times. Validation happens at construction; instances are
// immutable afterwards.
class PiecewiseLinearPath {
  public:
    PiecewiseLinearPath(std::vector<double> times, std::vector<std::vector<double>> points);

    int dim() const { return dim_; }
    std::size_t segments() const { return times_.size() - 1; }
    const std::vector<double>& times() const { return times_; }
    const std::vector<std::vector<double>>& points() const { return points_; }

    // Increment of segment s, component i.
    double increment(std::size_t s, int i) const {
        return points_[s + 1][static_cast<std::size_t>(i)] - points_[s][static_cast<std::size_t>(i)];
    }

  private:
    int dim_;
    std::vector<double> times_;
    std::vector<std::vector<double>> points_;
};

}  // namespace srheat
