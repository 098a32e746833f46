#pragma once

#include <map>
#include <memory>

#include "srheat/hall_basis.hpp"

namespace srheat {

// Element of the truncated free Lie algebra in Hall coordinates: a sparse
// map from basis words (Lyndon words) to coefficients. The basis handle both
// pins (letters, step) and validates keys.
class LieElement {
  public:
    explicit LieElement(std::shared_ptr<const HallBasis> basis);
    LieElement(int letters, int step);

    const HallBasis& basis() const { return *basis_; }
    std::shared_ptr<const HallBasis> basis_ptr() const { return basis_; }
    int letters() const { return basis_->letters(); }
    int step() const { return basis_->step(); }

    double coeff(const Word& w) const;
    void set_coeff(const Word& w, double c);
    void add_coeff(const Word& w, double c);
    const std::map<Word, double>& coeffs() const { return coeffs_; }

    LieElement& operator+=(const LieElement& o);
    LieElement& operator-=(const LieElement& o);
    LieElement& operator*=(double c);

    double max_abs() const;

    bool same_space(const LieElement& o) const {
        return letters() == o.letters() && step() == o.step();
    }

  private:
    int checked_index(const Word& w) const;

    std::shared_ptr<const HallBasis> basis_;
    std::map<Word, double> coeffs_;
};

}  // namespace srheat
