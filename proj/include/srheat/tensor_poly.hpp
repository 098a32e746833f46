#pragma once

#include <map>

#include "srheat/words.hpp"

namespace srheat {

// Sparse element of the tensor algebra over R^n truncated beyond word length
// N: a scalar part plus a map from nonempty words to coefficients. Missing
// keys mean zero, and mutators erase entries that become exactly zero so that
// equality of maps is equality of elements.
class TensorPoly {
  public:
    TensorPoly(int letters, int step);
    static TensorPoly unit(int letters, int step);  // scalar part 1

    int letters() const { return letters_; }
    int step() const { return step_; }

    double scalar() const { return scalar_; }
    void set_scalar(double s) { scalar_ = s; }

    double coeff(const Word& w) const;
    void set_coeff(const Word& w, double c);
    void add_coeff(const Word& w, double c);
    const std::map<Word, double>& coeffs() const { return coeffs_; }

    TensorPoly& operator+=(const TensorPoly& o);
    TensorPoly& operator-=(const TensorPoly& o);
    TensorPoly& operator*=(double c);

    bool operator==(const TensorPoly& o) const = default;

    // Largest absolute coefficient including the scalar part.
    double max_abs() const;

  private:
    void check_word(const Word& w) const;
    void check_compatible(const TensorPoly& o) const;

    int letters_;
    int step_;
    double scalar_ = 0.0;
    std::map<Word, double> coeffs_;
};

// Concatenation product truncated at the common step. Both factors must live
// over the same alphabet and step.
TensorPoly tensor_product(const TensorPoly& a, const TensorPoly& b);

// Scale grade k by c^k (the scalar part is grade 0 and unchanged).
TensorPoly dilate(const TensorPoly& x, double c);

// Forget all words longer than new_step (new_step <= step).
TensorPoly project(const TensorPoly& x, int new_step);

// Group-like elements, i.e. tensors with scalar part 1 that arise as
// exponentials of Lie elements (equivalently as path signatures). We keep
// the representation shared with TensorPoly; operations whose contract needs
// scalar part 1 check it at the call site.
using GrouplikeTensor = TensorPoly;

}  // namespace srheat
