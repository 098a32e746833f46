#include "srheat/tensor_poly.hpp"

#include <cmath>
#include <stdexcept>

#include "srheat/hall_basis.hpp"

namespace srheat {

TensorPoly::TensorPoly(int letters, int step) : letters_(letters), step_(step) {
    checked_tensor_dim(letters, step);
}

TensorPoly TensorPoly::unit(int letters, int step) {
    TensorPoly t(letters, step);
    t.scalar_ = 1.0;
    return t;
}

void TensorPoly::check_word(const Word& w) const {
    if (w.empty() || static_cast<int>(w.size()) > step_) {
        throw std::invalid_argument("word length out of range 1..step");
    }
    for (int a : w) {
        if (a < 1 || a > letters_) throw std::invalid_argument("letter out of range 1..letters");
    }
}

void TensorPoly::check_compatible(const TensorPoly& o) const {
    if (letters_ != o.letters_ || step_ != o.step_) {
        throw std::invalid_argument("tensor operands have mismatched alphabet or step");
    }
}

double TensorPoly::coeff(const Word& w) const {
    check_word(w);
    auto it = coeffs_.find(w);
    return it == coeffs_.end() ? 0.0 : it->second;
}

void TensorPoly::set_coeff(const Word& w, double c) {
    check_word(w);
    if (c == 0.0) {
        coeffs_.erase(w);
    } else {
        coeffs_[w] = c;
    }
}

void TensorPoly::add_coeff(const Word& w, double c) {
    check_word(w);
    auto [it, inserted] = coeffs_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) coeffs_.erase(it);
    }
}

TensorPoly& TensorPoly::operator+=(const TensorPoly& o) {
    check_compatible(o);
    scalar_ += o.scalar_;
    for (const auto& [w, c] : o.coeffs_) add_coeff(w, c);
    return *this;
}

TensorPoly& TensorPoly::operator-=(const TensorPoly& o) {
    check_compatible(o);
    scalar_ -= o.scalar_;
    for (const auto& [w, c] : o.coeffs_) add_coeff(w, -c);
    return *this;
}

TensorPoly& TensorPoly::operator*=(double c) {
    scalar_ *= c;
    if (c == 0.0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [w, v] : coeffs_) v *= c;
    return *this;
}

double TensorPoly::max_abs() const {
    double m = std::abs(scalar_);
    for (const auto& [w, c] : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

TensorPoly tensor_product(const TensorPoly& a, const TensorPoly& b) {
    if (a.letters() != b.letters() || a.step() != b.step()) {
        throw std::invalid_argument("tensor operands have mismatched alphabet or step");
    }
    const int N = a.step();
    TensorPoly out(a.letters(), N);
    out.set_scalar(a.scalar() * b.scalar());
    if (b.scalar() != 0.0) {
        for (const auto& [w, c] : a.coeffs()) out.add_coeff(w, c * b.scalar());
    }
    if (a.scalar() != 0.0) {
        for (const auto& [w, c] : b.coeffs()) out.add_coeff(w, a.scalar() * c);
    }
    for (const auto& [wa, ca] : a.coeffs()) {
        const int room = N - static_cast<int>(wa.size());
        if (room < 1) continue;
        for (const auto& [wb, cb] : b.coeffs()) {
            if (static_cast<int>(wb.size()) > room) continue;
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out.add_coeff(w, ca * cb);
        }
    }
    return out;
}

TensorPoly dilate(const TensorPoly& x, double c) {
    TensorPoly out(x.letters(), x.step());
    out.set_scalar(x.scalar());
    std::vector<double> powers(static_cast<std::size_t>(x.step()) + 1, 1.0);
    for (int k = 1; k <= x.step(); ++k) {
        powers[static_cast<std::size_t>(k)] = powers[static_cast<std::size_t>(k - 1)] * c;
    }
    for (const auto& [w, v] : x.coeffs()) {
        out.add_coeff(w, v * powers[w.size()]);
    }
    return out;
}

TensorPoly project(const TensorPoly& x, int new_step) {
    if (new_step < 1 || new_step > x.step()) {
        throw std::invalid_argument("projection step must be in 1..step");
    }
    TensorPoly out(x.letters(), new_step);
    out.set_scalar(x.scalar());
    for (const auto& [w, v] : x.coeffs()) {
        if (static_cast<int>(w.size()) <= new_step) out.set_coeff(w, v);
    }
    return out;
}

}  // namespace srheat
