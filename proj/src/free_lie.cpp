#include "srheat/free_lie.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace srheat {

LieElement::LieElement(std::shared_ptr<const HallBasis> basis) : basis_(std::move(basis)) {
    if (!basis_) throw std::invalid_argument("null basis");
}

LieElement::LieElement(int letters, int step) : basis_(HallBasis::make(letters, step)) {}

int LieElement::checked_index(const Word& w) const {
    int idx = basis_->index_of(w);
    if (idx < 0) {
        throw std::invalid_argument("word " + word_to_string(w) + " is not a basis element");
    }
    return idx;
}

double LieElement::coeff(const Word& w) const {
    checked_index(w);
    auto it = coeffs_.find(w);
    return it == coeffs_.end() ? 0.0 : it->second;
}

void LieElement::set_coeff(const Word& w, double c) {
    checked_index(w);
    if (c == 0.0) {
        coeffs_.erase(w);
    } else {
        coeffs_[w] = c;
    }
}

void LieElement::add_coeff(const Word& w, double c) {
    checked_index(w);
    auto [it, inserted] = coeffs_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) coeffs_.erase(it);
    }
}

LieElement& LieElement::operator+=(const LieElement& o) {
    if (!same_space(o)) throw std::invalid_argument("Lie operands have mismatched alphabet or step");
    for (const auto& [w, c] : o.coeffs_) add_coeff(w, c);
    return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) {
    if (!same_space(o)) throw std::invalid_argument("Lie operands have mismatched alphabet or step");
    for (const auto& [w, c] : o.coeffs_) add_coeff(w, -c);
    return *this;
}

LieElement& LieElement::operator*=(double c) {
    if (c == 0.0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [w, v] : coeffs_) v *= c;
    return *this;
}

double LieElement::max_abs() const {
    double m = 0.0;
    for (const auto& [w, c] : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

TensorPoly lie_to_tensor(const LieElement& u) {
    const HallBasis& basis = u.basis();
    TensorPoly out(u.letters(), u.step());
    for (const auto& [w, c] : u.coeffs()) {
        int idx = basis.index_of(w);
        for (const auto& [word, a] : basis.expansion(idx)) {
            out.add_coeff(word, c * a);
        }
    }
    return out;
}

GrouplikeTensor exp_tensor(const LieElement& u) {
    const int N = u.step();
    TensorPoly t = lie_to_tensor(u);
    TensorPoly out = TensorPoly::unit(u.letters(), N);
    TensorPoly term = TensorPoly::unit(u.letters(), N);
    // term after k rounds is t^k / k!; its lowest grade is k, so the series
    // is exact at the truncation step after N rounds.
    for (int k = 1; k <= N; ++k) {
        term = tensor_product(term, t);
        term *= 1.0 / k;
        out += term;
    }
    return out;
}

LieElement log_tensor(const GrouplikeTensor& g) {
    if (std::abs(g.scalar() - 1.0) > 1e-12) {
        throw std::domain_error("log requires scalar part 1 (group-like input)");
    }
    const int N = g.step();
    TensorPoly a = g;  // g - 1
    a.set_scalar(0.0);
    TensorPoly series(g.letters(), N);
    TensorPoly power = TensorPoly::unit(g.letters(), N);
    for (int k = 1; k <= N; ++k) {
        power = tensor_product(power, a);
        TensorPoly term = power;
        term *= (k % 2 == 1 ? 1.0 : -1.0) / k;
        series += term;
    }

    // Forward sweep in basis order: the expansion of a basis element has
    // coefficient 1 on its own word and touches only lex-larger anagrams, so
    // subtracting as we go leaves each basis word's residual equal to its
    // coordinate by the time we reach it.
    auto basis = HallBasis::make(g.letters(), N);
    LieElement u(basis);
    for (std::size_t i = 0; i < basis->size(); ++i) {
        const HallElement& e = basis->element(i);
        double c = series.coeff(e.word);
        if (c == 0.0) continue;
        u.set_coeff(e.word, c);
        for (const auto& [w, coeff] : basis->expansion(static_cast<int>(i))) {
            series.add_coeff(w, -c * coeff);
        }
    }
    return u;
}

LieElement bch(const LieElement& a, const LieElement& b) {
    if (!a.same_space(b)) throw std::invalid_argument("bch operands have mismatched alphabet or step");
    return log_tensor(tensor_product(exp_tensor(a), exp_tensor(b)));
}

LieElement dilate(const LieElement& u, double c) {
    LieElement out(u.basis_ptr());
    std::vector<double> powers(static_cast<std::size_t>(u.step()) + 1, 1.0);
    for (int k = 1; k <= u.step(); ++k) {
        powers[static_cast<std::size_t>(k)] = powers[static_cast<std::size_t>(k - 1)] * c;
    }
    for (const auto& [w, v] : u.coeffs()) out.set_coeff(w, v * powers[w.size()]);
    return out;
}

LieElement project(const LieElement& u, int new_step) {
    if (new_step < 1 || new_step > u.step()) {
        throw std::invalid_argument("projection step must be in 1..step");
    }
    LieElement out(u.letters(), new_step);
    for (const auto& [w, v] : u.coeffs()) {
        if (static_cast<int>(w.size()) <= new_step) out.set_coeff(w, v);
    }
    return out;
}

}  // namespace srheat
