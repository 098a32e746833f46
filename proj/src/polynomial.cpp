#include "srheat/polynomial.hpp"

#include <mutex>
#include <stdexcept>

#include "srheat/hall_basis.hpp"

namespace srheat {

Polynomial::Polynomial(int vars) : vars_(vars) {
    if (vars < 1) throw std::invalid_argument("polynomial needs at least one variable");
}

Polynomial Polynomial::constant(int vars, double c) {
    Polynomial p(vars);
    p.set_coeff(std::vector<int>(static_cast<std::size_t>(vars), 0), c);
    return p;
}

Polynomial Polynomial::variable(int vars, int index) {
    if (index < 0 || index >= vars) throw std::invalid_argument("variable index out of range");
    Polynomial p(vars);
    std::vector<int> e(static_cast<std::size_t>(vars), 0);
    e[static_cast<std::size_t>(index)] = 1;
    p.set_coeff(e, 1.0);
    return p;
}

void Polynomial::check_exponents(const std::vector<int>& e) const {
    if (static_cast<int>(e.size()) != vars_) {
        throw std::invalid_argument("exponent vector length must equal the variable count");
    }
    for (int v : e) {
        if (v < 0) throw std::invalid_argument("exponents must be nonnegative");
    }
}

double Polynomial::coeff(const std::vector<int>& e) const {
    check_exponents(e);
    auto it = terms_.find(e);
    return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::set_coeff(const std::vector<int>& e, double c) {
    check_exponents(e);
    if (c == 0.0) {
        terms_.erase(e);
    } else {
        terms_[e] = c;
    }
}

void Polynomial::add_coeff(const std::vector<int>& e, double c) {
    check_exponents(e);
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (vars_ != o.vars_) throw std::invalid_argument("polynomial variable counts differ");
    for (const auto& [e, c] : o.terms_) add_coeff(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (vars_ != o.vars_) throw std::invalid_argument("polynomial variable counts differ");
    for (const auto& [e, c] : o.terms_) add_coeff(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(double c) {
    if (c == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.vars_ != b.vars_) throw std::invalid_argument("polynomial variable counts differ");
    Polynomial out(a.vars_);
    std::vector<int> e(static_cast<std::size_t>(a.vars_));
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_coeff(e, ca * cb);
        }
    }
    return out;
}

Polynomial Polynomial::derivative(int var) const {
    if (var < 0 || var >= vars_) throw std::invalid_argument("variable index out of range");
    Polynomial out(vars_);
    const auto v = static_cast<std::size_t>(var);
    for (const auto& [e, c] : terms_) {
        if (e[v] == 0) continue;
        std::vector<int> d = e;
        --d[v];
        out.add_coeff(d, c * static_cast<double>(e[v]));
    }
    return out;
}

double Polynomial::eval(const Eigen::VectorXd& x) const {
    if (x.size() != vars_) throw std::invalid_argument("evaluation point has wrong dimension");
    double total = 0.0;
    for (const auto& [e, c] : terms_) {
        double term = c;
        for (int i = 0; i < vars_; ++i) {
            const double xi = x[i];
            for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) term *= xi;
        }
        total += term;
    }
    return total;
}

int Polynomial::degree() const {
    int deg = 0;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int v : e) d += v;
        deg = std::max(deg, d);
    }
    return deg;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    char buf[64];
    for (const auto& [e, c] : terms_) {
        if (!s.empty()) s += " + ";
        std::snprintf(buf, sizeof buf, "%.17g", c);
        s += buf;
        for (int i = 0; i < vars_; ++i) {
            int p = e[static_cast<std::size_t>(i)];
            if (p == 0) continue;
            s += "*x" + std::to_string(i + 1);
            if (p > 1) s += "^" + std::to_string(p);
        }
    }
    return s;
}

bool PolyVectorField::is_zero() const {
    for (const auto& p : comp) {
        if (!p.is_zero()) return false;
    }
    return true;
}

Eigen::VectorXd PolyVectorField::eval(const Eigen::VectorXd& x) const {
    Eigen::VectorXd out(dim());
    for (int i = 0; i < dim(); ++i) out[i] = comp[static_cast<std::size_t>(i)].eval(x);
    return out;
}

Polynomial PolyVectorField::apply(const Polynomial& f) const {
    Polynomial out(f.vars());
    for (int j = 0; j < dim(); ++j) {
        Polynomial dj = f.derivative(j);
        if (dj.is_zero()) continue;
        out += comp[static_cast<std::size_t>(j)] * dj;
    }
    return out;
}

PolyVectorField zero_field(int dim) {
    PolyVectorField v;
    v.comp.assign(static_cast<std::size_t>(dim), Polynomial(dim));
    return v;
}

PolyVectorField vf_bracket(const PolyVectorField& v, const PolyVectorField& w) {
    if (v.dim() != w.dim()) throw std::invalid_argument("bracket operands have mismatched dimensions");
    const int d = v.dim();
    PolyVectorField out = zero_field(d);
    for (int i = 0; i < d; ++i) {
        Polynomial& oi = out.comp[static_cast<std::size_t>(i)];
        oi = v.apply(w.comp[static_cast<std::size_t>(i)]);
        oi -= w.apply(v.comp[static_cast<std::size_t>(i)]);
    }
    return out;
}

struct Frame::BracketCache {
    std::mutex mu;
    std::map<Word, PolyVectorField> by_word;
};

Frame::Frame(int dim, std::vector<PolyVectorField> fields)
    : dim_(dim), fields_(std::move(fields)), cache_(std::make_shared<BracketCache>()) {
    if (dim_ < 1) throw std::invalid_argument("frame dimension must be >= 1");
    if (fields_.empty()) throw std::invalid_argument("frame needs at least one field");
    for (const auto& f : fields_) {
        if (f.dim() != dim_) throw std::invalid_argument("field dimension differs from frame dimension");
        for (const auto& p : f.comp) {
            if (p.vars() != dim_) throw std::invalid_argument("field component variable count differs from frame dimension");
        }
    }
}

const PolyVectorField& Frame::bracket(const HallBasis& basis, int idx) const {
    const HallElement& e = basis.element(idx);
    if (e.grade == 1) {
        int letter = e.word[0];
        if (letter > count()) throw std::invalid_argument("basis letter exceeds the number of frame fields");
        return fields_[static_cast<std::size_t>(letter - 1)];
    }
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->by_word.find(e.word);
        if (it != cache_->by_word.end()) return it->second;
    }
    // compute outside the lock; duplicated work on a race is harmless
    const PolyVectorField& left = bracket(basis, e.left);
    const PolyVectorField& right = bracket(basis, e.right);
    PolyVectorField value = vf_bracket(left, right);
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto [it, inserted] = cache_->by_word.try_emplace(e.word, std::move(value));
    return it->second;
}

}  // namespace srheat
