#pragma once

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace srheat {

// Polynomial in a fixed number of real variables, stored sparsely as a map
// from exponent multi-indices (always of length vars()) to coefficients.
// Entries that become exactly zero are erased, so map equality is value
// equality and is_zero() means identically zero.
class Polynomial {
  public:
    explicit Polynomial(int vars);
    static Polynomial constant(int vars, double c);
    static Polynomial variable(int vars, int index);  // 0-based

    int vars() const { return vars_; }
    const std::map<std::vector<int>, double>& terms() const { return terms_; }

    double coeff(const std::vector<int>& exponents) const;
    void set_coeff(const std::vector<int>& exponents, double c);
    void add_coeff(const std::vector<int>& exponents, double c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(double c);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    Polynomial derivative(int var) const;
    double eval(const Eigen::VectorXd& x) const;

    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    bool operator==(const Polynomial& o) const = default;

    // Canonical rendering like "2*x1^2*x3 + -0.5*x2", matching the grammar
    // that parse_polynomial accepts. Terms follow the map's multi-index
    // order, so equal polynomials print identically.
    std::string to_string() const;

  private:
    void check_exponents(const std::vector<int>& e) const;

    int vars_;
    std::map<std::vector<int>, double> terms_;
};

// Vector field on R^d with polynomial components.
struct PolyVectorField {
    std::vector<Polynomial> comp;

    int dim() const { return static_cast<int>(comp.size()); }
    bool is_zero() const;
    Eigen::VectorXd eval(const Eigen::VectorXd& x) const;

    // First-order action on a scalar polynomial: sum_j comp[j] * df/dx_j.
    Polynomial apply(const Polynomial& f) const;

    bool operator==(const PolyVectorField& o) const = default;
};

PolyVectorField zero_field(int dim);

// Lie bracket [V, W]^i = sum_j (V^j dW^i/dx_j - W^j dV^i/dx_j).
PolyVectorField vf_bracket(const PolyVectorField& v, const PolyVectorField& w);

// An ordered family of polynomial vector fields on R^d. Bracket fields for
// Hall basis words are memoized per frame; the memo is internally locked, so
// concurrent lookups on a shared frame are safe.
class Frame {
  public:
    Frame(int dim, std::vector<PolyVectorField> fields);

    int dim() const { return dim_; }
    int count() const { return static_cast<int>(fields_.size()); }
    const PolyVectorField& field(int i) const { return fields_.at(static_cast<std::size_t>(i)); }
    const std::vector<PolyVectorField>& fields() const { return fields_; }

    bool operator==(const Frame& o) const {
        return dim_ == o.dim_ && fields_ == o.fields_;
    }

    // Bracket field of the Hall word at basis index idx, built along the
    // element's factorization tree and cached by word.
    const PolyVectorField& bracket(const class HallBasis& basis, int idx) const;

  private:
    int dim_;
    std::vector<PolyVectorField> fields_;
    struct BracketCache;
    std::shared_ptr<BracketCache> cache_;
};

}  // namespace srheat
