#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "srheat/errors.hpp"
#include "srheat/lie_element.hpp"
#include "srheat/path.hpp"
#include "srheat/polynomial.hpp"
#include "srheat/tensor_poly.hpp"

namespace srheat {

// Convenience wrapper for bracket fields: the field attached to the Hall
// word at `idx` in `basis`, built along its factorization tree.
inline const PolyVectorField& bracket_word(const Frame& frame, const HallBasis& basis, int idx) {
    return frame.bracket(basis, idx);
}

// Result of the commutator filtration at one point: dimensions of the
// subspaces spanned by bracket fields of length <= k, the first step at
// which they fill the tangent space, the weighted (homogeneous) dimension,
// and the greedily selected bracket words whose values form a tangent basis.
struct FiltrationReport {
    Eigen::VectorXd point;
    double tol = 0.0;                          // relative rank threshold used
    std::vector<int> growth;                   // dim of span at grades 1..growth.size()
    std::vector<double> smallest_retained_sv;  // per grade; 0 when rank is 0
    bool certified = false;
    int step = 0;           // first grade with full rank; 0 if never reached
    int hausdorff_dim = 0;  // sum of k * (growth[k] - growth[k-1])
    std::vector<Word> hall_words;  // selected words, grade-ascending
    Eigen::MatrixXd basis_matrix;  // columns are the selected bracket fields at `point`
};

// The span of the bracket fields did not reach the full tangent space within
// the allowed number of grades. Carries the partial report for diagnostics;
// maps to exit code 4 in the command line tool.
struct hormander_error : std::runtime_error {
    FiltrationReport partial;
    hormander_error(const std::string& msg, FiltrationReport report)
        : std::runtime_error(msg), partial(std::move(report)) {}
};

// Runs the filtration at `x`, extending brackets grade by grade up to
// max_step. Numerical ranks use singular values above tol * sigma_max.
// Throws hormander_error if full rank is not reached by max_step.
FiltrationReport filtration(const Frame& frame, const Eigen::VectorXd& x, int max_step,
                            double tol = 1e-9);

struct EquiregularReport {
    bool equiregular = false;
    std::vector<FiltrationReport> reports;
    // index of the first point whose growth vector differs from point 0's,
    // or -1 when all agree
    int first_disagreement = -1;
};

// Compares growth vectors across a list of points. Any point that fails
// certification propagates its hormander_error.
EquiregularReport check_equiregular(const Frame& frame, const std::vector<Eigen::VectorXd>& points,
                                    int max_step, double tol = 1e-9);

// Greedy basis selection: scan Hall words in basis order (grade-ascending,
// lex within a grade) and keep the bracket values at x that increase the
// numerical rank, stopping at d columns.
struct HallSelection {
    std::shared_ptr<const HallBasis> basis;  // basis the indices refer to
    std::vector<int> indices;                // selected element indices, size d
    std::vector<Word> words;
    Eigen::MatrixXd B;  // d x d, column j is the bracket value of words[j]
    int step = 0;       // certified step the selection was made at
};
HallSelection select_H(const Frame& frame, const Eigen::VectorXd& x, double tol = 1e-9,
                       int max_step = 10);

// Transfer matrices between the selected tangent basis and all bracket
// values of grade <= step: gamma solves B_H gamma = B_N columnwise. The
// block structure (identity on selected columns, zeros where the column
// grade is below the row grade within the certified range) is verified to
// 1e-10 and then imposed exactly, so the scaled variants carry no negative
// powers of epsilon.
struct GammaPack {
    std::shared_ptr<const HallBasis> basis;  // words of grade <= step
    HallSelection selection;                 // row index set
    double epsilon = 1.0;
    Eigen::MatrixXd gamma;       // d x |basis|
    Eigen::MatrixXd gamma_eps;   // entry (I,J): eps^(|J|-|I|) gamma
    Eigen::MatrixXd gamma_zero;  // entry (I,J): gamma when |I| == |J|, else 0
    Eigen::VectorXd delta_H;     // diag of the selected-grade dilation, eps^|I|
    std::vector<int> complement; // basis indices not selected
};
GammaPack gamma_pack(const Frame& frame, const Eigen::VectorXd& x, int step, double epsilon,
                     double tol = 1e-9);

// Truncated flow expansion at a fixed base point: the correction matrix
//   M(u) = Id + sum_{k=1}^{N-1} 1/(k+1)! sum over k-tuples of Hall words of
//          grad(V_[I1] ... V_[Ik] Id)(x) u^{I1} ... u^{Ik}
// (tuples range over the whole truncated basis, unrestricted in total
// grade), and the increment F(u) = M(u) B(x) u. Building an instance does
// all symbolic work once; evaluations per u are cheap.
class TaylorExpansion {
  public:
    TaylorExpansion(const Frame& frame, const Eigen::VectorXd& x, int step);

    int step() const { return step_; }
    const std::shared_ptr<const HallBasis>& basis() const { return basis_; }

    Eigen::MatrixXd M(const LieElement& u) const;
    Eigen::VectorXd F(const LieElement& u) const;

  private:
    struct TupleTerm {
        std::vector<int> elements;  // basis indices I1..Ik
        Eigen::MatrixXd grad;       // d x d, entry (i,j) = d_j (V_[I1]...V_[Ik] x^i)(x)
    };

    int step_;
    int dim_;
    std::shared_ptr<const HallBasis> basis_;
    Eigen::MatrixXd B_;  // d x |basis|, bracket values at x
    std::vector<TupleTerm> tuples_;
    std::vector<double> factorial_inv_;  // 1/(k+1)! by tuple length k
};

Eigen::MatrixXd taylor_M(const Frame& frame, const Eigen::VectorXd& x, int step,
                         const LieElement& u);
Eigen::VectorXd taylor_F(const Frame& frame, const Eigen::VectorXd& x, int step,
                         const LieElement& u);

// Formal pushforward of a truncated tensor through the frame's composition
// operators: sum over nonempty words I of (V_{i1} ... V_{ik} Id)(x) times
// the coefficient of I in g. The scalar part of g never enters.
Eigen::VectorXd tensor_pushforward(const Frame& frame, const Eigen::VectorXd& x,
                                   const TensorPoly& g);

// Flow of dx = sum_i V_i(x) dh^i along a piecewise linear driver, classical
// RK4 with global step halving until two successive answers agree to rtol
// (mixed absolute/relative). Throws convergence_error when the step budget
// runs out.
Eigen::VectorXd ode_flow(const Frame& frame, const Eigen::VectorXd& x0,
                         const PiecewiseLinearPath& driver, double rtol = 1e-12);

}  // namespace srheat
