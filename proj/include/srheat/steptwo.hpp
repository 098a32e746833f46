#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "srheat/polynomial.hpp"
#include "srheat/quadrature.hpp"
#include "srheat/structure_constants.hpp"

namespace srheat {

// Point of the step-two group in global coordinates (x, z) in R^n x R^p.
struct GroupPoint {
    Eigen::VectorXd x;
    Eigen::VectorXd z;
};

GroupPoint group_identity(int n, int p);

// (x,z) x (u,v) = (x+u, z+v+(1/2) x^T C^k u per component k)
GroupPoint group_mul(const GroupPoint& a, const GroupPoint& b, const StructureConstants& c);
GroupPoint group_inv(const GroupPoint& a);

// The n left-invariant horizontal fields on R^{n+p}:
//   X_i = d/dx^i + (1/2) sum_{j,k} x_j C^k_{ji} d/dz^k
Frame left_invariant_frame(const StructureConstants& c);

// Eigendecomposition of -Xi^2 for skew Xi: the symmetric PSD matrix whose
// spectral calculus drives the closed-form kernels. Eigenvalues within
// 1e-12 of zero from below are clamped to 0; anything worse, or a failed
// reconstruction, is an internal error.
class SkewSpectral {
  public:
    explicit SkewSpectral(const Eigen::MatrixXd& xi);

    int n() const { return static_cast<int>(s_.size()); }
    const Eigen::VectorXd& s() const { return s_; }        // ascending, >= 0
    const Eigen::MatrixXd& basis() const { return q_; }    // orthogonal columns

    // Q f(S) Q^T for a scalar function of the eigenvalues.
    Eigen::MatrixXd apply(const std::function<double(double)>& fn) const;

  private:
    Eigen::MatrixXd q_;
    Eigen::VectorXd s_;
};

// Scalar spectral functions with their small-argument series. Both tend to
// 1 as s -> 0; the series branch below s = 1e-8 avoids the 0/0 forms.
double sinhc_sqrt(double s);       // sinh(sqrt(s)) / sqrt(s)
double sqrt_coth_sqrt(double s);   // sqrt(s) * coth(sqrt(s))

// The two Xi-dependent factors of the oscillatory kernel at time t:
// detFactor = det(sinh-ratio)^{-1/2} over the spectrum of S = (t/2)^2(-Xi^2),
// and Tinv = T(t;Xi)^{-1}, symmetric positive definite. Both depend on Xi
// only through Xi^2, hence are exactly even in Xi.
struct KernelFactor {
    double det_factor = 1.0;
    Eigen::MatrixXd t_inv;
};
KernelFactor kernel_factor(double t, const Eigen::MatrixXd& xi);

// Closed-form complex kernel
//   (2 pi t)^{-n/2} detFactor exp( -(i/2)<Xi x, y> - (1/2t)<Tinv (y-x), y-x> )
std::complex<double> oscillatory_kernel(double t, const Eigen::MatrixXd& xi,
                                        const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Heat kernel of the step-two group sub-Laplacian at time t between two
// group points, via the p-dimensional Fourier integral over the dual of the
// center. Requires full-rank structure constants (the integrand has no
// decay along the kernel of the pairing otherwise). Returns the real part;
// the imaginary part must vanish within quadrature tolerance.
double nilpotent_kernel(double t, const StructureConstants& c, const GroupPoint& g0,
                        const GroupPoint& g1, const QuadOptions& opts = {});

}  // namespace srheat
