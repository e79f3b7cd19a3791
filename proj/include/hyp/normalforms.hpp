#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hyp/lattice.hpp"

// Reduced bifurcation systems on the critical eigenspaces: the chi_8 cubic
// system with computed coefficients, the chi_12/chi_13 cubic system and the
// chi_11 gradient quintic system, together with their equilibrium branches.

namespace hyp {

struct Chi8Coefficients {
    double a = 0.0;
    double b = 0.0;
};

// Cubic coefficients of the reduced system at alpha_c^2 = mu_c:
//   a = nu^2 [2/ac^4 - 8/(5 (ac^2-mu6)^2) + 4/(3 (ac^2-mu10)^2)] - eta
//   b = nu^2 [2/ac^4 + 72/(25 (ac^2-mu6)^2)] - 61 eta / 25.
// Throws near the resonances ac^2 = mu6, mu10.
Chi8Coefficients chi8_coeffs(double nu, double eta, double alpha_c_sq, double mu_chi6,
                             double mu_chi10);

// Component i: lambda x_i + [a (sum of the other squares) + b x_i^2] x_i.
Eigen::Vector3d chi8_rhs(const Eigen::Vector3d& x, double lambda, double a, double b);

struct BranchInfo {
    std::string name;
    Eigen::VectorXd direction;  // unit vector in representation coordinates
    double cubic_coeff = 0.0;   // restricted coefficient c in xdot = lambda x + c x^3
    bool supercritical = false;  // c < 0
    bool stable = false;         // at a sampled equilibrium on the existing side
    Eigen::VectorXd jacobian_eigenvalues;
    double amplitude_sq_per_lambda = 0.0;  // x^2 = amplitude_sq_per_lambda * (-lambda)
};

// The three chi_8 axis branches (D8, C6k', D2k) with numerically determined
// stability; the closed-form criteria serve as cross-checks in the tests.
std::vector<BranchInfo> chi8_branches(double a, double b);

// chi_12 cubic system in the coordinates diagonalizing the 8-fold rotation.
std::pair<Complex, Complex> chi12_rhs(Complex z1, Complex z2, double lambda, double a,
                                      double b);

// chi_11 gradient quintic system; A is the cubic radial coefficient, the
// sextic potential carries its own radial coefficient a_sextic plus the b,d
// pattern terms.
std::pair<Complex, Complex> chi11_rhs(Complex z1, Complex z2, double lambda, double A,
                                      double b, double d, double a_sextic = 0.0);

// Potential whose Wirtinger gradient produces the non-radial chi_11 terms.
double chi11_potential(Complex z1, Complex z2, double a_sextic, double b, double d);

// Gauge-fixed action of the 96-element group on the normal-form coordinates
// (z1, z2): real 4x4 matrices in the basis (Re z1, Im z1, Re z2, Im z2),
// with rho acting as diag(e^{i pi/4}, e^{3i pi/4}).  The gauge is pinned by
// requiring equivariance of the published vector fields (and for chi_11 the
// published fixed-point planes), determined by a finite search and verified
// on construction.
class NormalFormAction {
  public:
    static const NormalFormAction& chi12();
    static const NormalFormAction& chi11();

    int chi() const { return chi_; }
    const Eigen::Matrix4d& matrix(int elem) const { return mats_[elem]; }

    static Eigen::Vector4d encode(Complex z1, Complex z2);
    static std::pair<Complex, Complex> decode(const Eigen::Vector4d& v);

    // Orthonormal basis of the fixed subspace of a subgroup (columns).
    Eigen::MatrixXd fixed_subspace(const std::vector<int>& subgroup) const;

  private:
    NormalFormAction(int chi, std::vector<Eigen::Matrix4d> mats)
        : chi_(chi), mats_(std::move(mats)) {}
    static NormalFormAction build(int chi);
    int chi_;
    std::vector<Eigen::Matrix4d> mats_;
};

// Branches of the four maximal-isotropy axes of the chi_12 system.  Outside
// the supercritical region P = {3a + 2 sqrt3 b < 0, 3a + 10 sqrt3 b < 0}
// existence data is still returned but stability flags are withheld.
struct Chi12Branches {
    bool in_supercritical_region = false;
    std::vector<BranchInfo> branches;
};
Chi12Branches chi12_branches(double a, double b);

// Existence of principal-stratum equilibria of the chi_11 system restricted
// to Fix(sigma) and Fix(kappa'), decided by Newton searches in the invariant
// planes; region labels I..IV follow the derived boundary rays (II and IV
// are the cones where solutions exist).
struct Chi11Region {
    bool exists_fix_sigma = false;
    bool exists_fix_kappa_prime = false;
    std::string label_sigma = "boundary";
    std::string label_kappa_prime = "boundary";
};
Chi11Region chi11_region(double b, double d);

}  // namespace hyp
