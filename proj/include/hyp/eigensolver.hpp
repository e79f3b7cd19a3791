#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "hyp/mesh.hpp"

// Laplace-Beltrami eigenmodes of the periodic octagon, their symmetry
// classification, the quadratic product relations of the lowest triplet,
// and the Swift-Hohenberg gradient flow on the surface.

namespace hyp {

struct EigenMode {
    double mu = 0.0;                 // multiplet eigenvalue (mean over the cluster)
    Eigen::MatrixXd vectors;         // M-orthonormal eigenspace basis (n x mult)
    int multiplicity = 0;
    std::string irrep = "unclassified";
    double max_residual = 0.0;
};

// Generalized eigenpairs K v = mu M v, lowest n eigenvalues, grouped into
// multiplets when relative gaps fall below 1e-3.  Throws on non-convergence
// with an iteration report.
std::vector<EigenMode> solve_eigs(const SpMat& K, const SpMat& M, int n,
                                  double residual_tol = 1e-8);

// Isotypic classification by projector norms; labels "chi_1".."chi_13" or
// "unclassified" when no component reaches 99% of the norm.  Fills
// mode.irrep and returns the label.
std::string classify(EigenMode& mode, const Mesh& mesh, const TilingGroup& group,
                     const SpMat& M);

// The < , > inner product normalized by 1/(4 pi).
double planform_inner(const SpMat& M, const Eigen::VectorXd& u, const Eigen::VectorXd& v);

// Canonical chi_8 triplet basis: Psi3 is the D8-invariant planform, Psi1 and
// Psi2 its images under the elements taking the octagon center to the side-1
// and side-2 midpoints.
struct Chi8Basis {
    Eigen::VectorXd psi1, psi2, psi3;
    double mu = 0.0;
};
Chi8Basis chi8_basis(const Mesh& mesh, const TilingGroup& group,
                     const std::vector<EigenMode>& modes, const SpMat& M);

struct ProductRelations {
    double coeff_chi10 = 0.0;      // <Psi1 Psi3, Psi_chi10>, target 1/sqrt3
    double coeff_const = 0.0;      // <Psi3^2, 1>, target 1
    double coeff_chi6 = 0.0;       // <Psi3^2, Psi_chi6>, target 6/5
    double cross_coeff = 0.0;      // <Psi1 Psi2, Psi3>, target 0
    double residual_psi3_sq = 0.0; // relative remainder of the two-term expansion
    double residual_psi1_psi3 = 0.0;
    bool coarse_mesh_warning = false;  // set when residual_psi3_sq > 5%
    double mu_chi6 = 0.0, mu_chi10 = 0.0;
};

// Expansion coefficients of the quadratic products of the chi_8 triplet.
ProductRelations product_relations(const Mesh& mesh, const TilingGroup& group,
                                   const std::vector<EigenMode>& modes,
                                   const SpMat& K, const SpMat& M);

// Lyapunov functional of the surface flow: integral over the octagon of
// ((a + Delta) u)^2 / 2 - lambda u^2 / 2 - nu u^3 / 3 + eta u^4 / 4.
// `alpha_sq` is the constant inside the Helmholtz factor.
double local_energy(const Mesh& mesh, const Assembled& ops, const Eigen::VectorXd& u,
                    double lambda, double nu, double eta, double alpha_sq);

struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> states;
};

// Semi-implicit flow u_t = -(alpha_sq + Delta)^2 u + lambda u + nu u^2 - eta u^3:
// backward Euler on the linear part (mixed form for the biharmonic factor),
// explicit nodal nonlinearity.
Trajectory simulate(const Mesh& mesh, const Assembled& ops, const Eigen::VectorXd& u0,
                    double lambda, double nu, double eta, double alpha_sq, double dt,
                    int steps, int sample_every = 1);

}  // namespace hyp
