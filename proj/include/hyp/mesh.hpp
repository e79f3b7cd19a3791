#pragma once

#include <array>
#include <vector>

#include <Eigen/Sparse>

#include "hyp/geometry.hpp"
#include "hyp/lattice.hpp"

// Triangulation of the periodic octagon built as the group orbit of a
// refined (8,2,3) tile, so that every one of the 96 symmetries acts on the
// surface degrees of freedom by an exact node permutation.

namespace hyp {

using SpMat = Eigen::SparseMatrix<double>;

struct Mesh {
    int refinement = 0;

    // Nodes of the octagon triangulation (disk coordinates, closed octagon).
    std::vector<DiskPoint> nodes;
    std::vector<std::array<int, 3>> triangles;  // node indices

    // Identification of the octagon boundary: node -> surface dof.
    std::vector<int> surface_index;
    int n_surface = 0;

    // Pairs of distinct boundary nodes identified by a side pairing,
    // stored as (node, partner, generator index).
    struct BoundaryPair {
        int node;
        int partner;
        int generator;
    };
    std::vector<BoundaryPair> boundary_pairs;

    // Node permutations of the symmetry action on surface dofs:
    // (T_g u)[i] = u[group_action[g][i]].
    std::vector<std::vector<int>> group_action;

    // Representative node (index into nodes) for each surface dof.
    std::vector<int> surface_node;

    // Apply T_g to a surface field.
    Eigen::VectorXd act(int g, const Eigen::VectorXd& u) const;

    // Isotypic projector P_chi applied to a surface field.
    Eigen::VectorXd project(int chi, const TilingGroup& group,
                            const Eigen::VectorXd& u) const;
};

// refinement r: each (8,2,3) tile is midpoint-subdivided into 4^r triangles.
Mesh build_mesh(int refinement);

struct Assembled {
    SpMat stiffness;  // K: Laplace-Beltrami Dirichlet form
    SpMat mass;       // M: hyperbolic-measure mass matrix
};

// P1 matrices on the surface.  Element matrices are computed from the
// hyperbolic side lengths through the Euclidean comparison triangle, which
// keeps them invariant under the full symmetry group to machine precision
// (the 2-D Dirichlet form needs no metric factor; the measure is carried by
// the hyperbolic lengths).
Assembled assemble(const Mesh& mesh);

// Integral of u^p over the surface (edge-midpoint rule per element).
double integrate_power(const Mesh& mesh, const Eigen::VectorXd& u, int p);

}  // namespace hyp
