#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hyp/geometry.hpp"

// The regular octagonal lattice: side-pairing generators, reduction to the
// Dirichlet octagon, and the 96-element symmetry group G union kappa G of
// the quotient surface, with its 13x13 character table.

namespace hyp {

// --- octagon / tiling-triangle geometry -----------------------------------
//
// The basic tile is the hyperbolic triangle with angles pi/8 at P = 0 (on
// the positive real axis), pi/2 at Q and pi/3 at R, with R in the direction
// e^{i pi/8}.  Right-triangle trigonometry gives the side lengths:
//   cosh(PQ) = cos(pi/3) / sin(pi/8)      (so cosh(2 PQ) = 1 + sqrt2)
//   cosh(PR) = cot(pi/8) cot(pi/3)
//   cosh(QR) = cos(pi/8) / sin(pi/3)
// The boost length of the side pairing is r0 = 2 acosh(1 + sqrt2) = 4 PQ,
// the octagon inradius is r0/2 and the center-to-vertex distance is
// acosh(3 + 2 sqrt2).
namespace octagon {
double translation_length();  // r0
double inradius();            // r0 / 2
double vertex_distance();     // acosh(3 + 2 sqrt2)
double side_pq();
double side_pr();
double side_qr();
DiskPoint corner_q();  // on the positive real axis
DiskPoint corner_r();  // at angle pi/8
}  // namespace octagon

// Side-pairing generator of the lattice group, j in 0..7; entries 4..7 are
// the inverses of 0..3.  g_j = r_{j pi/4} g_0 r_{-j pi/4}.
MobiusElement lattice_generator(int j);

// (2g-2) / (1 - 1/l - 1/m - 1/n); throws unless the triangle is hyperbolic
// and g >= 2.
double riemann_hurwitz(int l, int m, int n, int g);

struct ReduceResult {
    DiskPoint point;
    std::vector<int> word;  // generator indices; z = prod(word) . point
};

// Map z into the Dirichlet octagon by greedy distance descent over the 8
// side pairings (ties broken by lowest index).  Throws on non-convergence.
ReduceResult reduce_to_octagon(const DiskPoint& z);

// Recompose a reduction word into a single lattice element.
MobiusElement word_to_element(const std::vector<int>& word);

// --- the 96-element symmetry group ----------------------------------------

// 2x2 matrix over Z3, the GL(2,3) face of an element.
struct Mat2Z3 {
    std::array<uint8_t, 4> m{1, 0, 0, 1};  // row-major

    static Mat2Z3 identity() { return {}; }
    Mat2Z3 times(const Mat2Z3& o) const;
    Mat2Z3 inverse_mat() const;
    Mat2Z3 transpose_inverse() const;  // the twist implementing conjugation by kappa
    uint8_t det() const;
    bool operator==(const Mat2Z3& o) const { return m == o.m; }
    int key() const { return m[0] + 3 * (m[1] + 3 * (m[2] + 3 * m[3])); }
};

struct SymmetryElement {
    Mat2Z3 matrix;
    bool reflect = false;       // true on the kappa G coset
    MobiusElement iso;          // representative isometry, defined mod Gamma
    std::string word;           // generating word in rho/sigma/eps/kappa
    int conj_class = -1;        // index into TilingGroup::classes()
};

// Character value a + b sqrt(3) with integer a, b (Table-1 entries).
struct CharValue {
    int a = 0;
    int b = 0;
    double value() const { return a + b * 1.7320508075688772; }
};

struct ConjugacyClass {
    std::string label;
    int representative = -1;
    std::vector<int> members;
};

struct IsotropySubgroup {
    std::string name;
    std::vector<int> elements;  // element indices, closed under the group laws
};

class TilingGroup {
  public:
    // Built once; the construction runs the full consistency audit
    // (96 elements, homomorphism of the two faces mod Gamma, class match).
    static const TilingGroup& instance();

    static constexpr int kOrder = 96;
    static constexpr int kNumClasses = 13;
    static constexpr std::array<int, 13> kIrrepDims{1, 1, 1, 1, 2, 2, 3,
                                                    3, 3, 3, 4, 4, 4};

    const std::vector<SymmetryElement>& elements() const { return elems_; }
    int compose(int i, int j) const { return mult_[i][j]; }
    int inverse(int i) const { return inv_[i]; }
    int identity() const { return 0; }
    int rho() const { return rho_; }
    int sigma() const { return sigma_; }
    int eps() const { return eps_; }
    int kappa() const { return kappa_; }
    int minus_id() const { return minus_id_; }

    int element_power(int g, int n) const;
    int conjugate(int g, int h) const;  // h g h^{-1}

    const std::vector<ConjugacyClass>& classes() const { return classes_; }
    int class_of(int elem) const { return elems_[elem].conj_class; }

    CharValue character(int chi, int cls) const { return table_[chi][cls]; }
    double character_of(int chi, int elem) const {
        return table_[chi][class_of(elem)].value();
    }

    // Closure of a generating set; throws if it does not close within G.
    std::vector<int> subgroup_closure(std::vector<int> generators) const;

    // The isotropy subgroups named in the bifurcation analysis.
    const std::vector<IsotropySubgroup>& named_isotropy_subgroups() const {
        return isotropy_;
    }
    const IsotropySubgroup& isotropy(const std::string& name) const;

    // dim Fix(H) for irreducible character chi: (1/|H|) sum chi(h), computed
    // in exact integer arithmetic.  Throws when the sum is not an integer.
    int fix_dim(int chi, const std::vector<int>& subgroup) const;

    // Isotypic projector weights d_chi * chi(g) / 96 for every element.
    std::vector<std::pair<int, double>> character_projection_weights(int chi) const;

    // Element/class/table dump for external verification.
    std::string to_json() const;

  private:
    TilingGroup();
    void build_elements();
    void build_classes();
    void build_table();
    void build_isotropy();
    void audit() const;

    std::vector<SymmetryElement> elems_;
    std::vector<std::array<int, 4>> gen_mult_;  // right-multiplication by generators
    std::vector<std::vector<int>> mult_;
    std::vector<int> inv_;
    std::vector<ConjugacyClass> classes_;
    std::vector<std::array<CharValue, 13>> table_;  // [chi][class]
    std::vector<IsotropySubgroup> isotropy_;
    int rho_ = -1, sigma_ = -1, eps_ = -1, kappa_ = -1, minus_id_ = -1;
};

// Explicit orthogonal matrices of one irreducible representation, extracted
// from the regular representation by symmetrizing a random operator.
class IrrepMatrices {
  public:
    static IrrepMatrices build(const TilingGroup& group, int chi, unsigned seed = 7u);

    int chi() const { return chi_; }
    int dim() const { return dim_; }
    const Eigen::MatrixXd& matrix(int elem) const { return mats_[elem]; }

  private:
    int chi_ = -1;
    int dim_ = 0;
    std::vector<Eigen::MatrixXd> mats_;
};

}  // namespace hyp
