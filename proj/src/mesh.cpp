#include "hyp/mesh.hpp"

#include <cmath>
#include <map>
#include <unordered_map>

namespace hyp {

namespace {

// Quantized point lookup with tolerance-based matching.
class PointIndex {
  public:
    explicit PointIndex(double cell = 1e-6) : cell_(cell) {}

    int find(const std::vector<DiskPoint>& pts, const DiskPoint& p, double tol) const {
        const long long cx = static_cast<long long>(std::floor(p.re / cell_));
        const long long cy = static_cast<long long>(std::floor(p.im / cell_));
        for (long long dx = -1; dx <= 1; ++dx) {
            for (long long dy = -1; dy <= 1; ++dy) {
                const auto it = grid_.find(key(cx + dx, cy + dy));
                if (it == grid_.end()) continue;
                for (int idx : it->second) {
                    const double d = std::hypot(pts[idx].re - p.re, pts[idx].im - p.im);
                    if (d < tol) return idx;
                }
            }
        }
        return -1;
    }

    void insert(const std::vector<DiskPoint>& pts, int idx) {
        const long long cx = static_cast<long long>(std::floor(pts[idx].re / cell_));
        const long long cy = static_cast<long long>(std::floor(pts[idx].im / cell_));
        grid_[key(cx, cy)].push_back(idx);
    }

  private:
    static long long key(long long x, long long y) { return x * 2000003LL + y; }
    double cell_;
    std::unordered_map<long long, std::vector<int>> grid_;
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Midpoint-refined base tile in local (pre-group) node numbering.
struct BaseTile {
    std::vector<DiskPoint> nodes;
    std::vector<std::array<int, 3>> tris;
};

BaseTile refined_base_tile(int refinement) {
    BaseTile t;
    t.nodes = {DiskPoint(0.0, 0.0), octagon::corner_q(), octagon::corner_r()};
    t.tris = {{0, 1, 2}};
    for (int level = 0; level < refinement; ++level) {
        std::map<std::pair<int, int>, int> edge_mid;
        auto mid = [&](int a, int b) {
            const auto key = std::minmax(a, b);
            auto it = edge_mid.find(key);
            if (it != edge_mid.end()) return it->second;
            const int idx = static_cast<int>(t.nodes.size());
            t.nodes.push_back(midpoint(t.nodes[a], t.nodes[b]));
            edge_mid[key] = idx;
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(4 * t.tris.size());
        for (const auto& tr : t.tris) {
            const int m01 = mid(tr[0], tr[1]);
            const int m12 = mid(tr[1], tr[2]);
            const int m02 = mid(tr[0], tr[2]);
            next.push_back({tr[0], m01, m02});
            next.push_back({m01, tr[1], m12});
            next.push_back({m02, m12, tr[2]});
            next.push_back({m01, m12, m02});
        }
        t.tris = std::move(next);
    }
    return t;
}

}  // namespace

Mesh build_mesh(int refinement) {
    if (refinement < 0) throw std::invalid_argument("build_mesh: refinement >= 0");
    const TilingGroup& group = TilingGroup::instance();
    const BaseTile base = refined_base_tile(refinement);

    Mesh mesh;
    mesh.refinement = refinement;
    PointIndex index;
    const double match_tol = 1e-9;

    // Orbit of the refined tile under the 96 in-octagon representatives.
    for (const auto& elem : group.elements()) {
        std::vector<int> local(base.nodes.size());
        for (size_t k = 0; k < base.nodes.size(); ++k) {
            const DiskPoint p = apply(elem.iso, base.nodes[k]);
            int idx = index.find(mesh.nodes, p, match_tol);
            if (idx < 0) {
                idx = static_cast<int>(mesh.nodes.size());
                mesh.nodes.push_back(p);
                index.insert(mesh.nodes, idx);
            }
            local[k] = idx;
        }
        for (const auto& tr : base.tris) {
            std::array<int, 3> t{local[tr[0]], local[tr[1]], local[tr[2]]};
            // Keep positive orientation in disk coordinates.
            const Complex a = mesh.nodes[t[0]].c(), b = mesh.nodes[t[1]].c(),
                          c = mesh.nodes[t[2]].c();
            const double cross = std::imag(std::conj(b - a) * (c - a));
            if (cross < 0.0) std::swap(t[1], t[2]);
            mesh.triangles.push_back(t);
        }
    }

    // Identify boundary nodes across the side pairings.
    const int n_nodes = static_cast<int>(mesh.nodes.size());
    UnionFind uf(n_nodes);
    const DiskPoint origin(0.0, 0.0);
    for (int i = 0; i < n_nodes; ++i) {
        const double d0 = dist(mesh.nodes[i], origin);
        for (int j = 0; j < 8; ++j) {
            const DiskPoint moved = apply(lattice_generator(j), mesh.nodes[i]);
            if (dist(moved, origin) < d0 + 1e-9) {
                const int partner = index.find(mesh.nodes, moved, 1e-7);
                if (partner < 0)
                    throw std::runtime_error("build_mesh: boundary partner missing");
                if (partner != i) {
                    mesh.boundary_pairs.push_back({i, partner, j});
                    uf.unite(i, partner);
                }
            }
        }
    }

    mesh.surface_index.assign(n_nodes, -1);
    std::vector<int> root_to_surface(n_nodes, -1);
    for (int i = 0; i < n_nodes; ++i) {
        const int r = uf.find(i);
        if (root_to_surface[r] < 0) {
            root_to_surface[r] = mesh.n_surface++;
            mesh.surface_node.push_back(i);
        }
        mesh.surface_index[i] = root_to_surface[r];
    }

    // Node permutations of the group action.
    mesh.group_action.assign(TilingGroup::kOrder, std::vector<int>(mesh.n_surface, -1));
    for (int g = 0; g < TilingGroup::kOrder; ++g) {
        const MobiusElement ginv = inverse(group.elements()[g].iso);
        std::vector<char> hit(mesh.n_surface, 0);
        for (int s = 0; s < mesh.n_surface; ++s) {
            const DiskPoint z = mesh.nodes[mesh.surface_node[s]];
            const ReduceResult red = reduce_to_octagon(apply(ginv, z));
            const int idx = index.find(mesh.nodes, red.point, 1e-7);
            if (idx < 0)
                throw std::runtime_error("build_mesh: group action is not a node permutation");
            mesh.group_action[g][s] = mesh.surface_index[idx];
            hit[mesh.surface_index[idx]] = 1;
        }
        for (int s = 0; s < mesh.n_surface; ++s)
            if (!hit[s]) throw std::runtime_error("build_mesh: group action not bijective");
    }
    return mesh;
}

Eigen::VectorXd Mesh::act(int g, const Eigen::VectorXd& u) const {
    Eigen::VectorXd out(n_surface);
    const auto& perm = group_action[g];
    for (int i = 0; i < n_surface; ++i) out[i] = u[perm[i]];
    return out;
}

Eigen::VectorXd Mesh::project(int chi, const TilingGroup& group,
                              const Eigen::VectorXd& u) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n_surface);
    for (const auto& [g, w] : group.character_projection_weights(chi)) {
        if (w == 0.0) continue;
        out += w * act(g, u);
    }
    return out;
}

Assembled assemble(const Mesh& mesh) {
    std::vector<Eigen::Triplet<double>> kt, mt;
    kt.reserve(mesh.triangles.size() * 9);
    mt.reserve(mesh.triangles.size() * 9);

    for (const auto& tr : mesh.triangles) {
        // Hyperbolic side lengths; the comparison triangle with these
        // Euclidean lengths carries both forms.
        const double a = dist(mesh.nodes[tr[1]], mesh.nodes[tr[2]]);  // opposite node 0
        const double b = dist(mesh.nodes[tr[0]], mesh.nodes[tr[2]]);  // opposite node 1
        const double c = dist(mesh.nodes[tr[0]], mesh.nodes[tr[1]]);  // opposite node 2

        const double s = 0.5 * (a + b + c);
        const double area2 = s * (s - a) * (s - b) * (s - c);
        if (area2 <= 0.0 || std::sqrt(area2) < 1e-14)
            throw std::runtime_error("assemble: degenerate triangle");
        const double area = std::sqrt(area2);

        // Cotangent stiffness: K_ij = -cot(theta_k)/2, theta_k opposite ij.
        const double cot0 = (b * b + c * c - a * a) / (4.0 * area);
        const double cot1 = (a * a + c * c - b * b) / (4.0 * area);
        const double cot2 = (a * a + b * b - c * c) / (4.0 * area);
        const double k01 = -0.5 * cot2, k02 = -0.5 * cot1, k12 = -0.5 * cot0;
        const double kd0 = -(k01 + k02), kd1 = -(k01 + k12), kd2 = -(k02 + k12);

        const int i0 = mesh.surface_index[tr[0]];
        const int i1 = mesh.surface_index[tr[1]];
        const int i2 = mesh.surface_index[tr[2]];
        kt.emplace_back(i0, i0, kd0);
        kt.emplace_back(i1, i1, kd1);
        kt.emplace_back(i2, i2, kd2);
        kt.emplace_back(i0, i1, k01);
        kt.emplace_back(i1, i0, k01);
        kt.emplace_back(i0, i2, k02);
        kt.emplace_back(i2, i0, k02);
        kt.emplace_back(i1, i2, k12);
        kt.emplace_back(i2, i1, k12);

        // Consistent P1 mass of the comparison triangle.
        const double md = area / 6.0, mo = area / 12.0;
        mt.emplace_back(i0, i0, md);
        mt.emplace_back(i1, i1, md);
        mt.emplace_back(i2, i2, md);
        mt.emplace_back(i0, i1, mo);
        mt.emplace_back(i1, i0, mo);
        mt.emplace_back(i0, i2, mo);
        mt.emplace_back(i2, i0, mo);
        mt.emplace_back(i1, i2, mo);
        mt.emplace_back(i2, i1, mo);
    }

    Assembled out;
    out.stiffness.resize(mesh.n_surface, mesh.n_surface);
    out.mass.resize(mesh.n_surface, mesh.n_surface);
    out.stiffness.setFromTriplets(kt.begin(), kt.end());
    out.mass.setFromTriplets(mt.begin(), mt.end());
    return out;
}

double integrate_power(const Mesh& mesh, const Eigen::VectorXd& u, int p) {
    double total = 0.0;
    for (const auto& tr : mesh.triangles) {
        const double a = dist(mesh.nodes[tr[1]], mesh.nodes[tr[2]]);
        const double b = dist(mesh.nodes[tr[0]], mesh.nodes[tr[2]]);
        const double c = dist(mesh.nodes[tr[0]], mesh.nodes[tr[1]]);
        const double s = 0.5 * (a + b + c);
        const double area = std::sqrt(std::max(0.0, s * (s - a) * (s - b) * (s - c)));
        const double u0 = u[mesh.surface_index[tr[0]]];
        const double u1 = u[mesh.surface_index[tr[1]]];
        const double u2 = u[mesh.surface_index[tr[2]]];
        const double m01 = 0.5 * (u0 + u1), m12 = 0.5 * (u1 + u2), m02 = 0.5 * (u0 + u2);
        total += area / 3.0 *
                 (std::pow(m01, p) + std::pow(m12, p) + std::pow(m02, p));
    }
    return total;
}

}  // namespace hyp
