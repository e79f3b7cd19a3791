#include "hyp/eigensolver.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

namespace hyp {

namespace {
constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kFourPi = 4.0 * kPi;
}  // namespace

std::vector<EigenMode> solve_eigs(const SpMat& K, const SpMat& M, int n,
                                  double residual_tol) {
    const int dof = static_cast<int>(K.rows());
    if (n < 1 || n > 120) throw std::invalid_argument("solve_eigs: n in 1..120");
    const int m = std::min(dof, n + std::max(12, n / 2));

    // Shift-invert iteration on (K + M) x = M y targets the lower spectrum.
    SpMat A = K + M;
    Eigen::SimplicialLDLT<SpMat> solver(A);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("solve_eigs: factorization failed");

    std::mt19937 rng(2718281u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd x(dof, m);
    for (int i = 0; i < dof; ++i)
        for (int j = 0; j < m; ++j) x(i, j) = gauss(rng);

    Eigen::VectorXd mu(m);
    double worst = 1.0;
    int iter = 0;
    const int max_iter = 800;
    for (; iter < max_iter; ++iter) {
        Eigen::MatrixXd y = solver.solve(M * x);
        // M-orthonormalize.
        Eigen::MatrixXd g = y.transpose() * (M * y);
        Eigen::LLT<Eigen::MatrixXd> llt(g);
        if (llt.info() != Eigen::Success)
            throw std::runtime_error("solve_eigs: subspace became degenerate");
        y = llt.matrixL().solve(y.transpose()).transpose();
        // Rayleigh-Ritz.
        Eigen::MatrixXd kp = y.transpose() * (K * y);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kp);
        x = y * es.eigenvectors();
        mu = es.eigenvalues();

        if (iter % 4 == 3 || iter == max_iter - 1) {
            worst = 0.0;
            for (int j = 0; j < n; ++j) {
                const Eigen::VectorXd r = K * x.col(j) - mu(j) * (M * x.col(j));
                const double denom = (M * x.col(j)).norm();
                worst = std::max(worst, r.norm() / denom);
            }
            if (worst < residual_tol) break;
        }
    }
    if (worst >= residual_tol) {
        std::ostringstream msg;
        msg << "solve_eigs: no convergence after " << iter + 1
            << " iterations, worst residual " << worst;
        throw std::runtime_error(msg.str());
    }

    // Cluster into multiplets.
    std::vector<EigenMode> modes;
    int start = 0;
    while (start < n) {
        int end = start + 1;
        while (end < m && mu(end) - mu(end - 1) < 1e-3 * std::max(mu(end), 0.5)) ++end;
        EigenMode mode;
        mode.multiplicity = end - start;
        mode.mu = mu.segment(start, mode.multiplicity).mean();
        mode.vectors = x.middleCols(start, mode.multiplicity);
        for (int j = start; j < end; ++j) {
            const Eigen::VectorXd r = K * x.col(j) - mu(j) * (M * x.col(j));
            mode.max_residual = std::max(mode.max_residual, r.norm() / (M * x.col(j)).norm());
        }
        modes.push_back(std::move(mode));
        start = end;
    }
    return modes;
}

std::string classify(EigenMode& mode, const Mesh& mesh, const TilingGroup& group,
                     const SpMat& M) {
    double best = -1.0, total = 0.0;
    int best_chi = -1;
    std::vector<double> breakdown(13, 0.0);
    for (int c = 0; c < mode.vectors.cols(); ++c)
        total += mode.vectors.col(c).dot(M * mode.vectors.col(c));
    for (int chi = 0; chi < 13; ++chi) {
        double part = 0.0;
        for (int c = 0; c < mode.vectors.cols(); ++c) {
            const Eigen::VectorXd p = mesh.project(chi, group, mode.vectors.col(c));
            part += p.dot(M * p);
        }
        breakdown[chi] = part;
        if (part > best) {
            best = part;
            best_chi = chi;
        }
    }
    const double ratio = std::sqrt(best / total);
    if (ratio >= 0.99) {
        mode.irrep = "chi_" + std::to_string(best_chi + 1);
    } else {
        std::ostringstream s;
        s << "unclassified";
        mode.irrep = s.str();
    }
    return mode.irrep;
}

double planform_inner(const SpMat& M, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    return u.dot(M * v) / kFourPi;
}

Chi8Basis chi8_basis(const Mesh& mesh, const TilingGroup& group,
                     const std::vector<EigenMode>& modes, const SpMat& M) {
    // Locate the chi_8 triplet: the lowest multiplicity-3 multiplet.
    const EigenMode* triplet = nullptr;
    for (const auto& m : modes) {
        if (m.mu > 1e-6 && m.multiplicity == 3) {
            triplet = &m;
            break;
        }
    }
    if (!triplet) throw std::runtime_error("chi8_basis: triplet not found");

    // Psi3: D8-fixed direction inside the eigenspace.
    Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(mesh.n_surface, 3);
    const auto& d8 = group.isotropy("D8").elements;
    for (int c = 0; c < 3; ++c) {
        Eigen::VectorXd s = Eigen::VectorXd::Zero(mesh.n_surface);
        for (int g : d8) s += mesh.act(g, triplet->vectors.col(c));
        avg.col(c) = s / static_cast<double>(d8.size());
    }
    // Largest principal direction of the averaged basis.
    Eigen::Matrix3d gram;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) gram(i, j) = avg.col(i).dot(M * avg.col(j));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(gram);
    const Eigen::Vector3d w = es.eigenvectors().col(2);
    Eigen::VectorXd psi3 = triplet->vectors * w;

    Chi8Basis basis;
    basis.mu = triplet->mu;
    psi3 /= std::sqrt(planform_inner(M, psi3, psi3));
    basis.psi3 = psi3;

    const int rho = group.rho(), sig = group.sigma();
    const int w1 = group.compose(group.compose(rho, sig), group.inverse(rho));
    const int rho2 = group.element_power(rho, 2);
    const int w2 = group.compose(group.compose(rho2, sig), group.inverse(rho2));
    basis.psi1 = mesh.act(w1, psi3);
    basis.psi2 = mesh.act(w2, psi3);
    return basis;
}

ProductRelations product_relations(const Mesh& mesh, const TilingGroup& group,
                                   const std::vector<EigenMode>& modes,
                                   const SpMat& K, const SpMat& M) {
    (void)K;
    const Chi8Basis basis = chi8_basis(mesh, group, modes, M);

    // Orthonormality of the triplet under the 1/(4 pi) product.
    for (const auto* a : {&basis.psi1, &basis.psi2, &basis.psi3}) {
        if (std::abs(planform_inner(M, *a, *a) - 1.0) > 1e-6)
            throw std::runtime_error("product_relations: triplet not normalized");
    }
    if (std::abs(planform_inner(M, basis.psi1, basis.psi3)) > 1e-6 ||
        std::abs(planform_inner(M, basis.psi1, basis.psi2)) > 1e-6)
        throw std::runtime_error("product_relations: triplet not orthogonal");

    // Locate the chi_6 pair and the chi_10 triplet above the chi_8 level.
    const EigenMode* chi6 = nullptr;
    const EigenMode* chi10 = nullptr;
    for (const auto& m : modes) {
        if (m.mu <= basis.mu + 1e-6) continue;
        if (!chi6 && m.multiplicity == 2) chi6 = &m;
        if (!chi10 && m.multiplicity == 3) chi10 = &m;
    }
    if (!chi6 || !chi10)
        throw std::runtime_error("product_relations: chi_6 / chi_10 modes not found");

    ProductRelations out;
    out.mu_chi6 = chi6->mu;
    out.mu_chi10 = chi10->mu;

    auto span_coeff = [&](const Eigen::VectorXd& f, const EigenMode& mode) {
        // Norm of the projection onto the (M-orthonormal) eigenspace,
        // rescaled to the 1/(4 pi) normalization.
        double sq = 0.0;
        for (int c = 0; c < mode.vectors.cols(); ++c) {
            Eigen::VectorXd v = mode.vectors.col(c);
            v /= std::sqrt(planform_inner(M, v, v));
            const double coef = planform_inner(M, f, v);
            sq += coef * coef;
        }
        return std::sqrt(sq);
    };

    const Eigen::VectorXd prod13 = basis.psi1.cwiseProduct(basis.psi3);
    const Eigen::VectorXd sq3 = basis.psi3.cwiseProduct(basis.psi3);
    const Eigen::VectorXd prod12 = basis.psi1.cwiseProduct(basis.psi2);

    Eigen::VectorXd ones = Eigen::VectorXd::Ones(mesh.n_surface);
    ones /= std::sqrt(planform_inner(M, ones, ones));

    out.coeff_chi10 = span_coeff(prod13, *chi10);
    out.coeff_const = planform_inner(M, sq3, ones);
    out.coeff_chi6 = span_coeff(sq3, *chi6);
    out.cross_coeff = std::abs(planform_inner(M, prod12, basis.psi3));

    // Remainders of the published expansions.
    auto project_out = [&](Eigen::VectorXd f, const EigenMode& mode) {
        for (int c = 0; c < mode.vectors.cols(); ++c) {
            Eigen::VectorXd v = mode.vectors.col(c);
            v /= std::sqrt(planform_inner(M, v, v));
            f -= planform_inner(M, f, v) * v;
        }
        return f;
    };
    Eigen::VectorXd rem = project_out(sq3, *chi6);
    rem -= planform_inner(M, rem, ones) * ones;
    out.residual_psi3_sq = std::sqrt(planform_inner(M, rem, rem) / planform_inner(M, sq3, sq3));
    Eigen::VectorXd rem13 = project_out(prod13, *chi10);
    out.residual_psi1_psi3 =
        std::sqrt(planform_inner(M, rem13, rem13) / planform_inner(M, prod13, prod13));
    out.coarse_mesh_warning = out.residual_psi3_sq > 0.05;
    return out;
}

double local_energy(const Mesh& mesh, const Assembled& ops, const Eigen::VectorXd& u,
                    double lambda, double nu, double eta, double alpha_sq) {
    // w = Delta u in the weak sense: M w = -K u.
    static thread_local const SpMat* cached_m = nullptr;
    static thread_local Eigen::SimplicialLDLT<SpMat> mass_solver;
    if (cached_m != &ops.mass) {
        mass_solver.compute(ops.mass);
        cached_m = &ops.mass;
    }
    const Eigen::VectorXd w = mass_solver.solve(-(ops.stiffness * u));
    const Eigen::VectorXd y = alpha_sq * u + w;

    const double quad = 0.5 * y.dot(ops.mass * y) - 0.5 * lambda * u.dot(ops.mass * u);
    const double cubic = -nu / 3.0 * integrate_power(mesh, u, 3);
    const double quartic = eta / 4.0 * integrate_power(mesh, u, 4);
    return quad + cubic + quartic;
}

Trajectory simulate(const Mesh& mesh, const Assembled& ops, const Eigen::VectorXd& u0,
                    double lambda, double nu, double eta, double alpha_sq, double dt,
                    int steps, int sample_every) {
    if (dt <= 0.0) throw std::invalid_argument("simulate: dt > 0 required");
    const int n = mesh.n_surface;
    const SpMat& M = ops.mass;
    const SpMat B = alpha_sq * M - ops.stiffness;  // weak (alpha_sq + Delta)

    // Mixed backward-Euler system for u+ and w = M^{-1} B u+:
    //   [ (1/dt - lambda) M   B ] [u+]   [ M (u/dt + f(u)) ]
    //   [ B                  -M ] [w ] = [ 0               ]
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(4 * M.nonZeros());
    for (int k = 0; k < M.outerSize(); ++k) {
        for (SpMat::InnerIterator it(M, k); it; ++it) {
            trips.emplace_back(it.row(), it.col(), (1.0 / dt - lambda) * it.value());
            trips.emplace_back(n + it.row(), n + it.col(), -it.value());
        }
        for (SpMat::InnerIterator it(B, k); it; ++it) {
            trips.emplace_back(it.row(), n + it.col(), it.value());
            trips.emplace_back(n + it.row(), it.col(), it.value());
        }
    }
    SpMat sys(2 * n, 2 * n);
    sys.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<SpMat> solver(sys);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("simulate: linear solve setup failed");

    Trajectory traj;
    Eigen::VectorXd u = u0;
    traj.times.push_back(0.0);
    traj.states.push_back(u);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * n);
    for (int s = 1; s <= steps; ++s) {
        const Eigen::VectorXd f =
            nu * u.cwiseProduct(u) - eta * u.cwiseProduct(u).cwiseProduct(u);
        rhs.head(n) = M * (u / dt + f);
        const Eigen::VectorXd sol = solver.solve(rhs);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("simulate: linear solve failed");
        u = sol.head(n);
        if (s % sample_every == 0 || s == steps) {
            traj.times.push_back(s * dt);
            traj.states.push_back(u);
        }
    }
    return traj;
}

}  // namespace hyp
