#include "hyp/normalforms.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <optional>

namespace hyp {

namespace {
constexpr double kPi = 3.141592653589793238462643383279;
const double kSqrt3 = std::sqrt(3.0);
const Complex kI{0.0, 1.0};
}  // namespace

Chi8Coefficients chi8_coeffs(double nu, double eta, double alpha_c_sq, double mu_chi6,
                             double mu_chi10) {
    const double d6 = alpha_c_sq - mu_chi6;
    const double d10 = alpha_c_sq - mu_chi10;
    if (std::abs(d6) < 1e-9 || std::abs(d10) < 1e-9 || std::abs(alpha_c_sq) < 1e-9)
        throw std::invalid_argument("chi8_coeffs: resonant denominators");
    const double ac4 = alpha_c_sq * alpha_c_sq;
    Chi8Coefficients c;
    c.a = nu * nu * (2.0 / ac4 - 8.0 / (5.0 * d6 * d6) + 4.0 / (3.0 * d10 * d10)) - eta;
    c.b = nu * nu * (2.0 / ac4 + 72.0 / (25.0 * d6 * d6)) - 61.0 / 25.0 * eta;
    return c;
}

Eigen::Vector3d chi8_rhs(const Eigen::Vector3d& x, double lambda, double a, double b) {
    Eigen::Vector3d f;
    for (int i = 0; i < 3; ++i) {
        const double others = x.squaredNorm() - x[i] * x[i];
        f[i] = lambda * x[i] + (a * others + b * x[i] * x[i]) * x[i];
    }
    return f;
}

namespace {

// Central-difference Jacobian of a vector field.
template <typename F>
Eigen::MatrixXd numeric_jacobian(const F& f, const Eigen::VectorXd& x, double h = 1e-6) {
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd j(f(x).size(), n);
    for (int k = 0; k < n; ++k) {
        Eigen::VectorXd xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        j.col(k) = (f(xp) - f(xm)) / (2.0 * h);
    }
    return j;
}

BranchInfo make_branch(const std::string& name, const Eigen::VectorXd& direction,
                       double cubic_coeff,
                       const std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)>& rhs) {
    BranchInfo info;
    info.name = name;
    info.direction = direction;
    info.cubic_coeff = cubic_coeff;
    info.supercritical = cubic_coeff < 0.0;
    info.amplitude_sq_per_lambda = (cubic_coeff != 0.0) ? 1.0 / (-cubic_coeff) : 0.0;

    // Sample an equilibrium on the existing side and inspect the Jacobian.
    const double lambda_s = info.supercritical ? 0.01 : -0.01;
    const double amp = std::sqrt(-lambda_s / cubic_coeff);
    const Eigen::VectorXd eq = amp * direction;
    const auto field = [&](const Eigen::VectorXd& x) { return rhs(x, lambda_s); };
    const Eigen::MatrixXd jac = numeric_jacobian(field, eq);
    const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(jac).eigenvalues();
    info.jacobian_eigenvalues = ev.real();
    info.stable = ev.real().maxCoeff() < 1e-7;
    return info;
}

}  // namespace

std::vector<BranchInfo> chi8_branches(double a, double b) {
    const auto rhs = [a, b](const Eigen::VectorXd& x, double lambda) -> Eigen::VectorXd {
        return chi8_rhs(x, lambda, a, b);
    };
    std::vector<BranchInfo> out;
    Eigen::Vector3d d8(0.0, 0.0, 1.0);
    Eigen::Vector3d c6 = Eigen::Vector3d(1.0, 1.0, 1.0).normalized();
    Eigen::Vector3d d2 = Eigen::Vector3d(0.0, 1.0, 1.0).normalized();
    out.push_back(make_branch("D8", d8, b, rhs));
    out.push_back(make_branch("C6k'", c6, (2.0 * a + b) / 3.0, rhs));
    out.push_back(make_branch("D2k", d2, (a + b) / 2.0, rhs));
    return out;
}

std::pair<Complex, Complex> chi12_rhs(Complex z1, Complex z2, double lambda, double a,
                                      double b) {
    const Complex c1 = std::conj(z1), c2 = std::conj(z2);
    const double r2 = std::norm(z1) + std::norm(z2);
    const Complex f1 = (lambda + a * r2) * z1 +
                       b * (kSqrt3 * (3.0 * z1 * z1 + c2 * c2) * c1 -
                            kI * (z2 * z2 + 3.0 * c1 * c1) * z2);
    const Complex f2 = (lambda + a * r2) * z2 +
                       b * (kSqrt3 * (3.0 * z2 * z2 + c1 * c1) * c2 +
                            kI * (z1 * z1 + 3.0 * c2 * c2) * z1);
    return {f1, f2};
}

double chi11_potential(Complex z1, Complex z2, double a_sextic, double b, double d) {
    const Complex c1 = std::conj(z1), c2 = std::conj(z2);
    const double r2 = std::norm(z1) + std::norm(z2);
    const Complex bterm = std::pow(z1, 4) * c1 * c2 + 2.0 * z1 * c1 * c1 * std::pow(z2, 3) -
                          c1 * std::pow(z2, 4) * c2 - 2.0 * std::pow(z1, 3) * z2 * c2 * c2;
    const Complex dterm = z1 * std::pow(z2, 5) - std::pow(z1, 5) * z2;
    return a_sextic * r2 * r2 * r2 + b * 2.0 * bterm.real() + d * 2.0 * dterm.real();
}

std::pair<Complex, Complex> chi11_rhs(Complex z1, Complex z2, double lambda, double A,
                                      double b, double d, double a_sextic) {
    const Complex c1 = std::conj(z1), c2 = std::conj(z2);
    const double r2 = std::norm(z1) + std::norm(z2);

    // Wirtinger derivatives of the potential.
    const Complex dq1 =
        a_sextic * 3.0 * r2 * r2 * z1 +
        b * (std::pow(z1, 4) * c2 + 4.0 * z1 * std::pow(c1, 3) * z2 +
             4.0 * z1 * c1 * std::pow(z2, 3) + z1 * z1 * std::pow(c2, 3) -
             std::pow(z2, 4) * c2 - 6.0 * c1 * c1 * c2 * z2 * z2) +
        d * (std::pow(c2, 5) - 5.0 * std::pow(c1, 4) * c2);
    const Complex dq2 =
        a_sextic * 3.0 * r2 * r2 * z2 +
        b * (std::pow(z1, 4) * c1 + 6.0 * z1 * z1 * c1 * c2 * c2 -
             c1 * std::pow(z2, 4) - 4.0 * z1 * z2 * std::pow(c2, 3) -
             4.0 * std::pow(z1, 3) * z2 * c2 - 2.0 * std::pow(c1, 3) * z2 * z2) +
        d * (5.0 * c1 * std::pow(c2, 4) - std::pow(c1, 5));

    const Complex f1 = (lambda + A * r2) * z1 + dq1;
    const Complex f2 = (lambda + A * r2) * z2 + dq2;
    return {f1, f2};
}

Eigen::Vector4d NormalFormAction::encode(Complex z1, Complex z2) {
    return {z1.real(), z1.imag(), z2.real(), z2.imag()};
}

std::pair<Complex, Complex> NormalFormAction::decode(const Eigen::Vector4d& v) {
    return {Complex(v[0], v[1]), Complex(v[2], v[3])};
}

Eigen::MatrixXd NormalFormAction::fixed_subspace(const std::vector<int>& subgroup) const {
    Eigen::Matrix4d avg = Eigen::Matrix4d::Zero();
    for (int g : subgroup) avg += mats_[g];
    avg /= static_cast<double>(subgroup.size());
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(avg, Eigen::ComputeFullU);
    int dim = 0;
    while (dim < 4 && svd.singularValues()(dim) > 0.5) ++dim;
    return svd.matrixU().leftCols(dim);
}

namespace {

// Orthonormal (p, q) spanning the rotation plane of eigenvalue e^{i theta},
// oriented so the induced complex coordinate transforms by e^{i theta}.
struct PlaneBasis {
    Eigen::Vector4d p, q;
};

std::optional<PlaneBasis> rotation_plane(const Eigen::Matrix4d& r, double theta) {
    const Eigen::EigenSolver<Eigen::Matrix4d> es(r);
    const Complex target = std::polar(1.0, theta);
    for (int k = 0; k < 4; ++k) {
        if (std::abs(es.eigenvalues()(k) - target) > 1e-9) continue;
        Eigen::Vector4cd v = es.eigenvectors().col(k);
        Eigen::Vector4d p = v.real(), q = v.imag();
        q -= q.dot(p) / p.squaredNorm() * p;
        if (q.norm() < 1e-12) return std::nullopt;
        p.normalize();
        q.normalize();
        // Coordinate z = p.x - i q.x transforms with e^{i theta}.
        PlaneBasis out{p, -q};
        return out;
    }
    return std::nullopt;
}

struct GaugeResult {
    std::vector<Eigen::Matrix4d> mats;
};

using RhsFn = std::function<Eigen::Vector4d(const Eigen::Vector4d&)>;

Eigen::Vector4d apply_c(const Eigen::Matrix4d& m, const Eigen::Vector4d& v) { return m * v; }

}  // namespace

NormalFormAction NormalFormAction::build(int chi) {
    const TilingGroup& G = TilingGroup::instance();
    const IrrepMatrices rep = IrrepMatrices::build(G, chi);
    const Eigen::Matrix4d R = rep.matrix(G.rho());

    // Candidate (p, q) rotation angles for (z1, z2): q = 3p mod 8 with p odd.
    const std::array<std::pair<int, int>, 4> pq_options{
        std::pair<int, int>{1, 3}, {3, 1}, {5, 7}, {7, 5}};
    const Complex kappa_target_1 = (chi == 11) ? Complex(1, 0) : kI;
    const Complex kappa_target_2 = (chi == 11) ? Complex(-1, 0) : -kI;

    // Random probe states for the equivariance checks.
    std::vector<Eigen::Vector4d> probes;
    for (int t = 0; t < 12; ++t) {
        const double s = 0.3 + 0.1 * t;
        probes.push_back(encode(Complex(std::sin(1.7 * s), std::cos(0.6 * s)) * s,
                                Complex(std::cos(2.3 * s), std::sin(1.1 * s)) * (1.0 - 0.4 * s)));
    }

    auto rhs_of = [&](const Eigen::Vector4d& v) -> Eigen::Vector4d {
        const auto [z1, z2] = decode(v);
        if (chi == 11) {
            const auto [f1, f2] = chi12_rhs(z1, z2, 0.17, -0.8, 0.6);
            return encode(f1, f2);
        }
        const auto [f1, f2] = chi11_rhs(z1, z2, 0.17, -0.8, 0.6, -0.45, 0.3);
        return encode(f1, f2);
    };

    for (const auto& [pp, qq] : pq_options) {
        const auto plane1 = rotation_plane(R, pp * kPi / 4.0);
        const auto plane2 = rotation_plane(R, qq * kPi / 4.0);
        if (!plane1 || !plane2) continue;
        for (int flip = 0; flip < 4; ++flip) {
            Eigen::Matrix4d t;
            t.row(0) = plane1->p;
            t.row(1) = plane1->q;
            t.row(2) = plane2->p;
            t.row(3) = plane2->q;

            // Phase-rotate each plane so kappa acts as z -> target conj(z).
            const Eigen::Matrix4d kz = t * rep.matrix(G.kappa()) * t.transpose();
            for (int blk = 0; blk < 2; ++blk) {
                const Complex c(kz(2 * blk, 2 * blk), kz(2 * blk + 1, 2 * blk));
                if (std::abs(std::abs(c) - 1.0) > 1e-8) goto next_gauge;
                const Complex target = (blk == 0) ? kappa_target_1 : kappa_target_2;
                const double psi = 0.5 * std::arg(target / c);
                const Eigen::Vector4d r0 = t.row(2 * blk), r1 = t.row(2 * blk + 1);
                t.row(2 * blk) = std::cos(psi) * r0 - std::sin(psi) * r1;
                t.row(2 * blk + 1) = std::sin(psi) * r0 + std::cos(psi) * r1;
            }
            if (flip & 1) {
                t.row(0) = -t.row(0);
                t.row(1) = -t.row(1);
            }
            if (flip & 2) {
                t.row(2) = -t.row(2);
                t.row(3) = -t.row(3);
            }

            {
                // Validate the gauge on the generators.
                const auto m_of = [&](int g) -> Eigen::Matrix4d {
                    return t * rep.matrix(g) * t.transpose();
                };
                const Eigen::Matrix4d mrho = m_of(G.rho());
                const Eigen::Matrix4d mkap = m_of(G.kappa());
                bool ok = true;
                for (const auto& v : probes) {
                    const auto [z1, z2] = decode(v);
                    const Eigen::Vector4d want_rho =
                        encode(std::polar(1.0, kPi / 4.0) * z1, std::polar(1.0, 3.0 * kPi / 4.0) * z2);
                    const Eigen::Vector4d want_kap =
                        encode(kappa_target_1 * std::conj(z1), kappa_target_2 * std::conj(z2));
                    if ((apply_c(mrho, v) - want_rho).norm() > 1e-9 ||
                        (apply_c(mkap, v) - want_kap).norm() > 1e-9) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    for (int g : {G.rho(), G.sigma(), G.eps(), G.kappa()}) {
                        const Eigen::Matrix4d m = m_of(g);
                        for (const auto& v : probes) {
                            if ((rhs_of(apply_c(m, v)) - apply_c(m, rhs_of(v))).norm() > 1e-8) {
                                ok = false;
                                break;
                            }
                        }
                        if (!ok) break;
                    }
                }
                if (ok && chi == 10) {
                    // Published plane: Fix(sigma) = { z2 = i (1 + sqrt2) z1 }.
                    const Eigen::Matrix4d msig = m_of(G.sigma());
                    Eigen::Matrix4d avg = 0.5 * (Eigen::Matrix4d::Identity() + msig);
                    Eigen::JacobiSVD<Eigen::Matrix4d> svd(avg, Eigen::ComputeFullU);
                    for (int c = 0; c < 2 && ok; ++c) {
                        const auto [z1, z2] = decode(svd.matrixU().col(c));
                        if (std::abs(z2 - kI * (1.0 + std::sqrt(2.0)) * z1) > 1e-8) ok = false;
                    }
                }
                if (ok) {
                    std::vector<Eigen::Matrix4d> mats(TilingGroup::kOrder);
                    for (int g = 0; g < TilingGroup::kOrder; ++g) mats[g] = m_of(g);
                    return NormalFormAction(chi, std::move(mats));
                }
            }
        next_gauge:;
        }
    }
    throw std::runtime_error("NormalFormAction: no admissible gauge found for chi_" +
                             std::to_string(chi + 1));
}

const NormalFormAction& NormalFormAction::chi12() {
    static const NormalFormAction action = build(11);
    return action;
}

const NormalFormAction& NormalFormAction::chi11() {
    static const NormalFormAction action = build(10);
    return action;
}

Chi12Branches chi12_branches(double a, double b) {
    const NormalFormAction& act = NormalFormAction::chi12();
    const TilingGroup& G = TilingGroup::instance();

    Chi12Branches out;
    out.in_supercritical_region =
        (3.0 * a + 2.0 * kSqrt3 * b < 0.0) && (3.0 * a + 10.0 * kSqrt3 * b < 0.0);

    const auto rhs = [a, b](const Eigen::VectorXd& x, double lambda) -> Eigen::VectorXd {
        const auto [z1, z2] = NormalFormAction::decode(x);
        const auto [f1, f2] = chi12_rhs(z1, z2, lambda, a, b);
        return NormalFormAction::encode(f1, f2);
    };

    for (const std::string name : {"C2k", "C2k'", "C3k'", "D3"}) {
        const Eigen::MatrixXd e = act.fixed_subspace(G.isotropy(name).elements);
        if (e.cols() != 1)
            throw std::runtime_error("chi12_branches: axis " + name + " is not one-dimensional");
        const Eigen::Vector4d dir = e.col(0);
        const Eigen::Vector4d cubic = rhs(dir, 0.0);
        const double c = dir.dot(cubic);
        // The cubic must be colinear with the axis (flow-invariance).
        if ((cubic - c * dir).norm() > 1e-9 * (1.0 + std::abs(c)))
            throw std::runtime_error("chi12_branches: axis not invariant");
        BranchInfo info = make_branch(name, dir, c, rhs);
        if (!out.in_supercritical_region) info.stable = false;
        out.branches.push_back(std::move(info));
    }
    return out;
}

namespace {

// Restricted planar Newton search for equilibria in an invariant plane of
// the chi_11 system.  Returns in-plane coordinates of distinct nontrivial
// equilibria.
struct PlaneSearch {
    Eigen::Matrix<double, 4, 2> basis;
    std::vector<Eigen::Vector2d> solutions;
};

PlaneSearch plane_equilibria(const Eigen::MatrixXd& basis, double lambda, double A,
                             double b, double d) {
    if (basis.cols() != 2) throw std::runtime_error("plane_equilibria: plane expected");
    PlaneSearch out;
    out.basis = basis;

    const auto rhs4 = [&](const Eigen::Vector4d& v) {
        const auto [z1, z2] = NormalFormAction::decode(v);
        const auto [f1, f2] = chi11_rhs(z1, z2, lambda, A, b, d);
        return NormalFormAction::encode(f1, f2);
    };
    const auto rhs2 = [&](const Eigen::Vector2d& u) -> Eigen::Vector2d {
        const Eigen::Vector4d v = basis * u;
        const Eigen::Vector4d f = rhs4(v);
        // Invariance guard: the field must stay in the plane.
        const Eigen::Vector4d away = f - basis * (basis.transpose() * f);
        if (away.norm() > 1e-9 * (1.0 + f.norm()))
            throw std::runtime_error("plane_equilibria: plane is not flow-invariant");
        return basis.transpose() * f;
    };

    const double r0 = std::sqrt(-lambda / A / 2.0);  // amplitude scale per component
    for (int seed = 0; seed < 20; ++seed) {
        const double phi = 2.0 * kPi * seed / 20.0;
        Eigen::Vector2d u(r0 * std::cos(phi), r0 * std::sin(phi));
        bool converged = false;
        for (int it = 0; it < 60; ++it) {
            const Eigen::Vector2d f = rhs2(u);
            if (f.lpNorm<Eigen::Infinity>() < 1e-10 * std::max(1.0, std::abs(lambda))) {
                converged = f.lpNorm<Eigen::Infinity>() < 1e-10;
                break;
            }
            Eigen::Matrix2d j;
            const double h = 1e-7;
            for (int k = 0; k < 2; ++k) {
                Eigen::Vector2d up = u, um = u;
                up[k] += h;
                um[k] -= h;
                j.col(k) = (rhs2(up) - rhs2(um)) / (2.0 * h);
            }
            const Eigen::Vector2d step = j.fullPivLu().solve(f);
            u -= step;
            if (!u.allFinite() || u.norm() > 10.0 * r0 + 1.0) break;
        }
        if (!converged || u.norm() < 0.2 * r0) continue;
        bool duplicate = false;
        for (const auto& s : out.solutions)
            if ((s - u).norm() < 1e-6 * (1.0 + u.norm())) duplicate = true;
        if (!duplicate) out.solutions.push_back(u);
    }
    return out;
}

struct PlaneContext {
    Eigen::MatrixXd basis;                  // 4 x 2
    std::vector<Eigen::Vector2d> axis_dirs; // unit in-plane axis directions
    // Chart mapping (b, d) -> figure coordinates for the region labels.
    std::function<Eigen::Vector2d(double, double)> chart;
};

bool principal_solutions_exist(const PlaneContext& ctx, double b, double d) {
    const double lambda = 5e-3, A = -1.0;
    const PlaneSearch search = plane_equilibria(ctx.basis, lambda, A, b, d);
    for (const auto& u : search.solutions) {
        const Eigen::Vector2d dir = u.normalized();
        bool on_axis = false;
        for (const auto& a : ctx.axis_dirs)
            if (std::abs(std::abs(dir.dot(a)) - 1.0) < 1e-6) on_axis = true;
        if (!on_axis) return true;
    }
    return false;
}

PlaneContext make_plane_context(bool fix_sigma) {
    const TilingGroup& G = TilingGroup::instance();
    const NormalFormAction& act = NormalFormAction::chi11();
    PlaneContext ctx;
    const int elem = fix_sigma ? G.sigma() : G.compose(G.rho(), G.kappa());
    ctx.basis = act.fixed_subspace(G.subgroup_closure({elem}));
    if (ctx.basis.cols() != 2)
        throw std::runtime_error("chi11_region: fixed plane is not two-dimensional");

    // Axis directions inside the plane: the C2k and C2k' axes (or conjugate
    // copies) intersected with the plane.
    for (const std::string name : {"C2k", "C2k'"}) {
        for (int h = 0; h < TilingGroup::kOrder; ++h) {
            // Conjugate subgroup h H h^{-1}.
            std::vector<int> conj;
            for (int g : G.isotropy(name).elements) conj.push_back(G.conjugate(g, h));
            std::sort(conj.begin(), conj.end());
            conj.erase(std::unique(conj.begin(), conj.end()), conj.end());
            const Eigen::MatrixXd axis = act.fixed_subspace(conj);
            if (axis.cols() != 1) continue;
            const Eigen::Vector2d in_plane = ctx.basis.transpose() * axis.col(0);
            if (in_plane.norm() > 1.0 - 1e-8) {
                const Eigen::Vector2d dir = in_plane.normalized();
                bool known = false;
                for (const auto& a : ctx.axis_dirs)
                    if (std::abs(std::abs(dir.dot(a)) - 1.0) < 1e-8) known = true;
                if (!known) ctx.axis_dirs.push_back(dir);
            }
        }
    }
    if (ctx.axis_dirs.empty())
        throw std::runtime_error("chi11_region: no symmetry axes found in the plane");

    if (fix_sigma) {
        ctx.chart = [](double b, double d) { return Eigen::Vector2d(-b, d); };
    } else {
        ctx.chart = [](double b, double d) { return Eigen::Vector2d(-2.0 * b, b + d); };
    }
    return ctx;
}

// Boundary rays of the existence cones in chart coordinates, computed once
// by bisection over the chart angle.
std::vector<double> existence_boundaries(const PlaneContext& ctx) {
    // Invert the chart to sample (b, d) on the unit circle of the chart.
    // chart is linear: find its matrix.
    const Eigen::Vector2d cb = ctx.chart(1.0, 0.0);
    const Eigen::Vector2d cd = ctx.chart(0.0, 1.0);
    Eigen::Matrix2d chart_mat;
    chart_mat.col(0) = cb;
    chart_mat.col(1) = cd;
    const Eigen::Matrix2d inv = chart_mat.inverse();

    const auto exists_at_angle = [&](double theta) {
        const Eigen::Vector2d xy(std::cos(theta), std::sin(theta));
        const Eigen::Vector2d bd = inv * xy;
        return principal_solutions_exist(ctx, bd[0], bd[1]);
    };

    const int n = 240;
    std::vector<double> bounds;
    bool prev = exists_at_angle(0.0);
    for (int k = 1; k <= n; ++k) {
        const double theta = 2.0 * kPi * k / n;
        const bool cur = exists_at_angle(theta);
        if (cur != prev) {
            double lo = 2.0 * kPi * (k - 1) / n, hi = theta;
            for (int it = 0; it < 40; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (exists_at_angle(mid) == prev)
                    lo = mid;
                else
                    hi = mid;
            }
            bounds.push_back(0.5 * (lo + hi));
            prev = cur;
        }
    }
    if (bounds.size() != 4)
        throw std::runtime_error("chi11_region: expected four existence boundaries, found " +
                                 std::to_string(bounds.size()));
    return bounds;
}

std::string region_label(const PlaneContext& ctx, const std::vector<double>& bounds,
                         double b, double d, bool exists) {
    const Eigen::Vector2d xy = ctx.chart(b, d);
    if (xy.norm() < 1e-12) return "boundary";
    double theta = std::atan2(xy[1], xy[0]);
    if (theta < 0.0) theta += 2.0 * kPi;
    for (double bnd : bounds)
        if (std::abs(std::remainder(theta - bnd, 2.0 * kPi)) < 1e-4) return "boundary";

    // Cones are labeled I..IV counterclockwise with I the no-solution cone
    // that contains (or follows) the +x chart direction.
    int cone = 0;
    while (cone < 4 && theta > bounds[cone]) ++cone;
    cone = cone % 4;  // cone k spans (bounds[k-1], bounds[k])
    // Determine the parity of cone 0 (the cone containing angle just above
    // bounds[3], wrapping through 0): reconstruct from `exists`.
    // Cones alternate; anchor label I at the first no-solution cone at or
    // after angle 0.
    const bool cone_exists = exists;
    // Walk cones from the one containing theta back to the anchor.
    // Parity of cone index determines existence alternation.
    // Identify the anchor cone: the cone containing angle 0 is cone 0.
    // If cone 0 has no solutions, labels are I,II,III,IV for cones 0..3;
    // otherwise they are II,III,IV,I.
    const int theta_cone = cone;
    // exists flag of cone 0 deduced from alternation:
    const bool cone0_exists = (theta_cone % 2 == 0) ? cone_exists : !cone_exists;
    static const char* order_no_first[4] = {"I", "II", "III", "IV"};
    static const char* order_yes_first[4] = {"II", "III", "IV", "I"};
    return cone0_exists ? order_yes_first[theta_cone] : order_no_first[theta_cone];
}

}  // namespace

Chi11Region chi11_region(double b, double d) {
    if (b == 0.0 && d == 0.0) {
        Chi11Region out;
        out.label_sigma = "boundary";
        out.label_kappa_prime = "boundary";
        return out;
    }
    static const PlaneContext ctx_sigma = make_plane_context(true);
    static const PlaneContext ctx_kappa = make_plane_context(false);
    static const std::vector<double> bounds_sigma = existence_boundaries(ctx_sigma);
    static const std::vector<double> bounds_kappa = existence_boundaries(ctx_kappa);

    Chi11Region out;
    out.exists_fix_sigma = principal_solutions_exist(ctx_sigma, b, d);
    out.exists_fix_kappa_prime = principal_solutions_exist(ctx_kappa, b, d);
    out.label_sigma = region_label(ctx_sigma, bounds_sigma, b, d, out.exists_fix_sigma);
    out.label_kappa_prime =
        region_label(ctx_kappa, bounds_kappa, b, d, out.exists_fix_kappa_prime);
    return out;
}

}  // namespace hyp
