#pragma once

#include <complex>
#include <stdexcept>
#include <tuple>

// Poincare-disk primitives: points, isometries of U(1,1), the Iwasawa
// factorization, geodesic polar and horocyclic coordinates, hyperbolic
// plane waves and a stencil form of the Laplace-Beltrami operator.

namespace hyp {

using Complex = std::complex<double>;

constexpr double kBoundaryMargin = 1e-14;  // |z| above 1 - margin is rejected

// A point strictly inside the unit disk.
struct DiskPoint {
    double re = 0.0;
    double im = 0.0;

    DiskPoint() = default;
    DiskPoint(double re_, double im_);
    explicit DiskPoint(Complex z) : DiskPoint(z.real(), z.imag()) {}

    Complex c() const { return {re, im}; }
    double abs2() const { return re * re + im * im; }
};

// A point b = e^{i angle} of the boundary circle.
struct BoundaryPoint {
    double angle = 0.0;  // radians, normalized to [0, 2pi)

    BoundaryPoint() = default;
    explicit BoundaryPoint(double theta);

    Complex c() const { return {std::cos(angle), std::sin(angle)}; }
};

// Isometry of the disk: z -> (alpha z + beta) / (conj(beta) z + conj(alpha)),
// applied after z -> conj(z) when reflect is set.  |alpha|^2 - |beta|^2 = 1.
struct MobiusElement {
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};
    bool reflect = false;

    static MobiusElement identity() { return {}; }
    static MobiusElement rotation(double phi);       // r_phi : z -> e^{i phi} z
    static MobiusElement boost(double tau);          // a_tau along the real axis
    static MobiusElement boost(double tau, double direction);
    static MobiusElement horocyclic(double s);       // n_s, base point b = 1
    static MobiusElement conjugation();              // kappa : z -> conj(z)

    double unit_defect() const;   // | |alpha|^2 - |beta|^2 - 1 |
    void renormalize();           // rescale so |alpha|^2 - |beta|^2 = 1

    // Equality as isometries: (alpha, beta) and (-alpha, -beta) coincide.
    bool approx_equal(const MobiusElement& other, double tol = 1e-9) const;
};

// Geodesic polar coordinates: z = tanh(tau/2) e^{i phi}, tau = dist(z, 0).
struct GeodesicPolar {
    double tau = 0.0;
    double phi = 0.0;
};

// Horocyclic coordinates with base point b = 1: z = n_s a_tau . 0.
struct Horocyclic {
    double s = 0.0;
    double tau = 0.0;
};

double dist(const DiskPoint& z, const DiskPoint& w);

DiskPoint apply(const MobiusElement& g, const DiskPoint& z);
MobiusElement compose(const MobiusElement& g, const MobiusElement& h);
MobiusElement inverse(const MobiusElement& g);

// Factorization g = r_phi a_tau n_s of an orientation-preserving element.
// Throws std::invalid_argument when reflect is set.
std::tuple<double, double, double> iwasawa(const MobiusElement& g);

GeodesicPolar to_polar(const DiskPoint& z);
DiskPoint from_polar(const GeodesicPolar& p);
Horocyclic to_horocyclic(const DiskPoint& z);
DiskPoint from_horocyclic(const Horocyclic& h);

// Signed distance <z, b> from the origin to the horocycle through z based
// at b: negative when the origin lies inside the horocycle.  Closed form
// ln((1 - |z|^2) / |z - b|^2).  Throws for z within kBoundaryMargin of the
// boundary.
double horo_inner(const DiskPoint& z, const BoundaryPoint& b);

// Same quantity from the geometric construction: intersect the horocycle
// with the diameter through b and measure the signed hyperbolic length.
// Used as an independent check of horo_inner.
double horo_inner_geometric(const DiskPoint& z, const BoundaryPoint& b);

// e_{rho,b}(z) = exp((i rho + 1/2) <z, b>)
Complex plane_wave(Complex rho, const BoundaryPoint& b, const DiskPoint& z);

// (1-|z|^2)^2/4 times the Euclidean 5-point Laplacian of f at z with
// spacing h; f is sampled by the caller at {z, z+h, z-h, z+ih, z-ih}.
// Throws when the stencil leaves the disk.
template <typename F>
double laplace_apply(F&& f, const DiskPoint& z, double h) {
    const double r2 = (z.re + h) * (z.re + h) + z.im * z.im;
    const double r2b = (z.re - h) * (z.re - h) + z.im * z.im;
    const double r2c = z.re * z.re + (z.im + h) * (z.im + h);
    const double r2d = z.re * z.re + (z.im - h) * (z.im - h);
    if (r2 >= 1.0 || r2b >= 1.0 || r2c >= 1.0 || r2d >= 1.0)
        throw std::invalid_argument("laplace_apply: stencil exits the disk");
    const double lap = (f(DiskPoint(z.re + h, z.im)) + f(DiskPoint(z.re - h, z.im)) +
                        f(DiskPoint(z.re, z.im + h)) + f(DiskPoint(z.re, z.im - h)) -
                        4.0 * f(z)) /
                       (h * h);
    const double conf = 1.0 - z.abs2();
    return 0.25 * conf * conf * lap;
}

// Complex-valued variant (used to probe the plane-wave eigenrelation).
template <typename F>
Complex laplace_apply_complex(F&& f, const DiskPoint& z, double h) {
    const auto re = laplace_apply([&](const DiskPoint& w) { return f(w).real(); }, z, h);
    const auto im = laplace_apply([&](const DiskPoint& w) { return f(w).imag(); }, z, h);
    return {re, im};
}

// Hyperbolic midpoint of the geodesic segment [z, w].
DiskPoint midpoint(const DiskPoint& z, const DiskPoint& w);

}  // namespace hyp
