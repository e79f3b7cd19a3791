#include "hyp/geometry.hpp"

#include <cmath>

namespace hyp {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

DiskPoint::DiskPoint(double re_, double im_) : re(re_), im(im_) {
    if (re * re + im * im >= 1.0)
        throw std::invalid_argument("DiskPoint: |z| must be < 1");
}

BoundaryPoint::BoundaryPoint(double theta) {
    angle = std::fmod(theta, kTwoPi);
    if (angle < 0.0) angle += kTwoPi;
}

MobiusElement MobiusElement::rotation(double phi) {
    return {std::polar(1.0, 0.5 * phi), {0.0, 0.0}, false};
}

MobiusElement MobiusElement::boost(double tau) {
    return {{std::cosh(0.5 * tau), 0.0}, {std::sinh(0.5 * tau), 0.0}, false};
}

MobiusElement MobiusElement::boost(double tau, double direction) {
    // r_dir a_tau r_{-dir} has alpha = cosh(tau/2), beta = e^{i dir} sinh(tau/2)
    return {{std::cosh(0.5 * tau), 0.0}, std::polar(std::sinh(0.5 * tau), direction), false};
}

MobiusElement MobiusElement::horocyclic(double s) {
    return {{1.0, s}, {0.0, -s}, false};
}

MobiusElement MobiusElement::conjugation() { return {{1.0, 0.0}, {0.0, 0.0}, true}; }

double MobiusElement::unit_defect() const {
    return std::abs(std::norm(alpha) - std::norm(beta) - 1.0);
}

void MobiusElement::renormalize() {
    const double n = std::norm(alpha) - std::norm(beta);
    if (n <= 0.0) throw std::runtime_error("MobiusElement: degenerate element");
    const double scale = 1.0 / std::sqrt(n);
    alpha *= scale;
    beta *= scale;
}

bool MobiusElement::approx_equal(const MobiusElement& other, double tol) const {
    if (reflect != other.reflect) return false;
    const double plus = std::abs(alpha - other.alpha) + std::abs(beta - other.beta);
    const double minus = std::abs(alpha + other.alpha) + std::abs(beta + other.beta);
    // Unit-norm renormalization conditions the coefficients like |alpha|^2.
    const double s = 1.0 + std::abs(alpha) + std::abs(beta);
    return std::min(plus, minus) < tol * s * s;
}

double dist(const DiskPoint& z, const DiskPoint& w) {
    const Complex num = z.c() - w.c();
    const Complex den = 1.0 - z.c() * std::conj(w.c());
    return 2.0 * std::atanh(std::abs(num) / std::abs(den));
}

DiskPoint apply(const MobiusElement& g, const DiskPoint& z) {
    Complex w = g.reflect ? std::conj(z.c()) : z.c();
    const Complex r = (g.alpha * w + g.beta) / (std::conj(g.beta) * w + std::conj(g.alpha));
    // Guard roundoff for points mapped very close to the boundary.
    const double a = std::abs(r);
    if (a >= 1.0) {
        const double safe = (1.0 - 1e-16) / a;
        return DiskPoint(r.real() * safe, r.imag() * safe);
    }
    return DiskPoint(r);
}

MobiusElement compose(const MobiusElement& g, const MobiusElement& h) {
    // g o h: conjugate h's coefficients when g carries the reflection.
    Complex a2 = h.alpha, b2 = h.beta;
    if (g.reflect) {
        a2 = std::conj(a2);
        b2 = std::conj(b2);
    }
    MobiusElement out;
    out.alpha = g.alpha * a2 + g.beta * std::conj(b2);
    out.beta = g.alpha * b2 + g.beta * std::conj(a2);
    out.reflect = g.reflect != h.reflect;
    out.renormalize();
    return out;
}

MobiusElement inverse(const MobiusElement& g) {
    MobiusElement out;
    out.alpha = std::conj(g.alpha);
    out.beta = -g.beta;
    if (g.reflect) {
        out.alpha = std::conj(out.alpha);
        out.beta = std::conj(out.beta);
    }
    out.reflect = g.reflect;
    return out;
}

std::tuple<double, double, double> iwasawa(const MobiusElement& g) {
    if (g.reflect)
        throw std::invalid_argument("iwasawa: defined on SU(1,1) only (reflect unset)");
    // alpha + beta = e^{i phi/2} e^{tau/2}, then s from the imaginary part.
    const Complex ab = g.alpha + g.beta;
    const double phi = 2.0 * std::arg(ab);
    const double tau = 2.0 * std::log(std::abs(ab));
    const double s = std::imag(g.alpha * std::polar(1.0, -0.5 * phi)) / std::abs(ab);
    return {phi, tau, s};
}

GeodesicPolar to_polar(const DiskPoint& z) {
    const double r = std::sqrt(z.abs2());
    GeodesicPolar p;
    p.tau = 2.0 * std::atanh(r);
    p.phi = (r == 0.0) ? 0.0 : std::atan2(z.im, z.re);
    return p;
}

DiskPoint from_polar(const GeodesicPolar& p) {
    const double r = std::tanh(0.5 * p.tau);
    return DiskPoint(r * std::cos(p.phi), r * std::sin(p.phi));
}

Horocyclic to_horocyclic(const DiskPoint& z) {
    Horocyclic h;
    h.tau = horo_inner(z, BoundaryPoint(0.0));
    // Invert z = n_s . w with w = tanh(tau/2): is = (z - w) / ((w - 1)(1 - z)).
    const double w = std::tanh(0.5 * h.tau);
    const Complex is = (z.c() - w) / ((w - 1.0) * (1.0 - z.c()));
    h.s = is.imag();
    return h;
}

DiskPoint from_horocyclic(const Horocyclic& h) {
    return apply(compose(MobiusElement::horocyclic(h.s), MobiusElement::boost(h.tau)),
                 DiskPoint(0.0, 0.0));
}

double horo_inner(const DiskPoint& z, const BoundaryPoint& b) {
    const double r2 = z.abs2();
    if (r2 > (1.0 - kBoundaryMargin) * (1.0 - kBoundaryMargin))
        throw std::invalid_argument("horo_inner: near-boundary point");
    const double d2 = std::norm(z.c() - b.c());
    if (d2 == 0.0) throw std::invalid_argument("horo_inner: z coincides with b");
    return std::log((1.0 - r2) / d2);
}

double horo_inner_geometric(const DiskPoint& z, const BoundaryPoint& b) {
    // Euclidean radius of the horocycle through z tangent at b, then the
    // diametrically opposite point xi = b (1 - 2 rE) on the diameter Ob.
    const Complex bc = b.c();
    const double rE = std::norm(z.c() - bc) / (2.0 * (1.0 - std::real(z.c() * std::conj(bc))));
    const double x = 1.0 - 2.0 * rE;  // signed coordinate of xi along b
    return 2.0 * std::atanh(x);
}

Complex plane_wave(Complex rho, const BoundaryPoint& b, const DiskPoint& z) {
    const double t = horo_inner(z, b);
    return std::exp((Complex(0.0, 1.0) * rho + 0.5) * t);
}

DiskPoint midpoint(const DiskPoint& z, const DiskPoint& w) {
    // Translate z to the origin, halve the geodesic parameter, translate back.
    const Complex wp = (w.c() - z.c()) / (1.0 - std::conj(z.c()) * w.c());
    const double r = std::abs(wp);
    if (r == 0.0) return z;
    const Complex mp = wp / r * std::tanh(0.5 * std::atanh(r));
    const Complex m = (mp + z.c()) / (1.0 + std::conj(z.c()) * mp);
    return DiskPoint(m);
}

}  // namespace hyp
