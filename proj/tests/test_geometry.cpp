#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hyp/geometry.hpp"

using namespace hyp;

namespace {

constexpr double kPi = 3.141592653589793238462643383279;

std::mt19937& rng() {
    static std::mt19937 gen(20240811u);
    return gen;
}

double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

DiskPoint random_point(double rmax = 0.9) {
    const double r = std::sqrt(uniform(0.0, rmax * rmax));
    const double t = uniform(0.0, 2.0 * kPi);
    return DiskPoint(r * std::cos(t), r * std::sin(t));
}

MobiusElement random_isometry(bool allow_reflect = true) {
    MobiusElement g = compose(
        compose(MobiusElement::rotation(uniform(0.0, 2.0 * kPi)),
                MobiusElement::boost(uniform(-2.5, 2.5))),
        MobiusElement::horocyclic(uniform(-1.5, 1.5)));
    if (allow_reflect && uniform(0.0, 1.0) < 0.5)
        g = compose(g, MobiusElement::conjugation());
    return g;
}

}  // namespace

TEST_CASE("distance basics") {
    const DiskPoint o(0.0, 0.0);
    CHECK(dist(o, o) == doctest::Approx(0.0).epsilon(1e-15));

    const double tau = 1.7;
    for (double phi : {0.0, 0.9, 2.5, 5.1}) {
        const DiskPoint z = from_polar({tau, phi});
        CHECK(dist(o, z) == doctest::Approx(tau).epsilon(1e-13));
    }

    for (int i = 0; i < 50; ++i) {
        const DiskPoint z = random_point(), w = random_point();
        CHECK(dist(z, w) == doctest::Approx(dist(w, z)).epsilon(1e-13));
    }
}

TEST_CASE("rotation acts as multiplication by e^{i phi}") {
    const double phi = 1.234;
    const MobiusElement r = MobiusElement::rotation(phi);
    for (int i = 0; i < 20; ++i) {
        const DiskPoint z = random_point();
        const DiskPoint w = apply(r, z);
        const Complex expect = std::polar(1.0, phi) * z.c();
        CHECK(std::abs(w.c() - expect) < 1e-14);
    }
}

TEST_CASE("group laws hold to 1e-12 on random triples") {
    for (int i = 0; i < 1000; ++i) {
        const MobiusElement g = random_isometry(), h = random_isometry(), k = random_isometry();
        CHECK(compose(g, inverse(g)).approx_equal(MobiusElement::identity(), 1e-12));
        CHECK(compose(inverse(g), g).approx_equal(MobiusElement::identity(), 1e-12));
        CHECK(compose(compose(g, h), k).approx_equal(compose(g, compose(h, k)), 1e-12));
    }
    // Action is compatible with composition.
    for (int i = 0; i < 100; ++i) {
        const MobiusElement g = random_isometry(), h = random_isometry();
        const DiskPoint z = random_point();
        const DiskPoint a = apply(compose(g, h), z);
        const DiskPoint b = apply(g, apply(h, z));
        CHECK(std::abs(a.c() - b.c()) < 1e-12);
    }
}

TEST_CASE("one-parameter subgroups") {
    const MobiusElement a1 = MobiusElement::boost(0.7), a2 = MobiusElement::boost(1.9);
    CHECK(compose(a1, a2).approx_equal(MobiusElement::boost(2.6), 1e-12));

    MobiusElement r = MobiusElement::identity();
    for (int i = 0; i < 8; ++i) r = compose(r, MobiusElement::rotation(kPi / 4.0));
    CHECK(r.approx_equal(MobiusElement::identity(), 1e-12));
}

TEST_CASE("dist is invariant under isometries") {
    for (int i = 0; i < 100; ++i) {
        const MobiusElement g = random_isometry();
        const DiskPoint z = random_point(), w = random_point();
        CHECK(dist(apply(g, z), apply(g, w)) == doctest::Approx(dist(z, w)).epsilon(1e-10));
    }
}

TEST_CASE("iwasawa factorization") {
    auto [phi0, tau0, s0] = iwasawa(MobiusElement::identity());
    CHECK(std::abs(phi0) < 1e-14);
    CHECK(std::abs(tau0) < 1e-14);
    CHECK(std::abs(s0) < 1e-14);

    auto [phi1, tau1, s1] = iwasawa(MobiusElement::boost(1.3));
    CHECK(std::abs(phi1) < 1e-14);
    CHECK(tau1 == doctest::Approx(1.3).epsilon(1e-13));
    CHECK(std::abs(s1) < 1e-13);

    for (int i = 0; i < 100; ++i) {
        const MobiusElement g = random_isometry(false);
        auto [phi, tau, s] = iwasawa(g);
        const MobiusElement re = compose(
            compose(MobiusElement::rotation(phi), MobiusElement::boost(tau)),
            MobiusElement::horocyclic(s));
        CHECK(re.approx_equal(g, 1e-10));
    }

    CHECK_THROWS_AS(iwasawa(MobiusElement::conjugation()), std::invalid_argument);
}

TEST_CASE("horocyclic inner product") {
    const DiskPoint o(0.0, 0.0);
    for (double t : {0.0, 1.0, 2.2, 4.4})
        CHECK(std::abs(horo_inner(o, BoundaryPoint(t))) < 1e-14);

    // n_s a_tau . 0 has <z, b_1> = tau.
    const double s = 0.3, tau = 1.1;
    const DiskPoint z = from_horocyclic({s, tau});
    CHECK(horo_inner(z, BoundaryPoint(0.0)) == doctest::Approx(tau).epsilon(1e-12));

    // Invariance along the N-orbit.
    for (int i = 0; i < 40; ++i) {
        const double s2 = uniform(-3.0, 3.0);
        const DiskPoint zz = apply(MobiusElement::horocyclic(s2), z);
        CHECK(horo_inner(zz, BoundaryPoint(0.0)) == doctest::Approx(tau).epsilon(1e-10));
    }

    // Rotational equivariance.
    for (int i = 0; i < 40; ++i) {
        const double theta = uniform(0.0, 2.0 * kPi);
        const double b = uniform(0.0, 2.0 * kPi);
        const DiskPoint w = random_point();
        const DiskPoint rw = apply(MobiusElement::rotation(theta), w);
        CHECK(horo_inner(rw, BoundaryPoint(b + theta)) ==
              doctest::Approx(horo_inner(w, BoundaryPoint(b))).epsilon(1e-11));
    }

    // Sign convention: tau < 0 when the origin is inside the horocycle.
    CHECK(horo_inner(DiskPoint(-0.5, 0.0), BoundaryPoint(0.0)) < 0.0);
    CHECK(horo_inner(DiskPoint(0.5, 0.0), BoundaryPoint(0.0)) > 0.0);

    CHECK_THROWS_AS(horo_inner(DiskPoint(1.0 - 1e-15, 0.0), BoundaryPoint(0.0)),
                    std::invalid_argument);
}

TEST_CASE("closed form matches the geometric horocycle construction") {
    for (int i = 0; i < 20; ++i) {
        const DiskPoint z = random_point(0.97);
        const BoundaryPoint b(uniform(0.0, 2.0 * kPi));
        CHECK(horo_inner(z, b) ==
              doctest::Approx(horo_inner_geometric(z, b)).epsilon(1e-10));
    }
}

TEST_CASE("plane waves") {
    const DiskPoint o(0.0, 0.0);
    for (int i = 0; i < 10; ++i) {
        const Complex rho(uniform(-2.0, 2.0), uniform(-1.0, 1.0));
        const BoundaryPoint b(uniform(0.0, 2.0 * kPi));
        CHECK(std::abs(plane_wave(rho, b, o) - 1.0) < 1e-14);
    }
    // |e_{rho,b}| = e^{<z,b>/2} for real rho.
    for (int i = 0; i < 20; ++i) {
        const DiskPoint z = random_point();
        const BoundaryPoint b(uniform(0.0, 2.0 * kPi));
        const double rho = uniform(-3.0, 3.0);
        CHECK(std::abs(plane_wave(rho, b, z)) ==
              doctest::Approx(std::exp(0.5 * horo_inner(z, b))).epsilon(1e-12));
    }
}

TEST_CASE("plane waves satisfy the Laplace-Beltrami eigenrelation") {
    const Complex rho(1.3, 0.0);
    const BoundaryPoint b(0.0);
    const DiskPoint z(0.2, 0.1);
    const double h = 1e-3;
    const Complex lhs = laplace_apply_complex(
        [&](const DiskPoint& w) { return plane_wave(rho, b, w); }, z, h);
    const Complex expect = -(rho * rho + 0.25) * plane_wave(rho, b, z);
    CHECK(std::abs(lhs - expect) / std::abs(expect) < 1e-4);
}

TEST_CASE("discrete laplacian: constants and convergence order") {
    const DiskPoint z(0.3, -0.2);
    CHECK(std::abs(laplace_apply([](const DiskPoint&) { return 2.5; }, z, 1e-3)) < 1e-8);

    // f = Re(z)^2 has Euclidean Laplacian 2, so the operator equals
    // (1-|z|^2)^2/2 exactly; probe the Richardson slope on a generic f.
    auto f = [](const DiskPoint& w) { return std::exp(w.re) * std::sin(1.0 + w.im); };
    auto err = [&](double h) {
        const double fine = laplace_apply(f, z, 1e-5);
        return std::abs(laplace_apply(f, z, h) - fine);
    };
    const double e1 = err(4e-2), e2 = err(2e-2);
    const double slope = std::log2(e1 / e2);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("coordinate round trips") {
    // Coordinate-side round trips: exact while tanh(tau/2) is resolvable.
    for (int i = 0; i < 200; ++i) {
        const double tau = uniform(0.0, 9.0);
        const double phi = uniform(0.0, 2.0 * kPi);
        const GeodesicPolar q = to_polar(from_polar({tau, phi}));
        CHECK(q.tau == doctest::Approx(tau).epsilon(1e-12));
        if (tau > 1e-9) CHECK(std::abs(std::remainder(q.phi - phi, 2.0 * kPi)) < 1e-12);
    }
    // Disk-side round trips hold to 1e-12 out to tau = 30, where the point
    // itself sits within ~1e-13 of the boundary.
    for (int i = 0; i < 200; ++i) {
        const double tau = uniform(0.0, 30.0);
        const double phi = uniform(0.0, 2.0 * kPi);
        const DiskPoint z = from_polar({tau, phi});
        const DiskPoint z2 = from_polar(to_polar(z));
        CHECK(std::abs(z.c() - z2.c()) < 1e-12);
    }
    for (int i = 0; i < 200; ++i) {
        const Horocyclic h{uniform(-8.0, 8.0), uniform(-8.0, 8.0)};
        const DiskPoint z = from_horocyclic(h);
        const Horocyclic g = to_horocyclic(z);
        CHECK(g.tau == doctest::Approx(h.tau).epsilon(1e-10));
        CHECK(g.s == doctest::Approx(h.s).epsilon(1e-10));
    }
    // Far range: the disk-side round trip stays tight.
    for (int i = 0; i < 100; ++i) {
        const Horocyclic h{uniform(-15.0, 15.0), uniform(-15.0, 15.0)};
        DiskPoint z(0.0, 0.0);
        try {
            z = from_horocyclic(h);
        } catch (const std::invalid_argument&) {
            continue;  // parameter corner mapping onto the boundary at double precision
        }
        if (z.abs2() > (1.0 - 1e-13)) continue;
        const DiskPoint z2 = from_horocyclic(to_horocyclic(z));
        CHECK(std::abs(z.c() - z2.c()) < 1e-10);
    }
}

TEST_CASE("geodesic midpoint bisects") {
    for (int i = 0; i < 50; ++i) {
        const DiskPoint z = random_point(), w = random_point();
        const DiskPoint m = midpoint(z, w);
        const double d = dist(z, w);
        CHECK(dist(z, m) == doctest::Approx(0.5 * d).epsilon(1e-11));
        CHECK(dist(m, w) == doctest::Approx(0.5 * d).epsilon(1e-11));
    }
}
