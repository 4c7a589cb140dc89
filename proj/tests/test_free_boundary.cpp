#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ft/front.hpp"
#include "ft/shallow_water.hpp"

using namespace ft;

namespace {

Vec2 random_subcritical(std::mt19937& rng) {
    std::uniform_real_distribution<double> dz(-0.3, 0.6);
    std::uniform_real_distribution<double> fr(-0.7, 0.7);
    const double z = dz(rng);
    const double h = 1.0 + z;
    return Vec2(z, fr(rng) * h * std::sqrt(h));
}

} // namespace

TEST_CASE("contact speed of elementary jumps") {
    System2x2 sys = sw_conservative(1.0, 1.0);
    ContactTraces tr;
    tr.u = Vec2(0.1, 0.05);
    tr.u_i = tr.u;
    tr.dxphi_u = Vec2(0.4, -0.2);
    tr.dxphi_ui = Vec2(0.1, 0.3);

    // constraint moving exactly with the fluid trace: stationary contact
    tr.dtphi_ui = -sys.A(tr.u) * tr.dxphi_u;
    CHECK(std::abs(contact_speed(sys, tr)) < 1e-13);

    // traveling-profile difference at speed c
    const double c = 0.35, a = 0.25;
    tr.dxphi_ui = tr.dxphi_u - Vec2(a, 0);
    tr.dtphi_ui = -sys.A(tr.u) * tr.dxphi_u + Vec2(a * c, 0);
    CHECK(contact_speed(sys, tr) == doctest::Approx(c).epsilon(1e-12));

    tr.dxphi_ui = tr.dxphi_u;
    CHECK_THROWS_AS(contact_speed(sys, tr), DegenerateContact);
}

TEST_CASE("front updates integrate exactly for constant speeds") {
    FrontState f;
    f.xbar = 1.0;
    FrontState still = kinematic_advance(f, 0.0, 0.0, 0.1);
    CHECK(still.xbar == 1.0);
    CHECK(still.xbar_dot == 0.0);

    const double c = 0.4;
    FrontState g = f;
    for (int k = 0; k < 100; ++k) g = kinematic_advance(g, c, c, 0.01);
    CHECK(g.xbar == doctest::Approx(1.0 + c).epsilon(1e-13));
    CHECK(g.xbar_dot == c);
}

TEST_CASE("contact update enforces the subsonicity margins") {
    System2x2 sys = sw_conservative(1.0, 1.0);
    FrontState f;
    const Vec2 rest(0, 0);
    const FrontState ok = contact_advance(sys, f, 0.1, 0.1, rest, 0.05);
    CHECK(ok.xbar == doctest::Approx(0.005));
    CHECK(ok.xbar_dot == 0.1);
    // speeds at the characteristic threshold are refused
    CHECK_THROWS_AS(contact_advance(sys, f, 1.0, 1.0, rest, 0.05), SubsonicityLoss);
    CHECK_THROWS_AS(contact_advance(sys, f, -1.0, -1.0, rest, 0.05), SubsonicityLoss);
}

TEST_CASE("second-order data at a quiescent contact") {
    System2x2 sys = sw_conservative(1.0, 1.0);
    ContactTraces tr;
    tr.u = Vec2(0, 0);
    tr.u_i = tr.u;
    tr.dxphi_u = Vec2(0.2, 0.0);
    tr.dxphi_ui = Vec2(-0.1, 0.3);
    tr.dtphi_ui = Vec2::Zero();
    tr.xbar_dot = 0.0;

    SUBCASE("flat fluid, constant constraint") {
        ContactTraces flat = tr;
        flat.dxphi_u = Vec2::Zero();
        flat.dxphi_ui = Vec2(0.3, -0.2);
        const SecondOrderData d =
            second_order_data(sys, flat, Vec2::Zero(), Vec2::Zero(), Vec2::Zero(),
                              Vec2::Zero());
        CHECK(d.u2.norm() < 1e-9);
        CHECK(std::abs(d.chi2) < 1e-9);
    }

    SUBCASE("stationary front reduces the covector to the jump perpendicular") {
        const SecondOrderData d =
            second_order_data(sys, tr, Vec2(0.1, 0.2), Vec2::Zero(), Vec2::Zero(),
                              Vec2::Zero());
        const Vec2 jump = tr.dxphi_u - tr.dxphi_ui;
        CHECK((d.nu2 - perp(jump)).norm() < 1e-12);
    }

    SUBCASE("constraint curvature enters the inhomogeneity") {
        const Vec2 dtt(0.3, -0.1);
        const SecondOrderData d =
            second_order_data(sys, tr, Vec2::Zero(), dtt, Vec2::Zero(), Vec2::Zero());
        CHECK((d.g1 - dtt).norm() < 1e-9);  // stationary front: only the tt term survives
        CHECK(d.g2 == doctest::Approx(perp(tr.dxphi_u - tr.dxphi_ui).dot(dtt)));
    }
}

TEST_CASE("contact covector identity over random traces") {
    // for traces satisfying the interface relation, the second-order covector
    // paired with the outgoing eigenvector factors through the kernel vector
    System2x2 sys = sw_conservative(1.0, 1.0);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> d(-1, 1);
    int checked = 0;
    while (checked < 1000) {
        ContactTraces tr;
        tr.u = random_subcritical(rng);
        tr.u_i = tr.u;
        tr.dxphi_u = Vec2(d(rng), d(rng));
        tr.dxphi_ui = Vec2(d(rng), d(rng));
        const Vec2 jump = tr.dxphi_u - tr.dxphi_ui;
        if (jump.norm() < 0.1) continue;
        const EigenStructure es = eigen_decompose(sys.A(tr.u));
        const double lam = std::min(es.lambda_plus, es.lambda_minus);
        tr.xbar_dot = 0.8 * lam * d(rng);
        tr.dtphi_ui = Vec2::Zero();

        const Mat2 C = tr.xbar_dot * Mat2::Identity() - sys.A(tr.u);
        const Vec2 forcing = C * jump;  // interface relation for exact solutions
        if (forcing.norm() < 1e-6) continue;
        const Vec2 mu = contact_mu(forcing);

        const SecondOrderData so = second_order_data(
            sys, tr, Vec2::Zero(), Vec2::Zero(), Vec2::Zero(), Vec2::Zero());
        const double lhs = std::abs(so.nu2.dot(es.e_plus));
        const double fac = std::pow(es.lambda_plus - tr.xbar_dot, 3) /
                           (es.lambda_plus * es.lambda_plus);
        const double rhs = fac * jump.norm() / (C.transpose() * mu).norm() *
                           std::abs(mu.dot(es.e_plus));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        ++checked;
    }
}

TEST_CASE("kernel unit vector of the contact algebra") {
    const Vec2 forcing(0.3, -0.4);
    const Vec2 mu = contact_mu(forcing);
    CHECK(std::abs(mu.norm() - 1) < 1e-14);
    CHECK(std::abs(mu.dot(forcing)) < 1e-14);
    CHECK_THROWS_AS(contact_mu(Vec2(1e-10, 0)), DegenerateContact);
}
