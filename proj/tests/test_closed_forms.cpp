#include "doctest.h"
#include "ecr/closed_forms.hpp"

using namespace ecr;

TEST_CASE("bracket evaluation") {
    const long p = 3;
    BracketTerm t;
    CHECK(bracket_eval(t, Mat2::identity(), p) == 1);
    t.idx = {1, 1, 1, 1};
    CHECK(bracket_eval(t, Mat2::identity(), p) == 0);
    t.idx = {0, 0, -1, -1};
    CHECK(bracket_eval(t, Mat2(1, 3, rat(1, 3), rat(1, 3)), p) == 1);
    t.guards = {{Guard::Det, 0}};
    CHECK(bracket_eval(t, Mat2(1, 3, rat(1, 3), rat(1, 3)), p) == 0);  // det = -2/3
    t.coeff = 5;
    CHECK(bracket_eval(t, Mat2(1, 0, rat(1, 3), 3), p) == 5);
}

TEST_CASE("closed forms at the documented points") {
    const long p = 3;
    Mat2 zero;
    CHECK(j_closed_unramified(Side::G, 1, 1, 1, zero, p) == 120);
    CHECK(j_closed_unramified(Side::H, 2, 1, 1, zero, p) == rat(856, 9));
    CHECK(j_closed_unramified(Side::H, 1, 1, 1, zero, p) == rat(112, 3));
    CHECK(j_closed_unramified(Side::G, 2, 1, 1, zero, p) == 1080);
    CHECK(j_closed_unramified(Side::G, 2, 1, 1, zero, p, Transcription::Literal) == 1081);
    // alpha = 0, beta = -1, y2 = p, y3 = 1
    CHECK(j_closed_unramified(Side::H, 1, 0, -1, Mat2(2, p, 1, 5), p) == rat(1, 3));
    CHECK(j_closed_unramified(Side::G, 2, -1, -1, Mat2(rat(1, 3), rat(1, 3), rat(1, 3), rat(1, 3)), p) == 1);
    CHECK(j_closed_unramified(Side::G, 2, 2, -2, zero, p) == 0);
    CHECK_THROWS_AS(j_case(0, 1), std::invalid_argument);
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= a; ++b) {
            int c = j_case(a, b);
            CHECK(c >= 1);
            CHECK(c <= 7);
        }
}

TEST_CASE("ramified closed forms") {
    for (long p : {3L, 5L}) {
        const long eps = smallest_nonresidue(p);
        auto Pi = RamifiedQuaternion::Pi(p, eps);
        auto one = RamifiedQuaternion::scalar(p, eps, 1);
        CHECK(j_closed_ramified(Side::H, Pi, one) == ExactRational(p * p) + rat(1, p));
        CHECK(j_closed_ramified(Side::G, Pi, one) == p * p * p + p);
        // ord(x) = -1 with tr(conj(x) y) not integral
        RamifiedQuaternion x = Pi.inverse();
        RamifiedQuaternion y = RamifiedQuaternion(p, eps, 0, 0, rat(1, 2 * p), 0);
        CHECK((x.conj() * y).trace() == rat(-1, p));
        CHECK(j_closed_ramified(Side::H, x, y) == 0);
        CHECK(j_closed_ramified(Side::G, x, y) == 0);
        CHECK(j_brute_ramified(Side::G, x, y).value == 0);
        // ord(x) = 0, y = Pi: sigma(pi y) = sigma(Pi y) = 1 and tr(conj(x) Pi) = 0
        CHECK(j_closed_ramified(Side::G, one, Pi) == p);
        CHECK(j_brute_ramified(Side::G, one, Pi).value == p);
        CHECK_THROWS_AS(j_closed_ramified(Side::H, RamifiedQuaternion::scalar(2, 3, 1), one), UnsupportedPrime);
    }
}

TEST_CASE("helper identities") {
    for (long p : {2L, 3L, 5L}) {
        for (const auto& c : helper_identity_suite(p)) {
            INFO(p << " " << c.name << " " << c.first_failure);
            CHECK(c.ok);
            CHECK(c.cases > 0);
        }
    }
    for (long p : {3L, 5L}) {
        for (const auto& c : ramified_residue_suite(p)) {
            INFO(p << " " << c.name << " " << c.first_failure);
            CHECK(c.ok);
        }
    }
}

TEST_CASE("grids") {
    auto g = unramified_grid(3, 20, 1);
    CHECK(g.size() == 15 * 20);
    auto g2 = unramified_grid(3, 20, 1);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i].y == g2[i].y);
    CHECK(grid_unit(2) % 4 != 1);
    CHECK(grid_unit(5) % 5 != 1);
    auto r = ramified_grid(3, 5, 2);
    CHECK(r.size() == 30);
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i].x.ord() == static_cast<long>(i / 5) - 3);
}

TEST_CASE("commutation relations, brute and closed") {
    for (long p : {2L, 3L}) {
        EcrReport r = ecr_check_unramified(p, unramified_grid(p, 30, 99));
        CHECK(r.points == 450);
        for (const auto& c : r.brute_vs_closed) {
            INFO(c.name << " " << c.first_failure);
            CHECK(c.ok);
        }
        for (int i = 0; i < 2; ++i) {
            CHECK(r.relation_brute[i].ok);
            CHECK(r.relation_closed[i].ok);
        }
        CHECK(r.ok());
        // the only disagreement with the printed displays
        REQUIRE(r.literal_cases.size() == 1);
        CHECK(r.literal_cases[0] == "J2G case 7");
    }
    for (long p : {3L, 5L}) {
        EcrRamifiedReport r = ecr_check_ramified(p, ramified_grid(p, 8, 4));
        CHECK(r.ok());
        CHECK(r.points == 48);
    }
}

// G-side values count cosets, so they lie in [0, #table]. H-side values carry
// |det A|^2 weights and roots of unity; J_2^H does go negative.
TEST_CASE("closed values are bounded by the weighted coset count") {
    const long p = 3;
    const TableLabel labels[4] = {TableLabel::T1H, TableLabel::T2H, TableLabel::T1G, TableLabel::T2G};
    const Side sides[4] = {Side::H, Side::H, Side::G, Side::G};
    const int idx[4] = {1, 2, 1, 2};
    ExactRational bound[4];
    for (int k = 0; k < 4; ++k) {
        bound[k] = 0;
        for (const auto& rep : coset_table(labels[k], p).reps)
            bound[k] += sides[k] == Side::H ? p_power(p, -2 * val_p(rep.A.det(), p)) : ExactRational(1);
    }
    bool saw_negative = false;
    for (const auto& g : unramified_grid(p, 30, 5)) {
        for (int k = 0; k < 4; ++k) {
            ExactRational v = j_closed_unramified(sides[k], idx[k], g.alpha, g.beta, g.y, p);
            if (sides[k] == Side::G) CHECK(v >= 0);
            if (v < 0) saw_negative = true;
            if (g.alpha >= 0 && g.beta >= 0 && g.y.integral(p)) {
                CHECK(v <= bound[k]);
                CHECK(-v <= bound[k]);
            }
        }
    }
    CHECK(saw_negative);
    // alpha = beta = 0, y2 - y3 a unit: p^{-2}[-1,-1,-1,-1] - [0,0,0,0]
    CHECK(j_closed_unramified(Side::H, 2, 0, 0, Mat2(0, 1, 0, 0), p) == rat(1, 9) - 1);
    CHECK(j_brute_unramified(Side::H, 2, 0, 0, Mat2(0, 1, 0, 0), p).value == rat(1, 9) - 1);
}
