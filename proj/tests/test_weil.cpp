#include "doctest.h"
#include "ecr/weil.hpp"

#include <random>

using namespace ecr;

namespace {

Mat2 random_y(std::mt19937_64& rng, long p) {
    std::uniform_int_distribution<int> pick(0, 6);
    std::uniform_int_distribution<long> num(1, 4 * p);
    Mat2 y;
    for (auto& v : y.e) {
        switch (pick(rng)) {
            case 0: v = 0; break;
            case 1: v = num(rng); break;
            case 2: v = rat(num(rng), p); break;
            case 3: v = rat(num(rng), p * p); break;
            case 4: v = p * num(rng); break;
            case 5: v = rat(1, p) + 1; break;
            default: v = 1; break;
        }
    }
    return y;
}

Mat2 random_gl2_zp(std::mt19937_64& rng, long p) {
    std::uniform_int_distribution<long> num(-6, 6);
    for (;;) {
        Mat2 u(num(rng), num(rng), num(rng), num(rng));
        if (u.det() != 0 && val_p(u.det(), p) == 0) return u;
    }
}

}  // namespace

TEST_CASE("Weil action spot values") {
    const long p = 3;
    CosetRep id = make_rep_split_H(0, Mat2::identity(), 0, 0, p, "1");
    SplitPoint one{Mat2::identity(), Mat2::identity()};
    CHECK(cyclo_assert_rational(weil_eval_H(id, one, p)) == 1);

    CosetRep d = make_rep_split_H(0, Mat2::identity(), 1, 0, p, "d(p,1)");
    CHECK(cyclo_assert_rational(weil_eval_H(d, one, p)) == rat(1, 9));

    // ramified n_H(1) at a point with tr(conj(x) y) = 1/p
    const long eps = smallest_nonresidue(p);
    RamifiedQuaternion x = RamifiedQuaternion::scalar(p, eps, 1);
    RamifiedQuaternion y = RamifiedQuaternion::scalar(p, eps, rat(1, 2 * p));
    CHECK((x.conj() * y).trace() == rat(1, p));
    // phi0 vanishes there (tr of P^{-1} lies in Z_p), so follow with d_H(Pi) to land in the support
    std::vector<HLetter> w{{HLetter::N, 1, {}, {}}};
    CHECK(weil_eval_H_word(w, RamifiedPoint{x, y}).is_zero());
    w.push_back({HLetter::D, 0, {}, RamifiedQuaternion::Pi(p, eps)});
    CycloNumber v = weil_eval_H_word(w, RamifiedPoint{x, y});
    CycloNumber zp(p, 1);
    zp.add_root(1, rat(1, p * p));
    CHECK(v == zp);
    CHECK(v == psi_value(rat(-1, p), p) * rat(1, p * p));

    CosetRep gid = make_rep_split_G(Mat2(), Mat2::identity(), 0, 0, p, "1");
    CHECK(cyclo_assert_rational(weil_eval_G(gid, one, p)) == 1);
    // d_G(diag(1/p, 1)) scales the first column of x by 1/p
    GroupElement g = d_G(Mat2::diag(rat(1, p), 1), p);
    CHECK(cyclo_assert_rational(weil_eval_G(g, one)) == 0);
    SplitPoint px{Mat2::diag(p, 1), Mat2::diag(1, p)};
    CHECK(cyclo_assert_rational(weil_eval_G(g, px)) == 1);
}

TEST_CASE("J spot values by brute force") {
    const long p = 3;
    Mat2 zero;
    CHECK(j_brute_unramified(Side::G, 1, 1, 1, zero, p).value == 120);
    CHECK(j_brute_unramified(Side::H, 2, 1, 1, zero, p).value == rat(856, 9));
    CHECK(j_brute_unramified(Side::H, 1, 1, 1, zero, p).value == rat(112, 3));
    CHECK(j_brute_unramified(Side::G, 2, 1, 1, zero, p).value == 1080);
    std::mt19937_64 rng(11);
    for (int it = 0; it < 5; ++it) {
        Mat2 y = random_y(rng, p);
        CHECK(j_brute_unramified(Side::H, 1, -1, -1, y, p).value == 0);
        CHECK(j_brute_unramified(Side::G, 1, -1, -1, y, p).value == 0);
    }

    const long eps = smallest_nonresidue(p);
    auto Pi = RamifiedQuaternion::Pi(p, eps);
    auto one = RamifiedQuaternion::scalar(p, eps, 1);
    CHECK(j_brute_ramified(Side::H, Pi, one).value == rat(28, 3));
    CHECK(j_brute_ramified(Side::G, Pi, one).value == 30);
    auto xm2 = RamifiedQuaternion::scalar(p, eps, rat(1, p));  // ord -2
    CHECK(j_brute_ramified(Side::H, xm2, one).value == 0);
    CHECK(j_brute_ramified(Side::G, xm2, one).value == 0);
    CHECK_THROWS_AS(j_brute_ramified(Side::H, RamifiedQuaternion::scalar(2, 1, 1), one), UnsupportedPrime);
}

TEST_CASE("compiled engine matches the direct coset sum") {
    std::mt19937_64 rng(5);
    for (long p : {2L, 3L}) {
        UnramifiedJEngine eng(p);
        for (auto [a, b] : {std::pair{1, 0}, std::pair{0, -1}, std::pair{2, 1}, std::pair{1, 1}, std::pair{0, 0}}) {
            std::vector<Mat2> ys;
            for (int it = 0; it < 6; ++it) ys.push_back(random_y(rng, p));
            Mat2 x = Mat2::diag(p_power(p, a), p_power(p, b));
            auto fast = eng.evaluate(x, ys);
            for (std::size_t k = 0; k < ys.size(); ++k) {
                SplitPoint pt{x, ys[k]};
                CHECK(fast[k][0] == j_brute(eng.table(TableLabel::T1H), pt).value);
                CHECK(fast[k][1] == j_brute(eng.table(TableLabel::T2H), pt).value);
                CHECK(fast[k][2] == j_brute(eng.table(TableLabel::T1G), pt).value);
                if (p == 2) CHECK(fast[k][3] == j_brute(eng.table(TableLabel::T2G), pt).value);
            }
        }
    }
}

TEST_CASE("J is unchanged when representatives are moved inside their coset") {
    const long p = 3;
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> num(-5, 5);
    CosetTable t1h = coset_table(TableLabel::T1H, p);
    CosetTable t1g = coset_table(TableLabel::T1G, p);
    for (int it = 0; it < 4; ++it) {
        SplitPoint pt = diag_point(p, 1, 0, random_y(rng, p));
        Mat2 A = random_gl2_zp(rng, p);
        ExactRational b = num(rng);
        CycloNumber sh = CycloNumber::rational(p, 0);
        for (const auto& rep : t1h.reps) {
            auto w = h_word(rep);
            w.push_back({HLetter::D, 0, A, {}});
            w.push_back({HLetter::N, b, {}, {}});
            sh += weil_eval_H_word(w, pt, p);
        }
        CHECK(cyclo_assert_rational(sh) == j_brute(t1h, pt).value);

        GroupElement k = n_G(num(rng), num(rng), num(rng), p) * d_G(random_gl2_zp(rng, p), p);
        REQUIRE(membership(k, MemberSet::K));
        ExactRational sg = 0;
        for (const auto& rep : t1g.reps) sg += cyclo_assert_rational(weil_eval_G(rep.g * k, pt));
        CHECK(sg == j_brute(t1g, pt).value);
    }
}

TEST_CASE("reduction to diagonal x") {
    const long p = 3;
    std::mt19937_64 rng(21);
    UnramifiedJEngine eng(p);
    for (int it = 0; it < 6; ++it) {
        Mat2 u1 = random_gl2_zp(rng, p), u2 = random_gl2_zp(rng, p);
        Mat2 x = Mat2::diag(p, 1);
        Mat2 y = random_y(rng, p);
        auto lhs = eng.evaluate(u1 * x * u2, {y});
        auto rhs = eng.evaluate(x, {u1.inverse() * y * u2.transpose()});
        CHECK(lhs[0] == rhs[0]);
    }
}

TEST_CASE("partial Fourier transform of the lattice function") {
    for (long p : {2L, 3L}) {
        std::vector<SplitPoint> samples{
            {Mat2::identity(), Mat2::identity()},
            {Mat2::identity(), Mat2(rat(1, p), 0, 0, 1)},
            {Mat2::identity(), Mat2(0, 2, rat(1, p * p), 1)},
            {Mat2(rat(1, p), 0, 0, 1), Mat2()},
            {Mat2(), Mat2(p, 1, 3, 5)},
        };
        FourierCheck fc = fourier_lattice_check(p, samples, 2);
        CHECK(fc.ok);
        CHECK(fc.points == samples.size());
        CHECK(fourier_lattice_value(Mat2(), p, 1) == 1);
        CHECK(fourier_lattice_value(Mat2(rat(1, p), 0, 0, 0), p, 2) == 0);
    }
}
