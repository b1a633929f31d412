#include "doctest.h"
#include "ecr/quat.hpp"

#include <random>

using namespace ecr;

namespace {

RamifiedQuaternion random_quat(std::mt19937_64& rng, long p, long eps) {
    std::uniform_int_distribution<long> num(-30, 30);
    std::uniform_int_distribution<int> ex(-2, 2);
    auto c = [&]() -> ExactRational { return ExactRational(num(rng)) * p_power(p, ex(rng)); };
    return {p, eps, c(), c(), c(), c()};
}

}  // namespace

TEST_CASE("split model") {
    Mat2 x(1, 2, 3, 4);
    auto [n, t] = quat_norm_trace(x);
    CHECK(n == -2);
    CHECK(t == 5);
    Mat2 y(rat(1, 2), -1, 7, rat(3, 5));
    CHECK(x.conj().conj() == x);
    CHECK((x * y).conj() == y.conj() * x.conj());
    CHECK(x + x.conj() == x.trace() * Mat2::identity());
    CHECK(x * x.conj() == x.det() * Mat2::identity());
    CHECK(J2().inverse() * x.transpose() * J2() == x.conj());
}

TEST_CASE("ramified model basics") {
    for (long p : {3L, 5L, 7L}) {
        long eps = smallest_nonresidue(p);
        auto Pi = RamifiedQuaternion::Pi(p, eps);
        auto u = RamifiedQuaternion::u(p, eps);
        CHECK(Pi * Pi == RamifiedQuaternion::scalar(p, eps, p));
        CHECK(u * u == RamifiedQuaternion::scalar(p, eps, eps));
        CHECK(Pi * u == -(u * Pi));
        CHECK(val_p(Pi.norm(), p) == 1);
        CHECK(Pi.norm() == -p);
        CHECK(u.trace() == 0);
        CHECK(RamifiedQuaternion::scalar(p, eps, 1).trace() == 2);
        CHECK(ord_pi(Pi) == 1);
        CHECK(ord_pi(RamifiedQuaternion::scalar(p, eps, p)) == 2);
        CHECK(ord_pi(RamifiedQuaternion::scalar(p, eps, 0)) == kInfiniteValuation);
        // Pi O Pi^{-1} = O on generators
        for (const auto& g : {u, Pi, u * Pi, RamifiedQuaternion::scalar(p, eps, 1)})
            CHECK((Pi * g * Pi.inverse()).integral());
    }
    CHECK_THROWS_AS(RamifiedQuaternion(2, 1, 0, 0, 0, 0), UnsupportedPrime);
}

TEST_CASE("ramified model: multiplicativity, anti-involution, ord") {
    std::mt19937_64 rng(11);
    for (long p : {3L, 5L}) {
        long eps = smallest_nonresidue(p);
        for (int it = 0; it < 200; ++it) {
            auto x = random_quat(rng, p, eps), y = random_quat(rng, p, eps);
            CHECK((x * y).norm() == x.norm() * y.norm());
            CHECK((x * y).conj() == y.conj() * x.conj());
            CHECK(x.conj().conj() == x);
            CHECK(x + x.conj() == RamifiedQuaternion::scalar(p, eps, x.trace()));
            CHECK(x * x.conj() == RamifiedQuaternion::scalar(p, eps, x.norm()));
            if (!x.is_zero() && !y.is_zero()) {
                CHECK(ord_pi(x * y) == ord_pi(x) + ord_pi(y));
                CHECK(ord_pi(ExactRational(p) * x) == ord_pi(x) + 2);
                CHECK(ord_pi(x) == val_p(x.norm(), p));
                CHECK(x.integral() == (ord_pi(x) >= 0));
            }
        }
    }
}

TEST_CASE("quotient cardinalities") {
    for (long p : {3L, 5L}) {
        const long p2 = p * p, p3 = p2 * p;
        CHECK(enumerate_quotient(QuotientKind::OmodPiO, p).size() == static_cast<std::size_t>(p2 * p2));
        CHECK(enumerate_quotient(QuotientKind::OmodPO, p).size() == static_cast<std::size_t>(p2));
        CHECK(enumerate_quotient(QuotientKind::OminusModPiOminus, p).size() == static_cast<std::size_t>(p3));
        CHECK(enumerate_quotient(QuotientKind::OminusModPOminus, p).size() == static_cast<std::size_t>(p));
        CHECK(enumerate_quotient(QuotientKind::POminusModPiOminus, p).size() == static_cast<std::size_t>(p2));
        for (int n = -4; n <= 3; ++n) {
            CHECK(enumerate_quotient(QuotientKind::XnModPiXn, p, n).size() == static_cast<std::size_t>(p3));
            CHECK(enumerate_quotient(QuotientKind::XnModXm, p, n, n + 1).size() ==
                  static_cast<std::size_t>(n % 2 == 0 ? p : p2));
            for (const auto& b : enumerate_quotient(QuotientKind::XnModXm, p, n, n + 1)) CHECK(in_X(b, n));
        }
        CHECK(enumerate_quotient(QuotientKind::XnZeroModXm, p, -2, -1).size() == static_cast<std::size_t>(p - 1));
        for (const auto& b : enumerate_quotient(QuotientKind::XnZeroModXm, p, -2, -1)) CHECK(ord_pi(b) == -2);
    }
    CHECK_THROWS_AS(enumerate_quotient(QuotientKind::OmodPiO, 2), UnsupportedPrime);
}

TEST_CASE("quotient representatives are distinct classes") {
    for (long p : {3L, 5L}) {
        auto reps = enumerate_quotient(QuotientKind::XnModPiXn, p, -1);
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = i + 1; j < reps.size(); ++j) CHECK_FALSE(in_X(reps[i] - reps[j], 1));
    }
}

TEST_CASE("lattice pair membership") {
    long p = 3, eps = 2;
    LatticePair L{QuatModel::Ramified};
    auto Pi = RamifiedQuaternion::Pi(p, eps);
    auto one = RamifiedQuaternion::scalar(p, eps, 1);
    CHECK(L.contains(one, Pi.inverse()));
    CHECK_FALSE(L.contains(Pi.inverse(), one));
    CHECK_FALSE(L.contains(one, Pi.inverse() * Pi.inverse()));
    LatticePair S{QuatModel::Split};
    CHECK(S.contains(Mat2::identity(), Mat2(3, 0, 0, 1), 3));
    CHECK_FALSE(S.contains(Mat2(rat(1, 3), 0, 0, 1), Mat2(), 3));
}
