#include "doctest.h"
#include "ecr/padic.hpp"

#include <random>

using namespace ecr;

TEST_CASE("valuations and integrality predicates") {
    CHECK(val_p(rat(6), 3) == 1);
    CHECK(val_p(rat(0), 5) == kInfiniteValuation);
    CHECK(sigma(rat(0), 5));
    CHECK_FALSE(sigma(rat(1, 3), 3));
    CHECK(tau(rat(1), 3));
    CHECK(val_p(rat(2, 75), 5) == -2);
    CHECK(val_p(rat(50, 7), 5) == 2);
    CHECK(tau(rat(2, 7), 5));
    CHECK_FALSE(tau(rat(5, 7), 5));
    CHECK(delta(true) == 1);
    CHECK(delta(false) == 0);
}

TEST_CASE("psi values") {
    CHECK(psi_value(rat(1, 3), 3) == CycloNumber::root(3, 1, -1));
    CHECK(psi_value(rat(2), 5) == CycloNumber::rational(5, 1));
    CycloNumber s;
    for (long b = 0; b < 3; ++b) s += psi_value(rat(b, 3), 3);
    CHECK(cyclo_assert_rational(s) == 0);
    CHECK_THROWS_AS(psi_value(rat(1, 6), 3), std::invalid_argument);
    // 1/p^2 summed over a full system mod p^2
    CycloNumber t;
    for (long b = 0; b < 25; ++b) t += psi_value(rat(b, 25), 5);
    CHECK(t.is_zero());
}

TEST_CASE("psi is additive and detects Z_p") {
    std::mt19937_64 rng(7);
    for (long p : {2L, 3L, 5L}) {
        std::uniform_int_distribution<long> num(-200, 200);
        std::uniform_int_distribution<int> ex(0, 3);
        for (int it = 0; it < 200; ++it) {
            long pk1 = 1, pk2 = 1;
            for (int i = 0, e = ex(rng); i < e; ++i) pk1 *= p;
            for (int i = 0, e = ex(rng); i < e; ++i) pk2 *= p;
            ExactRational x = rat(num(rng), pk1), y = rat(num(rng), pk2);
            CHECK(psi_value(x + y, p) == psi_value(x, p) * psi_value(y, p));
            CHECK((psi_value(x, p) == CycloNumber::rational(p, 1)) == sigma(x, p));
        }
    }
}

TEST_CASE("cyclotomic arithmetic") {
    for (long p : {2L, 3L, 5L})
        for (int m = 1; m <= 3; ++m) {
            long n = 1;
            for (int i = 0; i < m; ++i) n *= p;
            CycloNumber z = CycloNumber::root(p, m, 1), acc = CycloNumber::rational(p, 1);
            for (long i = 0; i < n; ++i) acc = acc * z;
            CHECK(acc == CycloNumber::rational(p, 1));
            // sum of all p^m-th roots vanishes
            CycloNumber s(p, m);
            for (long j = 0; j < n; ++j) s.add_root(j, 1);
            CHECK(s.is_zero());
        }
    CycloNumber one_z_z2 = CycloNumber::rational(3, 1) + CycloNumber::root(3, 1, 1) + CycloNumber::root(3, 1, 2);
    CHECK(cyclo_assert_rational(one_z_z2) == 0);
    CHECK_THROWS_AS(cyclo_assert_rational(CycloNumber::root(3, 1, 1)), NonRationalResult);
    CHECK(cyclo_assert_rational(CycloNumber::root(3, 2, 0) * ExactRational(3)) == 3);
    // zeta_9^3 = zeta_3
    CHECK(CycloNumber::root(3, 2, 3) == CycloNumber::root(3, 1, 1));
}

TEST_CASE("residue systems") {
    auto r = enumerate_residues(3, 1);
    REQUIRE(r.reps.size() == 3);
    CHECK(r.reps[2] == 2);
    CHECK(enumerate_residues(3, 2).reps.size() == 9);
    auto u = enumerate_residues(3, 1, true);
    REQUIRE(u.reps.size() == 2);
    CHECK(u.reps[0] == 1);
    CHECK(enumerate_residues(5, 2, true).reps.size() == 20);
    CHECK_THROWS(enumerate_residues(3, 0));
}

TEST_CASE("non-residues") {
    CHECK(smallest_nonresidue(3) == 2);
    CHECK(smallest_nonresidue(5) == 2);
    CHECK(smallest_nonresidue(7) == 3);
    CHECK_THROWS_AS(smallest_nonresidue(2), UnsupportedPrime);
}
