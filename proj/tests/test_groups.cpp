#include "doctest.h"
#include "ecr/groups.hpp"

#include <random>

using namespace ecr;

TEST_CASE("generators preserve the forms") {
    long p = 3;
    CHECK(n_H(rat(2, 9), p).preserves_form());
    CHECK(d_H(Mat2(rat(1, 3), 5, 0, 7), p).preserves_form());
    CHECK(nu_H(rat(4, 3), p).preserves_form());
    CHECK(n_G(1, rat(1, 3), 4, p).preserves_form());
    CHECK(d_G(Mat2(2, 1, 3, 9), p).preserves_form());
    CHECK((n_H(1, p) * n_H(rat(1, 3), p)).m == n_H(rat(4, 3), p).m);
    GroupElement v = nu_G(5, p);
    CHECK(v.m(3, 2) == -5);
    CHECK(v.m(0, 1) == 5);
    CHECK(d_H(Mat2::diag(rat(p), 1), p).m == d_H(Mat2::diag(p, 1), p).m);
    GroupElement d = d_H(Mat2::diag(p, 1), p);
    CHECK(d.m(0, 0) == p);
    CHECK(d.m(3, 3) == rat(1, p));
    CHECK(d.m(2, 2) == 1);
    // a non-symmetric S is not in G
    GroupElement bad = n_G(1, 0, 0, p);
    bad.m(0, 3) = 2;
    CHECK_FALSE(bad.preserves_form());
}

TEST_CASE("random words stay in the group; inverse through the form") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> num(-9, 9);
    for (long p : {2L, 3L, 5L}) {
        for (int it = 0; it < 40; ++it) {
            GroupElement h = n_H(rat(num(rng), p), p) * d_H(Mat2(1, num(rng), 0, p), p) * nu_H(num(rng), p);
            GroupElement g = n_G(num(rng), rat(num(rng), p), num(rng), p) * d_G(Mat2(p, num(rng), 0, 1), p);
            CHECK(h.preserves_form());
            CHECK(g.preserves_form());
            CHECK((h * h.inverse()).m == Mat4::identity());
            CHECK((g.inverse() * g).m == Mat4::identity());
        }
    }
}

TEST_CASE("membership predicates") {
    long p = 3;
    CHECK(membership(d_G(Mat2::identity(), p), MemberSet::K));
    CHECK(membership(n_H(0, p), MemberSet::U));
    CHECK(membership(d_G(Mat2::diag(p, 1), p), MemberSet::T1));
    CHECK_FALSE(membership(d_G(Mat2::diag(p, p), p), MemberSet::T1));
    CHECK(membership(d_G(Mat2::diag(p, p), p), MemberSet::T2));
    CHECK_FALSE(membership(d_G(Mat2::diag(p * p, 1), p), MemberSet::T1));
    CHECK_THROWS_AS(membership(n_H(0, p), MemberSet::K), ModelMismatch);
    // left translation by U does not change the verdict
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(-5, 5);
    auto t1 = coset_table(TableLabel::T1H, p);
    for (const auto& r : t1.reps) {
        GroupElement u = n_H(num(rng), p) * d_H(Mat2(1, num(rng), 0, 1), p) * d_H(Mat2(2, 1, 1, 1), p);
        REQUIRE(membership(u, MemberSet::U));
        CHECK(membership(u * r.g, MemberSet::T1));
        CHECK(membership(r.g * u, MemberSet::T1));
    }
}

TEST_CASE("split coset tables") {
    for (long p : {2L, 3L}) {
        for (auto label : {TableLabel::T1H, TableLabel::T2H, TableLabel::T1G, TableLabel::T2G}) {
            auto t = coset_table(label, p);
            auto v = verify_coset_table(t);
            INFO(label_name(label), " p=", p, " first failure: ", v.failures.empty() ? "" : v.failures.front());
            CHECK(v.ok);
            CHECK(v.count == v.expected);
        }
    }
    CHECK(coset_table(TableLabel::T1H, 3).reps.size() == 16);
    CHECK(coset_table(TableLabel::T2H, 3).reps.size() == 24);
    CHECK(expected_coset_count(TableLabel::T1G, 3) == 81 + 27 + 8 + 3 + 1);
    CHECK(lambda_set(5, 1).size() == 24);
    CHECK(lambda_set(5, 2).size() == 100);
}

TEST_CASE("ramified coset tables") {
    for (long p : {3L, 5L}) {
        auto h = coset_table(TableLabel::T1H_ram, p);
        auto g = coset_table(TableLabel::T1G_ram, p);
        auto vh = verify_coset_table(h);
        auto vg = verify_coset_table(g);
        CHECK(vh.ok);
        CHECK(vg.ok);
        CHECK(h.reps.size() == static_cast<std::size_t>(p + 1));
        CHECK(g.reps.size() == static_cast<std::size_t>(p * p * p + p));
        for (const auto& r : g.reps) CHECK(r.g.preserves_form());
    }
    CHECK_THROWS_AS(coset_table(TableLabel::T1G_ram, 2), UnsupportedPrime);
}

TEST_CASE("adversarial tables fail") {
    auto t = coset_table(TableLabel::T1H, 3);
    t.reps.push_back(t.reps.front());
    auto v = verify_coset_table(t);
    CHECK_FALSE(v.ok);
    // a rep from the wrong double coset
    auto t2 = coset_table(TableLabel::T1G, 3);
    t2.reps.back() = make_rep_split_G(Mat2(), Mat2::identity(), 1, 1, 3, "d(p,p)");
    CHECK_FALSE(verify_coset_table(t2).ok);
    // same coset hidden behind a right translation by K
    auto t3 = coset_table(TableLabel::T1G, 2);
    auto dup = t3.reps[0];
    dup.g = dup.g * n_G(1, 1, 0, 2);
    dup.word = "shifted";
    t3.reps[1] = dup;
    CHECK_FALSE(verify_coset_table(t3).ok);
}
