#include "doctest.h"
#include "ecr/arch.hpp"

#include <cmath>

using namespace ecr::arch;

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_all(const std::vector<NumCheck>& checks) {
    for (const auto& c : checks) {
        INFO(c.id << ": " << c.name << " residual " << c.residual << " tol " << c.tolerance << " " << c.note);
        CHECK(c.ok);
        CHECK(c.cases > 0);
    }
}

}  // namespace

TEST_CASE("quadrature rules") {
    Rule g = gauss_hermite(20, 1 / std::sqrt(2 * kPi));
    double s = 0;
    for (std::size_t k = 0; k < g.size(); ++k) s += g.w[k];
    CHECK(std::abs(s - 1 / std::sqrt(2.0)) < 1e-12);  // int e^{-2 pi x^2} dx

    Rule l = gauss_legendre(6, 0, 2);
    double p = 0;
    for (std::size_t k = 0; k < l.size(); ++k) p += l.w[k] * std::pow(l.x[k], 11);
    CHECK(std::abs(p - 4096.0 / 12) < 1e-9);

    Rule pan = gauss_legendre_panels(-1, 3, 0.3, 4);
    CHECK(pan.size() == 14 * 4);
    double e = 0;
    for (std::size_t k = 0; k < pan.size(); ++k) e += pan.w[k] * std::exp(pan.x[k]);
    CHECK(std::abs(e - (std::exp(3.0) - std::exp(-1.0))) < 1e-12);

    Rule t = trapezoid_periodic(8);
    double c = 0;
    for (std::size_t k = 0; k < t.size(); ++k) c += t.w[k] * std::pow(std::cos(t.x[k]), 6);
    CHECK(std::abs(c - 2 * kPi * 10.0 / 32) < 1e-12);
}

TEST_CASE("sigma_kappa examples") {
    for (int k : {1, 4, 7}) CHECK(sigma_kappa(HQ(1), k).isApprox(EndV::Identity(k + 1, k + 1), 1e-15));
    EndV m = sigma_kappa(HQ::i(), 2);
    CHECK(std::abs(m(0, 0) + 1.0) < 1e-15);
    CHECK(std::abs(m(1, 1) - 1.0) < 1e-15);
    CHECK(std::abs(m(2, 2) + 1.0) < 1e-15);
    CHECK((m - m.diagonal().asDiagonal().toDenseMatrix()).norm() < 1e-15);
    CHECK(sigma_kappa(HQ(), 3).norm() == 0);
    // A of a basis element
    M2c aj = embed(HQ::j());
    CHECK(aj(0, 1) == cd(1));
    CHECK(aj(1, 0) == cd(-1));
}

TEST_CASE("property suites") {
    require_all(sigma_property_suite(6, 11, 1e-10));
    require_all(sigma_property_suite(2, 12, 1e-10));
    require_all(equivariance_suite(6, 13, 1e-10));
    require_all(inequality_tr_suite(14, 10000, 1e-10));
}

TEST_CASE("inner product against Gaussian quadrature") {
    for (int k : {1, 6, 10}) {
        NumCheck c = inner_product_check(k, 1e-10);
        INFO(k << " " << c.residual);
        CHECK(c.ok);
    }
    Eigen::VectorXcd p0 = Eigen::VectorXcd::Zero(7), p1 = Eigen::VectorXcd::Zero(7);
    p0(0) = 1;
    p1(1) = 1;
    CHECK(inner_product(p0, p1, 6) == cd(0));
}

TEST_CASE("integral residue") {
    NumCheck pos = integral_residue_check(6, 1, 1, 1e-6, true);
    CHECK(pos.ok);
    NumCheck neg = integral_residue_check(6, 1, -1, 1e-8, false);
    CHECK(neg.ok);
    CHECK(integral_residue_closed(6, 1, 0) == cd(0));
}

TEST_CASE("M_kappa") {
    CHECK(m_kappa_closed(HQ(), 5).norm() == 0);
    CHECK(m_kappa_closed(HQ(3.0), 5).norm() == 0);
    const double t = 0.5;
    EndV m = m_kappa_closed(HQ(0, t), 5);
    EndV want = EndV::Zero(6, 6);
    want(5, 5) = lambda_kappa(5) * std::pow(t, 4) * std::exp(-4 * kPi * t);
    CHECK(rel_dev(m, want) < 1e-14);
    CHECK(std::abs(lambda_kappa(5) - std::pow(2.0, 9) * std::pow(kPi, 6) / 120) < 1e-9);

    NumCheck c = m_kappa_check(5, t, 1e-6);
    INFO(c.residual << " " << c.error_estimate << " " << c.note);
    CHECK(c.ok);

    // off-axis argument with a real part
    QuadratureSpec spec;
    spec.tolerance = 1e-6;
    HQ xi(0.4, 0.1, -0.3, 0.2);
    QuadResult r = m_kappa_numeric(xi, 5, spec);
    CHECK(rel_dev(r.value, m_kappa_closed(xi, 5)) < 1e-6);
    CHECK_THROWS_AS(m_kappa_numeric(xi, 2, spec), std::invalid_argument);
    spec.tolerance = 1e-16;
    CHECK_THROWS_AS(m_kappa_numeric(HQ(0, 0.1), 5, spec), QuadratureNotConverged);
}

TEST_CASE("spherical functions and test functions") {
    Mat2H one{{HQ(1), HQ(), HQ(), HQ(1)}};
    CHECK(omega_kappa(one, 6).isApprox(EndV::Identity(7, 7), 1e-15));
    CHECK(Omega_kappa(one, 6).isApprox(EndV::Identity(7, 7), 1e-15));
    CHECK(phi0(HQ(), HQ(), 6).norm() == 0);
    CHECK(std::abs(c_G(10) / c_H(10) - 10 / (4 * kPi)) < 1e-15);

    std::uint64_t s = 5;
    for (int i = 0; i < 20; ++i) {
        HQ x1 = random_quaternion(s), x2 = random_quaternion(s);
        Eigen::VectorXcd v(7), w(7);
        for (int r = 0; r < 7; ++r) {
            HQ q = random_quaternion(s);
            v(r) = cd(q.a[0], q.a[1]);
            w(r) = cd(q.a[2], q.a[3]);
        }
        cd lhs = inner_product(phi0(x1, x2, 6) * v, w, 6);
        cd rhs = inner_product(v, phi0_star(x1, x2, 6) * w, 6);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(lhs) + 1e-300);
    }
}

TEST_CASE("closed forms") {
    const int k = 6;
    // vanishing guards
    CHECK(closed_form_phi(TestFn::PhiOmega, HQ(1), HQ(0, 1), k).norm() == 0);
    CHECK(closed_form_phi(TestFn::PhiOmega, HQ(1), HQ(-0.5), k).norm() == 0);
    CHECK(closed_form_phi(TestFn::PhiOmegaStar, HQ(1), HQ(0.5), k).norm() == 0);
    CHECK(closed_form_phi(TestFn::PhiOmega, HQ(), HQ(), k).norm() == 0);
    CHECK(closed_form_phi(TestFn::PhiOmegaStar, HQ(), HQ(), k).norm() == 0);
    CHECK(closed_form_phi(TestFn::VarphiOmega, HQ(1, 2), HQ(0.5, 1), k).norm() == 0);  // t = 0
    CHECK(closed_form_phi(TestFn::VarphiOmegaStar, HQ(1, 2), HQ(0.5, 1), k).norm() == 0);

    // phi_omega on the positive branch, from the displayed constant
    HQ x1(1), x2(0.6, 0, 0.2);
    double T = 1.2;
    EndV want = std::pow(2.0, k - 2) / kPi * k * std::pow(T, k - 1) * std::exp(-2 * kPi * T) * Phi_kappa(x1 + x2, k);
    CHECK(rel_dev(closed_form_phi(TestFn::PhiOmega, x1, x2, k), want) < 1e-14);

    // conj(x1) x2 = s - i t: image spanned by P_kappa and varphi sigma(x1 + sqrt-1 x2) = const E
    HQ y1(1), y2(0.3, -0.4);
    double t = 0.4;
    EndV v = closed_form_phi(TestFn::VarphiOmega, y1, y2, k);
    for (int r = 0; r < k; ++r) CHECK(v.row(r).norm() == 0);
    EndV prod = v * sigma_kappa(embed(y1, y2), k);
    EndV e = EndV::Zero(k + 1, k + 1);
    e(k, k) = std::pow(2.0, 2 * k) * kPi / k * std::pow(t, k - 1) * std::exp(-4 * kPi * t);
    CHECK(rel_dev(prod, e) < 1e-12);
    // the same matrix through sigma(conj x1 - sqrt-1 conj x2)^{-1}, with (||X||^2 + 2t)^{-k}
    M2c zb = embed(y1.conj(), -1.0 * y2.conj());
    EndV other = v * sigma_kappa(M2c(zb.inverse()), k);
    CHECK(rel_dev(other, std::pow(y1.norm() + y2.norm() + 2 * t, -k) * e) < 1e-12);

    // singular branch x2 = -x1 i: varphi(X) sigma(x1) P_kappa = 2 pi / k ||X||^{2k-2} e^{-2 pi ||X||^2} P_kappa
    HQ z1(0.7, 0.1, 0.3, -0.2), z2 = -1.0 * (z1 * HQ::i());
    double nx = z1.norm() + z2.norm();
    EndV sv = closed_form_phi(TestFn::VarphiOmega, z1, z2, k) * sigma_kappa(z1, k);
    Eigen::VectorXcd col = sv.col(k);
    double expect = 2 * kPi / k * std::pow(nx, k - 1) * std::exp(-2 * kPi * nx);
    CHECK(std::abs(col(k) - expect) < 1e-12 * expect);
    CHECK(col.head(k).norm() < 1e-12 * expect);
    for (int r = 0; r < k; ++r) CHECK(sv.col(r).norm() < 1e-12 * expect);
}

TEST_CASE("check suite, light configuration") {
    ArchConfig cfg;
    cfg.kappa = 6;
    cfg.checks = "abcef";
    cfg.heavy = false;
    auto res = arch_check_suite(cfg);
    require_all(res);
    CHECK(res.size() > 10);

    cfg.kappa = 4;
    CHECK_THROWS_AS(arch_check_suite(cfg), std::invalid_argument);
}

TEST_CASE("decay across shells") {
    for (int k : {5, 8}) {
        NumCheck c = decay_check(k, 99);
        INFO(c.note);
        CHECK(c.ok);
        CHECK(c.cases >= 5);
    }
}
