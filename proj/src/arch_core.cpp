#include "ecr/arch.hpp"

#include <cmath>

namespace ecr::arch {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cd I1(0, 1);  // sqrt(-1), central in H (x) C

double factorial(int n) {
    double r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// E = projection onto P_kappa
EndV top_projection(int kappa) {
    EndV e = EndV::Zero(kappa + 1, kappa + 1);
    e(kappa, kappa) = 1;
    return e;
}

}  // namespace

// ---------------------------------------------------------------------------
// quaternions

HQ operator+(const HQ& x, const HQ& y) { return {x.a[0] + y.a[0], x.a[1] + y.a[1], x.a[2] + y.a[2], x.a[3] + y.a[3]}; }
HQ operator-(const HQ& x, const HQ& y) { return {x.a[0] - y.a[0], x.a[1] - y.a[1], x.a[2] - y.a[2], x.a[3] - y.a[3]}; }
HQ operator*(double s, const HQ& x) { return {s * x.a[0], s * x.a[1], s * x.a[2], s * x.a[3]}; }

HQ operator*(const HQ& x, const HQ& y) {
    const double* p = x.a;
    const double* q = y.a;
    return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3], p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
            p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1], p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

HQ HamiltonQuaternion::inverse() const {
    double n = norm();
    if (n == 0) throw SingularArgument("inverse of the zero quaternion");
    return (1 / n) * conj();
}

double dot(const HQ& x, const HQ& y) { return x.a[0] * y.a[0] + x.a[1] * y.a[1] + x.a[2] * y.a[2] + x.a[3] * y.a[3]; }

namespace {
// splitmix64, enough for reproducible sample points
double next_uniform(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return (z >> 11) * (1.0 / 9007199254740992.0);
}
}  // namespace

HQ random_quaternion(std::uint64_t& s, double scale) {
    HQ x;
    for (double& c : x.a) c = scale * (2 * next_uniform(s) - 1);
    return x;
}

HQ random_unit(std::uint64_t& s) {
    for (;;) {
        HQ x = random_quaternion(s);
        double n = x.norm();
        if (n > 1e-3 && n <= 1) return (1 / std::sqrt(n)) * x;
    }
}

namespace {
// u in H^1 with u i conj(u) = b for a unit pure b
HQ rotate_i_to(const HQ& b) {
    const HQ a = HQ::i();
    double c = dot(a, b);
    if (c < -1 + 1e-14) return HQ::j();  // j i conj(j) = -i
    // 1 + a.b + a x b
    HQ q(1 + c, a.a[2] * b.a[3] - a.a[3] * b.a[2], a.a[3] * b.a[1] - a.a[1] * b.a[3], a.a[1] * b.a[2] - a.a[2] * b.a[1]);
    return (1 / std::sqrt(q.norm())) * q;
}
}  // namespace

HQ rotation_to_minus_i(const HQ& q) {
    HQ v = q.pure();
    double n = std::sqrt(v.norm());
    if (n == 0) return HQ(1);
    return rotate_i_to((-1 / n) * v);
}

M2c embed(const HQ& x) { return embed(x, HQ()); }

M2c embed(const HQ& re, const HQ& im) {
    cd z[4];
    for (int t = 0; t < 4; ++t) z[t] = cd(re.a[t], 0) + I1 * im.a[t];
    M2c m;
    m << z[0] + I1 * z[1], z[2] + I1 * z[3], -z[2] + I1 * z[3], z[0] - I1 * z[1];
    return m;
}

M2c main_involution(const M2c& z) {
    M2c m;
    m << z(1, 1), -z(0, 1), -z(1, 0), z(0, 0);
    return m;
}

// ---------------------------------------------------------------------------
// sigma_kappa

EndV sigma_kappa(const M2c& z, int kappa) {
    // (X, Y) z = (aX + cY, bX + dY); polynomials stored by power of X
    const cd a = z(0, 0), b = z(0, 1), c = z(1, 0), d = z(1, 1);
    // row r of U (V) holds the coefficients of (aX + cY)^r ((bX + dY)^r), stride kappa + 1
    const int n = kappa + 1;
    thread_local std::vector<cd> buf;
    buf.assign(2 * n * n, cd(0));
    cd* U = buf.data();
    cd* V = U + n * n;
    U[0] = V[0] = 1;
    for (int r = 1; r <= kappa; ++r) {
        const cd* up = U + (r - 1) * n;
        const cd* vp = V + (r - 1) * n;
        cd* u = U + r * n;
        cd* v = V + r * n;
        for (int t = 0; t < r; ++t) {
            u[t] += c * up[t];
            u[t + 1] += a * up[t];
            v[t] += d * vp[t];
            v[t + 1] += b * vp[t];
        }
    }
    EndV s = EndV::Zero(n, n);
    for (int r = 0; r <= kappa; ++r) {
        const cd* u = U + r * n;
        const cd* v = V + (kappa - r) * n;
        for (int p = 0; p <= r; ++p)
            for (int q = 0; q <= kappa - r; ++q) s(p + q, r) += u[p] * v[q];
    }
    return s;
}

double gram_entry(int r, int kappa) { return factorial(r) * factorial(kappa - r) / (4 * std::pow(2 * kPi, kappa)); }

cd inner_product(const Eigen::VectorXcd& v, const Eigen::VectorXcd& w, int kappa) {
    cd s = 0;
    for (int r = 0; r <= kappa; ++r) s += v(r) * std::conj(w(r)) * gram_entry(r, kappa);
    return s;
}

EndV adjoint(const EndV& m, int kappa) {
    EndV a = m.adjoint();
    for (int r = 0; r <= kappa; ++r)
        for (int c = 0; c <= kappa; ++c) a(r, c) *= gram_entry(c, kappa) / gram_entry(r, kappa);
    return a;
}

EndV Phi_kappa(const HQ& x, int kappa) {
    double n = x.norm();
    if (n == 0) throw SingularArgument("Phi_kappa(0)");
    return std::pow(n, -kappa - 1) * sigma_kappa(x.conj(), kappa);
}

double lambda_kappa(int kappa) { return std::pow(2.0, 2 * kappa - 1) * std::pow(kPi, kappa + 1) / factorial(kappa); }
double c_H(int kappa) { return (kappa - 1) / (2 * kPi); }
double c_G(int kappa) { return kappa * (kappa - 1) / (8 * kPi * kPi); }

// ---------------------------------------------------------------------------
// groups

Mat2H operator*(const Mat2H& x, const Mat2H& y) {
    Mat2H r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j);
    return r;
}

Mat2H u_element(const HQ& t, double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    return {{c * t, s * t, -s * t, c * t}};
}

Mat2H h_element(const HQ& alpha, double a, double b, double c, double d) {
    return {{a * alpha, b * alpha, c * alpha, d * alpha}};
}

Mat2H k_element(const HQ& p, const HQ& q) {
    HQ a = 0.5 * (p + q), b = 0.5 * (p - q);
    return {{a, b, b, a}};
}

Mat2H n_G(const HQ& beta) { return {{HQ(1), beta.pure(), HQ(), HQ(1)}}; }
Mat2H d_G(const HQ& alpha) { return {{alpha, HQ(), HQ(), alpha.conj().inverse()}}; }

EndV rho_kappa(const HQ& t, double theta, int kappa) {
    return std::exp(-I1 * static_cast<double>(kappa) * theta) * sigma_kappa(t, kappa);
}

EndV tau_kappa(const Mat2H& k, int kappa) { return sigma_kappa(k(0, 0) + k(0, 1), kappa); }
EndV tau_minus_kappa(const Mat2H& k, int kappa) { return sigma_kappa(k(0, 0) - k(0, 1), kappa); }

EndV omega_kappa(const Mat2H& h, int kappa) {
    M2c delta = embed(0.5 * (h(0, 0) + h(1, 1)), 0.5 * (h(1, 0) - h(0, 1)));
    if (std::abs(delta.determinant()) < 1e-300) throw SingularArgument("omega_kappa: singular argument");
    return sigma_kappa(M2c(delta.inverse()), kappa);
}

EndV Omega_kappa(const Mat2H& g, int kappa) {
    HQ delta = 0.5 * (g(0, 0) + g(0, 1) + g(1, 0) + g(1, 1));
    return Phi_kappa(delta, kappa);
}

// ---------------------------------------------------------------------------
// test functions

EndV phi0(const HQ& x1, const HQ& x2, int kappa) {
    return std::exp(-2 * kPi * (x1.norm() + x2.norm())) * sigma_kappa(embed(x1.conj(), -x2.conj()), kappa);
}

EndV phi0_star(const HQ& x1, const HQ& x2, int kappa) {
    return std::exp(-2 * kPi * (x1.norm() + x2.norm())) * sigma_kappa(embed(x1, x2), kappa);
}

EndV phi0_prime(const HQ& x1, const HQ& x2, int kappa) {
    return std::exp(-2 * kPi * (x1.norm() + x2.norm())) * sigma_kappa((x1 + x2).conj(), kappa);
}

EndV phi0_prime_star(const HQ& x1, const HQ& x2, int kappa) {
    return std::exp(-2 * kPi * (x1.norm() + x2.norm())) * sigma_kappa(x1 - x2, kappa);
}

std::string to_string(TestFn f) {
    switch (f) {
        case TestFn::PhiOmega: return "phi_omega";
        case TestFn::PhiOmegaStar: return "phi_omega*";
        case TestFn::VarphiOmega: return "varphi_Omega";
        case TestFn::VarphiOmegaStar: return "varphi_Omega*";
    }
    return "?";
}

EndV closed_form_phi(TestFn f, const HQ& x1, const HQ& x2, int kappa) {
    const int n = kappa + 1;
    const double k = kappa;
    if (f == TestFn::PhiOmega || f == TestFn::PhiOmegaStar) {
        double T = 2 * dot(x1, x2);  // tr(conj(x1) x2)
        bool star = f == TestFn::PhiOmegaStar;
        if (star ? !(T < 0) : !(T > 0)) return EndV::Zero(n, n);
        double a = star ? -T : T;
        double c = std::pow(2.0, kappa - 2) / kPi * k * std::pow(a, kappa - 1) * std::exp(-2 * kPi * a);
        return c * (star ? Phi_kappa((x1 - x2).conj(), kappa) : Phi_kappa(x1 + x2, kappa));
    }

    const double normX = x1.norm() + x2.norm();  // ||X||^2
    if (normX == 0) return EndV::Zero(n, n);
    HQ alpha = rotation_to_minus_i(x1.conj() * x2);
    HQ y1 = x1 * alpha, y2 = x2 * alpha;
    HQ w = y1.conj() * y2;  // s - i t
    double t = std::max(0.0, -w.a[1]);
    EndV E = top_projection(kappa);
    EndV sa = sigma_kappa(alpha, kappa);
    EndV sa_inv = sigma_kappa(alpha.conj(), kappa);  // alpha in H^1

    if (f == TestFn::VarphiOmega) {
        EndV core;
        double sing = std::sqrt((y2 + y1 * HQ::i()).norm() / normX);
        if (sing <= 1e-12) {
            // x2 = -x1 i: varphi(X) sigma(x1) P_r = delta 2 pi/k ||X||^{2k-2} e^{-2 pi ||X||^2} P_k
            core = 2 * kPi / k * std::pow(normX, kappa - 1) * std::exp(-2 * kPi * normX) * E *
                   sigma_kappa(y1.inverse(), kappa);
        } else {
            M2c z = embed(y1, y2);
            core = std::pow(2.0, 2 * kappa) * kPi / k * std::pow(t, kappa - 1) * std::exp(-4 * kPi * t) * E *
                   sigma_kappa(M2c(z.inverse()), kappa);
        }
        return sa * core;  // varphi(X) = sigma(alpha) varphi(X alpha)
    }

    // varphi^*(X) P_r = delta C t^{k-1} e^{-4 pi t} (||X||^2 + 2t)^{-k} sigma(x1 + sqrt-1 x2) P_k
    if (t == 0) return EndV::Zero(n, n);
    EndV core = std::pow(2.0, 2 * kappa) * kPi / k * std::pow(t, kappa - 1) * std::exp(-4 * kPi * t) *
                std::pow(normX + 2 * t, -kappa) * sigma_kappa(embed(y1, y2), kappa) * E;
    return core * sa_inv;  // varphi^*(X) = varphi^*(X alpha) sigma(alpha)^{-1}
}

EndV m_kappa_closed(const HQ& xi, int kappa) {
    HQ v = xi.pure();
    double t = std::sqrt(v.norm());
    EndV m = EndV::Zero(kappa + 1, kappa + 1);
    if (t == 0) return m;
    m(kappa, kappa) = lambda_kappa(kappa) * std::pow(t, kappa - 1) * std::exp(-4 * kPi * t);
    // u (i t) u^{-1} = pure(xi): u = alpha j with alpha i conj(alpha) = -v/t
    HQ u = rotation_to_minus_i(v) * HQ::j();
    return sigma_kappa(u, kappa) * m * sigma_kappa(u.conj(), kappa);
}

}  // namespace ecr::arch
