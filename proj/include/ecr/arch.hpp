#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ecr::arch {

using cd = std::complex<double>;
using EndV = Eigen::MatrixXcd;  // End(V_kappa) in the basis P_r = X^r Y^{kappa-r}
using M2c = Eigen::Matrix2cd;   // H (x) C through the embedding A

struct QuadratureNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularArgument : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a0 + a1 i + a2 j + a3 k
struct HamiltonQuaternion {
    double a[4] = {0, 0, 0, 0};

    HamiltonQuaternion() = default;
    HamiltonQuaternion(double a0, double a1 = 0, double a2 = 0, double a3 = 0) : a{a0, a1, a2, a3} {}
    static HamiltonQuaternion i() { return {0, 1, 0, 0}; }
    static HamiltonQuaternion j() { return {0, 0, 1, 0}; }
    static HamiltonQuaternion k() { return {0, 0, 0, 1}; }

    HamiltonQuaternion conj() const { return {a[0], -a[1], -a[2], -a[3]}; }
    double norm() const { return a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]; }
    double trace() const { return 2 * a[0]; }
    HamiltonQuaternion pure() const { return {0, a[1], a[2], a[3]}; }
    HamiltonQuaternion inverse() const;

    friend HamiltonQuaternion operator+(const HamiltonQuaternion& x, const HamiltonQuaternion& y);
    friend HamiltonQuaternion operator-(const HamiltonQuaternion& x, const HamiltonQuaternion& y);
    friend HamiltonQuaternion operator-(const HamiltonQuaternion& x) { return {-x.a[0], -x.a[1], -x.a[2], -x.a[3]}; }
    friend HamiltonQuaternion operator*(const HamiltonQuaternion& x, const HamiltonQuaternion& y);
    friend HamiltonQuaternion operator*(double s, const HamiltonQuaternion& x);
};

using HQ = HamiltonQuaternion;

double dot(const HQ& x, const HQ& y);  // Euclidean; tr(conj(x) y) = 2 dot(x, y)
HQ random_quaternion(std::uint64_t& state, double scale = 1);
HQ random_unit(std::uint64_t& state);
// alpha in H^1 with conj(alpha) q alpha = -|pure(q)| i + real(q)
HQ rotation_to_minus_i(const HQ& q);

// the embedding A and its complex-linear extension: re + sqrt(-1) im
M2c embed(const HQ& x);
M2c embed(const HQ& re, const HQ& im);
M2c main_involution(const M2c& z);  // conj on H (x) C, complex-linearly
inline cd reduced_norm(const M2c& z) { return z.determinant(); }
inline cd reduced_trace(const M2c& z) { return z.trace(); }

// sigma_kappa(z) P = P((X, Y) A(z))
EndV sigma_kappa(const M2c& z, int kappa);
inline EndV sigma_kappa(const HQ& x, int kappa) { return sigma_kappa(embed(x), kappa); }

// (P_r, P_s)_kappa = delta_rs r!(kappa-r)!/(4 (2 pi)^kappa)
double gram_entry(int r, int kappa);
cd inner_product(const Eigen::VectorXcd& v, const Eigen::VectorXcd& w, int kappa);
EndV adjoint(const EndV& m, int kappa);  // adjoint for ( , )_kappa

EndV Phi_kappa(const HQ& x, int kappa);  // N(x)^{-1} sigma(x)^{-1} = sigma(conj x) N(x)^{-kappa-1}
double lambda_kappa(int kappa);          // 2^{2k-1} pi^{k+1} / k!
double c_H(int kappa);                   // (k-1)/(2 pi)
double c_G(int kappa);                   // k(k-1)/(8 pi^2)

// ---------------------------------------------------------------------------
// groups at the real place

struct Mat2H {
    HQ e[4];  // row-major
    HQ& operator()(int r, int c) { return e[2 * r + c]; }
    const HQ& operator()(int r, int c) const { return e[2 * r + c]; }
    friend Mat2H operator*(const Mat2H& x, const Mat2H& y);
};

Mat2H u_element(const HQ& t, double theta);  // t [[cos, sin], [-sin, cos]]
Mat2H h_element(const HQ& alpha, double a, double b, double c, double d);  // alpha [[a, b], [c, d]]
Mat2H k_element(const HQ& p, const HQ& q);   // [[a, b], [b, a]] with a + b = p, a - b = q
Mat2H n_G(const HQ& beta);                   // [[1, beta], [0, 1]], beta pure
Mat2H d_G(const HQ& alpha);                  // diag(alpha, conj(alpha)^{-1})

EndV rho_kappa(const HQ& t, double theta, int kappa);
EndV tau_kappa(const Mat2H& k, int kappa);
EndV tau_minus_kappa(const Mat2H& k, int kappa);

// omega(h) = sigma(1/2 (-sqrt-1, 1) h (sqrt-1, 1)^t)^{-1}
EndV omega_kappa(const Mat2H& h, int kappa);
// Omega(g) = N(Delta_g)^{-1} sigma(Delta_g)^{-1}, Delta_g = (a + b + c + d)/2
EndV Omega_kappa(const Mat2H& g, int kappa);

// ---------------------------------------------------------------------------
// Archimedean test functions. Column vectors X = (x1; x2), row vectors X' = (x1, x2).

EndV phi0(const HQ& x1, const HQ& x2, int kappa);             // e(i tX X) sigma(conj x1 - sqrt-1 conj x2)
EndV phi0_star(const HQ& x1, const HQ& x2, int kappa);        // e(i tX X) sigma(x1 + sqrt-1 x2)
EndV phi0_prime(const HQ& x1, const HQ& x2, int kappa);       // e(i X' tX') sigma(conj x1 + conj x2)
EndV phi0_prime_star(const HQ& x1, const HQ& x2, int kappa);  // e(i X' tX') sigma(x1 - x2)

enum class TestFn { PhiOmega, PhiOmegaStar, VarphiOmega, VarphiOmegaStar };
std::string to_string(TestFn f);

// Closed forms of the Hecke-averaged test functions, kappa > 4. The varphi forms
// rotate X by alpha in H^1 so that conj(x1) x2 = s - i t and use the equivariance
// under X -> X alpha; the branch x2 = -x1 i uses the singular formula.
EndV closed_form_phi(TestFn f, const HQ& x1, const HQ& x2, int kappa);

// M_kappa(xi) = sigma(u) M(it) sigma(u)^{-1}, M(it) P_r = delta_{r,kappa} lambda t^{kappa-1} e^{-4 pi t} P_kappa
EndV m_kappa_closed(const HQ& xi, int kappa);

// ---------------------------------------------------------------------------
// quadrature

struct Rule {
    std::vector<double> x, w;
    std::size_t size() const { return x.size(); }
};

Rule gauss_legendre(int n, double lo = -1, double hi = 1);
Rule gauss_hermite(int n, double scale = 1);  // weight exp(-(x/scale)^2) folded into w
Rule gauss_legendre_panels(double lo, double hi, double width, int n_per_panel);
Rule trapezoid_periodic(int n, double period = 2 * 3.14159265358979323846);

struct QuadratureSpec {
    int dim = 1;
    std::vector<int> nodes;     // per axis, at the base level
    double radius = 0;          // truncation radius on the oscillatory axis
    double tolerance = 1e-6;    // relative, against the error estimate
    int workers = 1;
};

struct QuadResult {
    EndV value;
    double error = 0;  // Frobenius norm of the difference between base and doubled rules
    std::size_t evaluations = 0;
};

using Integrand = std::function<void(const double* x, EndV& out)>;

// tensor-product rule; out is accumulated with weight prod w_i
EndV tensor_integrate(const std::vector<Rule>& axes, const Integrand& f, int rows, int cols, int workers = 1,
                      std::size_t* evaluations = nullptr);

// 1-D residue integral int (t + sqrt-1 x)^{-kappa} e(s x) dx
struct ScalarQuad {
    cd value;
    double error = 0;
};
ScalarQuad integral_residue_numeric(int kappa, double t, double s, const QuadratureSpec& spec);
cd integral_residue_closed(int kappa, double t, double s);

// M_kappa(xi) by 3-D quadrature over H^-: cylinder coordinates around the pure part of xi,
// truncated axial range [-radius, radius]; throws QuadratureNotConverged if the
// doubled-rule estimate exceeds tolerance
QuadResult m_kappa_numeric(const HQ& xi, int kappa, const QuadratureSpec& spec);

// ---------------------------------------------------------------------------
// numerical identity checks

struct NumCheck {
    std::string id;    // short key, e.g. "arch.M.k5.t0.1"
    std::string name;  // what is being checked
    double tolerance = 0;
    double residual = 0;  // worst relative (or absolute, see relative flag) deviation
    bool relative = true;
    std::size_t cases = 0;
    double error_estimate = 0;  // quadrature estimate where applicable
    bool ok = true;
    std::string note;

    NumCheck() = default;
    NumCheck(std::string id_, std::string name_, double tol) : id(std::move(id_)), name(std::move(name_)), tolerance(tol) {}
    void record(double r) {
        ++cases;
        if (r > residual) residual = r;
        if (!(r <= tolerance)) ok = false;
    }
};

double rel_dev(const EndV& got, const EndV& want);  // ||got - want|| / ||want||
double abs_dev(const EndV& got, const EndV& want);

struct ArchConfig {
    int kappa = 10;
    std::string checks = "abcdef";  // subset of the suite letters
    std::uint64_t seed = 20240601;
    int workers = 1;
    double tol_ei = 1e-6;
    double tol_testf1 = 1e-3;
    double tol_testf2 = 1e-8;
    double tol_fourier = 1e-2;
    double tol_property = 1e-9;
    bool heavy = true;  // full node counts; false shrinks grids for unit tests
};

// (a) the Gaussian identity Ei by 4-D Gauss-Hermite; (b) phi_omega, phi_omega^* closed vs 2-D (b, a) quadrature;
// (c) varphi_Omega closed vs 1-D a-quadrature with M closed inserted; (d) partial Fourier
// identity by 4-D quadrature; (e) exact and near-exact property checks; (f) empirical decay.
std::vector<NumCheck> arch_check_suite(const ArchConfig& cfg);

// individual property suites (also used by (e) and by the tests)
std::vector<NumCheck> sigma_property_suite(int kappa, std::uint64_t seed, double tol);
std::vector<NumCheck> equivariance_suite(int kappa, std::uint64_t seed, double tol);
std::vector<NumCheck> inequality_tr_suite(std::uint64_t seed, std::size_t pairs, double tol);
NumCheck inner_product_check(int kappa, double tol);
NumCheck m_kappa_check(int kappa, double t, double tol, int workers = 1);
NumCheck integral_residue_check(int kappa, double t, double s, double tol, bool relative);
NumCheck decay_check(int kappa, std::uint64_t seed);

}  // namespace ecr::arch
