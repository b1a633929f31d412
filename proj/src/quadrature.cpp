#include "ecr/arch.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <thread>

namespace ecr::arch {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix, weights mu0 * v_0^2
Rule golub_welsch(int n, const std::function<double(int)>& offdiag, double mu0) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = offdiag(k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    Rule r;
    for (int k = 0; k < n; ++k) {
        r.x.push_back(es.eigenvalues()(k));
        double v = es.eigenvectors()(0, k);
        r.w.push_back(mu0 * v * v);
    }
    return r;
}

}  // namespace

Rule gauss_legendre(int n, double lo, double hi) {
    Rule r = golub_welsch(n, [](int k) { return k / std::sqrt(4.0 * k * k - 1); }, 2);
    double h = (hi - lo) / 2, m = (hi + lo) / 2;
    for (std::size_t k = 0; k < r.size(); ++k) {
        r.x[k] = m + h * r.x[k];
        r.w[k] *= h;
    }
    return r;
}

Rule gauss_hermite(int n, double scale) {
    Rule r = golub_welsch(n, [](int k) { return std::sqrt(k / 2.0); }, std::sqrt(kPi));
    for (std::size_t k = 0; k < r.size(); ++k) {
        r.x[k] *= scale;
        r.w[k] *= scale;
    }
    return r;
}

Rule gauss_legendre_panels(double lo, double hi, double width, int n_per_panel) {
    int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / width - 1e-12)));
    double h = (hi - lo) / panels;
    Rule base = gauss_legendre(n_per_panel, 0, h);
    Rule r;
    for (int p = 0; p < panels; ++p)
        for (std::size_t k = 0; k < base.size(); ++k) {
            r.x.push_back(lo + p * h + base.x[k]);
            r.w.push_back(base.w[k]);
        }
    return r;
}

Rule trapezoid_periodic(int n, double period) {
    Rule r;
    for (int k = 0; k < n; ++k) {
        r.x.push_back(period * k / n);
        r.w.push_back(period / n);
    }
    return r;
}

EndV tensor_integrate(const std::vector<Rule>& axes, const Integrand& f, int rows, int cols, int workers,
                      std::size_t* evaluations) {
    const std::size_t dim = axes.size();
    const std::size_t n0 = axes[0].size();
    workers = std::max(1, std::min<int>(workers, static_cast<int>(n0)));
    std::vector<EndV> acc(workers, EndV::Zero(rows, cols));
    std::vector<std::size_t> counts(workers, 0);

    auto run = [&](int wid) {
        std::vector<std::size_t> idx(dim, 0);
        std::vector<double> x(dim);
        EndV val(rows, cols);
        for (std::size_t i0 = wid; i0 < n0; i0 += workers) {
            idx.assign(dim, 0);
            idx[0] = i0;
            for (;;) {
                double w = 1;
                for (std::size_t d = 0; d < dim; ++d) {
                    x[d] = axes[d].x[idx[d]];
                    w *= axes[d].w[idx[d]];
                }
                f(x.data(), val);
                acc[wid] += w * val;
                ++counts[wid];
                int d = static_cast<int>(dim) - 1;
                while (d >= 1) {
                    if (++idx[d] < axes[d].size()) break;
                    idx[d] = 0;
                    --d;
                }
                if (d < 1) break;
            }
        }
    };

    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    EndV total = EndV::Zero(rows, cols);
    for (const auto& a : acc) total += a;
    if (evaluations) {
        std::size_t n = 0;
        for (auto c : counts) n += c;
        *evaluations += n;
    }
    return total;
}

// ---------------------------------------------------------------------------

cd integral_residue_closed(int kappa, double t, double s) {
    if (s <= 0) return 0;
    double f = 1;
    for (int i = 2; i < kappa; ++i) f *= i;
    return std::pow(2 * kPi, kappa) / f * std::pow(s, kappa - 1) * std::exp(-2 * kPi * s * t);
}

ScalarQuad integral_residue_numeric(int kappa, double t, double s, const QuadratureSpec& spec) {
    const double R = spec.radius > 0 ? spec.radius : 200;
    const int n = spec.nodes.empty() ? 8 : spec.nodes[0];
    const double width = std::min(0.5, 0.5 / std::max(std::abs(s), 1e-9)) * std::max(t, 0.05);
    auto eval = [&](int m) {
        Rule r = gauss_legendre_panels(-R, R, width, m);
        cd acc = 0;
        for (std::size_t k = 0; k < r.size(); ++k) {
            double x = r.x[k];
            acc += r.w[k] * std::pow(cd(t, x), -kappa) * std::exp(cd(0, 2 * kPi * s * x));
        }
        return acc;
    };
    cd a = eval(n), b = eval(2 * n);
    // |tail| <= 2 int_R^inf x^{-kappa} dx
    double tail = 2 * std::pow(R, 1 - kappa) / (kappa - 1);
    return {b, std::abs(a - b) + tail};
}

QuadResult m_kappa_numeric(const HQ& xi, int kappa, const QuadratureSpec& spec) {
    if (kappa <= 2) throw std::invalid_argument("m_kappa_numeric: kappa > 2 required");
    HQ v = xi.pure();
    double tv = std::sqrt(v.norm());
    // orthonormal frame (n, e2, e3) of H^- with n along pure(xi)
    HQ n = tv > 0 ? (1 / tv) * v : HQ::i();
    HQ seed = std::abs(n.a[1]) < 0.9 ? HQ::i() : HQ::j();
    HQ e2 = seed - dot(seed, n) * n;
    e2 = (1 / std::sqrt(e2.norm())) * e2;
    HQ e3 = n * e2;  // pure, orthogonal to both

    const double nu = 2 * tv;  // frequency of e(-tr(xi beta)) along n
    const double R = spec.radius > 0 ? spec.radius : std::max(20.0, std::pow(10.0, 8.0 / (kappa - 1)));
    const int nb = spec.nodes.size() > 0 ? spec.nodes[0] : 10;
    const int nth = spec.nodes.size() > 1 ? spec.nodes[1] : kappa + 6;
    const int nphi = 2 * kappa + 2;  // trapezoid is exact on degree <= kappa trig polynomials
    const double width = std::min(0.5, 1.0 / std::max(nu, 1e-9));
    const int dim = kappa + 1;

    Integrand f = [&](const double* x, EndV& out) {
        double b1 = x[0], th = x[1], ph = x[2];
        double w = std::sqrt(1 + b1 * b1);
        double rho = w * std::tan(th);
        double jac = w / (std::cos(th) * std::cos(th)) * rho;  // d rho and the cylinder factor rho
        HQ beta = b1 * n + rho * (std::cos(ph) * e2 + std::sin(ph) * e3);
        double tr = (xi * beta).trace();
        out = (std::exp(cd(0, -2 * kPi * tr)) * jac) * Phi_kappa(HQ(1) + beta, kappa);
    };

    auto level = [&](int mb, int mt, std::size_t* ev) {
        std::vector<Rule> axes{gauss_legendre_panels(-R, R, width, mb), gauss_legendre(mt, 0, kPi / 2),
                               trapezoid_periodic(nphi)};
        return tensor_integrate(axes, f, dim, dim, spec.workers, ev);
    };
    QuadResult res;
    EndV a = level(nb, nth, &res.evaluations);
    EndV b = level(2 * nb, 2 * nth, &res.evaluations);
    res.value = b;
    res.error = (a - b).norm();
    double scale = std::max(b.norm(), 1e-300);
    if (res.error > spec.tolerance * scale)
        throw QuadratureNotConverged("m_kappa_numeric: doubling estimate " + std::to_string(res.error / scale));
    return res;
}

}  // namespace ecr::arch
