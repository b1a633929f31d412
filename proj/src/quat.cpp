#include "ecr/quat.hpp"

#include <algorithm>
#include <sstream>

namespace ecr {

Mat2 Mat2::inverse() const {
    ExactRational d = det();
    if (d == 0) throw std::domain_error("Mat2::inverse: singular");
    return {e[3] / d, -e[1] / d, -e[2] / d, e[0] / d};
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
            a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]};
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2], a.e[3] + b.e[3]};
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.e[0] - b.e[0], a.e[1] - b.e[1], a.e[2] - b.e[2], a.e[3] - b.e[3]};
}

Mat2 operator*(const ExactRational& s, const Mat2& a) { return {s * a.e[0], s * a.e[1], s * a.e[2], s * a.e[3]}; }

bool Mat2::integral(long p) const {
    return std::all_of(e.begin(), e.end(), [p](const ExactRational& x) { return sigma(x, p); });
}

std::string Mat2::str() const {
    return "[[" + e[0].get_str() + "," + e[1].get_str() + "],[" + e[2].get_str() + "," + e[3].get_str() + "]]";
}

RamifiedQuaternion::RamifiedQuaternion(long p, long eps, ExactRational a0, ExactRational a1, ExactRational b0,
                                       ExactRational b1)
    : p_(p), eps_(eps), c_{std::move(a0), std::move(a1), std::move(b0), std::move(b1)} {
    if (p == 2) throw UnsupportedPrime("ramified quaternion model needs odd p");
}

RamifiedQuaternion RamifiedQuaternion::scalar(long p, long eps, const ExactRational& c) { return {p, eps, c, 0, 0, 0}; }
RamifiedQuaternion RamifiedQuaternion::u(long p, long eps) { return {p, eps, 0, 1, 0, 0}; }
RamifiedQuaternion RamifiedQuaternion::Pi(long p, long eps) { return {p, eps, 0, 0, 1, 0}; }

RamifiedQuaternion RamifiedQuaternion::conj() const { return {p_, eps_, c_[0], -c_[1], -c_[2], -c_[3]}; }

ExactRational RamifiedQuaternion::norm() const {
    return (c_[0] * c_[0] - eps_ * c_[1] * c_[1]) - p_ * (c_[2] * c_[2] - eps_ * c_[3] * c_[3]);
}

RamifiedQuaternion RamifiedQuaternion::inverse() const {
    ExactRational n = norm();
    if (n == 0) throw std::domain_error("RamifiedQuaternion::inverse: zero");
    return ExactRational(1 / n) * conj();
}

bool RamifiedQuaternion::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const ExactRational& x) { return x == 0; });
}

static long vmin(const ExactRational& a, const ExactRational& b, long p) { return std::min(val_p(a, p), val_p(b, p)); }

long RamifiedQuaternion::ord() const {
    long v0 = vmin(c_[0], c_[1], p_);
    long v1 = vmin(c_[2], c_[3], p_);
    long o0 = v0 == kInfiniteValuation ? kInfiniteValuation : 2 * v0;
    long o1 = v1 == kInfiniteValuation ? kInfiniteValuation : 2 * v1 + 1;
    return std::min(o0, o1);
}

bool RamifiedQuaternion::integral() const {
    return std::all_of(c_.begin(), c_.end(), [this](const ExactRational& x) { return sigma(x, p_); });
}

static void same_model(const RamifiedQuaternion& x, const RamifiedQuaternion& y) {
    if (x.prime() != y.prime() || x.eps() != y.eps())
        throw std::invalid_argument("RamifiedQuaternion: model mismatch");
}

RamifiedQuaternion operator+(const RamifiedQuaternion& x, const RamifiedQuaternion& y) {
    same_model(x, y);
    return {x.p_, x.eps_, x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2], x.c_[3] + y.c_[3]};
}

RamifiedQuaternion operator-(const RamifiedQuaternion& x, const RamifiedQuaternion& y) {
    same_model(x, y);
    return {x.p_, x.eps_, x.c_[0] - y.c_[0], x.c_[1] - y.c_[1], x.c_[2] - y.c_[2], x.c_[3] - y.c_[3]};
}

RamifiedQuaternion operator-(const RamifiedQuaternion& x) { return {x.p_, x.eps_, -x.c_[0], -x.c_[1], -x.c_[2], -x.c_[3]}; }

RamifiedQuaternion operator*(const ExactRational& s, const RamifiedQuaternion& x) {
    return {x.p_, x.eps_, s * x.c_[0], s * x.c_[1], s * x.c_[2], s * x.c_[3]};
}

// (z0 + z1 Pi)(w0 + w1 Pi) = z0 w0 + p z1 conj(w1) + (z0 w1 + z1 conj(w0)) Pi
RamifiedQuaternion operator*(const RamifiedQuaternion& x, const RamifiedQuaternion& y) {
    same_model(x, y);
    const long e = x.eps_;
    auto mul = [e](const ExactRational& a, const ExactRational& b, const ExactRational& c, const ExactRational& d) {
        return std::pair<ExactRational, ExactRational>{a * c + e * b * d, a * d + b * c};
    };
    const auto& a = x.c_;
    const auto& b = y.c_;
    auto [r0, r1] = mul(a[0], a[1], b[0], b[1]);
    auto [s0, s1] = mul(a[2], a[3], b[2], -b[3]);
    auto [t0, t1] = mul(a[0], a[1], b[2], b[3]);
    auto [w0, w1] = mul(a[2], a[3], b[0], -b[1]);
    return {x.p_, x.eps_, r0 + x.p_ * s0, r1 + x.p_ * s1, t0 + w0, t1 + w1};
}

bool operator==(const RamifiedQuaternion& x, const RamifiedQuaternion& y) {
    return x.p_ == y.p_ && x.eps_ == y.eps_ && x.c_ == y.c_;
}

std::string RamifiedQuaternion::str() const {
    std::ostringstream os;
    os << "(" << c_[0].get_str() << " + " << c_[1].get_str() << "u) + (" << c_[2].get_str() << " + "
       << c_[3].get_str() << "u)Pi";
    return os.str();
}

std::pair<ExactRational, ExactRational> quat_norm_trace(const Mat2& x) { return {x.det(), x.trace()}; }
std::pair<ExactRational, ExactRational> quat_norm_trace(const RamifiedQuaternion& x) { return {x.norm(), x.trace()}; }

long ord_pi(const RamifiedQuaternion& x) { return x.ord(); }

bool in_X(const RamifiedQuaternion& beta, long n) {
    if (beta[0] != 0) return false;
    return beta.ord() >= n;
}

namespace {

long ipow(long p, long k) {
    long r = 1;
    for (long i = 0; i < k; ++i) r *= p;
    return r;
}

// coordinate ranges [lo, hi): value p^lo * t, t mod p^{hi-lo}
std::vector<ExactRational> coord_reps(long p, long lo, long hi) {
    std::vector<ExactRational> out;
    if (hi <= lo) {
        out.emplace_back(0);
        return out;
    }
    ExactRational s = p_power(p, lo);
    for (long t = 0; t < ipow(p, hi - lo); ++t) out.emplace_back(s * t);
    return out;
}

std::vector<RamifiedQuaternion> product(long p, long eps, const std::vector<ExactRational>& a0,
                                        const std::vector<ExactRational>& a1, const std::vector<ExactRational>& b0,
                                        const std::vector<ExactRational>& b1) {
    std::vector<RamifiedQuaternion> out;
    out.reserve(a0.size() * a1.size() * b0.size() * b1.size());
    for (const auto& w : a0)
        for (const auto& x : a1)
            for (const auto& y : b0)
                for (const auto& z : b1) out.emplace_back(p, eps, w, x, y, z);
    return out;
}

// X_n / X_m: a1 from ceil(n/2) to ceil(m/2), b's from ceil((n-1)/2) to ceil((m-1)/2)
std::vector<RamifiedQuaternion> x_quotient(long p, long eps, long n, long m) {
    std::vector<ExactRational> zero{ExactRational(0)};
    auto a1 = coord_reps(p, ceil_half(n), ceil_half(m));
    auto b = coord_reps(p, ceil_half(n - 1), ceil_half(m - 1));
    return product(p, eps, zero, a1, b, b);
}

}  // namespace

std::vector<RamifiedQuaternion> enumerate_quotient(QuotientKind kind, long p, int n, int m) {
    if (p == 2) throw UnsupportedPrime("enumerate_quotient: ramified model needs odd p");
    const long eps = smallest_nonresidue(p);
    std::vector<ExactRational> zero{ExactRational(0)};
    switch (kind) {
        case QuotientKind::OmodPiO: {
            auto r = coord_reps(p, 0, 1);
            return product(p, eps, r, r, r, r);
        }
        case QuotientKind::OmodPO: {
            auto r = coord_reps(p, 0, 1);
            return product(p, eps, r, r, zero, zero);
        }
        case QuotientKind::XnModXm:
            if (n > m) throw std::invalid_argument("enumerate_quotient: need n <= m");
            return x_quotient(p, eps, n, m);
        case QuotientKind::XnModPiXn:
            return x_quotient(p, eps, n, n + 2);
        case QuotientKind::XnZeroModXm: {
            if (m != n + 1) throw std::invalid_argument("enumerate_quotient: X_n^0 / X_m needs m = n + 1");
            std::vector<RamifiedQuaternion> out;
            for (auto& b : x_quotient(p, eps, n, m))
                if (!in_X(b, m)) out.push_back(b);
            return out;
        }
        case QuotientKind::OminusModPiOminus:
            return x_quotient(p, eps, 0, 2);
        case QuotientKind::OminusModPOminus:
            return x_quotient(p, eps, 0, 1);
        case QuotientKind::POminusModPiOminus:
            return x_quotient(p, eps, 1, 2);
    }
    throw std::invalid_argument("enumerate_quotient: unknown kind");
}

bool LatticePair::contains(const RamifiedQuaternion& x, const RamifiedQuaternion& y) const {
    return x.integral() && (RamifiedQuaternion::Pi(y.prime(), y.eps()) * y).integral();
}

bool LatticePair::contains(const Mat2& x, const Mat2& y, long p) const { return x.integral(p) && y.integral(p); }

}  // namespace ecr
