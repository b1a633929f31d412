#pragma once

#include "ecr/padic.hpp"

#include <array>
#include <string>
#include <vector>

namespace ecr {

// 2x2 matrix over Q; also the split quaternion algebra M_2(Q_p).
struct Mat2 {
    std::array<ExactRational, 4> e{ExactRational(0), ExactRational(0), ExactRational(0), ExactRational(0)};

    Mat2() = default;
    Mat2(ExactRational a, ExactRational b, ExactRational c, ExactRational d) : e{a, b, c, d} {}
    static Mat2 identity() { return {1, 0, 0, 1}; }
    static Mat2 diag(const ExactRational& a, const ExactRational& d) { return {a, 0, 0, d}; }

    ExactRational& operator()(int i, int j) { return e[2 * i + j]; }
    const ExactRational& operator()(int i, int j) const { return e[2 * i + j]; }

    ExactRational det() const { return e[0] * e[3] - e[1] * e[2]; }
    ExactRational trace() const { return e[0] + e[3]; }
    Mat2 transpose() const { return {e[0], e[2], e[1], e[3]}; }
    Mat2 inverse() const;
    // main involution J^{-1} X^t J, J = (0 1; -1 0): the adjugate
    Mat2 conj() const { return {e[3], -e[1], -e[2], e[0]}; }

    friend Mat2 operator*(const Mat2& a, const Mat2& b);
    friend Mat2 operator+(const Mat2& a, const Mat2& b);
    friend Mat2 operator-(const Mat2& a, const Mat2& b);
    friend Mat2 operator*(const ExactRational& s, const Mat2& a);
    friend bool operator==(const Mat2& a, const Mat2& b) { return a.e == b.e; }

    bool integral(long p) const;
    std::string str() const;
};

using SplitQuaternion = Mat2;

inline const Mat2& J2() {
    static const Mat2 j{0, 1, -1, 0};
    return j;
}

// Division algebra over Q_p (p odd): basis 1, u, Pi, uPi with u^2 = eps,
// Pi^2 = p, Pi z = conj(z) Pi for z in Q_p(u).
// x = (a0 + a1 u) + (b0 + b1 u) Pi.
class RamifiedQuaternion {
public:
    RamifiedQuaternion() = default;
    RamifiedQuaternion(long p, long eps, ExactRational a0, ExactRational a1, ExactRational b0, ExactRational b1);
    static RamifiedQuaternion scalar(long p, long eps, const ExactRational& c);
    static RamifiedQuaternion u(long p, long eps);
    static RamifiedQuaternion Pi(long p, long eps);

    long prime() const { return p_; }
    long eps() const { return eps_; }
    const std::array<ExactRational, 4>& coords() const { return c_; }
    const ExactRational& operator[](int i) const { return c_[i]; }

    RamifiedQuaternion conj() const;
    ExactRational norm() const;
    ExactRational trace() const { return 2 * c_[0]; }
    RamifiedQuaternion inverse() const;
    bool is_zero() const;
    long ord() const;  // ord_Pi, kInfiniteValuation at 0
    bool integral() const;  // in the maximal order

    friend RamifiedQuaternion operator+(const RamifiedQuaternion& x, const RamifiedQuaternion& y);
    friend RamifiedQuaternion operator-(const RamifiedQuaternion& x, const RamifiedQuaternion& y);
    friend RamifiedQuaternion operator-(const RamifiedQuaternion& x);
    friend RamifiedQuaternion operator*(const RamifiedQuaternion& x, const RamifiedQuaternion& y);
    friend RamifiedQuaternion operator*(const ExactRational& s, const RamifiedQuaternion& x);
    friend bool operator==(const RamifiedQuaternion& x, const RamifiedQuaternion& y);

    std::string str() const;

private:
    long p_ = 0;
    long eps_ = 0;
    std::array<ExactRational, 4> c_{ExactRational(0), ExactRational(0), ExactRational(0), ExactRational(0)};
};

enum class QuatModel { Split, Ramified };

std::pair<ExactRational, ExactRational> quat_norm_trace(const Mat2& x);
std::pair<ExactRational, ExactRational> quat_norm_trace(const RamifiedQuaternion& x);

long ord_pi(const RamifiedQuaternion& x);

// Quotients of the maximal order and of the trace-zero lattices
// X_n = {beta in B^- : ord_Pi(beta) >= n}.
enum class QuotientKind {
    OmodPiO,       // O / pi O, pi = p
    OmodPO,        // O / Pi O
    XnModXm,       // X_n / X_m, n <= m
    XnModPiXn,     // X_n / pi X_n = X_n / X_{n+2}
    XnZeroModXm,   // X_n^0 / X_m = (X_n \ X_{n+1}) / X_m, m = n+1
    OminusModPiOminus,     // O^- / pi O^-
    OminusModPOminus,      // O^- / (Pi O)^-
    POminusModPiOminus,    // (Pi O)^- / pi O^-
};

std::vector<RamifiedQuaternion> enumerate_quotient(QuotientKind kind, long p, int n = 0, int m = 0);

// ceil(n/2) for possibly negative n
inline long ceil_half(long n) { return n >= 0 ? (n + 1) / 2 : -((-n) / 2); }

// membership in X_n via coordinates
bool in_X(const RamifiedQuaternion& beta, long n);

// L_p / L'_p lattice membership
struct LatticePair {
    QuatModel model;
    // ramified: first coordinate in O, second in P^{-1}; split: both in M_2(Z_p)
    bool contains(const RamifiedQuaternion& x, const RamifiedQuaternion& y) const;
    bool contains(const Mat2& x, const Mat2& y, long p) const;
};

}  // namespace ecr
