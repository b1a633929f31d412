#pragma once

#include "ecr/closed_forms.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ecr {

struct MissingLeviData : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedLabel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Laurent polynomial in X1, X2 with rational coefficients.
class Laurent2 {
public:
    using Key = std::pair<int, int>;
    Laurent2() = default;
    Laurent2(const ExactRational& c);  // constant
    static Laurent2 monomial(int e1, int e2, const ExactRational& c = 1);

    const std::map<Key, ExactRational>& terms() const { return t_; }
    ExactRational coeff(int e1, int e2) const;
    bool is_zero() const { return t_.empty(); }

    Laurent2& operator+=(const Laurent2& o);
    Laurent2& operator-=(const Laurent2& o);
    friend Laurent2 operator+(Laurent2 a, const Laurent2& b) { return a += b; }
    friend Laurent2 operator-(Laurent2 a, const Laurent2& b) { return a -= b; }
    friend Laurent2 operator*(const Laurent2& a, const Laurent2& b);
    friend Laurent2 operator*(const ExactRational& s, const Laurent2& a);
    friend bool operator==(const Laurent2& a, const Laurent2& b) { return a.t_ == b.t_; }

    Laurent2 swapped() const;         // X1 <-> X2
    Laurent2 inverted(int var) const;  // X_var -> X_var^{-1}, var in {1, 2}
    Laurent2 derivative(int var) const;
    // exact division by a nonzero scalar
    Laurent2 scaled(const ExactRational& s) const { return s * *this; }
    ExactRational eval(const ExactRational& x1, const ExactRational& x2) const;
    std::string str() const;

private:
    void add(const Key& k, const ExactRational& c);
    std::map<Key, ExactRational> t_;
};

// a + b sqrt(p)
struct SqrtP {
    ExactRational a = 0, b = 0;
    long p = 0;
    static SqrtP rational(long p, const ExactRational& a) { return {a, 0, p}; }
    static SqrtP sqrt_p(long p, const ExactRational& b = 1) { return {0, b, p}; }
    bool is_zero() const { return a == 0 && b == 0; }
    SqrtP& operator+=(const SqrtP& o);
    friend SqrtP operator*(const SqrtP& x, const SqrtP& y);
    friend bool operator==(const SqrtP& x, const SqrtP& y) { return x.a == y.a && x.b == y.b; }
    double value() const;
    std::string str() const;
};

// p^{e/2} as an element of Q[sqrt p]
SqrtP half_power(long p, int e);

// Laurent polynomial in T with Q[sqrt p] coefficients.
class Laurent1 {
public:
    Laurent1() = default;
    explicit Laurent1(long p) : p_(p) {}
    static Laurent1 constant(long p, const SqrtP& c);
    static Laurent1 monomial(long p, int e, const SqrtP& c);

    long prime() const { return p_; }
    const std::map<int, SqrtP>& terms() const { return t_; }
    SqrtP coeff(int e) const;
    Laurent1& operator+=(const Laurent1& o);
    friend Laurent1 operator+(Laurent1 a, const Laurent1& b) { return a += b; }
    friend Laurent1 operator*(const Laurent1& a, const Laurent1& b);
    friend Laurent1 operator*(const SqrtP& s, const Laurent1& a);
    friend bool operator==(const Laurent1& a, const Laurent1& b) { return a.t_ == b.t_; }
    Laurent1 inverted() const;  // T -> T^{-1}
    std::string str() const;

private:
    void add(int e, const SqrtP& c);
    long p_ = 0;
    std::map<int, SqrtP> t_;
};

// polynomial in q = p^{-s} with coefficients in a Satake ring
template <class C>
struct QPoly {
    std::vector<C> c;  // c[k] q^k
};

// ---------------------------------------------------------------------------

// sum over representatives of eta(rep) (vol(U) = vol(K) = 1)
Laurent2 satake_eigenvalue(const CosetTable& t);
Laurent1 satake_eigenvalue_ramified(const CosetTable& t);

// the eigenvalue displays, typed in from their closed formulas
Laurent2 eigenvalue_display(TableLabel label, long p);
Laurent1 eigenvalue_display_ramified(TableLabel label, long p);

enum class HeckeLabel { T0H, T1H, T2H, T1G, T2G };
std::string to_string(HeckeLabel l);

struct HeckeElement {
    std::map<HeckeLabel, ExactRational> terms;
    static HeckeElement single(HeckeLabel l, const ExactRational& c = 1) { return {{{l, c}}}; }
};

// the homomorphism H(G,K) -> H(H,U) read off from the commutation relations
HeckeElement upsilon_image(const HeckeElement& g, long p, bool ramified);

// lambda_chi of an H-side element, T0 acting by 1
Laurent2 eigenvalue_H(const HeckeElement& h, long p);
Laurent1 eigenvalue_H_ramified(const HeckeElement& h, long p);

// Inverse local L-factor 1/L_p as a polynomial in q; the Satake variables are X1, X2
// (chi or Xi) resp. T (chi(Pi) or Xi(Pi)).
QPoly<Laurent2> local_l_factor(Side side);
QPoly<Laurent1> local_l_factor_ramified(Side side, long p);
// evaluate the coefficients at numeric Satake data
std::vector<ExactRational> eval_l_factor(const QPoly<Laurent2>& f, const ExactRational& x1, const ExactRational& x2);

struct FunctorialityReport {
    long p = 0;
    bool ramified = false;
    std::vector<CheckLine> lines;
    bool ok() const;
};

// eigenvalue tables vs displays, Weyl symmetry, upsilon transport and the
// induced identity L_p(s, G side) = zeta_p(s) L_p(s, H side)
FunctorialityReport functoriality_check(long p, bool ramified);

// Jacobian determinant of (lambda(T1H), lambda(T2H)) in (X1, X2); nonzero means
// the two eigenvalues are algebraically independent
Laurent2 eigenvalue_jacobian(long p);

}  // namespace ecr
