#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ecr {

using ExactRational = mpq_class;

// val_p(0) is reported as this sentinel.
inline constexpr long kInfiniteValuation = LONG_MAX;

struct NonRationalResult : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedPrime : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ExactRational rat(long num, long den = 1);
ExactRational rat(const std::string& s);
ExactRational p_power(long p, long e);

long val_p(const mpz_class& n, long p);
long val_p(const ExactRational& x, long p);

// characteristic functions of Z_p and Z_p^x
inline bool sigma(const ExactRational& x, long p) { return val_p(x, p) >= 0; }
inline bool tau(const ExactRational& x, long p) { return val_p(x, p) == 0; }
inline int delta(bool cond) { return cond ? 1 : 0; }

bool is_prime(long n);
long smallest_nonresidue(long p);
mpz_class mod_pk(const mpz_class& a, const mpz_class& m);

// Element of Q(zeta_{p^m}) in the power basis 1, z, ..., z^{phi-1}, z = zeta_{p^m}.
class CycloNumber {
public:
    CycloNumber() = default;
    CycloNumber(long p, int level);
    static CycloNumber rational(long p, const ExactRational& c);
    // zeta_{p^m}^j
    static CycloNumber root(long p, int level, long j);

    long prime() const { return p_; }
    int level() const { return m_; }
    const std::vector<ExactRational>& coeffs() const { return c_; }

    CycloNumber at_level(int m) const;
    bool is_rational() const;
    bool is_zero() const;
    ExactRational constant() const { return c_.empty() ? ExactRational(0) : c_[0]; }

    CycloNumber& operator+=(const CycloNumber& o);
    CycloNumber& operator-=(const CycloNumber& o);
    CycloNumber& operator*=(const ExactRational& s);
    friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
    friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
    friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b);
    friend CycloNumber operator*(CycloNumber a, const ExactRational& s) { return a *= s; }
    friend bool operator==(const CycloNumber& a, const CycloNumber& b);

    // add c * zeta_{p^m}^j without building a temporary
    void add_root(long j, const ExactRational& c);

    std::string str() const;

private:
    long p_ = 0;
    int m_ = 0;
    std::vector<ExactRational> c_{ExactRational(0)};
};

long cyclo_degree(long p, int m);

// psi_p(x) = exp(-2 pi i {x}_p). Throws std::invalid_argument if the
// denominator of x has a prime factor other than p.
CycloNumber psi_value(const ExactRational& x, long p);
// exponent j and level m with psi_p(x) = zeta_{p^m}^j, m minimal
std::pair<int, long> psi_exponent(const ExactRational& x, long p);

ExactRational cyclo_assert_rational(const CycloNumber& z);

struct ResidueSystem {
    long p = 0;
    int k = 0;
    bool units_only = false;
    std::vector<ExactRational> reps;
};

ResidueSystem enumerate_residues(long p, int k, bool units_only = false);
// plain integer version, used by table builders
std::vector<long> residues(long p, int k, bool units_only = false);

std::string to_string(const ExactRational& x);

}  // namespace ecr
