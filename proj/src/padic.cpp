#include "ecr/padic.hpp"

#include <sstream>

namespace ecr {

ExactRational rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    ExactRational r(num, den);
    r.canonicalize();
    return r;
}

ExactRational rat(const std::string& s) {
    ExactRational r(s);
    r.canonicalize();
    return r;
}

ExactRational p_power(long p, long e) {
    mpz_class b;
    mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0) return ExactRational(b);
    return ExactRational(mpz_class(1), b);
}

long val_p(const mpz_class& n, long p) {
    if (n == 0) return kInfiniteValuation;
    mpz_class t = n;
    long v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
        ++v;
    }
    return v;
}

long val_p(const ExactRational& x, long p) {
    if (x == 0) return kInfiniteValuation;
    return val_p(x.get_num(), p) - val_p(x.get_den(), p);
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long smallest_nonresidue(long p) {
    if (p == 2) throw UnsupportedPrime("no quadratic non-residue model for p = 2");
    for (long e = 2; e < p; ++e) {
        bool square = false;
        for (long t = 1; t < p; ++t)
            if ((t * t) % p == e) { square = true; break; }
        if (!square) return e;
    }
    throw std::logic_error("smallest_nonresidue: none found");
}

mpz_class mod_pk(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

static long ipow(long p, int m) {
    long r = 1;
    for (int i = 0; i < m; ++i) r *= p;
    return r;
}

long cyclo_degree(long p, int m) {
    if (m == 0) return 1;
    return (p - 1) * ipow(p, m - 1);
}

CycloNumber::CycloNumber(long p, int level) : p_(p), m_(level), c_(cyclo_degree(p, level), ExactRational(0)) {}

CycloNumber CycloNumber::rational(long p, const ExactRational& c) {
    CycloNumber z(p, 0);
    z.c_[0] = c;
    return z;
}

CycloNumber CycloNumber::root(long p, int level, long j) {
    CycloNumber z(p, level);
    z.add_root(j, ExactRational(1));
    return z;
}

// z^j with j reduced mod p^m; for j >= phi use
// z^{j} = -sum_{i=0}^{p-2} z^{j - (p-1)p^{m-1} + i p^{m-1}}
void CycloNumber::add_root(long j, const ExactRational& c) {
    if (m_ == 0) {
        c_[0] += c;
        return;
    }
    long n = ipow(p_, m_);
    long phi = cyclo_degree(p_, m_);
    long step = n / p_;
    j %= n;
    if (j < 0) j += n;
    if (j < phi) {
        c_[j] += c;
        return;
    }
    long base = j - phi;
    for (long i = 0; i <= p_ - 2; ++i) c_[base + i * step] -= c;
}

CycloNumber CycloNumber::at_level(int m) const {
    if (m < m_) throw std::invalid_argument("CycloNumber::at_level: cannot lower level");
    if (m == m_) return *this;
    CycloNumber z(p_, m);
    long stride = ipow(p_, m - m_);
    for (std::size_t j = 0; j < c_.size(); ++j)
        if (c_[j] != 0) z.add_root(static_cast<long>(j) * stride, c_[j]);
    return z;
}

bool CycloNumber::is_rational() const {
    for (std::size_t j = 1; j < c_.size(); ++j)
        if (c_[j] != 0) return false;
    return true;
}

bool CycloNumber::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

static void align(CycloNumber& a, CycloNumber& b) {
    if (a.prime() == 0) a = CycloNumber(b.prime(), 0);
    if (b.prime() == 0) b = CycloNumber(a.prime(), 0);
    if (a.prime() != b.prime()) throw std::invalid_argument("CycloNumber: prime mismatch");
    int m = std::max(a.level(), b.level());
    a = a.at_level(m);
    b = b.at_level(m);
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& o) {
    CycloNumber b = o;
    align(*this, b);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += b.c_[j];
    return *this;
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& o) {
    CycloNumber b = o;
    align(*this, b);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= b.c_[j];
    return *this;
}

CycloNumber& CycloNumber::operator*=(const ExactRational& s) {
    for (auto& c : c_) c *= s;
    return *this;
}

CycloNumber operator*(const CycloNumber& x, const CycloNumber& y) {
    CycloNumber a = x, b = y;
    align(a, b);
    CycloNumber r(a.p_, a.m_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j] == 0) continue;
            r.add_root(static_cast<long>(i + j), a.c_[i] * b.c_[j]);
        }
    }
    return r;
}

bool operator==(const CycloNumber& x, const CycloNumber& y) {
    CycloNumber a = x, b = y;
    align(a, b);
    return a.c_ == b.c_;
}

std::string CycloNumber::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c_[j].get_str() << ")";
        if (j > 0) os << "*z" << ipow(p_, m_) << "^" << j;
    }
    if (first) os << "0";
    return os.str();
}

std::pair<int, long> psi_exponent(const ExactRational& x, long p) {
    mpz_class den = x.get_den();
    int k = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(p));
        ++k;
    }
    if (den != 1) throw std::invalid_argument("psi_value: denominator not a power of p: " + x.get_str());
    if (k == 0) return {0, 0};
    mpz_class pk = x.get_den();
    mpz_class n = mod_pk(x.get_num(), pk);
    // psi = exp(-2 pi i n / p^k) = zeta^{-n}
    mpz_class j = mod_pk(-n, pk);
    return {k, j.get_si()};
}

CycloNumber psi_value(const ExactRational& x, long p) {
    auto [k, j] = psi_exponent(x, p);
    return CycloNumber::root(p, k, j);
}

ExactRational cyclo_assert_rational(const CycloNumber& z) {
    if (!z.is_rational()) throw NonRationalResult("character sum did not collapse to a rational: " + z.str());
    return z.constant();
}

std::vector<long> residues(long p, int k, bool units_only) {
    if (k < 1) throw std::invalid_argument("enumerate_residues: k >= 1 required");
    long n = ipow(p, k);
    std::vector<long> out;
    out.reserve(static_cast<std::size_t>(n));
    for (long a = 0; a < n; ++a)
        if (!units_only || a % p != 0) out.push_back(a);
    return out;
}

ResidueSystem enumerate_residues(long p, int k, bool units_only) {
    ResidueSystem rs{p, k, units_only, {}};
    for (long a : residues(p, k, units_only)) rs.reps.emplace_back(a);
    return rs;
}

std::string to_string(const ExactRational& x) { return x.get_str(); }

}  // namespace ecr
