#include "ecr/satake.hpp"

#include <cmath>
#include <sstream>

namespace ecr {

// ---------------------------------------------------------------------------
// Laurent2

Laurent2::Laurent2(const ExactRational& c) { add({0, 0}, c); }

Laurent2 Laurent2::monomial(int e1, int e2, const ExactRational& c) {
    Laurent2 r;
    r.add({e1, e2}, c);
    return r;
}

void Laurent2::add(const Key& k, const ExactRational& c) {
    if (c == 0) return;
    auto it = t_.find(k);
    if (it == t_.end()) {
        t_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second == 0) t_.erase(it);
}

ExactRational Laurent2::coeff(int e1, int e2) const {
    auto it = t_.find({e1, e2});
    return it == t_.end() ? ExactRational(0) : it->second;
}

Laurent2& Laurent2::operator+=(const Laurent2& o) {
    for (const auto& [k, c] : o.t_) add(k, c);
    return *this;
}

Laurent2& Laurent2::operator-=(const Laurent2& o) {
    for (const auto& [k, c] : o.t_) add(k, -c);
    return *this;
}

Laurent2 operator*(const Laurent2& a, const Laurent2& b) {
    Laurent2 r;
    for (const auto& [ka, ca] : a.t_)
        for (const auto& [kb, cb] : b.t_) r.add({ka.first + kb.first, ka.second + kb.second}, ca * cb);
    return r;
}

Laurent2 operator*(const ExactRational& s, const Laurent2& a) {
    Laurent2 r;
    for (const auto& [k, c] : a.t_) r.add(k, s * c);
    return r;
}

Laurent2 Laurent2::swapped() const {
    Laurent2 r;
    for (const auto& [k, c] : t_) r.add({k.second, k.first}, c);
    return r;
}

Laurent2 Laurent2::inverted(int var) const {
    Laurent2 r;
    for (const auto& [k, c] : t_) r.add(var == 1 ? Key{-k.first, k.second} : Key{k.first, -k.second}, c);
    return r;
}

Laurent2 Laurent2::derivative(int var) const {
    Laurent2 r;
    for (const auto& [k, c] : t_) {
        if (var == 1)
            r.add({k.first - 1, k.second}, c * k.first);
        else
            r.add({k.first, k.second - 1}, c * k.second);
    }
    return r;
}

ExactRational Laurent2::eval(const ExactRational& x1, const ExactRational& x2) const {
    ExactRational s = 0;
    auto pw = [](const ExactRational& x, int e) -> ExactRational {
        ExactRational r = 1;
        for (int i = 0; i < std::abs(e); ++i) r *= x;
        return e < 0 ? ExactRational(1 / r) : r;
    };
    for (const auto& [k, c] : t_) s += c * pw(x1, k.first) * pw(x2, k.second);
    return s;
}

std::string Laurent2::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        if (k.first) os << "*X1^" << k.first;
        if (k.second) os << "*X2^" << k.second;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Q[sqrt p]

SqrtP& SqrtP::operator+=(const SqrtP& o) {
    if (p == 0) p = o.p;
    a += o.a;
    b += o.b;
    return *this;
}

SqrtP operator*(const SqrtP& x, const SqrtP& y) {
    long p = x.p ? x.p : y.p;
    return {x.a * y.a + ExactRational(p) * x.b * y.b, x.a * y.b + x.b * y.a, p};
}

double SqrtP::value() const { return a.get_d() + b.get_d() * std::sqrt(static_cast<double>(p)); }

std::string SqrtP::str() const {
    std::ostringstream os;
    os << "(" << a.get_str() << " + " << b.get_str() << "*sqrt(" << p << "))";
    return os.str();
}

SqrtP half_power(long p, int e) {
    // p^{e/2}: even e is rational, odd e = p^{(e-1)/2} sqrt p
    if (e % 2 == 0) return SqrtP::rational(p, p_power(p, e / 2));
    int k = (e - 1) / 2;
    if (e < 0) k = -((1 - e) / 2);
    return SqrtP::sqrt_p(p, p_power(p, k));
}

// ---------------------------------------------------------------------------
// Laurent1

Laurent1 Laurent1::constant(long p, const SqrtP& c) { return monomial(p, 0, c); }

Laurent1 Laurent1::monomial(long p, int e, const SqrtP& c) {
    Laurent1 r(p);
    r.add(e, c);
    return r;
}

void Laurent1::add(int e, const SqrtP& c) {
    if (c.is_zero()) return;
    SqrtP& slot = t_[e];
    slot.p = p_;
    slot += c;
    if (slot.is_zero()) t_.erase(e);
}

SqrtP Laurent1::coeff(int e) const {
    auto it = t_.find(e);
    return it == t_.end() ? SqrtP{0, 0, p_} : it->second;
}

Laurent1& Laurent1::operator+=(const Laurent1& o) {
    if (p_ == 0) p_ = o.p_;
    for (const auto& [e, c] : o.t_) add(e, c);
    return *this;
}

Laurent1 operator*(const Laurent1& a, const Laurent1& b) {
    Laurent1 r(a.p_ ? a.p_ : b.p_);
    for (const auto& [ea, ca] : a.t_)
        for (const auto& [eb, cb] : b.t_) r.add(ea + eb, ca * cb);
    return r;
}

Laurent1 operator*(const SqrtP& s, const Laurent1& a) {
    Laurent1 r(a.p_);
    for (const auto& [e, c] : a.t_) r.add(e, s * c);
    return r;
}

Laurent1 Laurent1::inverted() const {
    Laurent1 r(p_);
    for (const auto& [e, c] : t_) r.add(-e, c);
    return r;
}

std::string Laurent1::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        if (e) os << "*T^" << e;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// eigenvalues

namespace {

void levi_check(const CosetRep& rep, long p) {
    const Mat2& A = rep.A;
    if (A(1, 0) != 0 || A(0, 0) != p_power(p, rep.e1) || A(1, 1) != p_power(p, rep.e2))
        throw MissingLeviData("representative " + rep.word + " has no upper-triangular Levi part");
}

}  // namespace

Laurent2 satake_eigenvalue(const CosetTable& t) {
    if (t.ramified()) throw ModelMismatch("satake_eigenvalue: ramified table");
    Laurent2 r;
    for (const auto& rep : t.reps) {
        levi_check(rep, t.p);
        // H: chi1(a1) chi2(a2) |a1|;  G: Xi1(a1) Xi2(a2) |a1|^2 |a2|
        ExactRational w = t.side() == Side::H ? p_power(t.p, -rep.e1) : p_power(t.p, -2 * rep.e1 - rep.e2);
        r += Laurent2::monomial(rep.e1, rep.e2, w);
    }
    return r;
}

Laurent1 satake_eigenvalue_ramified(const CosetTable& t) {
    if (!t.ramified()) throw ModelMismatch("satake_eigenvalue_ramified: split table");
    Laurent1 r(t.p);
    for (const auto& rep : t.reps) {
        // |N(Pi^n)|^{1/2} = p^{-n/2}, |N(Pi^n)|^{3/2} = p^{-3n/2}
        int e = t.side() == Side::H ? -rep.n : -3 * rep.n;
        r += Laurent1::monomial(t.p, rep.n, half_power(t.p, e));
    }
    return r;
}

namespace {

Laurent2 sym1() {
    return Laurent2::monomial(1, 0) + Laurent2::monomial(0, 1) + Laurent2::monomial(-1, 0) + Laurent2::monomial(0, -1);
}

Laurent2 sym2() {
    return Laurent2::monomial(1, 1) + Laurent2::monomial(1, -1) + Laurent2::monomial(-1, 1) +
           Laurent2::monomial(-1, -1);
}

Laurent1 symT(long p) {
    return Laurent1::monomial(p, 1, SqrtP::rational(p, 1)) + Laurent1::monomial(p, -1, SqrtP::rational(p, 1));
}

}  // namespace

Laurent2 eigenvalue_display(TableLabel label, long p) {
    const ExactRational P = p;
    switch (label) {
        case TableLabel::T1H: return P * sym1();
        case TableLabel::T2H: return P * sym2() + Laurent2(2 * P - 2);
        case TableLabel::T1G: return P * P * sym1() + Laurent2(P * P - 1);
        case TableLabel::T2G:
            return P * P * P * sym2() + P * P * (P - 1) * sym1() + Laurent2(2 * P * P * P - 2 * P * P);
        default: throw UnsupportedLabel("eigenvalue_display: ramified label");
    }
}

Laurent1 eigenvalue_display_ramified(TableLabel label, long p) {
    switch (label) {
        case TableLabel::T1H_ram: return half_power(p, 1) * symT(p);
        case TableLabel::T1G_ram:
            return half_power(p, 3) * symT(p) + Laurent1::constant(p, SqrtP::rational(p, p - 1));
        default: throw UnsupportedLabel("eigenvalue_display_ramified: split label");
    }
}

std::string to_string(HeckeLabel l) {
    switch (l) {
        case HeckeLabel::T0H: return "T0H";
        case HeckeLabel::T1H: return "T1H";
        case HeckeLabel::T2H: return "T2H";
        case HeckeLabel::T1G: return "T1G";
        case HeckeLabel::T2G: return "T2G";
    }
    return "?";
}

HeckeElement upsilon_image(const HeckeElement& g, long p, bool ramified) {
    const ExactRational P = p;
    HeckeElement h;
    auto add = [&h](HeckeLabel l, const ExactRational& c) {
        h.terms[l] += c;
        if (h.terms[l] == 0) h.terms.erase(l);
    };
    for (const auto& [l, c] : g.terms) {
        switch (l) {
            case HeckeLabel::T1G:
                add(HeckeLabel::T1H, c * P);
                add(HeckeLabel::T0H, c * (ramified ? ExactRational(P - 1) : ExactRational(P * P - 1)));
                break;
            case HeckeLabel::T2G:
                if (ramified) throw UnsupportedLabel("upsilon_image: no T2G at a ramified prime");
                add(HeckeLabel::T1H, c * (P * P - P));
                add(HeckeLabel::T2H, c * P * P);
                break;
            default: throw UnsupportedLabel("upsilon_image: expected a G-side label, got " + to_string(l));
        }
    }
    return h;
}

Laurent2 eigenvalue_H(const HeckeElement& h, long p) {
    Laurent2 r;
    for (const auto& [l, c] : h.terms) {
        switch (l) {
            case HeckeLabel::T0H: r += Laurent2(c); break;
            case HeckeLabel::T1H: r += c * satake_eigenvalue(coset_table(TableLabel::T1H, p)); break;
            case HeckeLabel::T2H: r += c * satake_eigenvalue(coset_table(TableLabel::T2H, p)); break;
            default: throw UnsupportedLabel("eigenvalue_H: G-side label " + to_string(l));
        }
    }
    return r;
}

Laurent1 eigenvalue_H_ramified(const HeckeElement& h, long p) {
    Laurent1 r(p);
    for (const auto& [l, c] : h.terms) {
        SqrtP s = SqrtP::rational(p, c);
        switch (l) {
            case HeckeLabel::T0H: r += Laurent1::constant(p, s); break;
            case HeckeLabel::T1H: r += s * satake_eigenvalue_ramified(coset_table(TableLabel::T1H_ram, p)); break;
            default: throw UnsupportedLabel("eigenvalue_H_ramified: label " + to_string(l));
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// L-factors

namespace {

template <class C>
QPoly<C> qmul(const QPoly<C>& a, const QPoly<C>& b, const C& zero) {
    QPoly<C> r;
    r.c.assign(a.c.size() + b.c.size() - 1, zero);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

template <class C>
bool qeq(const QPoly<C>& a, const QPoly<C>& b, const C& zero) {
    std::size_t n = std::max(a.c.size(), b.c.size());
    for (std::size_t i = 0; i < n; ++i) {
        const C& x = i < a.c.size() ? a.c[i] : zero;
        const C& y = i < b.c.size() ? b.c[i] : zero;
        if (!(x == y)) return false;
    }
    return true;
}

// 1 - z q
QPoly<Laurent2> linear(const Laurent2& z) { return {{Laurent2(1), ExactRational(-1) * z}}; }

QPoly<Laurent1> linear(long p, const Laurent1& z) {
    return {{Laurent1::constant(p, SqrtP::rational(p, 1)), SqrtP::rational(p, -1) * z}};
}

// 1 - e1 q + (e2 + 2) q^2 - e1 q^3 + q^4: the inverse L-factor written through
// the elementary symmetric sums e1 = sum X^{+-1}, e2 = sum X1^{+-1} X2^{+-1}
QPoly<Laurent2> palindromic(const Laurent2& e1, const Laurent2& e2) {
    Laurent2 m1 = ExactRational(-1) * e1;
    return {{Laurent2(1), m1, e2 + Laurent2(2), m1, Laurent2(1)}};
}

}  // namespace

QPoly<Laurent2> local_l_factor(Side side) {
    QPoly<Laurent2> r{{Laurent2(1)}};
    for (int v = 0; v < 2; ++v)
        for (int s : {1, -1}) r = qmul(r, linear(Laurent2::monomial(v == 0 ? s : 0, v == 1 ? s : 0)), Laurent2());
    if (side == Side::G) r = qmul(r, linear(Laurent2(1)), Laurent2());
    return r;
}

QPoly<Laurent1> local_l_factor_ramified(Side side, long p) {
    const Laurent1 zero(p);
    // chi(Pi)^{+-1} p^{-1/2}
    QPoly<Laurent1> r = qmul(linear(p, Laurent1::monomial(p, 1, half_power(p, -1))),
                             linear(p, Laurent1::monomial(p, -1, half_power(p, -1))), zero);
    if (side == Side::G) r = qmul(r, linear(p, Laurent1::constant(p, SqrtP::rational(p, 1))), zero);
    return r;
}

std::vector<ExactRational> eval_l_factor(const QPoly<Laurent2>& f, const ExactRational& x1, const ExactRational& x2) {
    std::vector<ExactRational> r;
    for (const auto& c : f.c) r.push_back(c.eval(x1, x2));
    return r;
}

bool FunctorialityReport::ok() const {
    for (const auto& l : lines)
        if (!l.ok) return false;
    return true;
}

Laurent2 eigenvalue_jacobian(long p) {
    Laurent2 l1 = satake_eigenvalue(coset_table(TableLabel::T1H, p));
    Laurent2 l2 = satake_eigenvalue(coset_table(TableLabel::T2H, p));
    return l1.derivative(1) * l2.derivative(2) - l1.derivative(2) * l2.derivative(1);
}

FunctorialityReport functoriality_check(long p, bool ramified) {
    FunctorialityReport rep;
    rep.p = p;
    rep.ramified = ramified;
    const ExactRational P = p;
    const std::string tag = "p=" + std::to_string(p);

    if (!ramified) {
        std::map<TableLabel, Laurent2> lam;
        CheckLine disp("eigenvalues from coset sums = displayed formulas");
        CheckLine weyl("Weyl symmetry of eigenvalues");
        for (auto l : {TableLabel::T1H, TableLabel::T2H, TableLabel::T1G, TableLabel::T2G}) {
            Laurent2 v = satake_eigenvalue(coset_table(l, p));
            lam[l] = v;
            disp.record(v == eigenvalue_display(l, p), tag + " " + label_name(l) + " got " + v.str());
            weyl.record(v == v.swapped() && v == v.inverted(1) && v == v.inverted(2), tag + " " + label_name(l));
        }
        rep.lines.push_back(disp);
        rep.lines.push_back(weyl);

        // Xi := chi; Lambda(T_i^G) must equal lambda(upsilon(T_i^G))
        CheckLine ups("Lambda(T_i^G) = lambda(upsilon(T_i^G)) under Xi := chi");
        for (auto [gl, tl] : {std::pair{HeckeLabel::T1G, TableLabel::T1G}, std::pair{HeckeLabel::T2G, TableLabel::T2G}}) {
            Laurent2 via = eigenvalue_H(upsilon_image(HeckeElement::single(gl), p, false), p);
            ups.record(via == lam[tl], tag + " " + to_string(gl) + " transported " + via.str());
        }
        rep.lines.push_back(ups);

        // Rebuild the G-side inverse L-factor from the transported eigenvalues alone and
        // compare with (1 - q) times the H-side product over chi.
        Laurent2 L1 = eigenvalue_H(upsilon_image(HeckeElement::single(HeckeLabel::T1G), p, false), p);
        Laurent2 L2 = eigenvalue_H(upsilon_image(HeckeElement::single(HeckeLabel::T2G), p, false), p);
        ExactRational ip2 = 1 / (P * P), ip3 = ip2 / P;
        Laurent2 E1 = ip2 * (L1 - Laurent2(P * P - 1));
        Laurent2 E2 = ip3 * (L2 - P * P * (P - 1) * E1 - Laurent2(2 * P * P * P - 2 * P * P));
        QPoly<Laurent2> g_side = qmul(palindromic(E1, E2), linear(Laurent2(1)), Laurent2());
        QPoly<Laurent2> h_side = local_l_factor(Side::H);
        QPoly<Laurent2> zeta_h = qmul(h_side, linear(Laurent2(1)), Laurent2());
        CheckLine lf("1/L_p(s, G side) = (1 - p^-s) / L_p(s, H side)");
        lf.record(qeq(g_side, zeta_h, Laurent2()), tag);
        lf.record(qeq(g_side, local_l_factor(Side::G), Laurent2()), tag + " against the Xi-product");
        rep.lines.push_back(lf);

        CheckLine sym("chi-product = palindromic form in e1, e2");
        sym.record(qeq(h_side, palindromic(sym1(), sym2()), Laurent2()), tag);
        rep.lines.push_back(sym);

        CheckLine jac("lambda(T1H), lambda(T2H) algebraically independent (Jacobian != 0)");
        jac.record(!eigenvalue_jacobian(p).is_zero(), tag);
        rep.lines.push_back(jac);
        return rep;
    }

    if (p == 2) throw UnsupportedPrime("ramified functoriality needs odd p");
    Laurent1 lh = satake_eigenvalue_ramified(coset_table(TableLabel::T1H_ram, p));
    Laurent1 lg = satake_eigenvalue_ramified(coset_table(TableLabel::T1G_ram, p));
    CheckLine disp("eigenvalues from coset sums = displayed formulas");
    disp.record(lh == eigenvalue_display_ramified(TableLabel::T1H_ram, p), tag + " T1H got " + lh.str());
    disp.record(lg == eigenvalue_display_ramified(TableLabel::T1G_ram, p), tag + " T1G got " + lg.str());
    rep.lines.push_back(disp);
    CheckLine weyl("Weyl symmetry T <-> T^-1");
    weyl.record(lh == lh.inverted() && lg == lg.inverted(), tag);
    rep.lines.push_back(weyl);

    CheckLine ups("Lambda(T_1^G) = lambda(upsilon(T_1^G)) under Xi := chi");
    Laurent1 via = eigenvalue_H_ramified(upsilon_image(HeckeElement::single(HeckeLabel::T1G), p, true), p);
    ups.record(via == lg, tag + " transported " + via.str());
    rep.lines.push_back(ups);

    // S = Xi(Pi) + Xi(Pi)^{-1} recovered from the transported eigenvalue:
    // S = (Lambda - (p - 1)) p^{-3/2}; 1/L_G = (1 - q)(1 - p^{-1/2} S q + p^{-1} q^2)
    const Laurent1 zero(p);
    Laurent1 S = half_power(p, -3) * (via + Laurent1::constant(p, SqrtP::rational(p, 1 - P)));
    Laurent1 one = Laurent1::constant(p, SqrtP::rational(p, 1));
    QPoly<Laurent1> quad{{one, SqrtP::rational(p, -1) * (half_power(p, -1) * S),
                          Laurent1::constant(p, SqrtP::rational(p, rat(1, p)))}};
    QPoly<Laurent1> g_side = qmul(quad, linear(p, one), zero);
    CheckLine lf("1/L_p(s, G side) = (1 - p^-s) / L_p(s, H side)");
    lf.record(qeq(g_side, local_l_factor_ramified(Side::G, p), zero), tag);
    lf.record(qeq(g_side, qmul(local_l_factor_ramified(Side::H, p), linear(p, one), zero), zero), tag + " via H");
    rep.lines.push_back(lf);
    return rep;
}

}  // namespace ecr
