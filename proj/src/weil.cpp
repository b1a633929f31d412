#include "ecr/weil.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ecr {

bool phi0(const SplitPoint& pt, long p) { return pt.x.integral(p) && pt.y.integral(p); }

bool phi0(const RamifiedPoint& pt) {
    auto Pi = RamifiedQuaternion::Pi(pt.y.prime(), pt.y.eps());
    return pt.x.integral() && (Pi * pt.y).integral();
}

ExactRational xi_form(const Mat2& x, const Mat2& y) { return (x.transpose() * J2() * y).trace(); }

namespace {

ExactRational abs_p_sq(const ExactRational& det, long p) { return p_power(p, -2 * val_p(det, p)); }

CycloNumber eval_split(const std::vector<HLetter>& w, std::size_t i, const Mat2& x, const Mat2& y, long p) {
    if (i == w.size()) return CycloNumber::rational(p, (x.integral(p) && y.integral(p)) ? 1 : 0);
    const HLetter& l = w[i];
    if (l.kind == HLetter::N) {
        CycloNumber rest = eval_split(w, i + 1, x, y, p);
        if (rest.is_zero()) return rest;
        return psi_value(-l.b * xi_form(x, y), p) * rest;
    }
    Mat2 At = l.A.transpose();
    CycloNumber rest = eval_split(w, i + 1, At * x, At * y, p);
    return rest * abs_p_sq(l.A.det(), p);
}

CycloNumber eval_ram(const std::vector<HLetter>& w, std::size_t i, const RamifiedQuaternion& x,
                     const RamifiedQuaternion& y) {
    const long p = x.prime();
    if (i == w.size()) return CycloNumber::rational(p, phi0(RamifiedPoint{x, y}) ? 1 : 0);
    const HLetter& l = w[i];
    if (l.kind == HLetter::N) {
        CycloNumber rest = eval_ram(w, i + 1, x, y);
        if (rest.is_zero()) return rest;
        return psi_value(-l.b * (x.conj() * y).trace(), p) * rest;
    }
    RamifiedQuaternion ab = l.alpha.conj();
    CycloNumber rest = eval_ram(w, i + 1, ab * x, ab * y);
    return rest * abs_p_sq(l.alpha.norm(), p);
}

}  // namespace

CycloNumber weil_eval_H_word(const std::vector<HLetter>& word, const SplitPoint& pt, long p) {
    return eval_split(word, 0, pt.x, pt.y, p);
}

CycloNumber weil_eval_H_word(const std::vector<HLetter>& word, const RamifiedPoint& pt) {
    return eval_ram(word, 0, pt.x, pt.y);
}

std::vector<HLetter> h_word(const CosetRep& rep) {
    if (rep.side != Side::H) throw ModelMismatch("h_word: G-side representative");
    std::vector<HLetter> w;
    if (rep.b != 0) w.push_back({HLetter::N, rep.b, {}, {}});
    if (rep.ramified) {
        const long p = rep.beta.prime(), eps = rep.beta.eps();
        w.push_back({HLetter::D, 0, {}, pi_power(p, eps, rep.n)});
    } else {
        w.push_back({HLetter::D, 0, rep.A, {}});
    }
    return w;
}

CycloNumber weil_eval_H(const CosetRep& rep, const SplitPoint& pt, long p) {
    if (rep.ramified) throw ModelMismatch("weil_eval_H: ramified representative at a split point");
    return weil_eval_H_word(h_word(rep), pt, p);
}

CycloNumber weil_eval_H(const CosetRep& rep, const RamifiedPoint& pt) {
    if (!rep.ramified) throw ModelMismatch("weil_eval_H: split representative at a ramified point");
    return weil_eval_H_word(h_word(rep), pt);
}

CycloNumber weil_eval_G(const GroupElement& g, const SplitPoint& pt) {
    if (g.model != Model::SplitG) throw ModelMismatch("weil_eval_G: expected a split G element");
    const long p = g.p;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 4; ++c) {
            ExactRational s = 0;
            for (int k = 0; k < 2; ++k) {
                s += pt.x(r, k) * g.m(k, c);
                s += pt.y(r, k) * g.m(k + 2, c);
            }
            if (!sigma(s, p)) return CycloNumber::rational(p, 0);
        }
    return CycloNumber::rational(p, 1);
}

CycloNumber weil_eval_G(const GroupElement& g, const RamifiedPoint& pt) {
    if (g.model != Model::RamG) throw ModelMismatch("weil_eval_G: expected a ramified G element");
    RamifiedQuaternion nx = pt.x * g.q(0, 0) + pt.y * g.q(1, 0);
    RamifiedQuaternion ny = pt.x * g.q(0, 1) + pt.y * g.q(1, 1);
    return CycloNumber::rational(pt.x.prime(), phi0(RamifiedPoint{nx, ny}) ? 1 : 0);
}

CycloNumber weil_eval_G(const CosetRep& rep, const SplitPoint& pt, long) {
    if (rep.side != Side::G || rep.ramified) throw ModelMismatch("weil_eval_G: expected a split G representative");
    return weil_eval_G(rep.g, pt);
}

CycloNumber weil_eval_G(const CosetRep& rep, const RamifiedPoint& pt) {
    if (rep.side != Side::G || !rep.ramified) throw ModelMismatch("weil_eval_G: expected a ramified G representative");
    return weil_eval_G(rep.g, pt);
}

JResult j_brute(const CosetTable& table, const SplitPoint& pt) {
    if (table.ramified()) throw ModelMismatch("j_brute: ramified table at a split point");
    JResult r;
    r.side = table.side();
    r.index = table.index();
    r.p = table.p;
    r.raw = CycloNumber::rational(table.p, 0);
    for (const auto& rep : table.reps)
        r.raw += r.side == Side::H ? weil_eval_H(rep, pt, table.p) : weil_eval_G(rep, pt, table.p);
    r.value = cyclo_assert_rational(r.raw);
    r.point = "x=" + pt.x.str() + " y=" + pt.y.str();
    return r;
}

JResult j_brute(const CosetTable& table, const RamifiedPoint& pt) {
    if (!table.ramified()) throw ModelMismatch("j_brute: split table at a ramified point");
    JResult r;
    r.side = table.side();
    r.index = 1;
    r.p = table.p;
    r.raw = CycloNumber::rational(table.p, 0);
    for (const auto& rep : table.reps) r.raw += r.side == Side::H ? weil_eval_H(rep, pt) : weil_eval_G(rep, pt);
    r.value = cyclo_assert_rational(r.raw);
    r.point = "x=" + pt.x.str() + " y=" + pt.y.str();
    return r;
}

SplitPoint diag_point(long p, int alpha, int beta, const Mat2& y) {
    return {Mat2::diag(p_power(p, alpha), p_power(p, beta)), y};
}

static TableLabel split_label(Side side, int i) {
    if (i != 1 && i != 2) throw std::invalid_argument("J index must be 1 or 2");
    if (side == Side::H) return i == 1 ? TableLabel::T1H : TableLabel::T2H;
    return i == 1 ? TableLabel::T1G : TableLabel::T2G;
}

JResult j_brute_unramified(Side side, int i, int alpha, int beta, const Mat2& y, long p) {
    return j_brute(coset_table(split_label(side, i), p), diag_point(p, alpha, beta, y));
}

JResult j_brute_ramified(Side side, const RamifiedQuaternion& x, const RamifiedQuaternion& y) {
    const long p = x.prime();
    if (p == 2) throw UnsupportedPrime("ramified J needs odd p");
    return j_brute(coset_table(side == Side::H ? TableLabel::T1H_ram : TableLabel::T1G_ram, p), RamifiedPoint{x, y});
}

// ---------------------------------------------------------------------------
// compiled evaluator

namespace {

long ipow(long p, int k) {
    long r = 1;
    for (int i = 0; i < k; ++i) r *= p;
    return r;
}

// c * p^shift reduced mod p^F as an integer in [0, p^F); c * p^shift must be p-integral
long to_residue(const ExactRational& c, int shift, long p, int F) {
    if (F == 0 || c == 0) return 0;
    mpz_class mod = ipow(p, F);
    mpz_class num = c.get_num(), den = c.get_den();
    long vd = val_p(den, p);
    mpz_class pd = ipow(p, static_cast<int>(vd));
    mpz_class unit_den = den / pd;
    long e = shift - vd;
    if (e < 0) throw std::logic_error("to_residue: value not integral after scaling");
    mpz_class scaled = num;
    for (long i = 0; i < e && scaled != 0; ++i) scaled *= p;
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), unit_den.get_mpz_t(), mod.get_mpz_t());
    return mod_pk(scaled * inv, mod).get_si();
}

int neg_val(const ExactRational& c, long p) {
    long v = val_p(c, p);
    if (v == kInfiniteValuation || v >= 0) return 0;
    return static_cast<int>(-v);
}

// f(y) = c0 + sum_k c_k y_k, y_k = y(k/2, k%2)
struct RationalForm {
    ExactRational c0 = 0;
    std::array<ExactRational, 4> c{ExactRational(0), ExactRational(0), ExactRational(0), ExactRational(0)};
};

// integer version: f(y) p^F = C0 + sum C_k Y_k (mod p^F) with Y_k = y_k p^D
struct IntForm {
    long c0 = 0;
    std::array<long, 4> c{0, 0, 0, 0};
    int F = 0;
    long mod = 1;
    long residue(const std::array<long, 4>& Y) const {
        if (F == 0) return 0;
        long z = c0 + c[0] * Y[0] + c[1] * Y[1] + c[2] * Y[2] + c[3] * Y[3];
        z %= mod;
        return z < 0 ? z + mod : z;
    }
};

IntForm compile_form(const RationalForm& f, int D, long p) {
    int E = 0;
    for (const auto& ck : f.c) E = std::max(E, neg_val(ck, p));
    int F = std::max({D + E, neg_val(f.c0, p), 0});
    IntForm r;
    r.F = F;
    r.mod = ipow(p, F);
    r.c0 = to_residue(f.c0, F, p, F);
    for (int k = 0; k < 4; ++k) r.c[k] = to_residue(f.c[k], F - D, p, F);
    return r;
}

struct HTerm {
    int wexp;  // weight p^wexp
    std::array<IntForm, 4> support;
    bool has_char = false;
    IntForm chr;
};

struct GTerm {
    std::array<IntForm, 4> support;
};

}  // namespace

UnramifiedJEngine::UnramifiedJEngine(long p) : p_(p) {
    for (auto l : {TableLabel::T1H, TableLabel::T2H, TableLabel::T1G, TableLabel::T2G}) tables_.push_back(coset_table(l, p));
}

const CosetTable& UnramifiedJEngine::table(TableLabel t) const {
    for (const auto& tb : tables_)
        if (tb.label == t) return tb;
    throw std::invalid_argument("UnramifiedJEngine: no such table");
}

std::vector<std::array<ExactRational, 4>> UnramifiedJEngine::evaluate(const Mat2& x, const std::vector<Mat2>& ys) const {
    const long p = p_;
    int D = 0;
    for (const auto& y : ys)
        for (const auto& v : y.e) D = std::max(D, neg_val(v, p));

    std::vector<std::vector<HTerm>> hterms(2);
    std::vector<std::vector<GTerm>> gterms(2);
    int T = 0;
    auto track = [&T](const IntForm& f) { T = std::max(T, f.F); };

    const Mat2 xtJ = x.transpose() * J2();
    for (int t = 0; t < 4; ++t) {
        const CosetTable& tb = tables_[t];
        for (const auto& rep : tb.reps) {
            if (tb.side() == Side::H) {
                Mat2 At = rep.A.transpose();
                if (!(At * x).integral(p)) continue;
                HTerm h;
                h.wexp = -2 * static_cast<int>(val_p(rep.A.det(), p));
                // (A^t y)_{ij} = sum_k At_{ik} y_{kj}
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        RationalForm f;
                        for (int k = 0; k < 2; ++k) f.c[2 * k + j] = At(i, k);
                        h.support[2 * i + j] = compile_form(f, D, p);
                        track(h.support[2 * i + j]);
                    }
                if (rep.b != 0) {
                    // -b Tr(M y) = -b sum_{ij} M_{ij} y_{ji}
                    RationalForm f;
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j) f.c[2 * j + i] = -rep.b * xtJ(i, j);
                    h.has_char = true;
                    h.chr = compile_form(f, D, p);
                    track(h.chr);
                }
                hterms[t].push_back(h);
            } else {
                if (!(x * rep.A).integral(p)) continue;
                Mat2 Ait = rep.A.transpose().inverse();
                Mat2 C = x * rep.S * Ait;
                GTerm g;
                // ((x S + y) A^{-t})_{ij} = C_{ij} + sum_k y_{ik} Ait_{kj}
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        RationalForm f;
                        f.c0 = C(i, j);
                        for (int k = 0; k < 2; ++k) f.c[2 * i + k] = Ait(k, j);
                        g.support[2 * i + j] = compile_form(f, D, p);
                        track(g.support[2 * i + j]);
                    }
                gterms[t - 2].push_back(g);
            }
        }
    }
    // products C_k Y_k must fit comfortably in 64 bits
    {
        long double bound = 5.0L;
        for (int i = 0; i < 2 * T; ++i) bound *= static_cast<long double>(p);
        if (bound > 9.0e18L) throw std::overflow_error("UnramifiedJEngine: grid denominators too large");
    }

    std::vector<std::array<ExactRational, 4>> out;
    out.reserve(ys.size());
    for (const auto& y : ys) {
        std::array<long, 4> Y;
        for (int k = 0; k < 4; ++k) Y[k] = to_residue(y.e[k], D, p, T);
        std::array<ExactRational, 4> res;
        for (int t = 0; t < 2; ++t) {
            // (weight exponent, level, exponent of zeta_{p^level}) -> count
            std::map<std::tuple<int, int, long>, long> acc;
            for (const auto& h : hterms[t]) {
                bool ok = true;
                for (const auto& f : h.support)
                    if (f.residue(Y) != 0) { ok = false; break; }
                if (!ok) continue;
                int level = 0;
                long j = 0;
                if (h.has_char) {
                    long r = h.chr.residue(Y);
                    level = h.chr.F;
                    while (level > 0 && r % p == 0) {
                        r /= p;
                        --level;
                    }
                    long n = ipow(p, level);
                    j = (n - r) % n;  // psi = zeta^{-r}
                }
                acc[{h.wexp, level, j}] += 1;
            }
            CycloNumber sum = CycloNumber::rational(p, 0);
            for (const auto& [key, count] : acc) {
                auto [w, level, j] = key;
                CycloNumber z(p, level);
                z.add_root(j, ExactRational(count) * p_power(p, w));
                sum += z;
            }
            res[t] = cyclo_assert_rational(sum);
        }
        for (int t = 0; t < 2; ++t) {
            long count = 0;
            for (const auto& g : gterms[t]) {
                bool ok = true;
                for (const auto& f : g.support)
                    if (f.residue(Y) != 0) { ok = false; break; }
                if (ok) ++count;
            }
            res[2 + t] = count;
        }
        out.push_back(res);
    }
    return out;
}

ExactRational fourier_lattice_value(const Mat2& x2, long p, int k) {
    int F = 0;
    for (const auto& v : x2.e) F = std::max(F, neg_val(v, p));
    if (F > k) throw std::invalid_argument("fourier_lattice_value: level k too coarse for the sample point");
    std::array<long, 4> X;
    for (int i = 0; i < 4; ++i) X[i] = to_residue(x2.e[i], F, p, F);
    const long mod = ipow(p, F);
    const long n = ipow(p, k);
    std::vector<long> count(static_cast<std::size_t>(mod), 0);
    // tr(conj(y) x) = y4 x1 - y2 x3 - y3 x2 + y1 x4
    for (long y1 = 0; y1 < n; ++y1)
        for (long y2 = 0; y2 < n; ++y2)
            for (long y3 = 0; y3 < n; ++y3)
                for (long y4 = 0; y4 < n; ++y4) {
                    long t = (y4 % mod) * X[0] - (y2 % mod) * X[2] - (y3 % mod) * X[1] + (y1 % mod) * X[3];
                    t %= mod;
                    if (t < 0) t += mod;
                    ++count[static_cast<std::size_t>(t)];
                }
    CycloNumber s(p, F);
    for (long r = 0; r < mod; ++r)
        if (count[static_cast<std::size_t>(r)] != 0) s.add_root((mod - r) % mod, ExactRational(count[static_cast<std::size_t>(r)]));
    s *= p_power(p, -4 * k);
    return cyclo_assert_rational(s);
}

FourierCheck fourier_lattice_check(long p, const std::vector<SplitPoint>& samples, int k) {
    FourierCheck fc;
    for (const auto& s : samples) {
        ++fc.points;
        // I(phi_x1 (x) phi_y)(x1, x2) = char(x1) * int psi(tr(conj(y) x2)) char(y) dy
        ExactRational lhs = (s.x.integral(p) ? 1 : 0) * fourier_lattice_value(s.y, p, k);
        ExactRational rhs = phi0(s, p) ? 1 : 0;
        if (lhs != rhs) {
            fc.ok = false;
            fc.failures.push_back("x=" + s.x.str() + " y=" + s.y.str() + " got " + lhs.get_str());
        }
    }
    return fc;
}

}  // namespace ecr
