#include "ecr/groups.hpp"

#include <sstream>

namespace ecr {

Mat4::Mat4() { e.fill(ExactRational(0)); }

Mat4 Mat4::identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1;
    return m;
}

Mat4 Mat4::blocks(const Mat2& a, const Mat2& b, const Mat2& c, const Mat2& d) {
    Mat4 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            m(i, j) = a(i, j);
            m(i, j + 2) = b(i, j);
            m(i + 2, j) = c(i, j);
            m(i + 2, j + 2) = d(i, j);
        }
    return m;
}

Mat4 Mat4::transpose() const {
    Mat4 t;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t(i, j) = (*this)(j, i);
    return t;
}

Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            if (a(i, k) == 0) continue;
            for (int j = 0; j < 4; ++j)
                if (b(k, j) != 0) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

Mat4 operator*(const ExactRational& s, const Mat4& a) {
    Mat4 r = a;
    for (auto& x : r.e) x *= s;
    return r;
}

bool Mat4::integral(long p) const {
    for (const auto& x : e)
        if (!sigma(x, p)) return false;
    return true;
}

std::string Mat4::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < 4; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < 4; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

int rank_mod_p(const Mat4& m, long p) {
    long a[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const auto& x = m(i, j);
            if (!sigma(x, p)) throw std::domain_error("rank_mod_p: matrix not integral");
            // x = n/d with p not dividing d
            mpz_class pm(p);
            mpz_class dinv;
            mpz_invert(dinv.get_mpz_t(), x.get_den().get_mpz_t(), pm.get_mpz_t());
            mpz_class r = mod_pk(x.get_num() * dinv, pm);
            a[i][j] = r.get_si();
        }
    auto inv = [p](long v) {
        for (long t = 1; t < p; ++t)
            if ((v * t) % p == 1) return t;
        return 0L;
    };
    int rank = 0;
    for (int col = 0; col < 4 && rank < 4; ++col) {
        int piv = -1;
        for (int r = rank; r < 4; ++r)
            if (a[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(a[piv], a[rank]);
        long iv = inv(a[rank][col]);
        for (int j = 0; j < 4; ++j) a[rank][j] = (a[rank][j] * iv) % p;
        for (int r = 0; r < 4; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            long f = a[r][col];
            for (int j = 0; j < 4; ++j) a[r][j] = ((a[r][j] - f * a[rank][j]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

QMat2 operator*(const QMat2& a, const QMat2& b) {
    QMat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return r;
}

QMat2 QMat2::conj_transpose() const {
    QMat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = (*this)(j, i).conj();
    return r;
}

std::string QMat2::str() const {
    return "[[" + e[0].str() + ", " + e[1].str() + "], [" + e[2].str() + ", " + e[3].str() + "]]";
}

const Mat4& form_H() {
    static const Mat4 f = Mat4::blocks(Mat2(), J2(), ExactRational(-1) * J2(), Mat2());
    return f;
}

const Mat4& form_G() {
    static const Mat4 f = Mat4::blocks(Mat2(), Mat2::identity(), ExactRational(-1) * Mat2::identity(), Mat2());
    return f;
}

static QMat2 ram_form(Model m, long p, long eps) {
    auto z = RamifiedQuaternion::scalar(p, eps, 0);
    auto one = RamifiedQuaternion::scalar(p, eps, 1);
    QMat2 f;
    f.e = {z, one, m == Model::RamH ? -one : one, z};
    return f;
}

bool GroupElement::preserves_form() const {
    switch (model) {
        case Model::SplitH: return m.transpose() * form_H() * m == form_H();
        case Model::SplitG: return m.transpose() * form_G() * m == form_G();
        case Model::RamH:
        case Model::RamG: {
            QMat2 f = ram_form(model, q.e[0].prime(), q.e[0].eps());
            QMat2 lhs = q.conj_transpose() * f * q;
            return lhs.e == f.e;
        }
    }
    return false;
}

GroupElement GroupElement::inverse() const {
    GroupElement r = *this;
    switch (model) {
        case Model::SplitH:
            // F_H^2 = 1
            r.m = form_H() * m.transpose() * form_H();
            break;
        case Model::SplitG:
            // F_G^2 = -1
            r.m = ExactRational(-1) * (form_G() * m.transpose() * form_G());
            break;
        case Model::RamH:
        case Model::RamG: {
            QMat2 f = ram_form(model, q.e[0].prime(), q.e[0].eps());
            QMat2 finv = f;
            if (model == Model::RamH)
                for (auto& x : finv.e) x = -x;
            r.q = finv * q.conj_transpose() * f;
            break;
        }
    }
    return r;
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    if (a.model != b.model) throw ModelMismatch("group product across models");
    GroupElement r = a;
    if (a.model == Model::SplitH || a.model == Model::SplitG)
        r.m = a.m * b.m;
    else
        r.q = a.q * b.q;
    return r;
}

std::string GroupElement::str() const {
    if (model == Model::SplitH || model == Model::SplitG) return m.str();
    return q.str();
}

GroupElement n_H(const ExactRational& b, long p) {
    GroupElement g{Model::SplitH, p, Mat4::blocks(Mat2::identity(), b * Mat2::identity(), Mat2(), Mat2::identity()), {}};
    return g;
}

GroupElement d_H(const Mat2& A, long p) {
    if (A.det() == 0) throw InvalidParameter("d_H: singular A");
    Mat2 jinv = ExactRational(-1) * J2();
    Mat2 low = jinv * A.transpose().inverse() * J2();
    return {Model::SplitH, p, Mat4::blocks(A, Mat2(), Mat2(), low), {}};
}

GroupElement nu_H(const ExactRational& a, long p) { return d_H(Mat2(1, a, 0, 1), p); }

GroupElement n_G(const ExactRational& b, const ExactRational& c, const ExactRational& d, long p) {
    return {Model::SplitG, p, Mat4::blocks(Mat2::identity(), Mat2(b, c, c, d), Mat2(), Mat2::identity()), {}};
}

GroupElement d_G(const Mat2& A, long p) {
    if (A.det() == 0) throw InvalidParameter("d_G: singular A");
    return {Model::SplitG, p, Mat4::blocks(A, Mat2(), Mat2(), A.transpose().inverse()), {}};
}

GroupElement nu_G(const ExactRational& a, long p) { return d_G(Mat2(1, a, 0, 1), p); }

GroupElement n_H_ram(const ExactRational& b, long p, long eps) {
    GroupElement g;
    g.model = Model::RamH;
    g.p = p;
    g.q.e = {RamifiedQuaternion::scalar(p, eps, 1), RamifiedQuaternion::scalar(p, eps, b),
             RamifiedQuaternion::scalar(p, eps, 0), RamifiedQuaternion::scalar(p, eps, 1)};
    return g;
}

GroupElement d_H_ram(const RamifiedQuaternion& alpha) {
    GroupElement g;
    g.model = Model::RamH;
    g.p = alpha.prime();
    auto z = RamifiedQuaternion::scalar(alpha.prime(), alpha.eps(), 0);
    g.q.e = {alpha, z, z, alpha.conj().inverse()};
    return g;
}

GroupElement n_G_ram(const RamifiedQuaternion& beta) {
    if (beta.trace() != 0) throw InvalidParameter("n_G: beta must have trace zero");
    GroupElement g;
    g.model = Model::RamG;
    g.p = beta.prime();
    long p = beta.prime(), eps = beta.eps();
    g.q.e = {RamifiedQuaternion::scalar(p, eps, 1), beta, RamifiedQuaternion::scalar(p, eps, 0),
             RamifiedQuaternion::scalar(p, eps, 1)};
    return g;
}

GroupElement d_G_ram(const RamifiedQuaternion& alpha) {
    GroupElement g = d_H_ram(alpha);
    g.model = Model::RamG;
    return g;
}

RamifiedQuaternion pi_power(long p, long eps, long n) {
    auto r = RamifiedQuaternion::scalar(p, eps, 1);
    auto P = RamifiedQuaternion::Pi(p, eps);
    if (n < 0) P = P.inverse();
    for (long i = 0; i < (n < 0 ? -n : n); ++i) r = r * P;
    return r;
}

long ramified_level(const GroupElement& g) {
    if (g.model != Model::RamH && g.model != Model::RamG) throw ModelMismatch("ramified_level: split element");
    static const long shift_G[4] = {0, 1, -1, 0};
    long m = kInfiniteValuation;
    for (int i = 0; i < 4; ++i) {
        long o = g.q.e[i].ord();
        if (o == kInfiniteValuation) continue;
        if (g.model == Model::RamG) o += shift_G[i];
        m = std::min(m, o);
    }
    return m;
}

bool membership(const GroupElement& g, MemberSet set) {
    const bool split = g.model == Model::SplitH || g.model == Model::SplitG;
    if (split) {
        if (!g.preserves_form()) return false;
        switch (set) {
            case MemberSet::U:
                if (g.model != Model::SplitH) throw ModelMismatch("U_p membership needs an H element");
                return g.m.integral(g.p);
            case MemberSet::K:
                if (g.model != Model::SplitG) throw ModelMismatch("K_p membership needs a G element");
                return g.m.integral(g.p);
            case MemberSet::T1:
            case MemberSet::T2: {
                Mat4 pg = ExactRational(g.p) * g.m;
                if (!pg.integral(g.p)) return false;
                return rank_mod_p(pg, g.p) == (set == MemberSet::T1 ? 1 : 2);
            }
        }
        return false;
    }
    if (!g.preserves_form()) return false;
    switch (set) {
        case MemberSet::U:
            if (g.model != Model::RamH) throw ModelMismatch("U_p membership needs an H element");
            return ramified_level(g) >= 0;
        case MemberSet::K:
            if (g.model != Model::RamG) throw ModelMismatch("K_p membership needs a G element");
            return ramified_level(g) >= 0;
        case MemberSet::T1: return ramified_level(g) == -1;
        case MemberSet::T2: throw ModelMismatch("ramified Hecke algebra has only T_1");
    }
    return false;
}

CosetRep make_rep_split_H(const ExactRational& b, const Mat2& nu, int e1, int e2, long p, std::string word) {
    CosetRep r;
    r.side = Side::H;
    r.b = b;
    r.A = nu * Mat2::diag(p_power(p, e1), p_power(p, e2));
    r.e1 = e1;
    r.e2 = e2;
    r.word = std::move(word);
    r.g = n_H(b, p) * d_H(r.A, p);
    return r;
}

CosetRep make_rep_split_G(const Mat2& S, const Mat2& nu, int e1, int e2, long p, std::string word) {
    CosetRep r;
    r.side = Side::G;
    r.S = S;
    r.A = nu * Mat2::diag(p_power(p, e1), p_power(p, e2));
    r.e1 = e1;
    r.e2 = e2;
    r.word = std::move(word);
    r.g = n_G(S(0, 0), S(0, 1), S(1, 1), p) * d_G(r.A, p);
    return r;
}

static CosetRep make_rep_ram_H(const ExactRational& b, int n, long p, long eps, std::string word) {
    CosetRep r;
    r.side = Side::H;
    r.ramified = true;
    r.b = b;
    r.n = n;
    r.beta = RamifiedQuaternion::scalar(p, eps, 0);
    r.word = std::move(word);
    r.g = n_H_ram(b, p, eps) * d_H_ram(pi_power(p, eps, n));
    return r;
}

static CosetRep make_rep_ram_G(const RamifiedQuaternion& beta, int n, std::string word) {
    CosetRep r;
    r.side = Side::G;
    r.ramified = true;
    r.beta = beta;
    r.n = n;
    r.word = std::move(word);
    r.g = n_G_ram(beta) * d_G_ram(pi_power(beta.prime(), beta.eps(), n));
    return r;
}

std::vector<std::array<long, 3>> lambda_set(long p, int i) {
    std::vector<std::array<long, 3>> out;
    for (long b = 0; b < p; ++b)
        for (long c = 0; c < p; ++c)
            for (long d = 0; d < p; ++d) {
                int rank;
                if (b == 0 && c == 0 && d == 0)
                    rank = 0;
                else
                    rank = ((b * d - c * c) % p == 0) ? 1 : 2;
                if (rank == i) out.push_back({b, c, d});
            }
    return out;
}

std::string label_name(TableLabel t) {
    switch (t) {
        case TableLabel::T1H: return "T1H";
        case TableLabel::T2H: return "T2H";
        case TableLabel::T1G: return "T1G";
        case TableLabel::T2G: return "T2G";
        case TableLabel::T1H_ram: return "T1H_ram";
        case TableLabel::T1G_ram: return "T1G_ram";
    }
    return "?";
}

Side CosetTable::side() const {
    return (label == TableLabel::T1H || label == TableLabel::T2H || label == TableLabel::T1H_ram) ? Side::H : Side::G;
}

bool CosetTable::ramified() const { return label == TableLabel::T1H_ram || label == TableLabel::T1G_ram; }

int CosetTable::index() const { return (label == TableLabel::T2H || label == TableLabel::T2G) ? 2 : 1; }

long expected_coset_count(TableLabel label, long p) {
    const long p2 = p * p, p3 = p2 * p, p4 = p3 * p, p6 = p3 * p3;
    switch (label) {
        case TableLabel::T1H: return p2 + p + p + 1;
        case TableLabel::T2H: return p2 + 1 + p2 + 1 + (p - 1) + (p - 1);
        case TableLabel::T1G: return p4 + p3 + (p2 - 1) + p + 1;
        case TableLabel::T2G:
            return p6 + p4 + p2 + 1 + p * p * (p - 1) * p2 + (p - 1) * p * p2 + p * (p - 1) + (p - 1) +
                   (p - 1) * p * p + (p3 - p2);
        case TableLabel::T1H_ram: return p + 1;
        case TableLabel::T1G_ram: return p3 + (p - 1) + 1;
    }
    return 0;
}

namespace {

std::string fmt_word(const std::string& head, std::initializer_list<long> args) {
    std::ostringstream os;
    os << head << "(";
    bool first = true;
    for (long a : args) {
        os << (first ? "" : ",") << a;
        first = false;
    }
    os << ")";
    return os.str();
}

Mat2 nu(const ExactRational& a) { return Mat2(1, a, 0, 1); }

Mat2 sym(const ExactRational& b, const ExactRational& c, const ExactRational& d) { return Mat2(b, c, c, d); }

std::vector<CosetRep> table_T1H(long p) {
    std::vector<CosetRep> out;
    for (long a : residues(p, 1))
        for (long b : residues(p, 1))
            out.push_back(make_rep_split_H(b, nu(a), 1, 0, p, fmt_word("n(b)nu(a)d(p,1)", {b, a})));
    for (long b : residues(p, 1)) out.push_back(make_rep_split_H(b, nu(0), 0, 1, p, fmt_word("n(b)d(1,p)", {b})));
    for (long a : residues(p, 1)) out.push_back(make_rep_split_H(0, nu(a), 0, -1, p, fmt_word("nu(a)d(1,1/p)", {a})));
    out.push_back(make_rep_split_H(0, nu(0), -1, 0, p, "d(1/p,1)"));
    return out;
}

std::vector<CosetRep> table_T2H(long p) {
    std::vector<CosetRep> out;
    const ExactRational ip = rat(1, p);
    for (long a : residues(p, 2)) out.push_back(make_rep_split_H(0, nu(a), 1, -1, p, fmt_word("nu(a)d(p,1/p)", {a})));
    out.push_back(make_rep_split_H(0, nu(0), -1, 1, p, "d(1/p,p)"));
    for (long b : residues(p, 2)) out.push_back(make_rep_split_H(b, nu(0), 1, 1, p, fmt_word("n(b)d(p,p)", {b})));
    out.push_back(make_rep_split_H(0, nu(0), -1, -1, p, "d(1/p,1/p)"));
    for (long a : residues(p, 1, true))
        out.push_back(make_rep_split_H(0, nu(ip * a), 0, 0, p, fmt_word("nu(a/p)", {a})));
    for (long b : residues(p, 1, true))
        out.push_back(make_rep_split_H(ip * b, nu(0), 0, 0, p, fmt_word("n(b/p)", {b})));
    return out;
}

std::vector<CosetRep> table_T1G(long p) {
    std::vector<CosetRep> out;
    const ExactRational ip = rat(1, p);
    for (long a : residues(p, 1))
        for (long c : residues(p, 1))
            for (long b : residues(p, 2))
                out.push_back(make_rep_split_G(sym(b, c, 0), nu(a), 1, 0, p, fmt_word("n(b,c,0)nu(a)d(p,1)", {b, c, a})));
    for (long c : residues(p, 1))
        for (long d : residues(p, 2))
            out.push_back(make_rep_split_G(sym(0, c, d), nu(0), 0, 1, p, fmt_word("n(0,c,d)d(1,p)", {c, d})));
    for (auto [b, c, d] : lambda_set(p, 1))
        out.push_back(make_rep_split_G(sym(ip * b, ip * c, ip * d), nu(0), 0, 0, p, fmt_word("n((b,c,d)/p)", {b, c, d})));
    for (long a : residues(p, 1))
        out.push_back(make_rep_split_G(sym(0, 0, 0), nu(a), 0, -1, p, fmt_word("nu(a)d(1,1/p)", {a})));
    out.push_back(make_rep_split_G(sym(0, 0, 0), nu(0), -1, 0, p, "d(1/p,1)"));
    return out;
}

std::vector<CosetRep> table_T2G(long p) {
    std::vector<CosetRep> out;
    const ExactRational ip = rat(1, p);
    const ExactRational ip2 = rat(1, p * p);
    for (long b : residues(p, 2))
        for (long c : residues(p, 2))
            for (long d : residues(p, 2))
                out.push_back(make_rep_split_G(sym(b, c, d), nu(0), 1, 1, p, fmt_word("n(b,c,d)d(p,p)", {b, c, d})));
    for (long a : residues(p, 2))
        for (long b : residues(p, 2))
            out.push_back(make_rep_split_G(sym(b, 0, 0), nu(a), 1, -1, p, fmt_word("n(b,0,0)nu(a)d(p,1/p)", {b, a})));
    for (long d : residues(p, 2))
        out.push_back(make_rep_split_G(sym(0, 0, d), nu(0), -1, 1, p, fmt_word("n(0,0,d)d(1/p,p)", {d})));
    out.push_back(make_rep_split_G(sym(0, 0, 0), nu(0), -1, -1, p, "d(1/p,1/p)"));
    for (long a : residues(p, 1))
        for (long m : residues(p, 1))
            for (long d : residues(p, 1, true))
                for (long l : residues(p, 2)) {
                    ExactRational b = ip * (a * a * d) + l;
                    ExactRational c = ip * (a * d) + m;
                    out.push_back(make_rep_split_G(sym(b, c, ip * d), nu(a), 1, 0, p,
                                                   fmt_word("n(a^2d/p+l,ad/p+m,d/p)nu(a)d(p,1)", {a, m, d, l})));
                }
    for (long b : residues(p, 1, true))
        for (long c : residues(p, 1))
            for (long d : residues(p, 2))
                out.push_back(make_rep_split_G(sym(ip * b, c, d), nu(0), 0, 1, p, fmt_word("n(b/p,c,d)d(1,p)", {b, c, d})));
    for (long a : residues(p, 1))
        for (long b : residues(p, 1, true))
            out.push_back(make_rep_split_G(sym(ip * b, 0, 0), nu(a), 0, -1, p, fmt_word("n(b/p,0,0)nu(a)d(1,1/p)", {b, a})));
    for (long d : residues(p, 1, true))
        out.push_back(make_rep_split_G(sym(0, 0, ip * d), nu(0), -1, 0, p, fmt_word("n(0,0,d/p)d(1/p,1)", {d})));
    for (long a : residues(p, 1, true))
        for (long c : residues(p, 1))
            for (long m : residues(p, 1))
                out.push_back(make_rep_split_G(sym(ip2 * (a * c + p * m), ip * c, 0), nu(ip * a), 0, 0, p,
                                               fmt_word("n((ac+pm)/p^2,c/p,0)nu(a/p)", {a, c, m})));
    for (auto [b, c, d] : lambda_set(p, 2))
        out.push_back(make_rep_split_G(sym(ip * b, ip * c, ip * d), nu(0), 0, 0, p, fmt_word("n((b,c,d)/p)", {b, c, d})));
    return out;
}

std::vector<CosetRep> table_T1H_ram(long p) {
    const long eps = smallest_nonresidue(p);
    std::vector<CosetRep> out;
    for (long b : residues(p, 1)) out.push_back(make_rep_ram_H(b, 1, p, eps, fmt_word("n(b)d_1", {b})));
    out.push_back(make_rep_ram_H(0, -1, p, eps, "d_-1"));
    return out;
}

std::vector<CosetRep> table_T1G_ram(long p) {
    const long eps = smallest_nonresidue(p);
    std::vector<CosetRep> out;
    for (const auto& beta : enumerate_quotient(QuotientKind::XnModPiXn, p, -1))
        out.push_back(make_rep_ram_G(beta, 1, "n(" + beta.str() + ")d_1"));
    for (const auto& beta : enumerate_quotient(QuotientKind::XnZeroModXm, p, -2, -1))
        out.push_back(make_rep_ram_G(beta, 0, "n(" + beta.str() + ")"));
    out.push_back(make_rep_ram_G(RamifiedQuaternion::scalar(p, eps, 0), -1, "d_-1"));
    return out;
}

}  // namespace

CosetTable coset_table(TableLabel label, long p) {
    if (!is_prime(p)) throw std::invalid_argument("coset_table: p must be prime");
    CosetTable t{label, p, {}};
    switch (label) {
        case TableLabel::T1H: t.reps = table_T1H(p); break;
        case TableLabel::T2H: t.reps = table_T2H(p); break;
        case TableLabel::T1G: t.reps = table_T1G(p); break;
        case TableLabel::T2G: t.reps = table_T2G(p); break;
        case TableLabel::T1H_ram:
            if (p == 2) throw UnsupportedPrime("ramified tables need odd p");
            t.reps = table_T1H_ram(p);
            break;
        case TableLabel::T1G_ram:
            if (p == 2) throw UnsupportedPrime("ramified tables need odd p");
            t.reps = table_T1G_ram(p);
            break;
    }
    return t;
}

CosetVerification verify_coset_table(const CosetTable& t) {
    CosetVerification v;
    v.count = t.reps.size();
    v.expected = static_cast<std::size_t>(expected_coset_count(t.label, t.p));
    if (v.count != v.expected) {
        v.ok = false;
        v.failures.push_back("cardinality " + std::to_string(v.count) + " != " + std::to_string(v.expected));
    }
    const MemberSet target = t.index() == 1 ? MemberSet::T1 : MemberSet::T2;
    const MemberSet compact = t.side() == Side::H ? MemberSet::U : MemberSet::K;
    for (const auto& r : t.reps) {
        if (!membership(r.g, target)) {
            v.ok = false;
            v.failures.push_back("not in " + label_name(t.label) + ": " + r.word);
        }
    }
    std::vector<GroupElement> inv;
    inv.reserve(t.reps.size());
    for (const auto& r : t.reps) inv.push_back(r.g.inverse());

    if (!t.ramified()) {
        // left cosets g_i K = g_j K iff g_i^{-1} g_j integral (form is preserved automatically)
        const long p = t.p;
        for (std::size_t i = 0; i < t.reps.size(); ++i) {
            const Mat4& a = inv[i].m;
            for (std::size_t j = i + 1; j < t.reps.size(); ++j) {
                const Mat4& b = t.reps[j].g.m;
                bool integral = true;
                for (int r = 0; r < 4 && integral; ++r)
                    for (int c = 0; c < 4 && integral; ++c) {
                        ExactRational s = 0;
                        for (int k = 0; k < 4; ++k)
                            if (a(r, k) != 0 && b(k, c) != 0) s += a(r, k) * b(k, c);
                        integral = sigma(s, p);
                    }
                if (integral) {
                    v.ok = false;
                    v.failures.push_back("same coset: " + t.reps[i].word + " ~ " + t.reps[j].word);
                }
            }
        }
    } else {
        for (std::size_t i = 0; i < t.reps.size(); ++i)
            for (std::size_t j = i + 1; j < t.reps.size(); ++j)
                if (membership(inv[i] * t.reps[j].g, compact)) {
                    v.ok = false;
                    v.failures.push_back("same coset: " + t.reps[i].word + " ~ " + t.reps[j].word);
                }
    }
    return v;
}

}  // namespace ecr
