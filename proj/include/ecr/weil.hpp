#pragma once

#include "ecr/groups.hpp"

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace ecr {

// (x, y) in Q_p^{(2,4)}, x and y 2x2 blocks
struct SplitPoint {
    Mat2 x, y;
};

// (x, y) in B_p^{(1,2)}
struct RamifiedPoint {
    RamifiedQuaternion x, y;
};

// characteristic function of Z_p^{(2,4)}
bool phi0(const SplitPoint& pt, long p);
// characteristic function of (O, P^{-1})
bool phi0(const RamifiedPoint& pt);

// Tr(x^t J y)
ExactRational xi_form(const Mat2& x, const Mat2& y);

// One letter of an H-side word: n_H(b) or d_H(A) (split), n_H(b) or d_H(alpha) (ramified).
struct HLetter {
    enum Kind { N, D } kind;
    ExactRational b;
    Mat2 A;
    RamifiedQuaternion alpha;
};

// (r'(w_1 ... w_k, 1) phi0)(pt), letters applied outermost first
CycloNumber weil_eval_H_word(const std::vector<HLetter>& word, const SplitPoint& pt, long p);
CycloNumber weil_eval_H_word(const std::vector<HLetter>& word, const RamifiedPoint& pt);
std::vector<HLetter> h_word(const CosetRep& rep);

CycloNumber weil_eval_H(const CosetRep& rep, const SplitPoint& pt, long p);
CycloNumber weil_eval_H(const CosetRep& rep, const RamifiedPoint& pt);
// phi0((x, y) g) for any G element
CycloNumber weil_eval_G(const GroupElement& g, const SplitPoint& pt);
CycloNumber weil_eval_G(const GroupElement& g, const RamifiedPoint& pt);
CycloNumber weil_eval_G(const CosetRep& rep, const SplitPoint& pt, long p);
CycloNumber weil_eval_G(const CosetRep& rep, const RamifiedPoint& pt);

struct JResult {
    CycloNumber raw;
    ExactRational value;
    Side side = Side::H;
    int index = 1;
    long p = 0;
    std::string point;
};

// Direct exact sum over a coset table with measure vol(U) = vol(K) = 1.
JResult j_brute(const CosetTable& table, const SplitPoint& pt);
JResult j_brute(const CosetTable& table, const RamifiedPoint& pt);

SplitPoint diag_point(long p, int alpha, int beta, const Mat2& y);
JResult j_brute_unramified(Side side, int i, int alpha, int beta, const Mat2& y, long p);
JResult j_brute_ramified(Side side, const RamifiedQuaternion& x, const RamifiedQuaternion& y);

// Fast exact evaluator for the four unramified J-functions at many y with one x.
// Every coset word is compiled into integer affine forms in the entries of y;
// the result is identical to j_brute (cross-checked in the tests).
class UnramifiedJEngine {
public:
    explicit UnramifiedJEngine(long p);
    long prime() const { return p_; }
    // values in the order J1H, J2H, J1G, J2G
    std::vector<std::array<ExactRational, 4>> evaluate(const Mat2& x, const std::vector<Mat2>& ys) const;
    const CosetTable& table(TableLabel t) const;

private:
    long p_;
    std::vector<CosetTable> tables_;
};

struct FourierCheck {
    bool ok = true;
    std::vector<std::string> failures;
    std::size_t points = 0;
};

// Riemann-sum partial Fourier transform of char(M_2(Z_p)) at level k:
// int_{M_2(Z_p)} psi(tr(conj(y) x2)) dy  ==  char(x2 in M_2(Z_p))
ExactRational fourier_lattice_value(const Mat2& x2, long p, int k);
FourierCheck fourier_lattice_check(long p, const std::vector<SplitPoint>& samples, int k = 2);

}  // namespace ecr
