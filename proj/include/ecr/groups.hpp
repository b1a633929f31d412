#pragma once

#include "ecr/padic.hpp"
#include "ecr/quat.hpp"

#include <array>
#include <string>
#include <vector>

namespace ecr {

struct Mat4 {
    std::array<ExactRational, 16> e;

    Mat4();
    static Mat4 identity();
    static Mat4 blocks(const Mat2& a, const Mat2& b, const Mat2& c, const Mat2& d);

    ExactRational& operator()(int i, int j) { return e[4 * i + j]; }
    const ExactRational& operator()(int i, int j) const { return e[4 * i + j]; }

    Mat4 transpose() const;
    friend Mat4 operator*(const Mat4& a, const Mat4& b);
    friend Mat4 operator*(const ExactRational& s, const Mat4& a);
    friend bool operator==(const Mat4& a, const Mat4& b) { return a.e == b.e; }

    bool integral(long p) const;
    std::string str() const;
};

// rank over F_p of an integral matrix
int rank_mod_p(const Mat4& m, long p);

enum class Model { SplitH, SplitG, RamH, RamG };
enum class Side { H, G };

struct ModelMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// 2x2 matrix over the ramified quaternion algebra
struct QMat2 {
    std::array<RamifiedQuaternion, 4> e;
    RamifiedQuaternion& operator()(int i, int j) { return e[2 * i + j]; }
    const RamifiedQuaternion& operator()(int i, int j) const { return e[2 * i + j]; }
    friend QMat2 operator*(const QMat2& a, const QMat2& b);
    QMat2 conj_transpose() const;
    std::string str() const;
};

struct GroupElement {
    Model model = Model::SplitH;
    long p = 0;
    Mat4 m;   // split models
    QMat2 q;  // ramified models

    bool preserves_form() const;
    GroupElement inverse() const;  // through the invariant form
    friend GroupElement operator*(const GroupElement& a, const GroupElement& b);
    std::string str() const;
};

const Mat4& form_H();
const Mat4& form_G();

// split generators
GroupElement n_H(const ExactRational& b, long p);
GroupElement d_H(const Mat2& A, long p);
GroupElement nu_H(const ExactRational& a, long p);
GroupElement n_G(const ExactRational& b, const ExactRational& c, const ExactRational& d, long p);
GroupElement d_G(const Mat2& A, long p);
GroupElement nu_G(const ExactRational& a, long p);

// ramified generators
GroupElement n_H_ram(const ExactRational& b, long p, long eps);
GroupElement d_H_ram(const RamifiedQuaternion& alpha);
GroupElement n_G_ram(const RamifiedQuaternion& beta);  // beta trace zero
GroupElement d_G_ram(const RamifiedQuaternion& alpha);
RamifiedQuaternion pi_power(long p, long eps, long n);

enum class MemberSet { U, K, T1, T2 };
bool membership(const GroupElement& g, MemberSet set);
// min ord over entries, weighted for the ramified G lattice; -1 on T_1
long ramified_level(const GroupElement& g);

// A coset representative as a structured word.
//   split H:  n_H(b) d_H(A)          (nu_H folded into A)
//   split G:  n_G(S) d_G(A)          (S symmetric, nu_G folded into A)
//   ram H:    n_H(b) d_H(Pi^n)
//   ram G:    n_G(beta) d_G(Pi^n)
// Levi data (e1, e2): diagonal of the upper triangular A is (p^e1, p^e2);
// ramified: n.
struct CosetRep {
    Side side = Side::H;
    bool ramified = false;
    ExactRational b;
    Mat2 S;
    Mat2 A = Mat2::identity();
    int e1 = 0, e2 = 0;
    RamifiedQuaternion beta;
    int n = 0;
    std::string word;
    GroupElement g;
};

enum class TableLabel { T1H, T2H, T1G, T2G, T1H_ram, T1G_ram };

struct CosetTable {
    TableLabel label;
    long p = 0;
    std::vector<CosetRep> reps;
    Side side() const;
    bool ramified() const;
    int index() const;
};

std::string label_name(TableLabel t);
CosetTable coset_table(TableLabel label, long p);
long expected_coset_count(TableLabel label, long p);

CosetRep make_rep_split_H(const ExactRational& b, const Mat2& nu, int e1, int e2, long p, std::string word);
CosetRep make_rep_split_G(const Mat2& S, const Mat2& nu, int e1, int e2, long p, std::string word);

struct CosetVerification {
    bool ok = true;
    std::size_t count = 0;
    std::size_t expected = 0;
    std::vector<std::string> failures;
};

CosetVerification verify_coset_table(const CosetTable& t);

// Lambda_i: (b,c,d) mod p with rank (b c; c d) = i
std::vector<std::array<long, 3>> lambda_set(long p, int i);

}  // namespace ecr
