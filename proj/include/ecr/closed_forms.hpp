#pragma once

#include "ecr/weil.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ecr {

// Extra integrality factor attached to a bracket.
//   Skew:  sigma(p^{-1} y2 - y3)
//   Diff:  sigma(p^s (y2 - y3))
//   Det:   sigma(p^s det y)
struct Guard {
    enum Kind { Skew, Diff, Det } kind;
    int s = 0;
};

// coeff * [i1,i2,i3,i4](y) * guards, [i](y) = prod sigma(p^{-i_k} y_k)
struct BracketTerm {
    std::array<int, 4> idx{0, 0, 0, 0};
    ExactRational coeff = 1;
    std::vector<Guard> guards;
};

ExactRational bracket_eval(const BracketTerm& t, const Mat2& y, long p);
ExactRational bracket_sum(const std::vector<BracketTerm>& terms, const Mat2& y, long p);
std::string to_string(const BracketTerm& t);

// Literal: the displays exactly as printed.
// Corrected: the case alpha >= beta >= 1 of J_2^G drops the repeated
// [-1,-1,-1,-1] term, which the summation of the ten partial sums does not produce.
enum class Transcription { Literal, Corrected };

// Seven-case dispatch, alpha >= beta.
int j_case(int alpha, int beta);
std::vector<BracketTerm> j_closed_terms(Side side, int i, int alpha, int beta, long p,
                                        Transcription tr = Transcription::Corrected);
ExactRational j_closed_unramified(Side side, int i, int alpha, int beta, const Mat2& y, long p,
                                  Transcription tr = Transcription::Corrected);

// Ramified case split on ord_Pi(x) in {<=-2, -1, 0, >=1}.
ExactRational j_closed_ramified(Side side, const RamifiedQuaternion& x, const RamifiedQuaternion& y);

// ---------------------------------------------------------------------------
// evaluation grids

struct UnramifiedGridPoint {
    int alpha = 0, beta = 0;
    Mat2 y;
};

// fixed unit used by the grids: not 1 mod p (3 for p = 2, which is not 1 mod 4)
long grid_unit(long p);
// y matrices drawn from {0, 1, eps_u, p^-2, p^-1, p, p^2, p^-1 unit, mixed}, with forced
// y2 = y3 collisions (mod p^k) and near-singular det y in part of the sample
std::vector<Mat2> y_grid(long p, std::size_t count, std::uint64_t seed);
// all (alpha, beta) in {-2..2}^2 with alpha >= beta, count y values each
std::vector<UnramifiedGridPoint> unramified_grid(long p, std::size_t per_pair, std::uint64_t seed);

struct RamifiedGridPoint {
    RamifiedQuaternion x, y;
};
// ord_Pi(x) in {-3..2}; y over Pi^k * (unit-ish) representatives, k in {-3..2}
std::vector<RamifiedGridPoint> ramified_grid(long p, std::size_t per_ord, std::uint64_t seed);

// ---------------------------------------------------------------------------
// verification reports

struct CheckLine {
    CheckLine() = default;
    CheckLine(std::string n) : name(std::move(n)) {}
    std::string name;
    bool ok = true;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;
    void record(bool good, const std::string& what);
};

// Helper identities on the line and on 2x2 matrices, at one prime.
std::vector<CheckLine> helper_identity_suite(long p, std::uint64_t seed = 1);
// Residue-sum identities over B^- quotients at a ramified prime.
std::vector<CheckLine> ramified_residue_suite(long p, std::uint64_t seed = 1);

struct EcrReport {
    long p = 0;
    std::size_t points = 0;
    CheckLine brute_vs_closed[4];       // J1H, J2H, J1G, J2G
    CheckLine relation_brute[2];        // J1G, J2G identities on the brute path
    CheckLine relation_closed[2];       // same on the closed path
    CheckLine literal_vs_brute[4];      // transcription flags for the literal displays
    std::vector<std::string> literal_cases;  // "J2G case 7" etc. where the literal display disagrees
    bool ok() const;
};

EcrReport ecr_check_unramified(long p, const std::vector<UnramifiedGridPoint>& grid);

// Every stride-th grid point re-evaluated through the direct coset sum j_brute and
// compared with the compiled engine, for all four J-functions.
CheckLine engine_recheck(long p, const std::vector<UnramifiedGridPoint>& grid, std::size_t stride);

struct EcrRamifiedReport {
    long p = 0;
    std::size_t points = 0;
    CheckLine brute_vs_closed[2];  // J^H, J^G
    CheckLine relation_brute, relation_closed;
    bool ok() const;
};

EcrRamifiedReport ecr_check_ramified(long p, const std::vector<RamifiedGridPoint>& grid);

}  // namespace ecr
