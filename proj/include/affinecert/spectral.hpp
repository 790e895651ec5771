#pragma once

#include "affinecert/pingpong.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace affinecert {

/// Element of SA(2, Z/nZ): linear part with det = 1 mod n, translation mod n.
struct QuotientElement {
    std::array<long, 4> lin{1, 0, 0, 1};
    std::array<long, 2> tr{0, 0};
    long n = 0;

    bool operator==(const QuotientElement&) const = default;
    std::array<long, 6> key() const { return {lin[0], lin[1], lin[2], lin[3], tr[0], tr[1]}; }
    bool operator<(const QuotientElement& o) const { return key() < o.key(); }

    QuotientElement operator*(const QuotientElement& o) const;
};

QuotientElement reduce_mod(const AffineElement& g, long n);
/// Componentwise reduction of the multiset S (multiplicities retained for mu_S).
std::vector<QuotientElement> reduce_set(const std::vector<AffineElement>& s, long n);

struct ClosureResult {
    bool surjective = false;
    std::size_t closure_size = 0;
    std::size_t group_order = 0;  // |SA(2,F_p)| = p^3 (p^2 - 1)
};

/// BFS closure of <phi_p(S)> inside SA(2,F_p), compared with the full order.
ClosureResult closure_check(const std::vector<AffineElement>& s, long p);

enum class ActionMode { Plane, Cayley };

/// Averaging operator of the uniform measure on the multiset S, acting on
/// functions over (Z/nZ)^2 (plane) or over all of SA(2,F_p) (cayley).
struct SchreierOperator {
    long modulus = 0;
    ActionMode mode = ActionMode::Plane;
    std::size_t states = 0;
    std::size_t degree = 0;  // multiset size |S|
    // neighbors[x][k] = image of state x under the k-th element of S.
    std::vector<std::vector<std::uint32_t>> neighbors;
    bool connected = false;

    /// y = (1/degree) sum_k P_k x (symmetric for symmetric S).
    void apply(const std::vector<double>& x, std::vector<double>& y) const;
};

SchreierOperator schreier_operator(const std::vector<AffineElement>& s, long n, ActionMode mode);

struct GapEstimate {
    double normEstimate = 0;    // iterative estimate of ||op|| on the mean-zero subspace
    double certifiedUpper = 0;  // Rayleigh + residual bound, clamped to [0,1]
    double kazhdanLower = 0;    // 1 - certifiedUpper, clamped to [0,1]
    double residual = 0;
    long iterations = 0;
    long modulus = 0;
    std::size_t states = 0;
    bool connected = false;
    bool converged = false;
    bool dense_checked = false;
    double dense_norm = 0;  // dense eigensolver cross-check when states <= dense cap
};

/// Deflated power iteration on the square of the operator; dense Eigen
/// cross-check runs automatically for state spaces up to 4000.
GapEstimate operator_norm_est(const SchreierOperator& op, double tol, long maxIter,
                              std::uint64_t seed = 0);

/// Largest |eigenvalue| of the operator on the mean-zero subspace, densely.
double dense_operator_norm(const SchreierOperator& op);

struct HerzReport {
    double plane_norm = 0;   // ||lambda_p^0(mu_S)||, plane action mean-zero
    double cayley_norm = 0;  // ||lambda^0_{SA(2,F_p)}(mu_S)||
    double slack = 0;        // cayley - plane
    bool holds = false;      // plane <= cayley + tol
};

HerzReport herz_compare(const std::vector<AffineElement>& s, long p, double tol);

/// Word length of the certified pair inside the input set S.
long certified_word_length(const FreePairCertificate& cert);

struct KazhdanReport {
    long word_length = 0;   // N with a_final, b_final in S^N
    Rat implied_lower;      // (1/4) / (2N) from the displacement bound
    GapEstimate measured;   // finite-quotient gap for the same S at modulus n
    bool consistent = false;  // measured lower bound >= implied bound
};

KazhdanReport l2_kazhdan_from_action(const FreePairCertificate& cert, long n);

}  // namespace affinecert
