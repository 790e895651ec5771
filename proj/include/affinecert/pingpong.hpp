#pragma once

#include "affinecert/arith.hpp"
#include "affinecert/quad.hpp"

#include <string>
#include <vector>

namespace affinecert {

/// Affine map with quadratic-field coefficients: x -> linear*x + translation.
struct QuadAffine {
    QuadMat2 linear;
    QuadVec2 translation;

    QuadVec2 operator()(const QuadVec2& x) const {
        QuadVec2 y = linear * x;
        return {y.x + translation.x, y.y + translation.y};
    }
    QuadAffine operator*(const QuadAffine& o) const {
        QuadVec2 t = linear * o.translation;
        return {linear * o.linear, {t.x + translation.x, t.y + translation.y}};
    }
    QuadAffine inverse() const {
        QuadMat2 li = linear.inverse();
        QuadVec2 t = li * translation;
        return {li, {-t.x, -t.y}};
    }
    static QuadAffine from_int(const AffineElement& g) {
        return {QuadMat2::from_int(g.linear), to_quad(g.translation)};
    }
};

/// Ping-pong table parameters, all exact rationals. The derived ratios
/// xi_i = R_i / |v0| and gamma_i = delta_i / |v0| use the rational
/// reference value v0_ref for |phi(b)-phi(a)|.
struct TableParams {
    Rat eps1, eps2, delta1, delta2, R1, R2;
    Rat xi1, xi2, gamma1, gamma2;
    Rat norm_h_upper;  // the ||theta(h')|| upper endpoint the schedule used
    Rat v0_ref;        // rational reference for ||phi(b)-phi(a)|| in the frame
};

/// Schedule of Prop-3.7 type: eps2 = eta/3, gamma2 = eps2, xi2 = 1/eps2,
/// then eps1 = eps2/|h|^2, gamma1 = gamma2/|h|, xi1 = (xi2+1)|h|^2.
/// delta_i and R_i are recovered once v0_ref is supplied.
TableParams schedule_params(const Rat& eta, const Rat& norm_h_upper, const Rat& v0_ref);

/// One checked inequality with exact enclosures of both sides.
struct Inequality {
    std::string name;
    RatInterval lhs, rhs;
    bool strict = true;
    Verdict verdict = Verdict::Indeterminate;

    bool passed() const { return verdict == Verdict::True; }
};

/// Everything the checkers need, expressed in the diagonalizing frame:
/// theta(a) = diag(lambda, 1/lambda) and phi(a) at the origin.
struct FrameGeometry {
    AffineElement a, h, b;  // working coordinates (post conjugation-reduce)
    EigenPair eig;          // of theta(a)
    QuadMat2 basis;         // columns = integral eigenvectors u, v
    QuadMat2 basis_inv;
    QuadAffine frame_map;        // x -> basis^-1 (x - phi(a))
    QuadAffine frame_map_inv;
    QuadMat2 h_linear_frame;     // theta(h') = basis^-1 theta(h) basis
    QuadAffine h_frame;          // h' = g^-1 h g (full affine)
    RatVec2 fix_a, fix_b;        // phi(a), phi(b), original coordinates
    QuadVec2 v0_frame;           // basis^-1 (phi(b) - phi(a))
    QuadVec2 hv1, hv2;           // columns of theta(h')
    RatInterval norm_h_frame;    // ||theta(h')|| enclosure
    QuadNumber min_dist_sq;      // min pairwise d^2 over {e1,e2,hv1,hv2,v0'}
    QuadNumber min_dist_sq_v0;   // min over pairs involving v0'
};

/// Build the diagonal-frame geometry for a pair (a, h), b = h a h^-1.
/// Requires theta(a) semisimple torsion-free and h in general affine position.
FrameGeometry make_frame_geometry(const AffineElement& a, const AffineElement& h, const Rat& tol);

bool in_general_affine_position(const AffineElement& a, const EigenPair& eig, const AffineElement& h);

/// The four conditions of the proper-table lemma.
std::vector<Inequality> check_proper_table(const TableParams& p, const FrameGeometry& g, const Rat& tol);
/// The five player conditions; |a1| means |lambda|^ell.
std::vector<Inequality> check_players(const TableParams& p, const FrameGeometry& g, long ell, const Rat& tol);
/// The two norm-dilation conditions (8*sqrt(2) enclosed rationally).
std::vector<Inequality> check_norm_dilation(const TableParams& p, const FrameGeometry& g, long ell, const Rat& tol);
/// Master growth inequality |lambda|^ell > eta^-4 ||theta(h')||^10.
Inequality check_master(const Rat& eta, const FrameGeometry& g, long ell, const Rat& tol);

struct PipelineConfig {
    int power_budget = 12;
    std::size_t ball_cap = 1000000;
    int conj_depth = 6;
    int conj_beam = 8;
    bool paper_schedule = false;
    long ell_cap = 200000;
    int max_refine_rounds = 60;
    Rat start_tol = Rat(1, 1 << 20);
};

struct HyperbolicResult {
    AffineElement a0;
    SWord word;
    long n1;
    QuadNumber lambda;
};

/// Smallest N1 <= budget with Lambda(theta(S)^N1) > 2 ||theta(S)||, plus witness.
HyperbolicResult find_hyperbolic(const std::vector<AffineElement>& s, const PipelineConfig& cfg);

struct GeneralPositionResult {
    AffineElement h0;
    SWord word;
    long n2;
};

/// Smallest N2 with some h0 in S^N2 in general affine position w.r.t. a0.
GeneralPositionResult find_general_position(const std::vector<AffineElement>& s, const AffineElement& a0,
                                            const PipelineConfig& cfg);

struct SeparationChoice {
    int case_index;  // 1, 2, 3
    AffineElement a, h;
    long n4, n5;
    QuadNumber min_dist_sq;       // minimal pairwise d^2 inside the winning W set
    bool meets_paper_bound;       // min distance >= ||theta(S)||^-N5
    std::vector<QuadNumber> case_minima;  // min d^2 of W1, W2, W3
};

SeparationChoice separation_select(const AffineElement& a0, const AffineElement& h0,
                                   const std::vector<AffineElement>& s, long n1, long n2, const Rat& tol);

struct FreePairCertificate {
    int version = 1;
    std::vector<AffineElement> input_set;  // original S (symmetrized)
    Mat2 conjugator;                       // gamma from conjugation-reduce
    SWord word_a0, word_h0;                // letters index input_set
    int case_index = 0;
    long n1 = 0, n2 = 0, n3 = 0, n4 = 0, n5 = 0;
    long ell = 0, ell_paper = 0;
    bool paper_schedule = false;
    Rat eta;
    Rat tol;  // final refinement tolerance all enclosures used
    TableParams params;
    AffineElement a_work, h_work;    // pair in conjugation-reduced coordinates
    AffineElement a_final, b_final;  // certified generators, original coordinates
    std::vector<Inequality> inequalities;

    bool all_passed() const;
};

/// Full pipeline: conjugation-reduce, hyperbolic search, general position,
/// separation selection, schedule, minimal-ell certification.
FreePairCertificate certify_pair(const std::vector<AffineElement>& s, const PipelineConfig& cfg);

struct LinearPairCertificate {
    int version = 1;
    std::vector<AffineElement> input_set;
    SWord word_a0, word_h0;
    long n1 = 0, n2 = 0, n3 = 0;
    long ell = 0, ell_paper = 0;  // ell_paper = 2*N2 + 4*N3 + 1
    Rat tol;
    AffineElement a_work, h_work;
    AffineElement a_final, b_final;
    std::vector<Inequality> inequalities;

    bool all_passed() const;
};

/// Projective ping-pong on R^2 \ {0} for linear sets (zero translations).
LinearPairCertificate certify_linear_pair(const std::vector<AffineElement>& s_lin, const PipelineConfig& cfg);

/// The Lemma-3.1 containment/disjointness conditions at a given ell,
/// with eps1 = |lambda|^-ell and eps2 = eps1 ||h'||^2.
std::vector<Inequality> check_linear_table(const FrameGeometry& g, long ell, const Rat& tol);

/// Re-run all checkers for a certificate from its raw exact data.
/// Returns the recomputed inequality list (same order as certified).
std::vector<Inequality> reevaluate_certificate(const FreePairCertificate& cert);

AffineElement evaluate_word(const std::vector<AffineElement>& s, const std::vector<int>& letters);

}  // namespace affinecert
