#pragma once

#include "affinecert/verify.hpp"

#include <array>
#include <optional>
#include <vector>

namespace affinecert {

struct OrbitMember {
    RatVec2 point;
    std::vector<int> word;  // canonical reduced word over {a,a^-1,b,b^-1}, empty = representative
};

struct OrbitRecord {
    RatVec2 representative;
    std::vector<OrbitMember> members;  // BFS order: by length, lexicographic within length
    int radius = 0;
    bool free_up_to_radius = true;
    // Two distinct reduced words reaching the same point (their quotient stabilizes).
    std::optional<std::pair<std::vector<int>, std::vector<int>>> stabilizer_witness;
};

/// Breadth-first orbit transport to word length `radius`; canonical word =
/// first in (length, lexicographic) order. Seeds falling into an already
/// explored orbit are merged into that record.
std::vector<OrbitRecord> orbit_decompose(const AffineElement& a, const AffineElement& b,
                                         const std::vector<RatVec2>& seeds, int radius);

struct PieceAssignment {
    // Pieces indexed by first letter: 0 = W(a) plus the a^-k shift absorbing
    // the representative, 1 = W(a^-1) minus pure powers, 2 = W(b), 3 = W(b^-1).
    std::array<std::vector<RatVec2>, 4> pieces;
    long total_count = 0;
    long interior_count = 0;  // canonical length <= radius-1: both covers decidable
    Rat leakage;              // shell fraction, in [0,1)
    long cover1_exact = 0;    // interior points covered exactly once by A1 u aA2
    long cover2_exact = 0;    // ... by A3 u bA4
    bool covers_verified = false;
};

/// The classical 4-piece decomposition materialized on free orbits, with both
/// transport identities checked exactly on interior points.
PieceAssignment dekker_pieces(const AffineElement& a, const AffineElement& b,
                              const std::vector<OrbitRecord>& orbits);

struct NonamenabilityReport {
    Rat affine_constant{1, 4};  // Corollary: ({a,b},1/4)-non-amenability of the plane action
    Rat linear_constant{1, 2};  // linear-case constant via table disjointness
    Rat displacement_a, displacement_b;  // TV displacement of the sample-uniform measure
    Rat displacement_sup;
    Rat boundary_term;  // shell fraction of the explored ball
    bool bound_holds = false;  // sup >= 1/4 - boundary_term
    int n_step = 0;
    Rat n_step_lhs, n_step_rhs;  // sup over S^N vs N * sup over S
    bool n_step_holds = false;
};

/// Quantitative non-amenability constants evaluated exactly on one explored
/// orbit, plus the N-step displacement identity over the input set S.
NonamenabilityReport nonamenability_report(const AffineElement& a, const AffineElement& b,
                                           const std::vector<AffineElement>& s, int n_step,
                                           const OrbitRecord& orbit);

}  // namespace affinecert
