#pragma once

#include "affinecert/pingpong.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace affinecert {

/// Reduced word over {a, a^-1, b, b^-1}, letters encoded 0..3 with
/// inverse(l) = l ^ 1.
struct WordPath {
    std::vector<int> letters;
    AffineElement evaluated;
};

inline int inverse_letter(int l) { return l ^ 1; }
std::string word_to_string(const std::vector<int>& letters);

/// All reduced words of length 1..L, lexicographic within each length.
/// Count is 4 * 3^(L-1) per length. Throws on L above the cap.
std::vector<WordPath> enumerate_reduced(const AffineElement& a, const AffineElement& b, int L,
                                        int cap = 12);

struct FreenessResult {
    bool passed = false;
    std::optional<WordPath> counterexample;  // nonempty reduced word evaluating to 1
    long words_checked = 0;
};

/// Exhaustive identity test on all reduced words of length <= L.
FreenessResult freeness_check(const AffineElement& a, const AffineElement& b, int L);

struct CommutativityCounterexample {
    WordPath w1, w2;
    RatVec2 common_point;
};

struct CommutativityResult {
    bool passed = false;
    std::vector<CommutativityCounterexample> counterexamples;
    long pairs_flagged = 0;  // candidate pairs with intersecting fixed sets
};

/// For every pair of reduced words of length <= L that do not commute,
/// verifies their exact fixed-point sets are disjoint.
CommutativityResult local_commutativity_check(const AffineElement& a, const AffineElement& b, int L);

struct TableViolation {
    std::vector<int> word;
    RatVec2 point;       // original input coordinates
    std::string kind;    // "containment" | "dilation" | "triple-intersection"
};

struct TableSampleReport {
    long checks = 0;
    long exemptions = 0;  // sample inside the repelling set of the last letter
    long triple_checks = 0;
    std::vector<TableViolation> violations;
    bool passed() const { return violations.empty(); }
};

/// Samples the certified ping-pong table: for each reduced word w with
/// |w| <= L and each point x outside U^-_{Last(w)}, asserts
/// w x in U^+_{First(w)} and ||wx - phi(a)|| > ||x - phi(a)|| (squared, exact).
/// Also checks that no sample lies in three distinct repelling sets.
TableSampleReport table_invariant_sample(const FreePairCertificate& cert,
                                         const std::vector<RatVec2>& points, int L);

/// Deterministic sample cloud: (grid x grid) lattice over [-10,10]^2 plus
/// `extra` pseudo-random rationals from a fixed seed.
std::vector<RatVec2> default_sample_points(int grid, long extra, std::uint64_t seed);

}  // namespace affinecert
