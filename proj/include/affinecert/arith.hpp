#pragma once

#include "affinecert/errors.hpp"
#include "affinecert/mat.hpp"
#include "affinecert/quad.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace affinecert {

/// Word over a concrete generating set: letter i refers to S[i].
struct SWord {
    std::vector<int> letters;
    AffineElement value;
};

/// Maximal eigenvalue modulus of an SL(2,Z) matrix.
/// Exactly 1 for |trace| <= 2, else the exact quadratic value (|t|+sqrt(t^2-4))/2.
QuadNumber spectral_radius(const Mat2& m);

/// Breadth-first enumeration of S^k (as affine elements) with exact
/// deduplication. Throws BudgetExceeded when the ball grows past `cap`.
std::vector<SWord> enumerate_ball(const std::vector<AffineElement>& s, int k, std::size_t cap);

struct BallSpectralResult {
    QuadNumber lambda;  // max eigenvalue modulus over theta(S)^k
    SWord witness;
};

/// Lambda(theta(S)^k) with a witness word, ties broken by canonical element order.
BallSpectralResult ball_max_spectral_radius(const std::vector<AffineElement>& s, int k, std::size_t cap);

/// Eigenvector pair of a semisimple a in SL(2,Z) with entries in Z[sqrt(delta)],
/// delta = tr(a)^2 - 4; u belongs to the large eigenvalue lambda (|lambda| > 1).
struct EigenPair {
    QuadVec2 u, v;
    QuadNumber lambda;       // eigenvalue of u, |lambda| > 1
    QuadNumber lambda_conj;  // eigenvalue of v, = 1/lambda
    Int delta;
};

EigenPair eigenvectors_arith(const Mat2& a);

/// Fixed-point set of an affine map: a point, a rational line a*x+b*y=c,
/// the whole plane, or empty.
struct RatLine {
    Rat a, b, c;  // a*x + b*y = c, (a,b) != 0
};
struct WholePlane {};
struct EmptySet {};
using FixedSet = std::variant<RatVec2, RatLine, WholePlane, EmptySet>;

FixedSet fixed_point(const AffineElement& g);

/// Unique fixed point, available iff det(I - theta(g)) != 0.
std::optional<RatVec2> unique_fixed_point(const AffineElement& g);

/// Exact intersection of two fixed-point sets.
FixedSet intersect(const FixedSet& f1, const FixedSet& f2);
bool contains(const FixedSet& f, const RatVec2& p);
bool is_empty(const FixedSet& f);

struct ConjugationReduceResult {
    Mat2 conjugator;
    RatInterval reduced_norm;  // enclosure of ||gamma theta(S) gamma^-1||
};

/// Beam search over SL(2,Z) conjugators minimizing the linear-part norm of S.
/// Never fails: returns the identity when no improvement is found.
ConjugationReduceResult conjugation_reduce(const std::vector<AffineElement>& s, int depth_budget,
                                           int beam_width = 8);

/// Symmetrize: ensure closure under inverse and the identity element.
/// Returns true when the input already had both properties.
bool symmetrize(std::vector<AffineElement>& s);

/// Conjugate every element of S by (gamma, 0).
std::vector<AffineElement> conjugate_set(const std::vector<AffineElement>& s, const Mat2& gamma);

}  // namespace affinecert
