#pragma once

#include "affinecert/rat.hpp"

#include <array>
#include <compare>
#include <string>
#include <vector>

namespace affinecert {

struct Vec2 {
    Int x{0};
    Int y{0};

    bool operator==(const Vec2&) const = default;
};

/// Integer 2x2 matrix. Group-element constructors enforce det = 1.
struct Mat2 {
    Int a11{1}, a12{0}, a21{0}, a22{1};

    Mat2() = default;
    Mat2(Int m11, Int m12, Int m21, Int m22)
        : a11(std::move(m11)), a12(std::move(m12)), a21(std::move(m21)), a22(std::move(m22)) {}

    static Mat2 identity() { return Mat2(); }
    /// Checked constructor for SL(2,Z) elements.
    static Mat2 sl2(Int m11, Int m12, Int m21, Int m22);

    Int det() const { return a11 * a22 - a12 * a21; }
    Int trace() const { return a11 + a22; }
    bool is_identity() const { return a11 == 1 && a12 == 0 && a21 == 0 && a22 == 1; }

    Mat2 operator*(const Mat2& o) const {
        return Mat2(a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                    a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22);
    }
    Vec2 operator*(const Vec2& v) const { return Vec2{a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }

    Mat2 transpose() const { return Mat2(a11, a21, a12, a22); }
    /// Inverse, valid only when det = 1.
    Mat2 inverse_unimodular() const { return Mat2(a22, -a12, -a21, a11); }
    Mat2 pow(unsigned long e) const;

    bool operator==(const Mat2&) const = default;
    std::weak_ordering operator<=>(const Mat2&) const = default;
};

/// Element of SA(2,Z): x -> linear*x + translation, det(linear) = 1.
struct AffineElement {
    Mat2 linear;
    Vec2 translation;

    AffineElement() = default;
    AffineElement(Mat2 lin, Vec2 tr);

    static AffineElement identity() { return AffineElement(); }
    bool is_identity() const { return linear.is_identity() && translation == Vec2{}; }

    AffineElement operator*(const AffineElement& o) const {
        return AffineElement(linear * o.linear,
                             Vec2{linear.a11 * o.translation.x + linear.a12 * o.translation.y + translation.x,
                                  linear.a21 * o.translation.x + linear.a22 * o.translation.y + translation.y});
    }
    AffineElement inverse() const;
    AffineElement pow(unsigned long e) const;

    /// Canonical key: the six entries of the 3x3 embedding that can vary.
    std::array<Int, 6> key() const { return {linear.a11, linear.a12, linear.a21, linear.a22, translation.x, translation.y}; }

    bool operator==(const AffineElement&) const = default;
    std::weak_ordering operator<=>(const AffineElement& o) const { return key() <=> o.key(); }
};

struct RatVec2 {
    Rat x{0};
    Rat y{0};
    bool operator==(const RatVec2&) const = default;
};

/// Apply an affine element to an exact rational point.
RatVec2 apply(const AffineElement& g, const RatVec2& p);

/// Operator-norm enclosure of an integer 2x2 matrix, width <= tol.
/// Endpoints are exact rationals; computed by bisection on the
/// characteristic polynomial of M^T M.
RatInterval op_norm(const Mat2& m, const Rat& tol);

/// Operator-norm enclosure of the 3x3 embedding iota(g).
RatInterval op_norm_embedded(const AffineElement& g, const Rat& tol);

/// max over S of the chosen norm enclosure.
RatInterval set_norm_linear(const std::vector<AffineElement>& s, const Rat& tol);
RatInterval set_norm_embedded(const std::vector<AffineElement>& s, const Rat& tol);

/// Text literal "a11 a12 a21 a22 | tx ty" (pure SL2 when the tail is omitted).
AffineElement parse_affine_literal(const std::string& line);
std::string format_affine_literal(const AffineElement& g);

}  // namespace affinecert
