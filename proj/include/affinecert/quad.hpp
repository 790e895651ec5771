#pragma once

#include "affinecert/mat.hpp"
#include "affinecert/rat.hpp"

#include <string>

namespace affinecert {

/// Exact element p + q*sqrt(delta) of Q(sqrt(delta)), delta a non-square
/// positive integer. Pure rationals carry delta = 0 and mix with any field.
class QuadNumber {
  public:
    QuadNumber() : p_(0), q_(0), delta_(0) {}
    QuadNumber(Rat rational) : p_(std::move(rational)), q_(0), delta_(0) {}
    QuadNumber(Rat p, Rat q, Int delta);

    static QuadNumber sqrt_of(Int delta) { return QuadNumber(Rat(0), Rat(1), std::move(delta)); }

    const Rat& p() const { return p_; }
    const Rat& q() const { return q_; }
    const Int& delta() const { return delta_; }
    bool is_rational() const { return q_ == 0; }

    QuadNumber galois() const { return QuadNumber(p_, -q_, delta_); }
    /// x * galois(x), always rational.
    Rat norm_form() const { return p_ * p_ - q_ * q_ * Rat(delta_); }

    int sign() const;  // exact: -1, 0, +1
    QuadNumber operator-() const { return QuadNumber(-p_, -q_, delta_); }
    QuadNumber operator+(const QuadNumber& o) const;
    QuadNumber operator-(const QuadNumber& o) const;
    QuadNumber operator*(const QuadNumber& o) const;
    QuadNumber operator/(const QuadNumber& o) const;
    QuadNumber inverse() const;
    QuadNumber abs() const { return sign() >= 0 ? *this : -*this; }
    QuadNumber pow(unsigned long e) const;

    bool operator==(const QuadNumber& o) const { return (*this - o).is_zero(); }
    bool operator<(const QuadNumber& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const QuadNumber& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const QuadNumber& o) const { return (*this - o).sign() > 0; }
    bool operator>=(const QuadNumber& o) const { return (*this - o).sign() >= 0; }
    bool is_zero() const { return p_ == 0 && q_ == 0; }

    /// Rational enclosure of width <= tol.
    RatInterval enclose(const Rat& tol) const;
    double to_double() const;

    std::string to_string() const;
    static QuadNumber from_string(const std::string& s);

  private:
    Rat p_, q_;
    Int delta_;  // 0 means rational
};

/// Common radicand for mixed-field arithmetic; throws on a genuine mismatch.
Int merge_delta(const Int& a, const Int& b);

struct QuadVec2 {
    QuadNumber x, y;
    bool is_zero() const { return x.is_zero() && y.is_zero(); }
    QuadVec2 operator-(const QuadVec2& o) const { return {x - o.x, y - o.y}; }
    QuadNumber norm_sq() const { return x * x + y * y; }
};

inline QuadVec2 to_quad(const RatVec2& v) { return {QuadNumber(v.x), QuadNumber(v.y)}; }
inline QuadVec2 to_quad(const Vec2& v) { return {QuadNumber(Rat(v.x)), QuadNumber(Rat(v.y))}; }

QuadVec2 mul(const Mat2& m, const QuadVec2& v);

/// 2x2 matrix with entries in one quadratic field.
struct QuadMat2 {
    QuadNumber a11, a12, a21, a22;

    static QuadMat2 from_columns(const QuadVec2& c1, const QuadVec2& c2) {
        return {c1.x, c2.x, c1.y, c2.y};
    }
    static QuadMat2 from_int(const Mat2& m) {
        return {QuadNumber(Rat(m.a11)), QuadNumber(Rat(m.a12)), QuadNumber(Rat(m.a21)), QuadNumber(Rat(m.a22))};
    }

    QuadNumber det() const { return a11 * a22 - a12 * a21; }
    QuadMat2 operator*(const QuadMat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    QuadVec2 operator*(const QuadVec2& v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
    QuadMat2 inverse() const;
};

/// Squared Fubini-Study distance d^2([u],[v]) = (u wedge v)^2 / (|u|^2 |v|^2).
QuadNumber fs_distance_sq(const QuadVec2& u, const QuadVec2& v);

/// Operator-norm enclosure for a matrix with quadratic-field entries,
/// decided by exact sign tests in the field.
RatInterval op_norm_quad(const QuadMat2& m, const Rat& tol);

}  // namespace affinecert
