#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace affinecert {

using Int = mpz_class;
using Rat = mpq_class;

/// Tri-state verdict of an interval comparison.
enum class Verdict { True, False, Indeterminate };

std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

/// Canonicalized n/d; the raw two-argument mpq_class constructor does not reduce.
inline Rat make_rat(const Int& n, const Int& d) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

/// Closed rational interval [lo, hi], lo <= hi.
struct RatInterval {
    Rat lo;
    Rat hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rat value) : lo(value), hi(std::move(value)) {}
    RatInterval(Rat l, Rat h);

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }

    RatInterval operator-() const { return RatInterval(-hi, -lo); }
    RatInterval operator+(const RatInterval& o) const { return RatInterval(lo + o.lo, hi + o.hi); }
    RatInterval operator-(const RatInterval& o) const { return RatInterval(lo - o.hi, hi - o.lo); }
    RatInterval operator*(const RatInterval& o) const;
    // Divisor interval must not contain zero.
    RatInterval operator/(const RatInterval& o) const;

    RatInterval pow(unsigned long e) const;
};

Verdict lt(const RatInterval& a, const RatInterval& b);
Verdict le(const RatInterval& a, const RatInterval& b);
inline Verdict gt(const RatInterval& a, const RatInterval& b) { return lt(b, a); }
inline Verdict ge(const RatInterval& a, const RatInterval& b) { return le(b, a); }

RatInterval min_iv(const RatInterval& a, const RatInterval& b);
RatInterval max_iv(const RatInterval& a, const RatInterval& b);

/// Enclosure of sqrt(x) for x >= 0, width <= tol, by exact bisection.
RatInterval sqrt_enclosure(const Rat& x, const Rat& tol);

/// Enclosure of sqrt over an interval of nonnegative values.
RatInterval sqrt_enclosure(const RatInterval& x, const Rat& tol);

Rat pow_rat(const Rat& base, long e);

}  // namespace affinecert
