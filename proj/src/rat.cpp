#include "affinecert/rat.hpp"

#include <utility>

namespace affinecert {

std::string rat_to_string(const Rat& r) {
    Rat c(r);
    c.canonicalize();
    return c.get_str();
}

Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

RatInterval::RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("interval endpoints out of order");
}

RatInterval RatInterval::operator*(const RatInterval& o) const {
    Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    Rat mn = std::min(std::min(a, b), std::min(c, d));
    Rat mx = std::max(std::max(a, b), std::max(c, d));
    return RatInterval(mn, mx);
}

RatInterval RatInterval::operator/(const RatInterval& o) const {
    if (o.lo <= 0 && o.hi >= 0) throw std::domain_error("interval division by interval containing zero");
    Rat a = lo / o.lo, b = lo / o.hi, c = hi / o.lo, d = hi / o.hi;
    Rat mn = std::min(std::min(a, b), std::min(c, d));
    Rat mx = std::max(std::max(a, b), std::max(c, d));
    return RatInterval(mn, mx);
}

RatInterval RatInterval::pow(unsigned long e) const {
    RatInterval acc(Rat(1));
    RatInterval base = *this;
    unsigned long k = e;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

Verdict lt(const RatInterval& a, const RatInterval& b) {
    if (a.hi < b.lo) return Verdict::True;
    if (a.lo >= b.hi) return Verdict::False;
    return Verdict::Indeterminate;
}

Verdict le(const RatInterval& a, const RatInterval& b) {
    if (a.hi <= b.lo) return Verdict::True;
    if (a.lo > b.hi) return Verdict::False;
    return Verdict::Indeterminate;
}

RatInterval min_iv(const RatInterval& a, const RatInterval& b) {
    return RatInterval(std::min(a.lo, b.lo), std::min(a.hi, b.hi));
}

RatInterval max_iv(const RatInterval& a, const RatInterval& b) {
    return RatInterval(std::max(a.lo, b.lo), std::max(a.hi, b.hi));
}

RatInterval sqrt_enclosure(const Rat& x, const Rat& tol) {
    if (x < 0) throw std::domain_error("sqrt of negative rational");
    if (tol <= 0) throw std::invalid_argument("sqrt tolerance must be positive");
    if (x == 0) return RatInterval(Rat(0), Rat(0));
    // Integer-sqrt seed on floor(x), then bisect.
    Rat lo(0), hi;
    if (x >= 1) {
        Int fl = x.get_num() / x.get_den();
        Int s;
        mpz_sqrt(s.get_mpz_t(), fl.get_mpz_t());
        lo = Rat(s);
        hi = Rat(s + 1);
        if (hi * hi < x) hi = x;  // cannot happen for x >= 1, kept as guard
    } else {
        hi = 1;
    }
    while (hi * hi < x) hi *= 2;
    while (lo * lo > x) lo /= 2;
    while (hi - lo > tol) {
        Rat mid = (lo + hi) / 2;
        if (mid * mid >= x)
            hi = mid;
        else
            lo = mid;
    }
    return RatInterval(lo, hi);
}

RatInterval sqrt_enclosure(const RatInterval& x, const Rat& tol) {
    if (x.lo < 0) throw std::domain_error("sqrt of interval with negative lower endpoint");
    return RatInterval(sqrt_enclosure(x.lo, tol).lo, sqrt_enclosure(x.hi, tol).hi);
}

Rat pow_rat(const Rat& base, long e) {
    Rat acc(1), b = base;
    bool inv = e < 0;
    unsigned long k = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    while (k > 0) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    if (inv) acc = Rat(1) / acc;
    return acc;
}

}  // namespace affinecert
