#include "affinecert/quad.hpp"

#include <sstream>

namespace affinecert {

namespace {

bool is_square(const Int& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

}  // namespace

QuadNumber::QuadNumber(Rat p, Rat q, Int delta) : p_(std::move(p)), q_(std::move(q)), delta_(std::move(delta)) {
    if (q_ == 0) {
        delta_ = 0;
        return;
    }
    if (delta_ <= 0) throw std::invalid_argument("radicand must be positive");
    if (is_square(delta_)) {
        // Collapse: sqrt(delta) is an integer.
        Int r;
        mpz_sqrt(r.get_mpz_t(), delta_.get_mpz_t());
        p_ += q_ * Rat(r);
        q_ = 0;
        delta_ = 0;
    }
}

Int merge_delta(const Int& a, const Int& b) {
    if (a == 0) return b;
    if (b == 0 || a == b) return a;
    throw std::invalid_argument("mixed incompatible radicands");
}

int QuadNumber::sign() const {
    int sp = sgn(p_), sq = sgn(q_);
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    // Opposite signs: decided by comparing p^2 against q^2 * delta.
    Rat lhs = p_ * p_, rhs = q_ * q_ * Rat(delta_);
    if (lhs == rhs) return 0;  // impossible for non-square delta, kept for totality
    return (lhs > rhs) ? sp : sq;
}

QuadNumber QuadNumber::operator+(const QuadNumber& o) const {
    Int d = merge_delta(delta_, o.delta_);
    return QuadNumber(p_ + o.p_, q_ + o.q_, d);
}

QuadNumber QuadNumber::operator-(const QuadNumber& o) const { return *this + (-o); }

QuadNumber QuadNumber::operator*(const QuadNumber& o) const {
    Int d = merge_delta(delta_, o.delta_);
    return QuadNumber(p_ * o.p_ + q_ * o.q_ * Rat(d), p_ * o.q_ + q_ * o.p_, d);
}

QuadNumber QuadNumber::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    Rat n = norm_form();
    return QuadNumber(p_ / n, -q_ / n, delta_);
}

QuadNumber QuadNumber::operator/(const QuadNumber& o) const { return *this * o.inverse(); }

QuadNumber QuadNumber::pow(unsigned long e) const {
    QuadNumber acc(Rat(1)), base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

RatInterval QuadNumber::enclose(const Rat& tol) const {
    if (tol <= 0) throw std::invalid_argument("enclosure tolerance must be positive");
    if (q_ == 0) return RatInterval(p_, p_);
    Rat aq = ::abs(q_);
    RatInterval root = sqrt_enclosure(Rat(delta_), tol / (2 * aq));
    RatInterval scaled = RatInterval(q_) * root;
    return RatInterval(p_ + scaled.lo, p_ + scaled.hi);
}

double QuadNumber::to_double() const {
    RatInterval iv = enclose(Rat(1, 1000000000));
    return iv.mid().get_d();
}

std::string QuadNumber::to_string() const {
    std::ostringstream os;
    os << rat_to_string(p_) << ';' << rat_to_string(q_) << ';' << delta_;
    return os.str();
}

QuadNumber QuadNumber::from_string(const std::string& s) {
    auto c1 = s.find(';');
    auto c2 = s.find(';', c1 == std::string::npos ? 0 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("bad quadratic-number literal: " + s);
    return QuadNumber(rat_from_string(s.substr(0, c1)), rat_from_string(s.substr(c1 + 1, c2 - c1 - 1)),
                      Int(s.substr(c2 + 1)));
}

QuadVec2 mul(const Mat2& m, const QuadVec2& v) {
    QuadNumber a(Rat(m.a11)), b(Rat(m.a12)), c(Rat(m.a21)), d(Rat(m.a22));
    return {a * v.x + b * v.y, c * v.x + d * v.y};
}

QuadMat2 QuadMat2::inverse() const {
    QuadNumber d = det();
    if (d.is_zero()) throw std::domain_error("singular matrix");
    QuadNumber di = d.inverse();
    return {a22 * di, -(a12 * di), -(a21 * di), a11 * di};
}

QuadNumber fs_distance_sq(const QuadVec2& u, const QuadVec2& v) {
    if (u.is_zero() || v.is_zero()) throw std::invalid_argument("projective distance of zero vector");
    QuadNumber wedge = u.x * v.y - u.y * v.x;
    return (wedge * wedge) / (u.norm_sq() * v.norm_sq());
}

RatInterval op_norm_quad(const QuadMat2& m, const Rat& tol) {
    QuadNumber t = m.a11 * m.a11 + m.a12 * m.a12 + m.a21 * m.a21 + m.a22 * m.a22;
    QuadNumber d2 = m.det() * m.det();
    auto at_least = [&](const Rat& y) {
        QuadNumber y2(y * y);
        return (QuadNumber(Rat(2)) * y2 - t).sign() >= 0 && (y2 * y2 - t * y2 + d2).sign() >= 0;
    };
    Rat hi = 1;
    for (const QuadNumber* e : {&m.a11, &m.a12, &m.a21, &m.a22}) {
        RatInterval iv = e->enclose(Rat(1, 16));
        hi += std::max(::abs(iv.lo), ::abs(iv.hi));
    }
    Rat lo(0);
    while (!at_least(hi)) hi *= 2;
    while (hi - lo > tol) {
        Rat mid = (lo + hi) / 2;
        if (at_least(mid))
            hi = mid;
        else
            lo = mid;
    }
    return RatInterval(lo, hi);
}

}  // namespace affinecert
