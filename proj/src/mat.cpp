#include "affinecert/mat.hpp"

#include <sstream>

namespace affinecert {

Mat2 Mat2::sl2(Int m11, Int m12, Int m21, Int m22) {
    Mat2 m(std::move(m11), std::move(m12), std::move(m21), std::move(m22));
    if (m.det() != 1) throw std::invalid_argument("not an SL(2,Z) matrix: det != 1");
    return m;
}

Mat2 Mat2::pow(unsigned long e) const {
    Mat2 acc, base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

AffineElement::AffineElement(Mat2 lin, Vec2 tr) : linear(std::move(lin)), translation(std::move(tr)) {
    if (linear.det() != 1) throw std::invalid_argument("affine element with non-unimodular linear part");
}

AffineElement AffineElement::inverse() const {
    Mat2 inv = linear.inverse_unimodular();
    return AffineElement(inv, Vec2{-(inv.a11 * translation.x + inv.a12 * translation.y),
                                   -(inv.a21 * translation.x + inv.a22 * translation.y)});
}

AffineElement AffineElement::pow(unsigned long e) const {
    AffineElement acc, base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

RatVec2 apply(const AffineElement& g, const RatVec2& p) {
    return RatVec2{Rat(g.linear.a11) * p.x + Rat(g.linear.a12) * p.y + Rat(g.translation.x),
                   Rat(g.linear.a21) * p.x + Rat(g.linear.a22) * p.y + Rat(g.translation.y)};
}

namespace {

// y >= largest singular value iff the shifted characteristic polynomial of
// M^T M and all its derivatives are nonnegative at y^2.
bool at_least_norm_2x2(const Rat& y, const Int& t, const Int& d) {
    Rat y2 = y * y;
    return 2 * y2 >= Rat(t) && y2 * y2 - Rat(t) * y2 + Rat(d) >= 0;
}

bool at_least_norm_3x3(const Rat& y, const Int& c2, const Int& c1, const Int& c0) {
    Rat x = y * y;
    Rat p = x * x * x - Rat(c2) * x * x + Rat(c1) * x - Rat(c0);
    Rat dp = 3 * x * x - 2 * Rat(c2) * x + Rat(c1);
    Rat ddp = 6 * x - 2 * Rat(c2);
    return p >= 0 && dp >= 0 && ddp >= 0;
}

template <typename Pred>
RatInterval bisect_norm(Rat hi0, const Rat& tol, Pred at_least) {
    if (tol <= 0) throw std::invalid_argument("norm tolerance must be positive");
    Rat lo(0), hi = std::move(hi0);
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

}  // namespace

RatInterval op_norm(const Mat2& m, const Rat& tol) {
    Int t = m.a11 * m.a11 + m.a12 * m.a12 + m.a21 * m.a21 + m.a22 * m.a22;
    Int d = m.det() * m.det();
    Int bound = 1;
    for (const Int* e : {&m.a11, &m.a12, &m.a21, &m.a22}) bound += abs(*e);
    return bisect_norm(Rat(bound), tol, [&](const Rat& y) { return at_least_norm_2x2(y, t, d); });
}

RatInterval op_norm_embedded(const AffineElement& g, const Rat& tol) {
    // A = iota(g)^T iota(g), a symmetric positive integer 3x3 matrix.
    const Mat2& m = g.linear;
    const Vec2& v = g.translation;
    Int a[3][3] = {{m.a11, m.a12, v.x}, {m.a21, m.a22, v.y}, {Int(0), Int(0), Int(1)}};
    Int s[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            s[i][j] = 0;
            for (int k = 0; k < 3; ++k) s[i][j] += a[k][i] * a[k][j];
        }
    Int c2 = s[0][0] + s[1][1] + s[2][2];
    Int c1 = s[0][0] * s[1][1] - s[0][1] * s[1][0] + s[0][0] * s[2][2] - s[0][2] * s[2][0] +
             s[1][1] * s[2][2] - s[1][2] * s[2][1];
    Int c0 = s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1]) -
             s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0]) +
             s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0]);
    Int bound = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) bound += abs(a[i][j]);
    return bisect_norm(Rat(bound), tol, [&](const Rat& y) { return at_least_norm_3x3(y, c2, c1, c0); });
}

RatInterval set_norm_linear(const std::vector<AffineElement>& s, const Rat& tol) {
    if (s.empty()) throw std::invalid_argument("norm of empty set");
    RatInterval best = op_norm(s.front().linear, tol);
    for (std::size_t i = 1; i < s.size(); ++i) best = max_iv(best, op_norm(s[i].linear, tol));
    return best;
}

RatInterval set_norm_embedded(const std::vector<AffineElement>& s, const Rat& tol) {
    if (s.empty()) throw std::invalid_argument("norm of empty set");
    RatInterval best = op_norm_embedded(s.front(), tol);
    for (std::size_t i = 1; i < s.size(); ++i) best = max_iv(best, op_norm_embedded(s[i], tol));
    return best;
}

AffineElement parse_affine_literal(const std::string& line) {
    std::string head = line, tail;
    if (auto bar = line.find('|'); bar != std::string::npos) {
        head = line.substr(0, bar);
        tail = line.substr(bar + 1);
    }
    std::istringstream hs(head);
    std::string e11, e12, e21, e22, extra;
    if (!(hs >> e11 >> e12 >> e21 >> e22) || (hs >> extra))
        throw std::invalid_argument("bad matrix literal: " + line);
    Vec2 t;
    if (!tail.empty()) {
        std::istringstream ts(tail);
        std::string tx, ty;
        if (!(ts >> tx >> ty) || (ts >> extra)) throw std::invalid_argument("bad translation literal: " + line);
        t = Vec2{Int(tx), Int(ty)};
    }
    return AffineElement(Mat2::sl2(Int(e11), Int(e12), Int(e21), Int(e22)), t);
}

std::string format_affine_literal(const AffineElement& g) {
    std::ostringstream os;
    os << g.linear.a11 << ' ' << g.linear.a12 << ' ' << g.linear.a21 << ' ' << g.linear.a22 << " | "
       << g.translation.x << ' ' << g.translation.y;
    return os.str();
}

}  // namespace affinecert
