#include "affinecert/arith.hpp"

#include <algorithm>
#include <map>

namespace affinecert {

QuadNumber spectral_radius(const Mat2& m) {
    if (m.det() != 1) throw std::invalid_argument("spectral_radius requires det = 1");
    Int t = m.trace();
    Int at = abs(t);
    if (at <= 2) return QuadNumber(Rat(1));
    return QuadNumber(make_rat(at, 2), Rat(1, 2), t * t - 4);
}

std::vector<SWord> enumerate_ball(const std::vector<AffineElement>& s, int k, std::size_t cap) {
    if (k < 0) throw std::invalid_argument("negative ball radius");
    std::map<std::array<Int, 6>, std::size_t> seen;
    std::vector<SWord> ball;
    ball.push_back(SWord{{}, AffineElement::identity()});
    seen.emplace(ball[0].value.key(), 0);
    std::vector<std::size_t> frontier{0};
    for (int depth = 1; depth <= k; ++depth) {
        std::vector<std::size_t> next;
        for (std::size_t idx : frontier) {
            SWord base = ball[idx];
            for (int li = 0; li < static_cast<int>(s.size()); ++li) {
                AffineElement g = base.value * s[li];
                auto key = g.key();
                if (seen.contains(key)) continue;
                if (ball.size() >= cap)
                    throw BudgetExceeded("ball enumeration exceeded element cap", depth - 1);
                SWord w;
                w.letters = base.letters;
                w.letters.push_back(li);
                w.value = std::move(g);
                seen.emplace(key, ball.size());
                next.push_back(ball.size());
                ball.push_back(std::move(w));
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;  // ball saturated
    }
    return ball;
}

BallSpectralResult ball_max_spectral_radius(const std::vector<AffineElement>& s, int k, std::size_t cap) {
    auto ball = enumerate_ball(s, k, cap);
    // Lambda is monotone in |trace| past 2, so the argmax is decided on traces.
    const SWord* best = &ball.front();
    Int best_tr = abs(best->value.linear.trace());
    for (const SWord& w : ball) {
        Int at = abs(w.value.linear.trace());
        if (at > best_tr || (at == best_tr && w.value.key() < best->value.key())) {
            best = &w;
            best_tr = at;
        }
    }
    return BallSpectralResult{spectral_radius(best->value.linear), *best};
}

EigenPair eigenvectors_arith(const Mat2& a) {
    Int t = a.trace();
    if (abs(t) <= 2) throw std::invalid_argument("eigenvectors_arith requires |trace| >= 3");
    if (a.det() != 1) throw std::invalid_argument("eigenvectors_arith requires det = 1");
    Int delta = t * t - 4;
    // lambda is the eigenvalue of largest modulus; its Galois conjugate is 1/lambda.
    QuadNumber lambda = (t > 0) ? QuadNumber(make_rat(t, 2), Rat(1, 2), delta)
                                : QuadNumber(make_rat(t, 2), Rat(-1, 2), delta);
    QuadNumber lambda_inv = lambda.galois();
    EigenPair out;
    out.lambda = lambda;
    out.lambda_conj = lambda_inv;
    out.delta = delta;
    QuadNumber two(Rat(2));
    if (a.a12 != 0) {
        out.u = {two * QuadNumber(Rat(a.a12)), two * (lambda - QuadNumber(Rat(a.a11)))};
        out.v = {two * QuadNumber(Rat(a.a12)), two * (lambda_inv - QuadNumber(Rat(a.a11)))};
    } else if (a.a21 != 0) {
        out.u = {two * (lambda - QuadNumber(Rat(a.a22))), two * QuadNumber(Rat(a.a21))};
        out.v = {two * (lambda_inv - QuadNumber(Rat(a.a22))), two * QuadNumber(Rat(a.a21))};
    } else {
        out.u = {two, QuadNumber(Rat(0))};
        out.v = {QuadNumber(Rat(0)), two};
    }
    // The eigen-equation must hold exactly; anything else is a construction bug.
    QuadVec2 au = mul(a, out.u), av = mul(a, out.v);
    if (!(au.x == lambda * out.u.x) || !(au.y == lambda * out.u.y) ||
        !(av.x == lambda_inv * out.v.x) || !(av.y == lambda_inv * out.v.y))
        throw std::logic_error("eigenvector construction failed exact verification");
    return out;
}

FixedSet fixed_point(const AffineElement& g) {
    // Solve (I - theta) x = tau exactly over Q.
    Int m11 = 1 - g.linear.a11, m12 = -g.linear.a12;
    Int m21 = -g.linear.a21, m22 = 1 - g.linear.a22;
    Int det = m11 * m22 - m12 * m21;
    const Int& tx = g.translation.x;
    const Int& ty = g.translation.y;
    if (det != 0) {
        return RatVec2{make_rat(m22 * tx - m12 * ty, det), make_rat(m11 * ty - m21 * tx, det)};
    }
    bool row1 = (m11 != 0 || m12 != 0);
    bool row2 = (m21 != 0 || m22 != 0);
    if (!row1 && !row2) {
        if (tx == 0 && ty == 0) return WholePlane{};
        return EmptySet{};
    }
    // Rank one: consistent iff the two equations are proportional.
    if (row1 && row2) {
        // rows proportional because det = 0; check the right-hand side follows suit
        if (m11 * ty != m21 * tx || m12 * ty != m22 * tx) return EmptySet{};
        return RatLine{Rat(m11), Rat(m12), Rat(tx)};
    }
    if (row1) {
        if (ty != 0) return EmptySet{};
        return RatLine{Rat(m11), Rat(m12), Rat(tx)};
    }
    if (tx != 0) return EmptySet{};
    return RatLine{Rat(m21), Rat(m22), Rat(ty)};
}

std::optional<RatVec2> unique_fixed_point(const AffineElement& g) {
    FixedSet f = fixed_point(g);
    if (auto* p = std::get_if<RatVec2>(&f)) return *p;
    return std::nullopt;
}

bool contains(const FixedSet& f, const RatVec2& p) {
    if (std::holds_alternative<WholePlane>(f)) return true;
    if (std::holds_alternative<EmptySet>(f)) return false;
    if (auto* q = std::get_if<RatVec2>(&f)) return *q == p;
    const auto& l = std::get<RatLine>(f);
    return l.a * p.x + l.b * p.y == l.c;
}

bool is_empty(const FixedSet& f) { return std::holds_alternative<EmptySet>(f); }

FixedSet intersect(const FixedSet& f1, const FixedSet& f2) {
    if (std::holds_alternative<WholePlane>(f1)) return f2;
    if (std::holds_alternative<WholePlane>(f2)) return f1;
    if (std::holds_alternative<EmptySet>(f1) || std::holds_alternative<EmptySet>(f2)) return EmptySet{};
    if (auto* p = std::get_if<RatVec2>(&f1)) return contains(f2, *p) ? f1 : FixedSet{EmptySet{}};
    if (auto* p = std::get_if<RatVec2>(&f2)) return contains(f1, *p) ? f2 : FixedSet{EmptySet{}};
    const auto& l1 = std::get<RatLine>(f1);
    const auto& l2 = std::get<RatLine>(f2);
    Rat det = l1.a * l2.b - l1.b * l2.a;
    if (det != 0)
        return RatVec2{(l1.c * l2.b - l1.b * l2.c) / det, (l1.a * l2.c - l1.c * l2.a) / det};
    // Parallel: same line iff constants are proportional the same way.
    if (l1.a * l2.c == l2.a * l1.c && l1.b * l2.c == l2.b * l1.c) return f1;
    return EmptySet{};
}

namespace {

const std::vector<Mat2>& conjugator_moves() {
    static const std::vector<Mat2> moves = {
        Mat2::sl2(1, 1, 0, 1), Mat2::sl2(1, -1, 0, 1), Mat2::sl2(1, 0, 1, 1), Mat2::sl2(1, 0, -1, 1)};
    return moves;
}

Rat conjugated_norm_upper(const std::vector<AffineElement>& s, const Mat2& gamma) {
    Mat2 ginv = gamma.inverse_unimodular();
    Rat best(0);
    const Rat tol(1, 4096);
    for (const AffineElement& e : s) {
        Rat u = op_norm(gamma * e.linear * ginv, tol).hi;
        if (u > best) best = u;
    }
    return best;
}

}  // namespace

ConjugationReduceResult conjugation_reduce(const std::vector<AffineElement>& s, int depth_budget,
                                           int beam_width) {
    using State = std::pair<Rat, Mat2>;  // (norm upper bound, conjugator)
    auto state_less = [](const State& a, const State& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    };
    Mat2 id = Mat2::identity();
    State best{conjugated_norm_upper(s, id), id};
    std::vector<State> beam{best};
    std::map<std::array<Int, 4>, bool> visited;
    visited[{id.a11, id.a12, id.a21, id.a22}] = true;
    for (int depth = 0; depth < depth_budget; ++depth) {
        std::vector<State> candidates;
        for (const auto& [score, gamma] : beam) {
            for (const Mat2& m : conjugator_moves()) {
                Mat2 next = m * gamma;
                std::array<Int, 4> key{next.a11, next.a12, next.a21, next.a22};
                if (visited.contains(key)) continue;
                visited[key] = true;
                candidates.emplace_back(conjugated_norm_upper(s, next), next);
            }
        }
        if (candidates.empty()) break;
        std::sort(candidates.begin(), candidates.end(), state_less);
        if (candidates.size() > static_cast<std::size_t>(beam_width)) candidates.resize(beam_width);
        if (state_less(candidates.front(), best)) best = candidates.front();
        beam = std::move(candidates);
    }
    Rat tol(1, 4096);
    Mat2 ginv = best.second.inverse_unimodular();
    std::vector<AffineElement> conj;
    conj.reserve(s.size());
    for (const AffineElement& e : s) conj.emplace_back(best.second * e.linear * ginv, Vec2{});
    return ConjugationReduceResult{best.second, set_norm_linear(conj, tol)};
}

bool symmetrize(std::vector<AffineElement>& s) {
    std::map<std::array<Int, 6>, bool> seen;
    std::vector<AffineElement> out;
    bool already = true;
    auto add = [&](const AffineElement& g) {
        if (!seen.contains(g.key())) {
            seen[g.key()] = true;
            out.push_back(g);
            return true;
        }
        return false;
    };
    bool had_identity = false;
    for (const AffineElement& g : s) {
        if (g.is_identity()) had_identity = true;
        add(g);
    }
    if (!had_identity) {
        add(AffineElement::identity());
        already = false;
    }
    for (const AffineElement& g : s)
        if (add(g.inverse())) already = false;
    s = std::move(out);
    return already;
}

std::vector<AffineElement> conjugate_set(const std::vector<AffineElement>& s, const Mat2& gamma) {
    AffineElement c(gamma, Vec2{});
    AffineElement ci = c.inverse();
    std::vector<AffineElement> out;
    out.reserve(s.size());
    for (const AffineElement& g : s) out.push_back(c * g * ci);
    return out;
}

}  // namespace affinecert
