#include "affinecert/verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace affinecert {

std::string word_to_string(const std::vector<int>& letters) {
    static const char* names[4] = {"a", "a^-1", "b", "b^-1"};
    std::ostringstream os;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) os << ' ';
        os << names[letters[i]];
    }
    return os.str();
}

std::vector<WordPath> enumerate_reduced(const AffineElement& a, const AffineElement& b, int L, int cap) {
    if (L < 0 || L > cap) throw std::invalid_argument("reduced-word length exceeds cap");
    std::array<AffineElement, 4> img{a, a.inverse(), b, b.inverse()};
    std::vector<WordPath> out;
    std::vector<WordPath> prev;
    for (int l = 0; l < 4; ++l) prev.push_back(WordPath{{l}, img[l]});
    for (int len = 1; len <= L; ++len) {
        out.insert(out.end(), prev.begin(), prev.end());
        if (len == L) break;
        std::vector<WordPath> next;
        next.reserve(prev.size() * 3);
        for (const WordPath& w : prev) {
            for (int l = 0; l < 4; ++l) {
                if (l == inverse_letter(w.letters.back())) continue;
                WordPath e;
                e.letters = w.letters;
                e.letters.push_back(l);
                e.evaluated = w.evaluated * img[l];
                next.push_back(std::move(e));
            }
        }
        prev = std::move(next);
    }
    return out;
}

FreenessResult freeness_check(const AffineElement& a, const AffineElement& b, int L) {
    FreenessResult res;
    auto words = enumerate_reduced(a, b, L);
    res.words_checked = static_cast<long>(words.size());
    for (const WordPath& w : words) {
        if (w.evaluated.is_identity()) {
            res.counterexample = w;
            return res;
        }
    }
    res.passed = true;
    return res;
}

namespace {

bool commute(const AffineElement& x, const AffineElement& y) { return x * y == y * x; }

/// Canonical form of a rational line a*x + b*y = c: leading coefficient 1.
std::array<Rat, 3> normalize_line(const RatLine& l) {
    if (l.a != 0) return {Rat(1), l.b / l.a, l.c / l.a};
    return {Rat(0), Rat(1), l.c / l.b};
}

RatVec2 point_on_line(const std::array<Rat, 3>& n) {
    if (n[0] != 0) return RatVec2{n[2] / n[0] - n[1] / n[0], Rat(1)};  // x from y = 1
    return RatVec2{Rat(0), n[2] / n[1]};
}

}  // namespace

CommutativityResult local_commutativity_check(const AffineElement& a, const AffineElement& b, int L) {
    CommutativityResult res;
    auto words = enumerate_reduced(a, b, L);
    const std::size_t n = words.size();

    std::vector<std::optional<RatVec2>> pts(n);
    std::vector<std::optional<std::array<Rat, 3>>> lines(n);
    for (std::size_t i = 0; i < n; ++i) {
        FixedSet f = fixed_point(words[i].evaluated);
        if (auto* p = std::get_if<RatVec2>(&f))
            pts[i] = *p;
        else if (auto* l = std::get_if<RatLine>(&f))
            lines[i] = normalize_line(*l);
        // whole-plane cannot occur for reduced nonempty words of a free pair;
        // if it does, freeness_check is the right tool and we skip it here.
    }

    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    std::vector<RatVec2> witness;

    std::map<std::pair<Rat, Rat>, std::vector<std::size_t>> by_point;
    for (std::size_t i = 0; i < n; ++i)
        if (pts[i]) by_point[{pts[i]->x, pts[i]->y}].push_back(i);
    for (const auto& [key, grp] : by_point)
        for (std::size_t i = 0; i < grp.size(); ++i)
            for (std::size_t j = i + 1; j < grp.size(); ++j) {
                candidates.emplace_back(grp[i], grp[j]);
                witness.push_back(*pts[grp[i]]);
            }

    std::map<std::array<Rat, 3>, std::vector<std::size_t>> by_line;
    for (std::size_t i = 0; i < n; ++i)
        if (lines[i]) by_line[*lines[i]].push_back(i);
    std::vector<std::pair<std::array<Rat, 3>, std::vector<std::size_t>>> line_groups(by_line.begin(),
                                                                                     by_line.end());
    for (const auto& [nl, grp] : line_groups) {
        RatVec2 p = point_on_line(nl);
        for (std::size_t i = 0; i < grp.size(); ++i)
            for (std::size_t j = i + 1; j < grp.size(); ++j) {
                candidates.emplace_back(grp[i], grp[j]);
                witness.push_back(p);
            }
    }
    // Crossing fixed lines share their intersection point.
    for (std::size_t gi = 0; gi < line_groups.size(); ++gi)
        for (std::size_t gj = gi + 1; gj < line_groups.size(); ++gj) {
            const auto& n1 = line_groups[gi].first;
            const auto& n2 = line_groups[gj].first;
            Rat det = n1[0] * n2[1] - n1[1] * n2[0];
            if (det == 0) continue;
            RatVec2 p{(n1[2] * n2[1] - n1[1] * n2[2]) / det, (n1[0] * n2[2] - n1[2] * n2[0]) / det};
            for (std::size_t i : line_groups[gi].second)
                for (std::size_t j : line_groups[gj].second) {
                    candidates.emplace_back(i, j);
                    witness.push_back(p);
                }
        }
    // Fixed point lying on a fixed line.
    for (const auto& [key, grp] : by_point) {
        RatVec2 p{key.first, key.second};
        for (const auto& [nl, lgrp] : line_groups) {
            if (nl[0] * p.x + nl[1] * p.y != nl[2]) continue;
            for (std::size_t i : grp)
                for (std::size_t j : lgrp) {
                    candidates.emplace_back(i, j);
                    witness.push_back(p);
                }
        }
    }

    res.pairs_flagged = static_cast<long>(candidates.size());
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        auto [i, j] = candidates[k];
        if (commute(words[i].evaluated, words[j].evaluated)) continue;
        res.counterexamples.push_back({words[i], words[j], witness[k]});
    }
    std::sort(res.counterexamples.begin(), res.counterexamples.end(),
              [](const CommutativityCounterexample& x, const CommutativityCounterexample& y) {
                  if (x.w1.letters != y.w1.letters) return x.w1.letters < y.w1.letters;
                  return x.w2.letters < y.w2.letters;
              });
    res.passed = res.counterexamples.empty();
    return res;
}

namespace {

/// The certified table in conjugation-reduced coordinates.
struct Table {
    FrameGeometry geom;
    AffineElement h_inv;
    Rat eps1_sq, eps2_sq, delta1_sq, delta2_sq, r1_sq, r2_sq;
    QuadVec2 e1{QuadNumber(Rat(1)), QuadNumber(Rat(0))};
    QuadVec2 e2{QuadNumber(Rat(0)), QuadNumber(Rat(1))};

    QuadVec2 frame_coords(const RatVec2& z) const {
        return geom.basis_inv *
               QuadVec2{QuadNumber(z.x - geom.fix_a.x), QuadNumber(z.y - geom.fix_a.y)};
    }
    Rat dist_sq_fix_a(const RatVec2& z) const {
        Rat dx = z.x - geom.fix_a.x, dy = z.y - geom.fix_a.y;
        return dx * dx + dy * dy;
    }
    bool in_cone(const RatVec2& z, const QuadVec2& axis, const Rat& eps_sq) const {
        QuadVec2 zf = frame_coords(z);
        if (zf.is_zero()) return false;
        return fs_distance_sq(zf, axis) <= QuadNumber(eps_sq);
    }
    // U^+/- for the letter alphabet {a, a^-1, b, b^-1} of the certified pair.
    bool in_u_plus(int letter, const RatVec2& z) const {
        if (letter >= 2) return in_u_plus(letter - 2, apply(h_inv, z));
        const QuadVec2& axis = (letter == 0) ? e1 : e2;
        return in_cone(z, axis, eps1_sq) && dist_sq_fix_a(z) > r1_sq;
    }
    bool in_u_minus(int letter, const RatVec2& z) const {
        if (letter >= 2) return in_u_minus(letter - 2, apply(h_inv, z));
        const QuadVec2& axis = (letter == 0) ? e2 : e1;
        return in_cone(z, axis, eps1_sq) || dist_sq_fix_a(z) <= delta1_sq;
    }
};

}  // namespace

TableSampleReport table_invariant_sample(const FreePairCertificate& cert,
                                         const std::vector<RatVec2>& points, int L) {
    TableSampleReport rep;
    std::vector<AffineElement> sw = conjugate_set(cert.input_set, cert.conjugator);

    Table t;
    t.geom = make_frame_geometry(cert.a_work, cert.h_work, cert.tol);
    t.h_inv = cert.h_work.inverse();
    t.eps1_sq = cert.params.eps1 * cert.params.eps1;
    t.eps2_sq = cert.params.eps2 * cert.params.eps2;
    t.delta1_sq = cert.params.delta1 * cert.params.delta1;
    t.delta2_sq = cert.params.delta2 * cert.params.delta2;
    t.r1_sq = cert.params.R1 * cert.params.R1;
    t.r2_sq = cert.params.R2 * cert.params.R2;

    AffineElement a_pow = cert.a_work.pow(static_cast<unsigned long>(cert.ell));
    AffineElement b_pow = cert.h_work * a_pow * t.h_inv;
    auto words = enumerate_reduced(a_pow, b_pow, L);

    AffineElement to_work(cert.conjugator, Vec2{});
    std::vector<RatVec2> pw;
    pw.reserve(points.size());
    for (const RatVec2& p : points) pw.push_back(apply(to_work, p));

    for (std::size_t pi = 0; pi < points.size(); ++pi) {
        const RatVec2& z = pw[pi];
        // At-most-two property over the four repelling sets.
        int hits = 0;
        for (int l = 0; l < 4; ++l)
            if (t.in_u_minus(l, z)) ++hits;
        ++rep.triple_checks;
        if (hits >= 3) rep.violations.push_back({{}, points[pi], "triple-intersection"});

        Rat fz = t.dist_sq_fix_a(z);
        for (const WordPath& w : words) {
            if (t.in_u_minus(w.letters.back(), z)) {
                ++rep.exemptions;
                continue;
            }
            ++rep.checks;
            RatVec2 img = apply(w.evaluated, z);
            if (!t.in_u_plus(w.letters.front(), img))
                rep.violations.push_back({w.letters, points[pi], "containment"});
            if (!(t.dist_sq_fix_a(img) > fz))
                rep.violations.push_back({w.letters, points[pi], "dilation"});
        }
    }
    return rep;
}

std::vector<RatVec2> default_sample_points(int grid, long extra, std::uint64_t seed) {
    std::vector<RatVec2> pts;
    if (grid > 1) {
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j)
                pts.push_back(RatVec2{make_rat(Int(-10 * (grid - 1) + 20 * i), Int(grid - 1)),
                                      make_rat(Int(-10 * (grid - 1) + 20 * j), Int(grid - 1))});
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-10000, 10000);
    for (long k = 0; k < extra; ++k) {
        Rat x = make_rat(Int(num(rng)), Int(1000));
        Rat y = make_rat(Int(num(rng)), Int(1000));
        pts.push_back(RatVec2{x, y});
    }
    return pts;
}

}  // namespace affinecert
