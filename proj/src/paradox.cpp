#include "affinecert/paradox.hpp"

#include <map>

namespace affinecert {

namespace {

using PointKey = std::pair<Rat, Rat>;

PointKey key_of(const RatVec2& p) { return {p.x, p.y}; }

/// Piece index by first letter, with pure powers of a^-1 (and the identity)
/// shifted into the W(a) piece.
int piece_of(const std::vector<int>& word) {
    bool pure_ainv = true;
    for (int l : word)
        if (l != 1) {
            pure_ainv = false;
            break;
        }
    if (pure_ainv) return 0;  // includes the empty word
    return word.front();
}

}  // namespace

std::vector<OrbitRecord> orbit_decompose(const AffineElement& a, const AffineElement& b,
                                         const std::vector<RatVec2>& seeds, int radius) {
    if (radius < 0) throw std::invalid_argument("negative orbit radius");
    std::array<AffineElement, 4> img{a, a.inverse(), b, b.inverse()};
    std::vector<OrbitRecord> out;
    std::map<PointKey, std::size_t> global;  // point -> orbit index, across records

    for (const RatVec2& seed : seeds) {
        if (global.contains(key_of(seed))) continue;  // merged into the earlier record
        OrbitRecord rec;
        rec.representative = seed;
        rec.radius = radius;
        std::map<PointKey, std::size_t> local;  // point -> member index
        rec.members.push_back(OrbitMember{seed, {}});
        local.emplace(key_of(seed), 0);
        std::vector<std::size_t> frontier{0};
        for (int depth = 1; depth <= radius; ++depth) {
            std::vector<std::size_t> next;
            // Letter-major iteration keeps each length level in lexicographic
            // order; words are group words, so new letters are prepended.
            for (int l = 0; l < 4; ++l) {
                for (std::size_t mi : frontier) {
                    OrbitMember base = rec.members[mi];
                    if (!base.word.empty() && l == inverse_letter(base.word.front())) continue;
                    RatVec2 p = apply(img[l], base.point);
                    std::vector<int> word;
                    word.reserve(base.word.size() + 1);
                    word.push_back(l);
                    word.insert(word.end(), base.word.begin(), base.word.end());
                    if (auto it = local.find(key_of(p)); it != local.end()) {
                        if (rec.free_up_to_radius) {
                            rec.free_up_to_radius = false;
                            rec.stabilizer_witness = {rec.members[it->second].word, word};
                        }
                        continue;
                    }
                    if (global.contains(key_of(p))) continue;  // overlap with an earlier record
                    local.emplace(key_of(p), rec.members.size());
                    next.push_back(rec.members.size());
                    rec.members.push_back(OrbitMember{p, std::move(word)});
                }
            }
            frontier = std::move(next);
        }
        std::size_t idx = out.size();
        for (const auto& [k, mi] : local) global.emplace(k, idx);
        out.push_back(std::move(rec));
    }
    return out;
}

PieceAssignment dekker_pieces(const AffineElement& a, const AffineElement& b,
                              const std::vector<OrbitRecord>& orbits) {
    PieceAssignment out;
    AffineElement a_inv = a.inverse(), b_inv = b.inverse();
    long shell = 0;
    bool all_exact = true;
    for (const OrbitRecord& orb : orbits) {
        if (!orb.free_up_to_radius)
            throw std::invalid_argument("dekker_pieces requires orbits free within the explored radius");
        std::map<PointKey, const OrbitMember*> members;
        for (const OrbitMember& m : orb.members) members.emplace(key_of(m.point), &m);
        for (const OrbitMember& m : orb.members) {
            int pc = piece_of(m.word);
            out.pieces[pc].push_back(m.point);
            ++out.total_count;
            if (static_cast<int>(m.word.size()) >= orb.radius) {
                ++shell;
                continue;
            }
            ++out.interior_count;
            // Cover 1: x in A1  xor  a^-1 x in A2.
            bool in_a1 = (pc == 0);
            auto it = members.find(key_of(apply(a_inv, m.point)));
            bool in_a_a2 = (it != members.end()) && piece_of(it->second->word) == 1;
            if (static_cast<int>(in_a1) + static_cast<int>(in_a_a2) == 1)
                ++out.cover1_exact;
            else
                all_exact = false;
            // Cover 2: x in A3  xor  b^-1 x in A4.
            bool in_a3 = (pc == 2);
            it = members.find(key_of(apply(b_inv, m.point)));
            bool in_b_a4 = (it != members.end()) && piece_of(it->second->word) == 3;
            if (static_cast<int>(in_a3) + static_cast<int>(in_b_a4) == 1)
                ++out.cover2_exact;
            else
                all_exact = false;
        }
    }
    out.leakage = out.total_count > 0 ? make_rat(Int(shell), Int(out.total_count)) : Rat(0);
    out.covers_verified = all_exact && out.cover1_exact == out.interior_count &&
                          out.cover2_exact == out.interior_count;
    return out;
}

namespace {

Rat displacement(const AffineElement& g, const std::vector<RatVec2>& pts,
                 const std::map<PointKey, bool>& member) {
    if (pts.empty()) return Rat(0);
    long out = 0;
    for (const RatVec2& p : pts)
        if (!member.contains(key_of(apply(g, p)))) ++out;
    return make_rat(Int(out), Int(static_cast<long>(pts.size())));
}

}  // namespace

NonamenabilityReport nonamenability_report(const AffineElement& a, const AffineElement& b,
                                           const std::vector<AffineElement>& s, int n_step,
                                           const OrbitRecord& orbit) {
    NonamenabilityReport rep;
    std::vector<RatVec2> pts;
    pts.reserve(orbit.members.size());
    std::map<PointKey, bool> member;
    long shell = 0;
    for (const OrbitMember& m : orbit.members) {
        pts.push_back(m.point);
        member.emplace(key_of(m.point), true);
        if (static_cast<int>(m.word.size()) >= orbit.radius) ++shell;
    }
    rep.displacement_a = displacement(a, pts, member);
    rep.displacement_b = displacement(b, pts, member);
    rep.displacement_sup = std::max(rep.displacement_a, rep.displacement_b);
    rep.boundary_term =
        pts.empty() ? Rat(0) : make_rat(Int(shell), Int(static_cast<long>(pts.size())));
    rep.bound_holds = rep.displacement_sup >= rep.affine_constant - rep.boundary_term;

    rep.n_step = n_step;
    if (n_step > 0 && !s.empty()) {
        Rat sup_s(0);
        for (const AffineElement& g : s) sup_s = std::max(sup_s, displacement(g, pts, member));
        Rat sup_ball(0);
        for (const SWord& w : enumerate_ball(s, n_step, 1000000))
            sup_ball = std::max(sup_ball, displacement(w.value, pts, member));
        rep.n_step_lhs = sup_ball;
        rep.n_step_rhs = Rat(n_step) * sup_s;
        rep.n_step_holds = rep.n_step_lhs <= rep.n_step_rhs;
    }
    return rep;
}

}  // namespace affinecert
