#include "affinecert/paradox.hpp"

#include <doctest.h>

#include <algorithm>

using namespace affinecert;

namespace {

FreePairCertificate sanov_certificate() {
    std::vector<AffineElement> s{AffineElement::identity(),
                                 AffineElement(Mat2::sl2(1, 2, 0, 1), Vec2{}),
                                 AffineElement(Mat2::sl2(1, 0, 2, 1), Vec2{Int(1), Int(0)})};
    return certify_pair(s, PipelineConfig{});
}

}  // namespace

TEST_CASE("free orbit ball has 2(3^r - 1) + 1 members") {
    FreePairCertificate cert = sanov_certificate();
    std::vector<RatVec2> seeds{RatVec2{make_rat(1, 3), make_rat(1, 7)}};
    for (int r : {2, 3, 4}) {
        auto orbits = orbit_decompose(cert.a_final, cert.b_final, seeds, r);
        REQUIRE(orbits.size() == 1);
        CHECK(orbits[0].free_up_to_radius);
        long expected = 1, level = 4;
        for (int k = 1; k <= r; ++k, level *= 3) expected += (k == 1) ? 4 : level;
        CHECK(static_cast<long>(orbits[0].members.size()) == expected);
        // canonical words come in BFS order: lengths never decrease
        for (std::size_t i = 1; i < orbits[0].members.size(); ++i)
            CHECK(orbits[0].members[i].word.size() >= orbits[0].members[i - 1].word.size());
        // transport identity: word applied to the representative gives the point
        for (const OrbitMember& m : orbits[0].members) {
            RatVec2 p = seeds[0];
            for (auto it = m.word.rbegin(); it != m.word.rend(); ++it) {
                AffineElement g = (*it == 0)   ? cert.a_final
                                  : (*it == 1) ? cert.a_final.inverse()
                                  : (*it == 2) ? cert.b_final
                                               : cert.b_final.inverse();
                p = apply(g, p);
            }
            CHECK(p == m.point);
        }
    }
}

TEST_CASE("seed order does not change canonical words") {
    FreePairCertificate cert = sanov_certificate();
    RatVec2 s1{make_rat(1, 3), make_rat(1, 7)};
    RatVec2 s2{make_rat(100001, 7), Rat(3)};
    auto fwd = orbit_decompose(cert.a_final, cert.b_final, {s1, s2}, 3);
    auto rev = orbit_decompose(cert.a_final, cert.b_final, {s2, s1}, 3);
    REQUIRE(fwd.size() == 2);
    REQUIRE(rev.size() == 2);
    auto words_of = [](const OrbitRecord& o) {
        std::vector<std::vector<int>> w;
        for (const OrbitMember& m : o.members) w.push_back(m.word);
        return w;
    };
    CHECK(words_of(fwd[0]) == words_of(rev[1]));
    CHECK(words_of(fwd[1]) == words_of(rev[0]));
}

TEST_CASE("dekker pieces cover exactly on interior points") {
    FreePairCertificate cert = sanov_certificate();
    std::vector<RatVec2> seeds{RatVec2{make_rat(1, 3), make_rat(1, 7)}};
    auto orbits = orbit_decompose(cert.a_final, cert.b_final, seeds, 5);
    PieceAssignment pa = dekker_pieces(cert.a_final, cert.b_final, orbits);
    CHECK(pa.covers_verified);
    CHECK(pa.cover1_exact == pa.interior_count);
    CHECK(pa.cover2_exact == pa.interior_count);
    CHECK(pa.leakage < 1);
    long total = 0;
    for (const auto& piece : pa.pieces) total += static_cast<long>(piece.size());
    CHECK(total == pa.total_count);
    // pieces are disjoint: no point appears twice
    std::vector<std::pair<Rat, Rat>> all;
    for (const auto& piece : pa.pieces)
        for (const RatVec2& p : piece) all.emplace_back(p.x, p.y);
    std::sort(all.begin(), all.end());
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
}

TEST_CASE("stabilized orbits are detected and excluded") {
    FreePairCertificate cert = sanov_certificate();
    auto fix = unique_fixed_point(cert.a_final);
    REQUIRE(fix.has_value());
    auto orbits = orbit_decompose(cert.a_final, cert.b_final, {*fix}, 3);
    REQUIRE(orbits.size() == 1);
    CHECK(!orbits[0].free_up_to_radius);
    REQUIRE(orbits[0].stabilizer_witness.has_value());
    CHECK(orbits[0].stabilizer_witness->first != orbits[0].stabilizer_witness->second);
    CHECK_THROWS((void)dekker_pieces(cert.a_final, cert.b_final, orbits));
}

TEST_CASE("nonamenability constants on an explored orbit") {
    FreePairCertificate cert = sanov_certificate();
    std::vector<RatVec2> seeds{RatVec2{make_rat(1, 3), make_rat(1, 7)}};
    auto orbits = orbit_decompose(cert.a_final, cert.b_final, seeds, 6);
    NonamenabilityReport rep =
        nonamenability_report(cert.a_final, cert.b_final, cert.input_set, 2, orbits[0]);
    CHECK(rep.affine_constant == make_rat(Int(1), Int(4)));
    CHECK(rep.displacement_sup >= rep.affine_constant - rep.boundary_term);
    CHECK(rep.bound_holds);
    CHECK(rep.n_step_holds);
    CHECK(rep.n_step_lhs <= rep.n_step_rhs);
    CHECK(rep.displacement_a <= 1);
    CHECK(rep.displacement_b <= 1);
}
