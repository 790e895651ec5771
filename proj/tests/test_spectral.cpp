#include "affinecert/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace affinecert;

namespace {

std::vector<AffineElement> sanov_lift() {
    std::vector<AffineElement> s{AffineElement::identity(),
                                 AffineElement(Mat2::sl2(1, 2, 0, 1), Vec2{}),
                                 AffineElement(Mat2::sl2(1, 0, 2, 1), Vec2{Int(1), Int(0)})};
    symmetrize(s);
    return s;
}

}  // namespace

TEST_CASE("reduce_mod is a homomorphism") {
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<int> coin(0, 3);
    auto s = sanov_lift();
    for (int k = 0; k < 200; ++k) {
        AffineElement g = s[coin(rng) + 1], h = s[(coin(rng) % 4) + 1];
        for (long n : {3L, 5L, 7L}) {
            CHECK(reduce_mod(g * h, n) == reduce_mod(g, n) * reduce_mod(h, n));
            CHECK(reduce_mod(g, n) * reduce_mod(g.inverse(), n) ==
                  reduce_mod(AffineElement::identity(), n));
        }
    }
}

TEST_CASE("mod-p closure is the full group for odd small primes") {
    auto s = sanov_lift();
    for (long p : {3L, 5L, 7L}) {
        ClosureResult c = closure_check(s, p);
        CHECK(c.group_order == static_cast<std::size_t>(p * p * p * (p * p - 1)));
        CHECK(c.surjective);
    }
    // entries are even: mod 2 everything collapses
    CHECK(!closure_check(s, 2).surjective);
}

TEST_CASE("power iteration matches the dense eigensolver") {
    auto s = sanov_lift();
    for (long n = 2; n <= 7; ++n) {
        SchreierOperator op = schreier_operator(s, n, ActionMode::Plane);
        CHECK(op.states == static_cast<std::size_t>(n * n));
        GapEstimate g = operator_norm_est(op, 1e-12, 50000, 0);
        REQUIRE(g.dense_checked);
        CHECK(std::abs(g.normEstimate - g.dense_norm) <= 1e-9);
        CHECK(g.certifiedUpper + 1e-9 >= g.dense_norm);
        // odd moduli act transitively; even moduli preserve parity classes
        CHECK(g.connected == (n % 2 == 1));
        if (n % 2 == 1) CHECK(g.kazhdanLower > 0);
    }
}

TEST_CASE("herz chain inequality on small primes") {
    auto s = sanov_lift();
    for (long p : {2L, 3L, 5L}) {
        HerzReport h = herz_compare(s, p, 1e-9);
        CHECK(h.holds);
        CHECK(h.plane_norm <= h.cayley_norm + 1e-9);
    }
}

TEST_CASE("kazhdan sandwich self-consistency") {
    auto s = sanov_lift();
    for (long n = 2; n <= 7; ++n) {
        GapEstimate g =
            operator_norm_est(schreier_operator(s, n, ActionMode::Plane), 1e-12, 50000, 0);
        CHECK(g.kazhdanLower >= 0);
        CHECK(g.kazhdanLower <= 1);
        double rhs = g.kazhdanLower * g.kazhdanLower / (16.0 * static_cast<double>(s.size()));
        CHECK(g.kazhdanLower + 1e-15 >= rhs);
    }
}

TEST_CASE("estimates are deterministic in the seed") {
    auto s = sanov_lift();
    SchreierOperator op = schreier_operator(s, 5, ActionMode::Plane);
    GapEstimate a = operator_norm_est(op, 1e-12, 50000, 3);
    GapEstimate b = operator_norm_est(op, 1e-12, 50000, 3);
    CHECK(a.normEstimate == b.normEstimate);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("identity-only set has no gap") {
    std::vector<AffineElement> ids{AffineElement::identity()};
    GapEstimate g = operator_norm_est(schreier_operator(ids, 5, ActionMode::Plane), 1e-12, 100, 0);
    CHECK(g.normEstimate == doctest::Approx(1.0));
    CHECK(g.kazhdanLower == 0);
    CHECK(!g.connected);
}

TEST_CASE("certified word length and implied kazhdan bound") {
    std::vector<AffineElement> input{AffineElement::identity(),
                                     AffineElement(Mat2::sl2(1, 2, 0, 1), Vec2{}),
                                     AffineElement(Mat2::sl2(1, 0, 2, 1), Vec2{Int(1), Int(0)})};
    FreePairCertificate cert = certify_pair(input, PipelineConfig{});
    long n = certified_word_length(cert);
    REQUIRE(cert.case_index == 1);
    long la = static_cast<long>(cert.word_a0.letters.size());
    long lh = static_cast<long>(cert.word_h0.letters.size());
    CHECK(n == 2 * lh + cert.ell * la);
    KazhdanReport rep = l2_kazhdan_from_action(cert, 5);
    CHECK(rep.word_length == n);
    CHECK(rep.implied_lower == make_rat(Int(1), Int(8 * n)));
    CHECK(rep.consistent);
}
