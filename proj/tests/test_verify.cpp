#include "affinecert/verify.hpp"

#include <doctest.h>

using namespace affinecert;

namespace {

AffineElement lmat() { return AffineElement(Mat2::sl2(1, 2, 0, 1), Vec2{}); }
AffineElement rmat() { return AffineElement(Mat2::sl2(1, 0, 2, 1), Vec2{}); }

FreePairCertificate sanov_certificate() {
    std::vector<AffineElement> s{AffineElement::identity(), lmat(),
                                 AffineElement(Mat2::sl2(1, 0, 2, 1), Vec2{Int(1), Int(0)})};
    return certify_pair(s, PipelineConfig{});
}

}  // namespace

TEST_CASE("reduced word enumeration counts 4*3^(k-1) per length") {
    auto words = enumerate_reduced(lmat(), rmat(), 5);
    long expected = 0, count = 4;
    for (int k = 1; k <= 5; ++k, count *= 3) expected += count;
    CHECK(static_cast<long>(words.size()) == expected);
    // no word contains a letter followed by its inverse
    for (const WordPath& w : words)
        for (std::size_t i = 1; i < w.letters.size(); ++i)
            CHECK(w.letters[i] != inverse_letter(w.letters[i - 1]));
    CHECK_THROWS((void)enumerate_reduced(lmat(), rmat(), 20));  // exceeds cap
}

TEST_CASE("classical Sanov pair is free up to length 7") {
    FreenessResult r = freeness_check(lmat(), rmat(), 7);
    CHECK(r.passed);
    CHECK(r.words_checked == 4372);
}

TEST_CASE("a = b yields a counterexample of length 2") {
    FreenessResult r = freeness_check(lmat(), lmat(), 3);
    CHECK(!r.passed);
    REQUIRE(r.counterexample.has_value());
    CHECK(r.counterexample->letters.size() == 2);
    CHECK(word_to_string(r.counterexample->letters) == "a b^-1");
}

TEST_CASE("local commutativity flags crossing fixed lines") {
    // L fixes y = 0, R fixes x = 0; they share (0,0) but do not commute.
    CommutativityResult r = local_commutativity_check(lmat(), rmat(), 1);
    CHECK(!r.passed);
    REQUIRE(!r.counterexamples.empty());
    CHECK(r.counterexamples.front().common_point == RatVec2{Rat(0), Rat(0)});
}

TEST_CASE("commuting generators with shared fixed sets pass") {
    AffineElement a = lmat(), b = lmat() * lmat();
    CommutativityResult r = local_commutativity_check(a, b, 3);
    CHECK(r.pairs_flagged > 0);  // everything shares the line y = 0
    CHECK(r.passed);
}

TEST_CASE("certified pair is locally commutative at moderate length") {
    FreePairCertificate cert = sanov_certificate();
    CommutativityResult r = local_commutativity_check(cert.a_final, cert.b_final, 4);
    CHECK(r.passed);
    FreenessResult f = freeness_check(cert.a_final, cert.b_final, 5);
    CHECK(f.passed);
}

TEST_CASE("table invariants hold on a small sample") {
    FreePairCertificate cert = sanov_certificate();
    auto pts = default_sample_points(8, 20, 0);
    CHECK(pts.size() == 84);
    TableSampleReport rep = table_invariant_sample(cert, pts, 2);
    CHECK(rep.checks > 0);
    CHECK(rep.violations.empty());
}

TEST_CASE("sample points are deterministic in the seed") {
    auto a = default_sample_points(4, 50, 123);
    auto b = default_sample_points(4, 50, 123);
    auto c = default_sample_points(4, 50, 124);
    CHECK(a == b);
    CHECK(a != c);
}
