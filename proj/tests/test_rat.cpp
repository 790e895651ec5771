#include "affinecert/rat.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace affinecert;

TEST_CASE("make_rat canonicalizes") {
    Rat r = make_rat(Int(6), Int(2));
    CHECK(r == 3);
    CHECK(r.get_den() == 1);
    // The raw constructor does not reduce; equality with the reduced value
    // only holds after canonicalization.
    CHECK(make_rat(Int(-4), Int(8)) == make_rat(Int(1), Int(-2)));
    CHECK(make_rat(Int(-4), Int(8)).get_den() == 2);
}

TEST_CASE("rat string round trip") {
    for (const char* s : {"0", "-7", "22/7", "-355/113"}) {
        CHECK(rat_to_string(rat_from_string(s)) == s);
    }
}

TEST_CASE("interval arithmetic contains pointwise results") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-50, 50);
    for (int k = 0; k < 2000; ++k) {
        Rat a = make_rat(Int(d(rng)), Int(7)), b = a + make_rat(Int(std::abs(d(rng))), Int(5));
        Rat c = make_rat(Int(d(rng)), Int(3)), e = c + make_rat(Int(std::abs(d(rng))), Int(11));
        RatInterval x(a, b), y(c, e);
        Rat px = (a + b) / 2, py = (c + e) / 2;
        CHECK((x + y).contains(px + py));
        CHECK((x - y).contains(px - py));
        CHECK((x * y).contains(px * py));
        if (!y.contains(Rat(0))) CHECK((x / y).contains(px / py));
    }
}

TEST_CASE("interval comparisons are tri-state") {
    RatInterval a(Rat(1), Rat(2)), b(Rat(3), Rat(4)), c(make_rat(Int(3), Int(2)), Rat(5));
    CHECK(lt(a, b) == Verdict::True);
    CHECK(lt(b, a) == Verdict::False);
    CHECK(lt(a, c) == Verdict::Indeterminate);
    CHECK(le(RatInterval(Rat(2)), RatInterval(Rat(2))) == Verdict::True);
    CHECK(lt(RatInterval(Rat(2)), RatInterval(Rat(2))) == Verdict::False);
}

TEST_CASE("sqrt_enclosure against floating oracle") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(0, 100000);
    Rat tol = make_rat(Int(1), Int(1000000));
    for (int k = 0; k < 300; ++k) {
        Rat x = make_rat(Int(d(rng)), Int(d(rng) + 1));
        RatInterval iv = sqrt_enclosure(x, tol);
        CHECK(iv.width() <= tol);
        CHECK(iv.lo * iv.lo <= x);
        CHECK(iv.hi * iv.hi >= x);
        double s = std::sqrt(x.get_d());
        CHECK(iv.lo.get_d() <= s + 1e-9);
        CHECK(iv.hi.get_d() >= s - 1e-9);
    }
}

TEST_CASE("pow_rat handles negative exponents") {
    Rat b = make_rat(Int(3), Int(2));
    CHECK(pow_rat(b, 3) == make_rat(Int(27), Int(8)));
    CHECK(pow_rat(b, -2) == make_rat(Int(4), Int(9)));
    CHECK(pow_rat(b, 0) == 1);
}

TEST_CASE("interval pow is monotone enclosure") {
    RatInterval x(make_rat(Int(1), Int(2)), Rat(3));
    RatInterval p = x.pow(4);
    CHECK(p.contains(pow_rat(Rat(2), 4)));
    CHECK(p.lo == pow_rat(make_rat(Int(1), Int(2)), 4));
    CHECK(p.hi == pow_rat(Rat(3), 4));
}
