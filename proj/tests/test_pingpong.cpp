#include "affinecert/pingpong.hpp"

#include <doctest.h>

using namespace affinecert;

namespace {

std::vector<AffineElement> sanov_lift() {
    return {AffineElement::identity(), AffineElement(Mat2::sl2(1, 2, 0, 1), Vec2{}),
            AffineElement(Mat2::sl2(1, 0, 2, 1), Vec2{Int(1), Int(0)})};
}

}  // namespace

TEST_CASE("sanov lift certification regression") {
    FreePairCertificate cert = certify_pair(sanov_lift(), PipelineConfig{});
    CHECK(cert.case_index == 1);
    CHECK(cert.n1 == 2);
    CHECK(cert.n2 == 1);
    CHECK(cert.n3 == 62);
    CHECK(cert.n4 == 254);
    CHECK(cert.n5 == 3072);
    CHECK(cert.ell == 27);
    CHECK(cert.ell_paper == 1300);
    CHECK(cert.eta == make_rat(Int(1), Int(3000)));
    CHECK(cert.inequalities.size() == 15);
    CHECK(cert.all_passed());
    CHECK(cert.input_set.size() == 5);  // symmetrized
    // the certified pair does not commute
    CHECK(cert.a_final * cert.b_final != cert.b_final * cert.a_final);
}

TEST_CASE("paper schedule pins ell to the paper exponent") {
    PipelineConfig cfg;
    cfg.paper_schedule = true;
    FreePairCertificate cert = certify_pair(sanov_lift(), cfg);
    CHECK(cert.paper_schedule);
    CHECK(cert.ell == cert.ell_paper);
    CHECK(cert.ell == 20 * (cert.n1 + cert.n2 + cert.n3));
    CHECK(cert.all_passed());
}

TEST_CASE("reevaluate reproduces the stored inequality list") {
    FreePairCertificate cert = certify_pair(sanov_lift(), PipelineConfig{});
    std::vector<Inequality> redo = reevaluate_certificate(cert);
    REQUIRE(redo.size() == cert.inequalities.size());
    for (std::size_t i = 0; i < redo.size(); ++i) {
        CHECK(redo[i].name == cert.inequalities[i].name);
        CHECK(redo[i].passed());
    }
}

TEST_CASE("checkers stay satisfied for larger ell") {
    FreePairCertificate cert = certify_pair(sanov_lift(), PipelineConfig{});
    FrameGeometry geom = make_frame_geometry(cert.a_work, cert.h_work, cert.tol);
    for (long extra : {0L, 1L, 10L, 100L}) {
        long ell = cert.ell + extra;
        for (const Inequality& iq : check_players(cert.params, geom, ell, cert.tol))
            CHECK(iq.passed());
        for (const Inequality& iq : check_norm_dilation(cert.params, geom, ell, cert.tol))
            CHECK(iq.passed());
        CHECK(check_master(cert.eta, geom, ell, cert.tol).passed());
    }
}

TEST_CASE("schedule parameter relations") {
    Rat eta = make_rat(Int(1), Int(3000));
    Rat u = Rat(5);       // norm upper bound stand-in
    Rat v0 = make_rat(Int(7), Int(3));
    TableParams p = schedule_params(eta, u, v0);
    CHECK(p.eps2 == eta / 3);
    CHECK(p.gamma2 == p.eps2);
    CHECK(p.xi2 == 1 / p.eps2);
    CHECK(p.eps1 == p.eps2 / (u * u));
    CHECK(p.gamma1 == p.gamma2 / u);
    CHECK(p.xi1 == (p.xi2 + 1) * u * u);
    CHECK(p.delta1 == p.gamma1 * v0);
    CHECK(p.delta2 == p.gamma2 * v0);
    CHECK(p.R1 == p.xi1 * v0);
    CHECK(p.R2 == p.xi2 * v0);
    CHECK(p.R1 >= p.R2);
    CHECK(p.eps1 < p.eps2);
}

TEST_CASE("zero-translation input is rejected with a fixed point") {
    std::vector<AffineElement> s{AffineElement(Mat2::sl2(1, 2, 0, 1), Vec2{}),
                                 AffineElement(Mat2::sl2(1, 0, 2, 1), Vec2{})};
    CHECK_THROWS_AS((void)certify_pair(s, PipelineConfig{}), HypothesisFailure);
}

TEST_CASE("translation-only input exhausts the hyperbolic search") {
    std::vector<AffineElement> s{AffineElement(Mat2::identity(), Vec2{Int(1), Int(0)}),
                                 AffineElement(Mat2::identity(), Vec2{Int(0), Int(1)})};
    PipelineConfig cfg;
    cfg.power_budget = 4;
    CHECK_THROWS_AS((void)certify_pair(s, cfg), BudgetExceeded);
}

TEST_CASE("word evaluation is a homomorphism into the ball") {
    auto s = sanov_lift();
    symmetrize(s);
    for (const SWord& w : enumerate_ball(s, 3, 100000)) {
        CHECK(evaluate_word(s, w.letters) == w.value);
    }
}

TEST_CASE("linear pair certification") {
    std::vector<AffineElement> s{AffineElement(Mat2::sl2(1, 2, 0, 1), Vec2{}),
                                 AffineElement(Mat2::sl2(1, 0, 2, 1), Vec2{})};
    LinearPairCertificate cert = certify_linear_pair(s, PipelineConfig{});
    CHECK(cert.n1 == 2);
    CHECK(cert.n2 == 1);
    CHECK(cert.ell_paper == 2 * cert.n2 + 4 * cert.n3 + 1);
    CHECK(cert.ell <= cert.ell_paper);
    CHECK(cert.all_passed());
    CHECK(cert.a_final * cert.b_final != cert.b_final * cert.a_final);

    std::vector<AffineElement> bad{AffineElement(Mat2::sl2(1, 2, 0, 1), Vec2{Int(1), Int(0)})};
    CHECK_THROWS((void)certify_linear_pair(bad, PipelineConfig{}));
}
