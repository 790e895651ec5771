#include "affinecert/pingpong.hpp"

#include <algorithm>
#include <sstream>

namespace affinecert {

namespace {

QuadNumber quad_min(const QuadNumber& a, const QuadNumber& b) { return (b < a) ? b : a; }

Inequality exact_ineq(std::string name, const QuadNumber& lhs, const QuadNumber& rhs, bool strict,
                      const Rat& tol) {
    Inequality iq;
    iq.name = std::move(name);
    iq.strict = strict;
    int s = (lhs - rhs).sign();
    iq.verdict = strict ? (s < 0 ? Verdict::True : Verdict::False)
                        : (s <= 0 ? Verdict::True : Verdict::False);
    // Store enclosures tight enough to re-certify the verdict on their own.
    Rat t = tol;
    if (s != 0) {
        QuadNumber gap = (s < 0) ? rhs - lhs : lhs - rhs;
        Rat gt = tol;
        RatInterval giv = gap.enclose(gt);
        while (giv.lo <= 0) {
            gt /= 4;
            giv = gap.enclose(gt);
        }
        t = std::min(t, Rat(giv.lo / 4));
    }
    iq.lhs = lhs.enclose(t);
    iq.rhs = rhs.enclose(t);
    return iq;
}

Inequality interval_ineq(std::string name, const RatInterval& lhs, const RatInterval& rhs, bool strict) {
    Inequality iq;
    iq.name = std::move(name);
    iq.lhs = lhs;
    iq.rhs = rhs;
    iq.strict = strict;
    iq.verdict = strict ? lt(lhs, rhs) : le(lhs, rhs);
    return iq;
}

RatInterval quad_sqrt_iv(const QuadNumber& x_sq, const Rat& tol) {
    return sqrt_enclosure(x_sq.enclose(tol), tol);
}

bool any_indeterminate(const std::vector<Inequality>& v) {
    return std::any_of(v.begin(), v.end(),
                       [](const Inequality& i) { return i.verdict == Verdict::Indeterminate; });
}

bool all_true(const std::vector<Inequality>& v) {
    return std::all_of(v.begin(), v.end(), [](const Inequality& i) { return i.passed(); });
}

}  // namespace

TableParams schedule_params(const Rat& eta, const Rat& norm_h_upper, const Rat& v0_ref) {
    if (eta <= 0 || eta >= Rat(1, 1000)) throw std::invalid_argument("eta must lie in (0, 1/1000)");
    if (norm_h_upper < 1) throw std::invalid_argument("norm upper bound below 1");
    if (v0_ref <= 0) throw std::invalid_argument("v0 reference must be positive");
    TableParams p;
    p.norm_h_upper = norm_h_upper;
    p.v0_ref = v0_ref;
    p.eps2 = eta / 3;
    p.gamma2 = p.eps2;
    p.xi2 = Rat(1) / p.eps2;
    Rat h2 = norm_h_upper * norm_h_upper;
    p.eps1 = p.eps2 / h2;
    p.gamma1 = p.gamma2 / norm_h_upper;
    p.xi1 = (p.xi2 + 1) * h2;
    p.delta1 = p.gamma1 * v0_ref;
    p.delta2 = p.gamma2 * v0_ref;
    p.R1 = p.xi1 * v0_ref;
    p.R2 = p.xi2 * v0_ref;
    return p;
}

bool in_general_affine_position(const AffineElement& a, const EigenPair& eig, const AffineElement& h) {
    for (const QuadVec2* hv : {&eig.u, &eig.v}) {
        QuadVec2 img = mul(h.linear, *hv);
        for (const QuadVec2* ev : {&eig.u, &eig.v}) {
            if ((img.x * ev->y - img.y * ev->x).is_zero()) return false;
        }
    }
    auto fp = unique_fixed_point(a);
    if (!fp) return false;
    return apply(h, *fp) != *fp;
}

FrameGeometry make_frame_geometry(const AffineElement& a, const AffineElement& h, const Rat& tol) {
    FrameGeometry g;
    g.a = a;
    g.h = h;
    g.b = h * a * h.inverse();
    g.eig = eigenvectors_arith(a.linear);
    g.basis = QuadMat2::from_columns(g.eig.u, g.eig.v);
    g.basis_inv = g.basis.inverse();
    auto fa = unique_fixed_point(a);
    if (!fa) throw std::invalid_argument("frame geometry needs a unique fixed point for a");
    g.fix_a = *fa;
    g.fix_b = apply(h, g.fix_a);
    QuadAffine frame{g.basis, to_quad(g.fix_a)};  // frame -> original
    g.frame_map_inv = frame;
    g.frame_map = frame.inverse();
    g.h_frame = g.frame_map * QuadAffine::from_int(h) * g.frame_map_inv;
    g.h_linear_frame = g.h_frame.linear;
    g.hv1 = {g.h_linear_frame.a11, g.h_linear_frame.a21};
    g.hv2 = {g.h_linear_frame.a12, g.h_linear_frame.a22};
    g.v0_frame = g.basis_inv * QuadVec2{QuadNumber(g.fix_b.x - g.fix_a.x), QuadNumber(g.fix_b.y - g.fix_a.y)};
    g.norm_h_frame = op_norm_quad(g.h_linear_frame, tol);

    QuadVec2 e1{QuadNumber(Rat(1)), QuadNumber(Rat(0))};
    QuadVec2 e2{QuadNumber(Rat(0)), QuadNumber(Rat(1))};
    std::vector<QuadVec2> w{e1, e2, g.hv1, g.hv2};
    bool first = true;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            QuadNumber d = fs_distance_sq(w[i], w[j]);
            if (first || d < g.min_dist_sq) g.min_dist_sq = d;
            first = false;
        }
    if (!g.v0_frame.is_zero()) {
        first = true;
        for (const QuadVec2& u : w) {
            QuadNumber d = fs_distance_sq(u, g.v0_frame);
            if (first || d < g.min_dist_sq_v0) g.min_dist_sq_v0 = d;
            first = false;
        }
    } else {
        g.min_dist_sq_v0 = QuadNumber(Rat(0));
    }
    return g;
}

std::vector<Inequality> check_proper_table(const TableParams& p, const FrameGeometry& g, const Rat& tol) {
    std::vector<Inequality> out;
    QuadNumber v0_sq = g.v0_frame.norm_sq();
    Rat md = std::max(p.delta1, p.delta2);
    out.push_back(exact_ineq("proper.ball-separation", QuadNumber(4 * md * md), v0_sq, true, tol));

    Rat me = std::max(p.eps1, p.eps2);
    out.push_back(exact_ineq("proper.cone-separation", QuadNumber(4 * me * me), g.min_dist_sq, true, tol));

    RatInterval v0_iv = quad_sqrt_iv(v0_sq, tol);
    RatInterval dv0_iv = quad_sqrt_iv(g.min_dist_sq_v0, tol);
    RatInterval mixed = max_iv(RatInterval(p.eps1) + RatInterval(p.delta2) / v0_iv,
                               RatInterval(p.eps2) + RatInterval(p.delta1) / v0_iv);
    out.push_back(interval_ineq("proper.mixed-separation", mixed, dv0_iv, true));

    out.push_back(
        interval_ineq("proper.radius-order", RatInterval(p.R2), RatInterval(p.R1), false));

    RatInterval d_iv = quad_sqrt_iv(g.min_dist_sq, tol);
    Rat eps_sum = p.eps1 + p.eps2;
    Inequality rb;
    rb.name = "proper.radius-bound";
    rb.strict = true;
    if (d_iv.lo > eps_sum) {
        rb.lhs = v0_iv / (d_iv - RatInterval(eps_sum));
        rb.rhs = RatInterval(p.R2);
        rb.verdict = lt(rb.lhs, rb.rhs);
    } else if (g.min_dist_sq <= QuadNumber(eps_sum * eps_sum)) {
        rb.lhs = RatInterval(Rat(0));
        rb.rhs = RatInterval(p.R2);
        rb.verdict = Verdict::False;  // denominator not positive
    } else {
        rb.lhs = d_iv;
        rb.rhs = RatInterval(eps_sum);
        rb.verdict = Verdict::Indeterminate;
    }
    out.push_back(rb);
    return out;
}

std::vector<Inequality> check_players(const TableParams& p, const FrameGeometry& g, long ell, const Rat& tol) {
    if (ell <= 0) throw std::invalid_argument("ell must be positive");
    std::vector<Inequality> out;
    QuadNumber abs_lam = g.eig.lambda.abs();
    QuadNumber abs_lam_inv = abs_lam.inverse();
    QuadNumber rho = abs_lam_inv.pow(2 * static_cast<unsigned long>(ell));
    QuadNumber a1 = abs_lam.pow(static_cast<unsigned long>(ell));

    out.push_back(exact_ineq("players.contraction", rho, QuadNumber(p.eps1 * p.eps1), false, tol));
    out.push_back(
        exact_ineq("players.radius-reach", QuadNumber(p.R1), a1 * QuadNumber(p.eps1 * p.delta2), false, tol));
    out.push_back(interval_ineq("players.h-norm-eps", g.norm_h_frame * g.norm_h_frame,
                                RatInterval(p.eps2 / p.eps1), false));
    RatInterval v0_iv = quad_sqrt_iv(g.v0_frame.norm_sq(), tol);
    out.push_back(interval_ineq("players.radius-transport", RatInterval(p.R2) + v0_iv,
                                RatInterval(p.R1) / g.norm_h_frame, false));
    out.push_back(
        interval_ineq("players.h-norm-delta", g.norm_h_frame, RatInterval(p.delta2 / p.delta1), false));
    return out;
}

std::vector<Inequality> check_norm_dilation(const TableParams& p, const FrameGeometry& g, long ell,
                                            const Rat& tol) {
    if (ell <= 0) throw std::invalid_argument("ell must be positive");
    std::vector<Inequality> out;
    QuadNumber abs_lam = g.eig.lambda.abs();
    QuadNumber a1 = abs_lam.pow(static_cast<unsigned long>(ell));
    out.push_back(exact_ineq("dilation.eps-floor", a1.inverse(), QuadNumber(p.eps1), true, tol));

    RatInterval sqrt2 = sqrt_enclosure(Rat(2), tol);
    RatInterval lhs = RatInterval(Rat(8)) * sqrt2 * g.norm_h_frame.pow(7);
    RatInterval v0_iv = quad_sqrt_iv(g.v0_frame.norm_sq(), tol);
    RatInterval a1_iv = abs_lam.enclose(tol).pow(static_cast<unsigned long>(ell));
    RatInterval rhs =
        a1_iv * RatInterval(p.eps1) * min_iv(RatInterval(Rat(1)), RatInterval(p.delta1) / v0_iv);
    out.push_back(interval_ineq("dilation.growth", lhs, rhs, true));
    return out;
}

Inequality check_master(const Rat& eta, const FrameGeometry& g, long ell, const Rat& tol) {
    QuadNumber abs_lam = g.eig.lambda.abs();
    RatInterval lhs = RatInterval(pow_rat(eta, -4)) * g.norm_h_frame.pow(10);
    RatInterval rhs = abs_lam.enclose(tol).pow(static_cast<unsigned long>(ell));
    return interval_ineq("master.growth", lhs, rhs, true);
}

std::vector<Inequality> check_linear_table(const FrameGeometry& g, long ell, const Rat& tol) {
    if (ell <= 0) throw std::invalid_argument("ell must be positive");
    std::vector<Inequality> out;
    QuadNumber abs_lam_inv = g.eig.lambda.abs().inverse();
    QuadNumber eps1 = abs_lam_inv.pow(static_cast<unsigned long>(ell));
    QuadNumber rho = eps1 * eps1;
    out.push_back(exact_ineq("linear.contraction", rho, eps1 * eps1, false, tol));
    out.push_back(exact_ineq("linear.axis-separation", QuadNumber(Rat(2)) * eps1, QuadNumber(Rat(1)), true, tol));

    RatInterval eps1_iv = eps1.enclose(tol);
    RatInterval eps2_iv = eps1_iv * g.norm_h_frame * g.norm_h_frame;
    QuadVec2 e1{QuadNumber(Rat(1)), QuadNumber(Rat(0))};
    QuadVec2 e2{QuadNumber(Rat(0)), QuadNumber(Rat(1))};
    QuadNumber cross_min = quad_min(quad_min(fs_distance_sq(e1, g.hv1), fs_distance_sq(e1, g.hv2)),
                                    quad_min(fs_distance_sq(e2, g.hv1), fs_distance_sq(e2, g.hv2)));
    out.push_back(interval_ineq("linear.cross-separation", eps1_iv + eps2_iv,
                                quad_sqrt_iv(cross_min, tol), true));
    out.push_back(interval_ineq("linear.image-separation", RatInterval(Rat(2)) * eps2_iv,
                                quad_sqrt_iv(fs_distance_sq(g.hv1, g.hv2), tol), true));
    return out;
}

HyperbolicResult find_hyperbolic(const std::vector<AffineElement>& s, const PipelineConfig& cfg) {
    bool saw_lambda_above_one = false;
    for (int n1 = 1; n1 <= cfg.power_budget; ++n1) {
        BallSpectralResult res = ball_max_spectral_radius(s, n1, cfg.ball_cap);
        if (res.lambda == QuadNumber(Rat(1))) continue;
        saw_lambda_above_one = true;
        Rat tol = cfg.start_tol;
        for (int round = 0; round < cfg.max_refine_rounds; ++round) {
            RatInterval lam = res.lambda.enclose(tol);
            RatInterval norm = set_norm_linear(s, tol);
            if (lam.lo > 2 * norm.hi)
                return HyperbolicResult{res.witness.value, res.witness, n1, res.lambda};
            if (lam.hi <= 2 * norm.lo) break;  // genuinely fails at this power
            tol /= 4;
        }
    }
    std::ostringstream msg;
    msg << "no hyperbolic witness with Lambda > 2||theta(S)|| within power budget " << cfg.power_budget;
    if (!saw_lambda_above_one) msg << " (all traces bounded by 2: virtually solvable signature)";
    throw BudgetExceeded(msg.str(), cfg.power_budget);
}

namespace {

void throw_common_fixed(const FixedSet& common) {
    std::ostringstream msg;
    msg << "generators share a global fixed set";
    if (auto* p = std::get_if<RatVec2>(&common))
        msg << ": point (" << rat_to_string(p->x) << ", " << rat_to_string(p->y) << ")";
    throw HypothesisFailure(msg.str());
}

std::optional<FixedSet> common_fixed_set(const std::vector<AffineElement>& s) {
    FixedSet acc = WholePlane{};
    for (const AffineElement& g : s) {
        if (g.is_identity()) continue;
        acc = intersect(acc, fixed_point(g));
        if (is_empty(acc)) return std::nullopt;
    }
    if (std::holds_alternative<WholePlane>(acc)) return std::nullopt;  // S trivial, not a fixed-point witness
    return acc;
}

}  // namespace

GeneralPositionResult find_general_position(const std::vector<AffineElement>& s, const AffineElement& a0,
                                            const PipelineConfig& cfg) {
    if (auto common = common_fixed_set(s)) throw_common_fixed(*common);
    EigenPair eig = eigenvectors_arith(a0.linear);
    for (int n2 = 1; n2 <= cfg.power_budget; ++n2) {
        auto ball = enumerate_ball(s, n2, cfg.ball_cap);
        for (const SWord& w : ball) {
            if (static_cast<int>(w.letters.size()) != n2) continue;  // shorter words already tried
            if (w.value.is_identity()) continue;
            if (in_general_affine_position(a0, eig, w.value))
                return GeneralPositionResult{w.value, w, n2};
        }
    }
    throw BudgetExceeded("no element in general affine position within power budget", cfg.power_budget);
}

SeparationChoice separation_select(const AffineElement& a0, const AffineElement& h0,
                                   const std::vector<AffineElement>& s, long n1, long n2, const Rat& tol) {
    long n3 = 30 * n1 + 2 * n2;
    long n4 = 4 * n3 + 3 * n1;
    long n5 = 16 * (n1 + n2) * (n1 + n3);
    EigenPair eig = eigenvectors_arith(a0.linear);
    auto fa_opt = unique_fixed_point(a0);
    if (!fa_opt) throw std::invalid_argument("separation_select requires semisimple a0");
    RatVec2 fa = *fa_opt;
    AffineElement b0 = h0 * a0 * h0.inverse();
    RatVec2 fb = apply(h0, fa);
    AffineElement b0n = b0.pow(static_cast<unsigned long>(n4));
    AffineElement a0n = a0.pow(static_cast<unsigned long>(n4));

    auto diff_vec = [](const RatVec2& p, const RatVec2& q) {
        return QuadVec2{QuadNumber(p.x - q.x), QuadNumber(p.y - q.y)};
    };
    QuadVec2 hu = mul(h0.linear, eig.u), hv = mul(h0.linear, eig.v);
    std::vector<std::vector<QuadVec2>> sets = {
        {diff_vec(apply(h0, fa), fa), eig.u, eig.v, hu, hv},
        {diff_vec(apply(b0n, fa), fa), eig.u, eig.v, mul(b0n.linear, eig.u), mul(b0n.linear, eig.v)},
        {diff_vec(apply(a0n, fb), fb), hu, hv, mul(a0n.linear, hu), mul(a0n.linear, hv)},
    };
    std::vector<QuadNumber> minima;
    for (const auto& w : sets) {
        QuadNumber mn;
        bool first = true;
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = i + 1; j < w.size(); ++j) {
                if (w[i].is_zero() || w[j].is_zero()) continue;
                QuadNumber wedge = w[i].x * w[j].y - w[i].y * w[j].x;
                QuadNumber d = wedge.is_zero() ? QuadNumber(Rat(0)) : fs_distance_sq(w[i], w[j]);
                if (first || d < mn) mn = d;
                first = false;
            }
        minima.push_back(mn);
    }
    // Largest minimal separation wins; ties go to the lowest case index.
    // A case whose substituted pair fails general position is skipped.
    std::vector<int> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return minima[j] < minima[i]; });
    for (int ci : order) {
        AffineElement a = (ci == 2) ? b0 : a0;
        AffineElement h = (ci == 0) ? h0 : (ci == 1 ? b0n : a0n);
        EigenPair ea = eigenvectors_arith(a.linear);
        if (!in_general_affine_position(a, ea, h)) continue;
        SeparationChoice out;
        out.case_index = ci + 1;
        out.a = a;
        out.h = h;
        out.n4 = n4;
        out.n5 = n5;
        out.min_dist_sq = minima[ci];
        out.case_minima = minima;
        RatInterval norm = set_norm_linear(s, tol);
        Rat bound = pow_rat(norm.lo, -2 * n5);  // upper bound for ||theta(S)||^-2N5
        out.meets_paper_bound = minima[ci] >= QuadNumber(bound);
        return out;
    }
    throw std::logic_error("no separation case in general position: upstream selection bug");
}

AffineElement evaluate_word(const std::vector<AffineElement>& s, const std::vector<int>& letters) {
    AffineElement acc;
    for (int li : letters) {
        if (li < 0 || li >= static_cast<int>(s.size())) throw std::out_of_range("word letter out of range");
        acc = acc * s[li];
    }
    return acc;
}

bool FreePairCertificate::all_passed() const { return all_true(inequalities); }
bool LinearPairCertificate::all_passed() const { return all_true(inequalities); }

namespace {

struct CheckSet {
    std::vector<Inequality> list;
    bool determined() const { return !any_indeterminate(list); }
};

std::vector<Inequality> evaluate_all_checks(const TableParams& params, const FrameGeometry& geom,
                                            const Rat& eta, long ell, long ell_paper, const Rat& tol) {
    std::vector<Inequality> all;
    QuadNumber overall_min = quad_min(geom.min_dist_sq, geom.min_dist_sq_v0);
    all.push_back(exact_ineq("eta.separation", QuadNumber(eta * eta), overall_min, true, tol));
    for (auto& iq : check_proper_table(params, geom, tol)) all.push_back(std::move(iq));
    for (auto& iq : check_players(params, geom, ell, tol)) all.push_back(std::move(iq));
    for (auto& iq : check_norm_dilation(params, geom, ell, tol)) all.push_back(std::move(iq));
    all.push_back(check_master(eta, geom, ell, tol));
    all.push_back(interval_ineq("ell.vs-paper-bound", RatInterval(Rat(ell)),
                                RatInterval(Rat(ell_paper)), false));
    return all;
}

bool ell_checks_pass(const TableParams& params, const FrameGeometry& geom, const Rat& eta, long ell,
                     const PipelineConfig& cfg) {
    Rat tol = cfg.start_tol;
    for (int round = 0; round < cfg.max_refine_rounds; ++round) {
        std::vector<Inequality> v;
        for (auto& iq : check_players(params, geom, ell, tol)) v.push_back(std::move(iq));
        for (auto& iq : check_norm_dilation(params, geom, ell, tol)) v.push_back(std::move(iq));
        v.push_back(check_master(eta, geom, ell, tol));
        if (!any_indeterminate(v)) return all_true(v);
        tol /= 4;
    }
    throw PrecisionExceeded("ell feasibility stayed indeterminate at the precision floor");
}

}  // namespace

FreePairCertificate certify_pair(const std::vector<AffineElement>& s_in, const PipelineConfig& cfg) {
    std::vector<AffineElement> s = s_in;
    symmetrize(s);

    // Detect the hypothesis violation before changing coordinates, so the
    // reported fixed point is in the caller's frame.
    if (auto common = common_fixed_set(s)) throw_common_fixed(*common);

    ConjugationReduceResult red = conjugation_reduce(s, cfg.conj_depth, cfg.conj_beam);
    std::vector<AffineElement> sw = conjugate_set(s, red.conjugator);

    HyperbolicResult hyp = find_hyperbolic(sw, cfg);
    GeneralPositionResult gp = find_general_position(sw, hyp.a0, cfg);
    SeparationChoice sep = separation_select(hyp.a0, gp.h0, sw, hyp.n1, gp.n2, cfg.start_tol);

    long n3 = 30 * hyp.n1 + 2 * gp.n2;
    long ell_paper = 20 * (hyp.n1 + gp.n2 + n3);

    FrameGeometry geom = make_frame_geometry(sep.a, sep.h, cfg.start_tol);

    Rat eta;
    if (cfg.paper_schedule) {
        long m = 2 * n3 + hyp.n1;
        Rat norm_hi = set_norm_linear(sw, cfg.start_tol).hi;
        eta = std::min(pow_rat(norm_hi, -m), Rat(1, 3000));
    } else {
        QuadNumber overall_min = quad_min(geom.min_dist_sq, geom.min_dist_sq_v0);
        Rat dmin_lo = sqrt_enclosure(overall_min.enclose(cfg.start_tol).lo, cfg.start_tol).lo;
        eta = std::min(Rat(1, 3000), Rat(dmin_lo / 3));
    }
    if (eta <= 0) throw PrecisionExceeded("could not derive a positive eta from the separation data");

    RatInterval v0_iv = sqrt_enclosure(geom.v0_frame.norm_sq().enclose(cfg.start_tol), cfg.start_tol);
    TableParams params = schedule_params(eta, geom.norm_h_frame.hi, v0_iv.hi);

    long ell;
    if (cfg.paper_schedule) {
        ell = ell_paper;
        if (!ell_checks_pass(params, geom, eta, ell, cfg))
            throw PrecisionExceeded("paper-schedule ell failed the quantitative checks");
    } else {
        long lo = 1, hi = 1;
        while (!ell_checks_pass(params, geom, eta, hi, cfg)) {
            lo = hi + 1;
            hi *= 2;
            if (hi > cfg.ell_cap) throw BudgetExceeded("no feasible ell below the cap", cfg.ell_cap);
        }
        while (lo < hi) {
            long mid = lo + (hi - lo) / 2;
            if (ell_checks_pass(params, geom, eta, mid, cfg))
                hi = mid;
            else
                lo = mid + 1;
        }
        ell = lo;
    }

    // Final pass: one shared tolerance under which every verdict is determined.
    Rat tol = cfg.start_tol;
    std::vector<Inequality> all;
    for (int round = 0;; ++round) {
        all = evaluate_all_checks(params, geom, eta, ell, ell_paper, tol);
        if (!any_indeterminate(all)) break;
        if (round >= cfg.max_refine_rounds)
            throw PrecisionExceeded("certificate checks stayed indeterminate at the precision floor");
        tol /= 4;
    }

    FreePairCertificate cert;
    cert.input_set = s;
    cert.conjugator = red.conjugator;
    cert.word_a0 = hyp.word;
    cert.word_h0 = gp.word;
    cert.case_index = sep.case_index;
    cert.n1 = hyp.n1;
    cert.n2 = gp.n2;
    cert.n3 = n3;
    cert.n4 = sep.n4;
    cert.n5 = sep.n5;
    cert.ell = ell;
    cert.ell_paper = ell_paper;
    cert.paper_schedule = cfg.paper_schedule;
    cert.eta = eta;
    cert.tol = tol;
    cert.params = params;
    cert.a_work = sep.a;
    cert.h_work = sep.h;
    AffineElement a_pow = sep.a.pow(static_cast<unsigned long>(ell));
    AffineElement b_pow = sep.h * a_pow * sep.h.inverse();
    Mat2 gi = red.conjugator.inverse_unimodular();
    AffineElement unconj(gi, Vec2{});
    AffineElement conj(red.conjugator, Vec2{});
    cert.a_final = unconj * a_pow * conj;
    cert.b_final = unconj * b_pow * conj;
    cert.inequalities = std::move(all);
    return cert;
}

std::vector<Inequality> reevaluate_certificate(const FreePairCertificate& cert) {
    std::vector<AffineElement> sw = conjugate_set(cert.input_set, cert.conjugator);
    AffineElement a0 = evaluate_word(sw, cert.word_a0.letters);
    AffineElement h0 = evaluate_word(sw, cert.word_h0.letters);
    AffineElement b0 = h0 * a0 * h0.inverse();
    AffineElement a, h;
    switch (cert.case_index) {
        case 1:
            a = a0;
            h = h0;
            break;
        case 2:
            a = a0;
            h = b0.pow(static_cast<unsigned long>(cert.n4));
            break;
        case 3:
            a = b0;
            h = a0.pow(static_cast<unsigned long>(cert.n4));
            break;
        default:
            throw std::invalid_argument("certificate has an invalid case index");
    }
    if (!(a == cert.a_work) || !(h == cert.h_work))
        throw std::invalid_argument("certificate word paths do not reproduce the stored pair");
    FrameGeometry geom = make_frame_geometry(a, h, cert.tol);
    return evaluate_all_checks(cert.params, geom, cert.eta, cert.ell, cert.ell_paper, cert.tol);
}

namespace {

bool in_general_linear_position(const EigenPair& eig, const Mat2& h) {
    for (const QuadVec2* hv : {&eig.u, &eig.v}) {
        QuadVec2 img = mul(h, *hv);
        for (const QuadVec2* ev : {&eig.u, &eig.v})
            if ((img.x * ev->y - img.y * ev->x).is_zero()) return false;
    }
    return true;
}

bool linear_checks_pass(const FrameGeometry& geom, long ell, const PipelineConfig& cfg) {
    Rat tol = cfg.start_tol;
    for (int round = 0; round < cfg.max_refine_rounds; ++round) {
        auto v = check_linear_table(geom, ell, tol);
        if (!any_indeterminate(v)) return all_true(v);
        tol /= 4;
    }
    throw PrecisionExceeded("linear ell feasibility stayed indeterminate at the precision floor");
}

}  // namespace

LinearPairCertificate certify_linear_pair(const std::vector<AffineElement>& s_in, const PipelineConfig& cfg) {
    for (const AffineElement& g : s_in)
        if (!(g.translation == Vec2{}))
            throw std::invalid_argument("linear certification requires zero translations");
    std::vector<AffineElement> s = s_in;
    symmetrize(s);

    HyperbolicResult hyp = find_hyperbolic(s, cfg);
    EigenPair eig = eigenvectors_arith(hyp.a0.linear);
    std::optional<GeneralPositionResult> gp;
    for (int n2 = 1; n2 <= cfg.power_budget && !gp; ++n2) {
        auto ball = enumerate_ball(s, n2, cfg.ball_cap);
        for (const SWord& w : ball) {
            if (static_cast<int>(w.letters.size()) != n2) continue;
            if (w.value.is_identity()) continue;
            if (in_general_linear_position(eig, w.value.linear)) {
                gp = GeneralPositionResult{w.value, w, n2};
                break;
            }
        }
    }
    if (!gp) throw BudgetExceeded("no element in general linear position within power budget", cfg.power_budget);

    long n3 = 30 * hyp.n1 + 2 * gp->n2;
    long ell_paper = 2 * gp->n2 + 4 * n3 + 1;
    FrameGeometry geom = make_frame_geometry(hyp.a0, gp->h0, cfg.start_tol);

    long lo = 1, hi = 1;
    while (!linear_checks_pass(geom, hi, cfg)) {
        lo = hi + 1;
        hi *= 2;
        if (hi > cfg.ell_cap) throw BudgetExceeded("no feasible ell below the cap", cfg.ell_cap);
    }
    while (lo < hi) {
        long mid = lo + (hi - lo) / 2;
        if (linear_checks_pass(geom, mid, cfg))
            hi = mid;
        else
            lo = mid + 1;
    }
    long ell = lo;

    Rat tol = cfg.start_tol;
    std::vector<Inequality> all;
    for (int round = 0;; ++round) {
        all = check_linear_table(geom, ell, tol);
        all.push_back(interval_ineq("ell.vs-paper-bound", RatInterval(Rat(ell)),
                                    RatInterval(Rat(ell_paper)), false));
        if (!any_indeterminate(all)) break;
        if (round >= cfg.max_refine_rounds)
            throw PrecisionExceeded("linear certificate checks stayed indeterminate");
        tol /= 4;
    }

    LinearPairCertificate cert;
    cert.input_set = s;
    cert.word_a0 = hyp.word;
    cert.word_h0 = gp->word;
    cert.n1 = hyp.n1;
    cert.n2 = gp->n2;
    cert.n3 = n3;
    cert.ell = ell;
    cert.ell_paper = ell_paper;
    cert.tol = tol;
    cert.a_work = hyp.a0;
    cert.h_work = gp->h0;
    cert.a_final = hyp.a0.pow(static_cast<unsigned long>(ell));
    cert.b_final = gp->h0 * cert.a_final * gp->h0.inverse();
    cert.inequalities = std::move(all);
    return cert;
}

}  // namespace affinecert
