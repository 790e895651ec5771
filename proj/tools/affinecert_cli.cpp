#include "affinecert/io.hpp"
#include "affinecert/paradox.hpp"
#include "affinecert/spectral.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace affinecert;

namespace {

// Exit-code taxonomy shared with the test harness.
constexpr int kOk = 0;
constexpr int kParse = 2;
constexpr int kHypothesis = 3;
constexpr int kBudget = 4;
constexpr int kPrecision = 5;
constexpr int kValidation = 6;

struct RunConfig {
    std::string input, output;
    int power_budget = 12;
    std::size_t ball_cap = 1000000;
    int lfree = 8;
    int lcomm = 6;
    int orbit_radius = 6;
    std::string eta_mode = "data";
    std::string mode = "plane";
    std::string moduli = "2,3,4,5,6,7";
    double tol = 1e-12;
    std::uint64_t seed = 0;

    PipelineConfig pipeline() const {
        PipelineConfig cfg;
        cfg.power_budget = power_budget;
        cfg.ball_cap = ball_cap;
        cfg.paper_schedule = (eta_mode == "paper");
        return cfg;
    }
};

void emit(const RunConfig& rc, const Json& doc) {
    std::string text = doc.dump(2) + "\n";
    if (rc.output.empty())
        std::cout << text;
    else
        write_atomic(rc.output, text);
}

std::vector<long> parse_moduli(const std::string& csv) {
    std::vector<long> out;
    std::istringstream is(csv);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.find_first_not_of(" \t") == std::string::npos) continue;
        std::size_t pos = 0;
        long n = std::stol(tok, &pos);
        if (pos != tok.find_last_not_of(" \t") + 1 || n < 2)
            throw ParseError("bad modulus '" + tok + "'", 1);
        out.push_back(n);
    }
    return out;
}

Json word_json(const std::vector<int>& letters) {
    return Json{{"letters", letters}, {"text", word_to_string(letters)}};
}

Json point_json(const RatVec2& p) {
    return Json{{"x", rat_to_string(p.x)}, {"y", rat_to_string(p.y)}};
}

Json gap_json(const GapEstimate& g) {
    return Json{{"modulus", g.modulus},     {"states", g.states},
                {"connected", g.connected}, {"normEstimate", g.normEstimate},
                {"certifiedUpper", g.certifiedUpper}, {"kazhdanLower", g.kazhdanLower},
                {"residual", g.residual},   {"iterations", g.iterations},
                {"converged", g.converged}, {"dense_checked", g.dense_checked},
                {"dense_norm", g.dense_norm}};
}

/// Input file is either a certificate document (JSON) or a generating-set list.
FreePairCertificate load_or_certify(const RunConfig& rc, std::string& input_text) {
    input_text = read_file(rc.input);
    auto first = input_text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && input_text[first] == '{') {
        Json doc = Json::parse(input_text);
        return certificate_from_json(open_document(doc, "free-pair-certificate"));
    }
    return certify_pair(parse_generating_set(input_text), rc.pipeline());
}

int cmd_certify(const RunConfig& rc) {
    std::string text = read_file(rc.input);
    auto s = parse_generating_set(text);
    std::vector<AffineElement> sym = s;
    if (!symmetrize(sym))
        std::cerr << "warning: input not symmetric or missing identity; symmetrized\n";
    FreePairCertificate cert = certify_pair(s, rc.pipeline());
    emit(rc, make_document("free-pair-certificate", rc.pipeline(), text, to_json(cert)));
    std::cerr << "certified: case " << cert.case_index << " ell " << cert.ell << " ("
              << cert.inequalities.size() << " inequalities)\n";
    return kOk;
}

int cmd_recheck(const RunConfig& rc) {
    std::string text = read_file(rc.input);
    Json doc = Json::parse(text);
    FreePairCertificate cert = certificate_from_json(open_document(doc, "free-pair-certificate"));
    // Pass 1: the stored exact enclosures must certify each inequality themselves.
    for (const Inequality& iq : cert.inequalities) {
        Verdict v = iq.strict ? lt(iq.lhs, iq.rhs) : le(iq.lhs, iq.rhs);
        if (v != Verdict::True || iq.verdict != Verdict::True) {
            std::cerr << "recheck failed: stored enclosures do not certify '" << iq.name << "'\n";
            return kValidation;
        }
    }
    // Pass 2: full recomputation from the raw pair data.
    std::vector<Inequality> redo = reevaluate_certificate(cert);
    if (redo.size() != cert.inequalities.size()) {
        std::cerr << "recheck failed: inequality list mismatch\n";
        return kValidation;
    }
    for (std::size_t i = 0; i < redo.size(); ++i) {
        if (redo[i].name != cert.inequalities[i].name || !redo[i].passed()) {
            std::cerr << "recheck failed: recomputation rejects '" << cert.inequalities[i].name << "'\n";
            return kValidation;
        }
    }
    std::cerr << "recheck ok: " << redo.size() << " inequalities confirmed\n";
    return kOk;
}

int cmd_free_check(const RunConfig& rc) {
    std::string text;
    FreePairCertificate cert = load_or_certify(rc, text);
    FreenessResult fr = freeness_check(cert.a_final, cert.b_final, rc.lfree);
    CommutativityResult cr = local_commutativity_check(cert.a_final, cert.b_final, rc.lcomm);
    Json payload{{"a", format_affine_literal(cert.a_final)},
                 {"b", format_affine_literal(cert.b_final)},
                 {"freeness",
                  {{"length", rc.lfree}, {"words_checked", fr.words_checked}, {"passed", fr.passed}}},
                 {"commutativity",
                  {{"length", rc.lcomm},
                   {"pairs_flagged", cr.pairs_flagged},
                   {"passed", cr.passed}}}};
    if (fr.counterexample) payload["freeness"]["counterexample"] = word_json(fr.counterexample->letters);
    if (!cr.counterexamples.empty()) {
        Json rows = Json::array();
        for (const auto& cx : cr.counterexamples)
            rows.push_back(Json{{"w1", word_json(cx.w1.letters)},
                                {"w2", word_json(cx.w2.letters)},
                                {"witness", point_json(cx.common_point)}});
        payload["commutativity"]["counterexamples"] = rows;
    }
    emit(rc, make_document("free-check-report", rc.pipeline(), text, payload));
    return (fr.passed && cr.passed) ? kOk : kValidation;
}

int cmd_paradox(const RunConfig& rc) {
    std::string text;
    FreePairCertificate cert = load_or_certify(rc, text);
    std::vector<RatVec2> seeds{RatVec2{make_rat(1, 3), make_rat(1, 7)},
                               RatVec2{make_rat(2, 5), make_rat(3, 11)}};
    auto orbits = orbit_decompose(cert.a_final, cert.b_final, seeds, rc.orbit_radius);
    Json orows = Json::array();
    bool any_free = false;
    for (const OrbitRecord& orb : orbits) {
        Json row{{"representative", point_json(orb.representative)},
                 {"members", orb.members.size()},
                 {"radius", orb.radius},
                 {"free_up_to_radius", orb.free_up_to_radius}};
        if (orb.stabilizer_witness)
            row["stabilizer_witness"] = Json{word_json(orb.stabilizer_witness->first),
                                             word_json(orb.stabilizer_witness->second)};
        orows.push_back(std::move(row));
        any_free = any_free || orb.free_up_to_radius;
    }
    Json payload{{"orbits", orows}};
    if (any_free) {
        std::vector<OrbitRecord> free_orbits;
        for (const OrbitRecord& orb : orbits)
            if (orb.free_up_to_radius) free_orbits.push_back(orb);
        PieceAssignment pieces = dekker_pieces(cert.a_final, cert.b_final, free_orbits);
        payload["pieces"] = Json{{"sizes",
                                  {pieces.pieces[0].size(), pieces.pieces[1].size(),
                                   pieces.pieces[2].size(), pieces.pieces[3].size()}},
                                 {"total", pieces.total_count},
                                 {"interior", pieces.interior_count},
                                 {"cover1_exact", pieces.cover1_exact},
                                 {"cover2_exact", pieces.cover2_exact},
                                 {"leakage", rat_to_string(pieces.leakage)},
                                 {"covers_verified", pieces.covers_verified}};
        NonamenabilityReport na =
            nonamenability_report(cert.a_final, cert.b_final, cert.input_set, 2, free_orbits.front());
        payload["nonamenability"] = Json{{"displacement_a", rat_to_string(na.displacement_a)},
                                         {"displacement_b", rat_to_string(na.displacement_b)},
                                         {"displacement_sup", rat_to_string(na.displacement_sup)},
                                         {"boundary_term", rat_to_string(na.boundary_term)},
                                         {"affine_constant", rat_to_string(na.affine_constant)},
                                         {"bound_holds", na.bound_holds},
                                         {"n_step", na.n_step},
                                         {"n_step_lhs", rat_to_string(na.n_step_lhs)},
                                         {"n_step_rhs", rat_to_string(na.n_step_rhs)},
                                         {"n_step_holds", na.n_step_holds}};
    }
    emit(rc, make_document("paradox-report", rc.pipeline(), text, payload));
    return any_free ? kOk : kValidation;
}

int cmd_gap(const RunConfig& rc) {
    std::string text = read_file(rc.input);
    auto s = parse_generating_set(text);
    symmetrize(s);
    ActionMode mode = (rc.mode == "cayley") ? ActionMode::Cayley : ActionMode::Plane;
    Json rows = Json::array();
    for (long n : parse_moduli(rc.moduli)) {
        try {
            SchreierOperator op = schreier_operator(s, n, mode);
            rows.push_back(gap_json(operator_norm_est(op, rc.tol, 100000, rc.seed)));
        } catch (const std::exception& e) {
            rows.push_back(Json{{"modulus", n}, {"failed", e.what()}});
        }
    }
    emit(rc, make_document("gap-table", rc.pipeline(), text, Json{{"mode", rc.mode}, {"rows", rows}}));
    return kOk;
}

int cmd_quotient_check(const RunConfig& rc) {
    std::string text = read_file(rc.input);
    auto s = parse_generating_set(text);
    symmetrize(s);
    Json rows = Json::array();
    bool all = true;
    for (long p : parse_moduli(rc.moduli)) {
        try {
            ClosureResult c = closure_check(s, p);
            rows.push_back(Json{{"p", p},
                                {"closure_size", c.closure_size},
                                {"group_order", c.group_order},
                                {"surjective", c.surjective}});
            all = all && c.surjective;
        } catch (const std::exception& e) {
            rows.push_back(Json{{"p", p}, {"failed", e.what()}});
            all = false;
        }
    }
    emit(rc, make_document("quotient-check", rc.pipeline(), text, Json{{"rows", rows}}));
    return all ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certifying toolkit for free subgroups of SA(2,Z)"};
    app.require_subcommand(1);
    RunConfig rc;

    auto add_common = [&](CLI::App* sub, bool needs_input = true) {
        auto* in = sub->add_option("--input", rc.input, "input file");
        if (needs_input) in->required();
        sub->add_option("--output", rc.output, "output file (stdout when omitted)");
        sub->add_option("--power-budget", rc.power_budget)->check(CLI::PositiveNumber);
        sub->add_option("--ball-cap", rc.ball_cap)->check(CLI::PositiveNumber);
        sub->add_option("--lfree", rc.lfree)->check(CLI::PositiveNumber);
        sub->add_option("--lcomm", rc.lcomm)->check(CLI::PositiveNumber);
        sub->add_option("--orbit-radius", rc.orbit_radius)->check(CLI::PositiveNumber);
        sub->add_option("--eta-mode", rc.eta_mode)->check(CLI::IsMember({"paper", "data"}));
        sub->add_option("--mode", rc.mode)->check(CLI::IsMember({"plane", "cayley"}));
        sub->add_option("--moduli", rc.moduli, "comma-separated moduli list");
        sub->add_option("--tol", rc.tol)->check(CLI::Range(0.0, 1.0));
        sub->add_option("--seed", rc.seed);
        return sub;
    };

    auto* c_certify = add_common(app.add_subcommand("certify", "find and certify a free pair"));
    auto* c_recheck = add_common(app.add_subcommand("recheck", "re-validate a certificate file"));
    auto* c_free = add_common(app.add_subcommand("free-check", "independent freeness oracles"));
    auto* c_paradox = add_common(app.add_subcommand("paradox", "orbit decomposition and 4-piece covers"));
    auto* c_gap = add_common(app.add_subcommand("gap", "spectral gaps on finite quotients"));
    auto* c_quot = add_common(app.add_subcommand("quotient-check", "mod-p surjectivity"));

    try {
        app.parse(argc, argv);
        if (c_certify->parsed()) return cmd_certify(rc);
        if (c_recheck->parsed()) return cmd_recheck(rc);
        if (c_free->parsed()) return cmd_free_check(rc);
        if (c_paradox->parsed()) return cmd_paradox(rc);
        if (c_gap->parsed()) return cmd_gap(rc);
        if (c_quot->parsed()) return cmd_quotient_check(rc);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ParseError& e) {
        std::cerr << "parse error (line " << e.line() << "): " << e.what() << "\n";
        return kParse;
    } catch (const Json::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const HypothesisFailure& e) {
        std::cerr << "hypothesis failure: " << e.what() << "\n";
        return kHypothesis;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kBudget;
    } catch (const PrecisionExceeded& e) {
        std::cerr << "precision floor reached: " << e.what() << "\n";
        return kPrecision;
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    }
    return kOk;
}
