#include "affinecert/io.hpp"

#include "affinecert/errors.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace affinecert {

std::vector<AffineElement> parse_generating_set(const std::string& text) {
    std::vector<AffineElement> out;
    std::istringstream is(text);
    std::string line;
    long lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(parse_affine_literal(line));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    if (out.empty()) throw ParseError("no generating-set elements in input", lineno);
    return out;
}

std::vector<AffineElement> load_generating_set(const std::string& path) {
    return parse_generating_set(read_file(path));
}

std::string format_generating_set(const std::vector<AffineElement>& s) {
    std::ostringstream os;
    for (const AffineElement& g : s) os << format_affine_literal(g) << '\n';
    return os.str();
}

std::string content_hash(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
        f << content;
        f.flush();
        if (!f) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed for " + path);
}

Json to_json(const Rat& r) { return rat_to_string(r); }

Json to_json(const RatInterval& iv) {
    return Json{{"lo", rat_to_string(iv.lo)}, {"hi", rat_to_string(iv.hi)}};
}

Json to_json(const QuadNumber& x) {
    long d = x.delta().fits_slong_p() ? x.delta().get_si() : 0;
    if (d == 0 && x.delta() != 0) throw std::overflow_error("radicand exceeds serializable range");
    return Json{{"p", rat_to_string(x.p())}, {"q", rat_to_string(x.q())}, {"delta", d}};
}

namespace {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::True: return "true";
        case Verdict::False: return "false";
        default: return "indeterminate";
    }
}

Verdict verdict_from_name(const std::string& s) {
    if (s == "true") return Verdict::True;
    if (s == "false") return Verdict::False;
    if (s == "indeterminate") return Verdict::Indeterminate;
    throw FormatError("unknown verdict: " + s);
}

Json word_to_json(const SWord& w) {
    return Json{{"letters", w.letters}, {"value", format_affine_literal(w.value)}};
}

SWord word_from_json(const Json& j) {
    SWord w;
    w.letters = j.at("letters").get<std::vector<int>>();
    w.value = parse_affine_literal(j.at("value").get<std::string>());
    return w;
}

Json mat_to_json(const Mat2& m) {
    std::ostringstream os;
    os << m.a11 << ' ' << m.a12 << ' ' << m.a21 << ' ' << m.a22;
    return os.str();
}

Mat2 mat_from_json(const Json& j) {
    return parse_affine_literal(j.get<std::string>()).linear;
}

}  // namespace

Json to_json(const Inequality& iq) {
    return Json{{"name", iq.name},
                {"lhs", to_json(iq.lhs)},
                {"rhs", to_json(iq.rhs)},
                {"strict", iq.strict},
                {"verdict", verdict_name(iq.verdict)}};
}

Inequality inequality_from_json(const Json& j) {
    Inequality iq;
    iq.name = j.at("name").get<std::string>();
    iq.lhs = interval_from_json(j.at("lhs"));
    iq.rhs = interval_from_json(j.at("rhs"));
    iq.strict = j.at("strict").get<bool>();
    iq.verdict = verdict_from_name(j.at("verdict").get<std::string>());
    return iq;
}

Json to_json(const TableParams& p) {
    return Json{{"eps1", to_json(p.eps1)},     {"eps2", to_json(p.eps2)},
                {"delta1", to_json(p.delta1)}, {"delta2", to_json(p.delta2)},
                {"R1", to_json(p.R1)},         {"R2", to_json(p.R2)},
                {"xi1", to_json(p.xi1)},       {"xi2", to_json(p.xi2)},
                {"gamma1", to_json(p.gamma1)}, {"gamma2", to_json(p.gamma2)},
                {"norm_h_upper", to_json(p.norm_h_upper)},
                {"v0_ref", to_json(p.v0_ref)}};
}

TableParams params_from_json(const Json& j) {
    TableParams p;
    p.eps1 = rat_from_json(j.at("eps1"));
    p.eps2 = rat_from_json(j.at("eps2"));
    p.delta1 = rat_from_json(j.at("delta1"));
    p.delta2 = rat_from_json(j.at("delta2"));
    p.R1 = rat_from_json(j.at("R1"));
    p.R2 = rat_from_json(j.at("R2"));
    p.xi1 = rat_from_json(j.at("xi1"));
    p.xi2 = rat_from_json(j.at("xi2"));
    p.gamma1 = rat_from_json(j.at("gamma1"));
    p.gamma2 = rat_from_json(j.at("gamma2"));
    p.norm_h_upper = rat_from_json(j.at("norm_h_upper"));
    p.v0_ref = rat_from_json(j.at("v0_ref"));
    return p;
}

Json to_json(const PipelineConfig& cfg) {
    return Json{{"power_budget", cfg.power_budget},
                {"ball_cap", cfg.ball_cap},
                {"conj_depth", cfg.conj_depth},
                {"conj_beam", cfg.conj_beam},
                {"paper_schedule", cfg.paper_schedule},
                {"ell_cap", cfg.ell_cap},
                {"max_refine_rounds", cfg.max_refine_rounds},
                {"start_tol", to_json(cfg.start_tol)}};
}

PipelineConfig config_from_json(const Json& j) {
    PipelineConfig cfg;
    cfg.power_budget = j.at("power_budget").get<int>();
    cfg.ball_cap = j.at("ball_cap").get<std::size_t>();
    cfg.conj_depth = j.at("conj_depth").get<int>();
    cfg.conj_beam = j.at("conj_beam").get<int>();
    cfg.paper_schedule = j.at("paper_schedule").get<bool>();
    cfg.ell_cap = j.at("ell_cap").get<long>();
    cfg.max_refine_rounds = j.at("max_refine_rounds").get<int>();
    cfg.start_tol = rat_from_json(j.at("start_tol"));
    return cfg;
}

Json to_json(const FreePairCertificate& cert) {
    Json set = Json::array();
    for (const AffineElement& g : cert.input_set) set.push_back(format_affine_literal(g));
    Json ineqs = Json::array();
    for (const Inequality& iq : cert.inequalities) ineqs.push_back(to_json(iq));
    return Json{{"version", cert.version},
                {"input_set", set},
                {"conjugator", mat_to_json(cert.conjugator)},
                {"word_a0", word_to_json(cert.word_a0)},
                {"word_h0", word_to_json(cert.word_h0)},
                {"case_index", cert.case_index},
                {"n1", cert.n1},
                {"n2", cert.n2},
                {"n3", cert.n3},
                {"n4", cert.n4},
                {"n5", cert.n5},
                {"ell", cert.ell},
                {"ell_paper", cert.ell_paper},
                {"paper_schedule", cert.paper_schedule},
                {"eta", to_json(cert.eta)},
                {"tol", to_json(cert.tol)},
                {"params", to_json(cert.params)},
                {"a_work", format_affine_literal(cert.a_work)},
                {"h_work", format_affine_literal(cert.h_work)},
                {"a_final", format_affine_literal(cert.a_final)},
                {"b_final", format_affine_literal(cert.b_final)},
                {"inequalities", ineqs}};
}

Rat rat_from_json(const Json& j) { return rat_from_string(j.get<std::string>()); }

RatInterval interval_from_json(const Json& j) {
    return RatInterval(rat_from_string(j.at("lo").get<std::string>()),
                       rat_from_string(j.at("hi").get<std::string>()));
}

FreePairCertificate certificate_from_json(const Json& j) {
    FreePairCertificate cert;
    int ver = j.at("version").get<int>();
    if (ver != cert.version)
        throw FormatError("unsupported certificate version " + std::to_string(ver));
    for (const Json& g : j.at("input_set"))
        cert.input_set.push_back(parse_affine_literal(g.get<std::string>()));
    cert.conjugator = mat_from_json(j.at("conjugator"));
    cert.word_a0 = word_from_json(j.at("word_a0"));
    cert.word_h0 = word_from_json(j.at("word_h0"));
    cert.case_index = j.at("case_index").get<int>();
    cert.n1 = j.at("n1").get<long>();
    cert.n2 = j.at("n2").get<long>();
    cert.n3 = j.at("n3").get<long>();
    cert.n4 = j.at("n4").get<long>();
    cert.n5 = j.at("n5").get<long>();
    cert.ell = j.at("ell").get<long>();
    cert.ell_paper = j.at("ell_paper").get<long>();
    cert.paper_schedule = j.at("paper_schedule").get<bool>();
    cert.eta = rat_from_json(j.at("eta"));
    cert.tol = rat_from_json(j.at("tol"));
    cert.params = params_from_json(j.at("params"));
    cert.a_work = parse_affine_literal(j.at("a_work").get<std::string>());
    cert.h_work = parse_affine_literal(j.at("h_work").get<std::string>());
    cert.a_final = parse_affine_literal(j.at("a_final").get<std::string>());
    cert.b_final = parse_affine_literal(j.at("b_final").get<std::string>());
    for (const Json& iq : j.at("inequalities")) cert.inequalities.push_back(inequality_from_json(iq));
    return cert;
}

Json make_document(const std::string& kind, const PipelineConfig& cfg, const std::string& input_text,
                   Json payload) {
    return Json{{"format_version", 1},
                {"kind", kind},
                {"config", to_json(cfg)},
                {"input_hash", content_hash(input_text)},
                {"payload", std::move(payload)}};
}

Json open_document(const Json& doc, const std::string& kind) {
    int ver = doc.at("format_version").get<int>();
    if (ver != 1) throw FormatError("unsupported document format version " + std::to_string(ver));
    std::string k = doc.at("kind").get<std::string>();
    if (k != kind) throw FormatError("expected document kind '" + kind + "', found '" + k + "'");
    return doc.at("payload");
}

}  // namespace affinecert
