#include "affinecert/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <random>

namespace affinecert {

namespace {

long mod_reduce(const Int& x, long n) {
    return static_cast<long>(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(n)));
}

bool is_small_prime(long p) { return p == 2 || p == 3 || p == 5 || p == 7; }

}  // namespace

QuotientElement QuotientElement::operator*(const QuotientElement& o) const {
    if (n != o.n) throw std::invalid_argument("mixed moduli");
    QuotientElement r;
    r.n = n;
    r.lin = {(lin[0] * o.lin[0] + lin[1] * o.lin[2]) % n, (lin[0] * o.lin[1] + lin[1] * o.lin[3]) % n,
             (lin[2] * o.lin[0] + lin[3] * o.lin[2]) % n, (lin[2] * o.lin[1] + lin[3] * o.lin[3]) % n};
    r.tr = {(lin[0] * o.tr[0] + lin[1] * o.tr[1] + tr[0]) % n,
            (lin[2] * o.tr[0] + lin[3] * o.tr[1] + tr[1]) % n};
    return r;
}

QuotientElement reduce_mod(const AffineElement& g, long n) {
    if (n < 2) throw std::invalid_argument("modulus must be >= 2");
    QuotientElement r;
    r.n = n;
    r.lin = {mod_reduce(g.linear.a11, n), mod_reduce(g.linear.a12, n), mod_reduce(g.linear.a21, n),
             mod_reduce(g.linear.a22, n)};
    r.tr = {mod_reduce(g.translation.x, n), mod_reduce(g.translation.y, n)};
    return r;
}

std::vector<QuotientElement> reduce_set(const std::vector<AffineElement>& s, long n) {
    std::vector<QuotientElement> out;
    out.reserve(s.size());
    for (const AffineElement& g : s) out.push_back(reduce_mod(g, n));
    return out;
}

ClosureResult closure_check(const std::vector<AffineElement>& s, long p) {
    if (!is_small_prime(p)) throw std::invalid_argument("closure_check supports primes up to 7");
    ClosureResult res;
    res.group_order = static_cast<std::size_t>(p) * p * p * (p * p - 1);
    auto gens = reduce_set(s, p);
    std::map<std::array<long, 6>, bool> seen;
    QuotientElement id;
    id.n = p;
    std::vector<QuotientElement> frontier{id};
    seen[id.key()] = true;
    while (!frontier.empty()) {
        std::vector<QuotientElement> next;
        for (const QuotientElement& x : frontier)
            for (const QuotientElement& g : gens) {
                QuotientElement y = x * g;
                if (!seen.contains(y.key())) {
                    seen[y.key()] = true;
                    next.push_back(y);
                }
            }
        frontier = std::move(next);
    }
    res.closure_size = seen.size();
    res.surjective = res.closure_size == res.group_order;
    return res;
}

void SchreierOperator::apply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(states, 0.0);
    const double w = 1.0 / static_cast<double>(degree);
    for (std::size_t i = 0; i < states; ++i) {
        const double xv = x[i] * w;
        for (std::uint32_t j : neighbors[i]) y[j] += xv;
    }
}

SchreierOperator schreier_operator(const std::vector<AffineElement>& s, long n, ActionMode mode) {
    if (s.empty()) throw std::invalid_argument("empty generating set");
    SchreierOperator op;
    op.modulus = n;
    op.mode = mode;
    op.degree = s.size();
    auto gens = reduce_set(s, n);

    if (mode == ActionMode::Plane) {
        op.states = static_cast<std::size_t>(n) * n;
        op.neighbors.assign(op.states, {});
        for (long x = 0; x < n; ++x)
            for (long y = 0; y < n; ++y) {
                auto& row = op.neighbors[static_cast<std::size_t>(x) * n + y];
                row.reserve(gens.size());
                for (const QuotientElement& g : gens) {
                    long ix = (g.lin[0] * x + g.lin[1] * y + g.tr[0]) % n;
                    long iy = (g.lin[2] * x + g.lin[3] * y + g.tr[1]) % n;
                    row.push_back(static_cast<std::uint32_t>(ix * n + iy));
                }
            }
    } else {
        if (!is_small_prime(n)) throw std::invalid_argument("cayley mode supports primes up to 7");
        // Enumerate SA(2,F_p) in lexicographic order of (linear, translation).
        std::vector<QuotientElement> elems;
        std::map<std::array<long, 6>, std::uint32_t> index;
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b)
                for (long c = 0; c < n; ++c)
                    for (long d = 0; d < n; ++d) {
                        if (((a * d - b * c) % n + n) % n != 1) continue;
                        for (long tx = 0; tx < n; ++tx)
                            for (long ty = 0; ty < n; ++ty) {
                                QuotientElement e;
                                e.n = n;
                                e.lin = {a, b, c, d};
                                e.tr = {tx, ty};
                                index.emplace(e.key(), static_cast<std::uint32_t>(elems.size()));
                                elems.push_back(e);
                            }
                    }
        op.states = elems.size();
        op.neighbors.assign(op.states, {});
        for (std::size_t i = 0; i < elems.size(); ++i) {
            op.neighbors[i].reserve(gens.size());
            for (const QuotientElement& g : gens) op.neighbors[i].push_back(index.at((g * elems[i]).key()));
        }
    }

    // Connectivity of the action graph (undirected reachability; S symmetric).
    std::vector<char> vis(op.states, 0);
    std::vector<std::uint32_t> stack{0};
    vis[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        std::uint32_t v = stack.back();
        stack.pop_back();
        for (std::uint32_t w : op.neighbors[v])
            if (!vis[w]) {
                vis[w] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    op.connected = count == op.states;
    return op;
}

namespace {

void deflate(std::vector<double>& v) {
    double mean = 0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    for (double& x : v) x -= mean;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

double dense_operator_norm(const SchreierOperator& op) {
    const auto n = static_cast<Eigen::Index>(op.states);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    const double w = 1.0 / static_cast<double>(op.degree);
    for (std::size_t i = 0; i < op.states; ++i)
        for (std::uint32_t j : op.neighbors[i]) m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) += w;
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n) -
                        Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
    Eigen::MatrixXd a = p * m * p;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (a + a.transpose()),
                                                      Eigen::EigenvaluesOnly);
    double best = 0;
    for (Eigen::Index i = 0; i < n; ++i) best = std::max(best, std::abs(es.eigenvalues()[i]));
    return best;
}

GapEstimate operator_norm_est(const SchreierOperator& op, double tol, long maxIter, std::uint64_t seed) {
    GapEstimate g;
    g.modulus = op.modulus;
    g.states = op.states;
    g.connected = op.connected;
    if (op.states < 2) {
        g.certifiedUpper = 0;
        g.kazhdanLower = 1;
        return g;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(op.states);
    for (double& x : v) x = dist(rng);
    deflate(v);
    double nv = std::sqrt(dot(v, v));
    if (nv == 0) {
        v[0] = 1;
        v[1] = -1;
        nv = std::sqrt(2.0);
    }
    for (double& x : v) x /= nv;

    std::vector<double> w, u(op.states), r(op.states);
    double theta2 = 0, resid = 0;
    for (g.iterations = 0; g.iterations < maxIter; ++g.iterations) {
        op.apply(v, u);
        deflate(u);
        op.apply(u, w);
        deflate(w);
        theta2 = dot(v, w);  // Rayleigh quotient of op^2 on the mean-zero subspace
        resid = 0;
        for (std::size_t i = 0; i < op.states; ++i) {
            double d = w[i] - theta2 * v[i];
            resid += d * d;
        }
        resid = std::sqrt(resid);
        double nw = std::sqrt(dot(w, w));
        if (nw == 0) break;  // iterate annihilated: norm 0 on this subspace
        for (std::size_t i = 0; i < op.states; ++i) v[i] = w[i] / nw;
        if (resid <= tol) {
            g.converged = true;
            ++g.iterations;
            break;
        }
    }
    g.residual = resid;
    g.normEstimate = std::sqrt(std::max(0.0, theta2));
    g.certifiedUpper = std::sqrt(std::min(1.0, std::max(0.0, theta2 + resid)));
    g.kazhdanLower = std::min(1.0, std::max(0.0, 1.0 - g.certifiedUpper));
    if (op.states <= 4000) {
        g.dense_checked = true;
        g.dense_norm = dense_operator_norm(op);
    }
    return g;
}

HerzReport herz_compare(const std::vector<AffineElement>& s, long p, double tol) {
    if (p != 2 && p != 3 && p != 5) throw std::invalid_argument("herz_compare supports p in {2,3,5}");
    HerzReport rep;
    rep.plane_norm = dense_operator_norm(schreier_operator(s, p, ActionMode::Plane));
    rep.cayley_norm = dense_operator_norm(schreier_operator(s, p, ActionMode::Cayley));
    rep.slack = rep.cayley_norm - rep.plane_norm;
    rep.holds = rep.plane_norm <= rep.cayley_norm + tol;
    return rep;
}

long certified_word_length(const FreePairCertificate& cert) {
    long la = static_cast<long>(cert.word_a0.letters.size());
    long lh = static_cast<long>(cert.word_h0.letters.size());
    long a_len, h_len;
    switch (cert.case_index) {
        case 1:
            a_len = la;
            h_len = lh;
            break;
        case 2:
            a_len = la;
            h_len = cert.n4 * (la + 2 * lh);  // h = (h0 a0 h0^-1)^N4
            break;
        case 3:
            a_len = la + 2 * lh;  // a = b0
            h_len = cert.n4 * la;
            break;
        default:
            throw std::invalid_argument("certificate has an invalid case index");
    }
    // b_final = h a^ell h^-1 is the longer of the two words.
    return 2 * h_len + cert.ell * a_len;
}

KazhdanReport l2_kazhdan_from_action(const FreePairCertificate& cert, long n) {
    KazhdanReport rep;
    rep.word_length = certified_word_length(cert);
    rep.implied_lower = make_rat(Int(1), Int(8 * rep.word_length));
    SchreierOperator op = schreier_operator(cert.input_set, n, ActionMode::Plane);
    rep.measured = operator_norm_est(op, 1e-12, 20000, 0);
    rep.consistent = rep.measured.kazhdanLower >= rep.implied_lower.get_d();
    return rep;
}

}  // namespace affinecert
