#pragma once

#include "network.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

namespace mnec {

// Lexicographic k-subsets of {0..n-1}.
class combinations {
public:
    combinations(std::size_t n, std::size_t k) : n_(n), k_(k), cur_(k) {
        for (std::size_t i = 0; i < k; ++i) cur_[i] = i;
        done_ = k > n;
    }
    bool done() const { return done_; }
    const std::vector<std::size_t>& get() const { return cur_; }
    void next() {
        std::size_t i = k_;
        while (i > 0) {
            --i;
            if (cur_[i] < n_ - k_ + i) {
                ++cur_[i];
                for (std::size_t j = i + 1; j < k_; ++j) cur_[j] = cur_[j - 1] + 1;
                return;
            }
        }
        done_ = true;
    }

private:
    std::size_t n_, k_;
    std::vector<std::size_t> cur_;
    bool done_ = false;
};

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

struct verdict {
    bool pass = true;
    std::size_t beta = 0;
    std::size_t sink = 0;               // node index of the failing sink
    std::vector<std::size_t> pattern;   // failing pattern (edge indices)
    std::uint64_t patterns_checked = 0;

    std::string line(const network& net) const {
        if (pass) return "PASS β=" + std::to_string(beta);
        std::string s = "FAIL sink=" + net.nodes[sink].id + " pattern=";
        for (std::size_t i = 0; i < pattern.size(); ++i) s += (i ? "," : "") + net.edges[pattern[i]].id;
        if (pattern.empty()) s += "-";
        return s;
    }
};

namespace detail {

// True when every column of rhs lies in the column span of m. Both share rows.
// Works in place on a scratch buffer of (rows x (mc + rc)).
inline bool span_contains(const field& f, std::vector<elem>& buf, std::size_t rows, std::size_t mc, std::size_t rc) {
    std::size_t w = mc + rc;
    std::size_t r = 0;
    for (std::size_t c = 0; c < mc && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && buf[piv * w + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = c; j < w; ++j) std::swap(buf[piv * w + j], buf[r * w + j]);
        elem iv = f.inv(buf[r * w + c]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            elem x = buf[i * w + c];
            if (!x) continue;
            elem s = f.neg(f.mul(x, iv));
            for (std::size_t j = c; j < w; ++j)
                if (buf[r * w + j]) buf[i * w + j] = f.add(buf[i * w + j], f.mul(s, buf[r * w + j]));
        }
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        for (std::size_t j = mc; j < w; ++j)
            if (buf[i * w + j]) return false;
    return true;
}


}  // namespace detail

// Decodability check of a single (sink, pattern): demanded unit columns (padded
// with zeros below) in the span of [F_{S,t}; F_{P,t}].
inline bool decodable(const network& net, const transfer& tr, std::size_t t, const std::vector<std::size_t>& pattern,
                      std::vector<elem>* scratch = nullptr) {
    auto in = net.in_edges(t);
    const auto& demand = net.nodes[t].messages;
    std::size_t n = net.n(), rows = n + pattern.size(), mc = in.size(), rc = demand.size(), w = mc + rc;
    std::vector<elem> local;
    std::vector<elem>& buf = scratch ? *scratch : local;
    buf.assign(rows * w, 0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < mc; ++c) buf[r * w + c] = tr.g(r, in[c]);
    for (std::size_t p = 0; p < pattern.size(); ++p)
        for (std::size_t c = 0; c < mc; ++c) buf[(n + p) * w + c] = tr.f(pattern[p], in[c]);
    for (std::size_t d = 0; d < rc; ++d) buf[demand[d] * w + mc + d] = 1;
    return detail::span_contains(net.fld, buf, rows, mc, rc);
}

// Every sink, every eligible pattern of size beta (all eligible edges when
// fewer exist). The reported witness is the lexicographically first failing
// pattern, first failing sink within it, independent of the worker count.
inline verdict check_detecting(const network& net, const network_code& code, std::size_t beta, unsigned jobs = 1) {
    transfer tr = transfer_compute(net, code);
    auto el = net.eligible_edges();
    auto sinks = net.sinks();
    std::size_t k = std::min(beta, el.size());
    std::uint64_t total = binomial(el.size(), k);
    jobs = std::max(1u, jobs);
    std::atomic<std::uint64_t> best{total};
    std::vector<std::size_t> fail_sink(jobs, 0);
    std::vector<std::uint64_t> fail_idx(jobs, total);
    auto work = [&](unsigned w) {
        std::vector<elem> scratch;
        std::vector<std::size_t> pat(k);
        std::uint64_t idx = 0;
        for (combinations c(el.size(), k); !c.done(); c.next(), ++idx) {
            if (idx % jobs != w) continue;
            if (idx >= best.load(std::memory_order_relaxed)) return;
            for (std::size_t i = 0; i < k; ++i) pat[i] = el[c.get()[i]];
            for (auto t : sinks) {
                if (!decodable(net, tr, t, pat, &scratch)) {
                    fail_idx[w] = idx;
                    fail_sink[w] = t;
                    std::uint64_t cur = best.load();
                    while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
                    }
                    return;
                }
            }
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> th;
        for (unsigned w = 0; w < jobs; ++w) th.emplace_back(work, w);
        for (auto& t : th) t.join();
    }
    verdict v;
    v.beta = beta;
    std::uint64_t b = best.load();
    v.patterns_checked = b == total ? total : b + 1;
    if (b == total) return v;
    v.pass = false;
    for (unsigned w = 0; w < jobs; ++w)
        if (fail_idx[w] == b) v.sink = fail_sink[w];
    std::uint64_t idx = 0;
    for (combinations c(el.size(), k); !c.done(); c.next(), ++idx)
        if (idx == b) {
            for (auto i : c.get()) v.pattern.push_back(el[i]);
            break;
        }
    return v;
}

inline verdict check_correcting(const network& net, const network_code& code, std::size_t alpha, unsigned jobs = 1) {
    return check_detecting(net, code, 2 * alpha, jobs);
}

// n_t x |D_t| matrix X with [F_{S,t}; F_{P,t}] X = [I_D; 0].
inline std::optional<matrix> decoding_matrix(const network& net, const network_code& code, std::size_t t,
                                             const std::vector<std::size_t>& pattern) {
    transfer tr = transfer_compute(net, code);
    auto in = net.in_edges(t);
    matrix m = tr.g.select_cols(in).vcat(tr.f.select_rows(pattern).select_cols(in));
    const auto& demand = net.nodes[t].messages;
    matrix x(net.fld, in.size(), demand.size());
    for (std::size_t d = 0; d < demand.size(); ++d) {
        std::vector<elem> rhs(m.rows(), 0);
        rhs[demand[d]] = 1;
        auto c = span_member(m, rhs);
        if (!c) return std::nullopt;
        for (std::size_t r = 0; r < in.size(); ++r) x(r, d) = (*c)[r];
    }
    return x;
}

struct oracle_result {
    bool pass = true;
    bool budget_exceeded = false;
    std::uint64_t evaluations = 0;
    std::size_t sink = 0;
    std::vector<std::size_t> pattern;
    std::vector<elem> x1, z1, x2, z2;  // colliding pair, z over the pattern edges

    std::string line(const network& net) const {
        if (budget_exceeded) return "INCONCLUSIVE budget exceeded";
        if (pass) return "PASS evaluations=" + std::to_string(evaluations);
        auto show = [](const std::vector<elem>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
            return "(" + s + ")";
        };
        std::string s = "FAIL sink=" + net.nodes[sink].id + " pattern=";
        for (std::size_t i = 0; i < pattern.size(); ++i) s += (i ? "," : "") + net.edges[pattern[i]].id;
        if (pattern.empty()) s += "-";
        return s + " x=" + show(x1) + " z=" + show(z1) + " vs x=" + show(x2) + " z=" + show(z2);
    }
};

// Enumerate every message vector and every error assignment on each pattern;
// outputs y_t = x F_{S,t} + z F_t must separate distinct demanded values.
inline oracle_result semantic_oracle(const network& net, const network_code& code, std::size_t beta,
                                     std::uint64_t budget = 10'000'000) {
    oracle_result res;
    transfer tr = transfer_compute(net, code);
    const field& f = net.fld;
    auto el = net.eligible_edges();
    auto sinks = net.sinks();
    std::size_t k = std::min(beta, el.size()), n = net.n();
    std::uint64_t q = f.order(), per = 1;
    for (std::size_t i = 0; i < n + k; ++i) {
        per *= q;
        if (per > budget) {
            res.budget_exceeded = true;
            return res;
        }
    }
    std::uint64_t total = per * binomial(el.size(), k) * sinks.size();
    if (total > budget) {
        res.budget_exceeded = true;
        return res;
    }
    std::vector<std::size_t> pat(k);
    for (combinations c(el.size(), k); !c.done(); c.next()) {
        for (std::size_t i = 0; i < k; ++i) pat[i] = el[c.get()[i]];
        for (auto t : sinks) {
            auto in = net.in_edges(t);
            const auto& demand = net.nodes[t].messages;
            std::unordered_map<std::string, std::pair<std::vector<elem>, std::vector<elem>>> seen;
            std::vector<elem> v(n + k, 0);
            for (std::uint64_t it = 0; it < per; ++it) {
                std::uint64_t x = it;
                for (std::size_t i = 0; i < n + k; ++i) {
                    v[i] = static_cast<elem>(x % q);
                    x /= q;
                }
                std::string y;
                for (auto e : in) {
                    elem s = 0;
                    for (std::size_t i = 0; i < n; ++i) s = f.add(s, f.mul(v[i], tr.g(i, e)));
                    for (std::size_t i = 0; i < k; ++i) s = f.add(s, f.mul(v[n + i], tr.f(pat[i], e)));
                    y += std::to_string(s) + ',';
                }
                ++res.evaluations;
                auto [pos, fresh] = seen.emplace(y, std::make_pair(v, std::vector<elem>{}));
                if (fresh) continue;
                const auto& other = pos->second.first;
                bool differs = false;
                for (auto d : demand)
                    if (other[d] != v[d]) differs = true;
                if (differs) {
                    res.pass = false;
                    res.sink = t;
                    res.pattern = pat;
                    res.x1.assign(other.begin(), other.begin() + static_cast<std::ptrdiff_t>(n));
                    res.z1.assign(other.begin() + static_cast<std::ptrdiff_t>(n), other.end());
                    res.x2.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
                    res.z2.assign(v.begin() + static_cast<std::ptrdiff_t>(n), v.end());
                    return res;
                }
            }
        }
    }
    return res;
}

// Full-rank reformulation for multiple-unicast codes: abar maps each sink to
// an n_t x (2α+1) matrix with F_{S,t} Ā = (I^j ... I^j). The check needs
// [1 ... 1; F_{P,t} Ā] to be full rank for every pattern P of size 2α.
struct fullrank_result {
    bool pass = true;
    bool bookkeeping_ok = true;
    std::size_t sink = 0;
    std::vector<std::size_t> pattern;
};

inline fullrank_result unicast_fullrank_check(const network& net, const network_code& code, std::size_t alpha,
                                              const std::map<std::size_t, matrix>& abar) {
    fullrank_result res;
    transfer tr = transfer_compute(net, code);
    const field& f = net.fld;
    std::size_t w = 2 * alpha + 1;
    auto el = net.eligible_edges();
    std::size_t k = std::min(2 * alpha, el.size());
    for (auto t : net.sinks()) {
        auto it = abar.find(t);
        if (it == abar.end()) {
            res.pass = res.bookkeeping_ok = false;
            res.sink = t;
            return res;
        }
        const matrix& ab = it->second;
        auto in = net.in_edges(t);
        if (ab.rows() != in.size() || ab.cols() != w || net.nodes[t].messages.size() != 1) {
            res.pass = res.bookkeeping_ok = false;
            res.sink = t;
            return res;
        }
        matrix prod = tr.g.select_cols(in) * ab;
        std::size_t j = net.nodes[t].messages[0];
        for (std::size_t r = 0; r < prod.rows(); ++r)
            for (std::size_t c = 0; c < w; ++c)
                if (prod(r, c) != (r == j ? 1u : 0u)) {
                    res.pass = res.bookkeeping_ok = false;
                    res.sink = t;
                    return res;
                }
        for (combinations c(el.size(), k); !c.done(); c.next()) {
            std::vector<std::size_t> pat;
            for (auto i : c.get()) pat.push_back(el[i]);
            matrix top(f, 1, w, std::vector<elem>(w, 1));
            matrix sq = top.vcat(tr.f.select_rows(pat).select_cols(in) * ab);
            if (sq.rank() < std::min(sq.rows(), sq.cols())) {
                res.pass = false;
                res.sink = t;
                res.pattern = pat;
                return res;
            }
        }
    }
    return res;
}

}  // namespace mnec
