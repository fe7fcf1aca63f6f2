#pragma once

#include "io.hpp"
#include "matroidal.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

namespace mnec {

struct bench_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Symbols 0..3 read both as integers mod 4 and as bit pairs (value = 2*hi + lo).
namespace alphabet4 {

using sym = std::uint32_t;

inline sym add(sym a, sym b) { return (a + b) & 3u; }
inline sym sub(sym a, sym b) { return (a + 4u - b) & 3u; }
inline sym neg(sym a) { return (4u - a) & 3u; }
inline sym bit_xor(sym a, sym b) { return (a ^ b) & 3u; }
inline sym swap(sym a) { return ((a & 1u) << 1) | ((a >> 1) & 1u); }

}  // namespace alphabet4

struct alphabet4_result {
    alphabet4::sym sum4, diff4, xor22, t;
};

inline alphabet4_result alphabet4_ops(alphabet4::sym a, alphabet4::sym b) {
    if (a > 3 || b > 3) throw bench_error("alphabet-4 symbol out of range");
    return {alphabet4::add(a, b), alphabet4::sub(a, b), alphabet4::bit_xor(a, b), alphabet4::swap(a)};
}

// Edge functions over the 4-symbol alphabet. A term names a message (only on
// a source's outgoing edge) or an incoming edge of the tail node.
struct nl_term {
    bool message = false;
    std::size_t idx = 0;
    bool swap = false;
    bool negate = false;
};

enum class nl_op { bit_xor, add4 };

struct nl_function {
    nl_op op = nl_op::bit_xor;
    std::vector<nl_term> terms;
};

struct nonlinear_code {
    std::vector<nl_function> fn;  // one per edge
};

// Lines "fn <edge> xor|add <term>..." with terms "name", "-name", "t(name)", "-t(name)".
inline nonlinear_code read_nonlinear(std::istream& is, const network& net) {
    nonlinear_code code;
    code.fn.resize(net.edges.size());
    std::vector<bool> seen(net.edges.size(), false);
    std::string line;
    while (std::getline(is, line)) {
        auto t = detail::tokens(detail::strip_comment(line));
        if (t.empty()) continue;
        if (t.size() < 4 || t[0] != "fn") throw io_error("function line needs 'fn edge op term...'");
        std::size_t j;
        try {
            j = net.edge_index(t[1]);
        } catch (const network_error& e) {
            throw io_error(e.what());
        }
        if (seen[j]) throw io_error("edge " + t[1] + " has two functions");
        seen[j] = true;
        nl_function f;
        if (t[2] == "xor")
            f.op = nl_op::bit_xor;
        else if (t[2] == "add")
            f.op = nl_op::add4;
        else
            throw io_error("unknown operation '" + t[2] + "'");
        std::size_t tail = net.edges[j].tail;
        auto ins = net.in_edges(tail);
        for (std::size_t k = 3; k < t.size(); ++k) {
            std::string s = t[k];
            nl_term term;
            if (!s.empty() && s[0] == '-') {
                term.negate = true;
                s = s.substr(1);
            }
            if (s.size() > 3 && s.rfind("t(", 0) == 0 && s.back() == ')') {
                term.swap = true;
                s = s.substr(2, s.size() - 3);
            }
            if (term.negate && f.op == nl_op::bit_xor) throw io_error("negation has no meaning under xor");
            auto it = std::find_if(ins.begin(), ins.end(), [&](std::size_t e) { return net.edges[e].id == s; });
            if (it != ins.end()) {
                term.idx = *it;
            } else {
                std::size_t m;
                try {
                    m = net.message_index(s);
                } catch (const network_error&) {
                    throw io_error("term '" + s + "' of edge " + t[1] + " is neither an input edge nor a message");
                }
                const auto& gen = net.nodes[tail].messages;
                if (net.nodes[tail].kind != role::source || std::find(gen.begin(), gen.end(), m) == gen.end())
                    throw io_error("edge " + t[1] + " reads message " + s + " not generated at its tail");
                term.message = true;
                term.idx = m;
            }
            f.terms.push_back(term);
        }
        code.fn[j] = f;
    }
    for (std::size_t j = 0; j < net.edges.size(); ++j)
        if (!seen[j]) throw io_error("edge " + net.edges[j].id + " has no function");
    return code;
}

// A code evaluated symbol by symbol: out[j] is the symbol on edge j when the
// output of edge err is replaced by val (err == npos for no substitution).
struct symbol_code {
    std::uint32_t q = 0;
    std::function<void(const std::vector<std::uint32_t>& msg, std::size_t err, std::uint32_t val,
                       std::vector<std::uint32_t>& out)>
        run;
};

inline symbol_code as_symbol_code(const network& net, const nonlinear_code& code) {
    if (code.fn.size() != net.edges.size()) throw bench_error("function table does not match the network");
    symbol_code sc;
    sc.q = 4;
    sc.run = [fn = code.fn](const std::vector<std::uint32_t>& msg, std::size_t err, std::uint32_t val,
                            std::vector<std::uint32_t>& out) {
        out.resize(fn.size());
        for (std::size_t j = 0; j < fn.size(); ++j) {
            std::uint32_t acc = 0;
            for (const auto& t : fn[j].terms) {
                std::uint32_t v = t.message ? msg[t.idx] : out[t.idx];
                if (t.swap) v = alphabet4::swap(v);
                if (t.negate) v = alphabet4::neg(v);
                acc = fn[j].op == nl_op::bit_xor ? alphabet4::bit_xor(acc, v) : alphabet4::add(acc, v);
            }
            out[j] = j == err ? val : acc;
        }
    };
    return sc;
}

inline symbol_code as_symbol_code(const network& net, const network_code& code) {
    if (auto e = code.check(net); !e.empty()) throw network_error(e);
    symbol_code sc;
    sc.q = net.fld.order();
    sc.run = [f = net.fld, a = code.a, k = code.k](const std::vector<std::uint32_t>& msg, std::size_t err,
                                                     std::uint32_t val, std::vector<std::uint32_t>& out) {
        std::size_t m = a.cols();
        out.assign(m, 0);
        for (std::size_t j = 0; j < m; ++j) {
            elem s = 0;
            for (std::size_t i = 0; i < a.rows(); ++i)
                if (a(i, j)) s = f.add(s, f.mul(a(i, j), static_cast<elem>(msg[i])));
            for (std::size_t i = 0; i < j; ++i)
                if (k(i, j)) s = f.add(s, f.mul(k(i, j), static_cast<elem>(out[i])));
            out[j] = j == err ? val : s;
        }
    };
    return sc;
}

struct substitution_result {
    bool pass = true;
    bool budget_exceeded = false;
    std::uint64_t runs = 0;
    std::size_t sink = 0, edge = 0;
    std::vector<std::uint32_t> m1, m2;  // colliding message tuples
    std::uint32_t v1 = 0, v2 = 0;       // symbols substituted on the edge

    std::string line(const network& net) const {
        if (budget_exceeded) return "INCONCLUSIVE budget exceeded";
        if (pass) return "PASS runs=" + std::to_string(runs);
        auto show = [](const std::vector<std::uint32_t>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
            return s;
        };
        return "FAIL sink=" + net.nodes[sink].id + " edge=" + net.edges[edge].id + " messages=(" + show(m1) +
               ")/" + std::to_string(v1) + " vs (" + show(m2) + ")/" + std::to_string(v2);
    }
};

// Single-edge detection with known location under substitution errors: for
// each listed edge, the observations of every sink must separate distinct
// demanded values over all message tuples and all substituted symbols (the
// correct symbol included). Witness: smallest edge position, then sink.
inline substitution_result substitution_check(const network& net, const symbol_code& code,
                                              const std::vector<std::size_t>& edges, unsigned jobs = 1,
                                              std::uint64_t budget = 100'000'000) {
    substitution_result res;
    std::size_t n = net.n();
    std::uint64_t q = code.q, per = q;
    for (std::size_t i = 0; i < n; ++i) {
        per *= q;
        if (per > budget) {
            res.budget_exceeded = true;
            return res;
        }
    }
    if (per * edges.size() > budget) {
        res.budget_exceeded = true;
        return res;
    }
    auto sinks = net.sinks();
    std::vector<std::vector<std::size_t>> ins;
    for (auto t : sinks) ins.push_back(net.in_edges(t));

    struct hit {
        bool found = false;
        std::size_t sink = 0;
        std::uint64_t r1 = 0, r2 = 0;
    };
    std::vector<hit> hits(edges.size());
    auto decode_run = [&](std::uint64_t r, std::vector<std::uint32_t>& msg) {
        for (std::size_t i = 0; i < n; ++i) {
            msg[i] = static_cast<std::uint32_t>(r % q);
            r /= q;
        }
        return static_cast<std::uint32_t>(r % q);
    };
    auto one_edge = [&](std::size_t pos) {
        std::size_t e = edges[pos];
        std::vector<std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>>> seen(sinks.size());
        std::vector<std::uint64_t> first_bad(sinks.size(), per), other(sinks.size(), 0);
        std::vector<std::uint32_t> msg(n), out;
        for (std::uint64_t r = 0; r < per; ++r) {
            std::uint32_t v = decode_run(r, msg);
            code.run(msg, e, v, out);
            for (std::size_t s = 0; s < sinks.size(); ++s) {
                if (first_bad[s] != per) continue;
                std::uint64_t key = 0, dem = 0;
                for (auto j : ins[s]) key = key * q + out[j];
                for (auto d : net.nodes[sinks[s]].messages) dem = dem * q + msg[d];
                auto [it, fresh] = seen[s].emplace(key, std::make_pair(dem, r));
                if (!fresh && it->second.first != dem) {
                    first_bad[s] = r;
                    other[s] = it->second.second;
                }
            }
        }
        for (std::size_t s = 0; s < sinks.size(); ++s)
            if (first_bad[s] != per) {
                hits[pos] = {true, s, other[s], first_bad[s]};
                return;
            }
    };
    jobs = std::max(1u, jobs);
    if (jobs == 1) {
        for (std::size_t p = 0; p < edges.size(); ++p) one_edge(p);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> th;
        for (unsigned w = 0; w < jobs; ++w)
            th.emplace_back([&] {
                for (std::size_t p; (p = next.fetch_add(1)) < edges.size();) one_edge(p);
            });
        for (auto& t : th) t.join();
    }
    res.runs = per * edges.size();
    for (std::size_t p = 0; p < edges.size(); ++p)
        if (hits[p].found) {
            res.pass = false;
            res.edge = edges[p];
            res.sink = sinks[hits[p].sink];
            res.m1.resize(n);
            res.m2.resize(n);
            res.v1 = decode_run(hits[p].r1, res.m1);
            res.v2 = decode_run(hits[p].r2, res.m2);
            break;
        }
    return res;
}

inline substitution_result nonlinear_verify(const network& net, const nonlinear_code& code, unsigned jobs = 1) {
    std::vector<std::size_t> all(net.edges.size());
    for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
    return substitution_check(net, as_symbol_code(net, code), all, jobs);
}

// Every t(...) replaced by the identity.
inline nonlinear_code identity_mutant(nonlinear_code code) {
    for (auto& f : code.fn)
        for (auto& t : f.terms) t.swap = false;
    return code;
}

// Shipped fixture: topology with coefficient slots, fixed unit couplings, and
// the reference all-ones matroid (n1, n2) or the alphabet-4 code (n3).
struct fixture {
    std::string name;
    network net;
    network_code fixed;
    std::optional<vector_matroid> reference;
    std::optional<nonlinear_code> nonlinear;
};

inline fixture load_fixture(const std::string& name, const std::string& dir) {
    if (name != "n1" && name != "n2" && name != "n3") throw bench_error("unknown fixture '" + name + "'");
    fixture fx;
    fx.name = name;
    std::istringstream ns(read_file(dir + "/" + name + ".net"));
    auto nf = read_network(ns);
    fx.net = nf.net;
    fx.fixed = nf.code ? *nf.code : network_code::zero(fx.net);
    if (name == "n3") {
        std::istringstream fs(read_file(dir + "/n3.fn"));
        fx.nonlinear = read_nonlinear(fs, fx.net);
    } else {
        std::istringstream ms(read_file(dir + "/" + name + "_matroid.mat"));
        fx.reference = read_matroid(ms);
    }
    return fx;
}

// Same network and code entries over another field (entries must fit).
inline network with_field(network net, const field& f) {
    net.fld = f;
    return net;
}

inline network_code recode(const network_code& c, const field& f) {
    matrix a(f, c.a.rows(), c.a.cols()), k(f, c.k.rows(), c.k.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (c.a(i, j) >= f.order()) throw bench_error("coefficient does not fit the field");
            a(i, j) = c.a(i, j);
        }
    for (std::size_t i = 0; i < k.rows(); ++i)
        for (std::size_t j = 0; j < k.cols(); ++j) {
            if (c.k(i, j) >= f.order()) throw bench_error("coefficient does not fit the field");
            k(i, j) = c.k(i, j);
        }
    return {a, k};
}

// fixed couplings plus slot values in slot order
inline network_code assign_slots(const network& net, const network_code& fixed, const std::vector<elem>& v) {
    if (v.size() != net.slots.size()) throw bench_error("slot value count mismatch");
    network_code c = recode(fixed, net.fld);
    for (std::size_t s = 0; s < v.size(); ++s) {
        const auto& sl = net.slots[s];
        (sl.in_a ? c.a : c.k)(sl.i, sl.j) = v[s];
    }
    return c;
}

inline network_code all_ones(const network& net, const network_code& fixed) {
    return assign_slots(net, fixed, std::vector<elem>(net.slots.size(), 1));
}

enum class search_status { found, exhausted, inconclusive };

inline const char* status_name(search_status s) {
    switch (s) {
        case search_status::found: return "found";
        case search_status::exhausted: return "exhausted, none found";
        case search_status::inconclusive: return "inconclusive";
    }
    return "?";
}

struct search_options {
    std::size_t beta = 1;
    double budget_seconds = 1800;
    unsigned jobs = 1;
};

struct search_result {
    search_status status = search_status::exhausted;
    std::vector<elem> assignment;  // slot values in slot order when found
    std::uint64_t nodes = 0;
    double seconds = 0;
};

// Depth-first over the slots in file order. A sink is checked (all patterns
// of size beta) as soon as every slot upstream of its inputs is fixed, so a
// branch dies at the first sink that cannot decode. Top-level values are
// split across workers; the reported assignment is the first in DFS order.
inline search_result linear_detecting_search(const network& net0, const network_code& fixed, const field& f,
                                             const search_options& opt = {}) {
    using clock = std::chrono::steady_clock;
    auto start = clock::now();
    auto deadline = start + std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(opt.budget_seconds));
    network net = with_field(net0, f);
    network_code base = recode(fixed, f);
    std::size_t m = net.edges.size(), ns = net.slots.size();
    if (ns == 0) throw bench_error("network has no coefficient slots");

    // upstream closure of every edge (the edge itself included)
    std::vector<std::vector<bool>> up(m, std::vector<bool>(m, false));
    for (std::size_t j = 0; j < m; ++j) {
        up[j][j] = true;
        for (std::size_t k = 0; k < j; ++k)
            if (net.edges[k].head == net.edges[j].tail)
                for (std::size_t i = 0; i < m; ++i)
                    if (up[k][i]) up[j][i] = true;
    }
    auto sinks = net.sinks();
    std::vector<std::vector<std::size_t>> due(ns + 1);  // sinks checked after slot d is set (index d+1), 0 = before
    for (auto t : sinks) {
        std::size_t last = 0;
        for (auto e : net.in_edges(t))
            for (std::size_t s = 0; s < ns; ++s)
                if (up[e][net.slots[s].j]) last = std::max(last, s + 1);
        due[last].push_back(t);
    }
    auto el = net.eligible_edges();
    std::size_t k = std::min(opt.beta, el.size());
    std::vector<std::vector<std::size_t>> patterns;
    for (combinations c(el.size(), k); !c.done(); c.next()) {
        std::vector<std::size_t> p;
        for (auto i : c.get()) p.push_back(el[i]);
        patterns.push_back(p);
    }
    auto sinks_ok = [&](const network_code& c, const std::vector<std::size_t>& ts, std::vector<elem>& buf) {
        if (ts.empty()) return true;
        transfer tr = transfer_compute(net, c);
        for (auto t : ts)
            for (const auto& p : patterns)
                if (!decodable(net, tr, t, p, &buf)) return false;
        return true;
    };

    std::uint32_t q = f.order();
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> timed_out{false};
    enum class outcome { exhausted, found, aborted };
    std::vector<outcome> per_value(q, outcome::exhausted);
    std::vector<std::vector<elem>> found_at(q);

    {
        std::vector<elem> buf;
        if (!sinks_ok(base, due[0], buf)) {
            search_result r;
            r.seconds = std::chrono::duration<double>(clock::now() - start).count();
            return r;
        }
    }

    auto worker = [&](unsigned w, unsigned jobs) {
        std::vector<elem> buf, vals(ns, 0);
        network_code c = base;
        auto set = [&](std::size_t s, elem v) {
            const auto& sl = net.slots[s];
            (sl.in_a ? c.a : c.k)(sl.i, sl.j) = v;
            vals[s] = v;
        };
        // returns 1 found, 0 exhausted, -1 aborted
        std::function<int(std::size_t)> dfs = [&](std::size_t d) -> int {
            if (d == ns) return 1;
            for (elem v = 0; v < q; ++v) {
                if ((nodes.fetch_add(1, std::memory_order_relaxed) & 1023) == 0 && clock::now() > deadline)
                    timed_out = true;
                if (timed_out) return -1;
                set(d, v);
                if (!sinks_ok(c, due[d + 1], buf)) continue;
                int r = dfs(d + 1);
                if (r != 0) return r;
            }
            set(d, 0);
            return 0;
        };
        for (elem v = w; v < q; v += jobs) {
            set(0, v);
            int r = -1;
            if (!timed_out) {
                nodes.fetch_add(1, std::memory_order_relaxed);
                r = sinks_ok(c, due[1], buf) ? dfs(1) : 0;
            }
            per_value[v] = r == 1 ? outcome::found : r == 0 ? outcome::exhausted : outcome::aborted;
            if (r == 1) {
                found_at[v] = vals;
                return;
            }
        }
    };
    unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, q));
    if (jobs == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> th;
        for (unsigned w = 0; w < jobs; ++w) th.emplace_back(worker, w, jobs);
        for (auto& t : th) t.join();
    }
    search_result res;
    res.nodes = nodes.load();
    res.seconds = std::chrono::duration<double>(clock::now() - start).count();
    bool aborted = false;
    for (std::uint32_t v = 0; v < q; ++v) {
        if (per_value[v] == outcome::found) {
            // a found assignment is final only if no earlier branch was cut short
            if (aborted) break;
            res.status = search_status::found;
            res.assignment = found_at[v];
            if (!check_detecting(net, assign_slots(net, base, res.assignment), opt.beta).pass)
                throw bench_error("search accepted an assignment that fails detection");
            return res;
        }
        if (per_value[v] == outcome::aborted) aborted = true;
    }
    res.status = aborted ? search_status::inconclusive : search_status::exhausted;
    return res;
}

inline search_result linear_detecting_search(const fixture& fx, const field& f, const search_options& opt = {}) {
    return linear_detecting_search(fx.net, fx.fixed, f, opt);
}

struct amalgam_report {
    std::size_t restriction_checked = 0, restriction_mismatches = 0;
    std::string restriction_witness;
    axiom_report axioms;
    std::string monotonicity_witness;  // minimal X and shared x with r(X ∪ x) < r(X), if any
    std::size_t rank1 = 0, rank2 = 0, shared = 0, full_rank = 0;
    matroidal_result matroidal;
    // Same checks against the closed amalgam.
    std::size_t closed_restriction_mismatches = 0, closed_full_rank = 0;
    axiom_report closed_axioms;
    matroidal_result closed_matroidal;

    bool closed_pass() const {
        return closed_restriction_mismatches == 0 && closed_axioms.ok && closed_full_rank == rank1 + rank2 - shared &&
               closed_matroidal.pass;
    }

    bool pass() const {
        return restriction_mismatches == 0 && axioms.ok && full_rank == rank1 + rank2 - shared && matroidal.pass;
    }
};

// Ground map for the conjoined network: messages to x1.., and the eligible
// edges "n1.eK" / "n2.eK" to y'K / z'K with errors yK / zK.
inline std::pair<ground_map, basis_assignment> conjoined_assignment(const network& net, const rank_oracle& r) {
    auto at = [&](const std::string& l) {
        for (std::size_t i = 0; i < r.ground.size(); ++i)
            if (r.ground[i] == l) return i;
        throw bench_error("label " + l + " missing from the amalgam");
    };
    ground_map f;
    basis_assignment b;
    for (std::size_t i = 0; i < net.n(); ++i) {
        f.msg.push_back(at("x" + std::to_string(i + 1)));
        b.b.push_back(f.msg.back());
    }
    std::vector<std::size_t> errs;
    for (auto j : net.eligible_edges()) {
        const std::string& id = net.edges[j].id;
        if (id.size() < 5 || id[2] != '.' || id[3] != 'e') throw bench_error("edge " + id + " is not a conjoined edge");
        std::string side = id.substr(0, 2), num = id.substr(4);
        std::string err = side == "n1" ? "y" : "z";
        f.edge.push_back(at(err + "'" + num));
        errs.push_back(at(err + num));
    }
    b.b.insert(b.b.end(), errs.begin(), errs.end());
    return {f, b};
}

inline amalgam_report n3_amalgam_checks(const vector_matroid& m1, const vector_matroid& m2, const network& n3,
                                        std::size_t samples = 1000, std::uint64_t seed = 1) {
    amalgam_report rep;
    rank_oracle r1 = rank_oracle::of(m1), r2 = rank_oracle::of(m2);
    rank_oracle am = amalgam(r1, r2);
    rep.rank1 = m1.rank();
    rep.rank2 = m2.rank();
    for (const auto& l : m1.labels())
        if (std::find(m2.labels().begin(), m2.labels().end(), l) != m2.labels().end()) ++rep.shared;

    rank_oracle cl = amalgam_closed(r1, r2);
    index_set all(am.ground.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

    std::mt19937_64 rng(seed);
    auto side = [&](const vector_matroid& m) {
        std::vector<std::size_t> pos;
        for (const auto& l : m.labels())
            for (std::size_t i = 0; i < am.ground.size(); ++i)
                if (am.ground[i] == l) pos.push_back(i);
        for (std::size_t s = 0; s < samples; ++s) {
            index_set x, y;
            for (std::size_t i = 0; i < pos.size(); ++i)
                if (rng() & 1) {
                    x.push_back(i);
                    y.push_back(pos[i]);
                }
            std::sort(y.begin(), y.end());
            ++rep.restriction_checked;
            std::size_t want = m.rank(x);
            if (cl.rank(y) != want) ++rep.closed_restriction_mismatches;
            if (am.rank(y) != want) {
                ++rep.restriction_mismatches;
                if (rep.restriction_witness.empty()) {
                    rep.restriction_witness = "{";
                    for (std::size_t i = 0; i < x.size(); ++i)
                        rep.restriction_witness += (i ? "," : "") + m.labels()[x[i]];
                    rep.restriction_witness += "}";
                }
            }
        }
    };
    side(m1);
    side(m2);
    rep.axioms = rank_axioms_check(am, false, samples, seed + 1);
    rep.full_rank = am.rank(all);
    for (std::size_t sx = 0; sx < am.ground.size() && rep.monotonicity_witness.empty(); ++sx) {
        if (std::find(m2.labels().begin(), m2.labels().end(), am.ground[sx]) == m2.labels().end()) continue;
        index_set x;
        for (auto e : all)
            if (e != sx) x.push_back(e);
        auto drops = [&](const index_set& xs) {
            index_set ys = xs;
            ys.insert(std::lower_bound(ys.begin(), ys.end(), sx), sx);
            return am.rank(ys) < am.rank(xs);
        };
        if (!drops(x)) continue;
        for (std::size_t i = x.size(); i-- > 0;) {
            index_set t = x;
            t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
            if (drops(t)) x = t;
        }
        std::string w = "X={";
        for (std::size_t i = 0; i < x.size(); ++i) w += (i ? "," : "") + am.ground[x[i]];
        index_set y = x;
        y.insert(std::lower_bound(y.begin(), y.end(), sx), sx);
        rep.monotonicity_witness = w + "} r(X)=" + std::to_string(am.rank(x)) + " r(X+" + am.ground[sx] +
                                   ")=" + std::to_string(am.rank(y));
    }
    auto [f, b] = conjoined_assignment(n3, am);
    rep.matroidal = check_matroidal(n3, am, f, b, 1);
    rep.closed_axioms = rank_axioms_check(cl, false, samples, seed + 1);
    rep.closed_full_rank = cl.rank(all);
    rep.closed_matroidal = check_matroidal(n3, cl, f, b, 1);
    return rep;
}

}  // namespace mnec
