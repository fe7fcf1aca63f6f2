#pragma once

#include "io.hpp"
#include "matroidal.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace mnec {

struct build_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class build_mode { multicast, unicast };

struct build_params {
    build_mode mode = build_mode::multicast;
    std::vector<std::size_t> sources{1};  // messages per source; unicast uses n ones
    std::size_t alpha = 1;
    std::size_t nc = 1;                   // coding nodes to add
    std::size_t sinks = 1;                // multicast only; unicast has one per source
    field fld = field::parse("gf8");
    std::uint64_t seed = 1;
    std::size_t ec = 2;
    std::uint64_t trial_budget = 1'000'000;
    bool minimize = false;
    std::vector<std::size_t> minimize_steps;  // 1-based steps to minimize at; empty means every step
    bool prefer_newest = false;               // tie rule: favour subsets of later edges over lexicographic order
    std::vector<trace_step> replay;       // recorded choices; bypasses the rng when non-empty
};

// Portable bounded draws on top of mt19937_64.
class build_rng {
public:
    explicit build_rng(std::uint64_t seed) : g_(seed) {}
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t lim = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        for (;;) {
            std::uint64_t v = g_();
            if (v < lim) return v % n;
        }
    }

private:
    std::mt19937_64 g_;
};

struct sink_state {
    std::vector<std::size_t> demand;  // message indices
    std::vector<std::size_t> in;      // eligible edge indices, sorted
    std::optional<matrix> abar;       // unicast bookkeeping, rows aligned with in
};

struct coding_record {
    std::vector<std::size_t> inputs;  // eligible edge indices
    std::vector<elem> coefs;
};

struct build_state {
    build_params p;
    std::size_t n = 0;
    std::vector<std::size_t> msg_source;   // source index of each message
    std::vector<std::size_t> init_source;  // source index of each initial edge
    std::vector<coding_record> coded;      // edges init_source.size() .. E-1
    matrix x;                              // (n+E) x E: global vectors over F_el
    std::vector<sink_state> sinks;
    std::vector<trace_step> trace;
    std::vector<matrix> stages;            // (I | X) after init and after each extension
    std::uint64_t candidates_tried = 0;

    std::size_t edges() const { return x.cols(); }
    std::size_t beta() const { return 2 * p.alpha; }

    matrix rep() const { return matrix::identity(p.fld, n + edges()).hcat(x); }
    vector_matroid matroid() const { return vector_matroid(rep(), standard_labels(n, edges())); }
};

namespace detail {

// Condition (C) at one sink: for every pattern of size beta, the demanded unit
// vectors lie in the span of the In columns restricted to message rows plus
// the pattern's error rows.
inline bool condition_c(const matrix& x, std::size_t n, const std::vector<std::size_t>& in,
                        const std::vector<std::size_t>& demand, std::size_t beta, std::vector<elem>& buf) {
    std::size_t e = x.cols(), k = std::min(beta, e), mc = in.size(), rc = demand.size(), w = mc + rc;
    std::size_t rows = n + k;
    const field& f = x.fld();
    for (combinations c(e, k); !c.done(); c.next()) {
        buf.assign(rows * w, 0);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t j = 0; j < mc; ++j) buf[r * w + j] = x(r, in[j]);
        for (std::size_t p = 0; p < k; ++p)
            for (std::size_t j = 0; j < mc; ++j) buf[(n + p) * w + j] = x(n + c.get()[p], in[j]);
        for (std::size_t d = 0; d < rc; ++d) buf[demand[d] * w + mc + d] = 1;
        if (!span_contains(f, buf, rows, mc, rc)) return false;
    }
    return true;
}

inline bool contains(const std::vector<std::size_t>& v, std::size_t x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace detail

inline std::size_t message_count(const build_params& p) {
    std::size_t n = 0;
    for (auto s : p.sources) n += s;
    return n;
}

// Field-size rule: q > |T| * C(|E|, 2α) guarantees a valid vector exists
// at every multicast step.
inline bool field_size_rule_holds(const build_params& p) {
    std::size_t n = message_count(p);
    std::size_t init = p.mode == build_mode::multicast ? n + p.sources.size() * 2 * p.alpha : n * (1 + 2 * p.alpha);
    std::size_t t = p.mode == build_mode::multicast ? p.sinks : n;
    long double bound = static_cast<long double>(t) * static_cast<long double>(binomial(init + p.nc, 2 * p.alpha));
    return static_cast<long double>(p.fld.order()) > bound;
}

inline build_state init_multicast(const build_params& p) {
    if (p.sources.empty()) throw build_error("at least one source is required");
    build_state s;
    s.p = p;
    s.n = message_count(p);
    if (s.n == 0) throw build_error("sources must carry messages");
    std::vector<matrix> blocks;
    std::size_t total = 0;
    for (std::size_t k = 0; k < p.sources.size(); ++k) {
        std::size_t ns = p.sources[k], len = ns + 2 * p.alpha;
        if (ns == 0) throw build_error("every source needs at least one message");
        try {
            blocks.push_back(rs_generator(ns, len, p.fld));
        } catch (const matroid_error&) {
            throw build_error("field " + p.fld.name() + " too small for an MDS block of length " + std::to_string(len));
        }
        for (std::size_t i = 0; i < ns; ++i) s.msg_source.push_back(k);
        for (std::size_t i = 0; i < len; ++i) s.init_source.push_back(k);
        total += len;
    }
    s.x = matrix(p.fld, s.n + total, total);
    std::size_t r0 = 0, c0 = 0;
    for (auto& b : blocks) {
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) s.x(r0 + r, c0 + c) = b(r, c);
        r0 += b.rows();
        c0 += b.cols();
    }
    for (std::size_t j = 0; j < total; ++j) s.x(s.n + j, j) = 1;
    std::vector<std::size_t> all(total), demand(s.n);
    for (std::size_t j = 0; j < total; ++j) all[j] = j;
    for (std::size_t i = 0; i < s.n; ++i) demand[i] = i;
    if (p.sinks == 0) throw build_error("at least one sink is required");
    for (std::size_t t = 0; t < p.sinks; ++t) s.sinks.push_back({demand, all, std::nullopt});
    s.stages.push_back(s.rep());
    return s;
}

inline build_state init_unicast(const build_params& p) {
    build_state s;
    s.p = p;
    s.n = p.sources.size();
    for (auto v : p.sources)
        if (v != 1) throw build_error("unicast sources carry one message each");
    if (s.n == 0) throw build_error("at least one source is required");
    std::size_t w = 1 + 2 * p.alpha, total = s.n * w;
    s.x = matrix(p.fld, s.n + total, total);
    for (std::size_t k = 0; k < s.n; ++k) {
        s.msg_source.push_back(k);
        for (std::size_t i = 0; i < w; ++i) {
            s.init_source.push_back(k);
            s.x(k, k * w + i) = 1;
        }
    }
    for (std::size_t j = 0; j < total; ++j) s.x(s.n + j, j) = 1;
    for (std::size_t k = 0; k < s.n; ++k) {
        std::vector<std::size_t> in;
        for (std::size_t i = 0; i < w; ++i) in.push_back(k * w + i);
        s.sinks.push_back({{k}, in, matrix::identity(p.fld, w)});
    }
    s.stages.push_back(s.rep());
    return s;
}

// Uniform subset of the current edges (partial Fisher-Yates), sorted.
inline std::vector<std::size_t> pick_ec(const build_state& s, build_rng& rng) {
    std::size_t e = s.edges(), k = s.p.ec;
    if (k < 2 || k > e) throw build_error("|E_C| must lie between 2 and the edge count");
    std::vector<std::size_t> pool(e);
    for (std::size_t i = 0; i < e; ++i) pool[i] = i;
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(e - i)]);
    std::vector<std::size_t> out(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(out.begin(), out.end());
    return out;
}

// x = sum c_i X(:, e_i) over the full column length.
inline std::vector<elem> combine(const build_state& s, const std::vector<std::size_t>& ec, const std::vector<elem>& c) {
    const field& f = s.p.fld;
    std::vector<elem> v(s.x.rows(), 0);
    for (std::size_t i = 0; i < ec.size(); ++i)
        for (std::size_t r = 0; r < v.size(); ++r)
            if (s.x(r, ec[i])) v[r] = f.add(v[r], f.mul(c[i], s.x(r, ec[i])));
    return v;
}

inline build_state apply_extension(const build_state& s, const std::vector<std::size_t>& ec, const std::vector<elem>& c) {
    build_state out = s;
    auto v = combine(s, ec, c);
    std::size_t e = s.edges();
    matrix nx(s.p.fld, s.x.rows() + 1, e + 1);
    for (std::size_t r = 0; r < s.x.rows(); ++r) {
        for (std::size_t j = 0; j < e; ++j) nx(r, j) = s.x(r, j);
        nx(r, e) = v[r];
    }
    nx(s.x.rows(), e) = 1;
    out.x = std::move(nx);
    out.coded.push_back({ec, c});
    return out;
}

namespace detail {

// Edges (among ec) sharing a circuit with the new element x inside
// f(E_C) ∪ {x, y}; for each such edge also the first such circuit.
inline std::map<std::size_t, std::vector<std::size_t>> circuit_partners(const build_state& s,
                                                                       const std::vector<std::size_t>& ec) {
    std::size_t e = s.edges();  // already extended: new edge is e-1, y is the unit row n+e-1
    std::vector<std::size_t> cols = ec;
    cols.push_back(e - 1);
    matrix sub = s.x.select_cols(cols);
    std::vector<elem> y(s.x.rows(), 0);
    y[s.n + e - 1] = 1;
    sub.append_col(y);
    vector_matroid m(sub);
    std::size_t xi = ec.size();
    std::map<std::size_t, std::vector<std::size_t>> out;
    for (auto& circ : m.circuits()) {
        if (!contains(circ, xi)) continue;
        for (auto i : circ) {
            if (i >= ec.size() || out.count(ec[i])) continue;
            std::vector<std::size_t> members;
            for (auto k : circ)
                if (k < ec.size()) members.push_back(ec[k]);
            out[ec[i]] = members;
        }
    }
    return out;
}

inline bool rank_rises(const matrix& x, const std::vector<std::size_t>& base, std::size_t extra) {
    auto with = base;
    with.push_back(extra);
    return x.select_cols(with).rank() > x.select_cols(base).rank();
}

// Rewrite a unicast sink's Ā after e_i leaves and e_new joins.
inline std::optional<matrix> update_abar(const build_state& s, const sink_state& old, const std::vector<std::size_t>& in,
                                         std::size_t ei) {
    if (!old.abar) return std::nullopt;
    const field& f = s.p.fld;
    const auto& rec = s.coded.back();
    std::size_t enew = s.edges() - 1, n = s.n;
    // coefficients of e_i over the new In
    std::vector<elem> expr(in.size(), 0);
    auto pos_of = [&](std::size_t e) {
        return static_cast<std::size_t>(std::find(in.begin(), in.end(), e) - in.begin());
    };
    elem ci = 0;
    for (std::size_t k = 0; k < rec.inputs.size(); ++k)
        if (rec.inputs[k] == ei) ci = rec.coefs[k];
    if (!ci) return std::nullopt;
    elem inv = f.inv(ci);
    expr[pos_of(enew)] = inv;
    std::vector<std::size_t> jr(n);
    for (std::size_t r = 0; r < n; ++r) jr[r] = r;
    matrix gin = s.x.select_rows(jr).select_cols(in);
    for (std::size_t k = 0; k < rec.inputs.size(); ++k) {
        std::size_t ek = rec.inputs[k];
        if (ek == ei) continue;
        elem w = f.neg(f.mul(inv, rec.coefs[k]));
        if (contains(in, ek)) {
            expr[pos_of(ek)] = f.add(expr[pos_of(ek)], w);
            continue;
        }
        std::vector<elem> g(n);
        for (std::size_t r = 0; r < n; ++r) g[r] = s.x(r, ek);
        auto sol = span_member(gin, g);
        if (!sol) return std::nullopt;
        for (std::size_t j = 0; j < in.size(); ++j) expr[j] = f.add(expr[j], f.mul(w, (*sol)[j]));
    }
    const matrix& a = *old.abar;
    matrix nb(f, in.size(), a.cols());
    for (std::size_t r = 0; r < old.in.size(); ++r) {
        std::size_t e = old.in[r];
        for (std::size_t c = 0; c < a.cols(); ++c) {
            elem v = a(r, c);
            if (!v) continue;
            if (e == ei) {
                for (std::size_t j = 0; j < in.size(); ++j) nb(j, c) = f.add(nb(j, c), f.mul(v, expr[j]));
            } else {
                std::size_t j = pos_of(e);
                nb(j, c) = f.add(nb(j, c), v);
            }
        }
    }
    return nb;
}

}  // namespace detail

// Step 5 for one sink. Candidates are In edges sharing a circuit with x,
// tried in ascending order; the first whose replacement keeps (C) wins.
// Returns nullopt when candidates exist but none keeps (C).
inline std::optional<sink_state> update_sink(const build_state& s, const sink_state& t,
                                             const std::map<std::size_t, std::vector<std::size_t>>& partners,
                                             std::vector<elem>& buf) {
    std::size_t enew = s.edges() - 1;
    bool any = false;
    for (auto ei : t.in) {
        auto it = partners.find(ei);
        if (it == partners.end()) continue;
        any = true;
        std::vector<std::size_t> in;
        for (auto e : t.in)
            if (e != ei) in.push_back(e);
        if (s.p.mode == build_mode::unicast) {
            auto base = in;
            for (auto ej : it->second) {
                if (ej == ei || detail::contains(t.in, ej) || detail::contains(in, ej)) continue;
                if (detail::rank_rises(s.x, base, ej)) in.push_back(ej);
            }
        }
        in.push_back(enew);
        std::sort(in.begin(), in.end());
        if (!detail::condition_c(s.x, s.n, in, t.demand, s.beta(), buf)) continue;
        sink_state nt{t.demand, in, std::nullopt};
        if (s.p.mode == build_mode::unicast) nt.abar = detail::update_abar(s, t, in, ei);
        return nt;
    }
    if (any) return std::nullopt;
    return t;
}

// Applies the extension and the sink updates; nullopt if (C) cannot be kept.
inline std::optional<build_state> try_extension(const build_state& s, const std::vector<std::size_t>& ec,
                                                const std::vector<elem>& c) {
    build_state out = apply_extension(s, ec, c);
    auto partners = detail::circuit_partners(out, ec);
    std::vector<elem> buf;
    for (auto& t : out.sinks) {
        auto nt = update_sink(out, t, partners, buf);
        if (!nt) return std::nullopt;
        t = std::move(*nt);
    }
    return out;
}

// Optional sink trim: smallest I ⊆ In(t) - e_new with I ∪ e_new passing (C),
// lexicographic among equal sizes (or newest edges first with prefer_newest).
// Drops the unicast bookkeeping.
inline build_state minimize_sink_inputs(const build_state& s) {
    build_state out = s;
    std::size_t enew = s.edges() - 1;
    std::vector<elem> buf;
    for (auto& t : out.sinks) {
        if (!detail::contains(t.in, enew)) continue;
        std::vector<std::size_t> rest;
        for (auto e : t.in)
            if (e != enew) rest.push_back(e);
        if (s.p.prefer_newest) std::reverse(rest.begin(), rest.end());
        bool done = false;
        for (std::size_t k = 0; k <= rest.size() && !done; ++k) {
            for (combinations c(rest.size(), k); !c.done(); c.next()) {
                std::vector<std::size_t> in;
                for (auto i : c.get()) in.push_back(rest[i]);
                in.push_back(enew);
                std::sort(in.begin(), in.end());
                if (detail::condition_c(s.x, s.n, in, t.demand, s.beta(), buf)) {
                    if (in != t.in) t.abar.reset();
                    t.in = in;
                    done = true;
                    break;
                }
            }
        }
    }
    return out;
}

// Coefficient search over (1, c_2, ..., c_k), all nonzero: exhaustive in
// lexicographic order within the budget, seeded random sampling beyond it.
inline std::optional<build_state> find_extension(const build_state& s, const std::vector<std::size_t>& ec,
                                                 build_rng& rng, std::uint64_t* tried = nullptr) {
    const field& f = s.p.fld;
    std::uint64_t q1 = f.order() - 1, space = 1;
    bool exhaustive = true;
    for (std::size_t i = 1; i < ec.size(); ++i) {
        if (space > s.p.trial_budget / q1 + 1) {
            exhaustive = false;
            break;
        }
        space *= q1;
    }
    if (space > s.p.trial_budget) exhaustive = false;
    std::uint64_t limit = exhaustive ? space : s.p.trial_budget;
    std::vector<elem> c(ec.size(), 1);
    for (std::uint64_t it = 0; it < limit; ++it) {
        if (exhaustive) {
            std::uint64_t v = it;
            for (std::size_t i = ec.size(); i-- > 1;) {
                c[i] = static_cast<elem>(1 + v % q1);
                v /= q1;
            }
        } else {
            for (std::size_t i = 1; i < ec.size(); ++i) c[i] = static_cast<elem>(1 + rng.below(q1));
        }
        if (tried) ++*tried;
        auto v = combine(s, ec, c);
        bool top = false;
        for (std::size_t r = 0; r < s.n; ++r)
            if (v[r]) top = true;
        if (!top) continue;
        if (auto out = try_extension(s, ec, c)) return out;
    }
    return std::nullopt;
}

struct build_result {
    bool ok = false;
    std::string message;
    build_state state;
};

namespace detail {

inline void finish_step(build_state& st, const std::vector<std::size_t>& ec) {
    trace_step ts;
    for (auto e : ec) ts.nodes.push_back(e + 1);
    ts.new_node = st.edges();
    ts.coefs = st.coded.back().coefs;
    std::size_t step = st.trace.size() + 1;
    const auto& ms = st.p.minimize_steps;
    if (st.p.minimize && (ms.empty() || std::find(ms.begin(), ms.end(), step) != ms.end()))
        st = minimize_sink_inputs(st);
    st.trace.push_back(ts);
    st.stages.push_back(st.rep());
}

}  // namespace detail

inline build_result construct(const build_params& p) {
    build_result res;
    build_state st = p.mode == build_mode::multicast ? init_multicast(p) : init_unicast(p);
    build_rng rng(p.seed);
    std::size_t steps = p.replay.empty() ? p.nc : p.replay.size();
    for (std::size_t it = 0; it < steps; ++it) {
        if (!p.replay.empty()) {
            const auto& ts = p.replay[it];
            std::vector<std::size_t> ec;
            for (auto v : ts.nodes) {
                if (v == 0 || v > st.edges()) throw build_error("trace line " + std::to_string(it + 1) + " names an unknown node");
                ec.push_back(v - 1);
            }
            if (ts.new_node != st.edges() + 1)
                throw build_error("trace line " + std::to_string(it + 1) + " expects new node " +
                                  std::to_string(st.edges() + 1));
            for (auto c : ts.coefs)
                if (c >= p.fld.order()) throw build_error("trace coefficient outside the field");
            auto next = try_extension(st, ec, ts.coefs);
            if (!next) {
                res.message = "replayed step " + std::to_string(it + 1) + " (" + format_trace_step(ts) +
                              ") breaks the decoding condition";
                res.state = st;
                return res;
            }
            st = std::move(*next);
            detail::finish_step(st, ec);
            continue;
        }
        std::uint64_t limit = binomial(st.edges(), p.ec);
        std::set<std::vector<std::size_t>> seen;
        std::optional<build_state> next;
        std::vector<std::size_t> ec;
        std::uint64_t draws = 0;
        while (seen.size() < limit && draws < 64 * limit + 64) {
            ++draws;
            ec = pick_ec(st, rng);
            if (!seen.insert(ec).second) continue;
            next = find_extension(st, ec, rng, &st.candidates_tried);
            if (next) break;
        }
        if (!next) {
            res.message = "construction failed at coding node " + std::to_string(it + 1) +
                          ": no extension vector keeps every sink decodable for any choice of E_C";
            res.state = st;
            return res;
        }
        std::uint64_t tried = st.candidates_tried;
        st = std::move(*next);
        st.candidates_tried = tried;
        detail::finish_step(st, ec);
    }
    res.ok = true;
    res.state = std::move(st);
    return res;
}

// The explicit network and code realizing a build state.
struct realized {
    network net;
    network_code code;
    std::vector<std::size_t> eligible;      // edge index of e_k
    std::map<std::size_t, matrix> abar;     // by sink node index, when available
};

inline realized realize(const build_state& s) {
    realized out;
    network& net = out.net;
    net.fld = s.p.fld;
    std::size_t e = s.edges(), n0 = s.init_source.size();
    std::size_t nsrc = s.p.mode == build_mode::multicast ? s.p.sources.size() : s.n;
    for (std::size_t i = 0; i < s.n; ++i) net.messages.push_back("m" + std::to_string(i + 1));
    std::vector<std::size_t> src_node, fwd_node(e), cod_node(e, 0), sink_node;
    for (std::size_t k = 0; k < nsrc; ++k) {
        node v{"s" + std::to_string(k + 1), role::source, {}};
        for (std::size_t i = 0; i < s.n; ++i)
            if (s.msg_source[i] == k) v.messages.push_back(i);
        src_node.push_back(net.nodes.size());
        net.nodes.push_back(v);
    }
    for (std::size_t j = 0; j < e; ++j) {
        if (j >= n0) {
            cod_node[j] = net.nodes.size();
            net.nodes.push_back({"c" + std::to_string(j + 1), role::coding, {}});
        }
        fwd_node[j] = net.nodes.size();
        net.nodes.push_back({"f" + std::to_string(j + 1), role::forwarding, {}});
    }
    for (std::size_t t = 0; t < s.sinks.size(); ++t) {
        sink_node.push_back(net.nodes.size());
        net.nodes.push_back({"t" + std::to_string(t + 1), role::sink, s.sinks[t].demand});
    }
    std::vector<std::size_t> edge_of(e);
    std::vector<std::vector<std::pair<std::size_t, elem>>> feeds(e);  // (edge index of f_i->c_k, c_i)
    for (std::size_t j = 0; j < e; ++j) {
        if (j >= n0) {
            const auto& rec = s.coded[j - n0];
            for (std::size_t i = 0; i < rec.inputs.size(); ++i) {
                std::size_t ei = rec.inputs[i];
                feeds[j].push_back({net.edges.size(), rec.coefs[i]});
                net.edges.push_back({"f" + std::to_string(ei + 1) + "-c" + std::to_string(j + 1), fwd_node[ei], cod_node[j]});
            }
            edge_of[j] = net.edges.size();
            net.edges.push_back({"e" + std::to_string(j + 1), cod_node[j], fwd_node[j]});
        } else {
            edge_of[j] = net.edges.size();
            net.edges.push_back({"e" + std::to_string(j + 1), src_node[s.init_source[j]], fwd_node[j]});
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> sink_edges;  // (eligible index, edge index)
    for (std::size_t t = 0; t < s.sinks.size(); ++t)
        for (auto ei : s.sinks[t].in) {
            sink_edges.push_back({ei, net.edges.size()});
            net.edges.push_back({"f" + std::to_string(ei + 1) + "-t" + std::to_string(t + 1), fwd_node[ei], sink_node[t]});
        }
    net.eligible.assign(net.edges.size(), false);
    for (auto j : edge_of) net.eligible[j] = true;
    out.eligible = edge_of;

    out.code = network_code::zero(net);
    for (std::size_t j = 0; j < n0; ++j)
        for (std::size_t i = 0; i < s.n; ++i)
            if (s.msg_source[i] == s.init_source[j]) out.code.a(i, edge_of[j]) = s.x(i, j);
    for (std::size_t j = n0; j < e; ++j) {
        const auto& rec = s.coded[j - n0];
        for (std::size_t i = 0; i < rec.inputs.size(); ++i) {
            std::size_t mid = feeds[j][i].first;
            out.code.k(edge_of[rec.inputs[i]], mid) = 1;
            out.code.k(mid, edge_of[j]) = feeds[j][i].second;
        }
    }
    for (auto [ei, idx] : sink_edges) out.code.k(edge_of[ei], idx) = 1;
    for (std::size_t t = 0; t < s.sinks.size(); ++t)
        if (s.sinks[t].abar) out.abar[sink_node[t]] = *s.sinks[t].abar;
    return out;
}

}  // namespace mnec
