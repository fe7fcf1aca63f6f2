#pragma once

#include "matrix.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace mnec {

struct network_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class role { source, sink, coding, forwarding };

inline const char* role_name(role r) {
    switch (r) {
        case role::source: return "source";
        case role::sink: return "sink";
        case role::coding: return "coding";
        case role::forwarding: return "forwarding";
    }
    return "?";
}

inline role parse_role(const std::string& s) {
    if (s == "source") return role::source;
    if (s == "sink") return role::sink;
    if (s == "coding") return role::coding;
    if (s == "forwarding") return role::forwarding;
    throw network_error("unknown node role '" + s + "'");
}

struct node {
    std::string id;
    role kind = role::coding;
    std::vector<std::size_t> messages;  // generated (source) or demanded (sink)
};

struct edge {
    std::string id;
    std::size_t tail = 0, head = 0;
};

// A named coefficient position used by the fixture searches: either an entry
// of A (message row, edge column) or of K (edge row, edge column).
struct coef_slot {
    std::string name;
    bool in_a = false;
    std::size_t i = 0, j = 0;
};

struct network {
    field fld;
    std::vector<std::string> messages;
    std::vector<node> nodes;
    std::vector<edge> edges;  // in topological (file) order
    std::vector<bool> eligible;  // error-eligible edges
    std::vector<coef_slot> slots;

    std::size_t n() const { return messages.size(); }

    std::size_t node_index(const std::string& id) const {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i].id == id) return i;
        throw network_error("unknown node '" + id + "'");
    }
    std::size_t edge_index(const std::string& id) const {
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i].id == id) return i;
        throw network_error("unknown edge '" + id + "'");
    }
    std::size_t message_index(const std::string& m) const {
        for (std::size_t i = 0; i < messages.size(); ++i)
            if (messages[i] == m) return i;
        throw network_error("unknown message '" + m + "'");
    }

    std::vector<std::size_t> in_edges(std::size_t v) const {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < edges.size(); ++j)
            if (edges[j].head == v) out.push_back(j);
        return out;
    }
    std::vector<std::size_t> out_edges(std::size_t v) const {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < edges.size(); ++j)
            if (edges[j].tail == v) out.push_back(j);
        return out;
    }
    std::vector<std::size_t> nodes_of(role r) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i].kind == r) out.push_back(i);
        return out;
    }
    std::vector<std::size_t> sinks() const { return nodes_of(role::sink); }
    std::vector<std::size_t> sources() const { return nodes_of(role::source); }

    std::vector<std::size_t> eligible_edges() const {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < edges.size(); ++j)
            if (eligible.empty() || eligible[j]) out.push_back(j);
        return out;
    }
    bool is_eligible(std::size_t j) const { return eligible.empty() || eligible[j]; }

    // Source node generating message i.
    std::size_t source_of(std::size_t msg) const {
        for (std::size_t v = 0; v < nodes.size(); ++v)
            if (nodes[v].kind == role::source &&
                std::find(nodes[v].messages.begin(), nodes[v].messages.end(), msg) != nodes[v].messages.end())
                return v;
        throw network_error("message without a source");
    }

    // Eligible edges and messages feeding edge j through non-eligible edges only.
    // Returned as (messages, eligible edges), both sorted.
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> effective_inputs(std::size_t j) const {
        std::set<std::size_t> ms, es;
        std::vector<std::size_t> stack{j};
        std::set<std::size_t> seen;
        while (!stack.empty()) {
            std::size_t e = stack.back();
            stack.pop_back();
            std::size_t t = edges[e].tail;
            if (nodes[t].kind == role::source)
                for (auto m : nodes[t].messages) ms.insert(m);
            for (auto k : in_edges(t)) {
                if (is_eligible(k)) {
                    es.insert(k);
                } else if (seen.insert(k).second) {
                    stack.push_back(k);
                }
            }
        }
        return {{ms.begin(), ms.end()}, {es.begin(), es.end()}};
    }

    // Effective inputs of a sink: union over its incoming edges, where an
    // eligible incoming edge stands for itself.
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> sink_inputs(std::size_t t) const {
        std::set<std::size_t> ms, es;
        for (auto e : in_edges(t)) {
            if (is_eligible(e)) {
                es.insert(e);
                continue;
            }
            auto [m, ee] = effective_inputs(e);
            ms.insert(m.begin(), m.end());
            es.insert(ee.begin(), ee.end());
        }
        return {{ms.begin(), ms.end()}, {es.begin(), es.end()}};
    }

    struct diagnostics {
        bool ok = true;
        std::string message;
    };

    diagnostics validate() const {
        auto fail = [](std::string m) { return diagnostics{false, std::move(m)}; };
        std::set<std::string> ids;
        for (auto& v : nodes)
            if (!ids.insert(v.id).second) return fail("duplicate node id " + v.id);
        std::vector<int> msg_src(n(), 0);
        for (auto& v : nodes) {
            for (auto m : v.messages)
                if (m >= n()) return fail("node " + v.id + " references message outside the message set");
            if (v.kind == role::source)
                for (auto m : v.messages) ++msg_src[m];
        }
        for (std::size_t m = 0; m < n(); ++m)
            if (msg_src[m] != 1) return fail("message " + messages[m] + " must have exactly one source");
        for (std::size_t j = 0; j < edges.size(); ++j) {
            const auto& e = edges[j];
            if (e.tail >= nodes.size() || e.head >= nodes.size()) return fail("edge " + e.id + " has a bad endpoint");
            if (e.tail == e.head) return fail("edge " + e.id + " is a self loop");
            if (nodes[e.head].kind == role::source) return fail("edge " + e.id + " enters a source");
            if (nodes[e.tail].kind == role::sink) return fail("edge " + e.id + " leaves a sink");
            for (std::size_t i = j; i < edges.size(); ++i)
                if (edges[i].head == e.tail) return fail("ancestral order violated at edge " + e.id);
        }
        for (auto& v : nodes)
            if (v.kind == role::sink && v.messages.empty()) return fail("sink " + v.id + " demands nothing");
        if (!eligible.empty() && eligible.size() != edges.size()) return fail("eligible mask size mismatch");
        return {};
    }
};

// A (n x |E|) and K (|E| x |E|).
struct network_code {
    matrix a, k;

    static network_code zero(const network& net) {
        return {matrix(net.fld, net.n(), net.edges.size()), matrix(net.fld, net.edges.size(), net.edges.size())};
    }

    // Returns an empty string when the code fits the network.
    std::string check(const network& net) const {
        std::size_t m = net.edges.size();
        if (a.rows() != net.n() || a.cols() != m) return "A has wrong shape";
        if (k.rows() != m || k.cols() != m) return "K has wrong shape";
        for (std::size_t i = 0; i < net.n(); ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (a(i, j) && net.edges[j].tail != net.source_of(i))
                    return "A nonzero outside the source's outgoing edges";
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (k(i, j) && (j <= i || net.edges[i].head != net.edges[j].tail))
                    return "K entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                           ") does not join adjacent edges in order";
        return {};
    }
};

struct transfer {
    matrix f;  // (I - K)^{-1}
    matrix g;  // A F, global encoding vectors as columns
};

// F by forward substitution: row i of F is e_i + sum_k K[i][k] F[k] over k > i.
inline transfer transfer_compute(const network& net, const network_code& code) {
    if (auto err = code.check(net); !err.empty()) throw network_error(err);
    const field& fl = net.fld;
    std::size_t m = net.edges.size();
    matrix f(fl, m, m);
    for (std::size_t ii = m; ii-- > 0;) {
        f(ii, ii) = 1;
        for (std::size_t kk = ii + 1; kk < m; ++kk) {
            elem c = code.k(ii, kk);
            if (!c) continue;
            for (std::size_t j = kk; j < m; ++j)
                if (f(kk, j)) f(ii, j) = fl.add(f(ii, j), fl.mul(c, f(kk, j)));
        }
    }
    return {f, code.a * f};
}

// Global vectors; throws if some edge carries the zero vector.
inline matrix global_vectors(const network& net, const network_code& code) {
    auto t = transfer_compute(net, code);
    for (std::size_t j = 0; j < net.edges.size(); ++j)
        if (t.g.col_is_zero(j)) throw network_error("edge " + net.edges[j].id + " carries an all-zero global vector");
    return t.g;
}

// Sink view: F_{S,t} = G restricted to In(t) and F_t = F restricted to In(t).
struct sink_view {
    std::size_t node = 0;
    std::vector<std::size_t> in;
    matrix fs, ft;
};

inline sink_view sink_transfer(const network& net, const transfer& tr, std::size_t t) {
    sink_view v;
    v.node = t;
    v.in = net.in_edges(t);
    v.fs = tr.g.select_cols(v.in);
    v.ft = tr.f.select_cols(v.in);
    return v;
}

}  // namespace mnec
