#pragma once

#include "matroid.hpp"
#include "verifier.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mnec {

struct matroidal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// f: messages and eligible edges to ground elements (indices).
struct ground_map {
    std::vector<std::size_t> msg;   // f(m_i)
    std::vector<std::size_t> edge;  // f(e_j), eligible edges in topological order
};

// b_1..b_{n+|El|}; the prefix must be f(μ).
struct basis_assignment {
    std::vector<std::size_t> b;
};

struct matroidal_form {
    vector_matroid m;
    ground_map f;
    basis_assignment b;
};

struct matroidal_result {
    bool pass = true;
    std::string tag;     // size, basis, A, B1, B2 or C
    std::string detail;

    std::string line() const { return pass ? std::string("PASS") : "FAIL condition=" + tag + " " + detail; }
};

namespace detail {

inline matroidal_result matroidal_fail(std::string tag, std::string detail) { return {false, std::move(tag), std::move(detail)}; }

inline std::vector<std::size_t> mapped_inputs(const network& net, const ground_map& f, const std::vector<std::size_t>& pos,
                                              const std::vector<std::size_t>& msgs, const std::vector<std::size_t>& els) {
    std::vector<std::size_t> out;
    for (auto m : msgs) out.push_back(f.msg.at(m));
    for (auto e : els) out.push_back(f.edge.at(pos.at(e)));
    (void)net;
    return out;
}

// Position of each edge in the eligible list (npos for non-eligible).
inline std::vector<std::size_t> eligible_positions(const network& net) {
    std::vector<std::size_t> pos(net.edges.size(), static_cast<std::size_t>(-1));
    auto el = net.eligible_edges();
    for (std::size_t i = 0; i < el.size(); ++i) pos[el[i]] = i;
    return pos;
}

inline std::string edge_name(const network& net, std::size_t j) { return net.edges[j].id; }

// Conditions other than (C); shared by the oracle and the fast vector path.
inline matroidal_result structural_conditions(const network& net, const rank_oracle& m, const ground_map& f,
                                   const basis_assignment& b) {
    auto el = net.eligible_edges();
    std::size_t n = net.n(), ne = el.size(), ground = m.ground.size();
    index_set all(ground);
    for (std::size_t i = 0; i < ground; ++i) all[i] = i;
    if (ground != n + 2 * ne) return matroidal_fail("size", "ground set has " + std::to_string(ground) + " elements");
    if (m.rank(all) != n + ne) return matroidal_fail("size", "rank is " + std::to_string(m.rank(all)));
    if (f.msg.size() != n || f.edge.size() != ne || b.b.size() != n + ne)
        return matroidal_fail("size", "ground map or basis has the wrong length");
    for (auto x : f.msg)
        if (x >= ground) return matroidal_fail("size", "ground map outside ground set");
    for (auto x : f.edge)
        if (x >= ground) return matroidal_fail("size", "ground map outside ground set");
    for (auto x : b.b)
        if (x >= ground) return matroidal_fail("size", "basis outside ground set");

    if (m.rank(f.msg) != n) return matroidal_fail("A", "f(messages) is dependent");
    for (std::size_t i = 0; i < n; ++i)
        if (b.b[i] != f.msg[i]) return matroidal_fail("basis", "basis prefix differs from f(messages)");
    if (m.rank(b.b) != n + ne) return matroidal_fail("basis", "B is not a basis");

    index_set rest(b.b.begin() + static_cast<std::ptrdiff_t>(n), b.b.end());
    std::size_t rr = m.rank(rest);
    auto pos = eligible_positions(net);
    for (std::size_t i = 0; i < ne; ++i) {
        index_set s = rest;
        s.push_back(f.edge[i]);
        if (m.rank(s) <= rr) return matroidal_fail("B1", "edge " + edge_name(net, el[i]) + " lies in cl(B - f(messages))");
    }
    for (std::size_t i = 0; i < ne; ++i) {
        auto [ms, es] = net.effective_inputs(el[i]);
        index_set in = mapped_inputs(net, f, pos, ms, es);
        std::size_t r0 = m.rank(in);
        index_set with_b = in;
        with_b.push_back(b.b[n + i]);
        index_set with_both = with_b;
        with_both.push_back(f.edge[i]);
        std::size_t r1 = m.rank(with_b), r2 = m.rank(with_both);
        if (!(r2 == r1 && r1 == r0 + 1))
            return matroidal_fail("B2", "edge " + edge_name(net, el[i]) + " ranks " + std::to_string(r0) + "," +
                                       std::to_string(r1) + "," + std::to_string(r2));
    }
    return {};
}

inline std::string pattern_text(const network& net, const std::vector<std::size_t>& pat) {
    std::string s;
    for (std::size_t i = 0; i < pat.size(); ++i) s += (i ? "," : "") + net.edges[pat[i]].id;
    return s.empty() ? "-" : s;
}

}  // namespace detail

// Matroidal-network conditions against an arbitrary rank function. Patterns are all
// eligible subsets of size beta; In(t) and In(e) are the effective inputs.
inline matroidal_result check_matroidal(const network& net, const rank_oracle& m, const ground_map& f,
                                     const basis_assignment& b, std::size_t beta) {
    auto res = detail::structural_conditions(net, m, f, b);
    if (!res.pass) return res;
    auto el = net.eligible_edges();
    auto pos = detail::eligible_positions(net);
    std::size_t n = net.n(), ne = el.size(), k = std::min(beta, ne);
    std::vector<bool> in_pat(ne);
    for (combinations c(ne, k); !c.done(); c.next()) {
        std::fill(in_pat.begin(), in_pat.end(), false);
        for (auto i : c.get()) in_pat[i] = true;
        index_set cset;
        for (std::size_t i = 0; i < ne; ++i)
            if (!in_pat[i]) cset.push_back(b.b[n + i]);
        for (auto t : net.sinks()) {
            auto [ms, es] = net.sink_inputs(t);
            index_set x = detail::mapped_inputs(net, f, pos, ms, es);
            x.insert(x.end(), cset.begin(), cset.end());
            std::size_t r0 = m.rank(x);
            for (auto d : net.nodes[t].messages) x.push_back(f.msg[d]);
            if (m.rank(x) != r0) {
                std::vector<std::size_t> pat;
                for (auto i : c.get()) pat.push_back(el[i]);
                return detail::matroidal_fail("C", "sink=" + net.nodes[t].id + " pattern=" + detail::pattern_text(net, pat));
            }
        }
    }
    return {};
}

// Vector matroids: when every basis element is a unit column, contracting
// B_{F̄} just deletes the rows those columns occupy, so (C) reduces to a
// span test on the remaining rows. Otherwise falls back to the rank oracle.
inline matroidal_result check_matroidal(const network& net, const vector_matroid& m, const ground_map& f,
                                     const basis_assignment& b, std::size_t beta) {
    rank_oracle ro = rank_oracle::of(m);
    auto res = detail::structural_conditions(net, ro, f, b);
    if (!res.pass) return res;
    const matrix& a = m.rep();
    std::vector<std::size_t> unit_row;
    for (auto e : b.b) {
        std::size_t row = a.rows(), nz = 0;
        for (std::size_t r = 0; r < a.rows(); ++r)
            if (a(r, e)) {
                ++nz;
                row = r;
            }
        if (nz != 1) return check_matroidal(net, ro, f, b, beta);
        unit_row.push_back(row);
    }
    auto el = net.eligible_edges();
    auto pos = detail::eligible_positions(net);
    std::size_t n = net.n(), ne = el.size(), k = std::min(beta, ne);
    struct sink_cols {
        std::size_t t;
        index_set in, demand;
    };
    std::vector<sink_cols> sinks;
    for (auto t : net.sinks()) {
        auto [ms, es] = net.sink_inputs(t);
        sink_cols s{t, detail::mapped_inputs(net, f, pos, ms, es), {}};
        for (auto d : net.nodes[t].messages) s.demand.push_back(f.msg[d]);
        sinks.push_back(std::move(s));
    }
    std::vector<elem> buf;
    std::vector<std::size_t> rows;
    for (combinations c(ne, k); !c.done(); c.next()) {
        rows.clear();
        for (std::size_t i = 0; i < n; ++i) rows.push_back(unit_row[i]);
        for (auto i : c.get()) rows.push_back(unit_row[n + i]);
        for (auto& s : sinks) {
            std::size_t mc = s.in.size(), rc = s.demand.size(), w = mc + rc;
            buf.assign(rows.size() * w, 0);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                for (std::size_t j = 0; j < mc; ++j) buf[r * w + j] = a(rows[r], s.in[j]);
                for (std::size_t j = 0; j < rc; ++j) buf[r * w + mc + j] = a(rows[r], s.demand[j]);
            }
            if (!detail::span_contains(a.fld(), buf, rows.size(), mc, rc)) {
                std::vector<std::size_t> pat;
                for (auto i : c.get()) pat.push_back(el[i]);
                return detail::matroidal_fail("C", "sink=" + net.nodes[s.t].id + " pattern=" + detail::pattern_text(net, pat));
            }
        }
    }
    return {};
}

// Ground map and basis of a matrix laid out as (I_{n+|El|} | X).
inline std::pair<ground_map, basis_assignment> standard_assignment(std::size_t n, std::size_t ne) {
    ground_map f;
    basis_assignment b;
    for (std::size_t i = 0; i < n; ++i) f.msg.push_back(i);
    for (std::size_t j = 0; j < ne; ++j) f.edge.push_back(n + ne + j);
    for (std::size_t i = 0; i < n + ne; ++i) b.b.push_back(i);
    return {f, b};
}

inline std::vector<std::string> standard_labels(std::size_t n, std::size_t ne, const std::string& err = "y") {
    auto ls = vector_matroid::numbered(n, "x");
    for (auto& l : vector_matroid::numbered(ne, err)) ls.push_back(l);
    for (auto& l : vector_matroid::numbered(ne, err + "'")) ls.push_back(l);
    return ls;
}

// Y = (I_{n+|El|} | [G_El; F_{El,El}]) with f(m_i)=i, f(e_j)=n+|El|+j.
inline matroidal_form code_to_matroid(const network& net, const network_code& code, std::size_t beta,
                                      const std::string& err_prefix = "y") {
    auto v = check_detecting(net, code, beta);
    if (!v.pass) throw matroidal_error("code is not " + std::to_string(beta) + "-error detecting: " + v.line(net));
    transfer tr = transfer_compute(net, code);
    auto el = net.eligible_edges();
    std::size_t n = net.n(), ne = el.size();
    matrix x = tr.g.select_cols(el).vcat(tr.f.select_rows(el).select_cols(el));
    matrix y = matrix::identity(net.fld, n + ne).hcat(x);
    auto [f, b] = standard_assignment(n, ne);
    return {vector_matroid(y, standard_labels(n, ne, err_prefix)), f, b};
}

namespace detail {

// The unique message or eligible edge a non-eligible edge carries.
struct carried {
    bool is_msg = false;
    std::size_t id = 0;
    bool operator==(const carried& o) const { return is_msg == o.is_msg && id == o.id; }
};

inline std::optional<carried> carried_by(const network& net, std::size_t j) {
    if (net.is_eligible(j)) return carried{false, j};
    auto [ms, es] = net.effective_inputs(j);
    if (ms.size() + es.size() != 1) return std::nullopt;
    if (ms.size() == 1) return carried{true, ms[0]};
    return carried{false, es[0]};
}

// Put coefficient c from symbol s into edge j: directly from the source, or
// on the first in-edge of tail(j) that carries s.
inline void place(const network& net, network_code& code, std::size_t j, carried s, elem c) {
    std::size_t v = net.edges[j].tail;
    if (s.is_msg && net.nodes[v].kind == role::source) {
        const auto& ms = net.nodes[v].messages;
        if (std::find(ms.begin(), ms.end(), s.id) != ms.end()) {
            code.a(s.id, j) = c;
            return;
        }
    }
    for (auto k : net.in_edges(v)) {
        auto ck = carried_by(net, k);
        if (ck && *ck == s) {
            code.k(k, j) = c;
            return;
        }
    }
    throw matroidal_error("edge " + net.edges[j].id + " cannot receive its input");
}

}  // namespace detail

// Code extraction: bring the representation to (I | X) on the basis B,
// normalize the diagonal of L to 1, then A = J L^{-1} and K = I - L^{-1}.
// Non-eligible edges become unit copies of the symbol they carry.
inline network_code matroid_to_code(const vector_matroid& m, const ground_map& f, const basis_assignment& b,
                                    const network& net) {
    auto el = net.eligible_edges();
    std::size_t n = net.n(), ne = el.size(), r = n + ne;
    const field& fl = m.fld();
    if (!(fl == net.fld)) throw matroidal_error("matroid and network use different fields");
    if (b.b.size() != r || f.msg.size() != n || f.edge.size() != ne)
        throw matroidal_error("ground map or basis has the wrong length");
    auto rr = m.rep().rref();
    if (rr.rank != r) throw matroidal_error("rank " + std::to_string(rr.rank) + " differs from n + |El|");
    std::vector<std::size_t> top(r);
    for (std::size_t i = 0; i < r; ++i) top[i] = i;
    matrix red = rr.r.select_rows(top);
    matrix pb = red.select_cols(b.b);
    matrix pinv;
    try {
        pinv = pb.inverse();
    } catch (const field_error&) {
        throw matroidal_error("B is not a basis");
    }
    matrix x = (pinv * red).select_cols(f.edge);
    for (std::size_t j = 0; j < ne; ++j) {
        elem d = x(n + j, j);
        if (!d) throw matroidal_error("zero diagonal entry in L at edge " + net.edges[el[j]].id);
        x.scale_col(j, fl.inv(d));
        for (std::size_t i = j + 1; i < ne; ++i)
            if (x(n + i, j)) throw matroidal_error("L is not upper triangular");
    }
    std::vector<std::size_t> jr(n), lr(ne);
    for (std::size_t i = 0; i < n; ++i) jr[i] = i;
    for (std::size_t i = 0; i < ne; ++i) lr[i] = n + i;
    matrix linv = x.select_rows(lr).inverse();
    matrix h = x.select_rows(jr) * linv;
    matrix kel = matrix::identity(fl, ne) - linv;

    network_code code = network_code::zero(net);
    for (std::size_t j = 0; j < net.edges.size(); ++j) {
        if (net.is_eligible(j)) continue;
        auto s = detail::carried_by(net, j);
        if (!s) throw matroidal_error("non-eligible edge " + net.edges[j].id + " mixes several inputs");
        detail::place(net, code, j, *s, 1);
    }
    for (std::size_t jj = 0; jj < ne; ++jj) {
        std::size_t j = el[jj];
        for (std::size_t i = 0; i < n; ++i)
            if (h(i, jj)) detail::place(net, code, j, {true, i}, h(i, jj));
        for (std::size_t ii = 0; ii < ne; ++ii)
            if (kel(ii, jj)) detail::place(net, code, j, {false, el[ii]}, kel(ii, jj));
    }
    return code;
}

// Eligible global vectors agree column by column up to a nonzero scalar.
inline bool same_up_to_scaling(const matrix& g1, const matrix& g2) {
    if (g1.rows() != g2.rows() || g1.cols() != g2.cols()) return false;
    const field& f = g1.fld();
    for (std::size_t c = 0; c < g1.cols(); ++c) {
        elem s = 0;
        for (std::size_t r = 0; r < g1.rows() && !s; ++r)
            if (g1(r, c)) {
                if (!g2(r, c)) return false;
                s = f.mul(g2(r, c), f.inv(g1(r, c)));
            }
        for (std::size_t r = 0; r < g1.rows(); ++r)
            if (f.mul(g1(r, c), s) != g2(r, c)) return false;
        if (!s && !g2.col_is_zero(c)) return false;
    }
    return true;
}

}  // namespace mnec
