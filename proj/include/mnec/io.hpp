#pragma once

#include "matroid.hpp"
#include "network.hpp"

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace mnec {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

inline std::string strip_comment(const std::string& line) {
    auto p = line.find('#');
    return p == std::string::npos ? line : line.substr(0, p);
}

inline std::size_t to_index(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size() || v < 0) throw std::invalid_argument(s);
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw io_error("bad " + what + " '" + s + "'");
    }
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

}  // namespace detail

struct network_file {
    network net;
    std::optional<network_code> code;
};

// Reads code lines "A i j v" / "K i j v" (1-based) into code.
inline void apply_code_line(const network& net, network_code& code, const std::vector<std::string>& t) {
    if (t.size() != 4) throw io_error("code line needs 4 fields");
    std::size_t i = detail::to_index(t[1], "row"), j = detail::to_index(t[2], "column");
    std::size_t v = detail::to_index(t[3], "value");
    if (v >= net.fld.order()) throw io_error("coefficient outside field");
    matrix& m = t[0] == "A" ? code.a : code.k;
    if (i == 0 || j == 0 || i > m.rows() || j > m.cols()) throw io_error("code index out of range");
    m(i - 1, j - 1) = static_cast<elem>(v);
}

inline network_file read_network(std::istream& is) {
    network_file out;
    network& net = out.net;
    std::string line;
    std::vector<std::vector<std::string>> body;
    std::vector<std::string> header;
    while (std::getline(is, line)) {
        auto t = detail::tokens(detail::strip_comment(line));
        if (t.empty()) continue;
        if (header.empty()) {
            header = t;
            continue;
        }
        body.push_back(t);
    }
    if (header.size() != 5) throw io_error("network header must be 'n_sources n_sinks n_nodes n_edges field'");
    std::size_t ns = detail::to_index(header[0], "source count");
    std::size_t nt = detail::to_index(header[1], "sink count");
    std::size_t nn = detail::to_index(header[2], "node count");
    std::size_t ne = detail::to_index(header[3], "edge count");
    try {
        net.fld = field::parse(header[4]);
    } catch (const field_error& e) {
        throw io_error(e.what());
    }

    // message names first, so that sink demand lists can refer to them
    std::size_t msg_count = 0;
    for (auto& t : body)
        if (t[0] == "node" && t.size() >= 4 && t[2] == "source")
            msg_count += detail::to_index(t[3], "message count");
    for (auto& t : body)
        if (t[0] == "messages") net.messages.assign(t.begin() + 1, t.end());
    if (net.messages.empty())
        for (std::size_t i = 1; i <= msg_count; ++i) net.messages.push_back("m" + std::to_string(i));
    if (net.messages.size() != msg_count) throw io_error("messages line does not match source counts");

    std::size_t next_msg = 0;
    for (auto& t : body) {
        if (t[0] != "node") continue;
        if (t.size() < 3) throw io_error("node line needs 'node id role [payload]'");
        node v;
        v.id = t[1];
        try {
            v.kind = parse_role(t[2]);
        } catch (const network_error& e) {
            throw io_error(e.what());
        }
        if (v.kind == role::source) {
            std::size_t k = detail::to_index(t.at(3), "message count");
            for (std::size_t i = 0; i < k; ++i) v.messages.push_back(next_msg++);
        } else if (v.kind == role::sink) {
            if (t.size() < 4) throw io_error("sink " + v.id + " needs a demand list");
            for (auto& m : detail::split(t[3], ',')) {
                try {
                    v.messages.push_back(net.message_index(m));
                } catch (const network_error&) {
                    throw io_error("sink " + v.id + " demands unknown message '" + m + "'");
                }
            }
        }
        net.nodes.push_back(v);
    }
    for (auto& t : body) {
        if (t[0] != "edge") continue;
        if (t.size() != 4) throw io_error("edge line needs 'edge id tail head'");
        try {
            net.edges.push_back({t[1], net.node_index(t[2]), net.node_index(t[3])});
        } catch (const network_error& e) {
            throw io_error(e.what());
        }
    }
    if (net.sources().size() != ns || net.sinks().size() != nt || net.nodes.size() != nn ||
        net.edges.size() != ne)
        throw io_error("network header counts do not match the body");

    bool has_code = false;
    network_code code = network_code::zero(net);
    for (auto& t : body) {
        try {
            if (t[0] == "eligible") {
                net.eligible.assign(net.edges.size(), false);
                for (std::size_t i = 1; i < t.size(); ++i) net.eligible[net.edge_index(t[i])] = true;
            } else if (t[0] == "slot") {
                if (t.size() != 5) throw io_error("slot line needs 'slot name A|K row col'");
                coef_slot s;
                s.name = t[1];
                s.in_a = t[2] == "A";
                s.i = s.in_a ? net.message_index(t[3]) : net.edge_index(t[3]);
                s.j = net.edge_index(t[4]);
                net.slots.push_back(s);
            } else if (t[0] == "A" || t[0] == "K") {
                apply_code_line(net, code, t);
                has_code = true;
            } else if (t[0] != "node" && t[0] != "edge" && t[0] != "messages") {
                throw io_error("unknown line kind '" + t[0] + "'");
            }
        } catch (const network_error& e) {
            throw io_error(e.what());
        }
    }
    if (has_code) out.code = code;
    return out;
}

inline network_code read_code(std::istream& is, const network& net) {
    network_code code = network_code::zero(net);
    std::string line;
    while (std::getline(is, line)) {
        auto t = detail::tokens(detail::strip_comment(line));
        if (t.empty()) continue;
        if (t[0] != "A" && t[0] != "K") throw io_error("code files hold only A and K lines");
        apply_code_line(net, code, t);
    }
    return code;
}

inline void write_code(std::ostream& os, const network_code& code) {
    for (std::size_t i = 0; i < code.a.rows(); ++i)
        for (std::size_t j = 0; j < code.a.cols(); ++j)
            if (code.a(i, j)) os << "A " << i + 1 << ' ' << j + 1 << ' ' << code.a(i, j) << '\n';
    for (std::size_t i = 0; i < code.k.rows(); ++i)
        for (std::size_t j = 0; j < code.k.cols(); ++j)
            if (code.k(i, j)) os << "K " << i + 1 << ' ' << j + 1 << ' ' << code.k(i, j) << '\n';
}

inline void write_network(std::ostream& os, const network& net, const network_code* code = nullptr) {
    os << net.sources().size() << ' ' << net.sinks().size() << ' ' << net.nodes.size() << ' '
       << net.edges.size() << ' ' << net.fld.name() << '\n';
    os << "messages " << detail::join(net.messages, " ") << '\n';
    for (auto& v : net.nodes) {
        os << "node " << v.id << ' ' << role_name(v.kind);
        if (v.kind == role::source) os << ' ' << v.messages.size();
        if (v.kind == role::sink) {
            std::vector<std::string> d;
            for (auto m : v.messages) d.push_back(net.messages[m]);
            os << ' ' << detail::join(d, ",");
        }
        os << '\n';
    }
    for (auto& e : net.edges) os << "edge " << e.id << ' ' << net.nodes[e.tail].id << ' ' << net.nodes[e.head].id << '\n';
    if (!net.eligible.empty()) {
        os << "eligible";
        for (auto j : net.eligible_edges()) os << ' ' << net.edges[j].id;
        os << '\n';
    }
    for (auto& s : net.slots)
        os << "slot " << s.name << ' ' << (s.in_a ? "A " + net.messages[s.i] : "K " + net.edges[s.i].id) << ' '
           << net.edges[s.j].id << '\n';
    if (code) write_code(os, *code);
}

// Matrix file followed by one "labels ..." line.
inline void write_matroid(std::ostream& os, const vector_matroid& m) {
    m.rep().write(os);
    os << "labels " << detail::join(m.labels(), " ") << '\n';
}

inline vector_matroid read_matroid(std::istream& is) {
    matrix a;
    try {
        a = matrix::read(is);
    } catch (const field_error& e) {
        throw io_error(e.what());
    }
    std::string word;
    if (!(is >> word)) return vector_matroid(a);
    if (word != "labels") throw io_error("expected a labels line after the matrix");
    std::vector<std::string> ls(a.cols());
    for (auto& l : ls)
        if (!(is >> l)) throw io_error("too few labels");
    return vector_matroid(a, ls);
}

inline matrix read_matrix_text(const std::string& text) {
    std::istringstream is(text);
    try {
        return matrix::read(is);
    } catch (const field_error& e) {
        throw io_error(e.what());
    }
}

// One iteration of a construction: "3,5 | 8 | 1,6".
struct trace_step {
    std::vector<std::size_t> nodes;  // forwarding node numbers (1-based eligible edge ids)
    std::size_t new_node = 0;
    std::vector<elem> coefs;
};

inline std::string format_trace_step(const trace_step& s) {
    std::vector<std::string> a, c;
    for (auto v : s.nodes) a.push_back(std::to_string(v));
    for (auto v : s.coefs) c.push_back(std::to_string(v));
    return detail::join(a, ",") + " | " + std::to_string(s.new_node) + " | " + detail::join(c, ",");
}

inline std::vector<trace_step> read_trace(std::istream& is) {
    std::vector<trace_step> out;
    std::string line;
    while (std::getline(is, line)) {
        line = detail::strip_comment(line);
        if (detail::tokens(line).empty()) continue;
        auto parts = detail::split(line, '|');
        if (parts.size() != 3) throw io_error("trace line needs 'nodes | new | coefficients'");
        trace_step s;
        for (auto& x : detail::split(parts[0], ','))
            s.nodes.push_back(detail::to_index(detail::tokens(x).empty() ? "" : detail::tokens(x)[0], "trace node"));
        auto nn = detail::tokens(parts[1]);
        if (nn.size() != 1) throw io_error("trace line needs one new node");
        s.new_node = detail::to_index(nn[0], "trace node");
        for (auto& x : detail::split(parts[2], ','))
            s.coefs.push_back(static_cast<elem>(
                detail::to_index(detail::tokens(x).empty() ? "" : detail::tokens(x)[0], "coefficient")));
        if (s.coefs.size() != s.nodes.size()) throw io_error("trace coefficient count mismatch");
        out.push_back(s);
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot write '" + path + "'");
    f << text;
}

// Graphviz text. Edge labels carry the global vector when a code is given.
inline std::string export_dot(const network& net, const network_code* code = nullptr) {
    std::ostringstream os;
    os << "digraph network {\n";
    if (net.nodes.empty()) {
        os << "}\n";
        return os.str();
    }
    os << "  rankdir=TB;\n";
    for (auto& v : net.nodes) {
        const char* color = "white";
        switch (v.kind) {
            case role::source: color = "lightblue"; break;
            case role::sink: color = "lightpink"; break;
            case role::coding: color = "khaki"; break;
            case role::forwarding: color = "lightgray"; break;
        }
        os << "  \"" << v.id << "\" [style=filled, fillcolor=" << color << "];\n";
    }
    std::optional<matrix> g;
    if (code) g = transfer_compute(net, *code).g;
    for (std::size_t j = 0; j < net.edges.size(); ++j) {
        auto& e = net.edges[j];
        os << "  \"" << net.nodes[e.tail].id << "\" -> \"" << net.nodes[e.head].id << "\" [label=\"" << e.id;
        if (g) {
            os << " (";
            for (std::size_t r = 0; r < g->rows(); ++r) os << (r ? "," : "") << (*g)(r, j);
            os << ")";
        }
        os << "\"";
        if (!net.is_eligible(j)) os << ", style=dashed";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace mnec
