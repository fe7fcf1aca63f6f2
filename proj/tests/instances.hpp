#pragma once

// Random small networks with random codes, shared by the verifier and
// matroidal tests.

#include "oracles.hpp"

namespace instances {

using namespace mnec;

// Source s, relays v1..vk in order, sinks t1..ts. Edges go from lower to
// higher relays, so file order is ancestral. Coefficients are random.
inline std::pair<network, network_code> random_instance(std::mt19937_64& g, const field& f) {
    network net;
    net.fld = f;
    std::size_t n = 1 + g() % 2, relays = 1 + g() % 3, sinks = 1 + g() % 2;
    for (std::size_t i = 0; i < n; ++i) net.messages.push_back("m" + std::to_string(i + 1));
    node s{"s", role::source, {}};
    for (std::size_t i = 0; i < n; ++i) s.messages.push_back(i);
    net.nodes.push_back(s);
    for (std::size_t i = 0; i < relays; ++i) net.nodes.push_back({"v" + std::to_string(i + 1), role::coding, {}});
    for (std::size_t i = 0; i < sinks; ++i) {
        node t{"t" + std::to_string(i + 1), role::sink, {}};
        t.messages.push_back(g() % n);
        if (n == 2 && g() % 2) t.messages = {0, 1};
        net.nodes.push_back(t);
    }
    auto add = [&](std::size_t a, std::size_t b) {
        net.edges.push_back({"e" + std::to_string(net.edges.size() + 1), a, b});
    };
    std::size_t first_sink = 1 + relays;
    for (std::size_t tail = 0; tail < first_sink; ++tail)
        for (std::size_t head = std::max<std::size_t>(tail + 1, 1); head < net.nodes.size(); ++head) {
            std::size_t copies = g() % 3 == 0 ? 1 + g() % 2 : 0;
            if (tail == 0 && head >= first_sink) copies = g() % 2;
            for (std::size_t c = 0; c < copies; ++c) add(tail, head);
        }
    network_code code = network_code::zero(net);
    std::size_t m = net.edges.size();
    for (std::size_t j = 0; j < m; ++j)
        if (net.edges[j].tail == 0)
            for (std::size_t i = 0; i < n; ++i) code.a(i, j) = static_cast<elem>(g() % f.order());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (net.edges[i].head == net.edges[j].tail) code.k(i, j) = static_cast<elem>(g() % f.order());
    return {net, code};
}

// y_t for message vector x and error vector z on pattern edges, computed from
// scratch by walking the edges in order.
inline std::vector<elem> outputs(const network& net, const network_code& code, std::size_t t, const std::vector<elem>& x,
                          const std::vector<std::size_t>& pattern, const std::vector<elem>& z) {
    const field& f = net.fld;
    std::size_t m = net.edges.size();
    std::vector<elem> y(m, 0);
    for (std::size_t j = 0; j < m; ++j) {
        elem s = 0;
        for (std::size_t i = 0; i < net.n(); ++i) s = f.add(s, f.mul(x[i], code.a(i, j)));
        for (std::size_t i = 0; i < j; ++i) s = f.add(s, f.mul(y[i], code.k(i, j)));
        for (std::size_t p = 0; p < pattern.size(); ++p)
            if (pattern[p] == j) s = f.add(s, z[p]);
        y[j] = s;
    }
    std::vector<elem> out;
    for (auto e : net.in_edges(t)) out.push_back(y[e]);
    return out;
}

}  // namespace instances
